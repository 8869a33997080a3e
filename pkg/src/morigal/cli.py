"""Command-line front end and certificate documents."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any, Sequence

from . import finfield as ff
from .galois import (
    SCHEMA_VERSION,
    Conclusion,
    GaloisCertificate,
    VerificationError,
    certify,
    certify_general_trinomial,
    compare_distribution,
    frobenius_sample,
    sn_class_distribution,
    verify_certificate,
)
from .arith import is_prime
from .intpoly import Trinomial
from .mori import FactorBudget, InvalidInput, build_trinomials, reduce_at, search_quadruples, validate_quadruple
from .numfield import (
    SUPPORTED_D,
    ImagQuadField,
    SearchExhausted,
    certify_K,
    generate_quadruple,
    splitting,
    validate_generalized_quadruple,
)
from .permgroups import subgroup_oracle

EXIT_OK, EXIT_INPUT, EXIT_CONDITIONAL, EXIT_INCONCLUSIVE = 0, 1, 2, 3

EXIT_FOR = {
    Conclusion.FULL_SYMMETRIC: EXIT_OK,
    Conclusion.CONDITIONAL: EXIT_CONDITIONAL,
    Conclusion.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

WITNESS_KEYS = (
    "polynomials",
    "irreducibility_witness",
    "cycle_witness",
    "transposition_witness",
    "discriminant",
    "ramification_report",
    "group_fact_basis",
    "notes",
)


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the timestamp for reproducible documents
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return when.replace(microsecond=0).isoformat()


@dataclass
class CertificateDocument:
    """A certificate as written to disk: the witnesses plus provenance."""

    command: list[str]
    timestamp: str
    kind: str
    n: int
    input: dict
    witnesses: dict
    conclusion: str
    verification_seed: int
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_certificate(cls, cert: GaloisCertificate, command: Sequence[str]) -> CertificateDocument:
        body = cert.to_json()
        return cls(
            command=list(command),
            timestamp=_timestamp(),
            kind=cert.kind,
            n=cert.n,
            input=body["input"],
            witnesses={k: body[k] for k in WITNESS_KEYS},
            conclusion=body["conclusion"],
            verification_seed=cert.seed,
        )

    def certificate(self) -> GaloisCertificate:
        return GaloisCertificate.from_json(
            {
                "schema_version": self.schema_version,
                "kind": self.kind,
                "n": self.n,
                "input": self.input,
                "conclusion": self.conclusion,
                "seed": self.verification_seed,
                **self.witnesses,
            }
        )

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "timestamp": self.timestamp,
            "kind": self.kind,
            "n": self.n,
            "input": self.input,
            "witnesses": self.witnesses,
            "conclusion": self.conclusion,
            "verification_seed": self.verification_seed,
        }

    @classmethod
    def from_json(cls, d: dict) -> CertificateDocument:
        if "witnesses" not in d:
            # a bare certificate, as produced by the library
            cert = GaloisCertificate.from_json(d)
            return cls.from_certificate(cert, [])
        if d.get("schema_version") != SCHEMA_VERSION:
            raise InvalidInput(f"unsupported document schema {d.get('schema_version')!r}")
        try:
            return cls(
                command=list(d.get("command", [])),
                timestamp=d.get("timestamp", ""),
                kind=d["kind"],
                n=int(d["n"]),
                input=d["input"],
                witnesses=d["witnesses"],
                conclusion=d["conclusion"],
                verification_seed=int(d["verification_seed"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed certificate document: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _range(text: str) -> range:
    """'a:b' (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a:b") from None


def _budget(args) -> FactorBudget:
    if args.factor_budget is None:
        return FactorBudget(seed=args.seed)
    return FactorBudget(pollard_iterations=args.factor_budget, seed=args.seed)


def _quadruples(args) -> list[tuple[int, int, int, int]]:
    if args.quadruple:
        if len(args.quadruple) != 4:
            raise InvalidInput("expected four integers g p b c")
        return [tuple(args.quadruple)]
    out = []
    for lineno, line in enumerate(sys.stdin, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise InvalidInput(f"stdin line {lineno}: expected four integers g p b c")
        try:
            out.append(tuple(int(x) for x in parts))
        except ValueError:
            raise InvalidInput(f"stdin line {lineno}: not an integer in {line!r}") from None
    if not out:
        raise InvalidInput("no quadruple given (pass g p b c or feed lines on stdin)")
    return out


def _emit(args, payload: Any, text: str) -> None:
    print(dumps(payload) if args.format == "json" else text)


def _partition(pattern: Any) -> list[int]:
    """Degrees, with multiplicity, of a stored factor pattern."""
    if isinstance(pattern, dict):
        return list(pattern.get("partition", []))
    return sorted(e["degree"] for e in pattern for _ in range(e["multiplicity"]))


def _certificate_text(cert: GaloisCertificate) -> str:
    lines = [f"kind: {cert.kind}", f"n: {cert.n}"]
    for k, v in cert.input.items():
        if k not in ("n", "factor_budget", "conditions", "b_coords", "c_coords"):
            lines.append(f"{k}: {v if not isinstance(v, dict) else v.get('generator', v)}")
    for k, v in cert.polynomials.items():
        if k.endswith("pretty") or k in ("F", "U"):
            lines.append(f"{k}: {v}")
    iw = cert.irreducibility_witness
    lines.append("irreducibility: " + ("ok" if iw else "missing"))
    cw = cert.cycle_witness
    if cw:
        lines.append(f"cycle witness: pattern {_partition(cw.get('pattern', cw))}")
    else:
        lines.append("cycle witness: missing")
    tw = cert.transposition_witness
    if tw:
        where = tw.get("ell") or tw.get("ideal", {}).get("generator")
        lines.append(f"transposition: ell = {where}, double root = {tw.get('gamma')}")
    else:
        lines.append("transposition: missing")
    disc = cert.discriminant or {}
    for k in ("Delta_u", "D0", "D0_pretty"):
        if k in disc and not (k == "D0" and "D0_pretty" in disc):
            lines.append(f"{k}: {disc[k]}")
    for note in cert.notes:
        lines.append(f"note: {note}")
    lines.append(f"conclusion: {cert.conclusion.value}")
    return "\n".join(lines)


def _emit_certificates(args, argv: Sequence[str], certs: list[GaloisCertificate]) -> int:
    docs = [CertificateDocument.from_certificate(c, ["morigal", *argv]).to_json() for c in certs]
    if args.format == "json":
        print(dumps(docs[0] if len(docs) == 1 else docs))
    else:
        print("\n\n".join(_certificate_text(c) for c in certs))
    return max(EXIT_FOR[c.conclusion] for c in certs)


# subcommands


def cmd_validate(args, argv) -> int:
    reports = [validate_quadruple(*q) for q in _quadruples(args)]
    text = []
    for r in reports:
        status = "valid" if r.valid else "invalid: condition(s) " + ", ".join(r.failed_conditions()) + " fail"
        text.append(f"{r.label()} {status}")
    payload = [r.to_json() | {"valid": r.valid} for r in reports]
    _emit(args, payload[0] if len(payload) == 1 else payload, "\n".join(text))
    return EXIT_OK if all(r.valid for r in reports) else EXIT_INPUT


def cmd_certify(args, argv) -> int:
    budget = _budget(args)
    if args.trinomial:
        n, B, C = args.trinomial
        cert = certify_general_trinomial(n, B, C, budget, scan_bound=args.prime_bound or 10**4, seed=args.seed)
        return _emit_certificates(args, argv, [cert])
    certs = []
    for g, p, b, c in _quadruples(args):
        q = validate_quadruple(g, p, b, c).require_valid()
        certs.append(certify(q, budget, args.seed))
    return _emit_certificates(args, argv, certs)


def _search_one(g: int, p: int, bs: range, cs: range) -> list[dict]:
    return [q.to_json() for q in search_quadruples(g, [p], bs, cs)]


def cmd_search(args, argv) -> int:
    ps = list(args.p_range)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            chunks = pool.map(_search_one, [args.g] * len(ps), ps, [args.b_range] * len(ps), [args.c_range] * len(ps))
            found = [q for chunk in chunks for q in chunk]
    else:
        found = [q.to_json() for q in search_quadruples(args.g, ps, args.b_range, args.c_range)]
    if args.limit is not None:
        found = found[: args.limit]
    text = "\n".join(f"{q['g']} {q['p']} {q['b']} {q['c']}" for q in found) or "no valid quadruples in range"
    _emit(args, {"g": args.g, "count": len(found), "quadruples": found}, text)
    return EXIT_OK


def cmd_reduce(args, argv) -> int:
    q = validate_quadruple(*args.quadruple)
    if args.ell < 3 or not is_prime(args.ell):
        raise InvalidInput("ell must be an odd prime")
    report = reduce_at(q, args.ell, args.seed)
    report = report | {"quadruple": q.to_json()}
    text = "\n".join(
        [
            f"ell = {args.ell}",
            f"f mod ell: {report['f_mod_ell']}",
            f"u mod ell: {report['u_mod_ell']}",
            f"f pattern: {_partition(report['f_pattern'])}",
            f"u pattern: {_partition(report['u_pattern'])}",
        ]
    )
    _emit(args, report, text)
    return EXIT_OK


def cmd_frobenius(args, argv) -> int:
    if args.trinomial:
        u = Trinomial(*args.trinomial)
        label = f"x^{u.n} + ({u.B})x + ({u.C})"
    else:
        if not args.quadruple or len(args.quadruple) != 4:
            raise InvalidInput("expected g p b c or --trinomial n B C")
        q = validate_quadruple(*args.quadruple)
        _, u = build_trinomials(q)
        label = u.poly().pretty()
    bound = args.prime_bound or 10**5
    hist = frobenius_sample(u, bound, jobs=args.jobs)
    out: dict[str, Any] = {"polynomial": label, "histogram": hist.to_json()}
    lines = [f"polynomial: {label}", f"primes sampled: {hist.sample_size} (bound {bound})"]
    if u.n <= 12:
        cmp = compare_distribution(hist, sn_class_distribution(u.n))
        out["comparison_with_S_n"] = cmp.to_json()
        lines.append(f"L-infinity deviation from S_{u.n}: {float(cmp.deviation):.5f}")
        if cmp.missing:
            lines.append(f"missing cycle types: {cmp.missing}")
    for part, count in sorted(hist.counts.items()):
        lines.append(f"  {list(part)}: {count}")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


def cmd_oracle(args, argv) -> int:
    try:
        report = subgroup_oracle(args.n)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    _emit(args, report.to_json() | {"summary": report.summary()}, report.summary())
    return EXIT_OK if report.holds else EXIT_INCONCLUSIVE


def _field(args) -> ImagQuadField:
    if args.d not in SUPPORTED_D:
        raise InvalidInput(f"d = {args.d} is not one of the supported fields {SUPPORTED_D}")
    return ImagQuadField(args.d)


def cmd_quadfield(args, argv) -> int:
    K = _field(args)
    if args.action == "split":
        ideals = splitting(args.p, K)
        payload = {"field": K.name(), "omega": K.omega_convention(), "ideals": [i.describe() for i in ideals]}
        text = "\n".join([f"{K.name()}, {K.omega_convention()}"] + [i.label() + f" {i.describe()['type']}" for i in ideals])
        _emit(args, payload, text)
        return EXIT_OK
    if args.action == "generate":
        quad = generate_quadruple(K, args.g, args.p_max, args.coord_bound)
        text = f"{K.omega_convention()}\ng = {quad.g}, prime = ({quad.prime.generator}), b = {quad.b}, c = {quad.c}"
        _emit(args, quad.to_json(), text)
        return EXIT_OK
    for name in ("p_gen", "b", "c"):
        if getattr(args, name) is None:
            raise InvalidInput(f"--{name.replace('_', '-')} is required for quadfield certify")
    quad = validate_generalized_quadruple(K, args.g, K.parse(args.p_gen), K.parse(args.b), K.parse(args.c))
    if not quad.valid:
        raise InvalidInput(f"not a generalized Mori quadruple: condition(s) {', '.join(quad.failed())} fail")
    cert = certify_K(quad, _budget(args), args.seed)
    if args.format == "text":
        print(K.omega_convention())
    return _emit_certificates(args, argv, [cert])


def cmd_verify(args, argv) -> int:
    raw = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"certificate is not valid JSON: {exc}") from exc
    docs = data if isinstance(data, list) else [data]
    results = []
    worst = EXIT_OK
    for d in docs:
        doc = CertificateDocument.from_json(d)
        stored = Conclusion(doc.conclusion)
        try:
            got = verify_certificate(doc.certificate())
            ok, reason = got == stored, None if got == stored else f"recomputed {got.value}"
        except VerificationError as exc:
            got, ok, reason = None, False, str(exc)
        results.append(
            {
                "kind": doc.kind,
                "stored_conclusion": stored.value,
                "verified_conclusion": got.value if got else None,
                "verified": ok,
                "reason": reason,
            }
        )
        worst = max(worst, EXIT_FOR[stored] if ok else EXIT_INPUT)
    text = "\n".join(
        f"{r['kind']}: {'verified' if r['verified'] else 'FAILED'} ({r['stored_conclusion']})"
        + (f": {r['reason']}" if r["reason"] else "")
        for r in results
    )
    _emit(args, results[0] if len(results) == 1 else results, text)
    return worst


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=_int, default=ff.DEFAULT_SEED, help="seed for randomized subroutines")
    common.add_argument("--factor-budget", type=_int, default=None, help="Pollard-Brent iteration cap per factor")
    common.add_argument("--prime-bound", type=_int, default=None, help="prime bound for scans and statistics")
    common.add_argument("--jobs", type=_int, default=1, help="worker processes for search and frobenius")

    parser = argparse.ArgumentParser(prog="morigal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check conditions (i)-(iii) of a quadruple")
    p.add_argument("quadruple", nargs="*", type=_int, metavar="g p b c")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("certify", parents=[common], help="certify Gal = S_n")
    p.add_argument("quadruple", nargs="*", type=_int, metavar="g p b c")
    p.add_argument("--trinomial", nargs=3, type=_int, metavar=("n", "B", "C"), help="x^n + Bx + C instead")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", parents=[common], help="list valid quadruples in a box")
    p.add_argument("--g", type=_int, required=True)
    p.add_argument("--p-range", type=_range, required=True)
    p.add_argument("--b-range", type=_range, required=True)
    p.add_argument("--c-range", type=_range, required=True)
    p.add_argument("--limit", type=_int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reduce", parents=[common], help="reduce f and u modulo a prime")
    p.add_argument("quadruple", nargs=4, type=_int, metavar="g p b c")
    p.add_argument("--ell", type=_int, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("frobenius", parents=[common], help="Frobenius cycle-type statistics")
    p.add_argument("quadruple", nargs="*", type=_int, metavar="g p b c")
    p.add_argument("--trinomial", nargs=3, type=_int, metavar=("n", "B", "C"))
    p.add_argument("--bound", type=_int, dest="prime_bound", help="alias for --prime-bound")
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive subgroup check in S_n")
    p.add_argument("--n", type=_int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("quadfield", parents=[common], help="quadruples over imaginary quadratic fields")
    p.add_argument("action", choices=("certify", "generate", "split"))
    p.add_argument("--d", type=_int, required=True)
    p.add_argument("--g", type=_int, default=1)
    p.add_argument("--p-gen", help="generator of the prime ideal, e.g. 2+i or 1+2*w")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--p", type=_int, help="rational prime for `split`")
    p.add_argument("--p-max", type=_int, default=200)
    p.add_argument("--coord-bound", type=_int, default=6)
    p.set_defaults(func=cmd_quadfield)

    p = sub.add_parser("verify", parents=[common], help="re-check a stored certificate")
    p.add_argument("file", help="certificate JSON file, or - for stdin")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.jobs < 1:
            raise InvalidInput("--jobs must be at least 1")
        if args.command == "quadfield" and args.action == "split" and args.p is None:
            raise InvalidInput("--p is required for quadfield split")
        return args.func(args, argv)
    except (InvalidInput, SearchExhausted, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
