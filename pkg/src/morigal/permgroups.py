"""Subgroup enumeration in small symmetric groups.

Used to check, by exhaustion, that a transitive subgroup of S_n containing
an (n-1)-cycle and a transposition is all of S_n.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

MAX_DEGREE = 7


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths))


class SymmetricGroup:
    """S_n with elements indexed 0..n!-1 and a full multiplication table.

    Composition is (a*b)(i) = a(b(i)).
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_DEGREE:
            raise ValueError(f"degree must be between 1 and {MAX_DEGREE}")
        self.n = n
        self.perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
        self.order = len(self.perms)
        weights = n ** np.arange(n, dtype=np.int64)
        lookup = np.full(n**n, -1, dtype=np.int64)
        lookup[self.perms @ weights] = np.arange(self.order)
        table = np.empty((self.order, self.order), dtype=np.int16 if self.order < 32768 else np.int32)
        for a in range(self.order):
            table[a] = lookup[self.perms[a][self.perms] @ weights]
        self.table = table
        self.identity = int(lookup[np.arange(n) @ weights])
        self.inverse = np.argwhere(table == self.identity)[:, 1]
        types = [cycle_type(tuple(int(x) for x in p)) for p in self.perms]
        self.type_names = sorted(set(types))
        type_index = {t: i for i, t in enumerate(self.type_names)}
        self.type_of = np.array([type_index[t] for t in types])
        self._lookup, self._weights = lookup, weights

    def index(self, perm) -> int:
        return int(self._lookup[np.asarray(perm, dtype=np.int64) @ self._weights])

    def perm(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.perms[i])

    def closure(self, gens) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by `gens`."""
        gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int64)
        if len(gens) == 0:
            return mask
        while len(frontier):
            prods = np.unique(self.table[np.ix_(frontier, gens)].ravel())
            new = prods[~mask[prods]]
            mask[new] = True
            frontier = new.astype(np.int64)
        return mask

    def conjugates_of(self, g: int) -> np.ndarray:
        """x g x^{-1} for every x, as an array indexed by x."""
        return self.table[self.table[:, g], self.inverse]

    def normalizer(self, mask: np.ndarray, gens) -> np.ndarray:
        ok = np.ones(self.order, dtype=bool)
        for g in gens:
            ok &= mask[self.conjugates_of(int(g))]
        return ok

    def generators_of(self, mask: np.ndarray) -> list[int]:
        gens: list[int] = []
        current = self.closure([])
        for x in np.flatnonzero(mask):
            if not current[x]:
                gens.append(int(x))
                current = self.closure(gens)
                if current.sum() == mask.sum():
                    break
        return gens

    def orbits(self, elements: np.ndarray) -> tuple[int, ...]:
        parent = list(range(self.n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for e in elements:
            for i, j in enumerate(self.perms[e]):
                a, b = find(i), find(int(j))
                if a != b:
                    parent[a] = b
        return tuple(sorted(Counter(find(i) for i in range(self.n)).values()))


@dataclass
class SubgroupClass:
    gens: list[int]
    mask: np.ndarray = field(repr=False)
    order: int
    normalizer_order: int
    orbit_lengths: tuple[int, ...]
    type_counts: tuple[int, ...]

    @property
    def transitive(self) -> bool:
        return len(self.orbit_lengths) == 1

    def class_size(self, group_order: int) -> int:
        return group_order // self.normalizer_order


def _invariant(G: SymmetricGroup, mask: np.ndarray, elements: np.ndarray) -> tuple:
    counts = np.bincount(G.type_of[elements], minlength=len(G.type_names))
    return (int(mask.sum()), G.orbits(elements), tuple(int(c) for c in counts))


def _conjugate_into(G: SymmetricGroup, gens: list[int], target: np.ndarray) -> bool:
    ok = np.ones(G.order, dtype=bool)
    for g in gens:
        ok &= target[G.conjugates_of(g)]
        if not ok.any():
            return False
    return bool(ok.any())


def subgroup_classes(G: SymmetricGroup) -> list[SubgroupClass]:
    """Conjugacy classes of subgroups by cyclic extension.

    Starting from the trivial group, each class representative H is extended
    by one element g outside H.  Elements in the same orbit of
    g -> n g h n^{-1} (n in N(H), h in H) give conjugate extensions, so one g
    per orbit suffices.  New subgroups are deduplicated up to conjugacy.
    """
    reps: list[SubgroupClass] = []
    by_invariant: dict[tuple, list[int]] = {}

    def register(gens: list[int], mask: np.ndarray) -> None:
        elements = np.flatnonzero(mask)
        inv = _invariant(G, mask, elements)
        for idx in by_invariant.get(inv, []):
            if _conjugate_into(G, gens, reps[idx].mask):
                return
        norm = G.normalizer(mask, gens)
        reps.append(
            SubgroupClass(gens, mask, inv[0], int(norm.sum()), inv[1], inv[2])
        )
        by_invariant.setdefault(inv, []).append(len(reps) - 1)

    register([], G.closure([]))
    i = 0
    while i < len(reps):
        H = reps[i]
        i += 1
        if H.order == G.order:
            continue
        members = np.flatnonzero(H.mask)
        # right cosets g H labelled by their smallest element
        coset = G.table[:, members].min(axis=1).astype(np.int64)
        labels, coset_id = np.unique(coset, return_inverse=True)
        norm_mask = G.normalizer(H.mask, H.gens)
        rows, cols = [], []
        for y in G.generators_of(norm_mask):
            moved = G.table[G.table[y, :], G.inverse[y]]
            rows.append(coset_id)
            cols.append(coset_id[moved])
        m = len(labels)
        if rows:
            r = np.concatenate(rows)
            c = np.concatenate(cols)
            graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(m, m))
            _, comp = connected_components(graph, directed=True, connection="weak")
        else:
            comp = np.arange(m)
        home = comp[coset_id[G.identity]]
        seen = set()
        for label_idx, component in enumerate(comp):
            if component == home or component in seen:
                continue
            seen.add(component)
            g = int(labels[label_idx])
            gens = H.gens + [g]
            register(gens, G.closure(gens))
    return reps


@dataclass
class OracleReport:
    n: int
    holds: bool
    subgroup_count: int
    class_count: int
    transitive_count: int
    counterexamples: list[list[tuple[int, ...]]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "holds": self.holds,
            "subgroup_count": self.subgroup_count,
            "conjugacy_classes": self.class_count,
            "transitive_subgroups": self.transitive_count,
            "counterexamples": [[list(p) for p in gens] for gens in self.counterexamples],
        }

    def summary(self) -> str:
        verdict = "property holds" if self.holds else "property FAILS"
        return f"{verdict}; {self.subgroup_count} subgroups enumerated"


def subgroup_oracle(n: int) -> OracleReport:
    """Every transitive H <= S_n containing an (n-1)-cycle and a transposition is S_n."""
    if n > MAX_DEGREE:
        raise ValueError(f"n = {n} exceeds the enumeration budget (n <= {MAX_DEGREE})")
    if n < 2:
        raise ValueError("n must be at least 2")
    G = SymmetricGroup(n)
    classes = subgroup_classes(G)
    long_cycle = G.type_names.index(tuple(sorted((1, n - 1))) if n > 2 else (2,))
    transposition = G.type_names.index(tuple([1] * (n - 2) + [2]))
    bad = []
    transitive = 0
    for cls in classes:
        if not cls.transitive:
            continue
        transitive += cls.class_size(G.order)
        if cls.type_counts[long_cycle] and cls.type_counts[transposition] and cls.order != G.order:
            bad.append([G.perm(g) for g in cls.gens])
    total = sum(cls.class_size(G.order) for cls in classes)
    return OracleReport(n, not bad, total, len(classes), transitive, bad)


def enumerate_subgroups_naive(n: int) -> set[frozenset[tuple[int, ...]]]:
    """All subgroups of S_n by plain closure: every subgroup is extended by every element.

    Independent of the numpy machinery above; feasible for n <= 5.
    """
    elems = list(permutations(range(n)))
    identity = tuple(range(n))

    def compose(a, b):
        return tuple(a[i] for i in b)

    def close(gens) -> frozenset:
        group = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = compose(x, g)
                    if y not in group:
                        group.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(group)

    def small_gens(H: frozenset) -> list:
        gens: list = []
        current = frozenset([identity])
        for x in sorted(H):
            if x not in current:
                gens.append(x)
                current = close(gens)
        return gens

    found = {close([g]) for g in elems}
    layer = set(found)
    while layer:
        new = set()
        for H in layer:
            gens = small_gens(H)
            for g in elems:
                if g not in H:
                    K = close(gens + [g])
                    if K not in found:
                        new.add(K)
        found |= new
        layer = new
    return found
