"""Exact-arithmetic certificates that Mori trinomials have full symmetric Galois group."""

from .galois import (
    Conclusion,
    GaloisCertificate,
    certify,
    certify_general_trinomial,
    frobenius_sample,
    verify_certificate,
)
from .intpoly import IntPolynomial, Trinomial, discriminant, trinomial_discriminant
from .mori import FactorBudget, InvalidInput, MoriQuadruple, validate_quadruple
from .numfield import ImagQuadField, certify_K, generate_quadruple, validate_generalized_quadruple

__version__ = "0.1.0"

__all__ = [
    "Conclusion",
    "FactorBudget",
    "GaloisCertificate",
    "ImagQuadField",
    "IntPolynomial",
    "InvalidInput",
    "MoriQuadruple",
    "Trinomial",
    "certify",
    "certify_K",
    "certify_general_trinomial",
    "discriminant",
    "frobenius_sample",
    "generate_quadruple",
    "trinomial_discriminant",
    "validate_generalized_quadruple",
    "validate_quadruple",
    "verify_certificate",
]
