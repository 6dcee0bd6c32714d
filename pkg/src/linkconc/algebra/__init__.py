"""Exact arithmetic over Q, Lambda = Q[t, 1/t], Q(t) and Q(t)/Lambda."""

from .laurent import LaurentPolynomial, t
from .matrix import PolyMatrix, adjugate, matrix_det, matrix_inverse
from .ratfunc import RationalFunction, TorsionValue, reduce_mod_lambda


def laurent_arith(a: LaurentPolynomial, b: LaurentPolynomial, op: str) -> LaurentPolynomial:
    """Ring operation by name (``"add"``, ``"sub"`` or ``"mul"``)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def involute(f):
    """The ring involution ``t -> 1/t`` on Lambda, Q(t), Q(t)/Lambda or matrices."""
    return f.involute()


__all__ = [
    "LaurentPolynomial",
    "PolyMatrix",
    "RationalFunction",
    "TorsionValue",
    "adjugate",
    "involute",
    "laurent_arith",
    "matrix_det",
    "matrix_inverse",
    "reduce_mod_lambda",
    "t",
]
