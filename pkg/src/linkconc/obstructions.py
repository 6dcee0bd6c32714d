"""The Blanchfield self-pairing test for 2-component links of linking number zero.

Input is a Seifert matrix ``V`` for the first component together with the
class of the second component in ``H_1(S^3 - F; Q)``, written in the basis of
linking duals.  A nonzero self-pairing of the lifted class rules out a
0.5-solve-equivalence to any sublink of a homology boundary link.

Reversing the orientation of a dual basis vector negates one coordinate of
the class vector; ``Bl(v, v)`` is then unchanged up to sign, so the verdict
is orientation independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import TorsionValue
from .errors import NonzeroLinkingNumber
from .seifert import SeifertMatrix, blanchfield, block_sum

CITATION = "blanchfield-hbl-obstruction"
VERDICT_OBSTRUCTED = "not 0.5-solve-equivalent to any sublink of a homology boundary link"
VERDICT_INCONCLUSIVE = "no obstruction from the Blanchfield self-pairing"


@dataclass(frozen=True)
class TwoComponentInput:
    """``V`` for a surface of ``L_1`` missing ``L_2``, and ``[L_2]`` in dual coordinates."""

    seifert: SeifertMatrix
    class_vector: tuple[int, ...]
    linking_number: int = 0

    def __init__(self, seifert, class_vector: Sequence[int], linking_number: int = 0):
        if not isinstance(seifert, SeifertMatrix):
            seifert = SeifertMatrix(seifert)
        vec = tuple(int(x) for x in class_vector)
        if len(vec) != seifert.size:
            raise ValueError(f"class vector has length {len(vec)}, Seifert matrix has size {seifert.size}")
        if linking_number != 0:
            raise NonzeroLinkingNumber(f"lk(L1, L2) = {linking_number}; the lift to the infinite cyclic cover needs lk = 0")
        object.__setattr__(self, "seifert", seifert)
        object.__setattr__(self, "class_vector", vec)
        object.__setattr__(self, "linking_number", int(linking_number))

    def to_json(self) -> dict:
        return {
            "type": "two-component",
            "seifert": self.seifert.tolist(),
            "class_vector": list(self.class_vector),
            "lk": self.linking_number,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "TwoComponentInput":
        sm = doc["seifert"]
        sm = SeifertMatrix.from_json(sm) if isinstance(sm, dict) else SeifertMatrix(sm)
        return cls(sm, doc["class_vector"], doc.get("lk", 0))


@dataclass(frozen=True)
class ObstructionResult:
    value: TorsionValue
    obstructed: bool
    citation: str = CITATION

    @property
    def verdict(self) -> str:
        return VERDICT_OBSTRUCTED if self.obstructed else VERDICT_INCONCLUSIVE

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "obstructed": self.obstructed,
            "citation": self.citation,
            "verdict": self.verdict,
        }


def hbl_obstruction(data: TwoComponentInput) -> ObstructionResult:
    """``Bl(v, v)`` for the constant class vector ``v``; nonzero means obstructed."""
    v = list(data.class_vector)
    value = blanchfield(data.seifert, v, v)
    return ObstructionResult(value, not value.is_zero())


def band_sum_invariance(data: TwoComponentInput, connect: SeifertMatrix) -> TwoComponentInput:
    """Input for the link after an exterior band sum with a knot of Seifert matrix ``connect``.

    The connecting summand carries no part of ``[L_2]``, so the class vector
    is padded with zeros and the self-pairing is unchanged.
    """
    return TwoComponentInput(
        block_sum(data.seifert, connect),
        list(data.class_vector) + [0] * connect.size,
        data.linking_number,
    )
