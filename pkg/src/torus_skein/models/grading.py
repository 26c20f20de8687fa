import math
from collections.abc import Mapping
from enum import StrEnum
from functools import lru_cache
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from torus_skein.models.diagram import Winding


class Ring(StrEnum):
    Z = "z"
    Z2 = "z2"


class CurveClass(BaseModel):
    """Normalized class in H1(T^2): zero, or a primitive pair whose first nonzero entry is positive."""

    model_config = ConfigDict(frozen=True)

    p: int = 0
    q: int = 0

    @model_validator(mode="after")
    def _check_normalized(self) -> Self:
        if (self.p, self.q) == (0, 0):
            return self
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"class ({self.p},{self.q}) is not primitive")
        if self.p < 0 or (self.p == 0 and self.q < 0):
            raise ValueError(f"class ({self.p},{self.q}) is not normalized")
        return self

    @property
    def vector(self) -> Winding:
        return (self.p, self.q)

    @property
    def is_trivial(self) -> bool:
        return self.p == 0 and self.q == 0

    @property
    def is_essential(self) -> bool:
        return not self.is_trivial

    def __str__(self) -> str:
        return f"[{self.p},{self.q}]"


TRIVIAL = CurveClass()


class SkeinTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    curve: CurveClass
    coefficient: int


class SkeinDegree(BaseModel):
    model_config = ConfigDict(frozen=True)

    terms: tuple[SkeinTerm, ...] = Field(default=())

    @model_validator(mode="after")
    def _check_terms(self) -> Self:
        keys = [t.curve.vector for t in self.terms]
        if keys != sorted(set(keys)):
            raise ValueError("skein terms must be sorted and distinct")
        for term in self.terms:
            if term.coefficient == 0 or term.curve.is_trivial:
                raise ValueError("skein terms must be nonzero multiples of essential classes")
        return self

    @classmethod
    def zero(cls) -> "SkeinDegree":
        return _ZERO

    @classmethod
    def of(cls, curve: CurveClass, coefficient: int) -> "SkeinDegree":
        return _single(curve, coefficient)

    @classmethod
    def from_mapping(cls, mapping: Mapping[CurveClass, int]) -> "SkeinDegree":
        items = sorted(((c, k) for c, k in mapping.items() if k != 0), key=lambda item: item[0].vector)
        return cls(terms=tuple(SkeinTerm(curve=c, coefficient=k) for c, k in items))

    def as_mapping(self) -> dict[CurveClass, int]:
        return {t.curve: t.coefficient for t in self.terms}

    def coefficient(self, curve: CurveClass) -> int:
        return next((t.coefficient for t in self.terms if t.curve == curve), 0)

    def classes(self) -> tuple[CurveClass, ...]:
        return tuple(t.curve for t in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SkeinDegree") -> "SkeinDegree":
        merged = self.as_mapping()
        for term in other.terms:
            merged[term.curve] = merged.get(term.curve, 0) + term.coefficient
        return SkeinDegree.from_mapping(merged)

    def __neg__(self) -> "SkeinDegree":
        return SkeinDegree(terms=tuple(SkeinTerm(curve=t.curve, coefficient=-t.coefficient) for t in self.terms))

    def sort_key(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((t.curve.p, t.curve.q, t.coefficient) for t in self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{t.coefficient}[{t.curve.p},{t.curve.q}]" for t in self.terms)

    def __str__(self) -> str:
        return self.render()


_ZERO = SkeinDegree()


@lru_cache(maxsize=4096)
def _single(curve: CurveClass, coefficient: int) -> SkeinDegree:
    if coefficient == 0 or curve.is_trivial:
        return _ZERO
    return SkeinDegree(terms=(SkeinTerm(curve=curve, coefficient=coefficient),))


class Generator(BaseModel):
    """Basis element of CKh_v: bit j of ``labels`` set means circle j carries v+."""

    model_config = ConfigDict(frozen=True)

    vertex: int
    labels: int
    degree: SkeinDegree
    hom_degree: int
    quantum: int
