"""Sparse multivariate polynomials over Z or Z/m, optionally truncated.

A ``RingSpec`` fixes the variable names, the coefficient modulus (0 for the
integers) and an optional truncation degree ``k`` imposing ``v**k == 0`` on
every variable. With a modulus and a truncation the ring is finite.

Ring spec strings::

    Z              integers
    Z[x1,x2]       polynomials over Z
    Z/4,trunc 3    (Z/4)[x]/(x^3); a lone trunc implies the variable x
    Z/2[x,y],trunc 2
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

__all__ = ["RingSpec", "RingElement", "RingError", "parse_ring", "enumerate_ring"]


class RingError(ValueError):
    pass


_SPEC_RE = re.compile(
    r"^\s*Z\s*(?:/\s*(?P<mod>\d+))?\s*(?:\[(?P<vars>[^\]]*)\])?\s*(?:,\s*trunc\s*(?P<trunc>\d+))?\s*$"
)
_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class RingSpec:
    variables: tuple[str, ...] = ()
    modulus: int = 0
    trunc: int | None = None

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise RingError(f"bad modulus {self.modulus}")
        if len(set(self.variables)) != len(self.variables):
            raise RingError("repeated variable name")
        for v in self.variables:
            if not _VAR_RE.match(v):
                raise RingError(f"bad variable name {v!r}")
        if self.trunc is not None and self.trunc < 1:
            raise RingError("truncation degree must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        m = _SPEC_RE.match(text)
        if not m:
            raise RingError(f"cannot parse ring spec {text!r}")
        mod = int(m["mod"]) if m["mod"] else 0
        names = tuple(v.strip() for v in m["vars"].split(",") if v.strip()) if m["vars"] is not None else ()
        trunc = int(m["trunc"]) if m["trunc"] else None
        if trunc is not None and not names:
            names = ("x",)
        return cls(names, mod, trunc)

    def __str__(self):
        s = "Z" + (f"/{self.modulus}" if self.modulus else "")
        if self.variables:
            s += "[" + ",".join(self.variables) + "]"
        if self.trunc is not None:
            s += f",trunc {self.trunc}"
        return s

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_finite(self) -> bool:
        return self.modulus > 0 and (not self.variables or self.trunc is not None)

    def size(self) -> int:
        if not self.is_finite:
            raise RingError(f"{self} is infinite")
        return self.modulus ** len(self.monomials())

    def monomials(self) -> list[tuple[int, ...]]:
        """All surviving monomials of a truncated ring, in canonical order."""
        if self.variables and self.trunc is None:
            raise RingError("untruncated ring has infinitely many monomials")
        exps = itertools.product(range(self.trunc or 1), repeat=self.nvars)
        return sorted(exps, key=_mono_key)

    # constructors
    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            return self.const(value)
        if isinstance(value, str):
            return self.parse_element(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def const(self, c: int) -> "RingElement":
        return RingElement.from_terms(self, {(0,) * self.nvars: c})

    @cached_property
    def zero(self) -> "RingElement":
        return RingElement(self, ())

    @cached_property
    def one(self) -> "RingElement":
        return self.const(1)

    def var(self, name: str) -> "RingElement":
        try:
            i = self.variables.index(name)
        except ValueError:
            raise RingError(f"{name!r} is not a variable of {self}") from None
        e = [0] * self.nvars
        e[i] = 1
        return RingElement.from_terms(self, {tuple(e): 1})

    def gens(self) -> list["RingElement"]:
        return [self.var(v) for v in self.variables]

    def parse_element(self, text: str) -> "RingElement":
        """Parse the serialized form: terms ``coeff:(e1,...,ek)`` joined by ``;``."""
        terms: dict = {}
        text = text.strip()
        if not text or text == "0":
            return self.zero
        for part in text.split(";"):
            c, _, e = part.partition(":")
            exps = tuple(int(x) for x in e.strip().strip("()").split(",") if x.strip())
            if len(exps) != self.nvars:
                raise RingError(f"term {part!r} has {len(exps)} exponents, ring has {self.nvars} variables")
            terms[exps] = terms.get(exps, 0) + int(c)
        return RingElement.from_terms(self, terms)

    def random(self, rng, max_terms: int = 3, max_deg: int = 2, coeff_bound: int = 5) -> "RingElement":
        terms: dict = {}
        top = max_deg if self.trunc is None else min(max_deg, self.trunc - 1)
        for _ in range(rng.randint(0, max_terms)):
            e = tuple(rng.randint(0, top) for _ in range(self.nvars))
            terms[e] = terms.get(e, 0) + rng.randint(-coeff_bound, coeff_bound)
        return RingElement.from_terms(self, terms)

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "modulus": self.modulus, "trunc": self.trunc,
                "spec": str(self)}


def parse_ring(text: str) -> RingSpec:
    return RingSpec.parse(text)


def _mono_key(e: tuple[int, ...]):
    return (sum(e), e)


@dataclass(frozen=True)
class RingElement:
    """Canonical sparse polynomial; ``terms`` is sorted by (degree, exponents)."""

    ring: RingSpec
    terms: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_terms(cls, ring: RingSpec, terms: Mapping[tuple[int, ...], int] | Iterable) -> "RingElement":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        return cls(ring, _normalize(ring, acc))

    def __post_init__(self):
        # cheap structural sanity; from_terms is the normal entry point
        for e, c in self.terms:
            if c == 0:
                raise RingError("zero coefficient stored")

    # arithmetic
    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return RingElement(self.ring, _normalize(self.ring, acc))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, _normalize(self.ring, {e: -c for e, c in self.terms}))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return RingElement(self.ring, _normalize(self.ring, acc))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise RingError("negative powers are not ring operations")
        out, base = self.ring.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self == self.ring.one

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def coefficient(self, exps: tuple[int, ...]) -> int:
        return dict(self.terms).get(tuple(exps), 0)

    def serialize(self) -> str:
        if not self.terms:
            return "0"
        return ";".join(f"{c}:({','.join(map(str, e))})" for e, c in self.terms)

    def to_json(self) -> list[str]:
        return [f"{c}:({','.join(map(str, e))})" for e, c in self.terms]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.variables, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def index(self) -> int:
        """Position of this element in the enumeration of a finite ring."""
        m = self.ring.modulus
        coeffs = dict(self.terms)
        out = 0
        for mono in reversed(self.ring.monomials()):
            out = out * m + coeffs.get(mono, 0)
        return out

    @classmethod
    def from_index(cls, ring: RingSpec, idx: int) -> "RingElement":
        terms = {}
        for mono in ring.monomials():
            idx, c = divmod(idx, ring.modulus)
            terms[mono] = c
        return cls.from_terms(ring, terms)


def _normalize(ring: RingSpec, acc: dict) -> tuple:
    m, k = ring.modulus, ring.trunc
    out = []
    for e, c in acc.items():
        if m:
            c %= m
        if c == 0:
            continue
        if k is not None and any(x >= k for x in e):
            continue
        out.append((e, c))
    out.sort(key=lambda t: _mono_key(t[0]))
    return tuple(out)


def enumerate_ring(ring: RingSpec) -> Iterator[RingElement]:
    for i in range(ring.size()):
        yield RingElement.from_index(ring, i)
