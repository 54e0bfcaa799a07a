"""The group Z_m x Z_n and its integral group ring."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Mapping

from .exact import SizeLimitError

DEFAULT_ENUMERATION_LIMIT = 5_000_000


@dataclass(frozen=True, slots=True)
class GroupSpec:
    """G = Z_m x Z_n with generators g1 (order m) and g2 (order n)."""

    m: int
    n: int = 1

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"cyclic factors must have order >= 1, got m={self.m}, n={self.n}")

    @property
    def order(self) -> int:
        return self.m * self.n

    @property
    def gcd(self) -> int:
        return gcd(self.m, self.n)

    @property
    def is_cyclic_spec(self) -> bool:
        """True for the cyclic specs Z_m = Z_m x Z_1 handled by the all-degree maps."""
        return self.n == 1

    def element(self, i: int, j: int = 0) -> GroupElement:
        return GroupElement(i, j, self)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(0, 0, self)

    @property
    def g1(self) -> GroupElement:
        return GroupElement(1, 0, self)

    @property
    def g2(self) -> GroupElement:
        return GroupElement(0, 1, self)

    def elements(self) -> list[GroupElement]:
        """All elements in lexicographic (i, j) order; position equals ``index``."""
        return [GroupElement(i, j, self) for i in range(self.m) for j in range(self.n)]

    def __str__(self) -> str:
        return f"Z_{self.m} x Z_{self.n}"


@dataclass(frozen=True, slots=True)
class GroupElement:
    """g1**i * g2**j, always reduced."""

    i: int
    j: int
    spec: GroupSpec

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % self.spec.m)
        object.__setattr__(self, "j", self.j % self.spec.n)

    def __hash__(self):
        # spec deliberately left out; elements of different specs compare unequal anyway
        return (self.i << 20) ^ self.j

    @property
    def index(self) -> int:
        return self.i * self.spec.n + self.j

    def is_identity(self) -> bool:
        return self.i == 0 and self.j == 0

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return g_mul(self, other)

    def inverse(self) -> GroupElement:
        return GroupElement(-self.i, -self.j, self.spec)

    def __pow__(self, k: int) -> GroupElement:
        return GroupElement(self.i * k, self.j * k, self.spec)

    def __repr__(self) -> str:
        return f"[{self.i},{self.j}]"


def _same_spec(x, y) -> GroupSpec:
    if x.spec != y.spec:
        raise ValueError(f"operands live in different groups: {x.spec} vs {y.spec}")
    return x.spec


def g_mul(x: GroupElement, y: GroupElement) -> GroupElement:
    spec = _same_spec(x, y)
    return GroupElement(x.i + y.i, x.j + y.j, spec)


def enumerate_tuples(spec: GroupSpec, arity: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[tuple[GroupElement, ...]]:
    """All arity-tuples of group elements, lexicographically."""
    if arity < 0:
        raise ValueError("arity must be non-negative")
    total = spec.order ** arity
    if total > limit:
        raise SizeLimitError(f"{spec}: |G|^{arity} = {total} tuples exceeds the limit {limit}")
    return itertools.product(spec.elements(), repeat=arity)


class GroupRingElem:
    """A finite formal sum of group elements with integer coefficients."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: GroupSpec, coeffs: Mapping[GroupElement, int] | None = None):
        self.spec = spec
        clean = {}
        for g, c in (coeffs or {}).items():
            if g.spec is not spec and g.spec != spec:
                raise ValueError(f"element {g} does not belong to {spec}")
            if c:
                clean[g] = clean.get(g, 0) + c
        self.coeffs = {g: c for g, c in clean.items() if c}

    @classmethod
    def zero(cls, spec: GroupSpec) -> GroupRingElem:
        return cls(spec)

    @classmethod
    def one(cls, spec: GroupSpec) -> GroupRingElem:
        return cls(spec, {spec.identity: 1})

    @classmethod
    def of(cls, g: GroupElement, coefficient: int = 1) -> GroupRingElem:
        return cls(g.spec, {g: coefficient})

    @classmethod
    def from_int(cls, spec: GroupSpec, k: int) -> GroupRingElem:
        return cls(spec, {spec.identity: k})

    def _coerce(self, other) -> GroupRingElem:
        if isinstance(other, int):
            return GroupRingElem.from_int(self.spec, other)
        if isinstance(other, GroupElement):
            return GroupRingElem.of(other)
        if isinstance(other, GroupRingElem):
            _same_spec(self, other)
            return other
        raise TypeError(f"cannot combine a group ring element with {type(other).__name__}")

    def is_zero(self) -> bool:
        return not self.coeffs

    def augmentation(self) -> int:
        """Sum of coefficients; the value of the element on the trivial module."""
        return sum(self.coeffs.values())

    def __add__(self, other) -> GroupRingElem:
        other = self._coerce(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElem(self.spec, out)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElem:
        return GroupRingElem(self.spec, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other) -> GroupRingElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GroupRingElem:
        return self._coerce(other) - self

    def __mul__(self, other) -> GroupRingElem:
        if isinstance(other, int):
            return ring_scale(self, other)
        if not isinstance(other, (GroupElement, GroupRingElem)):
            return NotImplemented
        return ring_mul(self, self._coerce(other))

    def __rmul__(self, other) -> GroupRingElem:
        if isinstance(other, int):
            return ring_scale(self, other)
        if not isinstance(other, (GroupElement, GroupRingElem)):
            return NotImplemented
        return ring_mul(self._coerce(other), self)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = GroupRingElem.from_int(self.spec, other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda kv: kv[0].index)
        return " + ".join(f"{c}*{g!r}" for g, c in terms)


def ring_add(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x + y


def ring_scale(x: GroupRingElem, k: int) -> GroupRingElem:
    return GroupRingElem(x.spec, {g: k * c for g, c in x.coeffs.items()})


def ring_mul(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    spec = _same_spec(x, y)
    out: dict[GroupElement, int] = {}
    for g, a in x.coeffs.items():
        for h, b in y.coeffs.items():
            gh = g_mul(g, h)
            out[gh] = out.get(gh, 0) + a * b
    return GroupRingElem(spec, out)


def geometric_sum(g: GroupElement, count: int, start: GroupElement | None = None) -> GroupRingElem:
    """start * (1 + g + ... + g**(count-1)); zero when count <= 0."""
    spec = g.spec
    base = start if start is not None else spec.identity
    out: dict[GroupElement, int] = {}
    x = base
    for _ in range(max(count, 0)):
        out[x] = out.get(x, 0) + 1
        x = g_mul(x, g)
    return GroupRingElem(spec, out)


def norm(spec: GroupSpec, which: int) -> GroupRingElem:
    """N_m = sum of g1**i (which=1) or N_n = sum of g2**j (which=2)."""
    if which == 1:
        return geometric_sum(spec.g1, spec.m)
    if which == 2:
        return geometric_sum(spec.g2, spec.n)
    raise ValueError(f"which must be 1 or 2, got {which}")


def translate(spec: GroupSpec, which: int) -> GroupRingElem:
    """T_m = g1 - 1 (which=1) or T_n = g2 - 1 (which=2)."""
    if which == 1:
        return GroupRingElem.of(spec.g1) - 1
    if which == 2:
        return GroupRingElem.of(spec.g2) - 1
    raise ValueError(f"which must be 1 or 2, got {which}")
