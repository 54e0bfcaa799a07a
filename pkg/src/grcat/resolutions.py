"""Free resolutions of the trivial module Z over Z[Z_m x Z_n].

* the bar resolution, generators [x1|...|xl];
* the tensor-product resolution K, generators Psi(p, q) in degree p + q,
  with d = d1 + d2 built from the norms N_m, N_n and T_m = g1 - 1,
  T_n = g2 - 1.  With n = 1 the generators Psi(p, 0) give the 2-periodic
  minimal resolution of a cyclic group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .exact import IntMatrix, SizeLimitError, smith_normal_form
from .group import (
    GroupElement,
    GroupRingElem,
    GroupSpec,
    enumerate_tuples,
    g_mul,
    norm,
    translate,
)

MAX_BAR_DEGREE = 5
MAX_K_DEGREE = 8


@dataclass(frozen=True, slots=True)
class BarGenerator:
    entries: tuple[GroupElement, ...]
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.entries) > MAX_BAR_DEGREE:
            raise SizeLimitError(f"bar generators are capped at length {MAX_BAR_DEGREE}")
        object.__setattr__(self, "_hash", hash(tuple((g.i, g.j) for g in self.entries)))

    def __hash__(self):
        return self._hash

    @property
    def degree(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return "[" + "|".join(f"{g.i},{g.j}" for g in self.entries) + "]"


def bar(*entries: GroupElement) -> BarGenerator:
    return BarGenerator(tuple(entries))


@dataclass(frozen=True, slots=True, order=True)
class KGenerator:
    p: int
    q: int = 0

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"Psi({self.p},{self.q}) has a negative index")

    @property
    def degree(self) -> int:
        return self.p + self.q

    def __repr__(self) -> str:
        return f"Psi({self.p},{self.q})"


def psi(p: int, q: int = 0) -> KGenerator:
    return KGenerator(p, q)


Generator = Union[BarGenerator, KGenerator]


class FreeModuleElem:
    """sum of c_gen * gen with c_gen in Z[G], over generators of one degree."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: GroupSpec, terms: Mapping[Generator, GroupRingElem] | None = None):
        self.spec = spec
        out: dict[Generator, GroupRingElem] = {}
        for gen, c in (terms or {}).items():
            if isinstance(c, int):
                c = GroupRingElem.from_int(spec, c)
            if gen in out:
                c = out[gen] + c
            out[gen] = c
        self.terms = {gen: c for gen, c in out.items() if not c.is_zero()}
        degrees = {gen.degree for gen in self.terms}
        if len(degrees) > 1:
            raise ValueError(f"mixed degrees {sorted(degrees)} in one free module element")

    @classmethod
    def zero(cls, spec: GroupSpec) -> FreeModuleElem:
        return cls(spec)

    @classmethod
    def basis(cls, spec: GroupSpec, gen: Generator, coefficient: GroupRingElem | int = 1) -> FreeModuleElem:
        return cls(spec, {gen: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: FreeModuleElem) -> FreeModuleElem:
        if other.spec != self.spec:
            raise ValueError("free module elements over different groups")
        out = dict(self.terms)
        for gen, c in other.terms.items():
            out[gen] = out[gen] + c if gen in out else c
        return FreeModuleElem(self.spec, out)

    def __neg__(self) -> FreeModuleElem:
        return FreeModuleElem(self.spec, {gen: -c for gen, c in self.terms.items()})

    def __sub__(self, other: FreeModuleElem) -> FreeModuleElem:
        return self + (-other)

    def __rmul__(self, c) -> FreeModuleElem:
        # left action of Z[G] (or Z, or G)
        if isinstance(c, GroupElement):
            c = GroupRingElem.of(c)
        if isinstance(c, int):
            c = GroupRingElem.from_int(self.spec, c)
        return FreeModuleElem(self.spec, {gen: c * v for gen, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeModuleElem):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r}){gen!r}" for gen, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])))


def linear_extension(fn, elem: FreeModuleElem) -> FreeModuleElem:
    """Extend a map on generators Z[G]-linearly to a free module element."""
    acc: dict[Generator, GroupRingElem] = {}
    for gen, c in elem.terms.items():
        for tgt, v in fn(gen).terms.items():
            cv = c * v
            acc[tgt] = acc[tgt] + cv if tgt in acc else cv
    return FreeModuleElem(elem.spec, acc)


# ---------------------------------------------------------------------------
# bar resolution


def bar_differential(x: BarGenerator) -> FreeModuleElem:
    """x1[x2|...|xl] + sum_j (-1)^j [...|xj xj+1|...] + (-1)^l [x1|...|x(l-1)]."""
    l = x.degree
    if l == 0:
        raise ValueError("the bar differential is not defined on degree-0 generators")
    e = x.entries
    spec = e[0].spec
    terms: dict[Generator, GroupRingElem] = {}

    def add(gen, c):
        terms[gen] = terms[gen] + c if gen in terms else c

    add(BarGenerator(e[1:]), GroupRingElem.of(e[0]))
    for j in range(1, l):
        merged = e[: j - 1] + (g_mul(e[j - 1], e[j]),) + e[j + 1:]
        add(BarGenerator(merged), GroupRingElem.from_int(spec, (-1) ** j))
    add(BarGenerator(e[:-1]), GroupRingElem.from_int(spec, (-1) ** l))
    return FreeModuleElem(spec, terms)


def bar_boundary(elem: FreeModuleElem) -> FreeModuleElem:
    return linear_extension(bar_differential, elem)


# ---------------------------------------------------------------------------
# tensor-product resolution K


def k_differential(c: GroupRingElem | int, gen: KGenerator, spec: GroupSpec | None = None) -> FreeModuleElem:
    """d(c * Psi(p, q)) = c * d1(Psi(p, q)) + c * d2(Psi(p, q))."""
    if isinstance(c, int):
        if spec is None:
            raise TypeError("an integer coefficient needs an explicit spec")
        c = GroupRingElem.from_int(spec, c)
    spec = c.spec
    if gen.degree == 0:
        raise ValueError("the differential is not defined on Psi(0,0)")
    p, q = gen.p, gen.q
    terms: dict[Generator, GroupRingElem] = {}
    if p > 0:
        d1 = norm(spec, 1) if p % 2 == 0 else translate(spec, 1)
        terms[KGenerator(p - 1, q)] = c * d1
    if q > 0:
        d2 = norm(spec, 2) if q % 2 == 0 else translate(spec, 2)
        d2 = d2 * ((-1) ** p)
        terms[KGenerator(p, q - 1)] = c * d2
    return FreeModuleElem(spec, terms)


def k_boundary(elem: FreeModuleElem) -> FreeModuleElem:
    return linear_extension(lambda gen: k_differential(1, gen, elem.spec), elem)


def k_generators(degree: int) -> list[KGenerator]:
    return [KGenerator(degree - q, q) for q in range(degree + 1)]


def k_boundary_matrix(spec: GroupSpec, degree: int) -> IntMatrix:
    """d: K_degree -> K_(degree-1) as a matrix over Z.

    Basis of K_l as an abelian group: g * Psi(p, q), ordered by generator
    (p descending) then group element index.  degree 0 gives the
    augmentation K_0 -> Z.
    """
    elems = spec.elements()
    src = [(gen, g) for gen in k_generators(degree) for g in elems]
    if degree == 0:
        return IntMatrix([[1] * len(src)], cols=len(src))
    dst = {(gen, g): r for r, (gen, g) in enumerate((gen, g) for gen in k_generators(degree - 1) for g in elems)}
    rows = [[0] * len(src) for _ in dst]
    for col, (gen, g) in enumerate(src):
        image = k_differential(GroupRingElem.of(g), gen)
        for tgt, coeff in image.terms.items():
            for h, v in coeff.coeffs.items():
                rows[dst[(tgt, h)]][col] += v
    return IntMatrix(rows, cols=len(src))


@dataclass
class ComplexReport:
    spec: GroupSpec
    max_degree: int
    dd_checked: int = 0
    dd_failures: list[KGenerator] = field(default_factory=list)
    exact_degrees: list[int] = field(default_factory=list)
    inexact_degrees: dict[int, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.dd_failures and not self.inexact_degrees

    def __bool__(self) -> bool:
        return self.ok


def verify_complex(spec: GroupSpec, max_degree: int = 3, max_order: int = 36) -> ComplexReport:
    """Check d o d = 0 on K up to max_degree and exactness of the augmented
    complex (as abelian groups) in degrees 0 .. max_degree - 1."""
    if max_degree > 4:
        raise SizeLimitError("verify_complex supports max_degree <= 4")
    if spec.order > max_order:
        raise SizeLimitError(f"|G| = {spec.order} exceeds the limit {max_order}")
    report = ComplexReport(spec, max_degree)
    for degree in range(2, max_degree + 1):
        for gen in k_generators(degree):
            report.dd_checked += 1
            if not k_boundary(k_differential(1, gen, spec)).is_zero():
                report.dd_failures.append(gen)

    snfs = {deg: smith_normal_form(k_boundary_matrix(spec, deg)) for deg in range(0, max_degree + 1)}
    for degree in range(0, max_degree):
        dim = spec.order * (degree + 1)
        out_rank = snfs[degree].rank
        incoming = snfs[degree + 1]
        betti = dim - out_rank - incoming.rank
        torsion = [d for d in incoming.invariant_factors if d != 1]
        if betti == 0 and not torsion:
            report.exact_degrees.append(degree)
        else:
            report.inexact_degrees[degree] = f"free rank {betti}, torsion {torsion}"
    return report


def dd_vanishes(spec: GroupSpec, degrees: Iterable[int]) -> bool:
    return all(
        k_boundary(k_differential(1, gen, spec)).is_zero()
        for degree in degrees
        if degree >= 2
        for gen in k_generators(degree)
    )


def bar_generators(spec: GroupSpec, degree: int, limit: int | None = None) -> list[BarGenerator]:
    kwargs = {} if limit is None else {"limit": limit}
    return [BarGenerator(t) for t in enumerate_tuples(spec, degree, **kwargs)]
