"""Cochains on the bar resolution with values in Q/Z (roots of unity).

A BarCochain stores its values as a dense integer table of numerators over
one common denominator, indexed by group element indices, so coboundaries
and equality checks are vectorised table operations.  G acts trivially on
the coefficients throughout.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .exact import (
    Mod1System,
    SizeLimitError,
    UnityRoot,
    common_denominator,
    invariant_factors_of,
    lcm,
    smith_normal_form,
    IntMatrix,
)
from .group import GroupElement, GroupSpec
from .resolutions import BarGenerator, FreeModuleElem, KGenerator, bar_differential, k_differential

DEFAULT_BRUTE_FORCE_MAX_ORDER = 16
DEFAULT_ORACLE_MAX_ORDER = 9
MAX_TABLE_ENTRIES = 2_000_000


@functools.lru_cache(maxsize=64)
def mul_table(spec: GroupSpec) -> np.ndarray:
    idx = np.arange(spec.order)
    i, j = np.divmod(idx, spec.n)
    return ((i[:, None] + i[None, :]) % spec.m) * spec.n + (j[:, None] + j[None, :]) % spec.n


def _coords(spec: GroupSpec, arity: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """(i, j) exponent grids for each argument slot of an arity-fold table."""
    grids = np.indices((spec.order,) * arity)
    return [np.divmod(g, spec.n) for g in grids]


class BarCochain:
    """A map G^arity -> Q/Z, stored as numerators over a common denominator."""

    __slots__ = ("spec", "arity", "den", "table")

    def __init__(self, spec: GroupSpec, arity: int, den: int, table):
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (spec.order,) * arity:
            raise ValueError(f"table shape {table.shape} does not match |G|^{arity} for {spec}")
        if den <= 0:
            raise ValueError("denominator must be positive")
        table = np.mod(table, den)
        table.setflags(write=False)
        self.spec = spec
        self.arity = arity
        self.den = int(den)
        self.table = table

    @classmethod
    def trivial(cls, spec: GroupSpec, arity: int) -> BarCochain:
        return cls(spec, arity, 1, np.zeros((spec.order,) * arity, dtype=np.int64))

    @classmethod
    def from_function(cls, spec: GroupSpec, arity: int, fn: Callable[..., UnityRoot]) -> BarCochain:
        """Tabulate fn(x1, ..., x_arity) -> UnityRoot, element by element."""
        elems = spec.elements()
        values = {xs: fn(*xs) for xs in itertools.product(elems, repeat=arity)}
        den = common_denominator(values.values()) if values else 1
        table = np.zeros((spec.order,) * arity, dtype=np.int64)
        for xs, v in values.items():
            table[tuple(x.index for x in xs)] = v.num * (den // v.den)
        return cls(spec, arity, den, table)

    def __call__(self, *xs: GroupElement) -> UnityRoot:
        if len(xs) != self.arity:
            raise TypeError(f"expected {self.arity} arguments, got {len(xs)}")
        return UnityRoot(int(self.table[tuple(x.index for x in xs)]), self.den)

    def values(self) -> list[UnityRoot]:
        return [UnityRoot(int(v), self.den) for v in self.table.ravel()]

    def rescaled(self, den: int) -> np.ndarray:
        if den % self.den:
            raise ValueError(f"{den} is not a multiple of {self.den}")
        return self.table * (den // self.den)

    def _binary(self, other: BarCochain, sign: int) -> BarCochain:
        if other.spec != self.spec or other.arity != self.arity:
            raise ValueError("cochains over different groups or of different arity")
        den = lcm(self.den, other.den)
        return BarCochain(self.spec, self.arity, den, self.rescaled(den) + sign * other.rescaled(den))

    def __add__(self, other: BarCochain) -> BarCochain:
        return self._binary(other, 1)

    def __sub__(self, other: BarCochain) -> BarCochain:
        return self._binary(other, -1)

    def __neg__(self) -> BarCochain:
        return BarCochain(self.spec, self.arity, self.den, -self.table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BarCochain):
            return NotImplemented
        return (self - other).is_trivial() if (other.spec, other.arity) == (self.spec, self.arity) else False

    __hash__ = None

    def is_trivial(self) -> bool:
        return not self.table.any()

    def is_normalized(self) -> bool:
        """Value 1 (that is, 0 in Q/Z) whenever some argument is the identity."""
        return all(not np.take(self.table, 0, axis=ax).any() for ax in range(self.arity))

    def perturbed(self, xs: Sequence[GroupElement], delta: UnityRoot) -> BarCochain:
        den = lcm(self.den, delta.den)
        table = self.rescaled(den).copy()
        table[tuple(x.index for x in xs)] += delta.num * (den // delta.den)
        return BarCochain(self.spec, self.arity, den, table)

    def __repr__(self) -> str:
        return f"BarCochain({self.spec}, arity={self.arity}, den={self.den})"


def _check_size(spec: GroupSpec, arity: int, max_order: int | None = None) -> None:
    if max_order is not None and spec.order > max_order:
        raise SizeLimitError(f"|G| = {spec.order} exceeds the configured limit {max_order}")
    if spec.order ** arity > MAX_TABLE_ENTRIES:
        raise SizeLimitError(f"|G|^{arity} = {spec.order ** arity} table entries is too many")


def coboundary(f: BarCochain, max_order: int | None = DEFAULT_BRUTE_FORCE_MAX_ORDER) -> BarCochain:
    """(df)(x1..x(l+1)) = f(x2..) + sum_i (-1)^i f(..xi x(i+1)..) + (-1)^(l+1) f(x1..xl)."""
    l = f.arity
    if not 1 <= l <= 3:
        raise ValueError(f"coboundary is implemented for arity 1..3, got {l}")
    _check_size(f.spec, l + 1, max_order)
    M = mul_table(f.spec)
    g = list(np.indices((f.spec.order,) * (l + 1)))
    t = f.table
    out = t[tuple(g[1:])].copy()
    for i in range(1, l + 1):
        args = g[: i - 1] + [M[g[i - 1], g[i]]] + g[i + 1:]
        out += (-1) ** i * t[tuple(args)]
    out += (-1) ** (l + 1) * t[tuple(g[:-1])]
    return BarCochain(f.spec, l + 1, f.den, out)


def evaluate_on_chain(f: BarCochain, chain: FreeModuleElem) -> UnityRoot:
    """f applied to a Z[G]-combination of bar generators (trivial action)."""
    total = UnityRoot(0)
    for gen, c in chain.terms.items():
        total = total + c.augmentation() * f(*gen.entries)
    return total


def coboundary_via_bar(f: BarCochain) -> BarCochain:
    """Slow reference: (df)(x) = f(boundary x), one bar generator at a time."""
    return BarCochain.from_function(
        f.spec, f.arity + 1, lambda *xs: evaluate_on_chain(f, bar_differential(BarGenerator(xs)))
    )


def is_cocycle_bar(f: BarCochain, max_order: int | None = DEFAULT_BRUTE_FORCE_MAX_ORDER) -> bool:
    return coboundary(f, max_order=max_order).is_trivial()


# ---------------------------------------------------------------------------
# representative families


@dataclass(frozen=True, order=True)
class CocycleParams3:
    a: int
    b: int
    d: int

    def validate(self, spec: GroupSpec) -> CocycleParams3:
        if not (0 <= self.a < spec.m and 0 <= self.b < spec.gcd and 0 <= self.d < spec.n):
            raise ValueError(
                f"params (a={self.a}, b={self.b}, d={self.d}) out of range for {spec}: "
                f"need 0 <= a < {spec.m}, 0 <= b < {spec.gcd}, 0 <= d < {spec.n}"
            )
        return self

    def as_dict(self) -> dict[str, int]:
        return {"a": self.a, "b": self.b, "d": self.d}


def all_params(spec: GroupSpec) -> list[CocycleParams3]:
    return [
        CocycleParams3(a, b, d)
        for a in range(spec.m)
        for b in range(spec.gcd)
        for d in range(spec.n)
    ]


def omega(spec: GroupSpec, a: int, l: int) -> BarCochain:
    """Odd-degree cocycle on Z_m: g^i1.. -> zeta_m^(a i1 [(i2+i3)/m] ... [(i(l-1)+il)/m])."""
    if spec.n != 1:
        raise ValueError(f"omega is defined on cyclic specs (n = 1), got {spec}")
    if l % 2 == 0 or l < 1:
        raise ValueError(f"omega needs an odd degree, got {l}; even-degree cohomology vanishes")
    if not 0 <= a < spec.m:
        raise ValueError(f"a must lie in [0, {spec.m}), got {a}")
    _check_size(spec, l)
    m = spec.m
    idx = list(np.indices((m,) * l))
    expo = a * idx[0]
    for t in range(1, l - 1, 2):
        expo = expo * ((idx[t] + idx[t + 1]) // m)
    return BarCochain(spec, l, m, expo)


def phi2(spec: GroupSpec, b: int) -> BarCochain:
    """(g1^i g2^j, g1^s g2^t) -> zeta_(m,n)^(b j s)."""
    g = spec.gcd
    if not 0 <= b < g:
        raise ValueError(f"b must lie in [0, {g}), got {b}")
    (i, j), (s, t) = _coords(spec, 2)
    return BarCochain(spec, 2, g, b * j * s)


def phi3(spec: GroupSpec, params: CocycleParams3) -> BarCochain:
    """zeta_m^(a [(k+s)/m] i) zeta_n^(b [(k+s)/m] j) zeta_n^(d [(t+l)/n] j)."""
    params.validate(spec)
    m, n = spec.m, spec.n
    L = lcm(m, n)
    (i, j), (s, t), (k, l) = _coords(spec, 3)
    carry_m = (k + s) // m
    carry_n = (t + l) // n
    num = (params.a * carry_m * i) * (L // m) + (params.b * carry_m * j + params.d * carry_n * j) * (L // n)
    return BarCochain(spec, 3, L, num)


# ---------------------------------------------------------------------------
# cochains on the tensor-product resolution


@dataclass(frozen=True)
class ResolutionCochain2:
    """Values on Psi(2,0), Psi(1,1), Psi(0,2)."""

    A: UnityRoot
    B: UnityRoot
    C: UnityRoot

    def as_mapping(self) -> dict[KGenerator, UnityRoot]:
        return {KGenerator(2, 0): self.A, KGenerator(1, 1): self.B, KGenerator(0, 2): self.C}


@dataclass(frozen=True)
class ResolutionCochain3:
    """Values on Psi(3,0), Psi(2,1), Psi(1,2), Psi(0,3)."""

    A: UnityRoot
    B: UnityRoot
    C: UnityRoot
    D: UnityRoot

    def as_mapping(self) -> dict[KGenerator, UnityRoot]:
        return {KGenerator(3, 0): self.A, KGenerator(2, 1): self.B,
                KGenerator(1, 2): self.C, KGenerator(0, 3): self.D}


def _num(x: UnityRoot, den: int) -> int:
    return x.num * (den // x.den)


def pullback2(spec: GroupSpec, rc: ResolutionCochain2) -> BarCochain:
    """A^[(i+s)/m] B^(-js) C^[(j+t)/n]."""
    den = common_denominator([rc.A, rc.B, rc.C])
    (i, j), (s, t) = _coords(spec, 2)
    num = (_num(rc.A, den) * ((i + s) // spec.m)
           - _num(rc.B, den) * j * s
           + _num(rc.C, den) * ((j + t) // spec.n))
    return BarCochain(spec, 2, den, num)


def pullback3(spec: GroupSpec, rc: ResolutionCochain3) -> BarCochain:
    """A^([(k+s)/m] i) B^([(k+s)/m] j) C^([(j+t)/n] k) D^([(t+l)/n] j)."""
    den = common_denominator([rc.A, rc.B, rc.C, rc.D])
    (i, j), (s, t), (k, l) = _coords(spec, 3)
    carry_m = (k + s) // spec.m
    num = (_num(rc.A, den) * carry_m * i
           + _num(rc.B, den) * carry_m * j
           + _num(rc.C, den) * ((j + t) // spec.n) * k
           + _num(rc.D, den) * ((t + l) // spec.n) * j)
    return BarCochain(spec, 3, den, num)


def pullback_via_chain_map(spec: GroupSpec, values: Mapping[KGenerator, UnityRoot], degree: int,
                           family: str = "product") -> BarCochain:
    """Slow reference pullback: x -> f(F_degree(x)) for a cochain f on the
    small resolution given by its values on free generators."""
    from .chainmaps import cyclic_F, product_F

    F = product_F if family == "product" else cyclic_F

    def value(*xs):
        total = UnityRoot(0)
        for gen, c in F(BarGenerator(xs), spec).terms.items():
            total = total + c.augmentation() * values.get(gen, UnityRoot(0))
        return total

    return BarCochain.from_function(spec, degree, value)


def is_cocycle_resolution(rc: ResolutionCochain2 | ResolutionCochain3, spec: GroupSpec) -> bool:
    m, n = spec.m, spec.n
    if isinstance(rc, ResolutionCochain2):
        return (m * rc.B).is_one() and (n * rc.B).is_one()
    return (m * rc.A).is_one() and (n * rc.B + m * rc.C).is_one() and (n * rc.D).is_one()


def resolution_coboundary_witness(rc: ResolutionCochain3, spec: GroupSpec) -> UnityRoot | None:
    """E with B = E^m and C = E^(-n), if one exists (A, D not examined)."""
    sol = Mod1System([[spec.m], [-spec.n]]).solve([rc.B, rc.C])
    return None if sol is None else sol[0]


def is_coboundary_resolution(rc: ResolutionCochain2 | ResolutionCochain3, spec: GroupSpec) -> bool:
    if isinstance(rc, ResolutionCochain2):
        return rc.B.is_one()
    if not (rc.A.is_one() and rc.D.is_one()):
        return False
    return resolution_coboundary_witness(rc, spec) is not None


def resolution_coboundary(spec: GroupSpec, values: Mapping[KGenerator, UnityRoot], degree: int) -> dict[KGenerator, UnityRoot]:
    """(d* f)(Psi) = f(d Psi) for f given on the generators of K_degree."""
    out = {}
    for q in range(degree + 2):
        gen = KGenerator(degree + 1 - q, q)
        total = UnityRoot(0)
        for tgt, c in k_differential(1, gen, spec).terms.items():
            total = total + c.augmentation() * values.get(tgt, UnityRoot(0))
        out[gen] = total
    return out


# ---------------------------------------------------------------------------
# coboundary oracle


@functools.lru_cache(maxsize=32)
def coboundary_system(spec: GroupSpec, arity: int) -> Mod1System:
    """Integer matrix of d acting on (arity-1)-cochain tables, rows indexed by
    arity-tuples, columns by (arity-1)-tuples (both flattened row-major)."""
    N = spec.order
    M = mul_table(spec)
    l = arity
    g = [a.ravel() for a in np.indices((N,) * l)]
    shape = (N,) * (l - 1)

    def flat(cols):
        return np.ravel_multi_index(tuple(cols), shape) if l > 1 else np.zeros_like(g[0])

    faces = [(1, flat(g[1:]))]
    for i in range(1, l):
        faces.append(((-1) ** i, flat(g[: i - 1] + [M[g[i - 1], g[i]]] + g[i + 1:])))
    faces.append(((-1) ** l, flat(g[:-1])))
    rows = []
    for e in range(N ** l):
        row: dict[int, int] = {}
        for sign, cols in faces:
            c = int(cols[e])
            row[c] = row.get(c, 0) + sign
        rows.append({c: v for c, v in row.items() if v})
    return Mod1System(sparse_rows=rows, ncols=N ** (l - 1))


def is_coboundary_bar(f: BarCochain, max_order: int | None = None) -> BarCochain | None:
    """A cochain g with dg = f, or None when f is not a coboundary."""
    if f.arity not in (2, 3):
        raise ValueError(f"coboundary oracle handles arity 2 or 3, got {f.arity}")
    if max_order is None:
        max_order = DEFAULT_ORACLE_MAX_ORDER if f.arity == 3 else DEFAULT_BRUTE_FORCE_MAX_ORDER
    _check_size(f.spec, f.arity, max_order)
    system = coboundary_system(f.spec, f.arity)
    x = system.solve(f.values())
    if x is None:
        return None
    den = common_denominator(x)
    table = np.array([v.num * (den // v.den) for v in x], dtype=np.int64)
    return BarCochain(f.spec, f.arity - 1, den, table.reshape((f.spec.order,) * (f.arity - 1)))


def is_cohomologous(f: BarCochain, h: BarCochain, max_order: int | None = None) -> bool:
    return is_coboundary_bar(f - h, max_order=max_order) is not None


# ---------------------------------------------------------------------------
# cohomology groups


@dataclass
class CohomologyGroup:
    spec: GroupSpec
    degree: int
    factors: tuple[int, ...]
    mode: str
    classes: int | None = None

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    @property
    def invariant_factors(self) -> list[int]:
        return invariant_factors_of(self.factors)

    def describe(self) -> str:
        nontrivial = [f for f in self.factors if f != 1]
        return " x ".join(f"Z_{f}" for f in self.factors) + (
            "" if nontrivial else " (trivial)"
        )


def _closed_form_factors(spec: GroupSpec, degree: int) -> tuple[int, ...]:
    if degree == 2:
        return (spec.gcd,)
    if degree == 3:
        return (spec.m, spec.gcd, spec.n)
    raise ValueError(f"degree must be 2 or 3, got {degree}")


def representatives(spec: GroupSpec, degree: int) -> list[BarCochain]:
    if degree == 2:
        return [phi2(spec, b) for b in range(spec.gcd)]
    if degree == 3:
        return [phi3(spec, p) for p in all_params(spec)]
    raise ValueError(f"degree must be 2 or 3, got {degree}")


def count_classes(reps: Sequence[BarCochain], max_order: int | None = None) -> int:
    """Number of cohomology classes among reps; every pair is tested directly."""
    parent = list(range(len(reps)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in itertools.combinations(range(len(reps)), 2):
        if is_cohomologous(reps[a], reps[b], max_order=max_order):
            parent[find(a)] = find(b)
    return len({find(a) for a in range(len(reps))})


def _resolution_homology(spec: GroupSpec, degree: int) -> tuple[int, ...]:
    """Torsion of H_degree(K tensor_G Z), the Pontryagin dual of H^degree(G, Q/Z)."""

    def boundary(deg):
        src = [KGenerator(deg - q, q) for q in range(deg + 1)]
        dst = [KGenerator(deg - 1 - q, q) for q in range(deg)]
        rows = [[0] * len(src) for _ in dst]
        for c, gen in enumerate(src):
            for tgt, coeff in k_differential(1, gen, spec).terms.items():
                rows[dst.index(tgt)][c] += coeff.augmentation()
        return IntMatrix(rows, cols=len(src))

    outgoing = smith_normal_form(boundary(degree)).rank
    incoming = smith_normal_form(boundary(degree + 1))
    free = (degree + 1) - outgoing - incoming.rank
    if free:
        raise ArithmeticError(f"H_{degree} has free rank {free}; the resolution is not acyclic")
    return tuple(d for d in incoming.invariant_factors if d != 1) or (1,)


def cohomology_group(spec: GroupSpec, degree: int, mode: str = "closed",
                     max_order: int | None = None) -> CohomologyGroup:
    """H^degree(Z_m x Z_n, k*) for degree 2 or 3.

    mode "closed": the known cyclic decomposition.
    mode "oracle": checks every representative is a cocycle and counts the
    classes among them by pairwise coboundary tests on the bar complex.
    mode "resolution": reads the group off the tensor-product resolution by SNF.
    """
    if mode == "closed":
        return CohomologyGroup(spec, degree, _closed_form_factors(spec, degree), mode)
    if mode == "resolution":
        return CohomologyGroup(spec, degree, _resolution_homology(spec, degree), mode)
    if mode != "oracle":
        raise ValueError(f"unknown mode {mode!r}")
    reps = representatives(spec, degree)
    brute_limit = DEFAULT_BRUTE_FORCE_MAX_ORDER if max_order is None else max(max_order, DEFAULT_BRUTE_FORCE_MAX_ORDER)
    bad = [r for r in reps if not is_cocycle_bar(r, max_order=brute_limit)]
    if bad:
        raise ArithmeticError(f"{len(bad)} representatives are not cocycles")
    classes = count_classes(reps, max_order=max_order)
    return CohomologyGroup(spec, degree, _closed_form_factors(spec, degree), mode, classes=classes)
