"""Chain maps from the bar resolution to the smaller resolutions.

cyclic_F covers every degree for Z_m (targets Psi(k, 0)); product_F covers
degrees 0..3 for Z_m x Z_n.  Both are written term by term from the closed
formulas; verify_chain_map checks d F_k = F_(k-1) boundary on every bar
generator, which is what certifies them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .exact import SizeLimitError, floor_div
from .group import GroupRingElem, GroupSpec, enumerate_tuples, geometric_sum
from .resolutions import (
    MAX_BAR_DEGREE,
    BarGenerator,
    FreeModuleElem,
    KGenerator,
    bar_differential,
    k_boundary,
    linear_extension,
)

PRODUCT_MAX_DEGREE = 3


def cyclic_F(x: BarGenerator, spec: GroupSpec | None = None) -> FreeModuleElem:
    """F_k on a bar generator over Z_m (n = 1), landing on Psi(k, 0)."""
    if spec is None:
        if not x.entries:
            raise TypeError("the empty bar generator needs an explicit spec")
        spec = x.entries[0].spec
    if spec.n != 1:
        raise ValueError(f"cyclic_F needs a cyclic spec (n = 1), got {spec}")
    k = x.degree
    m = spec.m
    idx = [g.i for g in x.entries]
    target = KGenerator(k, 0)
    if k == 0:
        return FreeModuleElem.basis(spec, target)
    if k % 2:
        carries = prod(floor_div(idx[t] + idx[t + 1], m) for t in range(1, k - 1, 2))
        coeff = geometric_sum(spec.g1, idx[0]) * carries
    else:
        carries = prod(floor_div(idx[t] + idx[t + 1], m) for t in range(0, k, 2))
        coeff = GroupRingElem.from_int(spec, carries)
    return FreeModuleElem.basis(spec, target, coeff)


def product_F(x: BarGenerator, spec: GroupSpec | None = None) -> FreeModuleElem:
    """F_0 .. F_3 for Z_m x Z_n, landing in the tensor-product resolution."""
    if spec is None:
        if not x.entries:
            raise TypeError("the empty bar generator needs an explicit spec")
        spec = x.entries[0].spec
    k = x.degree
    if k > PRODUCT_MAX_DEGREE:
        raise ValueError(f"product chain map is only available in degrees 0..{PRODUCT_MAX_DEGREE}, got {k}")
    m, n = spec.m, spec.n
    g1, g2 = spec.g1, spec.g2
    e = spec.element
    if k == 0:
        return FreeModuleElem.basis(spec, KGenerator(0, 0))

    if k == 1:
        (x1,) = x.entries
        i, j = x1.i, x1.j
        return FreeModuleElem(spec, {
            KGenerator(1, 0): geometric_sum(g1, i),
            KGenerator(0, 1): geometric_sum(g2, j, start=e(i, 0)),
        })

    if k == 2:
        x1, x2 = x.entries
        i, j, s, t = x1.i, x1.j, x2.i, x2.j
        # sum_{alpha<s} sum_{beta<j} g1^(alpha+i) g2^beta
        middle = geometric_sum(g1, s, start=e(i, 0)) * geometric_sum(g2, j)
        return FreeModuleElem(spec, {
            KGenerator(2, 0): floor_div(i + s, m),
            KGenerator(1, 1): -middle,
            KGenerator(0, 2): GroupRingElem.of(e(i + s, 0), floor_div(j + t, n)),
        })

    x1, x2, x3 = x.entries
    i, j, s, t, kk, l = x1.i, x1.j, x2.i, x2.j, x3.i, x3.j
    carry_m = floor_div(kk + s, m)
    return FreeModuleElem(spec, {
        KGenerator(3, 0): geometric_sum(g1, i) * carry_m,
        KGenerator(2, 1): geometric_sum(g2, j, start=e(i, 0)) * carry_m,
        KGenerator(1, 2): geometric_sum(g1, kk, start=e(i + s, 0)) * floor_div(j + t, n),
        KGenerator(0, 3): geometric_sum(g2, j, start=e(i + s + kk, 0)) * floor_div(t + l, n),
    })


@dataclass
class ChainMapReport:
    spec: GroupSpec
    family: str
    max_degree: int
    generators_checked: int = 0
    counterexample: tuple[BarGenerator, FreeModuleElem, FreeModuleElem] | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return f"PASS degrees 1..{self.max_degree} ({self.generators_checked} generators)"
        x, lhs, rhs = self.counterexample
        return f"FAIL at {x!r}: dF = {lhs!r} but F(boundary) = {rhs!r}"


def verify_chain_map(spec: GroupSpec, max_degree: int = 3, family: str = "auto",
                     limit: int = 1_000_000) -> ChainMapReport:
    """Check d(F_k(x)) == F_(k-1)(boundary x) for every bar generator x of
    degree 1..max_degree.  family is "cyclic", "product" or "auto" (cyclic
    when n = 1)."""
    if family == "auto":
        family = "cyclic" if spec.n == 1 else "product"
    if family == "cyclic":
        F, cap = cyclic_F, MAX_BAR_DEGREE
    elif family == "product":
        F, cap = product_F, PRODUCT_MAX_DEGREE
    else:
        raise ValueError(f"unknown chain map family {family!r}")
    if max_degree > cap:
        raise SizeLimitError(f"the {family} chain map is checked up to degree {cap}, asked for {max_degree}")
    total = sum(spec.order ** k for k in range(1, max_degree + 1))
    if total > limit:
        raise SizeLimitError(f"{total} bar generators exceeds the limit {limit}")

    report = ChainMapReport(spec, family, max_degree)
    cache: dict[BarGenerator, FreeModuleElem] = {}

    def mapped(gen: BarGenerator) -> FreeModuleElem:
        if gen not in cache:
            cache[gen] = F(gen, spec)
        return cache[gen]

    for k in range(1, max_degree + 1):
        for entries in enumerate_tuples(spec, k):
            x = BarGenerator(entries)
            report.generators_checked += 1
            lhs = k_boundary(mapped(x))
            rhs = linear_extension(mapped, bar_differential(x))
            if lhs != rhs:
                report.counterexample = (x, lhs, rhs)
                return report
    return report
