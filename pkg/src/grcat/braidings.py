"""Quasi-bicharacters of Z_m x Z_n with respect to the 3-cocycles phi3(a, b, d).

A quasi-bicharacter is recorded by the four values r11 = R(g1, g1),
r12 = R(g1, g2), r21 = R(g2, g1), r22 = R(g2, g2); the full table is
R(g1^i g2^j, g1^s g2^t) = is*r11 + it*r12 + js*r21 + jt*r22 (mod 1) with
exponents reduced into [0, m) x [0, n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cocycles import BarCochain, CocycleParams3, _check_size, mul_table, phi3
from .exact import SizeLimitError, UnityRoot, common_denominator, lcm
from .group import GroupElement, GroupSpec

DEFAULT_BRAIDING_MAX_ORDER = 16


@dataclass(frozen=True)
class QuasiBicharacter:
    """Four values r11, r12, r21, r22 attached to a cocycle.

    Construction does not enforce the defining equations, so that
    invalid quadruples can be fed to the verifiers; use
    satisfies_constraints() or verify_hexagon() to test them.
    """

    spec: GroupSpec
    params: CocycleParams3
    r11: UnityRoot
    r12: UnityRoot
    r21: UnityRoot
    r22: UnityRoot

    @property
    def values(self) -> tuple[UnityRoot, UnityRoot, UnityRoot, UnityRoot]:
        return (self.r11, self.r12, self.r21, self.r22)

    def __call__(self, x: GroupElement, y: GroupElement) -> UnityRoot:
        return (x.i * y.i) * self.r11 + (x.i * y.j) * self.r12 + (x.j * y.i) * self.r21 + (x.j * y.j) * self.r22

    def table(self) -> tuple[int, np.ndarray]:
        """(den, numerators) of the full |G| x |G| table."""
        den = common_denominator(self.values)
        nums = [r.num * (den // r.den) for r in self.values]
        idx = np.arange(self.spec.order)
        i, j = np.divmod(idx, self.spec.n)
        tab = (np.outer(i, i) * nums[0] + np.outer(i, j) * nums[1]
               + np.outer(j, i) * nums[2] + np.outer(j, j) * nums[3])
        return den, np.mod(tab, den)

    def effective_values(self) -> tuple[UnityRoot, UnityRoot, UnityRoot, UnityRoot]:
        """The four values as read back from the table; they differ from the
        stored ones only when g1 or g2 is the identity (m = 1 or n = 1)."""
        g1, g2 = self.spec.g1, self.spec.g2
        return (self(g1, g1), self(g1, g2), self(g2, g1), self(g2, g2))

    def satisfies_constraints(self) -> bool:
        """The four power conditions characterising quasi-bicharacters."""
        m, n = self.spec.m, self.spec.n
        a, b, d = self.params.a, self.params.b, self.params.d
        za, zd, zb = UnityRoot(a, m), UnityRoot(d, n), UnityRoot(b, n)
        return (
            m * self.r11 == za and za == -za
            and n * self.r22 == zd and zd == -zd
            and (n * self.r12).is_one() and m * self.r12 == -zb
            and (n * self.r21).is_one() and m * self.r21 == zb
        )

    def as_dict(self) -> dict[str, str]:
        return {"r11": str(self.r11), "r12": str(self.r12), "r21": str(self.r21), "r22": str(self.r22)}


@dataclass(frozen=True)
class BraidedStructure:
    params: CocycleParams3
    r: QuasiBicharacter

    def __post_init__(self):
        if self.r.params != self.params:
            raise ValueError(f"braiding built for {self.r.params}, structure claims {self.params}")

    @property
    def symmetric(self) -> bool:
        return is_skew_symmetric(self.r)


def _roots_of(multiplier: int, target: UnityRoot) -> list[UnityRoot]:
    """All x in Q/Z with multiplier * x = target."""
    return [UnityRoot(target.num + k * target.den, multiplier * target.den) for k in range(multiplier)]


def _sort_key(r: QuasiBicharacter):
    return tuple(v.as_fraction() for v in r.values)


def solve_quasi_bicharacters(spec: GroupSpec, params: CocycleParams3) -> list[QuasiBicharacter]:
    """Every quadruple satisfying the power conditions for phi3(params),
    sorted lexicographically by value."""
    params.validate(spec)
    m, n = spec.m, spec.n
    za, zd, zb = UnityRoot(params.a, m), UnityRoot(params.d, n), UnityRoot(params.b, n)
    if za != -za or zd != -zd:
        return []
    r11s = _roots_of(m, za)
    r22s = _roots_of(n, zd)
    # n*r = 0 means r = u/n; then m*r = m*u/n
    r12s = [UnityRoot(u, n) for u in range(n) if m * UnityRoot(u, n) == -zb]
    r21s = [UnityRoot(u, n) for u in range(n) if m * UnityRoot(u, n) == zb]
    out = [QuasiBicharacter(spec, params, *vals) for vals in itertools.product(r11s, r12s, r21s, r22s)]
    return sorted(out, key=_sort_key)


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class CheckResult:
    ok: bool
    checked: int
    counterexample: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _phi_table(spec: GroupSpec, phi: BarCochain | CocycleParams3) -> BarCochain:
    if isinstance(phi, CocycleParams3):
        return phi3(spec, phi)
    if phi.arity != 3 or phi.spec != spec:
        raise ValueError("expected a 3-cochain on the same group")
    return phi


def verify_hexagon(r: QuasiBicharacter, phi: BarCochain | None = None,
                   max_order: int | None = DEFAULT_BRAIDING_MAX_ORDER) -> CheckResult:
    """Check both hexagon identities on every triple (x, y, z), written with
    the full cocycle, plus the slot symmetry phi(x, y, z) = phi(x, z, y).

    R(xy, z) = R(x, z) R(y, z) phi(z, x, y) phi(x, y, z) / phi(x, z, y)
    R(x, yz) = R(x, y) R(x, z) phi(y, x, z) / (phi(y, z, x) phi(x, y, z))
    """
    spec = r.spec
    _check_size(spec, 3, max_order)
    phi = _phi_table(spec, r.params if phi is None else phi)
    rden, R = r.table()
    den = lcm(rden, phi.den)
    R = R * (den // rden)
    P = phi.rescaled(den)
    M = mul_table(spec)
    N = spec.order
    x, y, z = np.indices((N, N, N))
    xy, yz = M[x, y], M[y, z]
    first = R[xy, z] - R[x, z] - R[y, z] - P[z, x, y] - P[x, y, z] + P[x, z, y]
    second = R[x, yz] - R[x, y] - R[x, z] - P[y, x, z] + P[y, z, x] + P[x, y, z]
    slot = P[x, y, z] - P[x, z, y]
    elems = spec.elements()
    for name, arr in (("first hexagon", first), ("second hexagon", second), ("slot symmetry", slot)):
        bad = np.argwhere(np.mod(arr, den) != 0)
        if len(bad):
            a, b, c = (elems[int(k)] for k in bad[0])
            return CheckResult(False, N ** 3, (a, b, c), name)
    return CheckResult(True, N ** 3)


def verify_pentagon(spec: GroupSpec, phi: BarCochain | CocycleParams3,
                    max_order: int | None = DEFAULT_BRAIDING_MAX_ORDER) -> CheckResult:
    """Pentagon for the associator phi on simple objects x, y, z, w.

    Going ((xy)z)w -> x(y(zw)) along the two-step path multiplies by
    phi(xy, z, w) phi(x, y, zw); the three-step path by
    phi(x, y, z) phi(x, yz, w) phi(y, z, w).  The two must coincide.
    """
    _check_size(spec, 4, max_order)
    phi = _phi_table(spec, phi)
    P = phi.table.tolist()
    den = phi.den
    M = mul_table(spec).tolist()
    N = spec.order
    checked = 0
    for x in range(N):
        Px, Mx = P[x], M[x]
        for y in range(N):
            xy = Mx[y]
            Pxy, Py, Pxy_row = Px[y], P[y], P[xy]
            for z in range(N):
                yz = M[y][z]
                two_first = Pxy_row[z]
                three = Pxy[z]
                Pxyz = Px[yz]
                Pyz = Py[z]
                for w in range(N):
                    checked += 1
                    two = two_first[w] + Pxy[M[z][w]]
                    if (two - three - Pxyz[w] - Pyz[w]) % den:
                        elems = spec.elements()
                        return CheckResult(False, checked, tuple(elems[k] for k in (x, y, z, w)), "pentagon")
    return CheckResult(True, checked)


def is_skew_symmetric(r: QuasiBicharacter) -> bool:
    """R(x, y) R(y, x) = 1 for all x, y; decided by the closed criterion on
    the four values and confirmed on the full table."""
    e11, e12, e21, e22 = r.effective_values()
    closed = (2 * e11).is_one() and (2 * e22).is_one() and (e12 + e21).is_one()
    den, R = r.table()
    table = not np.mod(R + R.T, den).any()
    if closed != table:
        raise ArithmeticError(f"skew-symmetry criteria disagree on {r}")
    return closed


def is_symmetric_table(r: QuasiBicharacter) -> bool:
    den, R = r.table()
    return not np.mod(R + R.T, den).any()


# ---------------------------------------------------------------------------
# brute-force completeness


def candidate_denominator(spec: GroupSpec) -> int:
    return lcm(2 * spec.m, 2 * spec.n, spec.m * spec.n)


@dataclass
class BruteForceResult:
    spec: GroupSpec
    params: CocycleParams3
    denominator: int
    candidates: int
    constraints: int
    solutions: list[QuasiBicharacter] = field(default_factory=list)


def brute_force_quasi_bicharacters(spec: GroupSpec, params: CocycleParams3,
                                   max_candidates: int = 2_000_000) -> BruteForceResult:
    """Filter every quadruple with entries in (1/N)Z/Z, N = lcm(2m, 2n, mn),
    by the hexagon identities on the table it induces.

    The table is linear in the quadruple's numerators u, so each identity
    at a triple (x, y, z) reads c . u = rhs (mod N) for an integer vector c;
    distinct (c, rhs) pairs are applied one after another to the array of
    all N^4 candidates.  The quadruple must also be read back from its own
    table, which is a real condition when m = 1 or n = 1.  Survivors are
    re-checked with verify_hexagon.
    """
    params.validate(spec)
    N = candidate_denominator(spec)
    if N ** 4 > max_candidates:
        raise SizeLimitError(f"{N ** 4} candidates exceeds the limit {max_candidates}")
    _check_size(spec, 3, DEFAULT_BRAIDING_MAX_ORDER)
    phi = phi3(spec, params)
    P = phi.rescaled(N)  # phi.den = lcm(m, n) divides mn, hence N

    order = spec.order
    idx = np.arange(order)
    i, j = np.divmod(idx, spec.n)
    # coef[x, y] = (i_x i_y, i_x j_y, j_x i_y, j_x j_y)
    coef = np.stack([np.outer(i, i), np.outer(i, j), np.outer(j, i), np.outer(j, j)], axis=-1)
    M = mul_table(spec)
    x, y, z = (a.ravel() for a in np.indices((order,) * 3))
    c1 = coef[M[x, y], z] - coef[x, z] - coef[y, z]
    rhs1 = P[z, x, y] + P[x, y, z] - P[x, z, y]
    c2 = coef[x, M[y, z]] - coef[x, y] - coef[x, z]
    rhs2 = P[y, x, z] - P[y, z, x] - P[x, y, z]
    g1, g2 = spec.g1.index, spec.g2.index
    readback = coef[[g1, g1, g2, g2], [g1, g2, g1, g2]] - np.eye(4, dtype=np.int64)
    rows = np.concatenate([
        np.column_stack([c1, rhs1]),
        np.column_stack([c2, rhs2]),
        np.column_stack([readback, np.zeros(4, dtype=np.int64)]),
    ])
    rows = np.unique(np.mod(rows, N), axis=0)
    rows = rows[rows.any(axis=1)]

    cand = np.indices((N,) * 4).reshape(4, -1).T.astype(np.int64)
    for row in rows:
        if not len(cand):
            break
        keep = (cand @ row[:4] - row[4]) % N == 0
        cand = cand[keep]

    result = BruteForceResult(spec, params, N, N ** 4, len(rows))
    for u in cand:
        r = QuasiBicharacter(spec, params, *(UnityRoot(int(v), N) for v in u))
        if not verify_hexagon(r, phi):
            raise ArithmeticError(f"filtered candidate {r} fails the direct hexagon check")
        result.solutions.append(r)
    result.solutions.sort(key=_sort_key)
    return result


def solution_set(rs) -> set[tuple[Fraction, ...]]:
    return {tuple(v.as_fraction() for v in r.values) for r in rs}
