"""Exact arithmetic: roots of unity as elements of Q/Z, integer helpers,
Smith normal form, and linear systems over Q/Z.

A root of unity exp(2*pi*i*q) is stored additively as the reduced fraction
q in [0, 1), so multiplication of scalars becomes addition mod 1 and
raising to the k-th power becomes multiplication by k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class SizeLimitError(ValueError):
    """A brute-force computation would exceed a configured size limit."""


def floor_div(x: int, m: int) -> int:
    """Integer part of x/m."""
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    return x // m


def rem(x: int, m: int) -> int:
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    return x - m * floor_div(x, m)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@dataclass(frozen=True, slots=True)
class UnityRoot:
    """The root of unity exp(2*pi*i*num/den), kept in canonical form."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError(f"denominator must be positive, got {self.den}")
        num = self.num % self.den
        g = gcd(num, self.den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> UnityRoot:
        q = Fraction(q)
        return cls(q.numerator, q.denominator)

    @classmethod
    def parse(cls, text: str) -> UnityRoot:
        """Parse ``"p/q"`` or ``"p"``."""
        num, _, den = text.strip().partition("/")
        return cls(int(num), int(den) if den else 1)

    @property
    def order(self) -> int:
        return self.den

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_one(self) -> bool:
        return self.num == 0

    def __add__(self, other: UnityRoot) -> UnityRoot:
        if not isinstance(other, UnityRoot):
            return NotImplemented
        return UnityRoot(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> UnityRoot:
        return UnityRoot(-self.num, self.den)

    def __sub__(self, other: UnityRoot) -> UnityRoot:
        if not isinstance(other, UnityRoot):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> UnityRoot:
        # k * x in Q/Z is the k-th power of the root
        if not isinstance(k, int):
            return NotImplemented
        return UnityRoot(self.num * k, self.den)

    __rmul__ = __mul__

    def __lt__(self, other: UnityRoot) -> bool:
        return self.as_fraction() < other.as_fraction()

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"UnityRoot({self.num}/{self.den})"


ONE = UnityRoot(0, 1)


def root(numerator: int, order: int) -> UnityRoot:
    """zeta_order ** numerator, where zeta_order = exp(2*pi*i/order)."""
    if order <= 0:
        raise ValueError(f"order must be positive, got {order}")
    return UnityRoot(numerator, order)


def common_denominator(values: Iterable[UnityRoot]) -> int:
    return lcm(*(v.den for v in values))


# ---------------------------------------------------------------------------
# integer matrices and Smith normal form


class IntMatrix:
    """Dense matrix of Python integers (arbitrary precision)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]], cols: int | None = None):
        rows = [tuple(int(v) for v in row) for row in entries]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, size: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(size)] for i in range(size)], cols=size)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols_b] for row in self.entries],
            cols=other.cols,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for r in range(k + 1, n):
                    if a[r][k] != 0:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """A = U @ S @ V with U, V unimodular and S in Smith normal form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(A: IntMatrix | Sequence[Sequence[int]]) -> SnfDecomposition:
    """Smith normal form with transforms.

    Row and column operations are applied to a working copy of A while
    their inverses are accumulated into U (columns) and V (rows), so that
    A = U S V holds at every step.
    """
    if not isinstance(A, IntMatrix):
        A = IntMatrix(A)
    nr, nc = A.rows, A.cols
    S = A.tolist()
    U = IntMatrix.identity(nr).tolist()
    V = IntMatrix.identity(nc).tolist()

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src ; U picks up the inverse on its columns
        if q == 0:
            return
        Sd, Ss = S[dst], S[src]
        for c in range(nc):
            if Ss[c]:
                Sd[c] += q * Ss[c]
        for row in U:
            row[src] -= q * row[dst]

    def negate_row(i):
        S[i] = [-v for v in S[i]]
        for row in U:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    def add_col(dst, src, q):
        # col_dst += q * col_src ; V picks up the inverse on its rows
        if q == 0:
            return
        for row in S:
            if row[src]:
                row[dst] += q * row[src]
        Vd, Vs = V[dst], V[src]
        for c in range(nc):
            if Vd[c]:
                Vs[c] -= q * Vd[c]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = S[t][t]
            for i in range(t + 1, nr):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, nc):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
            col_rest = [i for i in range(t + 1, nr) if S[i][t]]
            row_rest = [j for j in range(t + 1, nc) if S[t][j]]
            if col_rest or row_rest:
                # a remainder smaller than the pivot survived; move it in
                cands = [(abs(S[i][t]), "r", i) for i in col_rest]
                cands += [(abs(S[t][j]), "c", j) for j in row_rest]
                _, kind, k = min(cands)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            negate_row(t)
        t += 1

    return SnfDecomposition(IntMatrix(U, cols=nr), IntMatrix(S, cols=nc), IntMatrix(V, cols=nc))


def invariant_factors_of(orders: Iterable[int]) -> list[int]:
    """Invariant factors d1 | d2 | ... of the group Z_o1 x Z_o2 x ... (trivial factors dropped)."""
    orders = [o for o in orders if o != 1]
    if not orders:
        return []
    diag = [[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)]
    return [d for d in smith_normal_form(diag).invariant_factors if d != 1]


# ---------------------------------------------------------------------------
# linear systems over Q/Z


class Mod1System:
    """Reusable solver for A x = b over Q/Z.

    A is reduced once to row echelon form by unimodular integer row
    operations (L A = E). Since Q/Z is divisible, the full-rank part of E is
    surjective on (Q/Z)^rank, so A x = b is solvable exactly when (L b)
    vanishes mod 1 on the zero rows of E. Rows are kept sparse because
    coboundary matrices have at most a handful of nonzeros per row.
    """

    def __init__(self, A: IntMatrix | Sequence[Sequence[int]] | None = None, *,
                 sparse_rows: Sequence[dict[int, int]] | None = None, ncols: int | None = None):
        if sparse_rows is None:
            if A is None:
                raise TypeError("need a matrix or sparse rows")
            if not isinstance(A, IntMatrix):
                A = IntMatrix(A)
            ncols = A.cols
            sparse_rows = [{j: v for j, v in enumerate(row) if v} for row in A.entries]
        elif ncols is None:
            raise TypeError("sparse rows need an explicit column count")
        self.nrows = len(sparse_rows)
        self.ncols = ncols
        self._reduce([dict(r) for r in sparse_rows])

    def _reduce(self, rows: list[dict[int, int]]) -> None:
        L = [{i: 1} for i in range(len(rows))]
        index: dict[int, set[int]] = {}
        for r, row in enumerate(rows):
            for c in row:
                index.setdefault(c, set()).add(r)

        def sub(dst: int, src: int, q: int) -> None:
            rd, rs = rows[dst], rows[src]
            for c, v in rs.items():
                nv = rd.get(c, 0) - q * v
                if nv:
                    if c not in rd:
                        index.setdefault(c, set()).add(dst)
                    rd[c] = nv
                elif c in rd:
                    del rd[c]
                    index[c].discard(dst)
            ld = L[dst]
            for c, v in L[src].items():
                nv = ld.get(c, 0) - q * v
                if nv:
                    ld[c] = nv
                else:
                    ld.pop(c, None)

        pivots: list[tuple[int, int]] = []  # (column, row)
        for c in range(self.ncols):
            live = index.get(c, set())
            while len(live) > 1:
                p = min(live, key=lambda r: (abs(rows[r][c]), r))
                pv = rows[p][c]
                for q in sorted(live - {p}):
                    sub(q, p, rows[q][c] // pv)
                live = index.get(c, set())
            if live:
                (p,) = live
                pivots.append((c, p))
                for cc in rows[p]:
                    index[cc].discard(p)
        pivot_rows = {r for _, r in pivots}
        self._rows = rows
        self._L = L
        self._pivots = pivots
        self._zero_rows = [r for r in range(len(rows)) if r not in pivot_rows]

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _scaled(self, b: Sequence[UnityRoot]) -> tuple[list[int], int]:
        if len(b) != self.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.nrows}")
        D = common_denominator(b)
        return [x.num * (D // x.den) for x in b], D

    def _apply_L(self, r: int, c: Sequence[int]) -> int:
        return sum(v * c[col] for col, v in self._L[r].items())

    def solvable(self, b: Sequence[UnityRoot]) -> bool:
        c, D = self._scaled(b)
        return all(self._apply_L(r, c) % D == 0 for r in self._zero_rows)

    def solve(self, b: Sequence[UnityRoot]) -> list[UnityRoot] | None:
        """One x with A x = b (mod 1), or None when there is no solution."""
        c, D = self._scaled(b)
        if any(self._apply_L(r, c) % D for r in self._zero_rows):
            return None
        x = [Fraction(0)] * self.ncols
        for col, r in reversed(self._pivots):
            row = self._rows[r]
            t = Fraction(self._apply_L(r, c), D) - sum(v * x[j] for j, v in row.items() if j != col)
            t -= t.numerator // t.denominator
            x[col] = t / row[col]
        return [UnityRoot.from_fraction(v) for v in x]


def solve_mod1(A: IntMatrix | Sequence[Sequence[int]], b: Sequence[UnityRoot]) -> list[UnityRoot] | None:
    """Some x with A x = b componentwise in Q/Z, or None if unsolvable."""
    if not isinstance(A, IntMatrix):
        A = IntMatrix(A)
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    return Mod1System(A).solve(b)
