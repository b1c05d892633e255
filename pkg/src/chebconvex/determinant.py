"""Square determinants with dual backends, collocation determinants of
Chebyshev systems, grid positivity verdicts, and the Sylvester
determinant identity.

Exact determinants clear row denominators and run fraction-free
(Bareiss) elimination over the integers, which keeps intermediate
entries polynomially sized.  Float determinants use row-pivoted
Gaussian elimination.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Backend,
    ChebyshevSystem,
    FunctionSpec,
    OrderingClass,
    PointTuple,
    Scalar,
    collection_backend,
    evaluate,
    validate_tuple,
)
from .errors import (
    DimensionMismatch,
    EvaluationOutsideSupport,
    IndexOutOfRange,
    InputError,
    InsufficientGrid,
    NonSquareMatrix,
)

#: Default scale factor of the positivity tolerance: a float determinant
#: counts as positive only above ``tol_factor * (max |entry|) ** n``.
DEFAULT_TOL_FACTOR = 1e-10

#: Default number of tuples enumerated exhaustively before the checker
#: switches to seeded random sampling.
DEFAULT_TUPLE_BUDGET = 200_000

DEFAULT_SEED = 0


@dataclass(frozen=True)
class Matrix:
    """A dense row-major matrix whose entries share one backend."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.rows <= 0 or self.cols <= 0:
            raise InputError(f"matrix dimensions must be positive: {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")
        collection_backend(self.entries)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]

    def backend(self, default: Backend = Backend.EXACT) -> Backend:
        return collection_backend(self.entries, default=default)


def matrix_from_rows(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    rows = [list(r) for r in rows]
    if not rows:
        raise InputError("matrix needs at least one row")
    ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise InputError("ragged rows in matrix")
    return Matrix(len(rows), ncols, tuple(itertools.chain.from_iterable(rows)))


# ---------------------------------------------------------------------------
# determinants

def det(m: Matrix) -> Scalar:
    """Determinant of a square matrix.

    Exact backend: fraction-free elimination over the integers after
    clearing denominators row by row, so the result is exact.  Float
    backend: Gaussian elimination with partial pivoting.
    """
    if m.rows != m.cols:
        raise NonSquareMatrix(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.backend() is Backend.FLOAT:
        return _det_float(m.row_lists())
    return _det_exact(m.row_lists())


def _det_exact(rows: list[list]) -> Fraction:
    n = len(rows)
    # Clear denominators: row i times lcm of its denominators is integral.
    scale = 1
    a: list[list[int]] = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        scale *= lcm
        a.append([int(x * lcm) for x in fr])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                # Bareiss step: the division by the previous pivot is exact.
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def _det_float(rows: list[list]) -> float:
    n = len(rows)
    a = [[float(x) for x in row] for row in rows]
    result = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(a[r][k]))
        if a[p][k] == 0.0:
            return 0.0
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        pivot = a[k][k]
        result *= pivot
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] -= factor * row_k[j]
    return result


# ---------------------------------------------------------------------------
# collocation determinants

def collocation_matrix(fns: Sequence[FunctionSpec], points: Sequence[Scalar]) -> Matrix:
    """The square matrix with entry (i, j) = fns[i](points[j])."""
    if len(fns) != len(points):
        raise DimensionMismatch(
            f"{len(fns)} functions vs {len(points)} points")
    rows = [[evaluate(fn, x) for x in points] for fn in fns]
    return matrix_from_rows(rows)


def collocation_det(system: ChebyshevSystem, k: int, points: PointTuple | Sequence[Scalar]) -> Scalar:
    """Collocation determinant det(basis_i(x_j)) of the k-prefix of the
    system at the given k points (checked to lie in the domain)."""
    pts = tuple(points)
    if not 1 <= k <= system.dim:
        raise DimensionMismatch(f"prefix size {k} outside 1..{system.dim}")
    if len(pts) != k:
        raise DimensionMismatch(f"need {k} points, got {len(pts)}")
    for x in pts:
        if not system.domain.contains(x):
            raise EvaluationOutsideSupport(f"point {x} is outside the system domain")
    return det(collocation_matrix(system.basis[:k], pts))


def positivity_tolerance(m: Matrix, tol_factor: float = DEFAULT_TOL_FACTOR) -> float:
    """Tolerance below which a float determinant is indistinguishable
    from zero: tol_factor * (max |entry|)**n."""
    biggest = max(abs(float(e)) for e in m.entries)
    return tol_factor * biggest ** m.rows


# ---------------------------------------------------------------------------
# tuple enumeration with a deterministic budget policy

def increasing_tuples(sorted_points: Sequence[Scalar], k: int,
                      budget: int = DEFAULT_TUPLE_BUDGET,
                      seed: int = DEFAULT_SEED) -> tuple[list[tuple], bool]:
    """Strictly increasing k-tuples drawn from sorted grid points.

    Enumerates exhaustively while the total count fits the budget,
    otherwise samples ``budget`` tuples uniformly with the given seed.
    Returns (tuples, exhaustive flag).
    """
    n = len(sorted_points)
    if k > n:
        raise InsufficientGrid(f"grid of {n} points cannot supply {k}-tuples")
    total = math.comb(n, k)
    if total <= budget:
        return [tuple(c) for c in itertools.combinations(sorted_points, k)], True
    rng = random.Random(seed)
    picked = [tuple(sorted(rng.sample(sorted_points, k))) for _ in range(budget)]
    return picked, False


def sorted_grid(grid: Iterable[Scalar], min_gap: float = 0.0) -> tuple:
    """Sort a grid and validate strict increase (duplicates rejected)."""
    pts = sorted(grid)
    return validate_tuple(pts, OrderingClass.STRICTLY_INCREASING, min_gap=min_gap).points


# ---------------------------------------------------------------------------
# grid positivity verdicts

@dataclass(frozen=True)
class PositivityReport:
    """Outcome of checking a collocation determinant for positivity over
    all sampled strictly increasing tuples of a grid."""

    verdict: str                      # "positive_on_grid" | "violated" | "indeterminate"
    k: int
    tuples_checked: int
    exhaustive: bool
    seed: int
    witness: tuple | None = None      # lexicographically smallest offending tuple
    witness_value: Scalar | None = None
    indeterminate_count: int = 0

    @property
    def is_positive(self) -> bool:
        return self.verdict == "positive_on_grid"


def is_positive_chebyshev(system: ChebyshevSystem, k: int, grid: Iterable[Scalar],
                          budget: int = DEFAULT_TUPLE_BUDGET,
                          seed: int = DEFAULT_SEED,
                          tol_factor: float = DEFAULT_TOL_FACTOR) -> PositivityReport:
    """Check that the k-prefix collocation determinant is strictly
    positive on every sampled increasing k-tuple of the grid.

    Exact backend: any value <= 0 is a violation.  Float backend: values
    below -tol are violations and values in (-tol, tol] are recorded as
    indeterminate, with tol from :func:`positivity_tolerance`.
    """
    pts = sorted_grid(grid)
    if len(pts) < k:
        raise InsufficientGrid(f"grid has {len(pts)} points, need at least {k}")
    for x in pts:
        if not system.domain.contains(x):
            raise EvaluationOutsideSupport(f"grid point {x} is outside the system domain")
    if not 1 <= k <= system.dim:
        raise DimensionMismatch(f"prefix size {k} outside 1..{system.dim}")

    tuples, exhaustive = increasing_tuples(pts, k, budget=budget, seed=seed)
    fns = system.basis[:k]
    violations: list[tuple] = []
    near_zero: list[tuple] = []
    values: dict[tuple, Scalar] = {}
    for t in tuples:
        m = collocation_matrix(fns, t)
        value = det(m)
        if m.backend() is Backend.FLOAT:
            tol = positivity_tolerance(m, tol_factor)
            if value <= -tol:
                violations.append(t)
                values[t] = value
            elif value <= tol:
                near_zero.append(t)
                values[t] = value
        else:
            if value <= 0:
                violations.append(t)
                values[t] = value

    if violations:
        witness = min(violations)
        return PositivityReport("violated", k, len(tuples), exhaustive, seed,
                                witness, values[witness], len(near_zero))
    if near_zero:
        witness = min(near_zero)
        return PositivityReport("indeterminate", k, len(tuples), exhaustive, seed,
                                witness, values[witness], len(near_zero))
    return PositivityReport("positive_on_grid", k, len(tuples), exhaustive, seed)


# ---------------------------------------------------------------------------
# Sylvester's determinant identity

def bordered_minor(a: Matrix, k: int, i: int, j: int) -> Scalar:
    """det of the (k+1)x(k+1) submatrix of ``a`` on rows {1..k, i} and
    columns {1..k, j}; indices are 1-based and k+1 <= i, j <= n."""
    if a.rows != a.cols:
        raise NonSquareMatrix(f"{a.rows}x{a.cols} matrix in bordered minor")
    n = a.rows
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"k={k} outside 1..{n - 1}")
    if not (k + 1 <= i <= n and k + 1 <= j <= n):
        raise IndexOutOfRange(f"(i, j)=({i}, {j}) outside {k + 1}..{n}")
    rows = list(range(k)) + [i - 1]
    cols = list(range(k)) + [j - 1]
    sub = [[a[r, c] for c in cols] for r in rows]
    return det(matrix_from_rows(sub))


@dataclass(frozen=True)
class SylvesterReport:
    """Both sides of Sylvester's determinant identity for one (A, k)."""

    n: int
    k: int
    lhs: Scalar        # det of the matrix of bordered minors
    rhs: Scalar        # (leading k-minor) ** (n-k-1) * det(A)
    residual: Scalar   # |lhs - rhs|; exactly zero on the exact backend

    @property
    def relative_residual(self) -> float:
        denom = max(1.0, abs(float(self.lhs)), abs(float(self.rhs)))
        return float(self.residual) / denom


def sylvester_check(a: Matrix, k: int) -> SylvesterReport:
    """Verify det(B_k) == (det A_k)**(n-k-1) * det(A) where B_k collects
    the bordered minors of the leading k x k block.

    Both sides are computed directly; no division is performed, so a
    singular leading block is handled like any other matrix.
    """
    if a.rows != a.cols:
        raise NonSquareMatrix(f"{a.rows}x{a.cols} matrix in Sylvester check")
    n = a.rows
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"k={k} outside 1..{n - 1}")
    b = [[bordered_minor(a, k, i, j) for j in range(k + 1, n + 1)]
         for i in range(k + 1, n + 1)]
    lhs = det(matrix_from_rows(b))
    leading = det(matrix_from_rows([[a[r, c] for c in range(k)] for r in range(k)]))
    rhs = leading ** (n - k - 1) * det(a)
    return SylvesterReport(n, k, lhs, rhs, abs(lhs - rhs))
