"""Convexity of a function with respect to a Chebyshev system, decided
three provably equivalent ways on a grid:

* direct: nonnegativity of the extended collocation determinant on all
  increasing (n+1)-tuples,
* induced: for every pinned base k-tuple, convexity of the derived
  divided-difference function with respect to the induced system on the
  punctured grid,
* interval: the induced check restricted to a single gap between (or
  beyond) the base points, selected by an index ell in 0..k.

Verdicts are explicitly grid-relative.  On the float backend, values
inside the tolerance band around zero are reported indeterminate rather
than forced into a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Backend,
    ChebyshevSystem,
    FunctionSpec,
    OrderingClass,
    PointTuple,
    Scalar,
    validate_tuple,
)
from .determinant import (
    DEFAULT_SEED,
    DEFAULT_TOL_FACTOR,
    DEFAULT_TUPLE_BUDGET,
    PositivityReport,
    collocation_det,
    collocation_matrix,
    det,
    increasing_tuples,
    is_positive_chebyshev,
    matrix_from_rows,
    positivity_tolerance,
    sorted_grid,
)
from .divdiff import ResidualReport, divided_difference
from .errors import (
    DimensionMismatch,
    EvaluationOutsideSupport,
    InputError,
    InsufficientGrid,
    SingularDenominator,
)
from .induced import induced_system

#: Base-tuple sampling switches from exhaustive enumeration to seeded
#: random sampling above this count.
DEFAULT_BASE_BUDGET = 10_000


@dataclass(frozen=True)
class ConvexityVerdict:
    """Grid verdict of one convexity check.  A violated verdict carries
    a witness tuple (plus its pinned base, for the induced and interval
    modes) that replays to a negative determinant."""

    mode: str                      # "direct" | "induced" | "interval"
    verdict: str                   # "convex_on_sample" | "violated" | "indeterminate"
    tuples_checked: int
    seed: int
    ell: int | None = None
    witness: tuple | None = None
    witness_value: Scalar | None = None
    witness_base: tuple | None = None
    bases_checked: int = 0
    bases_skipped: int = 0
    indeterminate_count: int = 0

    @property
    def is_convex(self) -> bool:
        return self.verdict == "convex_on_sample"


def _direct_scan(system: ChebyshevSystem, f: FunctionSpec, grid_pts: tuple,
                 budget: int, seed: int, tol_factor: float):
    """Evaluate the extended determinant on increasing (n+1)-tuples and
    split the outcomes into violations and near-zero indeterminates."""
    n = system.dim
    if len(grid_pts) < n + 1:
        raise InsufficientGrid(f"grid has {len(grid_pts)} points, need at least {n + 1}")
    for x in grid_pts:
        if not system.domain.contains(x):
            raise EvaluationOutsideSupport(f"grid point {x} is outside the system domain")
    fns = system.basis + (f,)
    tuples, exhaustive = increasing_tuples(grid_pts, n + 1, budget=budget, seed=seed)
    violations: list[tuple] = []
    near_zero: list[tuple] = []
    values: dict[tuple, Scalar] = {}
    for t in tuples:
        m = collocation_matrix(fns, t)
        value = det(m)
        if m.backend() is Backend.FLOAT:
            tol = positivity_tolerance(m, tol_factor)
            if value < -tol:
                violations.append(t)
                values[t] = value
            elif value < 0:
                near_zero.append(t)
                values[t] = value
        elif value < 0:
            violations.append(t)
            values[t] = value
    return tuples, exhaustive, violations, near_zero, values


def check_convex_direct(system: ChebyshevSystem, f: FunctionSpec, grid: Iterable[Scalar],
                        budget: int = DEFAULT_TUPLE_BUDGET,
                        seed: int = DEFAULT_SEED,
                        tol_factor: float = DEFAULT_TOL_FACTOR) -> ConvexityVerdict:
    """Nonnegativity of the extended collocation determinant on all
    sampled increasing (n+1)-tuples of the grid."""
    pts = sorted_grid(grid)
    tuples, _, violations, near_zero, values = _direct_scan(
        system, f, pts, budget, seed, tol_factor)
    if violations:
        witness = min(violations)
        return ConvexityVerdict("direct", "violated", len(tuples), seed,
                                witness=witness, witness_value=values[witness],
                                indeterminate_count=len(near_zero))
    if near_zero:
        witness = min(near_zero)
        return ConvexityVerdict("direct", "indeterminate", len(tuples), seed,
                                witness=witness, witness_value=values[witness],
                                indeterminate_count=len(near_zero))
    return ConvexityVerdict("direct", "convex_on_sample", len(tuples), seed)


def _restricted_points(pts: tuple, base: tuple, ell: int | None) -> tuple:
    """Grid points off the base, optionally restricted to the single gap
    selected by ell (0 = below the base, k = above it)."""
    off = tuple(x for x in pts if x not in base)
    if ell is None:
        return off
    k = len(base)
    if ell == 0:
        return tuple(x for x in off if x < base[0])
    if ell == k:
        return tuple(x for x in off if x > base[-1])
    return tuple(x for x in off if base[ell - 1] < x < base[ell])


def _check_convex_pinned(system: ChebyshevSystem, k: int, f: FunctionSpec,
                         grid: Iterable[Scalar], ell: int | None,
                         base_budget: int, budget: int, seed: int,
                         tol_factor: float) -> ConvexityVerdict:
    n = system.dim
    if not 1 <= k <= n - 1:
        raise DimensionMismatch(f"base size {k} outside 1..{n - 1}")
    if ell is not None and not 0 <= ell <= k:
        raise InputError(f"interval index {ell} outside 0..{k}")
    pts = sorted_grid(grid)
    bases, _ = increasing_tuples(pts, k, budget=base_budget, seed=seed)
    mode = "induced" if ell is None else "interval"

    tuples_checked = 0
    bases_checked = 0
    bases_skipped = 0
    indeterminate = 0
    first_violation: ConvexityVerdict | None = None
    first_indeterminate: ConvexityVerdict | None = None
    for base in sorted(bases):
        local = _restricted_points(pts, base, ell)
        if len(local) < n - k + 1:
            bases_skipped += 1
            continue
        bases_checked += 1
        ind = induced_system(system, k, validate_tuple(base, OrderingClass.STRICTLY_INCREASING,
                                                       min_gap=0.0))
        inner = check_convex_direct(ind.as_system(), ind.derived(f), local,
                                    budget=budget, seed=seed, tol_factor=tol_factor)
        tuples_checked += inner.tuples_checked
        indeterminate += inner.indeterminate_count
        if inner.verdict == "violated" and first_violation is None:
            first_violation = ConvexityVerdict(
                mode, "violated", 0, seed, ell=ell, witness=inner.witness,
                witness_value=inner.witness_value, witness_base=base)
        elif inner.verdict == "indeterminate" and first_indeterminate is None:
            first_indeterminate = ConvexityVerdict(
                mode, "indeterminate", 0, seed, ell=ell, witness=inner.witness,
                witness_value=inner.witness_value, witness_base=base)

    counts = dict(tuples_checked=tuples_checked, bases_checked=bases_checked,
                  bases_skipped=bases_skipped, indeterminate_count=indeterminate)
    if first_violation is not None:
        return ConvexityVerdict(mode, "violated", seed=seed, ell=ell,
                                witness=first_violation.witness,
                                witness_value=first_violation.witness_value,
                                witness_base=first_violation.witness_base, **counts)
    if first_indeterminate is not None:
        return ConvexityVerdict(mode, "indeterminate", seed=seed, ell=ell,
                                witness=first_indeterminate.witness,
                                witness_value=first_indeterminate.witness_value,
                                witness_base=first_indeterminate.witness_base, **counts)
    if bases_checked == 0:
        # Nothing checkable (all restricted grids too small): report that
        # honestly instead of inventing a verdict.
        return ConvexityVerdict(mode, "indeterminate", seed=seed, ell=ell, **counts)
    return ConvexityVerdict(mode, "convex_on_sample", seed=seed, ell=ell, **counts)


def check_convex_induced(system: ChebyshevSystem, k: int, f: FunctionSpec,
                         grid: Iterable[Scalar],
                         base_budget: int = DEFAULT_BASE_BUDGET,
                         budget: int = DEFAULT_TUPLE_BUDGET,
                         seed: int = DEFAULT_SEED,
                         tol_factor: float = DEFAULT_TOL_FACTOR) -> ConvexityVerdict:
    """For each sampled increasing base k-tuple, check convexity of the
    derived divided-difference function with respect to the induced
    system on the rest of the grid, and aggregate."""
    return _check_convex_pinned(system, k, f, grid, None, base_budget, budget,
                                seed, tol_factor)


def check_convex_interval(system: ChebyshevSystem, k: int, ell: int, f: FunctionSpec,
                          grid: Iterable[Scalar],
                          base_budget: int = DEFAULT_BASE_BUDGET,
                          budget: int = DEFAULT_TUPLE_BUDGET,
                          seed: int = DEFAULT_SEED,
                          tol_factor: float = DEFAULT_TOL_FACTOR) -> ConvexityVerdict:
    """The induced check restricted to the single gap selected by
    ``ell``: below the base for ell=0, between base[ell-1] and base[ell]
    for 0 < ell < k, above the base for ell=k.  Bases whose restricted
    grid is too small are skipped and counted."""
    return _check_convex_pinned(system, k, f, grid, ell, base_budget, budget,
                                seed, tol_factor)


# ---------------------------------------------------------------------------
# the determinant factorization identity behind the equivalence

def convexity_identity_check(system: ChebyshevSystem, k: int, f: FunctionSpec,
                             points) -> ResidualReport:
    """Check, at one pairwise-distinct (n+1)-tuple, that the scaled
    extended collocation determinant equals the determinant of derived
    divided differences:

        det(basis+f at all points) * (k-minor at first k)**(n-k)
        / prod over appended points of (k+1)-minor
        == det of [basis[k..n-1]+f differenced over (first k, appended)]

    The left side is one big determinant, the right side is built from
    (n-k+1)^2 small ones, so the two sides certify each other.
    """
    n = system.dim
    if not 1 <= k <= n - 1:
        raise DimensionMismatch(f"prefix size {k} outside 1..{n - 1}")
    pts = points.points if isinstance(points, PointTuple) else tuple(points)
    pts = validate_tuple(pts, OrderingClass.PAIRWISE_DISTINCT).points
    if len(pts) != n + 1:
        raise DimensionMismatch(f"need {n + 1} points, got {len(pts)}")
    head, tail = pts[:k], pts[k:]

    kminor = collocation_det(system, k, head)
    lhs = det(collocation_matrix(system.basis + (f,), pts)) * kminor ** (n - k)
    for x in tail:
        den_matrix = collocation_matrix(system.basis[:k + 1], head + (x,))
        denom = det(den_matrix)
        if den_matrix.backend() is Backend.FLOAT:
            if abs(denom) <= positivity_tolerance(den_matrix, tol_factor=DEFAULT_TOL_FACTOR):
                raise SingularDenominator(
                    f"(k+1)-prefix determinant within tolerance at {head + (x,)}")
        elif denom == 0:
            raise SingularDenominator(
                f"(k+1)-prefix determinant vanishes at {head + (x,)}")
        lhs = lhs / denom

    targets = system.basis[k:] + (f,)
    rows = [[divided_difference(system, k + 1, target, head + (x,)).value
             for x in tail] for target in targets]
    rhs = det(matrix_from_rows(rows))
    return ResidualReport(lhs, rhs, abs(lhs - rhs))


# ---------------------------------------------------------------------------
# cross-mode agreement

@dataclass(frozen=True)
class AgreementReport:
    """Verdicts of every mode, plus any definite disagreement (a
    convex/violated conflict outside tolerance bands, which would
    certify a bug)."""

    verdicts: tuple                # of (label, ConvexityVerdict) pairs
    disagreements: tuple           # of (label_a, label_b) pairs

    @property
    def agreed(self) -> bool:
        return not self.disagreements

    def verdict_map(self) -> dict:
        return dict(self.verdicts)


def cross_mode_agreement(system: ChebyshevSystem, f: FunctionSpec,
                         grid: Iterable[Scalar], k_list: Sequence[int] | None = None,
                         base_budget: int = DEFAULT_BASE_BUDGET,
                         budget: int = DEFAULT_TUPLE_BUDGET,
                         seed: int = DEFAULT_SEED,
                         tol_factor: float = DEFAULT_TOL_FACTOR) -> AgreementReport:
    """Run the direct mode, the induced mode for each k, and the
    interval mode for each (k, ell), and compare definite verdicts."""
    n = system.dim
    if k_list is None:
        k_list = list(range(1, n))
    labeled: list[tuple[str, ConvexityVerdict]] = []
    labeled.append(("direct", check_convex_direct(system, f, grid, budget=budget,
                                                  seed=seed, tol_factor=tol_factor)))
    for k in k_list:
        labeled.append((f"induced:k={k}",
                        check_convex_induced(system, k, f, grid, base_budget=base_budget,
                                             budget=budget, seed=seed,
                                             tol_factor=tol_factor)))
        for ell in range(k + 1):
            labeled.append((f"interval:k={k}:ell={ell}",
                            check_convex_interval(system, k, ell, f, grid,
                                                  base_budget=base_budget, budget=budget,
                                                  seed=seed, tol_factor=tol_factor)))
    definite = [(label, v.verdict) for label, v in labeled
                if v.verdict != "indeterminate"]
    disagreements = tuple(
        (a_label, b_label)
        for i, (a_label, a_verdict) in enumerate(definite)
        for b_label, b_verdict in definite[i + 1:]
        if a_verdict != b_verdict)
    return AgreementReport(tuple(labeled), disagreements)


def is_strictly_convex(system: ChebyshevSystem, f: FunctionSpec,
                       grid: Iterable[Scalar],
                       budget: int = DEFAULT_TUPLE_BUDGET,
                       seed: int = DEFAULT_SEED,
                       tol_factor: float = DEFAULT_TOL_FACTOR) -> PositivityReport:
    """Strict convexity: the basis extended by ``f`` must itself pass
    the strict grid positivity check as an (n+1)-dimensional system."""
    extended = system.with_appended(f)
    return is_positive_chebyshev(extended, extended.dim, grid, budget=budget,
                                 seed=seed, tol_factor=tol_factor)
