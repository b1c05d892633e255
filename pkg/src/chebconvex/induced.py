"""Divided-difference systems induced by pinning a base tuple.

Fixing k strictly increasing base points turns the remaining n-k basis
functions of an n-dimensional system into functions of the appended
point:

    x  ->  divided difference of basis[j] over (base..., x)

These form an (n-k)-dimensional system on the punctured domain, and it
is again a positive Chebyshev system whenever the parent and its k and
k+1 prefixes are.  This module builds that system, carries the sign
bookkeeping for how the appended point interleaves the base, and
verifies both positivity and the determinant factorization identity
numerically on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ChebyshevSystem,
    Domain,
    FunctionSpec,
    OrderingClass,
    PointTuple,
    Scalar,
    as_backend,
    combine_backends,
    puncture,
    scalar_backend,
    validate_tuple,
)
from .determinant import (
    DEFAULT_SEED,
    DEFAULT_TOL_FACTOR,
    DEFAULT_TUPLE_BUDGET,
    PositivityReport,
    collocation_det,
    increasing_tuples,
    is_positive_chebyshev,
    sorted_grid,
)
from .divdiff import ResidualReport, divided_difference
from .errors import DimensionMismatch, DuplicatePoint, InputError


@dataclass(frozen=True)
class DerivedFn(FunctionSpec):
    """x ↦ divided difference of ``target`` over (base..., x) with
    respect to the (k+1)-prefix of ``parent``.

    Evaluation delegates to the determinant-ratio divided difference, so
    the same code path serves every parent system; closed forms (powers,
    cotangent) are used as test oracles, not as evaluation shortcuts.
    """

    parent: ChebyshevSystem
    k: int
    base: PointTuple
    target: FunctionSpec

    def required_backend(self):
        return combine_backends(
            self.base.backend(),
            self.target.required_backend(),
            *(fn.required_backend() for fn in self.parent.basis[:self.k + 1]))

    def _eval(self, x, backend):
        dd = divided_difference(self.parent, self.k + 1, self.target,
                                self.base.points + (x,))
        return as_backend(dd.value, backend)


@dataclass(frozen=True)
class InducedSystem:
    """The (n-k)-dimensional divided-difference system produced by
    :func:`induced_system`."""

    parent: ChebyshevSystem
    k: int
    base: PointTuple
    basis: tuple
    domain: Domain

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_system(self) -> ChebyshevSystem:
        return ChebyshevSystem(self.basis, self.domain)

    def derived(self, target: FunctionSpec) -> DerivedFn:
        """The function x ↦ divided difference of ``target`` over
        (base..., x), evaluable on the punctured domain."""
        return DerivedFn(self.parent, self.k, self.base, target)


def induced_system(parent: ChebyshevSystem, k: int, base) -> InducedSystem:
    """Pin ``k`` strictly increasing base points and return the induced
    (n-k)-dimensional system on the punctured domain.

    Meaningful as a positive Chebyshev system only when the k and k+1
    prefixes of the parent are positive (caller-asserted or verified via
    a grid check); otherwise evaluation surfaces SingularDenominator.
    """
    if not isinstance(base, PointTuple) or base.ordering is not OrderingClass.STRICTLY_INCREASING:
        base = validate_tuple(base.points if isinstance(base, PointTuple) else base,
                              OrderingClass.STRICTLY_INCREASING)
    n = parent.dim
    if not 1 <= k <= n - 1:
        raise DimensionMismatch(f"base size {k} outside 1..{n - 1}")
    if len(base) != k:
        raise DimensionMismatch(f"base has {len(base)} points, expected {k}")
    for x in base:
        if not parent.domain.contains(x):
            raise InputError(f"base point {x} is outside the parent domain")
    basis = tuple(DerivedFn(parent, k, base, parent.basis[j])
                  for j in range(k, n))
    return InducedSystem(parent, k, base, basis, puncture(parent.domain, base.points))


# ---------------------------------------------------------------------------
# sign bookkeeping for one appended point

@dataclass(frozen=True)
class SignIndex:
    """Position of an appended point among the base points and the
    predicted sign of the resulting collocation determinant:
    (-1) ** (base size - number of base points below x)."""

    ell: int
    predicted_sign: int


def sign_index(base, x: Scalar) -> SignIndex:
    """For strictly increasing base points and x distinct from all of
    them: ell = how many base points lie below x, and the sign that a
    positive (k+1)-dimensional system's determinant takes on
    (base..., x)."""
    if not isinstance(base, PointTuple) or base.ordering is not OrderingClass.STRICTLY_INCREASING:
        base = validate_tuple(base.points if isinstance(base, PointTuple) else base,
                              OrderingClass.STRICTLY_INCREASING)
    scalar_backend(x)
    for i, p in enumerate(base):
        if p == x:
            raise DuplicatePoint(f"x={x} coincides with base point index {i}")
    ell = sum(1 for p in base if p < x)
    return SignIndex(ell, (-1) ** (len(base) - ell))


# ---------------------------------------------------------------------------
# numeric verification

@dataclass(frozen=True)
class InducedCheckReport:
    """Grid verdict for an induced system: positivity of its collocation
    determinants plus residuals of the factorization identity

        det(parent at base+tuple) * (k-minor at base)**(n-k-1)
        / prod over appended points of (k+1)-minor at base+(point,)
        == det(induced system at tuple)

    computed by two independent determinant pipelines."""

    positivity: PositivityReport
    identity_checked: int
    max_abs_residual: float
    max_rel_residual: float
    worst: ResidualReport | None
    exhaustive: bool
    seed: int


def verify_induced_system(parent: ChebyshevSystem, k: int, base, grid,
                          budget: int = DEFAULT_TUPLE_BUDGET,
                          seed: int = DEFAULT_SEED,
                          tol_factor: float = DEFAULT_TOL_FACTOR) -> InducedCheckReport:
    """Build the induced system over ``base`` and check, over the grid,
    that it is a positive Chebyshev system and that the factorization
    identity holds on every sampled increasing (n-k)-tuple."""
    ind = induced_system(parent, k, base)
    system = ind.as_system()
    d = ind.dim
    pts = sorted_grid(grid)
    positivity = is_positive_chebyshev(system, d, pts, budget=budget, seed=seed,
                                       tol_factor=tol_factor)

    tuples, exhaustive = increasing_tuples(pts, d, budget=budget, seed=seed)
    base_pts = ind.base.points
    kminor = collocation_det(parent, k, base_pts)
    max_abs = 0.0
    max_rel = 0.0
    worst: ResidualReport | None = None
    for t in tuples:
        lhs = collocation_det(parent, parent.dim, base_pts + t) * kminor ** (d - 1)
        for x in t:
            lhs = lhs / collocation_det(parent, k + 1, base_pts + (x,))
        rhs = collocation_det(system, d, t)
        report = ResidualReport(lhs, rhs, abs(lhs - rhs))
        if float(report.residual) >= max_abs:
            max_abs = float(report.residual)
            worst = report
        max_rel = max(max_rel, report.relative_residual)
    return InducedCheckReport(positivity, len(tuples), max_abs, max_rel,
                              worst, exhaustive, seed)
