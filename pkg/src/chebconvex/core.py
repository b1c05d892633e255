"""Domain types shared by every module.

Scalars live under one of two backends:

* exact: :class:`fractions.Fraction` (arbitrary-precision rationals),
* float: IEEE-754 binary64 (Python ``float``).

Plain ``int`` is accepted as a backend-neutral literal that coerces to
either side.  A computation never silently mixes the two backends:
putting a ``Fraction`` and a ``float`` into the same tuple, matrix or
affine combination raises :class:`~chebconvex.errors.BackendMismatch`,
and conversions go through the explicit :func:`to_exact` /
:func:`to_float` helpers.

All types here are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    BackendMismatch,
    EvaluationOutsideSupport,
    InputError,
    OrderingViolation,
)

Scalar = Union[int, Fraction, float]

#: Minimum pairwise gap enforced on float-backend point tuples.  Exact
#: tuples only need distinctness; float tuples closer than this produce
#: denominators too ill-conditioned to trust.
DEFAULT_MIN_GAP = 1e-9


class Backend(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class OrderingClass(enum.Enum):
    STRICTLY_INCREASING = "strictly_increasing"
    PAIRWISE_DISTINCT = "pairwise_distinct"
    UNCONSTRAINED = "unconstrained"


class SignClaim(enum.Enum):
    POSITIVE = "positive"
    UNVERIFIED = "unverified"


# ---------------------------------------------------------------------------
# scalar helpers

def scalar_backend(x: Scalar) -> Backend | None:
    """Backend of a single scalar; ``None`` for neutral ``int`` literals."""
    if isinstance(x, bool):
        raise BackendMismatch(f"bool is not a scalar: {x!r}")
    if isinstance(x, float):
        return Backend.FLOAT
    if isinstance(x, Fraction):
        return Backend.EXACT
    if isinstance(x, int):
        return None
    raise BackendMismatch(f"not a scalar: {x!r}")


def combine_backends(*backends: Backend | None,
                     default: Backend | None = None) -> Backend | None:
    """Merge backend tags, raising on an exact/float clash."""
    out: Backend | None = None
    for b in backends:
        if b is None:
            continue
        if out is None:
            out = b
        elif out is not b:
            raise BackendMismatch(
                "exact and float scalars mixed in one computation; "
                "convert explicitly with to_exact()/to_float()")
    return out if out is not None else default


def to_exact(x: Scalar) -> Fraction:
    """Explicit conversion to the exact backend (floats convert to their
    exact binary value)."""
    return Fraction(x)


def to_float(x: Scalar) -> float:
    """Explicit conversion to the float backend (may round)."""
    return float(x)


def as_backend(x: Scalar, backend: Backend) -> Scalar:
    """Canonicalize a scalar within an already-chosen backend.

    Unlike :func:`to_exact`/:func:`to_float` this never crosses
    backends: a ``Fraction`` cannot become a float here and vice versa.
    """
    if backend is Backend.EXACT:
        if isinstance(x, float):
            raise BackendMismatch("float scalar in an exact computation")
        return Fraction(x)
    if isinstance(x, Fraction):
        raise BackendMismatch("exact scalar in a float computation")
    return float(x)


def collection_backend(values, default: Backend | None = None) -> Backend | None:
    return combine_backends(*(scalar_backend(v) for v in values), default=default)


# ---------------------------------------------------------------------------
# point tuples

@dataclass(frozen=True)
class PointTuple:
    """An ordered tuple of domain points with a validated ordering class.

    ``strictly_increasing`` tuples model the simplex of increasing
    configurations; ``pairwise_distinct`` only forbids coincidences.
    Every strictly increasing tuple is also a valid pairwise-distinct
    tuple.
    """

    points: tuple
    ordering: OrderingClass = OrderingClass.UNCONSTRAINED

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        _check_ordering(self.points, self.ordering)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def backend(self, default: Backend | None = None) -> Backend | None:
        return collection_backend(self.points, default=default)


def _check_ordering(points: tuple, ordering: OrderingClass) -> None:
    collection_backend(points)  # reject mixed backends early
    if ordering is OrderingClass.STRICTLY_INCREASING:
        for i in range(len(points) - 1):
            if not points[i] < points[i + 1]:
                raise OrderingViolation(i, i + 1,
                                        f"points[{i}]={points[i]} !< points[{i + 1}]={points[i + 1]}")
    elif ordering is OrderingClass.PAIRWISE_DISTINCT:
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if points[i] == points[j]:
                    raise OrderingViolation(i, j,
                                            f"points[{i}] == points[{j}] == {points[i]}")


def validate_tuple(points, ordering: OrderingClass | str,
                   min_gap: float = DEFAULT_MIN_GAP) -> PointTuple:
    """Validate ``points`` against an ordering class and return the tuple.

    Float-backend tuples must additionally keep all pairwise gaps at
    least ``min_gap`` (ignored for the unconstrained class and for exact
    tuples, which only need distinctness).
    """
    if isinstance(ordering, str):
        ordering = OrderingClass(ordering)
    pt = PointTuple(tuple(points), ordering)
    if (ordering is not OrderingClass.UNCONSTRAINED
            and pt.backend() is Backend.FLOAT and min_gap > 0):
        pts = pt.points
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) < min_gap:
                    raise OrderingViolation(
                        i, j, f"|points[{i}] - points[{j}]| < min gap {min_gap}")
    return pt


# ---------------------------------------------------------------------------
# domains

@dataclass(frozen=True)
class Interval:
    """A real interval; ``None`` endpoints mean unbounded."""

    lo: Scalar | None = None
    hi: Scalar | None = None
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise InputError(f"empty interval: lo={self.lo}, hi={self.hi}")

    def contains(self, x: Scalar) -> bool:
        if self.lo is not None and (x < self.lo or (self.lo_open and x == self.lo)):
            return False
        if self.hi is not None and (x > self.hi or (self.hi_open and x == self.hi)):
            return False
        return True

    def length(self) -> Scalar | None:
        """``hi - lo``, or ``None`` when unbounded."""
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo


@dataclass(frozen=True)
class FiniteSet:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        _check_ordering(self.points, OrderingClass.PAIRWISE_DISTINCT)

    def contains(self, x: Scalar) -> bool:
        return any(x == p for p in self.points)


@dataclass(frozen=True)
class PuncturedInterval:
    """A base interval with finitely many interior points removed."""

    base: Interval
    excluded: tuple

    def __post_init__(self):
        object.__setattr__(self, "excluded", tuple(self.excluded))
        _check_ordering(self.excluded, OrderingClass.PAIRWISE_DISTINCT)
        for p in self.excluded:
            if not self.base.contains(p):
                raise InputError(f"excluded point {p} lies outside the base interval")

    def contains(self, x: Scalar) -> bool:
        return self.base.contains(x) and all(x != p for p in self.excluded)


Domain = Union[Interval, FiniteSet, PuncturedInterval]

REAL_LINE = Interval()
POSITIVE_HALF_LINE = Interval(lo=0)


def puncture(domain: Domain, points) -> Domain:
    """Remove finitely many points from a domain."""
    points = tuple(points)
    for p in points:
        if not domain.contains(p):
            raise InputError(f"cannot puncture: {p} is not in the domain")
    if isinstance(domain, Interval):
        return PuncturedInterval(domain, points)
    if isinstance(domain, PuncturedInterval):
        return PuncturedInterval(domain.base, domain.excluded + points)
    return FiniteSet(tuple(q for q in domain.points if all(q != p for p in points)))


# ---------------------------------------------------------------------------
# function specifications

class FunctionSpec:
    """A scalar function given in a closed, evaluable form.

    Named specs (powers, trig, exp, constants and affine combinations
    of those) evaluate anywhere; sampled specs evaluate only at their
    tabulated points and never interpolate.
    """

    def required_backend(self) -> Backend | None:
        """Backend this function insists on, or ``None`` if either works."""
        return None

    def _eval(self, x: Scalar, backend: Backend) -> Scalar:
        raise NotImplementedError

    def __call__(self, x: Scalar) -> Scalar:
        return evaluate(self, x)


def evaluate(f: FunctionSpec, x: Scalar) -> Scalar:
    """Evaluate ``f`` at ``x``.

    The result backend is the combination of the point's backend and the
    function's requirement (default exact); identical inputs produce
    bit-identical outputs per backend.
    """
    backend = combine_backends(scalar_backend(x), f.required_backend(),
                               default=Backend.EXACT)
    return f._eval(x, backend)


@dataclass(frozen=True)
class PowerFn(FunctionSpec):
    """x ↦ x**k for integer k ≥ 0 (so k=0 is the constant 1)."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise InputError(f"power exponent must be an int >= 0, got {self.k!r}")

    def _eval(self, x, backend):
        return as_backend(x, backend) ** self.k


@dataclass(frozen=True)
class CosFn(FunctionSpec):
    """x ↦ cos(freq * x); float backend only."""

    freq: int = 1

    def __post_init__(self):
        if not isinstance(self.freq, int) or self.freq < 1:
            raise InputError(f"cos frequency must be an int >= 1, got {self.freq!r}")

    def required_backend(self):
        return Backend.FLOAT

    def _eval(self, x, backend):
        return math.cos(self.freq * float(x))


@dataclass(frozen=True)
class SinFn(FunctionSpec):
    """x ↦ sin(freq * x); float backend only."""

    freq: int = 1

    def __post_init__(self):
        if not isinstance(self.freq, int) or self.freq < 1:
            raise InputError(f"sin frequency must be an int >= 1, got {self.freq!r}")

    def required_backend(self):
        return Backend.FLOAT

    def _eval(self, x, backend):
        return math.sin(self.freq * float(x))


@dataclass(frozen=True)
class ExpFn(FunctionSpec):
    """x ↦ exp(x); float backend only."""

    def required_backend(self):
        return Backend.FLOAT

    def _eval(self, x, backend):
        return math.exp(float(x))


@dataclass(frozen=True)
class NegCotFn(FunctionSpec):
    """x ↦ -cot((shift + x) / 2); float backend only.

    This is the closed form of the slope function induced by the
    three-dimensional trigonometric system: the ratio of sine and cosine
    increments with one endpoint pinned at ``shift``.
    """

    shift: Scalar

    def required_backend(self):
        return Backend.FLOAT

    def _eval(self, x, backend):
        u = (float(self.shift) + float(x)) / 2.0
        s = math.sin(u)
        if s == 0.0:
            raise EvaluationOutsideSupport(f"cotangent pole at x={x}")
        return -math.cos(u) / s


@dataclass(frozen=True)
class ConstFn(FunctionSpec):
    """The constant function x ↦ c."""

    c: Scalar

    def required_backend(self):
        return scalar_backend(self.c)

    def _eval(self, x, backend):
        return as_backend(self.c, backend)


@dataclass(frozen=True)
class AffineFn(FunctionSpec):
    """A finite combination sum(coef_i * spec_i); coefficient backends
    must be consistent with every term's requirement."""

    terms: tuple  # of (coef, FunctionSpec) pairs

    def __post_init__(self):
        terms = tuple((c, s) for c, s in self.terms)
        object.__setattr__(self, "terms", terms)
        for c, s in terms:
            scalar_backend(c)
            if not isinstance(s, FunctionSpec):
                raise InputError(f"affine term is not a FunctionSpec: {s!r}")
        self.required_backend()  # raises early on exact/float clashes

    def required_backend(self):
        tags = []
        for c, s in self.terms:
            tags.append(scalar_backend(c))
            tags.append(s.required_backend())
        return combine_backends(*tags)

    def _eval(self, x, backend):
        total = Fraction(0) if backend is Backend.EXACT else 0.0
        for c, s in self.terms:
            total += as_backend(c, backend) * s._eval(x, backend)
        return total


@dataclass(frozen=True)
class SampledFn(FunctionSpec):
    """A function known only through a finite table of (point, value)
    pairs.  Off-table queries raise; there is no interpolation."""

    points: tuple
    values: tuple

    def __post_init__(self):
        points = tuple(self.points)
        values = tuple(self.values)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)
        if len(points) != len(values):
            raise InputError("sampled table needs as many values as points")
        if not points:
            raise InputError("sampled table must be nonempty")
        _check_ordering(points, OrderingClass.PAIRWISE_DISTINCT)
        self.required_backend()
        object.__setattr__(self, "_table", dict(zip(points, values)))

    def required_backend(self):
        return combine_backends(collection_backend(self.points),
                                collection_backend(self.values))

    def contains_point(self, p) -> bool:
        try:
            return p in self._table
        except TypeError:
            return False

    def _eval(self, x, backend):
        try:
            value = self._table[x]
        except (KeyError, TypeError):
            raise EvaluationOutsideSupport(
                f"sampled function has no value at {x!r}") from None
        return as_backend(value, backend)


def affine(*terms) -> AffineFn:
    """Convenience constructor: affine((2, PowerFn(3)), (-1, ExpFn()))."""
    return AffineFn(tuple(terms))


# ---------------------------------------------------------------------------
# Chebyshev systems

@dataclass(frozen=True)
class ChebyshevSystem:
    """An ordered tuple of basis functions on a common domain.

    ``claimed_sign`` records whether the collocation determinant is
    asserted positive on all strictly increasing tuples of the domain;
    the determinant module can verify the claim on a grid.
    """

    basis: tuple
    domain: Domain
    claimed_sign: SignClaim = SignClaim.UNVERIFIED

    def __post_init__(self):
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise InputError("a Chebyshev system needs at least one basis function")
        for fn in basis:
            if not isinstance(fn, FunctionSpec):
                raise InputError(f"basis entry is not a FunctionSpec: {fn!r}")
            _check_evaluable(fn, self.domain)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def prefix(self, k: int) -> "ChebyshevSystem":
        """The subsystem spanned by the first k basis functions."""
        if not 1 <= k <= self.dim:
            raise InputError(f"prefix size {k} outside 1..{self.dim}")
        if k == self.dim:
            return self
        return ChebyshevSystem(self.basis[:k], self.domain, SignClaim.UNVERIFIED)

    def with_appended(self, f: FunctionSpec) -> "ChebyshevSystem":
        """The (dim+1)-tuple obtained by appending ``f`` to the basis."""
        return ChebyshevSystem(self.basis + (f,), self.domain, SignClaim.UNVERIFIED)

    def required_backend(self) -> Backend | None:
        return combine_backends(*(fn.required_backend() for fn in self.basis))


def _check_evaluable(fn: FunctionSpec, domain: Domain) -> None:
    # Sampled specs are evaluable on the whole domain only when the
    # domain is a finite subset of their table.
    if isinstance(fn, SampledFn):
        if not isinstance(domain, FiniteSet):
            raise InputError(
                "a sampled basis function is only evaluable on a finite-set domain")
        for p in domain.points:
            if not fn.contains_point(p):
                raise InputError(f"sampled basis function has no value at domain point {p}")
    elif isinstance(fn, AffineFn):
        for _, s in fn.terms:
            _check_evaluable(s, domain)


# ---------------------------------------------------------------------------
# JSON serialization
#
# Scalars: ints stay JSON integers, floats stay JSON numbers (repr round
# trips exactly), exact rationals become "p/q" strings.

def scalar_to_json(x: Scalar):
    if isinstance(x, bool):
        raise InputError("bool is not a scalar")
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, float)):
        return x
    raise InputError(f"not a scalar: {x!r}")


def scalar_from_json(v) -> Scalar:
    if isinstance(v, bool):
        raise InputError("bool is not a scalar")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {v!r}: {exc}") from None
    raise InputError(f"cannot parse scalar from {v!r}")


def function_to_json(f: FunctionSpec) -> dict:
    if isinstance(f, PowerFn):
        return {"kind": "power", "k": f.k}
    if isinstance(f, CosFn):
        return {"kind": "cos", "freq": f.freq}
    if isinstance(f, SinFn):
        return {"kind": "sin", "freq": f.freq}
    if isinstance(f, ExpFn):
        return {"kind": "exp"}
    if isinstance(f, ConstFn):
        return {"kind": "const", "c": scalar_to_json(f.c)}
    if isinstance(f, NegCotFn):
        return {"kind": "negcot", "shift": scalar_to_json(f.shift)}
    if isinstance(f, AffineFn):
        return {"kind": "affine",
                "terms": [{"coef": scalar_to_json(c), "spec": function_to_json(s)}
                          for c, s in f.terms]}
    if isinstance(f, SampledFn):
        return {"kind": "sampled",
                "points": [scalar_to_json(p) for p in f.points],
                "values": [scalar_to_json(v) for v in f.values]}
    raise InputError(f"function {f!r} has no JSON form")


def function_from_json(d: dict) -> FunctionSpec:
    if not isinstance(d, dict) or "kind" not in d:
        raise InputError(f"bad function spec: {d!r}")
    kind = d["kind"]
    try:
        if kind == "power":
            return PowerFn(d["k"])
        if kind == "cos":
            return CosFn(d.get("freq", 1))
        if kind == "sin":
            return SinFn(d.get("freq", 1))
        if kind == "exp":
            return ExpFn()
        if kind == "const":
            return ConstFn(scalar_from_json(d["c"]))
        if kind == "negcot":
            return NegCotFn(scalar_from_json(d["shift"]))
        if kind == "affine":
            return AffineFn(tuple((scalar_from_json(t["coef"]),
                                   function_from_json(t["spec"]))
                                  for t in d["terms"]))
        if kind == "sampled":
            return SampledFn(tuple(scalar_from_json(p) for p in d["points"]),
                             tuple(scalar_from_json(v) for v in d["values"]))
    except KeyError as exc:
        raise InputError(f"function spec {kind!r} is missing field {exc}") from None
    raise InputError(f"unknown function kind {kind!r}")


def tuple_to_json(t: PointTuple) -> dict:
    return {"points": [scalar_to_json(p) for p in t.points],
            "ordering": t.ordering.value}


def tuple_from_json(d: dict) -> PointTuple:
    return PointTuple(tuple(scalar_from_json(p) for p in d["points"]),
                      OrderingClass(d.get("ordering", "unconstrained")))


def domain_to_json(dom: Domain) -> dict:
    if isinstance(dom, Interval):
        return {"kind": "interval",
                "lo": None if dom.lo is None else scalar_to_json(dom.lo),
                "hi": None if dom.hi is None else scalar_to_json(dom.hi),
                "lo_open": dom.lo_open, "hi_open": dom.hi_open}
    if isinstance(dom, FiniteSet):
        return {"kind": "finite_set",
                "points": [scalar_to_json(p) for p in dom.points]}
    if isinstance(dom, PuncturedInterval):
        return {"kind": "punctured_interval",
                "base": domain_to_json(dom.base),
                "excluded": [scalar_to_json(p) for p in dom.excluded]}
    raise InputError(f"not a domain: {dom!r}")


def domain_from_json(d: dict) -> Domain:
    kind = d.get("kind")
    if kind == "interval":
        lo = d.get("lo")
        hi = d.get("hi")
        return Interval(None if lo is None else scalar_from_json(lo),
                        None if hi is None else scalar_from_json(hi),
                        bool(d.get("lo_open", True)), bool(d.get("hi_open", True)))
    if kind == "finite_set":
        return FiniteSet(tuple(scalar_from_json(p) for p in d["points"]))
    if kind == "punctured_interval":
        return PuncturedInterval(domain_from_json(d["base"]),
                                 tuple(scalar_from_json(p) for p in d["excluded"]))
    raise InputError(f"unknown domain kind {kind!r}")


def system_to_json(system: ChebyshevSystem) -> dict:
    return {"basis": [function_to_json(f) for f in system.basis],
            "domain": domain_to_json(system.domain),
            "claimed_sign": system.claimed_sign.value}


def system_from_json(d: dict) -> ChebyshevSystem:
    return ChebyshevSystem(tuple(function_from_json(f) for f in d["basis"]),
                           domain_from_json(d["domain"]),
                           SignClaim(d.get("claimed_sign", "unverified")))
