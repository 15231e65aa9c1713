"""Time-dependent deformation functions of the noncommutative plane.

The coordinate commutator is [x1, x2] = i*f(t), where f belongs to one of
six one-parameter families (K1..K6), each in two variants:

* hyperbolic  (``Variant.PLUS``):  C = cosh(t/tau), S = sinh(t/tau); the
  deformation expands in time,
* trigonometric (``Variant.MINUS``): C = cos(t/tau), S = sin(t/tau); the
  deformation oscillates with period 2*pi*tau (pi*tau for K1..K3).

The families are

    K1: kappa * C^2
    K2: kappa * tau   * C * S
    K3: kappa * tau^2 * S^2
    K4: 4 * kappa * tau^4 * (C - 1)^2
    K5: +/- kappa * tau^2 * (C - 1) * C
    K6: +/- kappa * tau^3 * (C - 1) * S

with the leading sign of K5/K6 tied to the variant (+ hyperbolic,
- trigonometric).  The area quantum is s(t) = 2*pi*f(t).

All quantities are treated as dimensionless reals.  f is returned signed;
a negative value records an orientation flip of the noncommutativity and
is dealt with by consumers (see ``fock``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TimeOverflowError

TWO_PI = 2.0 * math.pi

# cosh overflows just above 710; reject early rather than propagate inf.
HYPERBOLIC_ARG_LIMIT = 700.0


class Family(enum.Enum):
    K1 = "k1"
    K2 = "k2"
    K3 = "k3"
    K4 = "k4"
    K5 = "k5"
    K6 = "k6"


class Variant(enum.Enum):
    PLUS = "plus"    # hyperbolic, expanding
    MINUS = "minus"  # trigonometric, oscillating


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


_PARITY = {
    Family.K1: Parity.EVEN,
    Family.K2: Parity.ODD,
    Family.K3: Parity.EVEN,
    Family.K4: Parity.EVEN,
    Family.K5: Parity.EVEN,
    Family.K6: Parity.ODD,
}

# C <-> tau*S exchanges K1 and K3 and fixes K2; undefined for the rest.
_DUAL = {Family.K1: Family.K3, Family.K2: Family.K2, Family.K3: Family.K1}


@dataclass(frozen=True)
class DeformationModel:
    """One deformed space-time: family, variant and parameters (kappa, tau)."""

    family: Family
    variant: Variant
    kappa: float
    tau: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise DomainError(f"kappa must be strictly positive, got {self.kappa}")
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise DomainError(f"tau must be strictly positive, got {self.tau}")

    @property
    def sign(self) -> float:
        """Leading sign of the K5/K6 prefactor (+1 hyperbolic, -1 trigonometric)."""
        return 1.0 if self.variant is Variant.PLUS else -1.0


def _c_and_s(model: DeformationModel, t):
    """C(t/tau), S(t/tau) for the model's variant; array-friendly."""
    u = np.asarray(t, dtype=float) / model.tau
    if not np.all(np.isfinite(u)):
        raise DomainError("time values must be finite")
    if model.variant is Variant.PLUS:
        if np.any(np.abs(u) > HYPERBOLIC_ARG_LIMIT):
            raise TimeOverflowError(
                f"|t/tau| exceeds {HYPERBOLIC_ARG_LIMIT:g}; cosh/sinh would overflow"
            )
        return np.cosh(u), np.sinh(u)
    return np.cos(u), np.sin(u)


def _combine(model: DeformationModel, c, s):
    k, tau = model.kappa, model.tau
    fam = model.family
    if fam is Family.K1:
        return k * c * c
    if fam is Family.K2:
        return k * tau * c * s
    if fam is Family.K3:
        return k * tau**2 * s * s
    if fam is Family.K4:
        return 4.0 * k * tau**4 * (c - 1.0) ** 2
    if fam is Family.K5:
        return model.sign * k * tau**2 * (c - 1.0) * c
    if fam is Family.K6:
        return model.sign * k * tau**3 * (c - 1.0) * s
    raise ValueError(f"unknown family {fam}")


def _as_input_shape(value, t):
    if np.isscalar(t) or getattr(t, "ndim", 0) == 0:
        return float(value)
    return value


def eval_f(model: DeformationModel, t):
    """Signed deformation value f(t).  Accepts a scalar or an ndarray of times."""
    c, s = _c_and_s(model, t)
    return _as_input_shape(_combine(model, c, s), t)


def eval_quantum(model: DeformationModel, t):
    """Signed area quantum s(t) = 2*pi*f(t)."""
    return _as_input_shape(TWO_PI * np.asarray(eval_f(model, t)), t)


def parity_class(family: Family) -> Parity:
    """Behaviour under t -> -t: even for K1, K3, K4, K5; odd for K2, K6."""
    return _PARITY[family]


def dual_of(family: Family) -> Family | None:
    """Image of the family under C <-> tau*S, or None where it is undefined."""
    return _DUAL.get(family)


def apply_duality(model: DeformationModel, t):
    """Evaluate the model's f with C replaced by tau*S and S by C/tau.

    Defined for K1, K2, K3 only; equals ``eval_f`` of the dual family with
    the same kappa (K2 maps onto itself).
    """
    if model.family not in _DUAL:
        raise DomainError(f"duality is undefined for {model.family.name}")
    c, s = _c_and_s(model, t)
    swapped = _combine(model, model.tau * s, c / model.tau)
    return _as_input_shape(swapped, t)


# ---------------------------------------------------------------------------
# Taylor machinery: exact series composition and the large-tau limit.
# ---------------------------------------------------------------------------

MAX_SERIES_ORDER = 12


def _series_c(model: DeformationModel, order: int) -> list[float]:
    """Coefficients of C(t/tau) in powers of t."""
    coef = [0.0] * (order + 1)
    for k in range(0, order + 1, 2):
        value = 1.0 / (math.factorial(k) * model.tau**k)
        if model.variant is Variant.MINUS and (k // 2) % 2:
            value = -value
        coef[k] = value
    return coef


def _series_s(model: DeformationModel, order: int) -> list[float]:
    """Coefficients of S(t/tau) in powers of t."""
    coef = [0.0] * (order + 1)
    for k in range(1, order + 1, 2):
        value = 1.0 / (math.factorial(k) * model.tau**k)
        if model.variant is Variant.MINUS and ((k - 1) // 2) % 2:
            value = -value
        coef[k] = value
    return coef


def _conv(a: list[float], b: list[float], order: int) -> list[float]:
    out = [0.0] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0.0:
            continue
        for j in range(order + 1 - i):
            bj = b[j]
            if bj != 0.0:
                out[i + j] += ai * bj
    return out


def series_expand(model: DeformationModel, order: int) -> list[float]:
    """Taylor coefficients of f around t = 0, degrees 0..order (order <= 12).

    Built by composing the exact cosh/sinh/cos/sin series, so the
    structural zeros are exact: even families have zero odd coefficients
    and odd families zero even coefficients.
    """
    if not 0 <= order <= MAX_SERIES_ORDER:
        raise ValueError(f"order must be in [0, {MAX_SERIES_ORDER}], got {order}")
    k, tau = model.kappa, model.tau
    c = _series_c(model, order)
    s = _series_s(model, order)
    cm1 = list(c)
    cm1[0] -= 1.0
    fam = model.family
    if fam is Family.K1:
        out, scale = _conv(c, c, order), k
    elif fam is Family.K2:
        out, scale = _conv(c, s, order), k * tau
    elif fam is Family.K3:
        out, scale = _conv(s, s, order), k * tau**2
    elif fam is Family.K4:
        out, scale = _conv(cm1, cm1, order), 4.0 * k * tau**4
    elif fam is Family.K5:
        out, scale = _conv(cm1, c, order), model.sign * k * tau**2
    else:
        out, scale = _conv(cm1, s, order), model.sign * k * tau**3
    return [scale * v for v in out]


@dataclass(frozen=True)
class LimitPolynomial:
    """Leading polynomial of f as tau -> infinity (one monomial per family)."""

    terms: tuple[tuple[int, float], ...]  # (degree, coefficient)

    def __post_init__(self):
        for degree, _ in self.terms:
            if degree not in (0, 1, 2, 3, 4):
                raise ValueError(f"unsupported monomial degree {degree}")

    @property
    def degree(self) -> int:
        return max(d for d, _ in self.terms)

    def __call__(self, t):
        return sum(coef * np.asarray(t, dtype=float) ** deg for deg, coef in self.terms)


# degree and coefficient (as a multiple of kappa) of the tau -> inf monomial
_LIMIT_MONOMIAL = {
    Family.K1: (0, 1.0),
    Family.K2: (1, 1.0),
    Family.K3: (2, 1.0),
    Family.K4: (4, 1.0),
    Family.K5: (2, 0.5),
    Family.K6: (3, 0.5),
}


def galilei_limit_poly(model: DeformationModel) -> LimitPolynomial:
    """tau -> infinity limit of f: kappa, kappa*t, kappa*t^2, kappa*t^4,
    kappa*t^2/2 or kappa*t^3/2 for K1..K6 respectively (both variants)."""
    degree, factor = _LIMIT_MONOMIAL[model.family]
    return LimitPolynomial(terms=((degree, factor * model.kappa),))


@dataclass(frozen=True)
class LimitReport:
    """Deviation of f(t; tau) from its large-tau polynomial across a tau ladder."""

    family: Family
    variant: Variant
    kappa: float
    t: float
    taus: tuple[float, ...]
    deviations: tuple[float, ...]
    order: float | None  # fitted decay order of the deviation in tau; None if exact
    polynomial: LimitPolynomial


DEFAULT_TAU_MULTIPLIERS = (10.0, 20.0, 40.0, 80.0)


def galilei_limit_report(
    family: Family,
    variant: Variant,
    kappa: float,
    t: float,
    taus: tuple[float, ...] | None = None,
) -> LimitReport:
    """Evaluate |f - p(t)| over a tau ladder and fit the convergence order.

    The remainder after the leading monomial is O(tau^-2), so the fitted
    order should sit near 2.  ``taus`` defaults to {10, 20, 40, 80}*|t|;
    an explicit ladder is required when t = 0.
    """
    if taus is None:
        if t == 0.0:
            raise DomainError("default tau ladder needs t != 0")
        taus = tuple(m * abs(t) for m in DEFAULT_TAU_MULTIPLIERS)
    if len(taus) < 2:
        raise DomainError("tau ladder needs at least two rungs")
    probe = DeformationModel(family, variant, kappa, taus[0])
    poly = galilei_limit_poly(probe)
    deviations = []
    for tau in taus:
        model = DeformationModel(family, variant, kappa, tau)
        deviations.append(abs(eval_f(model, t) - poly(t)))
    if all(d > 0.0 for d in deviations):
        slope = np.polyfit(np.log(np.asarray(taus)), np.log(np.asarray(deviations)), 1)[0]
        order = -float(slope)
    else:
        order = None  # deviation vanished identically (e.g. K1 at t = 0)
    return LimitReport(
        family=family,
        variant=variant,
        kappa=kappa,
        t=t,
        taus=tuple(float(x) for x in taus),
        deviations=tuple(float(d) for d in deviations),
        order=order,
        polynomial=poly,
    )
