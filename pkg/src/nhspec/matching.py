"""Matching times: instants where a deformed quantum equals the canonical one.

The condition s(t) = 2*pi*theta reduces to f(t) = theta.  Each family has
a printed closed-form solution built from inverse (co)sine / hyperbolic
functions, and for K5/K6 from radical expressions; these are evaluated
literally, branch by branch.  Every candidate is then validated against an
independent bracketing root-finder on g(t) = f(t) - theta over a window.
The numeric oracle is authoritative: a closed form that disagrees with it
is reported with its residual, never silently corrected.

Branch policy: inverse functions use principal branches.  Even families
admit t -> -t root pairs, so every real candidate of K1, K3, K4, K5 is
emitted with its reflection.  Where a square root was squared away in the
derivation (K1, K4, K5), both radical signs are emitted as separate
branches; for K5 both readings of the interleaved signs are kept.  The
full root set in a window comes from the oracle plus
``enumerate_periodic``, not from further branch gymnastics.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .deformation import (
    DeformationModel,
    Family,
    Parity,
    Variant,
    eval_f,
    parity_class,
)
from .errors import DomainError, EmptyWindowError

DEFAULT_GRID_POINTS = 4096
MAX_GRID_POINTS = 2**20

ACCEPT_RTOL = 1e-9          # |f(t*) - theta| <= ACCEPT_RTOL * theta
ROOT_MATCH_RTOL = 1e-8      # accepted candidate must sit within 1e-8*tau of a root
DEFECT_NEAR_RTOL = 1e-3     # rejected candidate this close to a root flags a defect
HIT_RTOL = 1e-10            # grid point counted as (near-)tangential root
SUSPICION_RTOL = 1e-6       # adjacent pair this small without a sign change
IMAG_TOL_RTOL = 1e-9        # candidate is real iff |Im t| <= 1e-9*tau


class Verdict(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    OUT_OF_DOMAIN = "out_of_domain"


@dataclass(frozen=True)
class MatchQuery:
    """One matching problem: model, target theta, search window and tolerance."""

    model: DeformationModel
    theta: float
    window: tuple[float, float] | None = None
    tol: float = 1e-12

    def __post_init__(self):
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise DomainError(f"theta must be strictly positive, got {self.theta}")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.window is None:
            half = math.pi * self.model.tau
            object.__setattr__(self, "window", (-half, half))
        lo, hi = self.window
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("window bounds must be finite")
        if lo >= hi:
            raise EmptyWindowError(f"empty window [{lo}, {hi}]")
        object.__setattr__(self, "window", (float(lo), float(hi)))


@dataclass(frozen=True)
class Candidate:
    """One literal evaluation of a printed matching-time formula."""

    branch: str
    time: float | None      # None when the expression leaves the real domain
    detail: str = ""


@dataclass(frozen=True)
class CandidateVerdict:
    branch: str
    time: float | None
    verdict: Verdict
    residual: float | None = None
    matched_root: float | None = None
    root_distance: float | None = None
    in_window: bool = False
    detail: str = ""


@dataclass(frozen=True)
class Root:
    """A numerically located solution of f(t) = theta."""

    time: float
    residual: float
    multiplicity: int = 1                       # 2 flags (near-)tangential
    bracket: tuple[float, float] | None = None


@dataclass(frozen=True)
class MatchingTimeReport:
    query: MatchQuery
    candidates: tuple[CandidateVerdict, ...]
    roots: tuple[Root, ...]
    suspected_formula_defect: bool = field(default=False)


# ---------------------------------------------------------------------------
# Closed forms, evaluated literally.
# ---------------------------------------------------------------------------

def _inv_c(variant: Variant, x: float) -> tuple[float | None, str]:
    """Principal arccosh (hyperbolic) or arccos (trigonometric) with domain report."""
    if variant is Variant.PLUS:
        if x < 1.0:
            return None, f"arccosh argument {x:.6g} below 1"
        return math.acosh(x), ""
    if not -1.0 <= x <= 1.0:
        return None, f"arccos argument {x:.6g} outside [-1, 1]"
    return math.acos(x), ""


def _inv_s(variant: Variant, x: float) -> tuple[float | None, str]:
    """Principal arcsinh or arcsin with domain report."""
    if variant is Variant.PLUS:
        return math.asinh(x), ""
    if not -1.0 <= x <= 1.0:
        return None, f"arcsin argument {x:.6g} outside [-1, 1]"
    return math.asin(x), ""


def _cbrt(z: complex) -> complex:
    """Cube root: real for real arguments, principal branch otherwise."""
    if abs(z.imag) <= 1e-14 * max(1.0, abs(z.real)):
        return complex(math.copysign(abs(z.real) ** (1.0 / 3.0), z.real))
    return z ** (1.0 / 3.0)


def _k6_time(query: MatchQuery) -> Candidate:
    """Literal nested-radical expression for K6, in complex arithmetic.

    The printed radicals mix tau powers that look inconsistent; they are
    evaluated exactly as written and left to the oracle comparison.  The
    candidate counts as real only if |Im t| <= 1e-9*tau.
    """
    model = query.model
    tau = model.tau
    plus = model.variant is Variant.PLUS
    q = complex((query.theta / model.kappa) ** 2)
    if plus:
        radicand = 16.0 * q**3 * tau**18 + 27.0 * q**2 * tau**24
        cbrt_arg = -9.0 * q * tau**12 - math.sqrt(3.0) * cmath.sqrt(radicand)
    else:
        radicand = -16.0 * q**3 * tau**18 + 27.0 * q**2 * tau**24
        cbrt_arg = 9.0 * q * tau**12 + math.sqrt(3.0) * cmath.sqrt(radicand)
    croot = _cbrt(cbrt_arg)
    big_a = 2.0 * 2.0 ** (2.0 / 3.0) * q / (3.0 ** (1.0 / 3.0) * croot)
    big_b = 2.0 ** (1.0 / 3.0) * croot / (3.0 ** (2.0 / 3.0) * tau**6)
    if plus:
        first = cmath.sqrt(1.0 - big_a + big_b)
        second = cmath.sqrt(2.0 + big_a - big_b - 2.0 / first)
    else:
        first = cmath.sqrt(1.0 + big_a + big_b)
        second = cmath.sqrt(2.0 - big_a - big_b - 2.0 / first)
    arg = 0.5 + 0.5 * first - 0.5 * second
    t = -tau * (cmath.acosh(arg) if plus else cmath.acos(arg))
    if abs(t.imag) > IMAG_TOL_RTOL * tau:
        return Candidate(
            branch="principal",
            time=None,
            detail=f"complex time, |Im t| = {abs(t.imag):.6g}",
        )
    return Candidate(branch="principal", time=t.real + 0.0)


def closed_form_time(query: MatchQuery) -> list[Candidate]:
    """All literal closed-form candidates for the query, branch-tagged.

    Candidates whose inverse-function argument leaves the real domain are
    emitted with ``time=None`` and a reason, never dropped.
    """
    model = query.model
    theta, kappa, tau = query.theta, model.kappa, model.tau
    variant = model.variant
    raw: list[Candidate] = []

    def add_inv_c(branch: str, arg: float) -> None:
        value, why = _inv_c(variant, arg)
        if value is None:
            raw.append(Candidate(branch=branch, time=None, detail=why))
        else:
            raw.append(Candidate(branch=branch, time=-tau * value + 0.0))

    fam = model.family
    if fam is Family.K1:
        root = math.sqrt(theta / kappa)
        add_inv_c("radical-", -root)   # as printed
        add_inv_c("radical+", root)
    elif fam is Family.K2:
        x = 2.0 * theta / (tau * kappa)
        value, why = _inv_s(variant, x)
        if value is None:
            raw.append(Candidate(branch="principal", time=None, detail=why))
        else:
            raw.append(Candidate(branch="principal", time=0.5 * tau * value))
    elif fam is Family.K3:
        x = math.sqrt(theta / (tau**2 * kappa))
        value, why = _inv_s(variant, x)
        if value is None:
            raw.append(Candidate(branch="principal", time=None, detail=why))
        else:
            raw.append(Candidate(branch="principal", time=-tau * value))
    elif fam is Family.K4:
        root = math.sqrt(theta / (4.0 * tau**4 * kappa))
        add_inv_c("radical-", 1.0 - root)  # as printed
        add_inv_c("radical+", 1.0 + root)
    elif fam is Family.K5:
        for inner, inner_tag in ((1.0, "+"), (-1.0, "-")):
            radicand = 1.0 + inner * 4.0 * theta / (tau**2 * kappa)
            if radicand < 0.0:
                raw.append(
                    Candidate(
                        branch=f"quadratic+/radicand{inner_tag}",
                        time=None,
                        detail=f"negative radicand {radicand:.6g}",
                    )
                )
                continue
            for outer, outer_tag in ((1.0, "+"), (-1.0, "-")):
                add_inv_c(
                    f"quadratic{outer_tag}/radicand{inner_tag}",
                    (1.0 + outer * math.sqrt(radicand)) / 2.0,
                )
    elif fam is Family.K6:
        raw.append(_k6_time(query))
    else:
        raise ValueError(f"unknown family {fam}")

    # even families: emit the time-reflected partner of every real candidate
    out: list[Candidate] = []
    even = parity_class(fam) is Parity.EVEN
    for cand in raw:
        out.append(cand)
        if even and cand.time is not None and cand.time != 0.0:
            out.append(Candidate(branch=cand.branch + "/reflected", time=-cand.time))
    return out


# ---------------------------------------------------------------------------
# Independent numeric oracle.
# ---------------------------------------------------------------------------

def _bisect(fn, lo: float, hi: float, f_lo: float, tol: float) -> float:
    """Plain bisection on a sign-change bracket, to interval width <= tol."""
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) != (f_mid < 0.0):
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(fn, lo: float, hi: float, tol: float) -> float:
    """Golden-section minimizer of fn on [lo, hi], to interval width <= tol."""
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(300):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = fn(x2)
    return x1 if f1 <= f2 else x2


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Maximal runs of True as inclusive (start, stop) index pairs."""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([0], breaks + 1))
    stops = np.concatenate((breaks, [idx.size - 1]))
    return [(int(idx[a]), int(idx[b])) for a, b in zip(starts, stops)]


def _scan_grid(query: MatchQuery, n_points: int) -> tuple[list[Root], bool]:
    model, theta = query.model, query.theta
    lo, hi = query.window
    t_grid = np.linspace(lo, hi, n_points)
    g_grid = np.asarray(eval_f(model, t_grid)) - theta

    def g(x: float) -> float:
        return eval_f(model, x) - theta

    hit = np.abs(g_grid) <= HIT_RTOL * theta
    sign_change = g_grid[:-1] * g_grid[1:] < 0.0

    roots: list[Root] = []
    hit_runs = _runs(hit)
    for start, stop in hit_runs:
        left = max(start - 1, 0)
        right = min(stop + 1, n_points - 1)
        bracket = (float(t_grid[left]), float(t_grid[right]))
        t_star = _golden_min(lambda x: abs(g(x)), bracket[0], bracket[1], query.tol)
        simple = (
            not hit[left]
            and not hit[right]
            and (g_grid[left] < 0.0) != (g_grid[right] < 0.0)
        )
        roots.append(
            Root(
                time=t_star,
                residual=abs(g(t_star)),
                multiplicity=1 if simple else 2,
                bracket=bracket,
            )
        )

    for i in np.flatnonzero(sign_change):
        if hit[i] or hit[i + 1]:
            continue  # already claimed by a tangential run
        a, b = float(t_grid[i]), float(t_grid[i + 1])
        t_star = _bisect(g, a, b, float(g_grid[i]), query.tol)
        roots.append(
            Root(time=t_star, residual=abs(g(t_star)), multiplicity=1, bracket=(a, b))
        )

    # root-pair suspicion: a stretch of |g| < 1e-6*theta that neither dips to
    # the tangential threshold nor crosses zero needs a denser grid
    small = np.abs(g_grid) < SUSPICION_RTOL * theta
    suspicious = False
    for start, stop in _runs(small):
        if stop == start:
            continue
        if np.any(hit[start : stop + 1]):
            continue
        cell_lo = max(start - 1, 0)
        cell_hi = min(stop + 1, n_points - 1)
        if np.any(sign_change[cell_lo:cell_hi]):
            continue
        suspicious = True
        break
    return roots, suspicious


def _dedupe(roots: list[Root], tol: float) -> list[Root]:
    out: list[Root] = []
    for root in sorted(roots, key=lambda r: r.time):
        if out and abs(root.time - out[-1].time) <= tol:
            if root.residual < out[-1].residual:
                out[-1] = root
            continue
        out.append(root)
    return out


def numeric_roots(query: MatchQuery, grid_points: int = DEFAULT_GRID_POINTS) -> list[Root]:
    """All solutions of f(t) = theta in the window, by grid scan + bisection.

    Samples at least 4096 points; the grid is doubled (up to 2**20 points)
    while a stretch of near-zero |g| remains unexplained by a root, which
    resolves tangential roots and close root pairs.  Roots are sorted and
    deduplicated within ``query.tol``.
    """
    lo, hi = query.window
    if lo >= hi:
        raise EmptyWindowError(f"empty window [{lo}, {hi}]")
    n_points = max(int(grid_points), DEFAULT_GRID_POINTS)
    while True:
        roots, suspicious = _scan_grid(query, n_points)
        if not suspicious or n_points >= MAX_GRID_POINTS:
            break
        n_points = min(2 * n_points, MAX_GRID_POINTS)
    return _dedupe(roots, query.tol)


# ---------------------------------------------------------------------------
# Validation: closed forms vs oracle.
# ---------------------------------------------------------------------------

def validate(query: MatchQuery, grid_points: int = DEFAULT_GRID_POINTS) -> MatchingTimeReport:
    """Cross-check every closed-form candidate against the numeric oracle.

    An in-domain candidate is Accepted iff |f(t*) - theta| <= 1e-9*theta;
    each candidate is cross-linked to the nearest oracle root.  A Rejected
    candidate sitting within 1e-3*tau of an oracle root flags a suspected
    transcription defect in the printed formula.
    """
    model, theta = query.model, query.theta
    lo, hi = query.window
    candidates = closed_form_time(query)
    roots = numeric_roots(query, grid_points)
    root_times = np.array([r.time for r in roots]) if roots else None

    entries: list[CandidateVerdict] = []
    suspected = False
    for cand in candidates:
        if cand.time is None:
            entries.append(
                CandidateVerdict(
                    branch=cand.branch,
                    time=None,
                    verdict=Verdict.OUT_OF_DOMAIN,
                    detail=cand.detail,
                )
            )
            continue
        residual = abs(eval_f(model, cand.time) - theta)
        verdict = Verdict.ACCEPTED if residual <= ACCEPT_RTOL * theta else Verdict.REJECTED
        matched_root = None
        distance = None
        if root_times is not None:
            nearest = int(np.argmin(np.abs(root_times - cand.time)))
            matched_root = roots[nearest].time
            distance = abs(matched_root - cand.time)
        if (
            verdict is Verdict.REJECTED
            and distance is not None
            and distance <= DEFECT_NEAR_RTOL * model.tau
        ):
            suspected = True
        entries.append(
            CandidateVerdict(
                branch=cand.branch,
                time=cand.time,
                verdict=verdict,
                residual=residual,
                matched_root=matched_root,
                root_distance=distance,
                in_window=lo <= cand.time <= hi,
                detail=cand.detail,
            )
        )
    return MatchingTimeReport(
        query=query,
        candidates=tuple(entries),
        roots=tuple(roots),
        suspected_formula_defect=suspected,
    )


def enumerate_periodic(query: MatchQuery, k_range) -> list[Root]:
    """Translate the base-window roots by whole periods 2*pi*tau*k.

    Trigonometric variant only.  Every translated time is re-verified
    against the defining condition; translations whose residual exceeds
    1e-9*theta are dropped.
    """
    model = query.model
    if model.variant is not Variant.MINUS:
        raise DomainError("periodic enumeration applies to the trigonometric variant only")
    period = 2.0 * math.pi * model.tau
    base = numeric_roots(query)
    out: list[Root] = []
    for k in k_range:
        for root in base:
            t = root.time + period * k
            residual = abs(eval_f(model, t) - query.theta)
            if residual <= ACCEPT_RTOL * query.theta:
                out.append(
                    Root(time=t, residual=residual, multiplicity=root.multiplicity)
                )
    return sorted(out, key=lambda r: r.time)
