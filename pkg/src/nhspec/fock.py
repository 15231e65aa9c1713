"""Truncated Fock-space representations of the ladder and area operators.

At a fixed time with f = f(t) != 0, the ladder operators

    a      = (x1 + i*x2) / sqrt(2 f)
    a_dag  = (x1 - i*x2) / sqrt(2 f)

are inverted to x1 = sqrt(f/2)*(a + a_dag), x2 = i*sqrt(f/2)*(a_dag - a),
and everything is represented on the first D Fock states, with the usual
matrix elements a[n, n+1] = sqrt(n+1).  Negative f is handled by building
with |f| and swapping the ladder roles (x2 gets the opposite sign), which
keeps [x1, x2] = i*f.

Truncation makes some identities fail *exactly* in the last row/column:
[a, a_dag] ends with -(D-1) in the corner instead of 1, the area operator
ends with pi*|f|*(D-1) instead of pi*|f|*(2D-1), and the number operator
recovered from the coordinates has its corner corrupted to (D-2)/2.  These
defects are deliberate diagnostics, reported separately from the interior
block (indices 0..D-2), which must be exact to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deformation import DeformationModel, eval_f
from .errors import DegenerateTimeError, DomainError

DEFAULT_DIM = 64
MIN_DIM = 2
MAX_DIM = 1024

DEGENERATE_F = 1e-300


def _check_dim(dim: int) -> None:
    if not MIN_DIM <= dim <= MAX_DIM:
        raise DomainError(f"dim must be in [{MIN_DIM}, {MAX_DIM}], got {dim}")


def ladder(dim: int) -> np.ndarray:
    """Annihilation matrix on D Fock states: entries (n, n+1) = sqrt(n+1)."""
    _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1.0, dim)), k=1)


@dataclass(frozen=True)
class TruncatedFockRep:
    """Dense D x D matrices for a, a_dag, x1, x2, N and S at one instant.

    ``orientation`` is +1 when f(t) > 0 and -1 when the ladder roles were
    swapped for f(t) < 0; ``f_value`` is |f(t)|.
    """

    dim: int
    f_value: float
    orientation: int
    a: np.ndarray
    a_dagger: np.ndarray
    x1: np.ndarray
    x2: np.ndarray         # complex; purely imaginary off-diagonal
    number: np.ndarray     # exact diag(0..D-1); equals a_dagger @ a to rounding
    area: np.ndarray       # pi * (x1^2 + x2^2), real symmetric


@dataclass(frozen=True)
class DefectReport:
    """Interior deviation plus the exact edge artifact of one identity check."""

    dim: int
    max_interior_deviation: float
    corner_value: float


def build_rep(model: DeformationModel, t: float, dim: int = DEFAULT_DIM) -> TruncatedFockRep:
    """Representation matrices for the model at time t on D Fock states."""
    _check_dim(dim)
    f = eval_f(model, t)
    if abs(f) < DEGENERATE_F:
        raise DegenerateTimeError(
            f"f({t}) = {f}: commutative instant, ladder operators undefined"
        )
    orientation = 1 if f > 0 else -1
    f_abs = abs(f)
    a = ladder(dim)
    a_dag = a.T.copy()
    root = math.sqrt(f_abs / 2.0)
    x1 = root * (a + a_dag)
    x2 = orientation * 1j * root * (a_dag - a)
    number = np.diag(np.arange(float(dim)))
    area = math.pi * (x1 @ x1 + (x2 @ x2).real)
    return TruncatedFockRep(
        dim=dim,
        f_value=f_abs,
        orientation=orientation,
        a=a,
        a_dagger=a_dag,
        x1=x1,
        x2=x2,
        number=number,
        area=area,
    )


def _interior_max(matrix: np.ndarray) -> float:
    """Largest |entry| over the leading (D-1) x (D-1) block."""
    return float(np.max(np.abs(matrix[:-1, :-1])))


def commutator_defect(dim: int) -> DefectReport:
    """Check [a, a_dag] = I.

    The interior block holds to rounding; the corner of the commutator is
    exactly -(D-1) (it reads 0 - (D-1) after truncation) and is reported
    as ``corner_value``.
    """
    _check_dim(dim)
    a = ladder(dim)
    comm = a @ a.T - a.T @ a
    defect = comm - np.eye(dim)
    return DefectReport(
        dim=dim,
        max_interior_deviation=_interior_max(defect),
        corner_value=float(comm[-1, -1]),
    )


def coordinate_number(dim: int) -> np.ndarray:
    """Number operator recovered from the coordinate quadratic form.

    Equals (a a_dag + a_dag a - 1)/2 for any f: diag(0..D-2) on the
    interior, with the corner corrupted to (D-2)/2 by truncation.
    """
    _check_dim(dim)
    a = ladder(dim)
    return (a @ a.T + a.T @ a - np.eye(dim)) / 2.0


def number_commutators_defect(dim: int) -> tuple[DefectReport, DefectReport]:
    """Check [N, a_dag] = a_dag and [N, a] = -a with the coordinate-form N.

    With N = a_dag @ a both identities hold exactly even after truncation,
    so the diagnostic uses ``coordinate_number`` (corrupted corner), whose
    commutators are exact on the interior and defective in one edge entry:
    -(D/2)*sqrt(D-1) at (D-1, D-2) for the raising check and
    +(D/2)*sqrt(D-1) at (D-2, D-1) for the lowering check.
    """
    _check_dim(dim)
    a = ladder(dim)
    a_dag = a.T
    n = coordinate_number(dim)
    raise_defect = (n @ a_dag - a_dag @ n) - a_dag
    lower_defect = (n @ a - a @ n) + a
    return (
        DefectReport(
            dim=dim,
            max_interior_deviation=_interior_max(raise_defect),
            corner_value=float(raise_defect[-1, -2]),
        ),
        DefectReport(
            dim=dim,
            max_interior_deviation=_interior_max(lower_defect),
            corner_value=float(lower_defect[-2, -1]),
        ),
    )


def number_from_coordinates(
    model: DeformationModel, t: float, dim: int = DEFAULT_DIM
) -> np.ndarray:
    """(x1^2 + x2^2 - |f|) / (2|f|), which matches N on the interior block."""
    rep = build_rep(model, t, dim)
    quad = rep.x1 @ rep.x1 + (rep.x2 @ rep.x2).real
    return (quad - rep.f_value * np.eye(dim)) / (2.0 * rep.f_value)


def area_eigenvalues(
    model: DeformationModel, t: float, dim: int = DEFAULT_DIM
) -> list[float]:
    """Eigenvalues of the area operator, in Fock order.

    S is analytically diagonal, so the eigenvalues are read off the
    diagonal after checking the off-diagonal part is negligible; a
    symmetric eigendecomposition cross-checks the set.  Interior entries
    are 2*pi*|f|*(n + 1/2); the last one is the truncation artifact
    pi*|f|*(D-1).
    """
    rep = build_rep(model, t, dim)
    s = rep.area
    diag = np.diag(s).copy()
    scale = float(np.max(np.abs(diag)))
    off = s - np.diag(diag)
    off_max = float(np.max(np.abs(off)))
    if off_max > 1e-12 * scale:
        raise AssertionError(f"area operator not numerically diagonal: {off_max:.3e}")
    eig = np.linalg.eigvalsh(s)
    if float(np.max(np.abs(np.sort(diag) - eig))) > 1e-12 * scale:
        raise AssertionError("eigendecomposition disagrees with diagonal reading")
    return [float(v) for v in diag]


def eigenstate(n: int, dim: int = DEFAULT_DIM) -> np.ndarray:
    """(a_dag)^n applied to the vacuum, scaled by 1/sqrt(n!).

    Equals the n-th basis vector up to rounding; the vacuum satisfies
    a @ e0 = 0 exactly.
    """
    _check_dim(dim)
    if not 0 <= n <= dim - 1:
        raise DomainError(f"eigenstate index must be in [0, {dim - 1}], got {n}")
    a_dag = ladder(dim).T
    vec = np.zeros(dim)
    vec[0] = 1.0
    for _ in range(n):
        vec = a_dag @ vec
    return vec / math.sqrt(math.factorial(n))
