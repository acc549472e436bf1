"""Expansion of the ring candidates into the eigenbases of the two chambers.

Inserting impenetrable barriers at angles 0 and alpha (at t=0, instantaneously)
turns the ring into two independent infinite square wells: chamber 1 on
(0, alpha) and chamber 2 on (alpha, 2*pi). Each candidate is re-expanded in
the Dirichlet sine modes of the chambers; the mode of chamber c with index n
is sin(n*pi*(theta - lo_c)/width_c).

Two coefficient conventions run in parallel:

* ``coeff_a``/``coeff_b``/``coeff_c``/``coeff_d`` are the 1/pi-weighted
  integrals of the bare waveform sin(theta - offset) against the bare chamber
  sines (kinds a/b: reference candidate in chambers 1/2; kinds c/d: shifted
  candidate in chambers 1/2). These obey compact closed forms but are not
  projections onto unit vectors, so their squares are not probabilities.
* the *normalized* coefficients are projections onto the orthonormal modes
  sqrt(2/width)*sin(...): A_n = sqrt(2*pi/alpha) * a_n for chamber 1 and
  B_m = sqrt(2*pi/(2*pi - alpha)) * b_m for chamber 2. Their squares sum to 1
  as the truncation grows (Parseval), and 1 minus that sum is the *deficit*.

The adopted closed forms are sign-resolved against the quadrature oracle in
:mod:`ringsplit.quadrature`; ``sign_discrepancies`` documents every place the
resolution flipped a sign relative to the uncorrected variants (kind d flips
for all n).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import project_mode
from .ring import (DEFAULT_CONSTANTS, TWO_PI, UNIT_RING_NORM,
                   PhysicalConstants, RingState)

HALF_PI = 0.5 * math.pi

#: Chambers are labeled 1 (interval (0, alpha)) and 2 (interval (alpha, 2*pi)).
CHAMBERS = (1, 2)

COEFF_KINDS = ("a", "b", "c", "d")

_DENOM_FLOOR = 1e-300


@dataclass(frozen=True)
class ChamberGeometry:
    """The two intervals created by barriers at 0 and alpha.

    alpha may reach pi/2 (the orthogonal-candidate endpoint); widths always
    sum to 2*pi.
    """

    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= HALF_PI):
            raise ValueError(
                f"barrier angle must lie in (0, pi/2], got {self.alpha!r}")

    @property
    def width_1(self) -> float:
        return self.alpha

    @property
    def width_2(self) -> float:
        return TWO_PI - self.alpha

    def width(self, chamber: int) -> float:
        self._check_chamber(chamber)
        return self.alpha if chamber == 1 else TWO_PI - self.alpha

    def bounds(self, chamber: int) -> tuple[float, float]:
        self._check_chamber(chamber)
        return (0.0, self.alpha) if chamber == 1 else (self.alpha, TWO_PI)

    @staticmethod
    def _check_chamber(chamber: int):
        if chamber not in CHAMBERS:
            raise ValueError(f"chamber must be 1 or 2, got {chamber!r}")


def _check_alpha(alpha: float) -> float:
    ChamberGeometry(alpha)
    return float(alpha)


def _levels(n) -> np.ndarray:
    n = np.asarray(n)
    if not np.issubdtype(n.dtype, np.integer) and not np.all(n == np.floor(n)):
        raise ValueError("mode index must be integral")
    if np.any(n < 1):
        raise ValueError("mode index must be >= 1")
    return n.astype(float)


def _chamber2_denominator(n: np.ndarray, alpha: float) -> np.ndarray:
    den = (alpha - (n + 2.0) * math.pi) * (alpha + (n - 2.0) * math.pi)
    if np.any(np.abs(den) < _DENOM_FLOOR):
        raise ValueError("degenerate chamber-2 denominator")
    return den


def coeff_a(n, alpha: float):
    """Reference candidate against chamber-1 mode n: (-1)^n * alpha*n/(alpha^2 - pi^2 n^2) * sin(alpha)."""
    alpha = _check_alpha(alpha)
    n = _levels(n)
    den = alpha * alpha - math.pi**2 * n * n
    if np.any(np.abs(den) < _DENOM_FLOOR):
        raise ValueError("degenerate chamber-1 denominator")
    out = (-1.0) ** n * alpha * n / den * math.sin(alpha)
    return out if out.ndim else float(out)


def coeff_b(n, alpha: float):
    """Reference candidate against chamber-2 mode n."""
    alpha = _check_alpha(alpha)
    n = _levels(n)
    den = _chamber2_denominator(n, alpha)
    out = -(TWO_PI - alpha) * n / den * math.sin(alpha)
    return out if out.ndim else float(out)


def coeff_c(n, alpha: float):
    """Shifted candidate against chamber-1 mode n; equals (-1)^n * coeff_a."""
    alpha = _check_alpha(alpha)
    n = _levels(n)
    den = alpha * alpha - math.pi**2 * n * n
    if np.any(np.abs(den) < _DENOM_FLOOR):
        raise ValueError("degenerate chamber-1 denominator")
    out = alpha * n / den * math.sin(alpha)
    return out if out.ndim else float(out)


def coeff_d(n, alpha: float):
    """Shifted candidate against chamber-2 mode n; equals (-1)^n * coeff_b.

    Sign fixed by the quadrature oracle: (-1)^(n+1), not (-1)^n as in the
    uncorrected variant (see ``sign_discrepancies``).
    """
    alpha = _check_alpha(alpha)
    n = _levels(n)
    den = _chamber2_denominator(n, alpha)
    out = (-1.0) ** (n + 1.0) * (TWO_PI - alpha) * n / den * math.sin(alpha)
    return out if out.ndim else float(out)


_COEFF_FUNCS = {"a": coeff_a, "b": coeff_b, "c": coeff_c, "d": coeff_d}


def coefficient(kind: str, n, alpha: float):
    """Adopted (oracle-resolved) closed form for one coefficient kind."""
    try:
        return _COEFF_FUNCS[kind](n, alpha)
    except KeyError:
        raise ValueError(f"kind must be one of {COEFF_KINDS}, got {kind!r}") from None


def uncorrected_coefficient(kind: str, n, alpha: float):
    """Closed forms before oracle sign resolution.

    Kinds a, b, c coincide with the adopted forms; kind d carries the opposite
    sign for every n. Retained so the discrepancy report can document each
    correction instead of silently absorbing it.
    """
    if kind == "d":
        out = -np.asarray(coeff_d(n, alpha))
        return out if out.ndim else float(out)
    return coefficient(kind, n, alpha)


def _kind_chamber_offset(kind: str, alpha: float) -> tuple[int, float]:
    return {
        "a": (1, 0.0), "b": (2, 0.0), "c": (1, alpha), "d": (2, alpha),
    }[kind]


def oracle_coefficient(kind: str, n: int, alpha: float, *, tol: float = 1e-12) -> float:
    """Coefficient of the given kind by quadrature (the defining integral / pi)."""
    geometry = ChamberGeometry(alpha)
    chamber, offset = _kind_chamber_offset(kind, alpha)
    lo, hi = geometry.bounds(chamber)

    def shape(theta):
        return np.sin(theta - offset)

    return project_mode(shape, lo, hi, n, tol=tol) / math.pi


def quadrature_project(state, chamber: int, n: int, alpha: float, *,
                       tol: float = 1e-12) -> float:
    """Oracle projection of a state onto one bare chamber mode.

    For a :class:`RingState` the integrand is the unit-amplitude waveform
    sin(theta - offset) times sin(n*pi*(theta - lo)/width); the candidate's
    1/sqrt(pi) normalization and the series prefactor 1/sqrt(pi) are folded
    into the coefficient convention, so the a/b/c/d coefficients equal this
    integral divided by pi. Any plain callable theta -> value is integrated
    as given.
    """
    geometry = ChamberGeometry(alpha)
    lo, hi = geometry.bounds(chamber)
    f = state.shape if isinstance(state, RingState) else state
    return project_mode(f, lo, hi, n, tol=tol)


@dataclass(frozen=True)
class ChamberExpansion:
    """Truncated two-chamber expansion of one candidate.

    ``coeffs_1``/``coeffs_2`` hold the 1/pi-weighted series coefficients for
    modes 1..n_trunc; ``norm_coeffs_1``/``norm_coeffs_2`` the projections onto
    the orthonormal chamber modes.
    """

    geometry: ChamberGeometry
    n_trunc: int
    state_offset: float
    coeffs_1: np.ndarray = field(repr=False)
    coeffs_2: np.ndarray = field(repr=False)
    norm_coeffs_1: np.ndarray = field(repr=False)
    norm_coeffs_2: np.ndarray = field(repr=False)

    def coeffs(self, chamber: int) -> np.ndarray:
        self.geometry._check_chamber(chamber)
        return self.coeffs_1 if chamber == 1 else self.coeffs_2

    def norm_coeffs(self, chamber: int) -> np.ndarray:
        self.geometry._check_chamber(chamber)
        return self.norm_coeffs_1 if chamber == 1 else self.norm_coeffs_2

    @property
    def completeness(self) -> float:
        """Sum of squared normalized coefficients; tends to 1 as n_trunc grows."""
        a = self.norm_coeffs_1
        b = self.norm_coeffs_2
        return float(a @ a + b @ b)

    @property
    def deficit(self) -> float:
        """Parseval deficit 1 - completeness (nonnegative, ~1/n_trunc)."""
        return 1.0 - self.completeness


def expand(state: RingState, alpha: float, n_trunc: int) -> ChamberExpansion:
    """Expand a candidate into both chamber eigenbases using the closed forms.

    Only the two discrimination candidates are supported: the state offset
    must coincide with one of the barrier angles (its node), mod 2*pi.
    """
    geometry = ChamberGeometry(alpha)
    if n_trunc < 1:
        raise ValueError(f"truncation must be >= 1, got {n_trunc}")
    n = np.arange(1, n_trunc + 1)
    offset = math.fmod(state.offset, TWO_PI)
    # closed forms assume the 1/sqrt(pi) candidate normalization; keep the
    # default path exactly scale-free
    scale = 1.0 if state.normalization == UNIT_RING_NORM \
        else state.normalization * math.sqrt(math.pi)
    if abs(offset) < 1e-12 or abs(offset - TWO_PI) < 1e-12:
        c1 = coeff_a(n, alpha) * scale
        c2 = coeff_b(n, alpha) * scale
    elif abs(offset - alpha) < 1e-12:
        c1 = coeff_c(n, alpha) * scale
        c2 = coeff_d(n, alpha) * scale
    else:
        raise ValueError(
            "state offset must sit on one of the barriers (0 or alpha); "
            f"got offset={state.offset!r} with alpha={alpha!r}")
    return ChamberExpansion(
        geometry=geometry,
        n_trunc=int(n_trunc),
        state_offset=float(state.offset),
        coeffs_1=c1,
        coeffs_2=c2,
        norm_coeffs_1=math.sqrt(TWO_PI / geometry.width_1) * c1,
        norm_coeffs_2=math.sqrt(TWO_PI / geometry.width_2) * c2,
    )


def single_barrier_coefficients(state: RingState, n_max: int) -> np.ndarray:
    """Normalized projections onto the width-2*pi well left by a single barrier at 0.

    The well modes are sin(n*theta/2)/sqrt(pi); the n=2 mode is the reference
    candidate itself, so a nodal insertion (offset 0) gives exactly one
    nonzero coefficient and leaves wave function and energy unchanged. A
    non-nodal offset populates the odd modes as well.
    """
    if n_max < 1:
        raise ValueError(f"truncation must be >= 1, got {n_max}")
    delta = state.offset
    scale = 1.0 if state.normalization == UNIT_RING_NORM \
        else state.normalization * math.sqrt(math.pi)
    n = np.arange(1, n_max + 1)
    out = np.zeros(n_max)
    out[n == 2] = math.cos(delta)
    odd = n % 2 == 1
    nf = n[odd].astype(float)
    out[odd] = -math.sin(delta) * (4.0 * nf / (nf * nf - 4.0)) / math.pi
    return out * scale


def single_well_projection(state, n: int, *, tol: float = 1e-12) -> float:
    """Oracle route for the single-barrier case: bare integral over (0, 2*pi).

    Divide by pi to compare against ``single_barrier_coefficients``.
    """
    f = state.shape if isinstance(state, RingState) else state
    return project_mode(f, 0.0, TWO_PI, n, tol=tol)


def well_energy(n: int, width: float, k: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Dirichlet-well level n^2 pi^2 hbar^2 / (2 M width^2)."""
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    if not width > 0.0:
        raise ValueError(f"width must be positive, got {width!r}")
    return (n * math.pi * k.hbar / width) ** 2 / (2.0 * k.mass)


DELTA_E_VARIANTS = ("nominal", "conserving")


def delta_energy(n, m, alpha: float, k: PhysicalConstants = DEFAULT_CONSTANTS,
                 variant: str = "nominal"):
    """Energy transferred by the non-nodal barrier when the candidate lands on
    chamber modes (n, m).

    Both variants share the chamber part E1_n + E2_m and differ only in the
    subtracted constant: ``nominal`` keeps the closed-form offset hbar^2/(8M);
    ``conserving`` subtracts the actual pre-insertion ring energy hbar^2/(2M).
    Their difference is the constant 3*hbar^2/(8M). Positive for every (n, m)
    at alpha = pi/4 in either variant.
    """
    alpha = _check_alpha(alpha)
    n = _levels(n)
    m = _levels(m)
    pref = math.pi**2 * k.hbar**2 / (2.0 * k.mass)
    chambers = pref * (n * n / alpha**2 + m * m / (TWO_PI - alpha) ** 2)
    if variant == "nominal":
        out = chambers - pref / (4.0 * math.pi**2)
    elif variant == "conserving":
        out = chambers - k.hbar**2 / (2.0 * k.mass)
    else:
        raise ValueError(f"variant must be one of {DELTA_E_VARIANTS}, got {variant!r}")
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class EnergyTransfer:
    """Both variants of the (n, m) energy transfer."""

    n: int
    m: int
    nominal: float
    conserving: float


def energy_transfer(n: int, m: int, alpha: float,
                    k: PhysicalConstants = DEFAULT_CONSTANTS) -> EnergyTransfer:
    return EnergyTransfer(
        n=int(n), m=int(m),
        nominal=delta_energy(n, m, alpha, k, "nominal"),
        conserving=delta_energy(n, m, alpha, k, "conserving"),
    )


@dataclass(frozen=True)
class TransitionProbability:
    """Probability of landing on the chamber-mode pair (n, m).

    ``nominal`` is the square of the 1/pi-weighted coefficient product; these
    values do not sum to 1 over (n, m) because the bare chamber sines are not
    unit vectors. ``normalized`` uses the orthonormal-mode projections with
    the truncated product state renormalized, so the values sum to 1.
    """

    nominal: float
    normalized: float


def transition_probability(expansion: ChamberExpansion, n: int, m: int) -> TransitionProbability:
    if not (1 <= n <= expansion.n_trunc and 1 <= m <= expansion.n_trunc):
        raise IndexError(
            f"(n, m)=({n}, {m}) outside truncation 1..{expansion.n_trunc}")
    c1 = expansion.coeffs_1[n - 1]
    c2 = expansion.coeffs_2[m - 1]
    a = expansion.norm_coeffs_1
    b = expansion.norm_coeffs_2
    joint = (a[n - 1] * b[m - 1]) ** 2 / float((a @ a) * (b @ b))
    return TransitionProbability(nominal=float((c1 * c2) ** 2), normalized=float(joint))


def nominal_transition_total(expansion: ChamberExpansion) -> float:
    """Sum of the nominal transition probabilities over all (n, m) <= n_trunc.

    Not equal to 1 (the flag on the nominal convention); the normalized
    convention sums to 1 by construction.
    """
    c1 = expansion.coeffs_1
    c2 = expansion.coeffs_2
    return float((c1 @ c1) * (c2 @ c2))


@dataclass(frozen=True)
class CoeffDiscrepancy:
    """One sign correction made by the quadrature oracle."""

    kind: str
    n: int
    alpha: float
    uncorrected: float
    oracle: float
    adopted: float


def sign_discrepancies(alpha: float, n_max: int, *, kinds=COEFF_KINDS,
                       tol: float = 1e-10) -> list[CoeffDiscrepancy]:
    """Compare uncorrected closed forms against the oracle for every kind and n.

    Returns one record per (kind, n) where the uncorrected form disagrees with
    the oracle beyond tol; with the adopted forms the only offender is kind d,
    whose sign flips for every n.
    """
    records = []
    for kind in kinds:
        if kind not in COEFF_KINDS:
            raise ValueError(f"unknown coefficient kind {kind!r}")
        for n in range(1, n_max + 1):
            oracle = oracle_coefficient(kind, n, alpha)
            raw = uncorrected_coefficient(kind, n, alpha)
            if abs(raw - oracle) > tol:
                records.append(CoeffDiscrepancy(
                    kind=kind, n=n, alpha=float(alpha),
                    uncorrected=raw, oracle=oracle,
                    adopted=coefficient(kind, n, alpha),
                ))
    return records
