"""Independent brute-force references for the formula paths.

Three oracle families live here: RK4 trajectory integration for classical
periods, ladder-basis diagonalization for quantum spectra, and closed-form
perturbation theory.  None of them share code with the residue-based
calculations they validate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .core import (
    BasisNotConverged,
    EigensolverStalled,
    EnergyDriftExceeded,
    NoClassicalRegion,
    NonPositiveEnergy,
    NoPeriodFound,
    OscillatorParams,
    ParameterOutOfRange,
    SchemeTag,
    SpectrumEntry,
    UnknownForm,
)
from .rootfind import bracketed_root, expand_bracket

__all__ = [
    "HamiltonianKind",
    "HamiltonianSpec",
    "OracleReport",
    "rk4_period",
    "diagonalize",
    "jacobi_eigenvalues",
    "ladder_matrix",
    "rs_shift_p4",
    "p4_expectation",
    "jwkb_levels_wr",
    "compare",
]


class HamiltonianKind(Enum):
    SHO = "sho"
    WEAK_REL = "weak-rel"
    FULL_REL = "full-rel"
    QUARTIC_AHO = "quartic-aho"


@dataclass(frozen=True)
class HamiltonianSpec:
    """A concrete Hamiltonian the oracles can integrate or diagonalize.

    kind selects the kinetic/potential content:
      SHO         H = p^2/2m + k x^2/2
      WEAK_REL    H = p^2/2m - p^4/8m^3c^2 + k x^2/2
      FULL_REL    H = sqrt(p^2 c^2 + m^2 c^4) + k x^2/2   (energy above rest)
      QUARTIC_AHO H = p^2/2m + k x^2/2 + delta x^4
    delta is meaningful only for QUARTIC_AHO.
    """

    kind: HamiltonianKind
    params: OscillatorParams
    delta: float = 0.0

    def __post_init__(self) -> None:
        if self.delta != 0.0 and self.kind is not HamiltonianKind.QUARTIC_AHO:
            raise ParameterOutOfRange("delta is only meaningful for the quartic oscillator")

    def potential(self, x: float) -> float:
        v = 0.5 * self.params.k * x * x
        if self.kind is HamiltonianKind.QUARTIC_AHO:
            v += self.delta * x**4
        return v

    def energy(self, x: float, p: float) -> float:
        """Mechanical energy above rest at the phase-space point (x, p)."""
        m, c = self.params.m, self.params.c
        if self.kind is HamiltonianKind.FULL_REL:
            # sqrt(p^2 c^2 + m^2 c^4) - m c^2 without cancellation
            pc2 = (p * c) ** 2
            kinetic = pc2 / (math.sqrt(pc2 + (m * c * c) ** 2) + m * c * c)
        elif self.kind is HamiltonianKind.WEAK_REL:
            kinetic = p * p / (2 * m) - p**4 / (8 * m**3 * c * c)
        else:
            kinetic = p * p / (2 * m)
        return kinetic + self.potential(x)

    def dx_dt(self, x: float, p: float) -> float:
        m, c = self.params.m, self.params.c
        if self.kind is HamiltonianKind.FULL_REL:
            return p * c * c / math.sqrt(p * p * c * c + (m * c * c) ** 2)
        if self.kind is HamiltonianKind.WEAK_REL:
            return p / m - p**3 / (2 * m**3 * c * c)
        return p / m

    def dp_dt(self, x: float, p: float) -> float:
        f = -self.params.k * x
        if self.kind is HamiltonianKind.QUARTIC_AHO:
            f -= 4 * self.delta * x**3
        return f

    def turning_point(self, e_tilde: float) -> float:
        """Positive turning point x2 with V(x2) = e_tilde."""
        if e_tilde <= 0:
            raise NonPositiveEnergy(f"e_tilde must be > 0, got {e_tilde}")
        k = self.params.k
        if self.kind is HamiltonianKind.QUARTIC_AHO:
            disc = k * k / 4 + 4 * self.delta * e_tilde
            if disc < 0:
                raise NoClassicalRegion(
                    f"no turning point: delta = {self.delta} turns the potential over "
                    f"below e_tilde = {e_tilde}"
                )
            # root continuous in delta -> 0, written cancellation-free
            x2sq = 2 * e_tilde / (k / 2 + math.sqrt(disc))
            return math.sqrt(x2sq)
        return math.sqrt(2 * e_tilde / k)

    def momentum(self, x: float, e_tilde: float) -> float:
        """Classical momentum magnitude at x on the orbit of energy e_tilde."""
        m, c = self.params.m, self.params.c
        w = e_tilde - self.potential(x)
        if w < 0:
            if w > -1e-12 * max(e_tilde, 1.0):
                w = 0.0
            else:
                raise NoClassicalRegion(f"x = {x} is outside the orbit at e_tilde = {e_tilde}")
        if self.kind is HamiltonianKind.FULL_REL:
            return math.sqrt(w * (w + 2 * m * c * c)) / c
        if self.kind is HamiltonianKind.WEAK_REL:
            # smaller root of p^4 - 4m^2c^2 p^2 + 8m^3c^2 w = 0
            q = 1.0 - 2 * w / (m * c * c)
            if q < 0:
                raise NoClassicalRegion(
                    f"weak-relativistic momentum undefined: e - V = {w} exceeds m c^2 / 2"
                )
            return math.sqrt(4 * m * w / (1 + math.sqrt(q)))
        return math.sqrt(2 * m * w)


@dataclass(frozen=True)
class OracleReport:
    """Side-by-side formula-vs-oracle comparison record."""

    formula_value: float
    oracle_value: float
    abs_diff: float
    rel_diff: float
    tolerance_used: float
    scheme: SchemeTag
    converged: bool

    @property
    def within_tolerance(self) -> bool:
        return self.abs_diff <= self.tolerance_used or self.rel_diff <= self.tolerance_used


# -- trajectory oracle --------------------------------------------------------


def _rk4_step(spec: HamiltonianSpec, x: float, p: float, dt: float) -> tuple[float, float]:
    k1x, k1p = spec.dx_dt(x, p), spec.dp_dt(x, p)
    k2x = spec.dx_dt(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)
    k2p = spec.dp_dt(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)
    k3x = spec.dx_dt(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)
    k3p = spec.dp_dt(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)
    k4x = spec.dx_dt(x + dt * k3x, p + dt * k3p)
    k4p = spec.dp_dt(x + dt * k3x, p + dt * k3p)
    return (
        x + dt * (k1x + 2 * k2x + 2 * k3x + k4x) / 6,
        p + dt * (k1p + 2 * k2p + 2 * k3p + k4p) / 6,
    )


def _hermite_crossing(
    t0: float, dt: float, p0: float, p1: float, d0: float, d1: float
) -> float:
    """Zero of the cubic Hermite interpolant of p on [t0, t0+dt].

    Assumes p0 < 0 <= p1 (an up-crossing somewhere inside the step).
    """

    def h(s: float) -> float:
        s2, s3 = s * s, s * s * s
        return (
            (2 * s3 - 3 * s2 + 1) * p0
            + (s3 - 2 * s2 + s) * dt * d0
            + (-2 * s3 + 3 * s2) * p1
            + (s3 - s2) * dt * d1
        )

    a, b = 0.0, 1.0
    for _ in range(80):
        mid = 0.5 * (a + b)
        if h(mid) < 0:
            a = mid
        else:
            b = mid
    return t0 + 0.5 * (a + b) * dt


def rk4_period(
    spec: HamiltonianSpec,
    e_tilde: float,
    dt: float | None = None,
    refine_tol: float = 1e-12,
) -> float:
    """Orbital period by direct integration of Hamilton's equations.

    Starts at the turning point (x2, 0); the period is the gap between the
    first two zero-up-crossings of p(t), each refined by inverse cubic
    Hermite interpolation.  Runs with relative energy drift above 1e-9 are
    rejected and retried with a halved step, up to 6 times.
    """
    t0_guess = 2 * math.pi / spec.params.omega0
    if dt is None:
        dt = t0_guess / 2000.0
    x2 = spec.turning_point(e_tilde)

    for _attempt in range(7):
        crossings: list[float] = []
        x, p = x2, 0.0
        t = 0.0
        t_max = 8.0 * t0_guess
        d_prev = spec.dp_dt(x, p)
        while t < t_max and len(crossings) < 2:
            xn, pn = _rk4_step(spec, x, p, dt)
            tn = t + dt
            d_next = spec.dp_dt(xn, pn)
            if p < 0.0 <= pn:
                crossings.append(_hermite_crossing(t, dt, p, pn, d_prev, d_next))
            x, p, t, d_prev = xn, pn, tn, d_next
        if len(crossings) < 2:
            raise NoPeriodFound(
                f"fewer than two momentum up-crossings within t = {t_max:.4g}"
            )
        drift = abs(spec.energy(x, p) - e_tilde) / e_tilde
        if drift <= 1e-9:
            period = crossings[1] - crossings[0]
            return period
        dt *= 0.5
    raise EnergyDriftExceeded(
        f"relative energy drift {drift:.3g} > 1e-9 even after 6 step halvings"
    )


# -- spectral oracle ----------------------------------------------------------


def ladder_matrix(n: int) -> np.ndarray:
    """Lowering-operator matrix a with a[i, i+1] = sqrt(i+1)."""
    a = np.zeros((n, n))
    idx = np.arange(n - 1)
    a[idx, idx + 1] = np.sqrt(idx + 1.0)
    return a


def _hamiltonian_matrix(spec: HamiltonianSpec, n: int) -> np.ndarray:
    params = spec.params
    m, k, c, hbar, w0 = params.m, params.k, params.c, params.hbar, params.omega0
    a = ladder_matrix(n)
    ad = a.T
    num = ad @ a + a @ ad
    sq = a @ a + ad @ ad
    x2 = (hbar / (2 * m * w0)) * (num + sq)
    p2 = (m * hbar * w0 / 2) * (num - sq)
    h = p2 / (2 * m) + 0.5 * k * x2
    if spec.kind is HamiltonianKind.WEAK_REL:
        h = h - (p2 @ p2) / (8 * m**3 * c * c)
    elif spec.kind is HamiltonianKind.QUARTIC_AHO:
        h = h + spec.delta * (x2 @ x2)
    elif spec.kind is HamiltonianKind.FULL_REL:
        raise UnknownForm(
            "the square-root kinetic operator has no finite ladder-band representation"
        )
    return h


def jacobi_eigenvalues(
    mat: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60
) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by threshold cyclic Jacobi.

    Sweeps rotate away each off-diagonal pair in turn until the
    off-diagonal Frobenius norm drops below tol times the diagonal scale.
    """
    a = np.array(mat, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy()
    scale = max(1.0, float(np.abs(np.diag(a)).max()))
    target = tol * scale
    skip = target / n
    for _sweep in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= target:
            return np.sort(np.diag(a).copy())
        for p in range(n - 1):
            row = a[p, p + 1 :]
            hot = np.nonzero(np.abs(row) > skip)[0]
            for q0 in hot:
                q = p + 1 + int(q0)
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                cth = 1.0 / math.sqrt(t * t + 1.0)
                sth = t * cth
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = cth * rp - sth * rq
                a[q, :] = sth * rp + cth * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = cth * cp - sth * cq
                a[:, q] = sth * cp + cth * cq
                a[p, q] = a[q, p] = 0.0
    raise EigensolverStalled(
        f"off-diagonal norm {off:.3g} still above {target:.3g} after {max_sweeps} sweeps"
    )


def diagonalize(
    spec: HamiltonianSpec,
    basis_size: int,
    n_levels: int | None = None,
    certify: bool = True,
    max_basis: int = 1024,
) -> np.ndarray:
    """Lowest eigenvalues of spec in the harmonic-oscillator eigenbasis.

    Convergence is certified by doubling the basis until the requested
    levels move by less than 1e-10 relative; the certified values are
    returned.
    """
    if n_levels is None:
        n_levels = max(1, basis_size // 4)
    if basis_size < 4 * n_levels:
        raise ParameterOutOfRange(
            f"basis_size = {basis_size} < 4 * n_levels = {4 * n_levels}"
        )
    vals = jacobi_eigenvalues(_hamiltonian_matrix(spec, basis_size))[:n_levels]
    if not certify:
        return vals
    size = basis_size
    while size < max_basis:
        size *= 2
        bigger = jacobi_eigenvalues(_hamiltonian_matrix(spec, size))[:n_levels]
        move = np.max(np.abs(bigger - vals) / np.maximum(np.abs(bigger), 1e-300))
        vals = bigger
        if move < 1e-10:
            return vals
    raise BasisNotConverged(
        f"eigenvalues still moving by {move:.3g} relative at basis {size}"
    )


# -- perturbation-theory oracles ----------------------------------------------


def p4_expectation(params: OscillatorParams, n: int) -> float:
    """<n| p^4 |n> from ladder algebra: 3 (m hbar omega0 / 2)^2 (2n^2+2n+1)."""
    size = n + 3
    a = ladder_matrix(size)
    ad = a.T
    p2 = (params.m * params.hbar * params.omega0 / 2) * (ad @ a + a @ ad - a @ a - ad @ ad)
    p4 = p2 @ p2
    return float(p4[n, n])


def rs_shift_p4(params: OscillatorParams, n: int) -> float:
    """First-order level shift of the p^4 perturbation.

    Closed form -(3/16) hbar omega0 [(n+1/2)^2 + 1/4] (hbar omega0 / m c^2),
    cross-checked here against the direct ladder-algebra expectation value
    -<n|p^4|n> / 8 m^3 c^2.
    """
    if n < 0:
        raise ParameterOutOfRange(f"n must be >= 0, got {n}")
    hw = params.hbar * params.omega0
    r = params.level_ratio
    closed = -(3.0 / 16.0) * hw * ((n + 0.5) ** 2 + 0.25) * r
    ladder = -p4_expectation(params, n) / (8 * params.m**3 * params.c**2)
    if closed != 0.0 and abs(ladder - closed) > 1e-12 * abs(closed):
        raise AssertionError(
            f"ladder path {ladder!r} disagrees with closed form {closed!r} at n = {n}"
        )
    return closed


def jwkb_levels_wr(params: OscillatorParams, n: int) -> SpectrumEntry:
    """Semiclassical level from discretizing the weak-relativistic action.

    Solves (e/omega0) [1 + 3 eps / 16] = (n + 1/2) hbar for e, where
    eps = e / m c^2.
    """
    if n < 0:
        raise ParameterOutOfRange(f"n must be >= 0, got {n}")
    hbar, w0 = params.hbar, params.omega0
    mc2 = params.rest_energy
    target = (n + 0.5) * hbar

    def f(e: float) -> float:
        return (e / w0) * (1.0 + 3.0 * e / (16.0 * mc2)) - target

    e0 = (n + 0.5) * hbar * w0
    lo, hi = expand_bracket(f, 0.5 * e0, 1.5 * e0)
    energy = bracketed_root(f, lo, hi, f_tol=1e-14 * max(target, 1.0))
    return SpectrumEntry(
        n=n, energy=energy, scheme=SchemeTag.JWKB_WR, correction=energy - e0
    )


def compare(
    formula: Callable[..., float],
    oracle: Callable[..., float],
    inputs: tuple = (),
    tolerance: float = 1e-9,
    scheme: SchemeTag = SchemeTag.CLASSICAL_SHO,
) -> OracleReport:
    """Evaluate both callables on inputs and report the discrepancy.

    Mismatch is reported, never raised; only internal convergence failures
    of either callable propagate.
    """
    fv = float(formula(*inputs))
    ov = float(oracle(*inputs))
    abs_diff = abs(fv - ov)
    denom = max(abs(fv), abs(ov))
    rel_diff = abs_diff / denom if denom > 0 else 0.0
    return OracleReport(
        formula_value=fv,
        oracle_value=ov,
        abs_diff=abs_diff,
        rel_diff=rel_diff,
        tolerance_used=tolerance,
        scheme=scheme,
        converged=True,
    )
