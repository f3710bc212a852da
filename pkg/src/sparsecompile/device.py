"""Double-quantum-dot spin-pair spectrum and Landau-Zener shuttle timing.

Energies are ordinary frequencies in Hz throughout (E/h).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NumericError",
    "SpinPairParams",
    "SpectrumPoint",
    "ShuttleEstimate",
    "BOHR_MAGNETON_HZ_PER_T",
    "zeeman_energies",
    "hamiltonian",
    "jacobi_eigenvalues",
    "coupled_block_eigenvalues",
    "spectrum",
    "lz_probability",
    "sweep_rate_for",
    "shuttle_time",
]

# mu_B / h, CODATA 2018
BOHR_MAGNETON_HZ_PER_T = 1.39962449361e10


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpinPairParams:
    t_s: float
    Z_av: float
    Z_d: float
    epsilon: float

    def __post_init__(self) -> None:
        values = (self.t_s, self.Z_av, self.Z_d, self.epsilon)
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"parameters must be finite: {values}")
        if self.t_s < 0:
            raise ValueError(f"tunnel coupling must be non-negative, got {self.t_s}")


@dataclass(frozen=True)
class SpectrumPoint:
    epsilon_over_ts: float
    eigenvalues: tuple[float, ...]


@dataclass(frozen=True)
class ShuttleEstimate:
    v: float
    t_sh: float
    T_sh: float
    steps: int

    def format(self) -> str:
        return f"v={self.v:.15g}\nt_sh={self.t_sh:.15g}\nT_sh={self.T_sh:.15g}\nsteps={self.steps}\n"


def zeeman_energies(g1: float, g2: float, field_tesla: float) -> tuple[float, float]:
    """(average Zeeman energy, Zeeman difference) in Hz for g-factors g1, g2."""
    z_av = (g1 + g2) * BOHR_MAGNETON_HZ_PER_T * field_tesla / 2
    z_d = (g1 - g2) * BOHR_MAGNETON_HZ_PER_T * field_tesla
    return z_av, z_d


def hamiltonian(params: SpinPairParams) -> np.ndarray:
    """5x5 Hamiltonian in the basis |uu>, |du>, |ud>, |dd>, |S(20)>."""
    eps, t = params.epsilon, params.t_s
    h = np.diag([
        eps / 2 + params.Z_av,
        eps / 2 + params.Z_d / 2,
        eps / 2 - params.Z_d / 2,
        eps / 2 - params.Z_av,
        -eps / 2,
    ]).astype(float)
    h[1, 4] = h[4, 1] = t
    h[2, 4] = h[4, 2] = -t
    return h


def jacobi_eigenvalues(matrix: np.ndarray, rel_tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Ascending eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, rtol=0, atol=0):
        raise ValueError("matrix must be square and exactly symmetric")
    threshold = rel_tol * max(np.linalg.norm(a), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = math.sqrt(2 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= threshold:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a[p, q] = a[q, p] = 0.0
    raise NumericError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def coupled_block_eigenvalues(matrix: np.ndarray) -> list[float]:
    """Roots of the characteristic polynomial of the |du>,|ud>,|S(20)> block.

    Independent check on the eigensolver: cofactor expansion for the
    coefficients, trigonometric cubic formula, then Newton polishing.
    """
    b = np.asarray(matrix, dtype=float)[np.ix_([1, 2, 4], [1, 2, 4])]
    trace = b[0, 0] + b[1, 1] + b[2, 2]
    minors = (
        b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
        + b[0, 0] * b[2, 2] - b[0, 2] * b[2, 0]
        + b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1]
    )
    det = (
        b[0, 0] * (b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1])
        - b[0, 1] * (b[1, 0] * b[2, 2] - b[1, 2] * b[2, 0])
        + b[0, 2] * (b[1, 0] * b[2, 1] - b[1, 1] * b[2, 0])
    )

    def poly(x: float) -> float:
        return ((x - trace) * x + minors) * x - det

    def dpoly(x: float) -> float:
        return (3 * x - 2 * trace) * x + minors

    # depressed cubic x = y + trace/3: y^3 + p y + q = 0
    shift = trace / 3
    p = minors - trace * trace / 3
    q = -2 * trace**3 / 27 + trace * minors / 3 - det
    if p >= 0:
        roots = [shift] * 3
    else:
        r = 2 * math.sqrt(-p / 3)
        arg = max(-1.0, min(1.0, 3 * q / (p * r)))
        phi = math.acos(arg) / 3
        roots = [shift + r * math.cos(phi - 2 * math.pi * k / 3) for k in range(3)]
    polished = []
    for x in roots:
        for _ in range(50):
            d = dpoly(x)
            if d == 0:
                break
            step = poly(x) / d
            x -= step
            if abs(step) <= 1e-16 * max(1.0, abs(x)):
                break
        polished.append(x)
    return sorted(polished)


def spectrum(
    t_s: float,
    Z_av: float | None = None,
    Z_d: float | None = None,
    epsilon_range: tuple[float, float] = (-10.0, 10.0),
    n_points: int = 1000,
) -> list[SpectrumPoint]:
    """Eigenvalues in units of ``t_s`` over detuning samples ``eps/t_s``.

    Defaults: ``Z_av = 3 t_s`` and a 5% Zeeman difference, ``Z_d = 0.05 Z_av``.
    """
    if not t_s > 0:
        raise ValueError(f"t_s must be positive, got {t_s}")
    if n_points < 2:
        raise ValueError("need at least 2 detuning samples")
    if Z_av is None:
        Z_av = 3 * t_s
    if Z_d is None:
        Z_d = 0.05 * Z_av
    points = []
    for x in np.linspace(epsilon_range[0], epsilon_range[1], n_points):
        h = hamiltonian(SpinPairParams(t_s, Z_av, Z_d, float(x) * t_s))
        values = jacobi_eigenvalues(h / t_s)
        points.append(SpectrumPoint(float(x), tuple(float(v) for v in values)))
    return points


def lz_probability(t_s: float, v: float) -> float:
    """Landau-Zener transition probability exp(-pi (2 t_s)^2 / (2 v))."""
    if not (t_s > 0 and v > 0):
        raise ValueError("t_s and v must be positive")
    return math.exp(-math.pi * (2 * t_s) ** 2 / (2 * v))


def sweep_rate_for(t_s: float, p_target: float) -> float:
    """Sweep rate (Hz/s) at which the transition probability equals ``p_target``."""
    if not 0 < p_target < 1:
        raise ValueError(f"target probability must lie in (0, 1), got {p_target}")
    if not t_s > 0:
        raise ValueError("t_s must be positive")
    return math.pi * (2 * t_s) ** 2 / (2 * math.log(1 / p_target))


def shuttle_time(
    t_s: float, p_target: float, amplitude_factor: float = 4.0, steps: int = 6
) -> ShuttleEstimate:
    """Shortest shuttle step whose detuning sweep of ``amplitude_factor * 2 t_s``
    keeps the Landau-Zener probability at ``p_target``."""
    if steps < 1:
        raise ValueError("steps must be positive")
    v = sweep_rate_for(t_s, p_target)
    t_sh = amplitude_factor * (2 * t_s) / v
    return ShuttleEstimate(v=v, t_sh=t_sh, T_sh=steps * t_sh, steps=steps)
