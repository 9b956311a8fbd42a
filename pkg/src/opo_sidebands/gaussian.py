"""Covariance-matrix toolbox for Gaussian states in shot-noise units.

Conventions: quadratures p = a + a*, q = -i(a - a*), interleaved per mode as
(p1, q1, p2, q2, ...); the vacuum covariance is the identity and
[X, X^T] = 2iW with W the block-diagonal symplectic form.  A symmetric V is a
physical state iff all symplectic eigenvalues are >= 1.

Operations validate their inputs (symmetry to 1e-12) and raise rather than
silently symmetrizing; matrices constructed here are symmetrized explicitly.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from .errors import SpectrumPairingError
from .modes import Bipartition

SYMMETRY_TOL = 1e-12
PAIRING_RTOL = 1e-8

_W_BLOCK = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_modes: int) -> NDArray[np.float64]:
    """Block-diagonal symplectic form W = diag([[0, 1], [-1, 0]], ...)."""
    if n_modes < 1:
        raise ValueError("n_modes must be positive")
    return np.kron(np.eye(n_modes), _W_BLOCK)


def vacuum(n_modes: int) -> NDArray[np.float64]:
    """Vacuum covariance: the 2n x 2n identity."""
    if n_modes < 1:
        raise ValueError("n_modes must be positive")
    return np.eye(2 * n_modes)


def _require_covariance(v) -> NDArray[np.float64]:
    v = np.asarray(v, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2:
        raise ValueError(f"covariance must be square with even dimension, got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("covariance contains non-finite entries")
    if np.max(np.abs(v - v.T)) > SYMMETRY_TOL * max(1.0, np.max(np.abs(v))):
        raise ValueError("covariance is not symmetric within 1e-12")
    return v


def _mode_slice(k: int) -> slice:
    return slice(2 * k, 2 * k + 2)


def _check_modes(modes, n_modes: int) -> None:
    for m in modes:
        if not 0 <= m < n_modes:
            raise ValueError(f"mode index {m} out of range for {n_modes} modes")


def symplectic_eigenvalues(v) -> NDArray[np.float64]:
    """Symplectic spectrum of a covariance matrix, ascending.

    Computed as the square roots of the ordinary eigenvalues of -(WV)^2,
    which occur in degenerate pairs; pairs disagreeing beyond a relative
    1e-8 raise :class:`SpectrumPairingError`.
    """
    v = _require_covariance(v)
    n = v.shape[0] // 2
    wv = symplectic_form(n) @ v
    ev = np.linalg.eigvals(-wv @ wv)
    scale = max(1.0, float(np.max(np.abs(ev))))
    if np.max(np.abs(ev.imag)) > PAIRING_RTOL * scale:
        raise SpectrumPairingError(
            f"eigenvalues of -(WV)^2 are not real (max imag {np.max(np.abs(ev.imag)):.3e})"
        )
    ev = np.sort(ev.real)
    first, second = ev[0::2], ev[1::2]
    mismatch = np.abs(first - second) / np.maximum.reduce(
        [np.abs(first), np.abs(second), np.ones(n)]
    )
    if np.max(mismatch) > PAIRING_RTOL:
        raise SpectrumPairingError(
            f"eigenvalue pairs differ by relative {np.max(mismatch):.3e} (> 1e-8)"
        )
    return np.sqrt(np.clip((first + second) / 2.0, 0.0, None))


def is_physical(v, tol: float = 1e-9) -> bool:
    """True iff the minimum symplectic eigenvalue is >= 1 - tol."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    v = _require_covariance(v)
    if np.min(np.linalg.eigvalsh(v)) <= 0:
        return False
    return float(np.min(symplectic_eigenvalues(v))) >= 1.0 - tol


def partial_transpose(v, modes) -> NDArray[np.float64]:
    """Flip the q quadrature of each listed mode: V -> L V L."""
    v = _require_covariance(v)
    n = v.shape[0] // 2
    modes = sorted(set(modes))
    _check_modes(modes, n)
    signs = np.ones(2 * n)
    for m in modes:
        signs[2 * m + 1] = -1.0
    return v * np.outer(signs, signs)


def pt_witness(v, bipartition: Bipartition, physical_tol: float = 1e-6) -> float:
    """Minimum symplectic eigenvalue after partially transposing one side.

    A value below 1 certifies entanglement across the bipartition.  The input
    must be a physical state within ``physical_tol``; the result is the same
    whichever side is transposed.
    """
    v = _require_covariance(v)
    n = v.shape[0] // 2
    if bipartition.n_modes != n:
        raise ValueError(
            f"bipartition covers {bipartition.n_modes} modes but state has {n}"
        )
    if not is_physical(v, tol=physical_tol):
        raise ValueError("pt_witness requires a physical state")
    return float(np.min(symplectic_eigenvalues(partial_transpose(v, bipartition.side_a))))


def log_negativity(nu_min: float) -> float:
    """E_N = max(0, -ln nu_min) from the minimum PT symplectic eigenvalue."""
    if nu_min <= 0:
        raise ValueError("nu_min must be positive")
    return max(0.0, -float(np.log(nu_min)))


def purity(v) -> float:
    """Purity of a Gaussian state, 1/sqrt(det V)."""
    v = _require_covariance(v)
    sign, logdet = np.linalg.slogdet(v)
    if sign <= 0:
        raise ValueError("covariance must be positive definite")
    return float(np.exp(-0.5 * logdet))


def apply_symplectic(v, s) -> NDArray[np.float64]:
    """Congruence transform S V S^T."""
    v = _require_covariance(v)
    s = np.asarray(s, dtype=float)
    if s.shape != v.shape:
        raise ValueError(f"symplectic shape {s.shape} does not match state {v.shape}")
    out = s @ v @ s.T
    return (out + out.T) / 2.0


def two_mode_squeeze_symplectic(r: float, modes, n_modes: int) -> NDArray[np.float64]:
    """Two-mode squeezer on the given mode pair.

    Acting on vacuum it produces EPR correlations with
    var(p_i - p_j)/2 = var(q_i + q_j)/2 = exp(-2r).
    """
    i, j = modes
    if i == j:
        raise ValueError("two-mode squeezing needs two distinct modes")
    _check_modes((i, j), n_modes)
    c, sh = np.cosh(r), np.sinh(r)
    s = np.eye(2 * n_modes)
    s[_mode_slice(i), _mode_slice(i)] = np.diag([c, c])
    s[_mode_slice(j), _mode_slice(j)] = np.diag([c, c])
    s[_mode_slice(i), _mode_slice(j)] = np.diag([sh, -sh])
    s[_mode_slice(j), _mode_slice(i)] = np.diag([sh, -sh])
    return s


def beam_splitter_symplectic(theta: float, modes, n_modes: int) -> NDArray[np.float64]:
    """Beam splitter of mixing angle theta (transmission cos^2 theta).

    theta = pi/2 swaps the two modes up to a sign on one arm.
    """
    i, j = modes
    if i == j:
        raise ValueError("beam splitter needs two distinct modes")
    _check_modes((i, j), n_modes)
    c, sn = np.cos(theta), np.sin(theta)
    s = np.eye(2 * n_modes)
    s[_mode_slice(i), _mode_slice(i)] = c * np.eye(2)
    s[_mode_slice(j), _mode_slice(j)] = c * np.eye(2)
    s[_mode_slice(i), _mode_slice(j)] = sn * np.eye(2)
    s[_mode_slice(j), _mode_slice(i)] = -sn * np.eye(2)
    return s


def phase_rotation_symplectic(theta: float, mode: int, n_modes: int) -> NDArray[np.float64]:
    """Phase-space rotation a -> exp(i theta) a on one mode."""
    _check_modes((mode,), n_modes)
    c, sn = np.cos(theta), np.sin(theta)
    s = np.eye(2 * n_modes)
    s[_mode_slice(mode), _mode_slice(mode)] = np.array([[c, -sn], [sn, c]])
    return s


def attenuation_channel(v, mode: int, eta: float, n_th: float = 0.0) -> NDArray[np.float64]:
    """Lossy channel on one mode: V -> X V X^T + (1 - eta)(2 n_th + 1) I.

    eta is the power transmission; n_th the thermal occupation of the
    environment mode mixed in.
    """
    v = _require_covariance(v)
    n = v.shape[0] // 2
    _check_modes((mode,), n)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmission eta must lie in [0, 1], got {eta}")
    if n_th < 0:
        raise ValueError("n_th must be non-negative")
    root = np.sqrt(eta)
    out = v.copy()
    sl = _mode_slice(mode)
    out[sl, :] *= root
    out[:, sl] *= root
    out[sl, sl] += (1.0 - eta) * (2.0 * n_th + 1.0) * np.eye(2)
    return (out + out.T) / 2.0


def marginal(v, modes) -> NDArray[np.float64]:
    """Reduced covariance of the listed modes, in the listed order's sorted form."""
    v = _require_covariance(v)
    n = v.shape[0] // 2
    modes = sorted(set(modes))
    if not modes:
        raise ValueError("marginal needs at least one mode")
    _check_modes(modes, n)
    idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
    return v[np.ix_(idx, idx)]
