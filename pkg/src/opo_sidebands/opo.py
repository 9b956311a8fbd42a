"""Triply resonant OPO model for the six sideband modes at one analysis frequency.

Frames and units
----------------
Each sideband mode is taken at a fixed offset of +/- Omega (the analysis
frequency, in rad/s internally) from its carrier, and is written in a frame
rotating at its own frequency.  All couplings of the quadratic Hamiltonian are
then time independent and the cavity response enters as each mode's complex
Lorentzian at its detuning from the cavity resonance.  Rates are amplitude
decay rates in 1/s: a mirror of power transmittance T on a cavity of free
spectral range FSR gives gamma = T * FSR / 2, and the finesse derived from the
total round-trip loss is 2 pi / (T + L).

The classical pump drive is parameterized by sigma, the pump power in units of
the oscillation threshold.  Above threshold the intracavity pump clamps at its
threshold value and the downconverted fields grow as sqrt(sqrt(sigma) - 1).

Covariances are in shot-noise units (see :mod:`.gaussian`) and ordered as
(0l, 0u, 1l, 1u, 2l, 2u) x (p, q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray
from scipy import constants

from . import gaussian
from .errors import SingularResponseError, UnstableOperatingPointError
from .modes import Carrier, N_SIDEBANDS

TWO_PI = 2.0 * math.pi

# Spurious (non-mirror) round-trip losses chosen so that the derived finesses
# match the measured 15 (pump) and 125 (signal/idler).
DEFAULT_PUMP_SPURIOUS = TWO_PI / 15.0 - 0.30
DEFAULT_IR_SPURIOUS = TWO_PI / 125.0 - 0.04

STABILITY_RTOL = 1e-8


def thermal_occupation(frequency_hz: float, temperature_k: float) -> float:
    """Bose-Einstein occupation of a mode at the given frequency and temperature."""
    if frequency_hz <= 0:
        raise ValueError("frequency must be positive")
    if temperature_k < 0:
        raise ValueError("temperature must be non-negative")
    if temperature_k == 0:
        return 0.0
    x = constants.h * frequency_hz / (constants.k * temperature_k)
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class PhononMode:
    """One acoustic mode of the crystal coupled to the intracavity carriers.

    ``couplings`` holds the scattering rate per unit carrier amplitude for
    (pump, signal, idler); the effective coupling is g * |alpha_n|.  The upper
    sideband of a carrier exchanges quanta with the phonon (beam-splitter
    form) while the lower sideband is created jointly with a phonon
    (two-mode-squeezer form), so both sidebands see correlated noise from the
    same reservoir.
    """

    couplings: tuple[float, float, float]
    frequency_hz: float = 21.0e6
    damping_rate: float = TWO_PI * 1.0e6
    temperature_k: float = 260.0

    def __post_init__(self):
        if len(self.couplings) != 3:
            raise ValueError("couplings must give one rate per carrier")
        if any(g < 0 for g in self.couplings):
            raise ValueError("phonon couplings must be non-negative")
        if self.frequency_hz <= 0:
            raise ValueError("phonon frequency_hz must be positive")
        if self.damping_rate <= 0:
            raise ValueError("phonon damping_rate must be positive")
        if self.temperature_k < 0:
            raise ValueError("temperature_k must be non-negative")

    @property
    def occupation(self) -> float:
        return thermal_occupation(self.frequency_hz, self.temperature_k)


DEFAULT_PHONON_COUPLING = 0.35


def default_phonon_modes(
    coupling: float = DEFAULT_PHONON_COUPLING,
    frequency_hz: float = 21.0e6,
    damping_rate: float = TWO_PI * 1.0e6,
    temperature_k: float = 260.0,
) -> tuple[PhononMode, ...]:
    """One phonon mode per carrier, resonant with the analysis frequency."""
    modes = []
    for c in range(3):
        g = [0.0, 0.0, 0.0]
        g[c] = coupling
        modes.append(
            PhononMode(tuple(g), frequency_hz, damping_rate, temperature_k)
        )
    return tuple(modes)


@dataclass(frozen=True)
class OpoParams:
    """Operating point and cavity parameters.

    Detunings are carrier offsets from the cavity resonances in units of the
    respective half linewidth gamma_n (positive means the carrier sits above
    the cavity resonance).  Detection efficiencies and phases only enter
    through :func:`apply_detection`.
    """

    sigma: float = 1.5
    coupling_rate: float = 1.0e4
    pump_transmittance: float = 0.30
    ir_transmittance: float = 0.04
    pump_spurious_loss: float = DEFAULT_PUMP_SPURIOUS
    ir_spurious_loss: float = DEFAULT_IR_SPURIOUS
    free_spectral_range_hz: float = 4.3e9
    analysis_frequency_hz: float = 21.0e6
    pump_detuning: float = 0.0
    signal_detuning: float = 0.0
    idler_detuning: float = 0.0
    phonon_modes: tuple[PhononMode, ...] = ()
    pump_detection_efficiency: float = 0.65
    ir_detection_efficiency: float = 0.87
    detection_phases: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if self.coupling_rate < 0:
            raise ValueError("coupling_rate must be non-negative")
        for name in ("pump_transmittance", "ir_transmittance"):
            t = getattr(self, name)
            if not 0.0 < t <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {t}")
        for name in ("pump_spurious_loss", "ir_spurious_loss"):
            loss = getattr(self, name)
            if not 0.0 <= loss < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {loss}")
        if self.free_spectral_range_hz <= 0:
            raise ValueError("free_spectral_range_hz must be positive")
        if self.analysis_frequency_hz <= 0:
            raise ValueError("analysis_frequency_hz must be positive")
        for name in ("pump_detection_efficiency", "ir_detection_efficiency"):
            eta = getattr(self, name)
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {eta}")
        if len(self.detection_phases) != 3:
            raise ValueError("detection_phases must give one phase per carrier")

    # Per-carrier loss bookkeeping; carrier 0 is the pump, 1 and 2 share the
    # infrared mirror.
    def transmittance(self, carrier: int) -> float:
        return self.pump_transmittance if carrier == 0 else self.ir_transmittance

    def spurious_loss(self, carrier: int) -> float:
        return self.pump_spurious_loss if carrier == 0 else self.ir_spurious_loss

    def gamma_mirror(self, carrier: int) -> float:
        return 0.5 * self.transmittance(carrier) * self.free_spectral_range_hz

    def gamma_spurious(self, carrier: int) -> float:
        return 0.5 * self.spurious_loss(carrier) * self.free_spectral_range_hz

    def gamma(self, carrier: int) -> float:
        return self.gamma_mirror(carrier) + self.gamma_spurious(carrier)

    def finesse(self, carrier: int) -> float:
        return TWO_PI / (self.transmittance(carrier) + self.spurious_loss(carrier))

    def detuning_rad(self, carrier: int) -> float:
        d = (self.pump_detuning, self.signal_detuning, self.idler_detuning)[carrier]
        return d * self.gamma(carrier)

    def detection_efficiency(self, carrier: int) -> float:
        return self.pump_detection_efficiency if carrier == 0 else self.ir_detection_efficiency

    @property
    def omega_analysis(self) -> float:
        return TWO_PI * self.analysis_frequency_hz

    def without_phonons(self) -> "OpoParams":
        return replace(self, phonon_modes=())

    def at_sigma(self, sigma: float) -> "OpoParams":
        return replace(self, sigma=sigma)


@dataclass(frozen=True)
class MeanFields:
    """Classical steady-state carrier amplitudes.

    ``frequency_pull`` is the common shift (rad/s) of the oscillating signal
    and idler frequencies that balances unequal detunings; the effective
    carrier detunings seen by the sidebands are shifted accordingly.
    """

    alpha_pump: complex
    alpha_signal: complex
    alpha_idler: complex
    frequency_pull: float = 0.0

    @property
    def alphas(self) -> tuple[complex, complex, complex]:
        return (self.alpha_pump, self.alpha_signal, self.alpha_idler)

    @property
    def above_threshold(self) -> bool:
        return abs(self.alpha_signal) > 0.0


def pump_threshold_amplitude(params: OpoParams) -> float:
    """Intracavity pump amplitude at which parametric gain equals loss (resonant)."""
    if params.coupling_rate == 0:
        raise ValueError("threshold undefined for zero coupling_rate")
    return math.sqrt(params.gamma(1) * params.gamma(2)) / params.coupling_rate


def mean_fields(params: OpoParams) -> MeanFields:
    """Classical steady state of the three carriers at pump power sigma.

    Below threshold only the pump is populated; above threshold its amplitude
    clamps at the threshold value (scaled by detuning) and the downconverted
    amplitudes satisfy the gain-equals-loss condition.  All phase freedom is
    fixed by taking the pump drive real and splitting the signal/idler phase
    sum evenly.
    """
    chi = params.coupling_rate
    sigma = params.sigma
    if chi == 0.0:
        if sigma != 0.0:
            raise ValueError("sigma is undefined when coupling_rate is zero; use sigma = 0")
        return MeanFields(0.0 + 0.0j, 0.0 + 0.0j, 0.0 + 0.0j)

    g0, g1, g2 = (params.gamma(c) for c in range(3))
    d0 = params.detuning_rad(0)
    d1 = params.detuning_rad(1)
    d2 = params.detuning_rad(2)

    # Oscillation shifts the signal and idler frequencies (keeping their sum
    # fixed) until both see the same detuning in linewidth units.
    pull = (g2 * d1 - g1 * d2) / (g1 + g2)
    dt = (d1 - pull) / g1

    # Threshold drive for the detuned cavity; below it the signal and idler
    # stay dark and the pump follows its Lorentzian.
    clamp = math.sqrt(g1 * g2 * (1.0 + dt * dt)) / chi
    c0 = complex(g0, -d0) * clamp
    eps_th = abs(c0)

    if sigma <= 1.0:
        eps = math.sqrt(sigma) * eps_th
        alpha0 = eps / complex(g0, -d0)
        return MeanFields(alpha0, 0.0 + 0.0j, 0.0 + 0.0j, frequency_pull=pull)

    # Above threshold: |chi alpha0| clamps; solve |c0 + P e^{i beta}|^2 =
    # sigma |c0|^2 for the real product P = chi r1 r2 >= 0.
    beta = math.atan(dt)
    proj = (c0 * cmath.exp(-1j * beta)).real
    disc = proj * proj + (sigma - 1.0) * eps_th * eps_th
    p = -proj + math.sqrt(disc)

    theta = -cmath.phase(c0 + p * cmath.exp(1j * beta))
    alpha0 = clamp * cmath.exp(1j * theta)
    r1 = math.sqrt(p / chi) * (g2 / g1) ** 0.25
    r2 = math.sqrt(p / chi) * (g1 / g2) ** 0.25
    half = cmath.exp(1j * (theta + beta) / 2.0)
    return MeanFields(alpha0, r1 * half, r2 * half, frequency_pull=pull)


# Sideband bookkeeping: mode index -> (carrier, +1 upper / -1 lower).
_SIDEBAND_OF = tuple((k // 2, +1 if k % 2 else -1) for k in range(N_SIDEBANDS))


@dataclass(frozen=True)
class QuadraticCoupling:
    """Coefficients of a quadratic Hamiltonian H/hbar = a*Fa + (a*Ga* + h.c.)/2.

    ``f`` is Hermitian (beam-splitter couplings), ``g`` symmetric (squeezer
    couplings); both are indexed over the mode register they were built for.
    """

    f: NDArray[np.complex128]
    g: NDArray[np.complex128]

    def __post_init__(self):
        if self.f.shape != self.g.shape or self.f.ndim != 2:
            raise ValueError("f and g must be square matrices of equal shape")
        scale = max(1.0, np.max(np.abs(self.f)), np.max(np.abs(self.g)))
        if np.max(np.abs(self.f - self.f.conj().T)) > 1e-12 * scale:
            raise ValueError("f must be Hermitian")
        if np.max(np.abs(self.g - self.g.T)) > 1e-12 * scale:
            raise ValueError("g must be symmetric")

    @property
    def n_modes(self) -> int:
        return self.f.shape[0]

    def beam_splitter_edges(self) -> set[tuple[int, int]]:
        """Unordered pairs coupled by particle-conserving terms."""
        n = self.n_modes
        return {
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if abs(self.f[i, j]) > 0.0
        }

    def squeezer_edges(self) -> set[tuple[int, int]]:
        """Unordered pairs coupled by pair-creation terms."""
        n = self.n_modes
        return {
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if abs(self.g[i, j]) > 0.0
        }


def sideband_hamiltonian(params: OpoParams, means: MeanFields) -> QuadraticCoupling:
    """Parametric couplings among the six sidebands for given carrier amplitudes.

    The pump amplitude drives pair creation on (1u, 2l) and (1l, 2u); the
    signal and idler amplitudes beam-split each pump sideband with the
    same-side sideband of the other infrared beam.
    """
    chi = params.coupling_rate
    a0, a1, a2 = means.alphas
    f = np.zeros((N_SIDEBANDS, N_SIDEBANDS), dtype=complex)
    g = np.zeros_like(f)
    # Mode indices: 0l=0, 0u=1, 1l=2, 1u=3, 2l=4, 2u=5.
    g[3, 4] = g[4, 3] = 1j * chi * a0
    g[2, 5] = g[5, 2] = 1j * chi * a0
    for pump_sb, ir1, ir2 in ((1, 3, 5), (0, 2, 4)):
        f[pump_sb, ir2] = -1j * chi * a1
        f[ir2, pump_sb] = np.conj(f[pump_sb, ir2])
        f[pump_sb, ir1] = -1j * chi * a2
        f[ir1, pump_sb] = np.conj(f[pump_sb, ir1])
    return QuadraticCoupling(f, g)


def phonon_hamiltonian(params: OpoParams, means: MeanFields) -> QuadraticCoupling:
    """Carrier-mediated sideband-phonon couplings over (sidebands + phonons).

    Phonon mode j occupies index 6 + j.  For each carrier n with amplitude
    alpha_n, the upper sideband couples to the phonon as a beam splitter and
    the lower sideband as a two-mode squeezer, both at rate g_nj alpha_n.
    """
    n_tot = N_SIDEBANDS + len(params.phonon_modes)
    f = np.zeros((n_tot, n_tot), dtype=complex)
    g = np.zeros_like(f)
    for j, mode in enumerate(params.phonon_modes):
        pj = N_SIDEBANDS + j
        for carrier in range(3):
            rate = mode.couplings[carrier] * means.alphas[carrier]
            if rate == 0:
                continue
            upper, lower = 2 * carrier + 1, 2 * carrier
            f[upper, pj] = -rate
            f[pj, upper] = np.conj(f[upper, pj])
            g[lower, pj] = g[pj, lower] = -rate
    return QuadraticCoupling(f, g)


@dataclass(frozen=True)
class Channel:
    """One input channel of the Langevin system."""

    kind: str  # "mirror", "spurious" or "phonon"
    target: int  # sideband index for optical channels, phonon index otherwise
    spectrum: float  # quadrature spectral density: 1 vacuum, 2 n + 1 thermal


@dataclass(frozen=True)
class LangevinSystem:
    """Linear quantum Langevin model dX/dt = A X + B X_in, X_out = C X - D X_in.

    All matrices are real and act on interleaved (p, q) quadratures; the state
    covers the six sidebands followed by any phonon modes, while the output
    rows cover only the sidebands.  ``input_spectra`` repeats each channel's
    spectral density over its two quadratures.
    """

    drift: NDArray[np.float64]
    input_coupling: NDArray[np.float64]
    output_selector: NDArray[np.float64]
    input_reflection: NDArray[np.float64]
    input_spectra: NDArray[np.float64]
    channels: tuple[Channel, ...]

    @property
    def n_modes(self) -> int:
        return self.drift.shape[0] // 2

    @property
    def n_channels(self) -> int:
        return len(self.channels)


def _quadrature_basis(n_modes: int) -> NDArray[np.complex128]:
    """Matrix L with X = L z for z = (a_1..a_n, a_1*..a_n*); L^-1 = L^dag / 2."""
    lam = np.zeros((2 * n_modes, 2 * n_modes), dtype=complex)
    for k in range(n_modes):
        lam[2 * k, k] = 1.0
        lam[2 * k, n_modes + k] = 1.0
        lam[2 * k + 1, k] = -1.0j
        lam[2 * k + 1, n_modes + k] = 1.0j
    return lam


def _real_drift(f: NDArray, g: NDArray, decay: NDArray) -> NDArray[np.float64]:
    """Quadrature drift for da/dt = -i(F a + G a*) - decay a."""
    n = f.shape[0]
    a_c = np.block(
        [[-1j * f, -1j * g], [1j * g.conj(), 1j * f.conj()]]
    ) - np.kron(np.eye(2), np.diag(decay))
    lam = _quadrature_basis(n)
    a_real = lam @ a_c @ lam.conj().T / 2.0
    if np.max(np.abs(a_real.imag)) > 1e-9 * max(1.0, np.max(np.abs(a_real.real))):
        raise AssertionError("drift transformation produced a non-real matrix")
    return a_real.real


def build_langevin(params: OpoParams) -> LangevinSystem:
    """Assemble the linear model for the sidebands and phonons at the analysis frequency.

    The drift folds in each mode's detuning: sideband n,+/- sits at
    Delta_n +/- Omega from its cavity resonance (with the mean-field frequency
    pull applied to signal and idler) and phonon j at Omega - Omega_mj from
    its mechanical resonance.  Raises if the drift has an eigenvalue with a
    positive real part beyond the marginal phase mode.
    """
    means = mean_fields(params)
    n_ph = len(params.phonon_modes)
    n_tot = N_SIDEBANDS + n_ph
    omega = params.omega_analysis

    sb = sideband_hamiltonian(params, means)
    ph = phonon_hamiltonian(params, means)
    f = ph.f.copy()
    g = ph.g.copy()
    f[:N_SIDEBANDS, :N_SIDEBANDS] += sb.f
    g[:N_SIDEBANDS, :N_SIDEBANDS] += sb.g

    # Diagonal of F carries minus the frame detuning of each mode.
    eff_detuning = [
        params.detuning_rad(0),
        params.detuning_rad(1) - means.frequency_pull,
        params.detuning_rad(2) + means.frequency_pull,
    ]
    decay = np.zeros(n_tot)
    for k, (carrier, side) in enumerate(_SIDEBAND_OF):
        f[k, k] += -(eff_detuning[carrier] + side * omega)
        decay[k] = params.gamma(carrier)
    for j, mode in enumerate(params.phonon_modes):
        pj = N_SIDEBANDS + j
        f[pj, pj] += -(omega - TWO_PI * mode.frequency_hz)
        decay[pj] = mode.damping_rate / 2.0

    drift = _real_drift(f, g, decay)

    channels: list[Channel] = []
    blocks: list[NDArray[np.float64]] = []

    def add_channel(kind, target, rate, spectrum, rows):
        col = np.zeros((2 * n_tot, 2))
        col[rows, (0, 1)] = math.sqrt(rate)
        channels.append(Channel(kind, target, spectrum))
        blocks.append(col)

    for k, (carrier, _) in enumerate(_SIDEBAND_OF):
        add_channel("mirror", k, 2.0 * params.gamma_mirror(carrier), 1.0, (2 * k, 2 * k + 1))
    for k, (carrier, _) in enumerate(_SIDEBAND_OF):
        rate = 2.0 * params.gamma_spurious(carrier)
        if rate > 0.0:
            add_channel("spurious", k, rate, 1.0, (2 * k, 2 * k + 1))
    for j, mode in enumerate(params.phonon_modes):
        pj = N_SIDEBANDS + j
        add_channel(
            "phonon", j, mode.damping_rate, 2.0 * mode.occupation + 1.0, (2 * pj, 2 * pj + 1)
        )

    b = np.hstack(blocks)
    n_ch = len(channels)

    c = np.zeros((2 * N_SIDEBANDS, 2 * n_tot))
    d = np.zeros((2 * N_SIDEBANDS, 2 * n_ch))
    for k, (carrier, _) in enumerate(_SIDEBAND_OF):
        root = math.sqrt(2.0 * params.gamma_mirror(carrier))
        c[2 * k, 2 * k] = root
        c[2 * k + 1, 2 * k + 1] = root
        # Mirror channels come first and share the sideband's index.
        d[2 * k, 2 * k] = 1.0
        d[2 * k + 1, 2 * k + 1] = 1.0

    spectra = np.repeat([ch.spectrum for ch in channels], 2).astype(float)

    ev = np.linalg.eigvals(drift)
    scale = max(1.0, float(np.linalg.norm(drift, 2)))
    worst = ev[np.argmax(ev.real)]
    if worst.real > STABILITY_RTOL * scale:
        raise UnstableOperatingPointError(
            f"drift matrix is unstable: eigenvalue {worst:.6e} has positive real part",
            complex(worst),
        )

    return LangevinSystem(drift, b, c, d, spectra, tuple(channels))


def output_covariance(params: OpoParams) -> NDArray[np.float64]:
    """Covariance of the six output sidebands at the analysis frequency.

    Solves the frequency-domain input-output problem of the Langevin system;
    phonon modes are bath-traced by construction since only the sideband
    output ports are selected.
    """
    system = build_langevin(params)
    a = system.drift
    try:
        x = np.linalg.solve(-a, system.input_coupling)
    except np.linalg.LinAlgError as exc:
        raise SingularResponseError(
            "response matrix is singular at the analysis frequency"
        ) from exc
    residual = np.max(np.abs(-a @ x - system.input_coupling))
    if not np.isfinite(residual) or residual > 1e-6 * max(1.0, np.max(np.abs(system.input_coupling))):
        raise SingularResponseError(
            f"response solve is ill-conditioned (residual {residual:.3e})"
        )
    transfer = system.output_selector @ x - system.input_reflection
    v = (transfer * system.input_spectra) @ transfer.T
    return (v + v.T) / 2.0


def apply_detection(v, params: OpoParams) -> NDArray[np.float64]:
    """Propagate a sideband covariance through detection: phase then loss.

    Both sidebands of carrier n are rotated by minus the detection phase
    (so a phase of zero measures the quadratures as produced) and attenuated
    by the carrier's detection efficiency with a vacuum environment.
    """
    out = np.asarray(v, dtype=float)
    if out.shape != (2 * N_SIDEBANDS, 2 * N_SIDEBANDS):
        raise ValueError("apply_detection expects a six-mode covariance")
    for k, (carrier, _) in enumerate(_SIDEBAND_OF):
        phi = params.detection_phases[carrier]
        if phi != 0.0:
            rot = gaussian.phase_rotation_symplectic(-phi, k, N_SIDEBANDS)
            out = gaussian.apply_symplectic(out, rot)
    for k, (carrier, _) in enumerate(_SIDEBAND_OF):
        out = gaussian.attenuation_channel(out, k, params.detection_efficiency(carrier))
    return out
