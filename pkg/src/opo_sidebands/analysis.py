"""Entanglement witnesses over all bipartitions of the six-sideband register.

A six-mode register admits 2^5 - 1 = 31 unordered bipartitions.  Each is
classified into a structural family by how it splits the four infrared
sidebands, since those carry the parametric pair correlations:

- ``twin-sideband``: the same-side pairs {1u, 2u} and {1l, 2l} end up on
  opposite sides (pump sidebands anywhere);
- ``single-beam``: one side holds both sidebands of exactly one infrared beam;
- ``single-mode``: one side holds exactly one infrared sideband;
- ``squeezer-split``: the pair-created partners (1u, 2l) and (1l, 2u) are
  kept whole but separated from each other;
- ``pump-split``: one side is exactly the two pump sidebands;
- ``other``: the remaining splits (a lone pump sideband against the rest).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from . import gaussian, opo
from .errors import ModelError
from .modes import Bipartition, INFRARED_MODES, N_SIDEBANDS, PUMP_MODES


class Family(str, Enum):
    TWIN_SIDEBAND = "twin-sideband"
    SINGLE_BEAM = "single-beam"
    SINGLE_MODE = "single-mode"
    SQUEEZER_SPLIT = "squeezer-split"
    PUMP_SPLIT = "pump-split"
    OTHER = "other"


# Infrared index sets: 1l=2, 1u=3, 2l=4, 2u=5.
_SAME_SIDE_PAIRS = {frozenset({3, 5}), frozenset({2, 4})}
_BEAM_PAIRS = {frozenset({2, 3}), frozenset({4, 5})}
_SQUEEZER_PAIRS = {frozenset({3, 4}), frozenset({2, 5})}


def enumerate_bipartitions() -> list[Bipartition]:
    """All 31 bipartitions of the six sidebands, smallest canonical side first."""
    parts = []
    for mask in range(2 ** (N_SIDEBANDS - 1)):
        side = {0} | {i + 1 for i in range(N_SIDEBANDS - 1) if mask >> i & 1}
        if len(side) == N_SIDEBANDS:
            continue
        parts.append(Bipartition.of(side, N_SIDEBANDS))
    parts.sort(key=lambda b: (len(b.side_a), sorted(b.side_a)))
    return parts


def classify(bipartition: Bipartition) -> Family:
    """Structural family of a six-mode bipartition."""
    if bipartition.n_modes != N_SIDEBANDS:
        raise ValueError("classification is defined for the six-sideband register")
    if PUMP_MODES in (bipartition.side_a, bipartition.side_b):
        return Family.PUMP_SPLIT
    ir_a = frozenset(bipartition.side_a & INFRARED_MODES)
    ir_b = frozenset(bipartition.side_b & INFRARED_MODES)
    if {ir_a, ir_b} == _SAME_SIDE_PAIRS:
        return Family.TWIN_SIDEBAND
    if {ir_a, ir_b} == _BEAM_PAIRS:
        return Family.SINGLE_BEAM
    if len(ir_a) in (1, 3):
        return Family.SINGLE_MODE
    if {ir_a, ir_b} == _SQUEEZER_PAIRS:
        return Family.SQUEEZER_SPLIT
    return Family.OTHER


@dataclass(frozen=True)
class WitnessEntry:
    nu_min: float
    log_negativity: float


@dataclass(frozen=True)
class WitnessTable:
    """PT witness of every bipartition for one state, plus a physicality audit."""

    sigma: float
    physical_min_nu: float
    entries: tuple[tuple[Bipartition, WitnessEntry], ...]

    def __post_init__(self):
        if len(self.entries) != 31:
            raise ValueError(f"witness table must cover 31 bipartitions, got {len(self.entries)}")

    def nu_min(self, bipartition: Bipartition) -> float:
        for b, entry in self.entries:
            if b == bipartition:
                return entry.nu_min
        raise KeyError(bipartition)


def witness_table(v: NDArray[np.float64], sigma: float) -> WitnessTable:
    """Evaluate the PT witness for all 31 bipartitions of a six-mode state."""
    v = np.asarray(v, dtype=float)
    if v.shape != (2 * N_SIDEBANDS, 2 * N_SIDEBANDS):
        raise ValueError("witness_table expects a six-mode covariance")
    min_nu = float(np.min(gaussian.symplectic_eigenvalues(v)))
    entries = []
    for b in enumerate_bipartitions():
        nu = gaussian.pt_witness(v, b)
        entries.append((b, WitnessEntry(nu, gaussian.log_negativity(nu))))
    return WitnessTable(sigma, min_nu, tuple(entries))


DEFAULT_SIGMA_GRID: tuple[float, ...] = (0.2, 0.5, 0.9) + tuple(
    np.linspace(1.005, 1.75, 40)
)


@dataclass(frozen=True)
class SweepPoint:
    """Result of one sweep evaluation; ``error`` is set when the point failed."""

    sigma: float
    table: WitnessTable | None
    error: str | None = None


def evaluate_point(
    params: opo.OpoParams, sigma: float, *, with_detection: bool = False
) -> WitnessTable:
    """Witness table of the output state at one pump power."""
    point = params.at_sigma(sigma)
    v = opo.output_covariance(point)
    if with_detection:
        v = opo.apply_detection(v, point)
    return witness_table(v, sigma)


def sweep_sigma(
    params: opo.OpoParams,
    sigma_grid,
    *,
    with_detection: bool = False,
) -> list[SweepPoint]:
    """Evaluate the witness table across pump powers.

    Points are independent; a model failure at one sigma is recorded on its
    :class:`SweepPoint` and the sweep continues.
    """
    grid = [float(s) for s in sigma_grid]
    if not grid:
        raise ValueError("sigma_grid must not be empty")
    if any(s < 0 for s in grid):
        raise ValueError("sigma values must be non-negative")
    points = []
    for s in grid:
        try:
            table = evaluate_point(params, s, with_detection=with_detection)
        except (ModelError, ValueError) as exc:
            points.append(SweepPoint(s, None, f"{type(exc).__name__}: {exc}"))
        else:
            points.append(SweepPoint(s, table))
    return points
