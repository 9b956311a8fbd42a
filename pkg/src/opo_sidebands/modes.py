"""Mode labels and bipartitions for the six-mode sideband register.

The register holds the lower and upper sidebands, offset by the analysis
frequency, of three intracavity carriers: pump (0), signal (1) and idler (2).
Canonical mode order is (0l, 0u, 1l, 1u, 2l, 2u); quadratures are interleaved
as (p, q) per mode, so a six-mode covariance matrix is 12 x 12 with mode k
occupying rows 2k and 2k + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class Carrier(IntEnum):
    PUMP = 0
    SIGNAL = 1
    IDLER = 2


class Sideband(IntEnum):
    LOWER = 0
    UPPER = 1


@dataclass(frozen=True, order=True)
class ModeLabel:
    """One sideband mode, identified by its carrier and which side of it lies."""

    carrier: Carrier
    sideband: Sideband

    @property
    def index(self) -> int:
        """Position in the canonical (0l, 0u, 1l, 1u, 2l, 2u) order."""
        return 2 * int(self.carrier) + int(self.sideband)

    def __str__(self) -> str:
        return f"{int(self.carrier)}{'lu'[int(self.sideband)]}"

    @classmethod
    def parse(cls, text: str) -> "ModeLabel":
        """Parse a short label such as ``1u`` or ``0l``."""
        text = text.strip()
        if len(text) != 2 or text[0] not in "012" or text[1] not in "lu":
            raise ValueError(f"not a mode label: {text!r}")
        return cls(Carrier(int(text[0])), Sideband(1 if text[1] == "u" else 0))


MODE_ORDER: tuple[ModeLabel, ...] = tuple(
    ModeLabel(c, s) for c in Carrier for s in Sideband
)
N_SIDEBANDS = len(MODE_ORDER)

PUMP_MODES = frozenset({0, 1})
INFRARED_MODES = frozenset({2, 3, 4, 5})


def label_of(index: int) -> ModeLabel:
    return MODE_ORDER[index]


@dataclass(frozen=True)
class Bipartition:
    """A two-way split of a mode register into non-empty disjoint sides.

    The canonical representative keeps the side containing mode 0 as
    ``side_a``, so each unordered split has exactly one instance.
    """

    side_a: frozenset[int]
    side_b: frozenset[int]

    @classmethod
    def of(cls, side, n_modes: int) -> "Bipartition":
        """Build the canonical bipartition whose one side is ``side``."""
        side = frozenset(side)
        if not side or len(side) >= n_modes:
            raise ValueError("a bipartition side must be a non-empty proper subset")
        if any(i < 0 or i >= n_modes for i in side):
            raise ValueError(f"mode indices out of range for {n_modes} modes: {sorted(side)}")
        other = frozenset(range(n_modes)) - side
        if 0 in side:
            return cls(side, other)
        return cls(other, side)

    @property
    def n_modes(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def label(self) -> str:
        """Short display form: the smaller side, as sorted mode labels joined by +."""
        side = min(self.side_a, self.side_b, key=lambda s: (len(s), sorted(s)))
        if self.n_modes == N_SIDEBANDS:
            return "+".join(str(MODE_ORDER[i]) for i in sorted(side))
        return "+".join(f"m{i}" for i in sorted(side))

    def __str__(self) -> str:
        return self.label()
