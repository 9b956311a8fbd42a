"""Run configuration: INI-style files with [physics], [phonons], [detection], [sweep].

Unknown sections or keys are rejected; omitted keys fall back to the
experimental defaults baked into :class:`~.opo.OpoParams`.  A sigma grid entry
is either a single value or ``start:stop:count`` for an inclusive linear
spacing, and entries must be strictly ascending.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass

import numpy as np

from . import opo
from .analysis import DEFAULT_SIGMA_GRID


class ConfigError(ValueError):
    """A configuration file could not be parsed or validated."""


@dataclass(frozen=True)
class RunConfig:
    params: opo.OpoParams
    sigma_grid: tuple[float, ...]
    output_path: str
    emit_plots: bool
    include_phonons: bool
    include_detection: bool

    def effective_params(self) -> opo.OpoParams:
        """Parameters actually used by a run, honouring the phonon toggle."""
        return self.params if self.include_phonons else self.params.without_phonons()


def _parse_float(section: str, key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"[{section}] {key}: must be finite, got {text!r}")
    return value


def _parse_bool(section: str, key: str, text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"[{section}] {key}: not a boolean: {text!r}")


def _parse_grid(section: str, key: str, text: str) -> tuple[float, ...]:
    values: list[float] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            pieces = token.split(":")
            if len(pieces) != 3:
                raise ConfigError(
                    f"[{section}] {key}: ranges use start:stop:count, got {token!r}"
                )
            start = _parse_float(section, key, pieces[0])
            stop = _parse_float(section, key, pieces[1])
            try:
                count = int(pieces[2])
            except ValueError:
                raise ConfigError(f"[{section}] {key}: bad point count in {token!r}") from None
            if count < 2 or stop <= start:
                raise ConfigError(f"[{section}] {key}: empty or reversed range {token!r}")
            values.extend(float(s) for s in np.linspace(start, stop, count))
        else:
            values.append(_parse_float(section, key, token))
    if not values:
        raise ConfigError(f"[{section}] {key}: grid must not be empty")
    if any(v < 0 for v in values):
        raise ConfigError(f"[{section}] {key}: sigma values must be non-negative")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError(f"[{section}] {key}: grid must be strictly ascending")
    return tuple(values)


_RANGE_CHECKS = {
    ("physics", "sigma"): (0.0, math.inf),
    ("physics", "coupling_rate"): (0.0, math.inf),
    ("physics", "pump_transmittance"): (0.0, 1.0),
    ("physics", "ir_transmittance"): (0.0, 1.0),
    ("physics", "pump_spurious_loss"): (0.0, 1.0),
    ("physics", "ir_spurious_loss"): (0.0, 1.0),
    ("physics", "free_spectral_range_hz"): (0.0, math.inf),
    ("physics", "analysis_frequency_hz"): (0.0, math.inf),
    ("phonons", "pump_coupling_rate"): (0.0, math.inf),
    ("phonons", "signal_coupling_rate"): (0.0, math.inf),
    ("phonons", "idler_coupling_rate"): (0.0, math.inf),
    ("phonons", "frequency_hz"): (0.0, math.inf),
    ("phonons", "damping_rate"): (0.0, math.inf),
    ("phonons", "temperature_k"): (0.0, math.inf),
    ("detection", "pump_efficiency"): (0.0, 1.0),
    ("detection", "ir_efficiency"): (0.0, 1.0),
}

_FLOAT_KEYS = {
    "physics": (
        "sigma",
        "coupling_rate",
        "pump_transmittance",
        "ir_transmittance",
        "pump_spurious_loss",
        "ir_spurious_loss",
        "free_spectral_range_hz",
        "analysis_frequency_hz",
        "pump_detuning",
        "signal_detuning",
        "idler_detuning",
    ),
    "phonons": (
        "coupling_rate",
        "pump_coupling_rate",
        "signal_coupling_rate",
        "idler_coupling_rate",
        "frequency_hz",
        "damping_rate",
        "temperature_k",
    ),
    "detection": (
        "pump_efficiency",
        "ir_efficiency",
        "pump_phase",
        "signal_phase",
        "idler_phase",
    ),
}

_KNOWN_KEYS = {
    "physics": set(_FLOAT_KEYS["physics"]),
    "phonons": {"enabled", *_FLOAT_KEYS["phonons"]},
    "detection": {"enabled", *_FLOAT_KEYS["detection"]},
    "sweep": {"sigma_grid", "output", "emit_plots"},
}


def loads(text: str) -> RunConfig:
    """Parse a configuration from its text form."""
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"could not parse configuration: {exc}") from None

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    values: dict[tuple[str, str], float] = {}
    for section, keys in _FLOAT_KEYS.items():
        if not parser.has_section(section):
            continue
        for key in keys:
            if key in parser[section]:
                v = _parse_float(section, key, parser[section][key])
                lo, hi = _RANGE_CHECKS.get((section, key), (-math.inf, math.inf))
                if not lo <= v <= hi:
                    bound = f"[{lo}, {hi}]" if math.isfinite(hi) else f">= {lo}"
                    raise ConfigError(f"[{section}] {key}: must lie in {bound}, got {v}")
                values[(section, key)] = v

    def get(section: str, key: str, default: float) -> float:
        return values.get((section, key), default)

    include_phonons = True
    if parser.has_option("phonons", "enabled"):
        include_phonons = _parse_bool("phonons", "enabled", parser["phonons"]["enabled"])
    include_detection = True
    if parser.has_option("detection", "enabled"):
        include_detection = _parse_bool(
            "detection", "enabled", parser["detection"]["enabled"]
        )

    shared_g = get("phonons", "coupling_rate", opo.DEFAULT_PHONON_COUPLING)
    carrier_g = (
        get("phonons", "pump_coupling_rate", shared_g),
        get("phonons", "signal_coupling_rate", shared_g),
        get("phonons", "idler_coupling_rate", shared_g),
    )
    phonon_modes = []
    for c in range(3):
        couplings = [0.0, 0.0, 0.0]
        couplings[c] = carrier_g[c]
        phonon_modes.append(
            opo.PhononMode(
                tuple(couplings),
                frequency_hz=get("phonons", "frequency_hz", 21.0e6),
                damping_rate=get("phonons", "damping_rate", opo.TWO_PI * 1.0e6),
                temperature_k=get("phonons", "temperature_k", 260.0),
            )
        )

    try:
        params = opo.OpoParams(
            sigma=get("physics", "sigma", 1.5),
            coupling_rate=get("physics", "coupling_rate", 1.0e4),
            pump_transmittance=get("physics", "pump_transmittance", 0.30),
            ir_transmittance=get("physics", "ir_transmittance", 0.04),
            pump_spurious_loss=get("physics", "pump_spurious_loss", opo.DEFAULT_PUMP_SPURIOUS),
            ir_spurious_loss=get("physics", "ir_spurious_loss", opo.DEFAULT_IR_SPURIOUS),
            free_spectral_range_hz=get("physics", "free_spectral_range_hz", 4.3e9),
            analysis_frequency_hz=get("physics", "analysis_frequency_hz", 21.0e6),
            pump_detuning=get("physics", "pump_detuning", 0.0),
            signal_detuning=get("physics", "signal_detuning", 0.0),
            idler_detuning=get("physics", "idler_detuning", 0.0),
            phonon_modes=tuple(phonon_modes),
            pump_detection_efficiency=get("detection", "pump_efficiency", 0.65),
            ir_detection_efficiency=get("detection", "ir_efficiency", 0.87),
            detection_phases=(
                get("detection", "pump_phase", 0.0),
                get("detection", "signal_phase", 0.0),
                get("detection", "idler_phase", 0.0),
            ),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    sigma_grid = DEFAULT_SIGMA_GRID
    if parser.has_option("sweep", "sigma_grid"):
        sigma_grid = _parse_grid("sweep", "sigma_grid", parser["sweep"]["sigma_grid"])
    output_path = "sweep.csv"
    if parser.has_option("sweep", "output"):
        output_path = parser["sweep"]["output"].strip()
        if not output_path:
            raise ConfigError("[sweep] output: must not be empty")
    emit_plots = False
    if parser.has_option("sweep", "emit_plots"):
        emit_plots = _parse_bool("sweep", "emit_plots", parser["sweep"]["emit_plots"])

    return RunConfig(
        params=params,
        sigma_grid=sigma_grid,
        output_path=output_path,
        emit_plots=emit_plots,
        include_phonons=include_phonons,
        include_detection=include_detection,
    )


def parse_config(path: str) -> RunConfig:
    """Parse a configuration file; missing files raise :class:`ConfigError`."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return loads(text)


def serialize(config: RunConfig) -> str:
    """Render a configuration back to INI text; floats keep full precision."""
    p = config.params
    phonons = p.phonon_modes if p.phonon_modes else opo.default_phonon_modes()
    carrier_g = tuple(phonons[min(c, len(phonons) - 1)].couplings[c] for c in range(3))
    ref = phonons[0]
    out = io.StringIO()

    def section(name, pairs):
        out.write(f"[{name}]\n")
        for key, value in pairs:
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            out.write(f"{key} = {text}\n")
        out.write("\n")

    section(
        "physics",
        [
            ("sigma", p.sigma),
            ("coupling_rate", p.coupling_rate),
            ("pump_transmittance", p.pump_transmittance),
            ("ir_transmittance", p.ir_transmittance),
            ("pump_spurious_loss", p.pump_spurious_loss),
            ("ir_spurious_loss", p.ir_spurious_loss),
            ("free_spectral_range_hz", p.free_spectral_range_hz),
            ("analysis_frequency_hz", p.analysis_frequency_hz),
            ("pump_detuning", p.pump_detuning),
            ("signal_detuning", p.signal_detuning),
            ("idler_detuning", p.idler_detuning),
        ],
    )
    section(
        "phonons",
        [
            ("enabled", config.include_phonons),
            ("pump_coupling_rate", carrier_g[0]),
            ("signal_coupling_rate", carrier_g[1]),
            ("idler_coupling_rate", carrier_g[2]),
            ("frequency_hz", ref.frequency_hz),
            ("damping_rate", ref.damping_rate),
            ("temperature_k", ref.temperature_k),
        ],
    )
    section(
        "detection",
        [
            ("enabled", config.include_detection),
            ("pump_efficiency", p.pump_detection_efficiency),
            ("ir_efficiency", p.ir_detection_efficiency),
            ("pump_phase", p.detection_phases[0]),
            ("signal_phase", p.detection_phases[1]),
            ("idler_phase", p.detection_phases[2]),
        ],
    )
    section(
        "sweep",
        [
            ("sigma_grid", ", ".join(repr(s) for s in config.sigma_grid)),
            ("output", config.output_path),
            ("emit_plots", config.emit_plots),
        ],
    )
    return out.getvalue()
