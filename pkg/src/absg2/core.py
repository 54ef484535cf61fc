"""Domain types shared by every other module.

All types validate their invariants at construction and are immutable
afterwards, so instances are safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

# Tolerance for algebraic identities between 64-bit floats (p1a + p1b = 1,
# visibility vs. extrema, ...).
ALGEBRA_TOL = 1e-12

# Extra phase picked up on reflection at a lossless beam splitter.
REFLECTION_PHASE = math.pi / 2


class DomainError(ValueError):
    """A physical parameter violates its domain constraint."""


class SourceKind(enum.IntEnum):
    """Kind of light source feeding one input port.

    IntEnum so the kinds have a fixed order, which is what makes the
    unordered pair canonicalization in :class:`PairKind` deterministic.
    """

    LASER = 0
    THERMAL = 1
    SINGLE_PHOTON = 2


class PairKind(enum.Enum):
    """Canonical unordered pairing of the two sources.

    The value doubles as the CLI spelling.  Note the pair label does not fix
    which physical source sits at input "a": by convention the laser is
    source b in LT and SL, and the thermal source is source b in ST
    (see :meth:`source_a` / :meth:`source_b`).
    """

    LT = "lt"
    LL = "ll"
    TT = "tt"
    SS = "ss"
    SL = "sl"
    ST = "st"

    @classmethod
    def from_sources(cls, first: SourceKind, second: SourceKind) -> "PairKind":
        """Canonicalize any ordered pair of source kinds."""
        key = tuple(sorted((first, second)))
        return _PAIR_BY_SOURCES[key]

    @property
    def source_a(self) -> SourceKind:
        return _PAIR_ROLES[self][0]

    @property
    def source_b(self) -> SourceKind:
        return _PAIR_ROLES[self][1]


# Input-port roles (source a, source b) for each pairing.  The intensity
# ratio x is always I_a / I_b with these roles.
_PAIR_ROLES: dict[PairKind, tuple[SourceKind, SourceKind]] = {
    PairKind.LT: (SourceKind.THERMAL, SourceKind.LASER),
    PairKind.LL: (SourceKind.LASER, SourceKind.LASER),
    PairKind.TT: (SourceKind.THERMAL, SourceKind.THERMAL),
    PairKind.SS: (SourceKind.SINGLE_PHOTON, SourceKind.SINGLE_PHOTON),
    PairKind.SL: (SourceKind.SINGLE_PHOTON, SourceKind.LASER),
    PairKind.ST: (SourceKind.SINGLE_PHOTON, SourceKind.THERMAL),
}

_PAIR_BY_SOURCES: dict[tuple[SourceKind, SourceKind], PairKind] = {
    tuple(sorted(roles)): pair for pair, roles in _PAIR_ROLES.items()
}


@dataclass(frozen=True)
class BeamSplitter:
    """Lossless beam splitter with reflectivity strictly inside (0, 1).

    Transmissivity is derived as 1 - R so the lossless identity holds to
    machine precision.  R in {0, 1} is rejected outright: those mirrors
    produce no interference pattern and a dedicated error beats silently
    degenerate curves.
    """

    reflectivity: float
    reflection_phase: float = field(default=REFLECTION_PHASE, init=False)

    def __post_init__(self) -> None:
        r = self.reflectivity
        if not (isinstance(r, (int, float)) and math.isfinite(r)) or not 0.0 < r < 1.0:
            raise DomainError("R out of (0,1)")
        object.__setattr__(self, "reflectivity", float(r))

    @property
    def transmissivity(self) -> float:
        return 1.0 - self.reflectivity


@dataclass(frozen=True)
class PathProbabilities:
    """Conditional source-of-photon probabilities for the two detectors.

    p1a is the probability that the photon seen by detector 1 came from
    source a, and so on.  Both detector rows must each sum to one.
    """

    p1a: float
    p1b: float
    p2a: float
    p2b: float

    def __post_init__(self) -> None:
        for name in ("p1a", "p1b", "p2a", "p2b"):
            p = getattr(self, name)
            if not (math.isfinite(p) and 0.0 <= p <= 1.0):
                raise DomainError(f"{name} must be a probability in [0, 1], got {p!r}")
        if abs(self.p1a + self.p1b - 1.0) > ALGEBRA_TOL:
            raise DomainError("p1a + p1b must equal 1")
        if abs(self.p2a + self.p2b - 1.0) > ALGEBRA_TOL:
            raise DomainError("p2a + p2b must equal 1")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one interference configuration.

    intensity_ratio is x = I_a / I_b (roles per PairKind).  delta_nu is the
    beat frequency |nu_a - nu_b| in Hz.  tau_grid holds the detection-time
    offsets tau = t1 - t2 in seconds, strictly increasing.
    """

    pair: PairKind
    intensity_ratio: float
    bs: BeamSplitter
    delta_nu: float
    tau_grid: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau_grid", tuple(float(t) for t in self.tau_grid))
        _check_config(self)


def _check_config(cfg: ExperimentConfig) -> None:
    if not isinstance(cfg.pair, PairKind):
        raise DomainError(f"pair must be a PairKind, got {cfg.pair!r}")
    x = cfg.intensity_ratio
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0.0):
        raise DomainError("x must be > 0")
    if not isinstance(cfg.bs, BeamSplitter):
        raise DomainError("bs must be a BeamSplitter")
    if not (math.isfinite(cfg.delta_nu) and cfg.delta_nu >= 0.0):
        raise DomainError("delta_nu must be >= 0 and finite")
    if len(cfg.tau_grid) == 0:
        raise DomainError("tau_grid must be non-empty")
    if any(b <= a for a, b in zip(cfg.tau_grid, cfg.tau_grid[1:])):
        raise DomainError("tau_grid must be strictly increasing")


def validate_config(cfg: ExperimentConfig) -> ExperimentConfig:
    """Re-check every invariant of cfg and return it unchanged.

    Construction already validates, so this is the explicit entry point for
    configs coming from untrusted call sites (the CLI, deserialization).
    """
    _check_config(cfg)
    for tau in cfg.tau_grid:
        if not math.isfinite(tau):
            raise DomainError("tau_grid entries must be finite")
    # re-trigger BeamSplitter's own check in case of field tampering
    BeamSplitter(cfg.bs.reflectivity)
    return cfg


@dataclass(frozen=True)
class Alternative:
    """One indistinguishable two-photon path from the sources to (D1, D2).

    weight is the non-negative amplitude coefficient.  d1_source / d2_source
    name the source ("a" or "b") of the photon reaching each detector.
    bs_phase_count counts the beam-splitter reflections in the path product
    (each contributes pi/2).  phase_slots indexes the two photon phases in a
    realization's phase vector.
    """

    weight: float
    d1_source: str
    d2_source: str
    bs_phase_count: int
    phase_slots: tuple[int, int]

    def __post_init__(self) -> None:
        if not (math.isfinite(self.weight) and self.weight >= 0.0):
            raise DomainError("weight must be >= 0")
        if self.d1_source not in ("a", "b") or self.d2_source not in ("a", "b"):
            raise DomainError("detector sources must be 'a' or 'b'")
        if self.bs_phase_count not in (0, 1, 2):
            raise DomainError("bs_phase_count must be 0, 1 or 2")
        if len(self.phase_slots) != 2 or any(s < 0 for s in self.phase_slots):
            raise DomainError("phase_slots must be a pair of non-negative indices")
        object.__setattr__(self, "phase_slots", (int(self.phase_slots[0]), int(self.phase_slots[1])))


@dataclass(frozen=True)
class G2Curve:
    """Sampled second-order coherence curve, in proportional units.

    Analytic curves carry n_realizations = 0 and no seed / stderr.  Monte
    Carlo curves record how they were produced so runs can be reproduced
    bit for bit.

    A sampled curve is level + cos + sin components at the beat frequency,
    and the component noise is fully correlated across tau points (it does
    not average down over the grid).  beat_cov stores the 3x3 covariance of
    the estimated (level, cos, sin) component means so downstream fits can
    propagate uncertainty exactly; per-point stderr alone would understate
    it severalfold.
    """

    tau: tuple[float, ...]
    g2: tuple[float, ...]
    n_realizations: int = 0
    seed: int | None = None
    stderr: tuple[float, ...] | None = None
    beat_cov: tuple[tuple[float, float, float], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", tuple(float(t) for t in self.tau))
        object.__setattr__(self, "g2", tuple(float(g) for g in self.g2))
        if self.stderr is not None:
            object.__setattr__(self, "stderr", tuple(float(s) for s in self.stderr))
        if self.beat_cov is not None:
            object.__setattr__(
                self, "beat_cov", tuple(tuple(float(v) for v in row) for row in self.beat_cov)
            )
        if len(self.tau) != len(self.g2):
            raise DomainError("tau and g2 must have the same length")
        if self.stderr is not None and len(self.stderr) != len(self.tau):
            raise DomainError("stderr must match tau in length")
        if self.beat_cov is not None and (
            len(self.beat_cov) != 3 or any(len(row) != 3 for row in self.beat_cov)
        ):
            raise DomainError("beat_cov must be a 3x3 matrix")
        if any(g < 0.0 for g in self.g2):
            raise DomainError("g2 values must be >= 0")
        if self.n_realizations < 0:
            raise DomainError("n_realizations must be >= 0")


@dataclass(frozen=True)
class VisibilityResult:
    """Interference visibility together with the extrema it came from.

    v_stderr is the propagated 1-sigma uncertainty when the visibility was
    fitted from a sampled curve; None for exact results.
    """

    v: float
    g2_max: float
    g2_min: float
    v_stderr: float | None = None

    def __post_init__(self) -> None:
        if not (self.g2_max >= self.g2_min >= 0.0) or self.g2_max <= 0.0:
            raise DomainError("extrema must satisfy g2_max >= g2_min >= 0 and g2_max > 0")
        expected = (self.g2_max - self.g2_min) / (self.g2_max + self.g2_min)
        if abs(self.v - expected) > ALGEBRA_TOL:
            raise DomainError("v must equal (g2_max - g2_min)/(g2_max + g2_min)")
        if not 0.0 <= self.v <= 1.0:
            raise DomainError("v must lie in [0, 1]")
