"""Random-phase Monte Carlo estimate of the coherence curve.

Each realization draws one uniform phase per slot of the pairing's phase
model, superposes the alternative amplitudes, and contributes |sum|^2; the
curve is the mean over realizations.  This estimator knows nothing about the
closed forms, which is what makes the comparison between the two a real test.

Frame convention (fixed so that runs are reproducible): the photon reaching
detector 1 is evaluated at t1 = tau and the one reaching detector 2 at
t2 = 0, with source frequencies (nu_a, nu_b) = (delta_nu, 0).  Only the
frequency difference and tau survive the ensemble average, so the convention
does not affect the curve, just the per-realization noise.

Determinism: realizations are split into fixed-size chunks; chunk i draws
from a counter-based generator keyed by (seed, i) and partial sums are
combined in chunk order.  The result is therefore bit-identical for a given
(seed, n_realizations, parallel_chunk) no matter how many threads ran the
chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .alternatives import (
    enumerate_alternatives,
    independent_phase_slots,
    phase_model,
    temporal_propagator,
)
from .core import (
    Alternative,
    DomainError,
    ExperimentConfig,
    G2Curve,
    PairKind,
    VisibilityResult,
    validate_config,
)
from .probability import path_probabilities

# How far a fitted coefficient may sit outside its physical range before we
# call it a convention bug instead of sampling noise.
_NOISE_SIGMAS = 5.0
_FIT_ATOL = 1e-9


@dataclass(frozen=True)
class McSettings:
    """Simulation size, seeding and execution layout.

    parallel_chunk is the number of realizations per deterministic work
    unit; it is part of the result's identity, unlike threads, which only
    changes who computes the chunks.
    """

    n_realizations: int = 100_000
    seed: int = 0
    parallel_chunk: int = 16_384
    threads: int = 1

    def __post_init__(self) -> None:
        if self.n_realizations < 1:
            raise DomainError("n_realizations must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")
        if self.parallel_chunk < 1:
            raise DomainError("parallel_chunk must be >= 1")
        if self.threads < 1:
            raise DomainError("threads must be >= 1")


def realization_value(
    pair: PairKind,
    alts: list[Alternative],
    phases,
    delta_nu: float,
    tau: float,
) -> float:
    """|sum of alternative amplitudes|^2 for one phase draw.

    Reference implementation, one term at a time; the batched estimator in
    :func:`g2_monte_carlo` must agree with averaging this.
    """
    needed = phase_model(pair).n_slots
    span = 1 + max(max(a.phase_slots) for a in alts)
    if span > needed:  # relabeled term list (negative control)
        needed = span
    if len(phases) != needed:
        raise DomainError(f"phase vector must have length {needed}, got {len(phases)}")
    nu = {"a": delta_nu, "b": 0.0}
    t1, t2 = tau, 0.0
    amp = 0.0 + 0.0j
    for a in alts:
        phi = (
            phases[a.phase_slots[0]]
            + phases[a.phase_slots[1]]
            + a.bs_phase_count * (math.pi / 2.0)
        )
        amp += (
            a.weight
            * complex(math.cos(phi), math.sin(phi))
            * temporal_propagator(nu[a.d1_source], t1)
            * temporal_propagator(nu[a.d2_source], t2)
        )
    return abs(amp) ** 2


def _term_arrays(alts: list[Alternative]):
    weights = np.array([a.weight for a in alts])
    offsets = np.array([a.bs_phase_count * (math.pi / 2.0) for a in alts])
    slot1 = np.array([a.phase_slots[0] for a in alts])
    slot2 = np.array([a.phase_slots[1] for a in alts])
    from_a = np.array([a.d1_source == "a" for a in alts])
    return weights, offsets, slot1, slot2, from_a


def _chunk_moments(seed, chunk_index, n, n_slots, weights, offsets, slot1, slot2, from_a):
    """Moment sums of (s0, c, s) over one chunk of realizations.

    Because the only tau dependence is the beat factor on the photon at
    detector 1, a realization's curve is s0 + c cos(theta) + s sin(theta)
    with theta = 2 pi delta_nu tau, where s0, c, s come from the two partial
    amplitude sums U (detector-1 photon from source a) and W (from source b).
    Accumulating first and second moments of the triple reproduces the
    per-tau mean and variance exactly.
    """
    rng = np.random.Generator(np.random.Philox(key=[seed, chunk_index]))
    phases = rng.uniform(0.0, 2.0 * math.pi, size=(n, n_slots))
    term_phase = phases[:, slot1] + phases[:, slot2] + offsets
    amps = weights * np.exp(1j * term_phase)
    u = amps[:, from_a].sum(axis=1)
    w = amps[:, ~from_a].sum(axis=1)
    s0 = u.real**2 + u.imag**2 + w.real**2 + w.imag**2
    c = 2.0 * (u.real * w.real + u.imag * w.imag)
    s = 2.0 * (u.real * w.imag - u.imag * w.real)
    return np.array(
        [
            s0.sum(), c.sum(), s.sum(),
            (s0 * s0).sum(), (c * c).sum(), (s * s).sum(),
            (s0 * c).sum(), (s0 * s).sum(), (c * s).sum(),
        ]
    )


def g2_monte_carlo(
    cfg: ExperimentConfig,
    settings: McSettings = McSettings(),
    *,
    independent_phases: bool = False,
) -> G2Curve:
    """Sampled curve with per-point standard errors.

    independent_phases=True runs the negative control from
    :func:`absg2.alternatives.independent_phase_slots`.
    """
    validate_config(cfg)
    p = path_probabilities(cfg.intensity_ratio, cfg.bs)
    alts = enumerate_alternatives(cfg.pair, p)
    n_slots = phase_model(cfg.pair).n_slots
    if independent_phases:
        alts, n_slots = independent_phase_slots(alts)
    arrays = _term_arrays(alts)

    n_total = settings.n_realizations
    chunk = settings.parallel_chunk
    counts = [min(chunk, n_total - start) for start in range(0, n_total, chunk)]

    def run(i: int):
        return _chunk_moments(settings.seed, i, counts[i], n_slots, *arrays)

    if settings.threads > 1 and len(counts) > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            parts = list(pool.map(run, range(len(counts))))
    else:
        parts = [run(i) for i in range(len(counts))]

    totals = np.zeros(9)
    for part in parts:  # fixed chunk order keeps the reduction deterministic
        totals += part

    theta = 2.0 * math.pi * cfg.delta_nu * np.asarray(cfg.tau_grid)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    mean = (totals[0] + totals[1] * cos_t + totals[2] * sin_t) / n_total
    second = (
        totals[3]
        + totals[4] * cos_t**2
        + totals[5] * sin_t**2
        + 2.0 * totals[6] * cos_t
        + 2.0 * totals[7] * sin_t
        + 2.0 * totals[8] * cos_t * sin_t
    ) / n_total
    var = np.maximum(second - mean**2, 0.0)

    comp_mean = totals[:3] / n_total
    comp_second = np.array(
        [
            [totals[3], totals[6], totals[7]],
            [totals[6], totals[4], totals[8]],
            [totals[7], totals[8], totals[5]],
        ]
    ) / n_total
    comp_cov = comp_second - np.outer(comp_mean, comp_mean)

    if n_total > 1:
        bessel = n_total / (n_total - 1)
        stderr = np.sqrt(var * bessel / n_total)
        beat_cov = comp_cov * bessel / n_total  # covariance of the component means
    else:
        stderr = np.zeros_like(var)
        beat_cov = np.zeros((3, 3))

    if mean.min() < -1e-9:
        raise DomainError("negative curve mean beyond roundoff; amplitude model is broken")
    mean = np.maximum(mean, 0.0)  # clip -1e-17 style roundoff at exact dips

    return G2Curve(
        tau=cfg.tau_grid,
        g2=tuple(float(v) for v in mean),
        n_realizations=n_total,
        seed=settings.seed,
        stderr=tuple(float(v) for v in stderr),
        beat_cov=tuple(tuple(float(v) for v in row) for row in beat_cov),
    )


def fit_cosine(curve: G2Curve, delta_nu: float) -> tuple[float, float, np.ndarray]:
    """Least-squares fit of level - amplitude*cos(2 pi delta_nu tau).

    Returns (level, amplitude, covariance).  The 2x2 parameter covariance is
    propagated from the curve's beat-component covariance when present (the
    fit is a fixed linear map of the curve, so this is exact); with only
    per-point stderr available it falls back to treating points as
    independent, which understates the variance because the component noise
    is common to all points.  Analytic curves get a zero matrix.
    """
    if delta_nu <= 0.0:
        raise DomainError("degenerate curve: delta_nu must be > 0")
    tau = np.asarray(curve.tau)
    if (tau[-1] - tau[0]) * delta_nu < 1.0 - 1e-9:
        raise DomainError("degenerate curve: tau grid spans less than one beat period")
    if len(tau) < 3:
        raise DomainError("degenerate curve: need at least 3 points")
    theta = 2.0 * math.pi * delta_nu * tau
    design = np.column_stack([np.ones_like(theta), -np.cos(theta)])
    values = np.asarray(curve.g2)
    coef, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < 2:
        raise DomainError("degenerate curve: design is rank deficient")
    level, amplitude = float(coef[0]), float(coef[1])

    cov = np.zeros((2, 2))
    solver = np.linalg.inv(design.T @ design) @ design.T  # params = solver @ curve
    if curve.beat_cov is not None:
        components = np.column_stack([np.ones_like(theta), np.cos(theta), np.sin(theta)])
        transfer = solver @ components
        cov = transfer @ np.asarray(curve.beat_cov) @ transfer.T
    elif curve.stderr is not None:
        point_var = np.asarray(curve.stderr) ** 2
        cov = (solver * point_var[None, :]) @ solver.T
    return level, amplitude, cov


def visibility_from_curve(
    curve: G2Curve, delta_nu: float, *, raw_extrema: bool = False
) -> VisibilityResult:
    """Visibility of a sampled curve.

    Default mode fits the known sinusoid shape and returns
    v = amplitude/level with extrema level +- amplitude; raw min/max of a
    noisy curve would bias the contrast upward.  raw_extrema=True gives that
    biased estimate anyway, for comparison.

    A fitted amplitude outside [0, level] is pulled back to the boundary
    when compatible with sampling noise, and rejected as a sign/convention
    bug when it is not.
    """
    if raw_extrema:
        from .analytic import visibility_from_extrema

        return visibility_from_extrema(max(curve.g2), min(curve.g2))

    level, amplitude, cov = fit_cosine(curve, delta_nu)
    se_level = math.sqrt(max(cov[0, 0], 0.0))
    se_amp = math.sqrt(max(cov[1, 1], 0.0))
    if level <= 0.0:
        raise DomainError("fitted curve level must be > 0")

    scale = max(abs(level), 1.0)
    if amplitude < 0.0:
        if amplitude < -(_NOISE_SIGMAS * se_amp + _FIT_ATOL * scale):
            raise DomainError("fitted oscillation amplitude is negative beyond noise")
        amplitude = 0.0
    if amplitude > level:
        gap_noise = _NOISE_SIGMAS * math.hypot(se_amp, se_level) + _FIT_ATOL * scale
        if amplitude - level > gap_noise:
            raise DomainError("fitted oscillation amplitude exceeds curve level beyond noise")
        amplitude = level

    v = amplitude / level
    if curve.stderr is None and curve.beat_cov is None:
        v_stderr = None
    else:
        grad = np.array([-amplitude / level**2, 1.0 / level])
        v_stderr = math.sqrt(max(float(grad @ cov @ grad), 0.0))
    return VisibilityResult(
        v=v,
        g2_max=level + amplitude,
        g2_min=level - amplitude,
        v_stderr=v_stderr,
    )
