"""Shared test oracles, kept independent of the code paths they check."""

from __future__ import annotations

import math

import numpy as np

from absg2.core import Alternative


def exact_phase_average(alts: list[Alternative], delta_nu: float, tau: float) -> float:
    """Exact ensemble average of |sum of amplitudes|^2 over uniform phases.

    Expands the squared modulus into term pairs.  A pair survives the
    average iff the two terms reference the same multiset of phase slots
    (the expectation of exp(i n phi) vanishes for any nonzero integer n).
    Pure enumeration; shares no code with the closed forms or the sampler.
    """
    nu = {"a": delta_nu, "b": 0.0}
    t1, t2 = tau, 0.0
    total = 0.0
    for j in alts:
        for k in alts:
            if sorted(j.phase_slots) != sorted(k.phase_slots):
                continue
            phase = (j.bs_phase_count - k.bs_phase_count) * (math.pi / 2.0)
            phase += 2.0 * math.pi * (
                (nu[j.d1_source] - nu[k.d1_source]) * t1
                + (nu[j.d2_source] - nu[k.d2_source]) * t2
            )
            total += j.weight * k.weight * math.cos(phase)
    return total


def random_domain_points(n: int, seed: int) -> list[tuple[float, float]]:
    """n random (x, R) pairs covering several decades of ratio."""
    rng = np.random.default_rng(seed)
    xs = 10.0 ** rng.uniform(-2.0, 2.0, n)
    rs = rng.uniform(0.02, 0.98, n)
    return [(float(x), float(r)) for x, r in zip(xs, rs)]
