"""Conditional path probabilities at the beam splitter.

Only the intensity ratio x = I_a / I_b enters; absolute intensities are a
redundant degree of freedom and are never stored.
"""

from __future__ import annotations

import math

from .core import BeamSplitter, DomainError, PathProbabilities


def path_probabilities(intensity_ratio: float, bs: BeamSplitter) -> PathProbabilities:
    """Source-of-photon probabilities for both detectors.

    Detector 1 sees source a through transmission and source b through
    reflection, detector 2 the other way around:

        p1a = x T / (x T + R)      p2a = x R / (x R + T)

    with T = 1 - R and x the intensity ratio I_a / I_b.
    """
    x = intensity_ratio
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0.0):
        raise DomainError("x must be > 0")
    r = bs.reflectivity
    t = bs.transmissivity
    p1a = x * t / (x * t + r)
    p2a = x * r / (x * r + t)
    return PathProbabilities(p1a=p1a, p1b=1.0 - p1a, p2a=p2a, p2b=1.0 - p2a)


def way_probabilities(p: PathProbabilities) -> tuple[float, float, float]:
    """Probabilities of the three ways to trigger a coincidence:
    (both photons from a, both from b, one from each).  They sum to 1.
    """
    both_a = p.p1a * p.p2a
    both_b = p.p1b * p.p2b
    cross = p.p1a * p.p2b + p.p1b * p.p2a
    return both_a, both_b, cross
