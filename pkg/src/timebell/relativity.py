"""Event ordering across inertial frames in 1+1 Minkowski spacetime (c = 1)."""

import enum
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

LABELS = ("eta_pm", "eta_prime", "eta_dprime")

#: Relative width of the lightlike band around ``t^2 - x^2 = 0``.
LIGHTLIKE_TOL = 1e-9
#: Frame-time differences below this count as simultaneous at a probe velocity.
SIMULTANEITY_GUARD = 1e-12


@dataclass(frozen=True)
class Event:
    t: float
    x: float
    label: str = "eta_pm"

    def __post_init__(self):
        for name in ("t", "x"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"event coordinate {name} must be finite")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class Boost:
    v: float

    def __post_init__(self):
        v = float(self.v)
        if not (-1.0 < v < 1.0):
            raise ValueError(f"boost velocity must satisfy |v| < 1, got {v}")
        object.__setattr__(self, "v", v)

    @property
    def gamma(self):
        return 1.0 / math.sqrt((1.0 - self.v) * (1.0 + self.v))

    @classmethod
    def from_rapidity(cls, w):
        return cls(math.tanh(w))


class IntervalClass(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


def boost(e, b):
    """Coordinates of ``e`` in the frame moving with velocity ``b.v``."""
    g = b.gamma
    return Event(g * (e.t - b.v * e.x), g * (e.x - b.v * e.t), e.label)


def interval(e1, e2):
    """Invariant ``dt^2 - dx^2`` of the separation ``e2 - e1``."""
    dt, dx = e2.t - e1.t, e2.x - e1.x
    return dt * dt - dx * dx


def classify(e1, e2):
    dt, dx = e2.t - e1.t, e2.x - e1.x
    s = dt * dt - dx * dx
    if abs(s) <= LIGHTLIKE_TOL * max(dt * dt, dx * dx, 1.0):
        return IntervalClass.LIGHTLIKE
    return IntervalClass.TIMELIKE if s > 0 else IntervalClass.SPACELIKE


def _check_distinct(e1, e2):
    if e1.t == e2.t and e1.x == e2.x:
        raise ValueError(f"events {e1.label} and {e2.label} coincide")


def critical_velocity(e1, e2):
    """Boost velocity at which a spacelike pair is simultaneous, else ``None``.

    The time order of the pair flips as the frame velocity crosses this value.
    """
    _check_distinct(e1, e2)
    if classify(e1, e2) is not IntervalClass.SPACELIKE:
        return None
    return (e2.t - e1.t) / (e2.x - e1.x)


def frame_times(events, v):
    """Times of ``events`` in the frame with velocity ``v`` (vectorized over ``v``)."""
    v = np.asarray(v, dtype=float)
    g = 1.0 / np.sqrt((1.0 - v) * (1.0 + v))
    return [g * (e.t - v * e.x) for e in events]


def ordering_at(events, v, guard=SIMULTANEITY_GUARD):
    """Labels sorted by frame time at velocity ``v``, or ``None`` if any two are within ``guard``."""
    times = [float(t) for t in frame_times(events, v)]
    for i, j in combinations(range(len(events)), 2):
        if abs(times[i] - times[j]) <= guard:
            return None
    order = sorted(range(len(events)), key=times.__getitem__)
    return tuple(events[i].label for i in order)


def _probe(lo, hi, events):
    # Probe in rapidity so intervals hugging +-1 are still sampled inside.
    wlo = math.atanh(lo) if lo > -1.0 else None
    whi = math.atanh(hi) if hi < 1.0 else None
    if wlo is None:
        wlo = (whi if whi is not None else 0.0) - 2.0
    if whi is None:
        whi = wlo + 2.0 if lo > -1.0 else 2.0
    for frac in (0.5, 0.25, 0.75, 0.125, 0.875):
        v = math.tanh(wlo + frac * (whi - wlo))
        if lo < v < hi:
            order = ordering_at(events, v)
            if order is not None:
                return v, order
    return None


def ordering_witnesses(events):
    """Map each achievable strict ordering to one frame velocity realizing it.

    The critical velocities of the spacelike pairs split ``(-1, 1)`` into open
    intervals on which the ordering is constant; each interval is probed
    once. Simultaneity boundaries are excluded.
    """
    events = list(events)
    if len(events) != 3:
        raise ValueError("exactly three events are required")
    for e1, e2 in combinations(events, 2):
        _check_distinct(e1, e2)
    crit = sorted({v for e1, e2 in combinations(events, 2)
                   if (v := critical_velocity(e1, e2)) is not None and -1.0 < v < 1.0})
    edges = [-1.0, *crit, 1.0]
    found = {}
    for lo, hi in zip(edges[:-1], edges[1:]):
        hit = _probe(lo, hi, events)
        if hit is not None:
            v, order = hit
            found.setdefault(order, v)
    return found


def achievable_orderings(events):
    """Set of strict time orderings (labels, earliest first) over all inertial frames."""
    return set(ordering_witnesses(events))


def scan_orderings(events, n=10_000):
    """Brute-force oracle: orderings seen on an ``n``-point velocity grid inside (-1, 1)."""
    v = np.linspace(-1.0, 1.0, n + 2)[1:-1]
    times = np.array(frame_times(events, v))
    found = set()
    diffs = np.abs(times[:, None, :] - times[None, :, :])
    clear = np.all((diffs > SIMULTANEITY_GUARD) | np.eye(len(events), dtype=bool)[:, :, None], axis=(0, 1))
    order = np.argsort(times[:, clear], axis=0)
    for col in np.unique(order, axis=1).T:
        found.add(tuple(events[i].label for i in col))
    return found
