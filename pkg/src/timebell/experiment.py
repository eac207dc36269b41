"""Finite-statistics pair experiments sampled with the Born rule.

Randomness comes from numpy's Philox-4x64 counter-based generator
(``RNG_ALGORITHM``). Pair ``k`` of a run with seed ``s`` consumes exactly
the 4x64-bit block at counter ``k`` under key ``s``:

* word 0, top two bits: setting-pair index for the ``uniform`` scheduler;
* word 1, top 53 bits: uniform double in [0, 1) that picks the outcome pair.

Because each pair is keyed by its own counter, any chunk ``[k0, k1)`` can be
generated independently (`sample_blocks`) and the concatenation of chunks is
bit-identical to the single sequential stream.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .quantum import CHSH_SIGNS, GeneralizedPauli, evolved_state

RNG_ALGORITHM = "numpy.random.Philox(4x64-10)/counter=pair-index"

#: Outcome-pair order used by `JointDistribution.as_array`.
OUTCOME_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class JointDistribution:
    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def __post_init__(self):
        probs = self.as_array()
        if np.any(probs < -1e-12) or np.any(probs > 1 + 1e-12):
            raise ValueError(f"probabilities out of [0, 1]: {probs}")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")

    def as_array(self):
        return np.array([self.p_pp, self.p_pm, self.p_mp, self.p_mm])

    @property
    def correlation(self):
        return self.p_pp + self.p_mm - self.p_pm - self.p_mp

    @property
    def marginal1(self):
        """Probability that wing 1 reads +1."""
        return self.p_pp + self.p_pm

    @property
    def marginal2(self):
        return self.p_pp + self.p_mp


_PROJECTORS = {sign: GeneralizedPauli(0.0).projector(sign) for sign in (1, -1)}


def joint_distribution(h, m, n):
    """Born-rule outcome probabilities for ``sigma_0 (x) sigma_0`` on ``|S(m,n)>``."""
    psi = evolved_state(h, m, n)
    probs = []
    for o1, o2 in OUTCOME_PAIRS:
        proj = la.tensor(_PROJECTORS[o1], _PROJECTORS[o2])
        probs.append(la.expectation(psi, proj))
    # Round-off can leave -1e-17; clip before validation.
    p = np.clip(probs, 0.0, 1.0)
    return JointDistribution(*map(float, p))


@dataclass(frozen=True)
class PairRecord:
    k: int
    setting1: int
    setting2: int
    outcome1: int
    outcome2: int

    def __post_init__(self):
        if self.setting1 not in (0, 1) or self.setting2 not in (0, 1):
            raise ValueError("settings are indices 0 (unprimed) or 1 (primed)")
        if self.outcome1 not in (1, -1) or self.outcome2 not in (1, -1):
            raise ValueError("outcomes must be +1 or -1")


class Records:
    """Column-oriented run of pair records; iterates as `PairRecord` objects."""

    def __init__(self, k, setting1, setting2, outcome1, outcome2):
        cols = [np.asarray(c, dtype=np.int64) for c in (k, setting1, setting2, outcome1, outcome2)]
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise ValueError("record columns differ in length")
        if np.any((cols[1] != 0) & (cols[1] != 1)) or np.any((cols[2] != 0) & (cols[2] != 1)):
            raise ValueError("settings are indices 0 or 1")
        if np.any(np.abs(cols[3]) != 1) or np.any(np.abs(cols[4]) != 1):
            raise ValueError("outcomes must be +1 or -1")
        for c in cols:
            c.setflags(write=False)
        self.k, self.setting1, self.setting2, self.outcome1, self.outcome2 = cols

    @classmethod
    def from_records(cls, records):
        records = list(records)
        return cls(*(
            [getattr(r, name) for r in records]
            for name in ("k", "setting1", "setting2", "outcome1", "outcome2")
        ))

    def __len__(self):
        return len(self.k)

    def __getitem__(self, i):
        return PairRecord(int(self.k[i]), int(self.setting1[i]), int(self.setting2[i]),
                          int(self.outcome1[i]), int(self.outcome2[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other):
        if not isinstance(other, Records):
            return NotImplemented
        return all(np.array_equal(getattr(self, c), getattr(other, c))
                   for c in ("k", "setting1", "setting2", "outcome1", "outcome2"))

    @property
    def setting_index(self):
        return 2 * self.setting1 + self.setting2


_FIXED_RE = re.compile(r"fixed[(:]([0-3])\)?$")


def parse_scheduler(policy):
    """Return ``None`` for ``"uniform"`` or the pinned setting-pair index for ``"fixed(i)"``."""
    if policy == "uniform":
        return None
    m = _FIXED_RE.match(policy)
    if m is None:
        raise ValueError(f"unknown scheduler {policy!r}; use 'uniform' or 'fixed(i)' with i in 0..3")
    return int(m.group(1))


def sample_blocks(seed, start, count):
    """Raw Philox blocks for pairs ``start .. start + count - 1``, shape ``(count, 4)``."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    bg = np.random.Philox(key=int(seed), counter=int(start))
    return bg.random_raw(4 * int(count)).reshape(-1, 4)


def _cumulative(h, settings):
    # Row i: cumulative outcome probabilities for setting pair i.
    table = np.empty((4, 4))
    for i, (m, n) in enumerate(settings.pairs()):
        table[i] = np.cumsum(joint_distribution(h, m, n).as_array())
    table[:, -1] = 1.0
    return table


def run_experiment(h, settings, n_pairs, seed=0, scheduler="uniform", start=0):
    """Simulate ``n_pairs`` pairs, deterministic in ``(seed, n_pairs, scheduler)``.

    ``start`` offsets the pair index, so a run can be split into chunks that
    reproduce the same records as one sequential run.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    fixed = parse_scheduler(scheduler)
    blocks = sample_blocks(seed, start, n_pairs)
    if fixed is None:
        idx = (blocks[:, 0] >> np.uint64(62)).astype(np.int64)
    else:
        idx = np.full(n_pairs, fixed, dtype=np.int64)
    u = (blocks[:, 1] >> np.uint64(11)).astype(np.float64) * 2.0**-53
    cum = _cumulative(h, settings)
    outcome = (u[:, None] >= cum[idx]).sum(axis=1)
    pairs = np.array(OUTCOME_PAIRS)
    return Records(
        k=np.arange(start, start + n_pairs),
        setting1=idx // 2,
        setting2=idx % 2,
        outcome1=pairs[outcome, 0],
        outcome2=pairs[outcome, 1],
    )


@dataclass(frozen=True)
class ChshEstimate:
    value: float
    stderr: float
    #: ``(correlation, count)`` per setting pair, order ``(t,u), (t,u'), (t',u), (t',u')``.
    per_setting: tuple

    @property
    def n_pairs(self):
        return sum(count for _, count in self.per_setting)


_CELL_NAMES = ("(t,u)", "(t,u')", "(t',u)", "(t',u')")


def estimate_chsh(records):
    """Plug-in CHSH estimate with binomial standard error.

    Each cell's correlation is the mean of ``outcome1 * outcome2``; its
    variance is ``(1 - P^2) / count`` and cells are treated as independent.
    """
    if not isinstance(records, Records):
        records = Records.from_records(records)
    idx = records.setting_index
    prod = records.outcome1 * records.outcome2
    per_setting = []
    value = 0.0
    var = 0.0
    for i, sign in enumerate(CHSH_SIGNS):
        mask = idx == i
        count = int(mask.sum())
        if count < 2:
            raise ValueError(f"setting cell {_CELL_NAMES[i]} has {count} records; need at least 2")
        corr = int(prod[mask].sum()) / count
        per_setting.append((corr, count))
        value += sign * corr
        var += (1.0 - corr * corr) / count
    return ChshEstimate(value=value, stderr=math.sqrt(var), per_setting=tuple(per_setting))
