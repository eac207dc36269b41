"""Deterministic local-realist models and their Bell bounds.

A *strategy* fixes, for one emitted pair, the +-1 value each wing reveals
under each setting. A full `Strategy` may let wing ``s`` depend on the
distant setting too (the value ``sigma^s_{own, other}``); a `PIStrategy`
(parameter independent) depends on the own setting only.

Only deterministic strategies are enumerated. Any stochastic local model is
a convex mixture of them and the Bell combination is linear, so its maximum
over mixtures is attained at a deterministic vertex.
"""

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping, Sequence, Union

WINGS = (1, 2)


@dataclass(frozen=True)
class SettingLabels:
    """Two distinct setting labels per wing, ``(a, a')`` and ``(b, b')``."""

    a: Hashable = "a"
    a_prime: Hashable = "a'"
    b: Hashable = "b"
    b_prime: Hashable = "b'"

    def __post_init__(self):
        if self.a == self.a_prime:
            raise ValueError("wing-1 labels must be distinct")
        if self.b == self.b_prime:
            raise ValueError("wing-2 labels must be distinct")

    @property
    def wing1(self):
        return (self.a, self.a_prime)

    @property
    def wing2(self):
        return (self.b, self.b_prime)

    def own_other(self, wing):
        """``(own, other)`` label tuples for ``wing``."""
        if wing == 1:
            return self.wing1, self.wing2
        if wing == 2:
            return self.wing2, self.wing1
        raise ValueError(f"wing must be 1 or 2, got {wing!r}")

    def full_keys(self):
        """The 8 ``(wing, own, other)`` keys in canonical order."""
        keys = []
        for wing in WINGS:
            own, other = self.own_other(wing)
            keys.extend((wing, m, n) for m in own for n in other)
        return keys

    def pi_keys(self):
        """The 4 ``(wing, own)`` keys in canonical order."""
        return [(wing, m) for wing in WINGS for m in self.own_other(wing)[0]]


def _check_pm1(values):
    for key, v in values.items():
        if v not in (1, -1) or isinstance(v, bool):
            raise ValueError(f"strategy value at {key!r} must be +1 or -1, got {v!r}")


@dataclass(frozen=True)
class Strategy:
    """Value table ``(wing, own setting, other setting) -> +-1``."""

    values: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))
        _check_pm1(self.values)

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def value(self, wing, own, other):
        try:
            return self.values[(wing, own, other)]
        except KeyError:
            raise KeyError(f"strategy has no entry for wing={wing}, own={own!r}, other={other!r}") from None

    def is_parameter_independent(self, labels):
        """True when no wing's value changes with the distant setting."""
        for wing in WINGS:
            own, other = labels.own_other(wing)
            for m in own:
                if len({self.value(wing, m, n) for n in other}) > 1:
                    return False
        return True


@dataclass(frozen=True)
class PIStrategy:
    """Parameter-independent value table ``(wing, own setting) -> +-1``."""

    values: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))
        _check_pm1(self.values)

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def value(self, wing, own, other=None):
        # `other` is accepted and ignored: that is parameter independence.
        try:
            return self.values[(wing, own)]
        except KeyError:
            raise KeyError(f"strategy has no entry for wing={wing}, own={own!r}") from None

    def bell(self, labels):
        """Memoized `bell_combination`; the table is immutable so the value never changes."""
        memo = self.__dict__.get("_bell_memo")
        if memo is None or memo[0] is not labels:
            memo = (labels, bell_combination(self, labels))
            self.__dict__["_bell_memo"] = memo
        return memo[1]

    def negated(self, wing=1):
        """Flip the values of one wing, which flips the sign of ``B(k)``.

        Flipping both wings leaves every product, and so ``B(k)``, unchanged.
        """
        if wing not in WINGS:
            raise ValueError(f"wing must be 1 or 2, got {wing!r}")
        return PIStrategy({k: -v if k[0] == wing else v for k, v in self.values.items()})


AnyStrategy = Union[Strategy, PIStrategy]


def bell_combination(strategy, labels):
    """``B(k)`` for one pair: the signed four-term sum of wing products.

    Wing 2's lookup mirrors wing 1: its own setting comes first, so the
    ``(a, b')`` term reads ``sigma1[a, b'] * sigma2[b', a]``.
    """
    a, ap, b, bp = labels.a, labels.a_prime, labels.b, labels.b_prime
    v = strategy.value
    return (
        v(1, a, b) * v(2, b, a)
        - v(1, a, bp) * v(2, bp, a)
        + v(1, ap, b) * v(2, b, ap)
        + v(1, ap, bp) * v(2, bp, ap)
    )


def pi_strategies(labels):
    """All 16 parameter-independent strategies in lexicographic table order."""
    keys = labels.pi_keys()
    return [PIStrategy(dict(zip(keys, vals))) for vals in itertools.product((-1, 1), repeat=len(keys))]


def full_strategies(labels):
    """All 256 full strategies in lexicographic table order."""
    keys = labels.full_keys()
    return [Strategy(dict(zip(keys, vals))) for vals in itertools.product((-1, 1), repeat=len(keys))]


def _argmax_abs(strategies, labels):
    # First strict improvement wins, so ties go to the lexicographically smallest table.
    best, witness = None, None
    for st in strategies:
        val = abs(bell_combination(st, labels))
        if best is None or val > best:
            best, witness = val, st
    return best, witness


def max_over_pi_strategies(labels=SettingLabels()):
    """Exhaustive ``max |B(k)|`` over the 16 parameter-independent strategies."""
    return _argmax_abs(pi_strategies(labels), labels)


def max_over_full_strategies(labels=SettingLabels()):
    """Exhaustive ``max |B(k)|`` over the 256 unconstrained strategies."""
    return _argmax_abs(full_strategies(labels), labels)


@dataclass(frozen=True)
class Ensemble:
    """``N >= 1`` strategies, each carrying weight ``1/N``."""

    members: Sequence[AnyStrategy]

    is_parameter_independent: bool = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("an ensemble needs at least one strategy")
        pi = all(type(st) is PIStrategy for st in self.members)
        object.__setattr__(self, "is_parameter_independent", pi)

    def __len__(self):
        return len(self.members)


def _require_pi(e):
    if not e.is_parameter_independent:
        raise TypeError(
            "correlations are defined for parameter-independent ensembles only; "
            "full strategies need a measurement-context rule"
        )


def ensemble_correlation(e, m, n):
    """``P(m, n) = (1/N) sum_k sigma1_m(k) sigma2_n(k)``."""
    _require_pi(e)
    total = sum(st.value(1, m) * st.value(2, n) for st in e.members)
    return total / len(e)


def ensemble_bell(e, labels=SettingLabels(), exact=False):
    """Average of `bell_combination` over the ensemble.

    The sum is accumulated in integers; ``exact=True`` returns a
    `fractions.Fraction` instead of a float.
    """
    _require_pi(e)
    # Members are usually drawn from a small pool: evaluate each distinct object once.
    counts = Counter(map(id, e.members))
    distinct = dict(zip(map(id, e.members), e.members))
    total = sum(n * distinct[key].bell(labels) for key, n in counts.items())
    if exact:
        return Fraction(total, len(e))
    return total / len(e)
