"""Time-parameterized spin observables on a two-level system and its pair space.

Conventions
-----------
* The computational basis is the energy eigenbasis, ``|+> = (1, 0)`` and
  ``|-> = (0, 1)``.
* Generalized Pauli operators live on the X-Y equator of the Bloch sphere:
  ``sigma_phi(phi) = cos(phi) X + sin(phi) Y``.
* ``hbar = 1``, so ``delta_e * t`` is a dimensionless phase.
* ``delta_e = e_minus - e_plus``. Conjugating by ``exp(iH tau)`` rotates
  ``sigma_phi(phi)`` into ``sigma_phi(phi + delta_e * tau)``, which is what
  lets measurement *times* play the role of measurement *angles*.

With these conventions the singlet gives ``<sigma_0 (x) sigma_0> = -cos(...)``
on the evolved state. The constant `CORRELATION_SIGN` records that global
sign once; all sign-sensitive results are ``CORRELATION_SIGN`` times the
textbook cosine law.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg as la

SQRT2 = math.sqrt(2.0)
TSIRELSON = 2.0 * SQRT2

PAULI_X = la.matrix([[0, 1], [1, 0]])
PAULI_Y = la.matrix([[0, -1j], [1j, 0]])
PAULI_Z = la.matrix([[1, 0], [0, -1]])

KET_PLUS = la.state([1, 0])
KET_MINUS = la.state([0, 1])


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Hamiltonian:
    """Two-level Hamiltonian ``E+ |+><+| + E- |-><-|`` (energies in 1/time)."""

    e_plus: float
    e_minus: float

    def __post_init__(self):
        object.__setattr__(self, "e_plus", _finite("e_plus", self.e_plus))
        object.__setattr__(self, "e_minus", _finite("e_minus", self.e_minus))
        gap = self.e_minus - self.e_plus
        if not math.isfinite(gap):
            raise ValueError("energy gap overflows")
        if gap == 0.0:
            raise ValueError("degenerate Hamiltonian: e_minus == e_plus (delta_e = 0)")

    @classmethod
    def from_gap(cls, delta_e, e_plus=0.0):
        return cls(e_plus, e_plus + float(delta_e))

    @property
    def delta_e(self):
        return self.e_minus - self.e_plus

    def matrix(self):
        return la.matrix(np.diag([self.e_plus, self.e_minus]))


@dataclass(frozen=True)
class TimeSettings:
    """Measurement times: ``t, t_prime`` on wing 1 and ``u, u_prime`` on wing 2."""

    t: float
    t_prime: float
    u: float
    u_prime: float

    def __post_init__(self):
        for name in ("t", "t_prime", "u", "u_prime"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if self.t == self.t_prime:
            raise ValueError("wing 1 settings must differ (t == t_prime)")
        if self.u == self.u_prime:
            raise ValueError("wing 2 settings must differ (u == u_prime)")

    @property
    def wing1(self):
        return (self.t, self.t_prime)

    @property
    def wing2(self):
        return (self.u, self.u_prime)

    def pairs(self):
        """The four (wing-1, wing-2) setting pairs, indexed ``2*i + j``."""
        return [(m, n) for m in self.wing1 for n in self.wing2]


#: Signs of the four terms in the CHSH combination, same order as
#: `TimeSettings.pairs`: minus on the (t, u') term.
CHSH_SIGNS = (1, -1, 1, 1)


@dataclass(frozen=True)
class GeneralizedPauli:
    """Equatorial spin observable with eigenvectors ``(|+> +/- e^{i phi}|->)/sqrt 2``."""

    phi: float

    def __post_init__(self):
        object.__setattr__(self, "phi", _finite("phi", self.phi))

    def matrix(self):
        return sigma_phi(self.phi)

    def eigenvector(self, sign):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return la.state(np.array([1.0, sign * np.exp(1j * self.phi)]) / SQRT2)

    def projector(self, sign):
        v = self.eigenvector(sign)
        return la.matrix(np.outer(v, v.conj()))


def sigma_phi(phi):
    phi = _finite("phi", phi)
    e = complex(math.cos(phi), math.sin(phi))
    return la.matrix([[0, e.conjugate()], [e, 0]])


def evolution(h, t):
    """``exp(iHt) = diag(exp(i E+ t), exp(i E- t))``."""
    t = _finite("t", t)
    return la.matrix([[cmath.exp(1j * h.e_plus * t), 0], [0, cmath.exp(1j * h.e_minus * t)]])


def sigma_at_time(h, t):
    """Time-``t`` observable ``exp(iHt) sigma_0 exp(-iHt)``; equals ``sigma_phi(delta_e * t)``."""
    u = evolution(h, t)
    return la.matmul(la.matmul(u, sigma_phi(0.0)), la.adjoint(u))


def u_delta_alpha(delta):
    """Phase gate ``diag(exp(i delta), 1)``.

    In the equatorial convention, conjugation rotates the observable
    *backwards*: ``U(d) sigma_phi(a) U(-d) == sigma_phi(a - d)``. Use
    `rotate_sigma` to move ``sigma_phi(a)`` to ``sigma_phi(a + d)``.
    """
    delta = _finite("delta", delta)
    return la.matrix([[cmath.exp(1j * delta), 0], [0, 1]])


def rotate_sigma(op, delta):
    """Map ``sigma_phi(a)`` to ``sigma_phi(a + delta)`` by phase-gate conjugation."""
    return la.matmul(la.matmul(u_delta_alpha(-delta), op), u_delta_alpha(delta))


@lru_cache(maxsize=None)
def singlet():
    """``(|phi+ phi-> - |phi- phi+>)/sqrt 2`` built from the ``phi = 0`` eigenvectors.

    In the energy basis this is ``(0, -1, 1, 0)/sqrt 2``.
    """
    s = GeneralizedPauli(0.0)
    plus, minus = s.eigenvector(1), s.eigenvector(-1)
    v = (la.tensor_state(plus, minus) - la.tensor_state(minus, plus)) / SQRT2
    return la.state(v)


def evolved_state(h, m, n):
    """``(exp(iHm) (x) exp(iHn)) |S>``."""
    u = la.tensor(evolution(h, m), evolution(h, n))
    return la.matvec(u, singlet())


def correlation_analytic(h, m, n):
    """Reference cosine law ``cos(delta_e (n - m))``, without the global sign."""
    return math.cos(h.delta_e * (float(n) - float(m)))


_SIGMA0_PAIR = la.tensor(sigma_phi(0.0), sigma_phi(0.0))


def correlation_simulated(h, m, n):
    """``<S(m,n)| sigma_0 (x) sigma_0 |S(m,n)>`` by explicit state evolution."""
    return la.expectation(evolved_state(h, m, n), _SIGMA0_PAIR)


def _determine_sign():
    # Probe a nondegenerate point so the sign is read off a value near +-1.
    h = Hamiltonian(0.0, 1.0)
    value = correlation_simulated(h, 0.0, 0.0)
    return 1 if value > 0 else -1


#: Global sign relating the simulated correlation to ``+cos(delta_e (n - m))``.
CORRELATION_SIGN = _determine_sign()


def correlation_g(h, t, g1, g2):
    """Correlation when both wings evolve for time ``t`` under ``g1 H`` and ``g2 H``."""
    t = _finite("t", t)
    g1 = _finite("g1", g1)
    g2 = _finite("g2", g2)
    u = la.tensor(evolution(h, g1 * t), evolution(h, g2 * t))
    return la.expectation(la.matvec(u, singlet()), _SIGMA0_PAIR)


def chsh_operator(h, s):
    """Bell observable ``sum_k sign_k sigma_m (x) sigma_n`` over the four setting pairs."""
    terms = [
        la.scale(sign, la.tensor(sigma_at_time(h, m), sigma_at_time(h, n)))
        for sign, (m, n) in zip(CHSH_SIGNS, s.pairs())
    ]
    op = terms[0]
    for term in terms[1:]:
        op = la.add(op, term)
    return op


def chsh_value(h, s, route="operator"):
    """CHSH value for ``s``.

    ``route="operator"`` takes ``<S|B|S>`` of `chsh_operator`;
    ``route="correlations"`` sums four `correlation_simulated` values.
    Both agree to ~1e-15.
    """
    if route == "operator":
        return la.expectation(singlet(), chsh_operator(h, s))
    if route == "correlations":
        return math.fsum(
            sign * correlation_simulated(h, m, n) for sign, (m, n) in zip(CHSH_SIGNS, s.pairs())
        )
    raise ValueError(f"unknown route {route!r}")


def chsh_analytic(h, s):
    """Signed four-term sum of `correlation_analytic` (no global sign)."""
    return math.fsum(
        sign * correlation_analytic(h, m, n) for sign, (m, n) in zip(CHSH_SIGNS, s.pairs())
    )


def optimal_settings(h, t0=0.0):
    """Times ``(t0, t0 + pi/2, t0 + pi/4, t0 + 3 pi/4) / delta_e`` maximizing ``|CHSH|``."""
    t0 = _finite("t0", t0)
    de = h.delta_e
    return TimeSettings(
        t=t0 / de,
        t_prime=(t0 + math.pi / 2) / de,
        u=(t0 + math.pi / 4) / de,
        u_prime=(t0 + 3 * math.pi / 4) / de,
    )
