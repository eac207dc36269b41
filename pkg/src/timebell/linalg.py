"""Dense complex linear algebra on C^2 and C^2 (x) C^2.

Operators and states are plain ``numpy`` arrays of dtype ``complex128``:
``(d, d)`` for operators and ``(d,)`` for state vectors, with ``d`` in
``{2, 4}``. Every function here validates shapes and returns a fresh,
read-only array, so values can be shared freely. Finiteness is enforced
where values enter, in `matrix` and `state`.
"""

import numpy as np

DIMS = (2, 4)

#: Entrywise tolerance for the Hermitian / unitary predicates.
STRUCT_TOL = 1e-12
#: Largest tolerated imaginary part of an expectation value.
EXPECT_TOL = 1e-10
#: Tolerance on the squared norm of a normalized state.
NORM_TOL = 1e-12


def _frozen(a):
    a.setflags(write=False)
    return a


def matrix(entries):
    """Build a validated, read-only operator from nested entries."""
    m = np.array(entries, dtype=complex)
    _check_op(m)
    if not np.isfinite(m).all():
        raise ValueError("operator has non-finite entries")
    return _frozen(m)


def state(amplitudes):
    """Build a validated, read-only state vector from amplitudes."""
    v = np.array(amplitudes, dtype=complex)
    _check_vec(v)
    if not np.isfinite(v).all():
        raise ValueError("state has non-finite amplitudes")
    return _frozen(v)


def identity(d):
    if d not in DIMS:
        raise ValueError(f"dimension must be one of {DIMS}, got {d}")
    return _frozen(np.eye(d, dtype=complex))


def _check_op(m, d=None):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in DIMS:
        raise ValueError(f"expected a 2x2 or 4x4 operator, got shape {m.shape}")
    if d is not None and m.shape[0] != d:
        raise ValueError(f"expected dimension {d}, got {m.shape[0]}")
    return m


def _check_vec(v, d=None):
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] not in DIMS:
        raise ValueError(f"expected a state of dimension 2 or 4, got shape {v.shape}")
    if d is not None and v.shape[0] != d:
        raise ValueError(f"expected dimension {d}, got {v.shape[0]}")
    return v


def tensor(a, b):
    """Kronecker product of two 2x2 operators.

    Index convention: entry ``(i, j)`` of ``a`` and ``(k, l)`` of ``b`` land
    at ``(2*i + k, 2*j + l)``, i.e. wing 1 is the most significant index.
    """
    a = _check_op(a, 2)
    b = _check_op(b, 2)
    return _frozen((a[:, None, :, None] * b[None, :, None, :]).reshape(4, 4))


def tensor_state(a, b):
    """Product state of two 2-dimensional vectors, same ordering as `tensor`."""
    a = _check_vec(a, 2)
    b = _check_vec(b, 2)
    return _frozen((a[:, None] * b[None, :]).reshape(4))


def matmul(a, b):
    a = _check_op(a)
    b = _check_op(b, a.shape[0])
    return _frozen(a @ b)


def matvec(m, v):
    m = _check_op(m)
    v = _check_vec(v, m.shape[0])
    return _frozen(m @ v)


def adjoint(m):
    m = _check_op(m)
    return _frozen(m.conj().T.copy())


def scale(c, m):
    m = _check_op(m)
    return _frozen(complex(c) * m)


def add(a, b):
    a = _check_op(a)
    b = _check_op(b, a.shape[0])
    return _frozen(a + b)


def is_hermitian(m, tol=STRUCT_TOL):
    m = _check_op(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_unitary(m, tol=STRUCT_TOL):
    m = _check_op(m)
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))) <= tol)


def is_normalized(v, tol=NORM_TOL):
    v = _check_vec(v)
    return bool(abs(np.vdot(v, v).real - 1.0) <= tol)


def overlap(a, b):
    """Inner product <a|b>."""
    a = _check_vec(a)
    b = _check_vec(b, a.shape[0])
    return complex(np.vdot(a, b))


def equal_up_to_phase(a, b, tol=STRUCT_TOL):
    """True when two normalized states differ at most by a global phase."""
    return abs(abs(overlap(a, b)) - 1.0) <= tol


def expectation(psi, op):
    """Real expectation value <psi|op|psi> of a Hermitian operator.

    Raises ``ValueError`` if ``op`` is not Hermitian, ``psi`` is not
    normalized, or the raw inner product carries an imaginary residue above
    `EXPECT_TOL`.
    """
    op = _check_op(op)
    psi = _check_vec(psi, op.shape[0])
    if not is_hermitian(op):
        raise ValueError("expectation requires a Hermitian operator")
    if not is_normalized(psi):
        raise ValueError("expectation requires a normalized state")
    raw = np.vdot(psi, op @ psi)
    if abs(raw.imag) >= EXPECT_TOL:
        raise ValueError(f"imaginary residue {raw.imag:g} exceeds {EXPECT_TOL:g}")
    return float(raw.real)
