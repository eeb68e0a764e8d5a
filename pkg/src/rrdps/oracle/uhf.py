"""Exact enumeration of the universal-hashing identity for tiny block lengths."""

import itertools
from functools import reduce

import numpy as np

from ..attack import as_spectral, eve_state_closed
from ..bounds import T_objective
from ..errors import SizeError
from ..numerics import trace_norm
from .report import VerifyReport

MAX_N = 2
MAX_ELL = 2
MAX_D = 4
DENSE_BLOCK_CAP = 2048
# square roots turn round-off eigenvalues of order 1e-16 into 1e-8 errors
SQRT_TOL = 1e-6


def _psd_sqrt(m):
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    return (vecs * np.sqrt(np.clip(vals, 0, None))) @ vecs.conj().T


def _tensor(mats):
    return reduce(np.kron, mats)


def hash_family(n: int, ell: int):
    """All ``ell x n`` binary matrices; ``Ext(x, M) = M x mod 2``."""
    for bits in itertools.product((0, 1), repeat=n * ell):
        yield np.array(bits, dtype=int).reshape(ell, n)


def uhf_identity_check(n: int, ell: int, p, rounds=None, tol: float = 1e-10) -> VerifyReport:
    """Compare ``E_{zu} Delta^2`` with ``(2^ell-1)/2^n (x)_i (sigma_0^2+sigma_1^2)/2``.

    ``rounds`` lists the ``(r_i, k_i)`` of each of the ``n`` rounds (default
    ``(1, i mod d)``). Also checks that the block-diagonal trace norm equals
    ``E_{zu} ||Delta||_1`` (dense only when the matrix has at most
    ``DENSE_BLOCK_CAP`` rows), the Jensen step
    ``E ||Delta||_1 <= tr sqrt(E Delta^2)``, and that the right-hand side
    equals ``sqrt((2^ell-1)/2^n) prod_i T``.
    """
    s = as_spectral(p)
    d = s.d
    if n > MAX_N or ell > MAX_ELL or d > MAX_D or n < 1 or ell < 0:
        raise SizeError(f"uhf check is capped at n<={MAX_N}, ell<={MAX_ELL}, d<={MAX_D}")
    if rounds is None:
        rounds = [(1, i % d) for i in range(n)]
    sig = [[eve_state_closed(s, r, k, x)[1] for x in (0, 1)] for r, k in rounds]
    xs = list(itertools.product((0, 1), repeat=n))
    omega_x = {x: _tensor([sig[i][x[i]] for i in range(n)]) for x in xs}
    omega_av = _tensor([(sg[0] + sg[1]) / 2 for sg in sig])
    dim = omega_av.shape[0]

    family = list(hash_family(n, ell))
    zs = list(itertools.product((0, 1), repeat=ell))
    e_delta_sq = np.zeros((dim, dim), dtype=complex)
    e_norm = 0.0
    deltas = []
    for m in family:
        ext = {x: tuple((m @ np.array(x)) % 2) for x in xs}
        for z in zs:
            omega = 2.0 ** (ell - n) * sum(
                (omega_x[x] for x in xs if ext[x] == z), np.zeros((dim, dim), complex))
            delta = omega - omega_av
            e_delta_sq += delta @ delta
            e_norm += trace_norm(delta)
            deltas.append(delta)
    count = len(family) * len(zs)
    e_delta_sq /= count
    e_norm /= count

    closed = (2**ell - 1) / 2**n * _tensor([(sg[0] @ sg[0] + sg[1] @ sg[1]) / 2 for sg in sig])
    params = {"n": n, "ell": ell, "d": d, "beta": s.beta,
              "lam_plus": s.lam_plus, "lam_minus": s.lam_minus}
    rep = VerifyReport("uhf")
    rep.record("identity", float(np.abs(e_delta_sq - closed).max()), tol, params)

    rhs = float(np.trace(_psd_sqrt(e_delta_sq)).real)
    rep.record("jensen", max(0.0, e_norm - rhs), tol, dict(params, lhs=e_norm, rhs=rhs))
    t_val = T_objective(d, s.beta, s.lam_plus, s.lam_minus)
    rep.record("trace_sqrt_vs_T", abs(rhs - np.sqrt((2**ell - 1) / 2**n) * t_val**n),
               SQRT_TOL, params)

    if count * dim <= DENSE_BLOCK_CAP:
        big = np.zeros((count * dim, count * dim), dtype=complex)
        for i, delta in enumerate(deltas):
            big[i * dim:(i + 1) * dim, i * dim:(i + 1) * dim] = delta / count
        rep.record("block_structure", abs(trace_norm(big) - e_norm), tol, params)
    return rep
