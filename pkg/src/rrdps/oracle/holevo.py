"""Optimality test for Eve's two-outcome measurement of Alice's bit."""

import numpy as np

from ..attack import (MAX_D_PURIFICATION, as_spectral, eve_decomposition,
                      eve_state_bruteforce, eve_state_closed)
from ..bounds import tracedist_objective
from .report import VerifyReport


def eve_povm(p, r: int, k: int):
    """``(T0, T1)`` with ``T0 = (1 + AC' + CA' - BD' - DB')/2`` (primes: adjoints)."""
    dec = eve_decomposition(p, r, k)
    A, B, C, D = dec.A, dec.B, dec.C, dec.D
    dim = A.size
    t0 = 0.5 * (np.eye(dim) + np.outer(A, C.conj()) + np.outer(C, A.conj())
                - np.outer(B, D.conj()) - np.outer(D, B.conj()))
    return t0, np.eye(dim) - t0


def guess_success(sigma0, sigma1, t0, t1) -> float:
    return float(0.5 * np.trace(t0 @ sigma0).real + 0.5 * np.trace(t1 @ sigma1).real)


def holevo_check(p, r: int = 1, k: int = 0, tol: float = 1e-9) -> VerifyReport:
    """Check that ``(T0, T1)`` is a POVM and an optimal guess of ``s'``.

    Eve's states are rebuilt by explicit measurement of the purification, so
    the check does not rely on the closed-form diagonalisation. Optimality is
    the condition that ``Lam = (sigma0 T0 + sigma1 T1)/2`` is Hermitian with
    ``Lam - sigma_x/2 >= 0`` for both ``x``. The success probability is
    compared with ``1/2 + D/2`` from the closed-form trace distance.
    """
    s = as_spectral(p)
    rep = VerifyReport("holevo")
    params = {"d": s.d, "beta": s.beta, "lam_plus": s.lam_plus,
              "lam_minus": s.lam_minus, "r": r, "k": k}
    if s.d <= MAX_D_PURIFICATION:
        sig = [eve_state_bruteforce(s, r, k, x, route="average") for x in (0, 1)]
    else:
        sig = [eve_state_closed(s, r, k, x)[1] for x in (0, 1)]
    t0, t1 = eve_povm(s, r, k)
    dim = t0.shape[0]

    rep.record("povm_psd", max(0.0, -np.linalg.eigvalsh(t0).min(),
                               -np.linalg.eigvalsh(t1).min()), tol, params)
    rep.record("povm_complete", float(np.abs(t0 + t1 - np.eye(dim)).max()), tol, params)

    lam = 0.5 * (sig[0] @ t0 + sig[1] @ t1)
    rep.record("lambda_hermitian", float(np.abs(lam - lam.conj().T).max()), tol, params)
    lam_h = (lam + lam.conj().T) / 2
    worst = min(np.linalg.eigvalsh(lam_h - 0.5 * sg).min() for sg in sig)
    rep.record("holevo_condition", max(0.0, -float(worst)), tol, dict(params, min_eig=float(worst)))

    success = guess_success(sig[0], sig[1], t0, t1)
    D = tracedist_objective(s.d, s.beta, s.lam_plus, s.lam_minus)
    rep.record("success_vs_trace_distance", abs(success - (0.5 + D / 2)), 1e-10,
               dict(params, success=success))
    return rep
