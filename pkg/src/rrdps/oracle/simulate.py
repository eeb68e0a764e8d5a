"""Monte-Carlo rounds of the protocol under Eve's isometric attack.

Each round: Alice draws ``a``; Eve's isometry maps ``|mu_a>|E_0>`` to a
Bob-Eve pure state; Bob draws ``r`` and measures ``M^(r)_{ks}``; Eve
measures the conditioned ancilla with ``(T0, T1)`` built for ``(r, k)`` and
guesses ``s' = a_k xor a_{k+r}``.

The per-``(a, r)`` outcome tables are exact; only the draws are random, so a
run is fully determined by ``seed`` (numpy's PCG64 via ``default_rng``).
"""

import math
from dataclasses import dataclass

import numpy as np

from ..attack import as_spectral, bob_eve_state
from ..errors import DomainError, SizeError
from ..protocol import all_bitstrings
from .holevo import eve_povm

MAX_D = 6
MAX_ROUNDS = 10**7


@dataclass(frozen=True)
class SimReport:
    n: int
    seed: int
    ber: float
    ber_se: float
    k_freq: tuple
    k_se: tuple
    eve_success: float
    eve_success_se: float

    def as_dict(self) -> dict:
        return {"n": self.n, "seed": self.seed, "ber": self.ber, "ber_se": self.ber_se,
                "k_freq": list(self.k_freq), "k_se": list(self.k_se),
                "eve_success": self.eve_success, "eve_success_se": self.eve_success_se}


def _se(p, n):
    return math.sqrt(p * (1 - p) / n)


def outcome_tables(p):
    """Exact per-``(a, r)`` tables of Bob's and Eve's outcome probabilities.

    Returns ``(bits, prob, eve0)`` where ``bits[ai]`` is the ``ai``-th
    string, ``prob[ai, r-1, k, s]`` is Bob's probability of ``(k, s)`` and
    ``eve0[ai, r-1, k, s]`` is the chance that Eve then outputs 0.
    """
    s = as_spectral(p)
    d = s.d
    bits = np.array(all_bitstrings(d), dtype=int)
    povms = {(r, k): eve_povm(s, r, k)[0] for r in range(1, d) for k in range(d)}
    prob = np.zeros((len(bits), d - 1, d, 2))
    eve0 = np.zeros_like(prob)
    for ai, a in enumerate(bits):
        psi = bob_eve_state(s, a)
        for r in range(1, d):
            for k in range(d):
                l = (k + r) % d
                t0 = povms[(r, k)]
                for bit in (0, 1):
                    phi = (psi[k] + (-1) ** bit * psi[l]) / math.sqrt(2)
                    norm = float(np.vdot(phi, phi).real)
                    prob[ai, r - 1, k, bit] = norm / 2
                    if norm > 0:
                        eve0[ai, r - 1, k, bit] = float(np.vdot(phi, t0 @ phi).real) / norm
    return bits, prob, eve0


def simulate(n: int, p, seed: int = 0) -> SimReport:
    s = as_spectral(p)
    d = s.d
    if d > MAX_D:
        raise SizeError(f"simulation supports d <= {MAX_D}")
    if not 1 <= n <= MAX_ROUNDS:
        raise DomainError(f"rounds must lie in 1..{MAX_ROUNDS}")
    bits, prob, eve0 = outcome_tables(s)
    rng = np.random.default_rng(seed)

    ai = rng.integers(0, len(bits), size=n)
    r = rng.integers(1, d, size=n)
    table = prob[ai, r - 1].reshape(n, 2 * d)
    cdf = np.cumsum(table, axis=1)
    u = rng.random(n) * cdf[:, -1]
    flat = np.minimum((cdf <= u[:, None]).sum(axis=1), 2 * d - 1)
    k, bob_bit = flat // 2, flat % 2
    a = bits[ai]
    rows = np.arange(n)
    s_prime = a[rows, k] ^ a[rows, (k + r) % d]
    p0 = eve0[ai, r - 1, k, bob_bit]
    guess = (rng.random(n) >= p0).astype(int)

    ber = float(np.mean(bob_bit != s_prime))
    success = float(np.mean(guess == s_prime))
    freq = np.bincount(k, minlength=d) / n
    return SimReport(
        n=n, seed=seed, ber=ber, ber_se=_se(ber, n),
        k_freq=tuple(float(x) for x in freq),
        k_se=tuple(_se(float(x), n) for x in freq),
        eve_success=success, eve_success_se=_se(success, n))
