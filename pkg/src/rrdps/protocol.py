"""RRDPS protocol objects: states, POVMs, the EPR state and symmetrisation.

Time indices run over ``0..d-1`` and all index arithmetic is modulo ``d``.
Two-qudit operators use the ordering ``|t t'> -> t*d + t'`` with Alice's
qudit first.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import DimensionError, DomainError, SizeError, ValidationError
from .numerics import DEFAULT_TOL, as_matrix, projector, validate_density

#: ``alice_povm`` materialises ``2**d`` elements; refuse beyond this.
MAX_ALICE_D = 12
#: Largest ``d`` for which ``symmetrize`` averages over all ``d!`` permutations.
MAX_GROUP_AVERAGE_D = 6


class BobOutcome(NamedTuple):
    k: int
    s: int


class AliceOutcome(NamedTuple):
    z: tuple


class RoundOutcome(NamedTuple):
    d: int
    k: int
    r: int
    s: int
    s_prime: int

    @property
    def ell(self) -> int:
        return (self.k + self.r) % self.d


@dataclass(frozen=True)
class Povm:
    labels: tuple
    elements: np.ndarray  # shape (n_outcomes, dim, dim)

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    def completeness_error(self) -> float:
        total = self.elements.sum(axis=0)
        return float(np.abs(total - np.eye(self.dim)).max())

    def check(self, tol=DEFAULT_TOL, completeness_tol=1e-10):
        """Raise ValidationError unless every element is PSD and they sum to 1."""
        for lab, el in zip(self.labels, self.elements):
            if np.abs(el - el.conj().T).max() > tol.herm:
                raise ValidationError(f"POVM element {lab} is not Hermitian")
            if np.linalg.eigvalsh(el).min() < -tol.eig:
                raise ValidationError(f"POVM element {lab} is not PSD")
        err = self.completeness_error()
        if err > completeness_tol:
            raise ValidationError(f"POVM elements sum to identity only to {err:.2e}")
        return self

    def probabilities(self, state) -> np.ndarray:
        """Born probabilities for a state vector or density matrix."""
        state = np.asarray(state, dtype=complex)
        if state.ndim == 1:
            if state.shape[0] != self.dim:
                raise DimensionError("state and POVM dimensions differ")
            p = np.einsum("i,nij,j->n", state.conj(), self.elements, state)
        else:
            state = as_matrix(state)
            if state.shape[0] != self.dim:
                raise DimensionError("state and POVM dimensions differ")
            p = np.einsum("nij,ji->n", self.elements, state)
        return p.real

    def index(self, label: Any) -> int:
        return self.labels.index(label)


def _check_d(d):
    if int(d) != d or d < 3:
        raise DomainError(f"qudit dimension must be an integer >= 3, got {d}")
    return int(d)


def _bits(a) -> np.ndarray:
    a = np.asarray(a, dtype=int).ravel()
    if np.any((a != 0) & (a != 1)):
        raise DomainError("phase string must contain only 0/1")
    return a


def mu_state(a: Sequence[int]) -> np.ndarray:
    """Alice's single-photon state ``(1/sqrt d) sum_t (-1)^{a_t} |t>``."""
    a = _bits(a)
    _check_d(len(a))
    return ((-1.0) ** a / np.sqrt(len(a))).astype(complex)


def psi_bob(d: int, r: int, k: int, s: int) -> np.ndarray:
    """``(|k> + (-1)^s |k+r>) / sqrt 2``."""
    v = np.zeros(d, dtype=complex)
    v[k % d] += 1 / np.sqrt(2)
    v[(k + r) % d] += (-1) ** s / np.sqrt(2)
    return v


def bob_povm(d: int, r: int) -> Povm:
    """Bob's interference measurement with delay ``r``: 2d outcomes ``(k, s)``."""
    d = _check_d(d)
    if not 1 <= r <= d - 1:
        raise DomainError(f"r must lie in 1..{d - 1}, got {r}")
    labels, els = [], []
    for k in range(d):
        for s in (0, 1):
            labels.append(BobOutcome(k, s))
            els.append(0.5 * projector(psi_bob(d, r, k, s)))
    return Povm(tuple(labels), np.array(els))


def all_bitstrings(d: int):
    return [tuple(bits) for bits in itertools.product((0, 1), repeat=d)]


def alice_povm(d: int) -> Povm:
    """Alice's EPR-version measurement ``Q_z = (d / 2^d) |mu_z><mu_z|``."""
    d = _check_d(d)
    if d > MAX_ALICE_D:
        raise SizeError(f"alice_povm materialises 2^{d} elements; cap is d={MAX_ALICE_D}")
    labels = [AliceOutcome(z) for z in all_bitstrings(d)]
    els = [(d / 2**d) * projector(mu_state(lab.z)) for lab in labels]
    return Povm(tuple(labels), np.array(els))


def alice_element(a: Sequence[int]) -> np.ndarray:
    a = _bits(a)
    d = len(a)
    return (d / 2**d) * projector(mu_state(a))


def alpha_j(d: int, j: int) -> np.ndarray:
    """``(1/sqrt d) sum_t exp(2 pi i j t / d) |tt>``."""
    d = _check_d(d)
    if not 0 <= j < d:
        raise DomainError(f"j must lie in 0..{d - 1}")
    v = np.zeros(d * d, dtype=complex)
    t = np.arange(d)
    v[t * d + t] = np.exp(2j * np.pi * j * t / d) / np.sqrt(d)
    return v


def epr_state(d: int) -> np.ndarray:
    return alpha_j(d, 0)


def d_pm(d: int, t: int, t2: int, sign: int) -> np.ndarray:
    """``(|t t2> + sign |t2 t>) / sqrt 2`` for ``t < t2``."""
    d = _check_d(d)
    if not (0 <= t < t2 < d):
        raise DomainError(f"need 0 <= t < t2 < d, got t={t}, t2={t2}")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    v = np.zeros(d * d, dtype=complex)
    v[t * d + t2] = 1 / np.sqrt(2)
    v[t2 * d + t] = sign / np.sqrt(2)
    return v


def _dim_of_two_qudit(rho) -> int:
    n = rho.shape[0]
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise DimensionError(f"dimension {n} is not a square d^2")
    return d


def joint_probability(rho, a, k: int, s: int, r: int) -> float:
    """``tr[(Q_a (x) M^(r)_{ks}) rho]`` for a two-qudit state."""
    rho = as_matrix(rho)
    a = _bits(a)
    d = len(a)
    if rho.shape[0] != d * d:
        raise DimensionError(f"state dimension {rho.shape[0]} != d^2 = {d * d}")
    if not 1 <= r <= d - 1:
        raise DomainError(f"r must lie in 1..{d - 1}")
    op = np.kron(alice_element(a), 0.5 * projector(psi_bob(d, r, k, s)))
    return float(np.trace(op @ rho).real)


def joint_probability_components(rho, a, k: int, s: int, r: int) -> float:
    """The same probability written through the matrix components of ``rho``.

    ``(1 / (4 2^d)) sum_{t,tau} (-1)^{a_t+a_tau} [rho^{tk}_{tau k} +
    rho^{t,k+r}_{tau,k+r} + (-1)^s (rho^{tk}_{tau,k+r} + rho^{t,k+r}_{tau k})]``
    """
    rho = as_matrix(rho)
    a = _bits(a)
    d = len(a)
    t4 = rho.reshape(d, d, d, d)  # [t, t', tau, tau']
    l = (k + r) % d
    sign = np.outer((-1.0) ** a, (-1.0) ** a)
    inner = (t4[:, k, :, k] + t4[:, l, :, l]
             + (-1) ** s * (t4[:, k, :, l] + t4[:, l, :, k]))
    return float((sign * inner).sum().real / (4 * 2**d))


def constraint_probability(d: int, beta: float, a, k: int, s: int, r: int) -> float:
    """Target ``P_{aks|r}`` when every (a, k, r) shows bit error rate beta."""
    a = _bits(a)
    ok = s == (a[k % d] ^ a[(k + r) % d])
    return ((1 - beta) if ok else beta) / (2**d * d)


def _flip_average(rho, d):
    out = np.zeros_like(rho)
    idx = np.arange(d * d)
    ta, tb = idx // d, idx % d
    for c in itertools.product((0, 1), repeat=d):
        c = np.array(c)
        ph = (-1.0) ** (c[ta] + c[tb])
        out += ph[:, None] * rho * ph[None, :]
    return out / 2**d


def symmetrize_group(rho) -> np.ndarray:
    """Explicit average over all ``d!`` simultaneous permutations, then all
    ``2^d`` simultaneous phase flips. Only for ``d <= 6``."""
    rho = as_matrix(rho)
    d = _dim_of_two_qudit(rho)
    if d > MAX_GROUP_AVERAGE_D:
        raise SizeError(f"group average needs d <= {MAX_GROUP_AVERAGE_D}")
    out = np.zeros_like(rho)
    idx = np.arange(d * d)
    ta, tb = idx // d, idx % d
    for pi in itertools.permutations(range(d)):
        pi = np.array(pi)
        mapped = pi[ta] * d + pi[tb]
        out += rho[np.ix_(mapped, mapped)]
    out /= math.factorial(d)
    return _flip_average(out, d)


def surviving_constants(rho):
    """Orbit means ``(u, x, w, y)`` of ``rho^{ss}_{ss}``, ``rho^{ss}_{tt}``,
    ``rho^{st}_{st}``, ``rho^{st}_{ts}`` (``s != t``)."""
    rho = as_matrix(rho)
    d = _dim_of_two_qudit(rho)
    t4 = rho.reshape(d, d, d, d)
    s = np.arange(d)
    off = ~np.eye(d, dtype=bool)
    u = t4[s, s, s, s].mean()
    x = t4[s[:, None], s[:, None], s[None, :], s[None, :]][off].mean()
    w = t4[s[:, None], s[None, :], s[:, None], s[None, :]][off].mean()
    y = t4[s[:, None], s[None, :], s[None, :], s[:, None]][off].mean()
    return tuple(float(v.real) for v in (u, x, w, y))


def symmetric_state(d: int, u: float, x: float, w: float, y: float) -> np.ndarray:
    """Assemble the four-constant symmetrised two-qudit operator."""
    t4 = np.zeros((d, d, d, d), dtype=complex)
    for s in range(d):
        t4[s, s, s, s] = u
        for t in range(d):
            if t != s:
                t4[s, s, t, t] = x
                t4[s, t, s, t] = w
                t4[s, t, t, s] = y
    return t4.reshape(d * d, d * d)


def symmetrize(rho, method: str = "auto") -> np.ndarray:
    """Apply the permutation and phase-flip twirl of the EPR protocol.

    ``method="group"`` averages explicitly over the group (``d <= 6``);
    ``method="orbit"`` projects onto the four surviving constants, which is
    the same map in closed form and works for any ``d``. ``"auto"`` picks
    the group average when it is allowed.
    """
    rho = as_matrix(rho)
    d = _dim_of_two_qudit(rho)
    if method == "auto":
        method = "group" if d <= MAX_GROUP_AVERAGE_D else "orbit"
    if method == "group":
        return symmetrize_group(rho)
    if method == "orbit":
        return symmetric_state(d, *surviving_constants(rho))
    raise ValueError(f"unknown method {method!r}")


def off_family_max(rho) -> float:
    """Largest entry of ``rho`` outside the four surviving component families."""
    rho = as_matrix(rho)
    d = _dim_of_two_qudit(rho)
    mask = np.abs(symmetric_state(d, 1, 1, 1, 1)) > 0
    return float(np.abs(rho[~mask]).max(initial=0.0))


def measure(state, povm: Povm, rng=None, seed=None, prob_tol=1e-9):
    """Sample one outcome label by inverse CDF over the POVM's label order."""
    p = povm.probabilities(state)
    if abs(p.sum() - 1) > prob_tol or p.min() < -prob_tol:
        raise ValidationError(f"Born probabilities sum to {p.sum():.12f}")
    if rng is None:
        rng = np.random.default_rng(seed)
    cdf = np.cumsum(np.clip(p, 0, None))
    i = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return povm.labels[min(i, len(p) - 1)]


def rrdps_round_distribution(d: int, channel=None):
    """Exact law of ``(k, s, s')`` per ``r`` in plain RRDPS.

    ``channel`` is a list of Kraus operators acting on Bob's qudit
    (identity when omitted). Returns an array ``P[r-1, k, s, s']``.
    """
    kraus = [np.eye(d)] if channel is None else [np.asarray(K) for K in channel]
    out = np.zeros((d - 1, d, 2, 2))
    for a in all_bitstrings(d):
        rho = projector(mu_state(a))
        rho = sum(K @ rho @ K.conj().T for K in kraus)
        for r in range(1, d):
            povm = bob_povm(d, r)
            p = povm.probabilities(rho)
            for (k, s), pk in zip(povm.labels, p):
                sp = a[k] ^ a[(k + r) % d]
                out[r - 1, k, s, sp] += pk / 2**d
    return out


def phase_flip_round_distribution(d: int, channel=None):
    """Law of ``(k, s, s')`` in the phase-flip variant of the protocol.

    Alice flips ``|t> -> (-1)^{c_t}|t>`` before sending, the channel acts,
    Bob undoes the flips and measures. Enumerates all ``a`` and ``c``.
    """
    kraus = [np.eye(d)] if channel is None else [np.asarray(K) for K in channel]
    out = np.zeros((d - 1, d, 2, 2))
    strings = all_bitstrings(d)
    for a in strings:
        for c in strings:
            flip = np.diag((-1.0) ** np.array(c))
            rho = projector(flip @ mu_state(a))
            rho = sum(K @ rho @ K.conj().T for K in kraus)
            rho = flip @ rho @ flip
            for r in range(1, d):
                povm = bob_povm(d, r)
                p = povm.probabilities(rho)
                for (k, s), pk in zip(povm.labels, p):
                    sp = a[k] ^ a[(k + r) % d]
                    out[r - 1, k, s, sp] += pk / 4**d
    return out


def relabelled_flip_distribution(d: int, channel=None):
    """Flip variant rewritten without physical flips.

    Alice prepares ``|mu_{a xor c}>``; Bob measures directly and reports
    ``s xor c_k xor c_l``; Alice keeps ``a_k xor a_l``.
    """
    kraus = [np.eye(d)] if channel is None else [np.asarray(K) for K in channel]
    out = np.zeros((d - 1, d, 2, 2))
    strings = all_bitstrings(d)
    for a in strings:
        for c in strings:
            ac = tuple(x ^ y for x, y in zip(a, c))
            rho = projector(mu_state(ac))
            rho = sum(K @ rho @ K.conj().T for K in kraus)
            for r in range(1, d):
                povm = bob_povm(d, r)
                p = povm.probabilities(rho)
                for (k, s), pk in zip(povm.labels, p):
                    l = (k + r) % d
                    out[r - 1, k, s ^ c[k] ^ c[l], a[k] ^ a[l]] += pk / 4**d
    return out


__all__ = [
    "AliceOutcome", "BobOutcome", "Povm", "RoundOutcome", "alice_element",
    "alice_povm", "all_bitstrings", "alpha_j", "bob_povm", "constraint_probability",
    "d_pm", "epr_state", "joint_probability", "joint_probability_components",
    "measure", "mu_state", "off_family_max", "phase_flip_round_distribution",
    "psi_bob", "relabelled_flip_distribution", "rrdps_round_distribution",
    "surviving_constants", "symmetric_state", "symmetrize", "symmetrize_group",
    "validate_density",
]
