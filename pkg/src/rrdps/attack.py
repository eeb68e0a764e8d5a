"""Eve's noise-constrained attack on the symmetrised EPR pair.

The canonical parametrisation is :class:`SpectralParams` ``(d, beta,
lam_plus, lam_minus)``; :class:`NoiseParams` ``(d, beta, mu, V)`` maps onto
it one-to-one. Every function that takes attack parameters accepts either.

Eve's ancilla has dimension ``d^2`` with orthonormal basis ordered as
``E_0, E_1..E_{d-1}, E^+_{(tt')}, E^-_{(tt')}`` where the pairs ``t < t'``
are listed lexicographically. The same order indexes the eigenvectors
``alpha_0, alpha_1.., D^+_{tt'}, D^-_{tt'}`` of the Alice-Bob state.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

from .errors import DomainError, FeasibilityError, SizeError, ValidationError
from .numerics import DEFAULT_TOL, projector
from .protocol import alice_element, alpha_j, d_pm, mu_state, psi_bob

#: Largest d for objects with d^4 (ABE) or d^3 (BE) amplitudes.
MAX_D_PURIFICATION = 8
RADICAND_TOL = 1e-12


@dataclass(frozen=True)
class NoiseParams:
    d: int
    beta: float
    mu: float
    V: float


@dataclass(frozen=True)
class SpectralParams:
    d: int
    beta: float
    lam_plus: float
    lam_minus: float

    @property
    def lam1(self) -> float:
        d, b = self.d, self.beta
        return self.lam_plus + 2 * b / d - d * (self.lam_plus + self.lam_minus) / 2

    @property
    def lam0(self) -> float:
        d, b = self.d, self.beta
        return (1 - d) * self.lam_plus + 1 - 2 * b + 2 * b / d

    @property
    def lambdas(self):
        return self.lam0, self.lam1, self.lam_plus, self.lam_minus

    def normalisation(self) -> float:
        d = self.d
        return (self.lam0 + (d - 1) * self.lam1
                + d * (d - 1) / 2 * (self.lam_plus + self.lam_minus))


Params = Union[NoiseParams, SpectralParams]


def _check_d_beta(d, beta):
    if int(d) != d or d < 3:
        raise DomainError(f"d must be an integer >= 3, got {d}")
    if not 0 <= beta <= 0.5:
        raise DomainError(f"beta must lie in [0, 1/2], got {beta}")


def spectral_from_noise(p: NoiseParams, check: bool = True) -> SpectralParams:
    """Eigenvalues of the constrained Alice-Bob state from ``(mu, V)``.

    ``lam_pm = (2 beta - mu)/d^2 +- V/d``; ``lam0`` and ``lam1`` follow
    from these and ``beta`` (see :class:`SpectralParams`).
    """
    d, b = p.d, p.beta
    _check_d_beta(d, b)
    base = (2 * b - p.mu) / d**2
    s = SpectralParams(d, b, base + p.V / d, base - p.V / d)
    if check:
        check_feasible(s)
    return s


def noise_from_spectral(s: SpectralParams) -> NoiseParams:
    d = s.d
    V = d * (s.lam_plus - s.lam_minus) / 2
    mu = 2 * s.beta - d**2 * (s.lam_plus + s.lam_minus) / 2
    return NoiseParams(d, s.beta, mu, V)


def lambdas_from_noise(p: NoiseParams):
    """``(lam0, lam1, lam+, lam-)`` evaluated directly from ``(beta, mu, V)``."""
    d, b, mu, V = p.d, p.beta, p.mu, p.V
    base = (2 * b - mu) / d**2
    lam1 = base + (mu + V) / d
    return lam1 + 1 - 2 * b - V, lam1, base + V / d, base - V / d


def as_spectral(p: Params, check: bool = True) -> SpectralParams:
    if isinstance(p, SpectralParams):
        _check_d_beta(p.d, p.beta)
        if check:
            check_feasible(p)
        return p
    if isinstance(p, NoiseParams):
        return spectral_from_noise(p, check=check)
    raise TypeError(f"expected NoiseParams or SpectralParams, got {type(p)!r}")


def check_feasible(s: SpectralParams, tol: float = DEFAULT_TOL.eig) -> SpectralParams:
    names = ("lambda_0", "lambda_1", "lambda_+", "lambda_-")
    for name, lam in zip(names, s.lambdas):
        if lam < -tol:
            raise FeasibilityError(
                f"{name} = {lam:.3e} is negative for d={s.d}, beta={s.beta}",
                constraint=f"{name} >= 0")
    return s


def is_feasible(s: SpectralParams, tol: float = DEFAULT_TOL.eig) -> bool:
    return all(lam >= -tol for lam in s.lambdas)


# -- feasible region ---------------------------------------------------------

class LinearConstraint(NamedTuple):
    name: str
    a: float  # coefficient of lam_plus
    b: float  # coefficient of lam_minus
    c: float  # a*lam_plus + b*lam_minus <= c


@dataclass(frozen=True)
class FeasibleRegion:
    """The polygon of ``(lam_plus, lam_minus)`` with all four eigenvalues >= 0."""

    d: int
    beta: float
    constraints: tuple = field(repr=False)

    def contains(self, lam_plus, lam_minus, tol: float = 1e-15):
        lp = np.asarray(lam_plus, dtype=float)
        lm = np.asarray(lam_minus, dtype=float)
        ok = np.ones(np.broadcast(lp, lm).shape, dtype=bool)
        for con in self.constraints:
            ok &= con.a * lp + con.b * lm <= con.c + tol
        return ok if ok.ndim else bool(ok)

    def bounding_box(self):
        """``(lam_plus_max, lam_minus_max)`` from the lam_1 >= 0 triangle."""
        d, b = self.d, self.beta
        return 4 * b / (d * (d - 2)), 4 * b / d**2

    def vertices(self) -> np.ndarray:
        """Polygon corners, found as feasible pairwise constraint intersections."""
        pts = []
        for c1, c2 in itertools.combinations(self.constraints, 2):
            m = np.array([[c1.a, c1.b], [c2.a, c2.b]])
            if abs(np.linalg.det(m)) < 1e-300:
                continue
            x = np.linalg.solve(m, [c1.c, c2.c])
            if self.contains(x[0], x[1], tol=1e-14):
                pts.append(np.clip(x, 0, None))
        if not pts:
            return np.zeros((0, 2))
        pts = np.unique(np.round(np.array(pts), 15), axis=0)
        return pts

    def lambda1_boundary(self, lam_minus):
        """``lam_plus`` on the ``lam_1 = 0`` edge."""
        d, b = self.d, self.beta
        return 4 * b / (d * (d - 2)) - d / (d - 2) * np.asarray(lam_minus)

    def lambda0_active(self) -> bool:
        """Whether ``lam_0 >= 0`` cuts the ``lam_1`` triangle."""
        lp_max, _ = self.bounding_box()
        return lp_max > 1 / (self.d - 1) - 2 * self.beta / self.d


def feasible_region(d: int, beta: float) -> FeasibleRegion:
    _check_d_beta(d, beta)
    cons = (
        LinearConstraint("lambda_+ >= 0", -1.0, 0.0, 0.0),
        LinearConstraint("lambda_- >= 0", 0.0, -1.0, 0.0),
        # lam1 = 2b/d - (d-2)/2 lam+ - d/2 lam-
        LinearConstraint("lambda_1 >= 0", (d - 2) / 2, d / 2, 2 * beta / d),
        # lam0 = 1 - 2b + 2b/d - (d-1) lam+
        LinearConstraint("lambda_0 >= 0", d - 1.0, 0.0, 1 - 2 * beta + 2 * beta / d),
    )
    return FeasibleRegion(int(d), float(beta), cons)


def random_feasible(d: int, rng, beta=None) -> SpectralParams:
    """Uniform draw from the feasible polygon (beta uniform on [0, 1/2] if None)."""
    if beta is None:
        beta = float(rng.uniform(0, 0.5))
    reg = feasible_region(d, beta)
    lp_max, lm_max = reg.bounding_box()
    while True:
        lp, lm = rng.uniform(0, lp_max), rng.uniform(0, lm_max)
        if reg.contains(lp, lm):
            return SpectralParams(d, beta, float(lp), float(lm))


# -- Alice-Bob state ---------------------------------------------------------

def rho_ab(p: Params) -> np.ndarray:
    """The symmetrised, noise-constrained two-qudit state.

    ``(1-2b-V)|a0><a0| + (V/d) sum |tt'><t't| + ((2b-mu)/d^2) 1
    + (mu/d) sum_t |tt><tt|``
    """
    s = as_spectral(p)
    n = noise_from_spectral(s)
    d, b, mu, V = n.d, n.beta, n.mu, n.V
    dim = d * d
    a0 = alpha_j(d, 0)
    swap = np.zeros((dim, dim))
    idx = np.arange(dim)
    swap[idx, (idx % d) * d + idx // d] = 1.0
    diag = np.zeros((dim, dim))
    t = np.arange(d)
    diag[t * d + t, t * d + t] = 1.0
    return ((1 - 2 * b - V) * projector(a0) + (V / d) * swap
            + ((2 * b - mu) / d**2) * np.eye(dim) + (mu / d) * diag)


def pair_list(d: int):
    return [(t, t2) for t in range(d) for t2 in range(t + 1, d)]


@lru_cache(maxsize=None)
def _pair_index(d: int):
    return {pair: i for i, pair in enumerate(pair_list(d))}


def eve_index(d: int, kind: str, j=None) -> int:
    """Position of an Eve basis vector: ``kind`` in {"0", "j", "+", "-"}."""
    npairs = d * (d - 1) // 2
    if kind == "0":
        return 0
    if kind == "j":
        return j
    t, t2 = sorted(j)
    p = _pair_index(d)[(t, t2)]
    if kind == "+":
        return d + p
    if kind == "-":
        return d + npairs + p
    raise ValueError(kind)


def ab_eigenbasis(d: int):
    """Columns ``alpha_0..alpha_{d-1}, D^+_{pairs}, D^-_{pairs}``, with
    multiplicity labels ``0, 1, +, -``."""
    cols, labels = [], []
    for j in range(d):
        cols.append(alpha_j(d, j))
        labels.append("0" if j == 0 else "1")
    for sign, lab in ((1, "+"), (-1, "-")):
        for t, t2 in pair_list(d):
            cols.append(d_pm(d, t, t2, sign))
            labels.append(lab)
    return np.column_stack(cols), tuple(labels)


def spectrum_weights(s: SpectralParams) -> np.ndarray:
    """Eigenvalue attached to each column of :func:`ab_eigenbasis`."""
    lam = {"0": s.lam0, "1": s.lam1, "+": s.lam_plus, "-": s.lam_minus}
    _, labels = ab_eigenbasis(s.d)
    return np.array([lam[x] for x in labels])


def _sqrt(x):
    if x < -RADICAND_TOL:
        raise FeasibilityError(f"negative radicand {x:.3e}", constraint="radicand >= 0")
    return np.sqrt(max(x, 0.0))


def purification(p: Params) -> np.ndarray:
    """``|Psi^{ABE}>`` as a length ``d^4`` vector, ordering A (x) B (x) E."""
    s = as_spectral(p)
    d = s.d
    if d > MAX_D_PURIFICATION:
        raise SizeError(f"purification needs d <= {MAX_D_PURIFICATION}")
    basis, _ = ab_eigenbasis(d)
    amps = np.array([_sqrt(x) for x in spectrum_weights(s)])
    # column i of `basis` pairs with Eve basis vector i
    psi = (basis * amps[None, :]).reshape(d * d, d * d)
    return psi.reshape(-1)


def w_vector(p: Params, t: int, t2: int) -> np.ndarray:
    """Eve's unnormalised vector ``<t t2|Psi^{ABE}>`` from its closed form."""
    s = as_spectral(p, check=False)
    d = s.d
    w = np.zeros(d * d, dtype=complex)
    t, t2 = t % d, t2 % d
    if t == t2:
        w[0] = _sqrt(s.lam0 / d)
        j = np.arange(1, d)
        w[j] = _sqrt(s.lam1 / d) * np.exp(2j * np.pi * j * t / d)
    else:
        w[eve_index(d, "+", (t, t2))] = _sqrt(s.lam_plus / 2)
        w[eve_index(d, "-", (t, t2))] = np.sign(t2 - t) * _sqrt(s.lam_minus / 2)
    return w


# -- Eve's conditional states ------------------------------------------------

@dataclass(frozen=True)
class EveDecomposition:
    """Spectrum and relevant basis of Eve's state for one ``(r, k)``."""

    d: int
    r: int
    k: int
    xi0: float
    xi1: float
    xi2: float
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    bulk: np.ndarray  # columns: normalised w_{tk}, w_{t,k+r} with t != k, k+r
    alpha: float
    phi: float
    coef_A: float  # xi2 - d lam+/2
    coef_C: float  # d lam+/2
    coef_B: float  # xi1 - d lam-/2
    coef_D: float  # d lam-/2

    @property
    def eigenvalues(self) -> np.ndarray:
        """Spectrum of either ``sigma_{s'}``, ascending, padded to ``d^2``."""
        d = self.d
        vals = np.r_[np.full(2 * (d - 2), self.xi0), self.xi1, self.xi2]
        return np.sort(np.r_[vals, np.zeros(d * d - vals.size)])


def xi_values(s: SpectralParams):
    d, b = s.d, s.beta
    S = s.lam_plus + s.lam_minus
    return (d / 2 * S / 2,
            b - d / 2 * (d / 2 - 1) * S,
            1 - b - d / 2 * (d / 2 - 1) * S)


def _unit(v, fallback):
    n = np.linalg.norm(v)
    if n <= 1e-14:
        return fallback
    return v / n


def eve_decomposition(p: Params, r: int, k: int) -> EveDecomposition:
    s = as_spectral(p)
    d = s.d
    if not 1 <= r <= d - 1:
        raise DomainError(f"r must lie in 1..{d - 1}")
    k = k % d
    l = (k + r) % d
    xi0, xi1, xi2 = xi_values(s)
    for name, x in (("xi_0", xi0), ("xi_1", xi1), ("xi_2", xi2)):
        if x < -DEFAULT_TOL.eig:
            raise FeasibilityError(f"{name} = {x:.3e} < 0", constraint=f"{name} >= 0")

    dim = d * d
    e = np.eye(dim, dtype=complex)
    j = np.arange(1, d)
    fourier_diff = np.zeros(dim, dtype=complex)
    fourier_diff[j] = np.exp(2j * np.pi * j * k / d) - np.exp(2j * np.pi * j * l / d)
    sgn = np.sign(l - k)

    wkk, wll = w_vector(s, k, k), w_vector(s, l, l)
    wkl, wlk = w_vector(s, k, l), w_vector(s, l, k)
    A = _unit(wkk + wll, e[0])
    B = _unit(wkk - wll, fourier_diff / np.linalg.norm(fourier_diff))
    C = _unit(wkl + wlk, e[eve_index(d, "+", (k, l))])
    D = _unit(wkl - wlk, sgn * e[eve_index(d, "-", (k, l))])

    bulk = []
    for t in range(d):
        if t in (k, l):
            continue
        for col in (k, l):
            fb = e[eve_index(d, "+", (t, col))]
            bulk.append(_unit(w_vector(s, t, col), fb))
    bulk = np.column_stack(bulk) if bulk else np.zeros((dim, 0))

    n_diag = s.lam0 / d + (d - 1) * s.lam1 / d
    cos2a = 1 - d * s.lam1 / (s.lam0 + (d - 1) * s.lam1) if n_diag > 0 else 1.0
    S = s.lam_plus + s.lam_minus
    cos2p = 1 - 2 * s.lam_minus / S if S > 0 else 1.0
    alpha = 0.5 * np.arccos(np.clip(cos2a, -1, 1))
    phi = 0.5 * np.arccos(np.clip(cos2p, -1, 1))

    cC = d * s.lam_plus / 2
    cD = d * s.lam_minus / 2
    return EveDecomposition(
        d=d, r=r, k=k, xi0=xi0, xi1=xi1, xi2=xi2, A=A, B=B, C=C, D=D,
        bulk=bulk, alpha=float(alpha), phi=float(phi),
        coef_A=max(xi2 - cC, 0.0), coef_C=cC, coef_B=max(xi1 - cD, 0.0), coef_D=cD)


def _bulk_part(dec: EveDecomposition, weight: float) -> np.ndarray:
    return weight * dec.bulk @ dec.bulk.conj().T


def eve_state_closed(p: Params, r: int, k: int, s_prime: int):
    """Eve's state given Alice's bit ``s'``, assembled from its diagonal form.

    Returns ``(decomposition, sigma)``. ``sigma`` is
    ``xi0 * (bulk projectors) + |u2><u2| + |u1><u1|`` with
    ``u2 = sqrt(xi2 - d lam+/2) A + (-1)^{s'} sqrt(d lam+/2) C`` and
    ``u1 = sqrt(xi1 - d lam-/2) B - (-1)^{s'} sqrt(d lam-/2) D``.
    """
    dec = eve_decomposition(p, r, k)
    sign = (-1) ** s_prime
    u2 = np.sqrt(dec.coef_A) * dec.A + sign * np.sqrt(dec.coef_C) * dec.C
    u1 = np.sqrt(dec.coef_B) * dec.B - sign * np.sqrt(dec.coef_D) * dec.D
    sigma = _bulk_part(dec, dec.xi0) + projector(u2) + projector(u1)
    return dec, sigma


def sigma_avg(p: Params, r: int, k: int) -> np.ndarray:
    """``(sigma_0 + sigma_1)/2`` built from the diagonal blocks only."""
    dec = eve_decomposition(p, r, k)
    return (_bulk_part(dec, dec.xi0)
            + dec.coef_A * projector(dec.A) + dec.coef_C * projector(dec.C)
            + dec.coef_B * projector(dec.B) + dec.coef_D * projector(dec.D))


def sigma_diff(p: Params, r: int, k: int) -> np.ndarray:
    """``(sigma_0 - sigma_1)/2`` as the sum of the AC and BD cross terms."""
    s = as_spectral(p)
    d, b = s.d, s.beta
    lp, lm = s.lam_plus, s.lam_minus
    S = lp + lm
    dec = eve_decomposition(s, r, k)
    c_ac = 0.5 * _sqrt(d * lp) * _sqrt(d * lm + 2 * (1 - b) - d**2 / 2 * S)
    c_bd = 0.5 * _sqrt(d * lm) * _sqrt(d * lp + 2 * b - d**2 / 2 * S)
    ac = np.outer(dec.A, dec.C.conj())
    bd = np.outer(dec.B, dec.D.conj())
    return c_ac * (ac + ac.conj().T) - c_bd * (bd + bd.conj().T)


def _check_small(d):
    if d > MAX_D_PURIFICATION:
        raise SizeError(f"brute-force construction needs d <= {MAX_D_PURIFICATION}")


def _eve_from_operator(W: np.ndarray, op: np.ndarray) -> np.ndarray:
    # tr_AB[|Psi><Psi| (op (x) 1_E)], W[x, e] = <x|Psi> components
    return W.T @ op.T @ W.conj()


def eve_state_bruteforce(p: Params, r: int, k: int, s_prime: int,
                         route: str = "both", agree_tol: float = 1e-10):
    """Eve's state from the purification by explicit measurement.

    ``route="sum"`` enumerates the ``2^{d-1}`` strings ``a`` with
    ``a_k xor a_{k+r} = s'`` and both ``s``, normalising each post-measurement
    state ``tr_AB[|Psi><Psi| (Q_a (x) M_ks (x) 1)] / P_{aks|r}`` and
    weighting it by ``Pr[s | a, k]``. ``route="average"`` replaces the
    a-sum by the averaged operator ``1/d + (-1)^{s'}(|k><k+r| + h.c.)/d``.
    ``"both"`` computes the two and raises if they differ by more than
    ``agree_tol``.
    """
    s = as_spectral(p)
    d = s.d
    _check_small(d)
    if not 1 <= r <= d - 1:
        raise DomainError(f"r must lie in 1..{d - 1}")
    k = k % d
    l = (k + r) % d
    W = purification(s).reshape(d * d, d * d)

    def by_sum():
        total = np.zeros((d * d, d * d), dtype=complex)
        count = 0
        for a in itertools.product((0, 1), repeat=d):
            if a[k] ^ a[l] != s_prime:
                continue
            count += 1
            qa = alice_element(a)
            states, probs = [], []
            for bit in (0, 1):
                m = 0.5 * projector(psi_bob(d, r, k, bit))
                unnorm = _eve_from_operator(W, np.kron(qa, m))
                pr = np.trace(unnorm).real
                probs.append(pr)
                states.append(unnorm / pr if pr > 0 else np.zeros_like(unnorm))
            probs = np.array(probs)
            cond = probs / probs.sum()
            total += sum(c * st for c, st in zip(cond, states))
        return total / count

    def by_average():
        # sum of Q_a over the 2^{d-1} admissible a
        qsum = np.eye(d, dtype=complex) / 2
        qsum[k, l] += (-1) ** s_prime / 2
        qsum[l, k] += (-1) ** s_prime / 2
        bob = np.zeros((d, d))
        bob[k, k] = bob[l, l] = 0.5
        # every Pr[a, k | r] equals 1/(2^d d) for the symmetric state
        return 2 * d * _eve_from_operator(W, np.kron(qsum, bob))

    if route == "sum":
        return by_sum()
    if route == "average":
        return by_average()
    if route == "both":
        x, y = by_sum(), by_average()
        dev = np.abs(x - y).max()
        if dev > agree_tol:
            raise ValidationError(f"a-sum and a-average routes differ by {dev:.2e}")
        return x
    raise ValueError(f"unknown route {route!r}")


# -- Bob-Eve isometry --------------------------------------------------------

def omega_column(p: Params, t: int) -> np.ndarray:
    """``|Omega_t> = U(|t>|E_0>)`` as a length ``d^3`` vector (B (x) E)."""
    s = as_spectral(p)
    d = s.d
    _check_small(d)
    out = np.zeros((d, d * d), dtype=complex)
    j = np.arange(1, d)
    out[t, 0] = _sqrt(s.lam0)
    out[t, j] = _sqrt(s.lam1) * np.exp(2j * np.pi * j * t / d)
    cp, cm = _sqrt(d * s.lam_plus / 2), _sqrt(d * s.lam_minus / 2)
    for t2 in range(d):
        if t2 == t:
            continue
        out[t2, eve_index(d, "+", (t, t2))] += cp
        out[t2, eve_index(d, "-", (t, t2))] += cm * np.sign(t2 - t)
    return out.reshape(-1)


def omega_matrix(p: Params) -> np.ndarray:
    """Isometry columns ``[Omega_0 .. Omega_{d-1}]``, shape ``(d^3, d)``."""
    s = as_spectral(p)
    return np.column_stack([omega_column(s, t) for t in range(s.d)])


def attack_isometry_check(p: Params) -> float:
    """Max deviation of the Gram matrix of the Omega columns from identity."""
    om = omega_matrix(p)
    return float(np.abs(om.conj().T @ om - np.eye(om.shape[1])).max())


def bob_eve_state(p: Params, a) -> np.ndarray:
    """``U(|mu_a>|E_0>)`` as a ``(d, d^2)`` array indexed [Bob, Eve]."""
    om = omega_matrix(p)
    v = om @ mu_state(a)
    d = len(a)
    return v.reshape(d, d * d)


def eve_vector_A(p: Params, a, t: int) -> np.ndarray:
    """Eve's vector coupled to ``|t>`` in ``U|mu_a>|E_0>``.

    The ``E^-`` coefficient carries ``sgn(t - t')`` so that
    ``U|mu_a>|E_0> = d^{-1/2} sum_t (-1)^{a_t} |t> |A^a_t>`` holds exactly.
    The Gram matrix (unit diagonal, ``1 - 2 beta`` elsewhere) does not depend
    on this sign.
    """
    s = as_spectral(p)
    d = s.d
    a = np.asarray(a, dtype=int)
    v = np.zeros(d * d, dtype=complex)
    j = np.arange(1, d)
    v[0] = _sqrt(s.lam0)
    v[j] = _sqrt(s.lam1) * np.exp(2j * np.pi * j * t / d)
    cp, cm = _sqrt(s.lam_plus), _sqrt(s.lam_minus)
    for t2 in range(d):
        if t2 == t:
            continue
        ph = (-1) ** (a[t] + a[t2]) * np.sqrt(d / 2)
        v[eve_index(d, "+", (t, t2))] += ph * cp
        v[eve_index(d, "-", (t, t2))] += ph * cm * np.sign(t - t2)
    return v


def bob_reduced(p: Params, a) -> np.ndarray:
    """Bob's marginal after the attack: trace of Eve out of ``U|mu_a>|E_0>``."""
    m = bob_eve_state(p, a)
    return m @ m.conj().T


__all__ = [
    "EveDecomposition", "FeasibleRegion", "NoiseParams", "SpectralParams",
    "ab_eigenbasis", "as_spectral", "attack_isometry_check", "bob_eve_state",
    "bob_reduced", "check_feasible", "eve_decomposition", "eve_index",
    "eve_state_bruteforce", "eve_state_closed", "eve_vector_A", "feasible_region",
    "is_feasible", "lambdas_from_noise", "noise_from_spectral", "omega_column",
    "omega_matrix", "purification", "random_feasible", "rho_ab", "sigma_avg",
    "sigma_diff", "spectral_from_noise", "spectrum_weights", "w_vector",
    "xi_values",
]
