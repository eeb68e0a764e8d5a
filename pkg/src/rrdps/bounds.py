"""Closed-form leakage bounds, saturation points and key-rate formulas.

Four per-round leakage measures about Alice's secret bit are provided, each
maximised over Eve's attack parameters ``(lam_plus, lam_minus)``:

* ``statdist_leak``  -- ``2 log T``, the trace-distance privacy-amplification cost
* ``i_ae``           -- von Neumann (Holevo) leakage
* ``min_entropy_leak`` -- ``1 - H_min(S'|E)``
* ``accessible_info`` -- ``1 - h(1/2 + D/2)``

Each one rises from 0 at ``beta = 0`` and is constant above its own
saturation point (``beta_star``, ``beta_zero``, ``beta_sat``). Scalar
functions of ``beta`` accept arrays and broadcast.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, RootError
from .numerics import binary_entropy

ROOT_XTOL = 1e-14
UNIQUENESS_GRID = 1000


def _check_d(d):
    if int(d) != d or d < 3:
        raise DomainError(f"d must be an integer >= 3, got {d}")
    return int(d)


def _check_beta(beta):
    b = np.asarray(beta, dtype=float)
    if np.any(np.isnan(b)) or np.any(b < 0) or np.any(b > 0.5):
        raise DomainError("beta must lie in [0, 1/2]")
    return b


def _out(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def _sqrt0(x):
    return np.sqrt(np.maximum(x, 0.0))


# -- objectives over (lam_plus, lam_minus) -----------------------------------

def _xis(d, beta, lp, lm):
    S = lp + lm
    half = d / 2 * (d / 2 - 1) * S
    return d * S / 4, beta - half, 1 - beta - half


def T_objective(d, beta, lam_plus, lam_minus):
    """``T(lam_plus, lam_minus)``: ``tr sqrt((sigma_0^2 + sigma_1^2)/2)``.

    ``2(d-2) xi0 + sqrt(xi2 (xi2 - d lam+/2)) + sqrt(xi2 d lam+/2)
    + sqrt(xi1 (xi1 - d lam-/2)) + sqrt(xi1 d lam-/2)``
    """
    d = _check_d(d)
    lp, lm = np.asarray(lam_plus, float), np.asarray(lam_minus, float)
    x0, x1, x2 = _xis(d, beta, lp, lm)
    cp, cm = d * lp / 2, d * lm / 2
    return _out(2 * (d - 2) * x0 + _sqrt0(x2 * (x2 - cp)) + _sqrt0(x2 * cp)
                + _sqrt0(x1 * (x1 - cm)) + _sqrt0(x1 * cm))


def _xlogx_ratio(total, part):
    # total * h(part / total), zero when total == 0
    total = np.asarray(total, float)
    safe = np.where(total > 0, total, 1.0)
    ratio = np.clip(np.asarray(part, float) / safe, 0.0, 1.0)
    return np.where(total > 0, total * binary_entropy(ratio), 0.0)


def vn_objective(d, beta, lam_plus, lam_minus):
    """Von Neumann leakage ``xi1 h(d lam-/(2 xi1)) + xi2 h(d lam+/(2 xi2))``."""
    d = _check_d(d)
    lp, lm = np.asarray(lam_plus, float), np.asarray(lam_minus, float)
    _, x1, x2 = _xis(d, beta, lp, lm)
    return _out(_xlogx_ratio(x1, d * lm / 2) + _xlogx_ratio(x2, d * lp / 2))


def tracedist_objective(d, beta, lam_plus, lam_minus):
    """Trace distance ``1/2 ||sigma_0 - sigma_1||_1`` of Eve's two states."""
    d = _check_d(d)
    lp, lm = np.asarray(lam_plus, float), np.asarray(lam_minus, float)
    S = lp + lm
    w2 = _sqrt0(d * lm + 2 * (1 - beta) - d**2 / 2 * S)
    w1 = _sqrt0(d * lp + 2 * beta - d**2 / 2 * S)
    return _out(_sqrt0(d * lp) * w2 + _sqrt0(d * lm) * w1)


OBJECTIVES = {"T": T_objective, "vn": vn_objective, "trace_dist": tracedist_objective}


def corner_lambdas(beta, d):
    """The below-saturation optimum shared by all measures: ``(4b/(d(d-2)), 0)``."""
    return 4 * beta / (d * (d - 2)), 0.0


def saturated_lambdas(beta, d, beta_s):
    """Optimum above a saturation point ``beta_s``.

    ``lam- = 4 bs (b - bs) / (d(d-2)(1-2bs))``,
    ``lam+ = 4 bs (1 - b - bs) / (d(d-2)(1-2bs))``.
    """
    den = d * (d - 2) * (1 - 2 * beta_s)
    return 4 * beta_s * (1 - beta - beta_s) / den, 4 * beta_s * (beta - beta_s) / den


def _optimal(beta, d, beta_s):
    d = _check_d(d)
    b = float(_check_beta(beta))
    if b <= beta_s:
        return corner_lambdas(b, d)
    return saturated_lambdas(b, d, beta_s)


# -- statistical distance ----------------------------------------------------

def x_equation(x, d, form="ratio"):
    """Stationarity condition for ``T`` in ``x = 2b/(1-2b)``.

    ``form="ratio"`` uses the coefficient ``(d-1)/(d-2)``, ``form="sum"``
    the identical ``1 + 1/(d-2)``.
    """
    d = _check_d(d)
    x = np.asarray(x, dtype=float)
    coef = (d - 1) / (d - 2) if form == "ratio" else 1 + 1 / (d - 2)
    u = 1 - x / (d - 2)
    return _out(np.sqrt(u) + coef / np.sqrt(u)
                + (np.sqrt(x) - 1 / np.sqrt(x)) / np.sqrt(d - 2) - 2)


def sign_changes(f, grid) -> int:
    vals = np.sign(f(grid))
    vals = vals[vals != 0]
    return int(np.count_nonzero(np.diff(vals)))


@lru_cache(maxsize=None)
def x_root(d: int) -> float:
    """Root ``x_d`` on (0, 1) of :func:`x_equation` by bisection.

    Raises RootError unless a single sign change is seen on a
    ``UNIQUENESS_GRID``-point grid.
    """
    d = _check_d(d)
    grid = np.linspace(0, 1, UNIQUENESS_GRID + 2)[1:-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = x_equation(grid, d)
        alt = x_equation(grid, d, form="sum")
    if not np.allclose(vals, alt, rtol=1e-13, atol=1e-13):
        raise RootError("the two forms of the x_d equation disagree")
    n = sign_changes(lambda g: x_equation(g, d), grid)
    if n != 1:
        raise RootError(f"x_d equation has {n} sign changes on the grid for d={d}")
    i = int(np.flatnonzero(np.diff(np.sign(vals)))[0])
    return float(bisect(x_equation, grid[i], grid[i + 1], args=(d,), xtol=ROOT_XTOL))


def beta_star(d: int) -> float:
    """Saturation point of ``T``: ``(x_d/2)/(1 + x_d)``."""
    x = x_root(d)
    return x / 2 / (1 + x)


def zeta(q, d):
    """``q + sqrt(1-q) (sqrt(1 - q (d-1)/(d-2)) + sqrt(q/(d-2)))``."""
    q = np.asarray(q, dtype=float)
    return _out(q + np.sqrt(1 - q) * (np.sqrt(1 - q * (d - 1) / (d - 2))
                                      + np.sqrt(q / (d - 2))))


def trace_T(beta, d):
    d = _check_d(d)
    b = np.minimum(_check_beta(beta), beta_star(d))
    # beta_star < (d-2)/(2(d-1)) keeps the radicand positive
    assert np.all(1 - 2 * b * (d - 1) / (d - 2) >= 0)
    return zeta(2 * b, d)


def statdist_leak(beta, d):
    """``2 log2 T``, bits per round."""
    return _out(2 * np.log2(trace_T(beta, d)))


def optimal_lambdas_T(beta, d):
    return _optimal(beta, d, beta_star(d))


@dataclass(frozen=True)
class KeyRateQuery:
    n: int
    ell: int
    epsilon: float
    d: int
    beta: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if self.ell < 0:
            raise DomainError("ell must be >= 0")
        if not 0 < self.epsilon < 1:
            raise DomainError("epsilon must lie in (0, 1)")
        _check_d(self.d)
        _check_beta(self.beta)


class KeyLength(NamedTuple):
    ell: int
    rate: float  # real-valued ell / n before flooring
    extractable: bool


def statdist_bound(q: KeyRateQuery) -> float:
    """Distance of the key from uniform: ``1/2 sqrt(2^{ell - n(1 - 2 log T)})``."""
    expo = q.ell - q.n * (1 - statdist_leak(q.beta, q.d))
    return 0.5 * 2 ** (expo / 2)


def key_length_for_epsilon(n: int, beta: float, d: int, epsilon: float) -> KeyLength:
    """Key length with ``||rho - rho_id||_1 = epsilon``.

    ``ell/n = 1 - 2 log T - (2/n) log(1/epsilon)``, floored; a non-positive
    rate gives ``ell = 0`` and ``extractable=False``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    rate = 1 - statdist_leak(beta, d) - 2 / n * math.log2(1 / epsilon)
    if rate <= 0:
        return KeyLength(0, rate, False)
    return KeyLength(int(math.floor(n * rate + 1e-9)), rate, True)


# -- von Neumann -------------------------------------------------------------

def y_polynomial(y, d):
    return y ** (d - 1) + y - 1


@lru_cache(maxsize=None)
def y_root(d: int) -> float:
    """Unique root in (0, 1) of ``y^{d-1} + y - 1``."""
    d = _check_d(d)
    return float(bisect(y_polynomial, 0.0, 1.0, args=(d,), xtol=ROOT_XTOL))


def beta_zero(d: int) -> float:
    """Saturation point of the von Neumann leakage."""
    d = _check_d(d)
    return 0.5 / (1 + 1 / ((d - 2) * (1 - y_root(d))))


def i_ae(beta, d):
    """``(1-2b) h(2b / ((d-2)(1-2b)))`` with ``b = min(beta, beta_zero)``."""
    d = _check_d(d)
    b = np.minimum(_check_beta(beta), beta_zero(d))
    return _out((1 - 2 * b) * binary_entropy(2 * b / ((d - 2) * (1 - 2 * b))))


def optimal_lambdas_vn(beta, d):
    return _optimal(beta, d, beta_zero(d))


# -- min-entropy and accessible information ----------------------------------

def beta_sat(d: int) -> float:
    d = _check_d(d)
    return (d - 2) / (4 * (d - 1))


def trace_distance_D(beta, d):
    """Largest trace distance between Eve's two states at error rate ``beta``."""
    d = _check_d(d)
    bs = beta_sat(d)
    b = np.minimum(_check_beta(beta), bs)
    return _out(np.sqrt(b) / bs * np.sqrt(2 * bs - b) / np.sqrt(d - 1))


def guessing_probability(beta, d):
    return _out(0.5 + np.asarray(trace_distance_D(beta, d)) / 2)


def min_entropy(beta, d):
    """``H_min(S'|E) = -log2(1/2 + D/2)``."""
    return _out(-np.log2(guessing_probability(beta, d)))


def min_entropy_leak(beta, d):
    return _out(1 - np.asarray(min_entropy(beta, d)))


def accessible_info(beta, d):
    return _out(1 - binary_entropy(guessing_probability(beta, d)))


def optimal_lambdas_min(beta, d):
    """Trace-distance optimum; above ``beta_sat`` it equals
    ``lam_pm = 1/(2d(d-1)) +- (1-2b)/d^2``."""
    return _optimal(beta, d, beta_sat(d))


def tracedist_stationary_point(beta, d):
    """Interior stationary point of the trace distance, valid for ``beta >= beta_sat``:
    ``lam_pm = 1/(2d(d-1)) +- (1-2 beta)/d^2``."""
    d = _check_d(d)
    b = float(_check_beta(beta))
    base = 1 / (2 * d * (d - 1))
    return base + (1 - 2 * b) / d**2, base - (1 - 2 * b) / d**2


# -- asymptotics, rates and prior work ---------------------------------------

@dataclass(frozen=True)
class Asymptotics:
    d: int
    beta_star: float
    T: float
    i_ae_saturated: float
    i_ae_low: Optional[float] = None


def asymptotics(d: int, beta: Optional[float] = None) -> Asymptotics:
    """Large-d approximations; ``i_ae_low`` is filled in when ``beta`` is given."""
    d = _check_d(d)
    rt = math.sqrt(d - 2)
    low = None
    if beta is not None:
        b = float(_check_beta(beta))
        low = (0.0 if b == 0 else
               2 * b / (d - 2) * math.log2((d - 2) * (1 - 2 * b) * math.e / (2 * b)))
    return Asymptotics(d, 0.25 - 1 / (8 * rt), 1 + 1 / (2 * rt), math.log2(d) / d, low)


def qkd_rate(beta, d):
    """Asymptotic rate ``1 - h(beta) - I_AE``, clamped at zero."""
    b = _check_beta(beta)
    return _out(np.maximum(0.0, 1 - binary_entropy(b) - np.asarray(i_ae(b, d))))


class PriorBounds(NamedTuple):
    syk: float
    sk2017: object
    intercept_resend_lower: float


def prior_bounds(beta, d) -> PriorBounds:
    """Earlier leakage estimates.

    ``syk``: the d-only bound ``h(1/(d-1))``. ``sk2017``: ``h(2b/(d-2))``
    up to ``b = (d-2)/(2(d-1))``, then ``h(1/(d-1))``. The intercept-resend
    value ``1 - h(1/2 + 1/d)`` is a lower bound on what Eve can learn.
    """
    d = _check_d(d)
    b = _check_beta(beta)
    syk = float(binary_entropy(1 / (d - 1)))
    cap = 0.5 * (d - 2) / (d - 1)
    sk = np.where(b <= cap, binary_entropy(np.minimum(2 * b / (d - 2), 1.0)), syk)
    return PriorBounds(syk, _out(sk), float(1 - binary_entropy(0.5 + 1 / d)))


@dataclass(frozen=True)
class LeakageReport:
    d: int
    beta: float
    statdist_leak: float
    i_ae: float
    minentropy_leak: float
    accessible_info: float
    beta_star: float
    beta_zero: float
    beta_sat: float
    saturated: dict = field(default_factory=dict)
    optimal_lambdas: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "d": self.d, "beta": self.beta,
            "statdist_leak": self.statdist_leak, "i_ae": self.i_ae,
            "minentropy_leak": self.minentropy_leak,
            "accessible_info": self.accessible_info,
            "beta_star": self.beta_star, "beta_zero": self.beta_zero,
            "beta_sat": self.beta_sat,
            "saturated": dict(self.saturated),
            "optimal_lambdas": {k: list(v) for k, v in self.optimal_lambdas.items()},
        }


def leakage_report(beta: float, d: int) -> LeakageReport:
    d = _check_d(d)
    b = float(_check_beta(beta))
    bst, b0, bs = beta_star(d), beta_zero(d), beta_sat(d)
    return LeakageReport(
        d=d, beta=b,
        statdist_leak=statdist_leak(b, d), i_ae=i_ae(b, d),
        minentropy_leak=min_entropy_leak(b, d), accessible_info=accessible_info(b, d),
        beta_star=bst, beta_zero=b0, beta_sat=bs,
        saturated={"statdist": b >= bst, "vn": b >= b0, "min_entropy": b >= bs},
        optimal_lambdas={"statdist": optimal_lambdas_T(b, d),
                         "vn": optimal_lambdas_vn(b, d),
                         "min_entropy": optimal_lambdas_min(b, d)},
    )


__all__ = [
    "Asymptotics", "KeyLength", "KeyRateQuery", "LeakageReport", "OBJECTIVES",
    "PriorBounds", "T_objective", "accessible_info", "asymptotics", "beta_sat",
    "beta_star", "beta_zero", "corner_lambdas", "guessing_probability", "i_ae",
    "key_length_for_epsilon", "leakage_report", "min_entropy", "min_entropy_leak",
    "optimal_lambdas_T", "optimal_lambdas_min", "optimal_lambdas_vn", "prior_bounds",
    "qkd_rate", "saturated_lambdas", "sign_changes", "statdist_bound", "statdist_leak",
    "trace_T", "trace_distance_D", "tracedist_objective", "tracedist_stationary_point",
    "vn_objective", "x_equation", "x_root", "y_polynomial", "y_root", "zeta",
]
