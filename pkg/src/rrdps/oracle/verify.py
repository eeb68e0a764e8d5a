"""Run every cross-check suite and collect the worst deviations.

Random parameters for suite ``i`` at dimension ``d`` come from
``default_rng(SeedSequence([seed, i, d]))``, so each (suite, d) case is
reproducible on its own and cases can run in any order.
"""

import itertools

import numpy as np

from .. import attack as atk
from .. import bounds as bnd
from .. import protocol as prot
from ..numerics import trace_distance, vn_entropy
from .grid import grid_lambda_search
from .holevo import holevo_check
from .report import AggregateReport, VerifyReport
from .simulate import MAX_D as SIM_MAX_D
from .simulate import simulate
from .uhf import MAX_D as UHF_MAX_D
from .uhf import uhf_identity_check

SUPPORTED_D = range(3, 9)
GRID_BETAS = (0.02, 0.05, 0.15, 0.3, 0.5)
SIM_ROUNDS = 20000


class _Tol:
    def __init__(self, override):
        self.override = override

    def __call__(self, default):
        return default if self.override is None else self.override


def random_density(d, rng):
    g = rng.normal(size=(d * d, d * d)) + 1j * rng.normal(size=(d * d, d * d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def suite_povm(d, draws, rng, tol):
    rep = VerifyReport("povm")
    for r in range(1, d):
        rep.record("bob_complete", prot.bob_povm(d, r).completeness_error(), tol(1e-10),
                   {"d": d, "r": r})
    if d <= prot.MAX_ALICE_D:
        rep.record("alice_complete", prot.alice_povm(d).completeness_error(), tol(1e-10), {"d": d})
    return rep


def suite_symmetrize(d, draws, rng, tol):
    rep = VerifyReport("symmetrize")
    for i in range(min(draws, 5)):
        rho = random_density(d, rng)
        sym = prot.symmetrize(rho)
        rep.record("off_family", prot.off_family_max(sym), tol(1e-12), {"d": d, "draw": i})
        rep.record("idempotent", float(np.abs(prot.symmetrize(sym) - sym).max()),
                   tol(1e-12), {"d": d, "draw": i})
        if d <= prot.MAX_GROUP_AVERAGE_D:
            orbit = prot.symmetrize(rho, method="orbit")
            rep.record("group_vs_orbit", float(np.abs(orbit - sym).max()),
                       tol(1e-12), {"d": d, "draw": i})
    return rep


def suite_constraint(d, draws, rng, tol):
    rep = VerifyReport("constraint")
    for i in range(min(draws, 3)):
        s = atk.random_feasible(d, rng)
        rho = atk.rho_ab(s)
        worst, comp = 0.0, 0.0
        for a in prot.all_bitstrings(d):
            for r in range(1, d):
                for k in range(d):
                    for bit in (0, 1):
                        pj = prot.joint_probability(rho, a, k, bit, r)
                        target = prot.constraint_probability(d, s.beta, a, k, bit, r)
                        worst = max(worst, abs(pj - target))
                        alt = prot.joint_probability_components(rho, a, k, bit, r)
                        comp = max(comp, abs(pj - alt))
        params = {"d": d, "beta": s.beta, "lam_plus": s.lam_plus, "lam_minus": s.lam_minus}
        rep.record("joint_vs_constraint", worst, tol(1e-12), params, cases=2**d * (d - 1) * d * 2)
        rep.record("trace_vs_components", comp, tol(1e-12), params)
    return rep


def suite_spectrum(d, draws, rng, tol):
    rep = VerifyReport("spectrum")
    mult = (1, d - 1, d * (d - 1) // 2, d * (d - 1) // 2)
    for _ in range(draws):
        s = atk.random_feasible(d, rng)
        expected = np.sort(np.repeat(s.lambdas, mult))
        got = np.linalg.eigvalsh(atk.rho_ab(s))
        params = {"d": d, "beta": s.beta, "lam_plus": s.lam_plus, "lam_minus": s.lam_minus}
        rep.record("eigenvalues", float(np.abs(got - expected).max()), tol(1e-10), params)
        n = atk.noise_from_spectral(s)
        back = atk.spectral_from_noise(n, check=False)
        rep.record("round_trip", max(abs(back.lam_plus - s.lam_plus),
                                     abs(back.lam_minus - s.lam_minus)), tol(1e-12), params)
        lam_direct = atk.lambdas_from_noise(n)
        rep.record("lambda_formulas", float(np.abs(np.subtract(lam_direct, s.lambdas)).max()),
                   tol(1e-12), params)
        if d <= atk.MAX_D_PURIFICATION:
            w = atk.purification(s).reshape(d * d, d * d)
            rep.record("purification", float(np.abs(w @ w.conj().T - atk.rho_ab(s)).max()),
                       tol(1e-10), params)
    return rep


def suite_eve_states(d, draws, rng, tol):
    rep = VerifyReport("eve_states")
    if d > atk.MAX_D_PURIFICATION:
        return rep
    for _ in range(draws):
        s = atk.random_feasible(d, rng)
        params = {"d": d, "beta": s.beta, "lam_plus": s.lam_plus, "lam_minus": s.lam_minus}
        for r in range(1, d):
            for k in range(d):
                closed = []
                for sp in (0, 1):
                    dec, sig = atk.eve_state_closed(s, r, k, sp)
                    brute = atk.eve_state_bruteforce(s, r, k, sp, route="sum")
                    avg = atk.eve_state_bruteforce(s, r, k, sp, route="average")
                    p = dict(params, r=r, k=k, s_prime=sp)
                    rep.record("closed_vs_bruteforce", trace_distance(sig, brute), tol(1e-9), p)
                    rep.record("sum_vs_average", float(np.abs(brute - avg).max()), tol(1e-10), p)
                    closed.append(sig)
                    rep.record("xi_normalisation",
                               abs(dec.xi1 + dec.xi2 + 2 * (d - 2) * dec.xi0 - 1), tol(1e-12), p)
                p = dict(params, r=r, k=k)
                avg = atk.sigma_avg(s, r, k)
                rep.record("sigma_avg", float(np.abs(avg - (closed[0] + closed[1]) / 2).max()),
                           tol(1e-12), p)
                diff = atk.sigma_diff(s, r, k)
                rep.record("sigma_diff", float(np.abs(diff - (closed[0] - closed[1]) / 2).max()),
                           tol(1e-10), p)
    return rep


def suite_isometry(d, draws, rng, tol):
    rep = VerifyReport("isometry")
    if d > atk.MAX_D_PURIFICATION:
        return rep
    for _ in range(min(draws, 20)):
        s = atk.random_feasible(d, rng)
        a = tuple(int(x) for x in rng.integers(0, 2, d))
        params = {"d": d, "beta": s.beta, "lam_plus": s.lam_plus,
                  "lam_minus": s.lam_minus, "a": a}
        rep.record("omega_gram", atk.attack_isometry_check(s), tol(1e-12), params)
        mu = prot.mu_state(a)
        target = (1 - 2 * s.beta) * np.outer(mu, mu.conj()) + 2 * s.beta * np.eye(d) / d
        rep.record("bob_reduced", float(np.abs(atk.bob_reduced(s, a) - target).max()),
                   tol(1e-10), params)
        vecs = np.column_stack([atk.eve_vector_A(s, a, t) for t in range(d)])
        gram = vecs.conj().T @ vecs
        g_target = (1 - 2 * s.beta) * np.ones((d, d)) + 2 * s.beta * np.eye(d)
        rep.record("A_gram", float(np.abs(gram - g_target).max()), tol(1e-10), params)
        signs = (-1.0) ** np.array(a)
        rebuilt = (signs[:, None] * vecs.T) / np.sqrt(d)
        rep.record("A_expansion", float(np.abs(rebuilt - atk.bob_eve_state(s, a)).max()),
                   tol(1e-12), params)
    return rep


def suite_bounds(d, draws, rng, tol):
    rep = VerifyReport("bounds")
    grid = np.round(np.arange(0, 0.5 + 1e-12, 1e-3), 12)
    curves = {
        "statdist": (bnd.statdist_leak, bnd.trace_T, bnd.T_objective,
                     bnd.optimal_lambdas_T, bnd.beta_star(d)),
        "vn": (bnd.i_ae, bnd.i_ae, bnd.vn_objective, bnd.optimal_lambdas_vn, bnd.beta_zero(d)),
        "min_entropy": (bnd.min_entropy_leak, bnd.trace_distance_D, bnd.tracedist_objective,
                        bnd.optimal_lambdas_min, bnd.beta_sat(d)),
    }
    cap = 0.5 * (d - 2) / (d - 1)
    region_tol = 1e-12
    for name, (leak, value, objective, lambdas, sat) in curves.items():
        vals = np.asarray(leak(grid, d))
        second = vals[2:] - 2 * vals[1:-1] + vals[:-2]
        rep.record(f"{name}_concave", max(0.0, float(second.max())), tol(1e-9), {"d": d})
        above = vals[grid >= sat]
        rep.record(f"{name}_plateau", float(np.ptp(above)) if above.size else 0.0,
                   tol(1e-10), {"d": d, "saturation": sat})
        rep.record(f"{name}_saturation_below_cap", max(0.0, sat - cap), tol(0.0), {"d": d})
        worst, infeasible = 0.0, 0.0
        for b in grid[::25]:
            lp, lm = lambdas(b, d)
            worst = max(worst, abs(objective(d, b, lp, lm) - value(b, d)))
            sp = atk.SpectralParams(d, float(b), lp, lm)
            infeasible = max(infeasible, -min(sp.lambdas))
        rep.record(f"{name}_optimum_attains", worst, tol(1e-12), {"d": d})
        rep.record(f"{name}_optimum_feasible", max(0.0, infeasible), tol(region_tol), {"d": d})
    acc = np.asarray(bnd.accessible_info(grid, d))
    second = acc[2:] - 2 * acc[1:-1] + acc[:-2]
    rep.record("accessible_concave", max(0.0, float(second.max())), tol(1e-9), {"d": d})
    rep.record("accessible_below_min_entropy",
               max(0.0, float((acc - np.asarray(bnd.min_entropy_leak(grid, d))).max())),
               tol(0.0), {"d": d})
    return rep


def suite_grid(d, draws, rng, tol):
    rep = VerifyReport("grid")
    analytic = {
        "T": (bnd.trace_T, bnd.optimal_lambdas_T),
        "vn": (bnd.i_ae, bnd.optimal_lambdas_vn),
        "trace_dist": (bnd.trace_distance_D, bnd.optimal_lambdas_min),
    }
    step = 2e-3
    for b in GRID_BETAS:
        lp_max, lm_max = atk.feasible_region(d, b).bounding_box()
        for obj, (value, lambdas) in analytic.items():
            g = grid_lambda_search(d, b, obj, step=step)
            lp, lm = lambdas(b, d)
            p = {"d": d, "beta": b, "objective": obj}
            rep.record("value_gap", abs(g.value - value(b, d)), tol(1e-6), p)
            arg = max(abs(g.lam_plus - lp) / lp_max, abs(g.lam_minus - lm) / lm_max)
            rep.record("argument_gap", arg, tol(10 * step), p)
        if b >= bnd.beta_sat(d):
            g = grid_lambda_search(d, b, "trace_dist", step=step)
            lp, lm = bnd.tracedist_stationary_point(b, d)
            arg = max(abs(g.lam_plus - lp) / lp_max, abs(g.lam_minus - lm) / lm_max)
            rep.record("stationary_point", arg, tol(10 * step), {"d": d, "beta": b})
    return rep


def suite_holevo(d, draws, rng, tol):
    out = VerifyReport("holevo")
    if d > atk.MAX_D_PURIFICATION:
        return out
    cases = [atk.SpectralParams(d, b, *bnd.optimal_lambdas_min(b, d))
             for b in (0.05, 0.1, 0.3, 0.5)]
    cases += [atk.random_feasible(d, rng) for _ in range(min(draws, 5))]
    for s in cases:
        r = int(rng.integers(1, d))
        k = int(rng.integers(0, d))
        rep = holevo_check(s, r, k)
        for c in rep.claims:
            out.record(c.name, c.max_deviation, tol(c.tolerance), c.worst)
    return out


def suite_uhf(d, draws, rng, tol):
    out = VerifyReport("uhf")
    if d > UHF_MAX_D:
        return out
    s = atk.random_feasible(d, rng)
    for n, ell in ((1, 1), (2, 1)):
        for c in uhf_identity_check(n, ell, s).claims:
            out.record(c.name, c.max_deviation, tol(c.tolerance), c.worst)
    return out


def suite_vn_numeric(d, draws, rng, tol):
    rep = VerifyReport("vn_numeric")
    if d > atk.MAX_D_PURIFICATION:
        return rep
    cases = [atk.SpectralParams(d, b, *bnd.optimal_lambdas_vn(b, d)) for b in (0.1, 0.4)]
    cases += [atk.random_feasible(d, rng) for _ in range(min(draws, 5))]
    for s in cases:
        sig = [atk.eve_state_bruteforce(s, 1, 0, x, route="average") for x in (0, 1)]
        numeric = (vn_entropy((sig[0] + sig[1]) / 2)
                   - 0.5 * (vn_entropy(sig[0]) + vn_entropy(sig[1])))
        closed = bnd.vn_objective(d, s.beta, s.lam_plus, s.lam_minus)
        rep.record("holevo_quantity", abs(numeric - closed), tol(1e-8),
                   {"d": d, "beta": s.beta, "lam_plus": s.lam_plus, "lam_minus": s.lam_minus})
    return rep


def suite_simulate(d, draws, rng, tol):
    rep = VerifyReport("simulate")
    if d > SIM_MAX_D:
        return rep
    beta = 0.1
    s = atk.SpectralParams(d, beta, *bnd.optimal_lambdas_min(beta, d))
    seed = int(rng.integers(0, 2**31))
    sim = simulate(SIM_ROUNDS, s, seed=seed)
    n_sigma = 4.0
    p = {"d": d, "beta": beta, "seed": seed, "rounds": SIM_ROUNDS}

    def z(observed, target):
        se = np.sqrt(target * (1 - target) / SIM_ROUNDS)
        return abs(observed - target) / se if se > 0 else abs(observed - target)

    rep.record("ber_sigma", z(sim.ber, beta), tol(n_sigma), p)
    rep.record("eve_success_sigma", z(sim.eve_success, bnd.guessing_probability(beta, d)),
               tol(n_sigma), p)
    rep.record("k_uniform_sigma", max(z(f, 1 / d) for f in sim.k_freq), tol(n_sigma), p)
    return rep


SUITES = {
    "povm": suite_povm,
    "symmetrize": suite_symmetrize,
    "constraint": suite_constraint,
    "spectrum": suite_spectrum,
    "eve_states": suite_eve_states,
    "isometry": suite_isometry,
    "bounds": suite_bounds,
    "grid": suite_grid,
    "holevo": suite_holevo,
    "uhf": suite_uhf,
    "vn_numeric": suite_vn_numeric,
    "simulate": suite_simulate,
}

GROUPS = {
    "protocol": ("povm", "symmetrize", "constraint"),
    "attack": ("spectrum", "eve_states", "isometry"),
    "bounds": ("bounds",),
    "oracle": ("grid", "holevo", "uhf", "vn_numeric", "simulate"),
}
GROUPS["all"] = tuple(itertools.chain.from_iterable(GROUPS.values()))


def resolve_suites(names) -> list:
    """Expand group names; unknown names raise ``ValueError``."""
    if isinstance(names, str):
        names = [x for x in names.split(",") if x]
    out = []
    for name in names:
        if name in SUITES:
            members = (name,)
        elif name in GROUPS:
            members = GROUPS[name]
        else:
            raise ValueError(f"unknown suite {name!r}")
        out.extend(m for m in members if m not in out)
    return out


def verify_all(d_list=(3, 4, 5), draws: int = 100, seed: int = 0,
               tol=None, suites="all") -> AggregateReport:
    """Run the requested suites for every ``d`` in ``d_list``.

    ``tol`` replaces every claim's tolerance when given (``tol=0`` makes any
    non-zero deviation a failure). Failures are reported, not raised.
    """
    d_list = [int(d) for d in d_list]
    for d in d_list:
        if d not in SUPPORTED_D:
            raise ValueError(f"verify supports d in 3..8, got {d}")
    names = resolve_suites(suites)
    tol_fn = _Tol(tol)
    agg = AggregateReport()
    for i, name in enumerate(SUITES):
        if name not in names or not d_list:
            continue
        rep = VerifyReport(name)
        for d in d_list:
            rng = np.random.default_rng(np.random.SeedSequence([seed, i, d]))
            rep = rep.merge(SUITES[name](d, draws, rng, tol_fn))
        agg.reports.append(rep)
    return agg
