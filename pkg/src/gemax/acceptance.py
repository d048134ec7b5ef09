"""The validation suite: ten numbered criteria shared by the CLI and the tests.

Each criterion returns a CriterionResult with a pass flag and a short
detail string; `run_criteria` executes a selection in order.  Tolerances
scale with `tolerance_scale` so the CLI can force failure paths.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import airy, finite_n, mc
from .special import airy as airy_fn

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str


def _normal_cdf(t: float) -> float:
    return 0.5 * (1.0 + math.erf(t))


def criterion_1(scale: float = 1.0) -> CriterionResult:
    """n=1 exactness: both one-eigenvalue laws reduce to the error function."""
    tol = 1e-8 * scale
    ts = np.linspace(-3.0, 3.0, 51)
    err2 = max(abs(finite_n.f_n2(1, float(t)) - _normal_cdf(float(t))) for t in ts)
    err4 = max(
        abs(finite_n.gse_largest_cdf(1, float(t) / SQRT2) - _normal_cdf(float(t)))
        for t in ts
    )
    worst = max(err2, err4)
    return CriterionResult(1, "n=1 exactness", worst < tol, f"max err {worst:.2e} (tol {tol:.1e})")


def criterion_2(scale: float = 1.0) -> CriterionResult:
    """Determinant and exponential F_{n,2} paths agree."""
    tol = 1e-6 * scale
    worst = 0.0
    for n in (2, 4, 9):
        edge = math.sqrt(2.0 * n)
        for t in np.linspace(edge - 4.0, edge + 2.0, 21):
            d = finite_n.f_n2(n, float(t), "determinant")
            e = finite_n.f_n2(n, float(t), "exponential")
            worst = max(worst, abs(d - e))
    return CriterionResult(2, "dual-path F_n2", worst < tol, f"max gap {worst:.2e} (tol {tol:.1e})")


def _brute_2d(beta: int, t: float) -> float:
    from scipy import integrate

    def weight(y, x):
        return abs(y - x) ** beta * math.exp(-beta * (x * x + y * y) / 2.0)

    num, _ = integrate.dblquad(weight, -8.0, t, -8.0, t, epsabs=1e-12)
    den, _ = integrate.dblquad(weight, -8.0, 8.0, -8.0, 8.0, epsabs=1e-12)
    return num / den


def criterion_3(scale: float = 1.0) -> CriterionResult:
    """F_{2,2} and F_{2,1} against brute-force 2-D quadrature."""
    tol = 1e-6 * scale
    worst = 0.0
    for t in (-1.0, 0.0, 1.0):
        worst = max(worst, abs(finite_n.f_n2(2, t) - _brute_2d(2, t)))
        worst = max(worst, abs(finite_n.f_n1(2, t) - _brute_2d(1, t)))
    return CriterionResult(3, "brute-force n=2", worst < tol, f"max err {worst:.2e} (tol {tol:.1e})")


def criterion_4(scale: float = 1.0) -> CriterionResult:
    """Closed-form vs first-principles epsilon quantities (and c_psi cancellation).

    The componentwise agreement clause fails by design of the closed forms:
    they are soft-edge asymptotics, not finite-n identities (see the ledger
    and the xfail test); the cancellation clause is exact.
    """
    tol = 1e-5 * scale
    worst = 0.0
    for n, fields in ((4, ("v_tilde_eps", "q_eps", "p1", "r1")), (5, ("v_tilde_eps", "q_eps", "p4", "r4"))):
        edge = math.sqrt(2.0 * n)
        for t in np.linspace(edge - 1.0, edge + 1.0, 5):
            closed = finite_n.epsilon_closed(n, float(t))
            numeric = finite_n.epsilon_numeric(n, float(t))
            for f in fields:
                c, m = getattr(closed, f), getattr(numeric, f)
                denom = max(abs(m), 1e-12)
                worst = max(worst, abs(c - m) / denom)
    # c_psi cancellation in the assembled GSE ratio
    cancel = 0.0
    for t in (-1.0, 0.0, 1.0):
        eps = finite_n.epsilon_closed(5, t)
        zeroed = finite_n.EpsilonQuantities(
            v_tilde_eps=eps.v_tilde_eps,
            q_eps=eps.q_eps,
            p1=eps.p1,
            r1=eps.r1,
            p4=eps.p4 + eps.c_psi * 0.5 * (1.0 + _cosh_g(5, t)),
            r4=eps.r4 + eps.c_psi * _rho_s(5, t),
            c_phi=eps.c_phi,
            c_psi=0.0,
        )
        cancel = max(cancel, abs(finite_n.f4_sq_ratio(eps) - finite_n.f4_sq_ratio(zeroed)))
    ok = worst < tol and cancel < 1e-10 * scale
    return CriterionResult(
        4,
        "epsilon cross-check",
        ok,
        f"max rel gap {worst:.2e} (tol {tol:.1e}), c_psi cancel {cancel:.2e}",
    )


def _cosh_g(n: int, t: float) -> float:
    a, b = finite_n.ab(n, t)
    return finite_n.cosh_sqrt(2.0 * a * b)


def _rho_s(n: int, t: float) -> float:
    a, b = finite_n.ab(n, t)
    return a * finite_n.sinhc_sqrt(2.0 * a * b)


MC_CASES = (
    ("gue", 2, 2, 9001),
    ("goe", 1, 2, 9002),
    ("goe", 1, 4, 9003),
    ("gse", 4, 1, 9004),
    ("gse", 4, 3, 9005),
)


def mc_cdf(ensemble: str, n: int):
    if ensemble == "gue":
        return lambda t: finite_n.f_n2(n, t)
    if ensemble == "goe":
        return lambda t: finite_n.f_n1(n, t)
    if ensemble == "gse":
        return lambda u: finite_n.gse_largest_cdf(n, u)
    raise ValueError(ensemble)


def criterion_5(scale: float = 1.0, count: int = 100_000) -> CriterionResult:
    """KS distance of seeded sampler runs against the analytic CDFs."""
    details = []
    ok = True
    crit = mc.ks_critical_1pct(count) * scale
    for ensemble, beta, n, seed in MC_CASES:
        run = mc.sample_lambda_max(beta, n, count, seed)
        ks = mc.ks_statistic(run, mc_cdf(ensemble, n), grid_points=201)
        ok = ok and ks < crit
        details.append(f"{ensemble} n={n}: {ks:.4f}")
    return CriterionResult(5, "Monte Carlo KS", ok, f"crit {crit:.4f}; " + ", ".join(details))


def criterion_6(scale: float = 1.0) -> CriterionResult:
    """Airy-side identities: nu = alpha - q, Painleve II, boundary, dual path."""
    nu_gap = max(
        abs(airy.airy_bundle(s).nu - (airy.airy_bundle(s).alpha - airy.airy_bundle(s).q[0]))
        for s in (-4.0, -2.0, -1.0, 0.0, 1.0, 2.0)
    )
    h = 1e-3
    pii = 0.0
    for s in np.linspace(-4.0, 2.0, 13):
        qm, q0, qp = (airy.hastings_mcleod_q(float(s) + k * h) for k in (-1, 0, 1))
        pii = max(pii, abs((qm - 2 * q0 + qp) / h**2 - (s * q0 + 2 * q0**3)))
    bdry = abs(airy.hastings_mcleod_q(5.0) / airy_fn(5.0)[0] - 1.0)
    dual = abs(airy.f2_limit(-1.0, "exponential") - airy.f2_limit(-1.0, "determinant"))
    ok = (
        nu_gap < 1e-8 * scale
        and pii < 1e-4 * scale
        and bdry < 1e-4 * scale
        and dual < 1e-7 * scale
    )
    return CriterionResult(
        6,
        "Airy identities",
        ok,
        f"nu {nu_gap:.1e}, PII {pii:.1e}, boundary {bdry:.1e}, dual {dual:.1e}",
    )


def _gue_sup_error(n: int, c: float, s_grid, reference: str = "limit") -> float:
    worst = 0.0
    for s in s_grid:
        t = airy.tau(n, c, float(s))
        truth = finite_n.f_n2(n, t, "determinant", nodes=96)
        if reference == "limit":
            ref = airy.f2_limit(float(s))
        else:
            ref = airy.edgeworth_f2(n, c, float(s)).combined
        worst = max(worst, abs(truth - ref))
    return worst


def _fit_exponent(ns, errs) -> float:
    logs_n = np.log(np.asarray(ns, dtype=float))
    logs_e = np.log(np.asarray(errs, dtype=float))
    slope, _ = np.polyfit(logs_n, logs_e, 1)
    return float(slope)


def criterion_7(scale: float = 1.0) -> CriterionResult:
    """GUE convergence-rate exponents toward the Tracy-Widom limit."""
    ns = (20, 40, 80, 160)
    s_grid = np.linspace(-3.0, 1.0, 9)
    rate0 = _fit_exponent(ns, [_gue_sup_error(n, 0.0, s_grid) for n in ns])
    rate1 = _fit_exponent(ns, [_gue_sup_error(n, 1.0, s_grid) for n in ns])
    lo0, hi0 = -0.67 - 0.2 * scale, -0.67 + 0.2 * scale
    lo1, hi1 = -0.33 - 0.15 * scale, -0.33 + 0.15 * scale
    ok = lo0 <= rate0 <= hi0 and lo1 <= rate1 <= hi1
    return CriterionResult(
        7, "GUE convergence rates", ok, f"c=0 rate {rate0:.3f}, c=1 rate {rate1:.3f}"
    )


def edgeworth_comparison(ensemble: str, n: int, c: float, s: float):
    """(finite-n truth, leading, combined) for one expansion point."""
    if ensemble == "gue":
        truth = finite_n.f_n2(n, airy.tau(n, c, s), "determinant", nodes=96)
        r = airy.edgeworth_f2(n, c, s)
    elif ensemble == "goe":
        truth = finite_n.f_n1(n, airy.tau(n, c, s), nodes=96) ** 2
        r = airy.edgeworth_f1_sq(n, c, s)
    elif ensemble == "gse":
        truth = finite_n.f_n4(n, airy.tau(n, c, s) / SQRT2, nodes=96) ** 2
        r = airy.edgeworth_f4_sq(n, c, s)
    else:
        raise ValueError(ensemble)
    return truth, r.leading, r.combined


def criterion_8(scale: float = 1.0, ensembles=("gue", "goe", "gse")) -> CriterionResult:
    """Edgeworth improvement over the leading term, plus the GUE error rate.

    The GSE clause fails: the printed symplectic expansion is missing a
    genuine O(n^{-1/3}) contribution at c = 0 (see the ledger), so its
    combined form cannot beat the leading term; run with
    ensembles=("gue", "goe") for the attainable part.
    """
    details = []
    ok = True
    for ensemble, n in (("gue", 100), ("goe", 100), ("gse", 101)):
        if ensemble not in ensembles:
            continue
        for s in (-2.0, -1.0, 0.0):
            truth, leading, combined = edgeworth_comparison(ensemble, n, 0.0, s)
            improved = abs(combined - truth) < abs(leading - truth) * scale
            ok = ok and improved
            if not improved:
                details.append(f"{ensemble} s={s:g} not improved")
    errs = []
    for n in (40, 160):
        worst = 0.0
        for s in (-2.0, -1.0, 0.0):
            truth, _, combined = edgeworth_comparison("gue", n, 0.0, s)
            worst = max(worst, abs(combined - truth))
        errs.append(worst)
    rate = _fit_exponent((40, 160), errs)
    rate_ok = -1.4 <= rate <= -0.6
    ok = ok and rate_ok
    details.append(f"GUE 2nd-order rate {rate:.3f}")
    return CriterionResult(8, "Edgeworth improvement", ok, "; ".join(details))


#: monotonicity slack for deep-tail noise: where the CDF is below ~1e-6 the
#: Fredholm determinant's condition number grows like 1/F and the computed
#: values carry ~1e-7 absolute noise, far below the 1e-3 endpoint tolerance
def _cdf_axioms(values, left_tol=1e-3, right_tol=1e-6, mono_tol=1e-6) -> bool:
    v = np.asarray(values)
    return (
        bool(np.all(np.diff(v) > -mono_tol))
        and v[0] < left_tol
        and v[-1] > 1.0 - right_tol
    )


def criterion_9(scale: float = 1.0) -> CriterionResult:
    """CDF axioms for every exposed distribution."""
    failures = []
    for n in range(1, 7):
        grid = np.linspace(-2.0 * math.sqrt(n) - 2.0, math.sqrt(2.0 * n) + 4.0, 201)
        if not _cdf_axioms([finite_n.f_n2(n, float(t)) for t in grid]):
            failures.append(f"gue n={n}")
    for n in (2, 4, 6):
        grid = np.linspace(-2.0 * math.sqrt(n) - 2.0, math.sqrt(2.0 * n) + 4.0, 101)
        if not _cdf_axioms([finite_n.f_n1(n, float(t)) for t in grid]):
            failures.append(f"goe n={n}")
    for n in (1, 3, 5):
        kernel = 2 * n + 1
        grid = (
            np.linspace(-2.0 * math.sqrt(kernel) - 2.0, math.sqrt(2.0 * kernel) + 4.0, 101)
            / SQRT2
        )
        if not _cdf_axioms([finite_n.gse_largest_cdf(n, float(u)) for u in grid]):
            failures.append(f"gse n={n}")
    s_grid = np.linspace(-8.0, 7.9, 101)
    for name, fn in (
        ("F2", lambda s: airy.f2_limit(s, "determinant")),
        ("F1", airy.f1_limit),
        ("F4", airy.f4_limit),
    ):
        if not _cdf_axioms([fn(float(s)) for s in s_grid]):
            failures.append(f"limit {name}")
    ok = not failures
    return CriterionResult(9, "CDF axioms", ok, "all pass" if ok else ", ".join(failures))


def criterion_10(scale: float = 1.0) -> CriterionResult:
    """Byte-identical CLI output for repeated mc and tabulate runs."""
    from . import cli

    def run(argv) -> bytes:
        buf = io.StringIO()
        cli.main(argv, stdout=buf)
        return buf.getvalue().encode()

    mc_args = ["mc", "--ensemble", "gue", "--n", "2", "--samples", "2000", "--seed", "7"]
    tab_args = [
        "tabulate", "--ensemble", "gue", "--n", "2",
        "--t-min", "-2", "--t-max", "2", "--steps", "9",
    ]
    ok = run(mc_args) == run(mc_args) and run(tab_args) == run(tab_args)
    return CriterionResult(10, "determinism", ok, "byte-identical" if ok else "outputs differ")


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_criteria(indices=None, tolerance_scale: float = 1.0):
    """Run the selected criteria (all by default) and return their results."""
    chosen = sorted(indices) if indices else sorted(CRITERIA)
    return [CRITERIA[i](tolerance_scale) for i in chosen]
