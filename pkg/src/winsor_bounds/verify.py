"""Executable invariant suites.

Each suite re-derives a family of mathematical guarantees numerically over
fixed test grids and reports the worst observed violation.  The suites back
both the CLI ``verify`` command and the acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import asymptotics, certificates, oracle, trunc, winsor
from .asymptotics import Regime
from .certificates import MomentKind
from .distributions import BoundQuery, two_point
from .trunc import Branch

C_GRID = (0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0)
SIGMA_GRID = tuple(np.geomspace(1e-3, 1e6, 40))

# Representative (c, sigma) pairs for the oracle-equivalence checks; they
# cover both truncated branches and three orders of magnitude in sigma.
ORACLE_PAIRS = (
    (0.5, 0.3),
    (1.0, 1.0),
    (2.0, 1.0),
    (1.0, 10.0),
    (5.0, 2.0),
    (0.5, 100.0),
    (3.0, 0.1),
    (2.0, 1000.0),
    (1.5, 5.0),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: worst={self.worst:.3e} tol={self.tolerance:.1e}"
        if self.detail:
            text += f" ({self.detail})"
        return text


def _bounded_check(name, worst, tol, detail=""):
    return CheckResult(name=name, passed=worst <= tol, worst=worst, tolerance=tol, detail=detail)


def _relative_gap(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y))


def suite_roots() -> list[CheckResult]:
    """Residuals of every solved root plus the analytic identities tying the
    universal quantities together."""
    results = []

    worst = 0.0
    for c in C_GRID:
        for sigma in SIGMA_GRID:
            a = winsor.solve_a_c_sigma(c, sigma)
            residual = abs(
                math.expm1(math.log(a) + winsor.log_b_star(a, c) - 2.0 * math.log(sigma))
            )
            worst = max(worst, residual)
    results.append(_bounded_check("roots.winsor_fixed_c_residual", worst, 1e-10))

    worst = 0.0
    for sigma in SIGMA_GRID:
        a = winsor.solve_a_sigma(sigma)
        worst = max(worst, abs(winsor.ell1(a, sigma)))
    results.append(_bounded_check("roots.winsor_universal_residual", worst, 1e-10))

    worst = 0.0
    for c in C_GRID:
        for sigma in SIGMA_GRID:
            a = trunc.solve_A_c_sigma(c, sigma)
            residual = abs(
                math.expm1(math.log(a) + trunc.log_B_star(a, c) - 2.0 * math.log(sigma))
            )
            worst = max(worst, residual)
    results.append(_bounded_check("roots.trunc_moment_match_residual", worst, 1e-10))

    worst = 0.0
    for c in C_GRID:
        threshold = trunc.solve_A_c(c)
        worst = max(worst, abs(trunc.B_star(threshold, c) - 1.0))
    results.append(_bounded_check("roots.trunc_threshold_identity", worst, 1e-10))

    worst = 0.0
    for sigma in SIGMA_GRID:
        a_univ = winsor.solve_a_sigma(sigma)
        c_opt = winsor.optimal_c_for_two_point(a_univ, sigma)
        a_fixed = winsor.solve_a_c_sigma(c_opt, sigma)
        worst = max(worst, _relative_gap(a_univ, a_fixed))
        b_univ = sigma * sigma / a_univ
        worst = max(worst, _relative_gap(b_univ, winsor.b_star(a_univ, c_opt)))
    results.append(_bounded_check("roots.universal_consistency", worst, 1e-8))

    # d/da ln(optimal moment) must equal ell1(a) / (1+a)^2.
    worst = 0.0
    step = 1e-6
    for sigma in (0.7, 1.0, 2.0, 5.0):
        for fraction in (0.05, 0.4, 0.6, 0.9):
            a = fraction * sigma * sigma
            numeric = (
                math.log(winsor.optimal_winsor_moment(a + step, sigma))
                - math.log(winsor.optimal_winsor_moment(a - step, sigma))
            ) / (2.0 * step)
            analytic = winsor.ell1(a, sigma) / (1.0 + a) ** 2
            if abs(analytic) > 0.05:
                worst = max(worst, abs(numeric - analytic) / abs(analytic))
    results.append(_bounded_check("roots.log_moment_derivative_identity", worst, 1e-4))

    return results


def suite_ordering() -> list[CheckResult]:
    """Bound comparisons and monotonicity across the (c, sigma) grid."""
    results = []

    fixed = {
        (c, sigma): winsor.lower_bound_fixed_c(BoundQuery(c, sigma)).bound
        for c in C_GRID
        for sigma in SIGMA_GRID
    }
    truncated = {
        (c, sigma): trunc.lower_bound_trunc(BoundQuery(c, sigma))
        for c in C_GRID
        for sigma in SIGMA_GRID
    }
    universal = {sigma: winsor.lower_bound_universal(sigma) for sigma in SIGMA_GRID}

    worst = 0.0
    for (c, sigma), bound in fixed.items():
        worst = max(worst, bound - 1.0)
        worst = max(worst, truncated[(c, sigma)].bound - bound)
        worst = max(worst, universal[sigma].bound - bound)
        if bound <= 0.0 or truncated[(c, sigma)].bound <= 0.0:
            worst = math.inf
    results.append(_bounded_check("ordering.bound_chain", worst, 1e-12,
                                  "L_T <= L_W <= 1 and L_universal <= L_W"))

    worst = 0.0
    for sigma in SIGMA_GRID:
        solution = universal[sigma]
        at_optimum = winsor.lower_bound_fixed_c(BoundQuery(solution.c_sigma, sigma)).bound
        worst = max(worst, _relative_gap(at_optimum, solution.bound))
    results.append(_bounded_check("ordering.equality_at_optimal_tilt", worst, 1e-10))

    worst = 0.0
    for c in C_GRID:
        for s1, s2 in zip(SIGMA_GRID, SIGMA_GRID[1:]):
            worst = max(worst, fixed[(c, s2)] - fixed[(c, s1)])
            worst = max(worst, truncated[(c, s2)].bound - truncated[(c, s1)].bound)
    for s1, s2 in zip(SIGMA_GRID, SIGMA_GRID[1:]):
        worst = max(worst, universal[s2].bound - universal[s1].bound)
    results.append(_bounded_check("ordering.monotone_in_sigma", worst, 1e-12))

    worst = 0.0
    for (c, sigma), solution in truncated.items():
        if solution.branch is Branch.LARGE_SIGMA:
            worst = max(worst, (solution.A_c - solution.A_c_sigma) / solution.A_c)
            worst = max(worst, 1.0 - solution.B_c_sigma)
    results.append(_bounded_check("ordering.trunc_branch_inequalities", worst, 1e-12,
                                  "A_c_sigma >= A_c and B_c_sigma >= 1"))

    worst = 0.0
    for c in (0.5, 1.0, 2.0, 5.0):
        threshold = trunc.solve_A_c(c)
        small = trunc.trunc_moment(two_point(threshold, 1.0), c)
        a_large = trunc.solve_A_c_sigma(c, math.sqrt(threshold))
        b_large = max(threshold / a_large, 1.0)
        large = trunc.trunc_moment(two_point(a_large, b_large), c)
        worst = max(worst, _relative_gap(small, large))
    results.append(_bounded_check("ordering.trunc_branch_continuity", worst, 1e-10))

    worst = -math.inf
    for sigma in SIGMA_GRID:
        solution = universal[sigma]
        center = winsor.winsor_moment(solution.extremal, solution.c_sigma)
        for factor in (1.0 - 1e-3, 1.0 + 1e-3):
            perturbed = winsor.winsor_moment(solution.extremal, solution.c_sigma * factor)
            worst = max(worst, (center - perturbed) / center)
    results.append(_bounded_check("ordering.interior_tilt_optimality", worst, -1e-14,
                                  "perturbing the tilt strictly increases the moment"))

    worst = 0.0
    for c, sigma, cut in ((1.0, 2.0, 2.0), (2.0, 1.0, 0.5), (0.7, 30.0, 3.0)):
        direct = winsor.lower_bound_fixed_c(BoundQuery(c, sigma, cut))
        rescaled = winsor.lower_bound_fixed_c(BoundQuery(c * cut, sigma / cut, 1.0))
        if direct.bound != rescaled.bound or direct.a_c_sigma != rescaled.a_c_sigma:
            worst = math.inf
    results.append(_bounded_check("ordering.cut_rescaling_identity", worst, 0.0,
                                  "bitwise equality through the shared code path"))

    return results


def suite_certificates() -> list[CheckResult]:
    """Tangent-minorant geometry over the full grid: G <= F, localized
    equality, tangency at contacts, and the claimed coefficient signs."""
    results = []
    worst_gap = 0.0
    worst_tangency = 0.0
    worst_beta_margin = 0.0
    all_passed = True
    detail = ""

    for c in C_GRID:
        for sigma in SIGMA_GRID:
            a = winsor.solve_a_c_sigma(c, sigma)
            minorant = certificates.winsor_minorant(a, c)
            report = certificates.check_certificate(minorant, MomentKind.WINSOR, c)
            all_passed &= report.passed
            worst_gap = min(worst_gap, report.worst_gap)
            if not report.passed and not detail:
                detail = f"winsor c={c} sigma={sigma:.3g} x={report.worst_x:.3g}"
            for value_gap, deriv_gap in certificates.tangency_gaps(
                minorant, MomentKind.WINSOR, c
            ).values():
                worst_tangency = max(worst_tangency, value_gap, deriv_gap or 0.0)

            solution = trunc.lower_bound_trunc(BoundQuery(c, sigma))
            if solution.branch is Branch.SMALL_SIGMA:
                minorant = certificates.trunc_minorant_small(sigma * sigma, c)
                tangent_upper = False
                beta_floor = (
                    math.exp(-sigma * sigma * c)
                    * c
                    * (1.0 + sigma**4)
                    / (1.0 + sigma * sigma) ** 2
                )
                worst_beta_margin = max(
                    worst_beta_margin, (beta_floor - minorant.beta) / beta_floor
                )
            else:
                minorant = certificates.trunc_minorant_large(solution.A_c_sigma, c)
                tangent_upper = True
            report = certificates.check_certificate(minorant, MomentKind.TRUNC, c)
            all_passed &= report.passed
            worst_gap = min(worst_gap, report.worst_gap)
            if not report.passed and not detail:
                detail = f"trunc c={c} sigma={sigma:.3g} x={report.worst_x:.3g}"
            for value_gap, deriv_gap in certificates.tangency_gaps(
                minorant, MomentKind.TRUNC, c, upper_contact_tangent=tangent_upper
            ).values():
                worst_tangency = max(worst_tangency, value_gap, deriv_gap or 0.0)

    results.append(CheckResult(
        name="certificates.minorant_below_moment",
        passed=all_passed,
        worst=-worst_gap,
        tolerance=certificates.GAP_RTOL,
        detail=detail or "all families, full grid",
    ))
    results.append(_bounded_check("certificates.contact_tangency", worst_tangency, 1e-6))
    results.append(_bounded_check(
        "certificates.trunc_small_beta_floor", worst_beta_margin, 1e-12,
        "beta > e^{-ac} c (1+a^2)/(1+a)^2 up to roundoff"
    ))

    # Negative control: shrinking beta by 10% must break the certificate.
    a = winsor.solve_a_c_sigma(1.0, 1.0)
    good = certificates.winsor_minorant(a, 1.0)
    broken = certificates.QuadraticMinorant(
        alpha=good.alpha,
        beta=0.9 * good.beta,
        gamma=good.gamma,
        contact_points=good.contact_points,
    )
    report = certificates.check_certificate(broken, MomentKind.WINSOR, 1.0)
    results.append(CheckResult(
        name="certificates.negative_control",
        passed=not report.passed,
        worst=report.worst_gap,
        tolerance=certificates.GAP_RTOL,
        detail="perturbed minorant must fail",
    ))
    return results


def suite_oracle(seed: int = 1) -> list[CheckResult]:
    """Grid minimization agrees with the analytic roots; random three-point
    laws never undercut any bound; the truncated collapse reaches zero."""
    results = []

    worst_value = 0.0
    worst_cell = 0.0
    for c, sigma in ORACLE_PAIRS:
        analytic_w = winsor.lower_bound_fixed_c(BoundQuery(c, sigma))
        found = oracle.refine_grid_min(c, sigma, MomentKind.WINSOR)
        worst_value = max(worst_value, _relative_gap(found.min_value, analytic_w.bound))
        worst_cell = max(
            worst_cell,
            abs(math.log(found.argmin_a / analytic_w.a_c_sigma)) / math.log(found.cell_ratio),
        )

        analytic_t = trunc.lower_bound_trunc(BoundQuery(c, sigma))
        found = oracle.refine_grid_min(c, sigma, MomentKind.TRUNC)
        worst_value = max(worst_value, _relative_gap(found.min_value, analytic_t.bound))
        worst_cell = max(
            worst_cell,
            abs(math.log(found.argmin_a / analytic_t.extremal.a)) / math.log(found.cell_ratio),
        )
    results.append(_bounded_check("oracle.two_point_grid_min_value", worst_value, 1e-6))
    results.append(_bounded_check("oracle.two_point_grid_min_argmin", worst_cell, 1.0,
                                  "within one refined grid cell"))

    worst_value = 0.0
    worst_cell = 0.0
    for sigma in (0.5, 1.0, 10.0):
        analytic = winsor.lower_bound_universal(sigma)
        found = oracle.universal_grid_min(sigma)
        worst_value = max(worst_value, _relative_gap(found.min_value, analytic.bound))
        worst_cell = max(
            worst_cell,
            abs(math.log(found.argmin_a / analytic.a_sigma)) / math.log(found.cell_ratio),
            abs(math.log(found.argmin_c / analytic.c_sigma)) / math.log(found.cell_ratio_c),
        )
    results.append(_bounded_check("oracle.universal_grid_min_value", worst_value, 1e-6))
    results.append(_bounded_check("oracle.universal_grid_min_argmin", worst_cell, 1.0))

    # Strictness: one refined cell away from the argmin the moment exceeds
    # the minimum by a strictly positive margin.
    worst = -math.inf
    for c, sigma in ((1.0, 1.0), (2.0, 10.0)):
        found = oracle.refine_grid_min(c, sigma, MomentKind.WINSOR)
        for factor in (found.cell_ratio**3, found.cell_ratio**-3):
            nearby = float(oracle.two_point_moment_grid(
                MomentKind.WINSOR, c, sigma, np.array([found.argmin_a * factor])
            )[0])
            worst = max(worst, (found.min_value - nearby) / found.min_value)
    results.append(_bounded_check("oracle.argmin_uniqueness_margin", worst, -1e-12,
                                  "values one refined cell away strictly exceed the minimum"))

    probe = oracle.sample_three_point(1.0, 100_000, seed)
    floor_fixed = winsor.lower_bound_fixed_c(BoundQuery(1.0, 1.0)).bound
    floor_universal = winsor.lower_bound_universal(1.0).bound
    floor_trunc = trunc.lower_bound_trunc(BoundQuery(1.0, 1.0)).bound
    margins = [
        float(np.min(oracle.probe_moments(probe, MomentKind.WINSOR, 1.0))) - floor_fixed,
        float(np.min(oracle.probe_moments(probe, MomentKind.WINSOR, probe.tilts)))
        - floor_universal,
        float(np.min(oracle.probe_moments(probe, MomentKind.TRUNC, 1.0))) - floor_trunc,
    ]
    results.append(_bounded_check("oracle.three_point_probes", -min(margins), 1e-12,
                                  f"{probe.support.shape[0]} samples, seed={seed}"))

    points = oracle.trunc_collapse_sequence(1.0, (0.5, 0.2, 0.1, 0.05))
    moments = [p.moment for p in points]
    collapse_ok = all(m2 < m1 for m1, m2 in zip(moments, moments[1:])) and moments[-1] < 1e-2
    winsor_floor = winsor.lower_bound_universal(1.0).bound
    floor_ok = all(
        winsor.optimal_winsor_moment(p.a, 1.0) >= winsor_floor * (1.0 - 1e-12)
        for p in points
    )
    results.append(CheckResult(
        name="oracle.trunc_collapse",
        passed=collapse_ok and floor_ok,
        worst=moments[-1],
        tolerance=1e-2,
        detail="decreasing to ~0 while the Winsorized floor holds",
    ))
    return results


def suite_asymptotics() -> list[CheckResult]:
    """Convergence to the leading-order laws and the constants they pin."""
    results = []
    constants = asymptotics.solve_t_star()

    results.append(_bounded_check(
        "asymptotics.t_star_identity",
        abs(2.0 * (1.0 - constants.t_star) - constants.minus_ln_t_star),
        1e-10,
    ))

    sigma = 1e-3
    sigma2 = sigma * sigma
    worst = 0.0
    for c in (0.5, 1.0, 2.0, 5.0):
        slope = asymptotics.winsor_small_sigma_slope(c)
        bound = winsor.lower_bound_fixed_c(BoundQuery(c, sigma)).bound
        worst = max(worst, abs((bound - 1.0) / sigma2 / slope - 1.0))
        bound_t = trunc.lower_bound_trunc(BoundQuery(c, sigma)).bound
        worst = max(worst, abs((bound_t - 1.0) / sigma2 / (-c) - 1.0))
    results.append(_bounded_check("asymptotics.small_sigma_slopes", worst, 1e-2))

    # sigma -> infinity: exact/asymptote within 30% by sigma = 1e6 and
    # |ratio - 1| shrinking monotonically along the big-sigma ladder.
    ladder = (1e4, 1e6, 1e8, 1e10)
    cs = (1.0, 1.5, 2.0, 3.0)
    worst_at_1e6 = 0.0
    worst_monotone = 0.0
    for c in cs:
        coeff_w = asymptotics.winsor_large_sigma_coeff(c)
        gaps_w, gaps_t = [], []
        for s in ladder:
            log_term = math.log(s) ** 2 / (s * s)
            ratio_w = winsor.lower_bound_fixed_c(BoundQuery(c, s)).bound / (coeff_w * log_term)
            ratio_t = trunc.lower_bound_trunc(BoundQuery(c, s)).bound / (
                asymptotics.trunc_asymptote(c, s, Regime.LARGE_SIGMA)
            )
            gaps_w.append(abs(ratio_w - 1.0))
            gaps_t.append(abs(ratio_t - 1.0))
            if s == 1e6:
                worst_at_1e6 = max(worst_at_1e6, gaps_w[-1], gaps_t[-1])
        worst_monotone = max(
            worst_monotone, max(g2 - g1 for g1, g2 in zip(gaps_w, gaps_w[1:]))
        )
        if c <= 2.0:
            # the truncated ratio crosses 1 inside the ladder for larger c,
            # so its distance to 1 is only monotone up to c = 2 here
            worst_monotone = max(
                worst_monotone, max(g2 - g1 for g1, g2 in zip(gaps_t, gaps_t[1:]))
            )
    gaps_u = []
    for s in ladder:
        ratio = winsor.lower_bound_universal(s).bound / asymptotics.universal_asymptote(
            s, Regime.LARGE_SIGMA
        )
        gaps_u.append(abs(ratio - 1.0))
        if s == 1e6:
            worst_at_1e6 = max(worst_at_1e6, gaps_u[-1])
    worst_monotone = max(
        worst_monotone, max(g2 - g1 for g1, g2 in zip(gaps_u, gaps_u[1:]))
    )
    results.append(_bounded_check("asymptotics.large_sigma_within_30pct", worst_at_1e6, 0.30))
    results.append(_bounded_check("asymptotics.large_sigma_monotone_approach",
                                  worst_monotone, 0.0))

    ratio_1e10 = asymptotics.universal_asymptote(1e10, Regime.LARGE_SIGMA) / (
        winsor.lower_bound_universal(1e10).bound
    )
    results.append(_bounded_check(
        "asymptotics.slow_convergence_regression",
        abs(ratio_1e10 - 1.2011783441755197),
        1e-3,
        f"asymptote/exact at sigma=1e10 = {ratio_1e10:.6f}",
    ))

    # Winsorized-over-truncated separation climbs toward e^c; pinned within
    # 5% at sigma=1e10 for c=1 (the approach is only logarithmic in sigma).
    worst_monotone = 0.0
    for c in (1.0, 1.5, 2.0):
        ratios = []
        for s in ladder:
            ratios.append(
                winsor.lower_bound_fixed_c(BoundQuery(c, s)).bound
                / trunc.lower_bound_trunc(BoundQuery(c, s)).bound
                / math.exp(c)
            )
        worst_monotone = max(
            worst_monotone, max(r1 - r2 for r1, r2 in zip(ratios, ratios[1:]))
        )
        if c == 1.0:
            separation_gap = abs(ratios[-1] - 1.0)
    results.append(_bounded_check("asymptotics.exp_c_separation_monotone",
                                  worst_monotone, 0.0))
    results.append(_bounded_check("asymptotics.exp_c_separation_at_1e10",
                                  separation_gap, 0.05, "c=1"))

    slope_min = minimize_scalar(
        asymptotics.winsor_small_sigma_slope,
        bounds=(1e-6, 20.0),
        method="bounded",
        options={"xatol": 1e-8},
    )
    coeff_min = minimize_scalar(
        asymptotics.winsor_large_sigma_coeff,
        bounds=(1e-6, 20.0),
        method="bounded",
        options={"xatol": 1e-8},
    )
    worst = max(
        abs(slope_min.x - constants.minus_ln_t_star),
        abs(slope_min.fun - constants.small_sigma_universal_slope),
        abs(coeff_min.x - 2.0),
        abs(coeff_min.fun - constants.large_sigma_universal_coeff),
    )
    results.append(_bounded_check("asymptotics.infimum_identities", worst, 1e-6))

    return results


SUITES = {
    "roots": suite_roots,
    "ordering": suite_ordering,
    "certificates": suite_certificates,
    "oracle": suite_oracle,
    "asymptotics": suite_asymptotics,
}


def run_suite(name: str, seed: int = 1) -> list[CheckResult]:
    """Run one named suite, or all of them in order."""
    if name == "all":
        out: list[CheckResult] = []
        for suite_name in SUITES:
            out.extend(run_suite(suite_name, seed))
        return out
    if name not in SUITES:
        raise KeyError(name)
    if name == "oracle":
        return suite_oracle(seed)
    return SUITES[name]()
