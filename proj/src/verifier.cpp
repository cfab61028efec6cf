#include "sympint/verifier.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sympint {

StepLinearization linearize_step(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h,
                                 const PhasePoint& z_prev, const PhasePoint& z_next,
                                 LinearizationSource source) {
    const double defect = implicit_residual(sys, rule, h, z_prev, z_next).inf_norm();
    if (defect > 1e-10) {
        throw StalePair("pair does not solve the implicit equation: ||Psi||_inf = " +
                        std::to_string(defect));
    }

    StepLinearization lin;
    lin.source = source;
    if (source == LinearizationSource::analytic) {
        const PhasePoint zbar = rule.point(z_prev, z_next);
        const SquareMatrix dfield = field_jacobian(sys, zbar);
        const SquareMatrix ident = SquareMatrix::identity(rule.dof());
        lin.dpsi_prev = -1.0 * (ident + h * (dfield * rule.jac_prev_at(z_prev, z_next)));
        lin.dpsi_next = ident - h * (dfield * rule.jac_next_at(z_prev, z_next));
    } else {
        lin.dpsi_prev = fd_jacobian(
            [&](const PhasePoint& z) { return implicit_residual(sys, rule, h, z, z_next); }, z_prev);
        lin.dpsi_next = fd_jacobian(
            [&](const PhasePoint& z) { return implicit_residual(sys, rule, h, z_prev, z); }, z_next);
    }
    lin.amplification = solve_linear(lin.dpsi_next, -1.0 * lin.dpsi_prev);
    return lin;
}

SymplecticityResiduals symplecticity_residuals(const StepLinearization& lin) {
    const SquareMatrix j = canonical_j(lin.amplification.dof());
    const SquareMatrix& a1 = lin.dpsi_prev;
    const SquareMatrix& a2 = lin.dpsi_next;
    const SquareMatrix defect = a1 * j * a1.transposed() - a2 * j * a2.transposed();
    const double f1 = a1.frobenius_norm();
    const double f2 = a2.frobenius_norm();
    return {symplectic_residual(lin.amplification),
            {defect.frobenius_norm(), 1.0 + f1 * f1 + f2 * f2}};
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::symplectic: return "symplectic";
        case Verdict::not_symplectic: return "not_symplectic";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

VerificationReport verify_trajectory(const HamiltonianSystem& sys, const ConsistencyRule& rule,
                                     const Trajectory& traj, double tol) {
    if (!(tol > 0.0)) throw BadParams("verification tolerance must be positive");
    if (traj.states.empty()) throw BadParams("cannot verify an empty trajectory");

    VerificationReport report;
    bool degraded = false;

    double worst_condition_i = 0.0;
    double worst_condition_ii = 0.0;
    if (rule.is_affine()) {
        const PairConditionResiduals cond = pair_condition_residuals(rule);
        worst_condition_i = cond.partition.normalized();
        worst_condition_ii = cond.exchange.normalized();
    }

    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
        try {
            const StepLinearization lin =
                linearize_step(sys, rule, traj.stepsize, traj.states[i], traj.states[i + 1]);
            const SymplecticityResiduals res = symplecticity_residuals(lin);
            report.per_step_symplectic_residual.push_back(res.amplification.normalized());
            report.a1a2_residual.push_back(res.derivative_pair.normalized());
        } catch (const Error& e) {
            degraded = true;
            report.annotation = "step " + std::to_string(i) + ": " + e.what();
            break;
        }
        if (!rule.is_affine()) {
            const PairConditionResiduals cond = pair_condition_residuals(
                rule.jac_prev_at(traj.states[i], traj.states[i + 1]),
                rule.jac_next_at(traj.states[i], traj.states[i + 1]));
            worst_condition_i = std::max(worst_condition_i, cond.partition.normalized());
            worst_condition_ii = std::max(worst_condition_ii, cond.exchange.normalized());
        }
    }

    for (double r : report.per_step_symplectic_residual) {
        report.max_symplectic_residual = std::max(report.max_symplectic_residual, r);
    }
    for (double e : traj.energies) {
        report.energy_drift = std::max(report.energy_drift, std::abs(e - traj.energies.front()));
    }
    report.condition_i_residual = worst_condition_i;
    report.condition_ii_residual = worst_condition_ii;

    if (degraded) {
        report.verdict = Verdict::inconclusive;
    } else if (report.max_symplectic_residual <= tol && worst_condition_i <= tol &&
               worst_condition_ii <= tol) {
        report.verdict = Verdict::symplectic;
    } else if (report.max_symplectic_residual > 100.0 * tol) {
        report.verdict = Verdict::not_symplectic;
    } else {
        report.verdict = Verdict::inconclusive;
    }
    return report;
}

ConvergenceEstimate convergence_order(const HamiltonianSystem& sys, const ConsistencyRule& rule,
                                      double total_time, const PhasePoint& z0, int levels, double h0,
                                      const SolverConfig& cfg) {
    if (levels < 3) throw BadParams("slope fit needs at least 3 refinement levels");
    if (!(total_time > 0.0)) throw BadParams("total time must be positive");
    if (h0 == 0.0) h0 = total_time / 5.0;
    if (!(h0 > 0.0) || h0 > total_time) throw BadParams("coarse stepsize must lie in (0, T]");

    // Reference state at T.
    PhasePoint z_ref(z0.dof());
    if (sys.exact_flow) {
        z_ref = sys.exact_flow(z0, total_time);
    } else {
        const double h_min = h0 / std::pow(2.0, levels - 1);
        const double h_fine = h_min / 64.0;
        const long n_fine = std::lround(total_time / h_fine);
        try {
            const Trajectory fine = integrate(sys, ConsistencyRule::midpoint(z0.dof()),
                                              total_time / static_cast<double>(n_fine),
                                              static_cast<int>(n_fine), z0, cfg);
            z_ref = fine.states.back();
        } catch (const Error& e) {
            throw ReferenceUnavailable(std::string("fine-step reference run failed: ") + e.what());
        }
    }

    ConvergenceEstimate est;
    for (int level = 0; level < levels; ++level) {
        const double h_nominal = h0 / std::pow(2.0, level);
        const long n = std::max(1L, std::lround(total_time / h_nominal));
        const double h = total_time / static_cast<double>(n);
        const Trajectory traj = integrate(sys, rule, h, static_cast<int>(n), z0, cfg);
        est.stepsizes.push_back(h);
        est.errors.push_back((traj.states.back() - z_ref).inf_norm());
    }

    // Least-squares slope of log(error) against log(h).
    const int m = levels;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < m; ++i) {
        const double x = std::log(est.stepsizes[static_cast<std::size_t>(i)]);
        const double y = std::log(std::max(est.errors[static_cast<std::size_t>(i)], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    est.slope = (static_cast<double>(m) * sxy - sx * sy) / (static_cast<double>(m) * sxx - sx * sx);
    return est;
}

}  // namespace sympint
