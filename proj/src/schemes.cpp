#include "sympint/schemes.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sympint {

namespace {

void require_rule_dof(const ConsistencyRule& rule, const PhasePoint& z, const char* what) {
    if (rule.dof() != z.dof()) {
        throw DimensionMismatch(std::string(what) + ": rule dof " + std::to_string(rule.dof()) +
                                " vs point dof " + std::to_string(z.dof()));
    }
}

void validate_config(const SolverConfig& cfg) {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
        throw BadParams("solver tolerances must be positive");
    }
    if (cfg.max_iters < 1) throw BadParams("solver needs max_iters >= 1");
}

}  // namespace

ConsistencyRule ConsistencyRule::midpoint(int dof) {
    ConsistencyRule rule = alpha(0.5, dof);
    rule.label_ = "midpoint";
    return rule;
}

ConsistencyRule ConsistencyRule::alpha(double a, int dof) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw BadParams("alpha weight must lie in [0, 1], got " + std::to_string(a));
    }
    if (dof < 1) throw BadParams("rule needs dof >= 1");
    const double b = 1.0 - a;  // a + fl(1 - a) rounds to 1 exactly
    ConsistencyRule rule;
    rule.kind_ = RuleKind::alpha;
    rule.dof_ = dof;
    rule.label_ = "alpha:" + std::to_string(a);
    rule.jac_prev_ = SquareMatrix(dof);
    rule.jac_next_ = SquareMatrix(dof);
    for (int i = 0; i < dof; ++i) {
        rule.jac_prev_(i, i) = a;
        rule.jac_prev_(dof + i, dof + i) = b;
        rule.jac_next_(i, i) = b;
        rule.jac_next_(dof + i, dof + i) = a;
    }
    return rule;
}

ConsistencyRule ConsistencyRule::b_matrix(SquareMatrix b) {
    const int dof = b.dof();
    ConsistencyRule rule;
    rule.kind_ = RuleKind::b_matrix;
    rule.dof_ = dof;
    rule.label_ = "bmatrix";
    rule.jac_prev_ = SquareMatrix(dof);
    rule.jac_next_ = SquareMatrix(dof);
    for (int i = 0; i < 2 * dof; ++i) {
        for (int j = 0; j < 2 * dof; ++j) {
            const double d = (i == j) ? 1.0 : 0.0;
            rule.jac_prev_(i, j) = (d + b(i, j)) * 0.5;
            rule.jac_next_(i, j) = (d - b(i, j)) * 0.5;
        }
    }
    return rule;
}

ConsistencyRule ConsistencyRule::affine_pair(SquareMatrix jac_prev, SquareMatrix jac_next) {
    if (jac_prev.dof() != jac_next.dof()) {
        throw DimensionMismatch("affine pair: the two Jacobians must have equal dimension");
    }
    ConsistencyRule rule;
    rule.kind_ = RuleKind::affine_pair;
    rule.dof_ = jac_prev.dof();
    rule.label_ = "affine";
    rule.jac_prev_ = std::move(jac_prev);
    rule.jac_next_ = std::move(jac_next);
    return rule;
}

ConsistencyRule ConsistencyRule::custom(int dof, PointFn point, JacobianFn jac_prev,
                                        JacobianFn jac_next, std::string label) {
    if (dof < 1) throw BadParams("rule needs dof >= 1");
    if (!point || !jac_prev || !jac_next) {
        throw BadParams("custom rule needs the point map and both Jacobian callbacks");
    }
    ConsistencyRule rule;
    rule.kind_ = RuleKind::custom;
    rule.dof_ = dof;
    rule.label_ = std::move(label);
    rule.point_fn_ = std::move(point);
    rule.jac_prev_fn_ = std::move(jac_prev);
    rule.jac_next_fn_ = std::move(jac_next);
    return rule;
}

PhasePoint ConsistencyRule::point(const PhasePoint& z_prev, const PhasePoint& z_next) const {
    require_rule_dof(*this, z_prev, "consistency point");
    require_rule_dof(*this, z_next, "consistency point");
    if (kind_ == RuleKind::custom) {
        PhasePoint zbar = point_fn_(z_prev, z_next);
        require_rule_dof(*this, zbar, "consistency point (custom map)");
        return zbar;
    }
    return jac_prev_ * z_prev + jac_next_ * z_next;
}

const SquareMatrix& ConsistencyRule::jac_prev() const {
    if (kind_ == RuleKind::custom) throw BadParams("custom rule Jacobians are point dependent");
    return jac_prev_;
}

const SquareMatrix& ConsistencyRule::jac_next() const {
    if (kind_ == RuleKind::custom) throw BadParams("custom rule Jacobians are point dependent");
    return jac_next_;
}

SquareMatrix ConsistencyRule::jac_prev_at(const PhasePoint& z_prev, const PhasePoint& z_next) const {
    if (kind_ == RuleKind::custom) return jac_prev_fn_(z_prev, z_next);
    return jac_prev_;
}

SquareMatrix ConsistencyRule::jac_next_at(const PhasePoint& z_prev, const PhasePoint& z_next) const {
    if (kind_ == RuleKind::custom) return jac_next_fn_(z_prev, z_next);
    return jac_next_;
}

PhasePoint consistency_point(const ConsistencyRule& rule, const PhasePoint& z_prev,
                             const PhasePoint& z_next) {
    return rule.point(z_prev, z_next);
}

std::pair<SquareMatrix, SquareMatrix> rule_jacobians(const ConsistencyRule& rule) {
    return {rule.jac_prev(), rule.jac_next()};
}

PairConditionResiduals pair_condition_residuals(const SquareMatrix& jac_prev,
                                                const SquareMatrix& jac_next) {
    const SquareMatrix j = canonical_j(jac_prev.dof());
    const SquareMatrix sum_defect = jac_prev + jac_next - SquareMatrix::identity(jac_prev.dof());
    const SquareMatrix exchange_defect = jac_prev * j - j * jac_next.transposed();
    const double scale = 1.0 + jac_prev.frobenius_norm() + jac_next.frobenius_norm();
    return {{sum_defect.frobenius_norm(), scale}, {exchange_defect.frobenius_norm(), scale}};
}

PairConditionResiduals pair_condition_residuals(const ConsistencyRule& rule) {
    return pair_condition_residuals(rule.jac_prev(), rule.jac_next());
}

EquivalenceResiduals equivalence_residuals(const ConsistencyRule& rule) {
    const PairConditionResiduals cond = pair_condition_residuals(rule);
    if (!cond.partition.within(1e-12)) {
        throw PreconditionViolated("equivalence check assumes B + C = I; partition residual is " +
                                   std::to_string(cond.partition.normalized()));
    }
    return {cond.exchange, hamiltonian_residual(rule.jac_prev() - rule.jac_next())};
}

PhasePoint implicit_residual(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h,
                             const PhasePoint& z_prev, const PhasePoint& z_next) {
    const PhasePoint zbar = rule.point(z_prev, z_next);
    return z_next - z_prev - h * vector_field(sys, zbar);
}

StepResult step(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h,
                const PhasePoint& z_prev, const SolverConfig& cfg) {
    validate_config(cfg);
    if (h == 0.0) throw BadParams("stepsize must be nonzero");
    require_rule_dof(rule, z_prev, "step");
    if (rule.dof() != sys.dof) {
        throw DimensionMismatch("step: rule dof " + std::to_string(rule.dof()) + " vs system dof " +
                                std::to_string(sys.dof));
    }

    // Explicit Euler predictor.
    PhasePoint z = z_prev + h * vector_field(sys, z_prev);
    const SquareMatrix ident = SquareMatrix::identity(rule.dof());

    for (int iter = 0;; ++iter) {
        const PhasePoint zbar = rule.point(z_prev, z);
        if (!sys.in_domain(zbar)) {
            throw OutOfDomain(sys.name + ": consistency point left the domain during the solve");
        }
        const PhasePoint residual = z - z_prev - h * vector_field(sys, zbar);
        const double rnorm = residual.inf_norm();
        if (rnorm <= cfg.abs_tol + cfg.rel_tol * z.inf_norm()) {
            return {z, zbar, iter, rnorm, true};
        }
        if (iter >= cfg.max_iters) {
            throw NoConvergence("step solver exhausted " + std::to_string(cfg.max_iters) +
                                    " iterations, last residual " + std::to_string(rnorm),
                                StepResult{z, zbar, iter, rnorm, false});
        }
        if (cfg.method == SolverMethod::newton) {
            const SquareMatrix jac =
                ident - h * (field_jacobian(sys, zbar) * rule.jac_next_at(z_prev, z));
            z = z - solve_linear(jac, residual);
        } else {
            // z <- z_prev + h X_H(zbar), reusing the residual evaluation.
            z = z - residual;
        }
    }
}

Trajectory integrate(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h, int steps,
                     const PhasePoint& z0, const SolverConfig& cfg) {
    if (steps < 0) throw BadParams("step count must be nonnegative");
    if (!sys.in_domain(z0)) throw OutOfDomain(sys.name + ": initial state outside the domain");

    Trajectory traj;
    traj.system_name = sys.name;
    traj.stepsize = h;
    traj.times.push_back(0.0);
    traj.states.push_back(z0);
    traj.energies.push_back(sys.value(z0));

    for (int k = 0; k < steps; ++k) {
        StepResult result;
        try {
            result = step(sys, rule, h, traj.states.back(), cfg);
        } catch (const Error& e) {
            throw IntegrateFailure("step " + std::to_string(k) + " failed: " + e.what(),
                                   static_cast<std::size_t>(k), std::move(traj));
        }
        traj.times.push_back(h * static_cast<double>(k + 1));
        traj.energies.push_back(sys.value(result.z_next));
        traj.states.push_back(std::move(result.z_next));
        traj.solver_iterations.push_back(result.iterations);
    }
    return traj;
}

}  // namespace sympint
