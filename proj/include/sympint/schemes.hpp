#pragma once

// The implicit one-step family z_{k+1} = z_k + h * X_H(zbar) built
// around a consistency point zbar = f(z_k, z_{k+1}).  Shipped rules are
// affine (constant partial Jacobians B = df/dz_k and C = df/dz_{k+1});
// a hook for user-supplied nonlinear rules with callable Jacobians is
// exposed as well.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "sympint/hamiltonian.hpp"
#include "sympint/linalg.hpp"

namespace sympint {

enum class RuleKind { alpha, b_matrix, affine_pair, custom };

class ConsistencyRule {
public:
    using PointFn = std::function<PhasePoint(const PhasePoint&, const PhasePoint&)>;
    using JacobianFn = std::function<SquareMatrix(const PhasePoint&, const PhasePoint&)>;

    /// zbar = (z_k + z_{k+1}) / 2; the a = 1/2 member of the family.
    static ConsistencyRule midpoint(int dof);

    /// qbar = a q_k + (1-a) q_{k+1}, pbar = (1-a) p_k + a p_{k+1}.
    /// The q and p blocks are weighted oppositely on purpose; only this
    /// mixed form keeps the pair conditions for every a.
    static ConsistencyRule alpha(double a, int dof);

    /// B = (I + b)/2, C = (I - b)/2.
    static ConsistencyRule b_matrix(SquareMatrix b);

    /// Arbitrary stored pair; no validity is implied.  Non-symplectic
    /// pairs (e.g. explicit Euler, B = I, C = 0) are constructible so
    /// the verifier can demonstrate failure.
    static ConsistencyRule affine_pair(SquareMatrix jac_prev, SquareMatrix jac_next);

    /// Nonlinear hook: f plus its two partial Jacobians evaluated at a
    /// pair of points.  No built-in rule uses it.
    static ConsistencyRule custom(int dof, PointFn point, JacobianFn jac_prev, JacobianFn jac_next,
                                  std::string label);

    RuleKind kind() const { return kind_; }
    int dof() const { return dof_; }
    const std::string& label() const { return label_; }
    bool is_affine() const { return kind_ != RuleKind::custom; }

    /// zbar = f(z_k, z_{k+1}).
    PhasePoint point(const PhasePoint& z_prev, const PhasePoint& z_next) const;

    /// Constant Jacobians of an affine rule; throws BadParams for the
    /// custom kind (use the _at variants there).
    const SquareMatrix& jac_prev() const;
    const SquareMatrix& jac_next() const;

    SquareMatrix jac_prev_at(const PhasePoint& z_prev, const PhasePoint& z_next) const;
    SquareMatrix jac_next_at(const PhasePoint& z_prev, const PhasePoint& z_next) const;

private:
    ConsistencyRule() = default;

    RuleKind kind_ = RuleKind::alpha;
    int dof_ = 0;
    std::string label_;
    SquareMatrix jac_prev_, jac_next_;  // affine kinds
    PointFn point_fn_;                  // custom kind
    JacobianFn jac_prev_fn_, jac_next_fn_;
};

PhasePoint consistency_point(const ConsistencyRule& rule, const PhasePoint& z_prev,
                             const PhasePoint& z_next);

/// The induced (B, C) pair of an affine rule.
std::pair<SquareMatrix, SquareMatrix> rule_jacobians(const ConsistencyRule& rule);

/// Residuals of the two certification conditions on (B, C):
/// partition  B + C - I = 0,
/// exchange   B J - J C^T = 0,
/// both scaled by 1 + ||B||_F + ||C||_F.
struct PairConditionResiduals {
    ResidualNorm partition;
    ResidualNorm exchange;
};
PairConditionResiduals pair_condition_residuals(const ConsistencyRule& rule);
PairConditionResiduals pair_condition_residuals(const SquareMatrix& jac_prev,
                                                const SquareMatrix& jac_next);

/// For a rule whose partition residual vanishes, the exchange condition
/// holds iff B - C is a Hamiltonian matrix.  Returns both residuals so
/// the equivalence can be checked numerically; throws
/// PreconditionViolated when the partition condition fails.
struct EquivalenceResiduals {
    ResidualNorm exchange;
    ResidualNorm difference_hamiltonian;
};
EquivalenceResiduals equivalence_residuals(const ConsistencyRule& rule);

enum class SolverMethod { newton, fixed_point };

struct SolverConfig {
    SolverMethod method = SolverMethod::newton;
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iters = 50;
};

struct StepResult {
    PhasePoint z_next;
    PhasePoint z_bar;  // consistency point actually used
    int iterations = 0;
    double residual_inf_norm = 0.0;
    bool converged = false;
};

/// The step solver ran out of iterations; carries the last iterate.
struct NoConvergence : Error {
    NoConvergence(const std::string& msg, StepResult last_result)
        : Error(msg), last(std::move(last_result)) {}
    StepResult last;
};

/// A step inside integrate() failed; carries the trajectory up to the
/// failing step.
struct IntegrateFailure : Error {
    IntegrateFailure(const std::string& msg, std::size_t step_index, Trajectory partial_trajectory)
        : Error(msg), failed_step(step_index), partial(std::move(partial_trajectory)) {}
    std::size_t failed_step = 0;
    Trajectory partial;
};

/// Psi(z_k, z_{k+1}) = z_{k+1} - z_k - h X_H(f(z_k, z_{k+1})).
PhasePoint implicit_residual(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h,
                             const PhasePoint& z_prev, const PhasePoint& z_next);

/// Solve Psi = 0 for z_{k+1}.  Newton uses the analytic Jacobian
/// I - h dX_H(zbar) C; fixed point iterates the update map directly.
/// The initial guess is the explicit Euler predictor.  h may be
/// negative (backward step).
StepResult step(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h,
                const PhasePoint& z_prev, const SolverConfig& cfg = {});

/// Repeated step() with bookkeeping.  times[i] = i*h; energies are
/// recomputable as value(states[i]).
Trajectory integrate(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h, int steps,
                     const PhasePoint& z0, const SolverConfig& cfg = {});

}  // namespace sympint
