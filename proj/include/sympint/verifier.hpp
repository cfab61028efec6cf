#pragma once

// Numerical certification: per-step linearized amplification matrix,
// symplecticity residuals, energy drift and convergence-order
// estimation.

#include <string>
#include <vector>

#include "sympint/hamiltonian.hpp"
#include "sympint/linalg.hpp"
#include "sympint/schemes.hpp"

namespace sympint {

enum class LinearizationSource { analytic, finite_difference };

/// Partial derivatives of the implicit residual at a converged pair and
/// the amplification matrix A with dz_{k+1} = A dz_k, defined by
/// dpsi_next * A = -dpsi_prev.
struct StepLinearization {
    SquareMatrix dpsi_prev;       // dPsi/dz_k
    SquareMatrix dpsi_next;       // dPsi/dz_{k+1}
    SquareMatrix amplification;
    LinearizationSource source = LinearizationSource::analytic;
};

/// Differentiate the implicit residual at (z_prev, z_next).  The pair
/// must satisfy ||Psi||_inf <= 1e-10 (throws StalePair otherwise).  The
/// analytic source evaluates the Hessian at the consistency point; the
/// finite-difference source probes Psi in both slots.
StepLinearization linearize_step(const HamiltonianSystem& sys, const ConsistencyRule& rule, double h,
                                 const PhasePoint& z_prev, const PhasePoint& z_next,
                                 LinearizationSource source = LinearizationSource::analytic);

/// amplification: ||A^T J A - J||_F scaled by 1 + ||A||_F^2;
/// derivative_pair: ||A1 J A1^T - A2 J A2^T||_F scaled by
/// 1 + ||A1||_F^2 + ||A2||_F^2.  The two agree as predicates whenever
/// dpsi_next is well conditioned.
struct SymplecticityResiduals {
    ResidualNorm amplification;
    ResidualNorm derivative_pair;
};
SymplecticityResiduals symplecticity_residuals(const StepLinearization& lin);

enum class Verdict { symplectic, not_symplectic, inconclusive };

const char* to_string(Verdict v);

struct VerificationReport {
    std::vector<double> per_step_symplectic_residual;  // normalized, in step order
    double max_symplectic_residual = 0.0;
    std::vector<double> a1a2_residual;
    double energy_drift = 0.0;
    double condition_i_residual = 0.0;   // partition condition on (B, C)
    double condition_ii_residual = 0.0;  // exchange condition on (B, C)
    Verdict verdict = Verdict::inconclusive;
    std::string annotation;  // nonempty when the verdict was degraded
};

/// Linearize every consecutive pair of the trajectory, aggregate the
/// residuals, measure energy drift and evaluate the pair conditions.
/// verdict = symplectic iff all residuals pass tol; not_symplectic iff
/// the max step residual exceeds 100*tol; inconclusive otherwise.
VerificationReport verify_trajectory(const HamiltonianSystem& sys, const ConsistencyRule& rule,
                                     const Trajectory& traj, double tol = 1e-8);

struct ConvergenceEstimate {
    double slope = 0.0;
    std::vector<double> errors;     // ||z_N(h_j) - z_ref(T)||_inf per level
    std::vector<double> stepsizes;  // h_j actually used
};

/// Integrate to time T at dyadically refined stepsizes h0 / 2^j and fit
/// the global-error slope in log-log.  The reference is the closed-form
/// flow when the system has one, otherwise a midpoint run at the finest
/// stepsize divided by 64.  h0 = 0 picks T/5.  Needs levels >= 3.
ConvergenceEstimate convergence_order(const HamiltonianSystem& sys, const ConsistencyRule& rule,
                                      double total_time, const PhasePoint& z0, int levels,
                                      double h0 = 0.0, const SolverConfig& cfg = {});

}  // namespace sympint
