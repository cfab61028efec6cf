#pragma once

// Autonomous Hamiltonian systems on (R^{2n}, omega_0): energy value,
// gradient, Hessian and the induced vector field, plus a small catalog
// of built-in test systems and derivative self-validation.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sympint/linalg.hpp"

namespace sympint {

/// Evaluatable description of H.  The gradient layout is
/// (dH/dq_1..dH/dq_n, dH/dp_1..dH/dp_n), matching the (q, p) layout of
/// PhasePoint, and the vector field follows Hamilton's equations
/// qdot = dH/dp, pdot = -dH/dq.
struct HamiltonianSystem {
    std::string name;
    int dof = 1;
    std::function<double(const PhasePoint&)> value;
    std::function<PhasePoint(const PhasePoint&)> gradient;
    std::function<SquareMatrix(const PhasePoint&)> hessian;
    /// Predicate marking where H is smooth; empty means everywhere.
    std::function<bool(const PhasePoint&)> domain;
    /// Closed-form flow map (z0, t) -> z(t) when one exists, else empty.
    std::function<PhasePoint(const PhasePoint&, double)> exact_flow;

    bool in_domain(const PhasePoint& z) const { return !domain || domain(z); }
};

struct SystemParams {
    int dof = 1;                       // harmonic: number of modes
    std::vector<double> frequencies;   // harmonic: per-mode omega, empty = all 1
    double mu = 1.0;                   // kepler: gravitational parameter
};

/// Catalog factory: "harmonic", "pendulum", "kepler".
HamiltonianSystem builtin_system(const std::string& name, const SystemParams& params = {});

/// X_H(z) = (dH/dp, -dH/dq).  Throws OutOfDomain outside the domain
/// guard (e.g. a Kepler collision).
PhasePoint vector_field(const HamiltonianSystem& sys, const PhasePoint& z);

/// Jacobian of the vector field: rows of the Hessian reordered with the
/// Hamilton sign pattern (dX_H/dz = J^T H_zz for the canonical J).
SquareMatrix field_jacobian(const HamiltonianSystem& sys, const PhasePoint& z);

/// Max over the samples of the relative deviation between the analytic
/// gradient/Hessian and central finite differences of value/gradient.
ResidualNorm validate_derivatives(const HamiltonianSystem& sys, std::span<const PhasePoint> samples);

/// Fixed-step trajectory record.
struct Trajectory {
    std::string system_name;
    double stepsize = 0.0;
    std::vector<double> times;
    std::vector<PhasePoint> states;
    std::vector<double> energies;
    std::vector<int> solver_iterations;  // one entry per step taken
};

}  // namespace sympint
