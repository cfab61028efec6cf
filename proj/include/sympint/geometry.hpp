#pragma once

// Geometric layer: decompositions of an implicit update into two local
// diffeomorphisms psi_1, psi_2 that agree at the consistency point,
// the weighted combination producing that point, and tangent-space
// residuals for the identity, interleaving and Hamiltonian-difference
// properties of such decompositions.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sympint/hamiltonian.hpp"
#include "sympint/linalg.hpp"
#include "sympint/schemes.hpp"

namespace sympint {

/// A differentiable map with an analytic tangent-map evaluator.
struct DiffMap {
    std::function<PhasePoint(const PhasePoint&)> apply;
    std::function<SquareMatrix(const PhasePoint&)> tangent;
};

/// psi_1 is evaluated at z_k, psi_2 at z_{k+1}; when both hit the same
/// point zbar the pair decomposes an implicit update with consistency
/// map psi_2^{-1} o psi_1.
struct ConsistencyDecomposition {
    DiffMap psi1;
    DiffMap psi2;
    double weight_a = 0.5;
    std::string label;
};

/// Re-derives a decomposition for a given pair of points (flow-based
/// decompositions scale their time step with the pair separation).
using DecompositionFamily =
    std::function<ConsistencyDecomposition(const PhasePoint&, const PhasePoint&)>;

/// a * psi_1(z_k) + (1 - a) * psi_2(z_{k+1}); independent of a whenever
/// psi_1(z_k) = psi_2(z_{k+1}).
PhasePoint rho_combination(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                           const PhasePoint& z_next);

/// For each radius, probe z_next on the sphere around z, re-derive the
/// decomposition for the pair, and report the worst deviation of psi_1
/// and psi_2 from the identity at the pair's endpoints.  The sequence
/// must tend to zero for a consistent family.  Radii must be decreasing.
std::vector<double> consistency_limit_check(const DecompositionFamily& family, const PhasePoint& z,
                                            std::span<const double> radii, int probes_per_radius,
                                            std::uint64_t seed);

/// || a T1 (T1^{-1} v) + (1-a) T2 (T2^{-1} v) - v || / (1 + ||v||), the
/// tangent form of the statement that the weighted combination acts as
/// the identity at the consistency point.  Requires the consistency
/// point to exist for the pair (throws NoConsistencyPoint).
ResidualNorm tangent_identity_residual(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                                       const PhasePoint& z_next, const PhasePoint& v);

/// inverse_form: || T1^{-T} J T1^{-1} - T2^{-T} J T2^{-1} ||_F, scaled;
/// when it vanishes the consistency map psi_2^{-1} o psi_1 is
/// symplectic, whether or not the components are.
/// forward_form: same with the forward tangents; vanishes when the
/// components themselves are symplectic.
struct InterleaveResiduals {
    ResidualNorm inverse_form;
    ResidualNorm forward_form;
};
InterleaveResiduals interleave_residual(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                                        const PhasePoint& z_next);

/// hamiltonian_residual(T psi_1(z_k) - T psi_2(z_{k+1})): the tangent
/// difference is the tau-derivative of the straight curve joining the
/// two maps.
ResidualNorm hamiltonian_operator_residual(const ConsistencyDecomposition& dec,
                                           const PhasePoint& z_prev, const PhasePoint& z_next);

enum class CurveParameterization { linear, trig };

/// Compare the finite-difference tau derivative of the curve through
/// vhat_1 = T1 v1 and vhat_2 = T2 v2 against its closed form:
/// linear    tau vhat_1 + (1 - tau) vhat_2, derivative vhat_1 - vhat_2;
/// trig      cos^2(tau) vhat_1 + sin^2(tau) vhat_2, derivative
///           2 cos(tau) sin(tau) (vhat_2 - vhat_1).
/// Returns the max relative deviation over interior tau samples.
ResidualNorm curve_derivative_check(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                                    const PhasePoint& z_next, CurveParameterization param,
                                    const PhasePoint& v1, const PhasePoint& v2);

/// Affine bridge from a rule with B + C = I: psi_1 = 2B, psi_2 = 2C,
/// a = 1/2, so the combination reproduces B z_k + C z_{k+1}.  Requires
/// B and C invertible (throws SingularMatrix) and an alpha or b-matrix
/// rule (throws BadParams).
ConsistencyDecomposition scheme_to_decomposition(const ConsistencyRule& rule);

/// Block rotation of the harmonic oscillator flow at time t.
SquareMatrix harmonic_flow_matrix(std::span<const double> omegas, double t);

/// psi_1 = flow(h/2), psi_2 = flow(-h/2): both hit the midpoint of the
/// flow arc when z_next = flow(h)(z_prev).
ConsistencyDecomposition harmonic_flow_decomposition(std::span<const double> omegas, double h);

/// Family whose time step scales with the pair separation.
DecompositionFamily harmonic_flow_family(std::vector<double> omegas);

/// Diagnostic: gap between the tangent-averaged field candidate
/// (T1 X_H(z_k) + T2 X_H(z_{k+1})) / 2 and the field at the combination
/// point.  Reported without an acceptance threshold.
double candidate_field_gap(const ConsistencyDecomposition& dec, const HamiltonianSystem& sys,
                           const PhasePoint& z_prev, const PhasePoint& z_next);

}  // namespace sympint
