#include "sympint/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "sympint/random.hpp"

namespace sympint {

namespace {

void require_weight(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw BadParams("combination weight must lie in [0, 1], got " + std::to_string(a));
    }
}

DiffMap linear_map(SquareMatrix m) {
    DiffMap map;
    map.apply = [m](const PhasePoint& z) { return m * z; };
    map.tangent = [m](const PhasePoint&) { return m; };
    return map;
}

}  // namespace

PhasePoint rho_combination(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                           const PhasePoint& z_next) {
    require_weight(dec.weight_a);
    if (z_prev.dof() != z_next.dof()) {
        throw DimensionMismatch("combination needs points of equal dimension");
    }
    return dec.weight_a * dec.psi1.apply(z_prev) + (1.0 - dec.weight_a) * dec.psi2.apply(z_next);
}

std::vector<double> consistency_limit_check(const DecompositionFamily& family, const PhasePoint& z,
                                            std::span<const double> radii, int probes_per_radius,
                                            std::uint64_t seed) {
    if (radii.empty()) throw BadParams("consistency limit check needs at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw BadParams("radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1])) throw BadParams("radii must be decreasing");
    }
    if (probes_per_radius < 1) throw BadParams("needs at least one probe per radius");

    Rng rng(seed);
    std::vector<double> deviations;
    deviations.reserve(radii.size());
    for (double r : radii) {
        double worst = 0.0;
        for (int k = 0; k < probes_per_radius; ++k) {
            const PhasePoint z_next = z + r * rng.unit_vector(z.dof());
            const ConsistencyDecomposition dec = family(z, z_next);
            worst = std::max(worst, (dec.psi1.apply(z) - z).inf_norm());
            worst = std::max(worst, (dec.psi1.apply(z_next) - z_next).inf_norm());
            worst = std::max(worst, (dec.psi2.apply(z) - z).inf_norm());
            worst = std::max(worst, (dec.psi2.apply(z_next) - z_next).inf_norm());
        }
        deviations.push_back(worst);
    }
    return deviations;
}

ResidualNorm tangent_identity_residual(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                                       const PhasePoint& z_next, const PhasePoint& v) {
    require_weight(dec.weight_a);
    const PhasePoint zbar1 = dec.psi1.apply(z_prev);
    const PhasePoint zbar2 = dec.psi2.apply(z_next);
    if ((zbar1 - zbar2).inf_norm() > 1e-10 * (1.0 + zbar1.inf_norm())) {
        throw NoConsistencyPoint("psi_1(z_k) and psi_2(z_{k+1}) disagree by " +
                                 std::to_string((zbar1 - zbar2).inf_norm()));
    }
    const SquareMatrix t1 = dec.psi1.tangent(z_prev);
    const SquareMatrix t2 = dec.psi2.tangent(z_next);
    const PhasePoint v1 = solve_linear(t1, v);
    const PhasePoint v2 = solve_linear(t2, v);
    const PhasePoint defect =
        dec.weight_a * (t1 * v1) + (1.0 - dec.weight_a) * (t2 * v2) - v;
    return {defect.two_norm(), 1.0 + v.two_norm()};
}

InterleaveResiduals interleave_residual(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                                        const PhasePoint& z_next) {
    const SquareMatrix t1 = dec.psi1.tangent(z_prev);
    const SquareMatrix t2 = dec.psi2.tangent(z_next);
    const SquareMatrix j = canonical_j(t1.dof());

    const SquareMatrix t1i = inverse(t1);
    const SquareMatrix t2i = inverse(t2);
    const SquareMatrix back1 = t1i.transposed() * j * t1i;
    const SquareMatrix back2 = t2i.transposed() * j * t2i;
    const double bi1 = t1i.frobenius_norm();
    const double bi2 = t2i.frobenius_norm();

    const SquareMatrix fwd1 = t1.transposed() * j * t1;
    const SquareMatrix fwd2 = t2.transposed() * j * t2;
    const double f1 = t1.frobenius_norm();
    const double f2 = t2.frobenius_norm();

    return {{(back1 - back2).frobenius_norm(), 1.0 + bi1 * bi1 + bi2 * bi2},
            {(fwd1 - fwd2).frobenius_norm(), 1.0 + f1 * f1 + f2 * f2}};
}

ResidualNorm hamiltonian_operator_residual(const ConsistencyDecomposition& dec,
                                           const PhasePoint& z_prev, const PhasePoint& z_next) {
    return hamiltonian_residual(dec.psi1.tangent(z_prev) - dec.psi2.tangent(z_next));
}

ResidualNorm curve_derivative_check(const ConsistencyDecomposition& dec, const PhasePoint& z_prev,
                                    const PhasePoint& z_next, CurveParameterization param,
                                    const PhasePoint& v1, const PhasePoint& v2) {
    const PhasePoint vhat1 = dec.psi1.tangent(z_prev) * v1;
    const PhasePoint vhat2 = dec.psi2.tangent(z_next) * v2;

    const auto curve = [&](double tau) -> PhasePoint {
        if (param == CurveParameterization::linear) {
            return tau * vhat1 + (1.0 - tau) * vhat2;
        }
        const double c = std::cos(tau);
        const double s = std::sin(tau);
        return (c * c) * vhat1 + (s * s) * vhat2;
    };
    const auto exact_derivative = [&](double tau) -> PhasePoint {
        if (param == CurveParameterization::linear) return vhat1 - vhat2;
        return (2.0 * std::cos(tau) * std::sin(tau)) * (vhat2 - vhat1);
    };

    const double span = (param == CurveParameterization::linear) ? 1.0 : 1.5707963267948966;
    const double delta = std::cbrt(std::numeric_limits<double>::epsilon()) * span;
    double worst = 0.0;
    for (int i = 1; i <= 5; ++i) {
        const double tau = span * static_cast<double>(i) / 6.0;
        const PhasePoint fd = (1.0 / (2.0 * delta)) * (curve(tau + delta) - curve(tau - delta));
        const PhasePoint target = exact_derivative(tau);
        worst = std::max(worst, (fd - target).inf_norm() / (1.0 + target.inf_norm()));
    }
    return {worst, 1.0};
}

ConsistencyDecomposition scheme_to_decomposition(const ConsistencyRule& rule) {
    if (rule.kind() != RuleKind::alpha && rule.kind() != RuleKind::b_matrix) {
        throw BadParams("decomposition bridge needs an alpha or b-matrix rule");
    }
    const SquareMatrix two_b = 2.0 * rule.jac_prev();
    const SquareMatrix two_c = 2.0 * rule.jac_next();
    // Both halves must be local diffeomorphisms.
    LuDecomposition check_b(two_b);
    LuDecomposition check_c(two_c);

    ConsistencyDecomposition dec;
    dec.psi1 = linear_map(two_b);
    dec.psi2 = linear_map(two_c);
    dec.weight_a = 0.5;
    dec.label = "affine-bridge(" + rule.label() + ")";
    return dec;
}

SquareMatrix harmonic_flow_matrix(std::span<const double> omegas, double t) {
    const int n = static_cast<int>(omegas.size());
    if (n < 1) throw BadParams("flow matrix needs at least one frequency");
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const double w = omegas[static_cast<std::size_t>(i)];
        if (!(w > 0.0)) throw BadParams("flow frequencies must be positive");
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        m(i, i) = c;
        m(i, n + i) = s / w;
        m(n + i, i) = -w * s;
        m(n + i, n + i) = c;
    }
    return m;
}

ConsistencyDecomposition harmonic_flow_decomposition(std::span<const double> omegas, double h) {
    ConsistencyDecomposition dec;
    dec.psi1 = linear_map(harmonic_flow_matrix(omegas, 0.5 * h));
    dec.psi2 = linear_map(harmonic_flow_matrix(omegas, -0.5 * h));
    dec.weight_a = 0.5;
    dec.label = "harmonic-flow";
    return dec;
}

DecompositionFamily harmonic_flow_family(std::vector<double> omegas) {
    return [omegas = std::move(omegas)](const PhasePoint& z_prev, const PhasePoint& z_next) {
        const double h = (z_next - z_prev).two_norm();
        return harmonic_flow_decomposition(omegas, h);
    };
}

double candidate_field_gap(const ConsistencyDecomposition& dec, const HamiltonianSystem& sys,
                           const PhasePoint& z_prev, const PhasePoint& z_next) {
    const PhasePoint zbar = rho_combination(dec, z_prev, z_next);
    const PhasePoint candidate =
        0.5 * (dec.psi1.tangent(z_prev) * vector_field(sys, z_prev) +
               dec.psi2.tangent(z_next) * vector_field(sys, z_next));
    return (candidate - vector_field(sys, zbar)).inf_norm();
}

}  // namespace sympint
