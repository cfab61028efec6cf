#include "sympint/hamiltonian.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sympint {

namespace {

constexpr double kKeplerGuardRadius = 1e-8;

HamiltonianSystem make_harmonic(const SystemParams& params) {
    const int n = params.dof;
    if (n < 1) throw BadParams("harmonic oscillator needs dof >= 1");
    std::vector<double> omega = params.frequencies;
    if (omega.empty()) omega.assign(static_cast<std::size_t>(n), 1.0);
    if (omega.size() != static_cast<std::size_t>(n)) {
        throw BadParams("harmonic oscillator needs one frequency per mode");
    }
    for (double w : omega) {
        if (!(w > 0.0)) throw BadParams("harmonic frequencies must be positive");
    }

    HamiltonianSystem sys;
    sys.name = "harmonic";
    sys.dof = n;
    sys.value = [n, omega](const PhasePoint& z) {
        double h = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = omega[static_cast<std::size_t>(i)];
            h += 0.5 * (z.p(i) * z.p(i) + w * w * z.q(i) * z.q(i));
        }
        return h;
    };
    sys.gradient = [n, omega](const PhasePoint& z) {
        PhasePoint g(n);
        for (int i = 0; i < n; ++i) {
            const double w = omega[static_cast<std::size_t>(i)];
            g[i] = w * w * z.q(i);
            g[n + i] = z.p(i);
        }
        return g;
    };
    sys.hessian = [n, omega](const PhasePoint&) {
        SquareMatrix h(n);
        for (int i = 0; i < n; ++i) {
            const double w = omega[static_cast<std::size_t>(i)];
            h(i, i) = w * w;
            h(n + i, n + i) = 1.0;
        }
        return h;
    };
    // Per-mode rotation in rescaled coordinates.
    sys.exact_flow = [n, omega](const PhasePoint& z0, double t) {
        PhasePoint z(n);
        for (int i = 0; i < n; ++i) {
            const double w = omega[static_cast<std::size_t>(i)];
            const double c = std::cos(w * t);
            const double s = std::sin(w * t);
            z[i] = z0.q(i) * c + z0.p(i) * s / w;
            z[n + i] = z0.p(i) * c - z0.q(i) * w * s;
        }
        return z;
    };
    return sys;
}

HamiltonianSystem make_pendulum() {
    HamiltonianSystem sys;
    sys.name = "pendulum";
    sys.dof = 1;
    sys.value = [](const PhasePoint& z) { return 0.5 * z.p(0) * z.p(0) - std::cos(z.q(0)); };
    sys.gradient = [](const PhasePoint& z) {
        return PhasePoint(1, {std::sin(z.q(0)), z.p(0)});
    };
    sys.hessian = [](const PhasePoint& z) {
        SquareMatrix h(1);
        h(0, 0) = std::cos(z.q(0));
        h(1, 1) = 1.0;
        return h;
    };
    return sys;
}

HamiltonianSystem make_kepler(const SystemParams& params) {
    const double mu = params.mu;
    if (!(mu > 0.0)) throw BadParams("kepler needs a positive gravitational parameter");

    HamiltonianSystem sys;
    sys.name = "kepler";
    sys.dof = 2;
    sys.domain = [](const PhasePoint& z) {
        return std::hypot(z.q(0), z.q(1)) >= kKeplerGuardRadius;
    };
    sys.value = [mu](const PhasePoint& z) {
        const double r = std::hypot(z.q(0), z.q(1));
        return 0.5 * (z.p(0) * z.p(0) + z.p(1) * z.p(1)) - mu / r;
    };
    sys.gradient = [mu](const PhasePoint& z) {
        const double r = std::hypot(z.q(0), z.q(1));
        const double r3 = r * r * r;
        return PhasePoint(2, {mu * z.q(0) / r3, mu * z.q(1) / r3, z.p(0), z.p(1)});
    };
    sys.hessian = [mu](const PhasePoint& z) {
        const double r = std::hypot(z.q(0), z.q(1));
        const double r3 = r * r * r;
        const double r5 = r3 * r * r;
        SquareMatrix h(2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                h(i, j) = mu * ((i == j ? 1.0 / r3 : 0.0) - 3.0 * z.q(i) * z.q(j) / r5);
            }
            h(2 + i, 2 + i) = 1.0;
        }
        return h;
    };
    return sys;
}

}  // namespace

HamiltonianSystem builtin_system(const std::string& name, const SystemParams& params) {
    if (name == "harmonic") return make_harmonic(params);
    if (name == "pendulum") return make_pendulum();
    if (name == "kepler") return make_kepler(params);
    throw UnknownSystem("unknown system '" + name + "' (expected harmonic, pendulum or kepler)");
}

PhasePoint vector_field(const HamiltonianSystem& sys, const PhasePoint& z) {
    if (!sys.in_domain(z)) throw OutOfDomain(sys.name + ": point outside the domain guard");
    const PhasePoint g = sys.gradient(z);
    const int n = z.dof();
    PhasePoint x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = g[n + i];      // qdot = dH/dp
        x[n + i] = -g[i];     // pdot = -dH/dq
    }
    return x;
}

SquareMatrix field_jacobian(const HamiltonianSystem& sys, const PhasePoint& z) {
    if (!sys.in_domain(z)) throw OutOfDomain(sys.name + ": point outside the domain guard");
    const SquareMatrix h = sys.hessian(z);
    const int n = z.dof();
    SquareMatrix d(n);
    for (int j = 0; j < 2 * n; ++j) {
        for (int i = 0; i < n; ++i) {
            d(i, j) = h(n + i, j);
            d(n + i, j) = -h(i, j);
        }
    }
    return d;
}

ResidualNorm validate_derivatives(const HamiltonianSystem& sys, std::span<const PhasePoint> samples) {
    double worst = 0.0;
    for (const PhasePoint& z : samples) {
        if (!sys.in_domain(z)) throw OutOfDomain(sys.name + ": validation sample outside the domain");

        const PhasePoint grad = sys.gradient(z);
        const PhasePoint grad_fd = fd_gradient(sys.value, z);
        worst = std::max(worst, (grad - grad_fd).inf_norm() / (1.0 + grad.inf_norm()));

        const SquareMatrix hess = sys.hessian(z);
        const SquareMatrix hess_fd = fd_jacobian(sys.gradient, z);
        worst = std::max(worst,
                         (hess - hess_fd).frobenius_norm() / (1.0 + hess.frobenius_norm()));
    }
    return {worst, 1.0};
}

}  // namespace sympint
