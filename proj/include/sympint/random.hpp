#pragma once

// Seeded sampling helpers used by randomized probes.  Variates are
// derived from raw mt19937_64 output so that a fixed seed gives the
// same stream on every platform.

#include <cmath>
#include <cstdint>
#include <random>

#include "sympint/linalg.hpp"

namespace sympint {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double unit() {  // in [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double normal() {
        // Box-Muller; consumes two uniforms per call.
        const double u1 = std::max(unit(), 0x1.0p-53);
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    PhasePoint point_in_box(int dof, double lo, double hi) {
        PhasePoint z(dof);
        for (int i = 0; i < z.size(); ++i) z[i] = uniform(lo, hi);
        return z;
    }

    PhasePoint unit_vector(int dof) {
        PhasePoint v(dof);
        double norm = 0.0;
        while (norm < 1e-12) {
            for (int i = 0; i < v.size(); ++i) v[i] = normal();
            norm = v.two_norm();
        }
        return (1.0 / norm) * v;
    }

    SquareMatrix matrix_uniform(int dof, double lo, double hi) {
        SquareMatrix m(dof);
        for (int i = 0; i < m.size(); ++i)
            for (int j = 0; j < m.size(); ++j) m(i, j) = uniform(lo, hi);
        return m;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace sympint
