#include "sympint/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace sympint {

namespace {

int checked_dof(int dof) {
    if (dof < 1) throw BadParams("degrees of freedom must be >= 1, got " + std::to_string(dof));
    return dof;
}

void require_same_dof(int a, int b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dof " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

}  // namespace

PhasePoint::PhasePoint(int dof) : n_(checked_dof(dof)), c_(static_cast<std::size_t>(2 * dof), 0.0) {}

PhasePoint::PhasePoint(int dof, std::vector<double> coords) : n_(checked_dof(dof)), c_(std::move(coords)) {
    if (c_.size() != static_cast<std::size_t>(2 * n_)) {
        throw DimensionMismatch("phase point needs " + std::to_string(2 * n_) + " coordinates, got " +
                                std::to_string(c_.size()));
    }
}

PhasePoint PhasePoint::from_coords(std::vector<double> coords) {
    if (coords.empty() || coords.size() % 2 != 0) {
        throw DimensionMismatch("phase point needs a nonempty even-length coordinate list");
    }
    const int dof = static_cast<int>(coords.size() / 2);
    return PhasePoint(dof, std::move(coords));
}

double PhasePoint::inf_norm() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double PhasePoint::two_norm() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return std::sqrt(s);
}

bool PhasePoint::all_finite() const {
    for (double v : c_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b) {
    require_same_dof(a.dof(), b.dof(), "phase point sum");
    PhasePoint out(a.dof());
    for (int i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

PhasePoint operator-(const PhasePoint& a, const PhasePoint& b) {
    require_same_dof(a.dof(), b.dof(), "phase point difference");
    PhasePoint out(a.dof());
    for (int i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

PhasePoint operator*(double s, const PhasePoint& a) {
    PhasePoint out(a.dof());
    for (int i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

SquareMatrix::SquareMatrix(int dof)
    : n_(checked_dof(dof)), e_(static_cast<std::size_t>(4 * dof * dof), 0.0) {}

SquareMatrix::SquareMatrix(int dof, std::vector<double> entries)
    : n_(checked_dof(dof)), e_(std::move(entries)) {
    if (e_.size() != static_cast<std::size_t>(4 * n_ * n_)) {
        throw DimensionMismatch("matrix needs " + std::to_string(4 * n_ * n_) + " entries, got " +
                                std::to_string(e_.size()));
    }
}

SquareMatrix SquareMatrix::identity(int dof) {
    SquareMatrix m(dof);
    for (int i = 0; i < m.size(); ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix out(n_);
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j) out(j, i) = (*this)(i, j);
    return out;
}

double SquareMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : e_) s += v * v;
    return std::sqrt(s);
}

double SquareMatrix::inf_norm() const {
    double m = 0.0;
    for (int i = 0; i < size(); ++i) {
        double row = 0.0;
        for (int j = 0; j < size(); ++j) row += std::abs((*this)(i, j));
        m = std::max(m, row);
    }
    return m;
}

double SquareMatrix::max_abs() const {
    double m = 0.0;
    for (double v : e_) m = std::max(m, std::abs(v));
    return m;
}

bool SquareMatrix::all_finite() const {
    for (double v : e_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_dof(a.dof(), b.dof(), "matrix sum");
    SquareMatrix out(a.dof());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_dof(a.dof(), b.dof(), "matrix difference");
    SquareMatrix out(a.dof());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_dof(a.dof(), b.dof(), "matrix product");
    SquareMatrix out(a.dof());
    const int m = a.size();
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < m; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

SquareMatrix operator*(double s, const SquareMatrix& a) {
    SquareMatrix out(a.dof());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) out(i, j) = s * a(i, j);
    return out;
}

PhasePoint operator*(const SquareMatrix& a, const PhasePoint& x) {
    require_same_dof(a.dof(), x.dof(), "matrix-vector product");
    PhasePoint out(x.dof());
    for (int i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
        out[i] = s;
    }
    return out;
}

SquareMatrix canonical_j(int dof) {
    SquareMatrix j(dof);
    for (int i = 0; i < dof; ++i) {
        j(i, dof + i) = -1.0;
        j(dof + i, i) = 1.0;
    }
    return j;
}

ResidualNorm hamiltonian_residual(const SquareMatrix& b) {
    const SquareMatrix j = canonical_j(b.dof());
    const SquareMatrix r = b.transposed() * j + j * b;
    return {r.frobenius_norm(), 1.0 + b.frobenius_norm()};
}

ResidualNorm symplectic_residual(const SquareMatrix& a) {
    const SquareMatrix j = canonical_j(a.dof());
    const SquareMatrix r = a.transposed() * j * a - j;
    const double f = a.frobenius_norm();
    return {r.frobenius_norm(), 1.0 + f * f};
}

bool is_hamiltonian(const SquareMatrix& b, double tol) { return hamiltonian_residual(b).within(tol); }

bool is_symplectic(const SquareMatrix& a, double tol) { return symplectic_residual(a).within(tol); }

LuDecomposition::LuDecomposition(SquareMatrix a) : lu_(std::move(a)) {
    const int m = lu_.size();
    perm_.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm_[static_cast<std::size_t>(i)] = i;

    const double pivot_floor = std::numeric_limits<double>::epsilon() * lu_.inf_norm();

    for (int col = 0; col < m; ++col) {
        int best = col;
        double best_mag = std::abs(lu_(col, col));
        for (int r = col + 1; r < m; ++r) {
            const double mag = std::abs(lu_(r, col));
            if (mag > best_mag) {
                best = r;
                best_mag = mag;
            }
        }
        if (best_mag < pivot_floor || best_mag == 0.0) {
            throw SingularMatrix("pivot " + std::to_string(best_mag) + " below threshold at column " +
                                 std::to_string(col));
        }
        if (best != col) {
            for (int j = 0; j < m; ++j) std::swap(lu_(col, j), lu_(best, j));
            std::swap(perm_[static_cast<std::size_t>(col)], perm_[static_cast<std::size_t>(best)]);
            parity_ = -parity_;
        }
        const double inv_pivot = 1.0 / lu_(col, col);
        for (int r = col + 1; r < m; ++r) {
            const double factor = lu_(r, col) * inv_pivot;
            lu_(r, col) = factor;
            for (int j = col + 1; j < m; ++j) lu_(r, j) -= factor * lu_(col, j);
        }
    }
}

PhasePoint LuDecomposition::solve(const PhasePoint& rhs) const {
    require_same_dof(lu_.dof(), rhs.dof(), "linear solve");
    const int m = lu_.size();
    PhasePoint x(rhs.dof());
    // forward substitution on the permuted right-hand side
    for (int i = 0; i < m; ++i) {
        double s = rhs[perm_[static_cast<std::size_t>(i)]];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (int i = m - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < m; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

SquareMatrix LuDecomposition::solve(const SquareMatrix& rhs) const {
    require_same_dof(lu_.dof(), rhs.dof(), "linear solve");
    const int m = lu_.size();
    SquareMatrix x(rhs.dof());
    for (int c = 0; c < m; ++c) {
        PhasePoint col(rhs.dof());
        for (int i = 0; i < m; ++i) col[i] = rhs(i, c);
        const PhasePoint sol = solve(col);
        for (int i = 0; i < m; ++i) x(i, c) = sol[i];
    }
    return x;
}

double LuDecomposition::determinant() const {
    double d = static_cast<double>(parity_);
    for (int i = 0; i < lu_.size(); ++i) d *= lu_(i, i);
    return d;
}

PhasePoint solve_linear(const SquareMatrix& a, const PhasePoint& rhs) {
    return LuDecomposition(a).solve(rhs);
}

SquareMatrix solve_linear(const SquareMatrix& a, const SquareMatrix& rhs) {
    return LuDecomposition(a).solve(rhs);
}

SquareMatrix inverse(const SquareMatrix& a) {
    return LuDecomposition(a).solve(SquareMatrix::identity(a.dof()));
}

double determinant(const SquareMatrix& a) {
    SquareMatrix w = a;
    const int m = w.size();
    double d = 1.0;
    for (int col = 0; col < m; ++col) {
        int best = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(w(r, col)) > std::abs(w(best, col))) best = r;
        }
        if (w(best, col) == 0.0) return 0.0;
        if (best != col) {
            for (int j = 0; j < m; ++j) std::swap(w(col, j), w(best, j));
            d = -d;
        }
        d *= w(col, col);
        for (int r = col + 1; r < m; ++r) {
            const double factor = w(r, col) / w(col, col);
            for (int j = col; j < m; ++j) w(r, j) -= factor * w(col, j);
        }
    }
    return d;
}

namespace {

// cbrt(eps) balances truncation and roundoff for second-order stencils.
double fd_step(double zi) {
    static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
    return base * std::max(1.0, std::abs(zi));
}

}  // namespace

SquareMatrix fd_jacobian(const VectorMap& g, const PhasePoint& z) {
    const int m = z.size();
    SquareMatrix jac(z.dof());
    for (int i = 0; i < m; ++i) {
        const double delta = fd_step(z[i]);
        PhasePoint zp = z;
        PhasePoint zm = z;
        zp[i] = z[i] + delta;
        zm[i] = z[i] - delta;
        const PhasePoint gp = g(zp);
        const PhasePoint gm = g(zm);
        if (!gp.all_finite() || !gm.all_finite()) {
            throw NonFiniteEvaluation("map returned NaN/Inf near coordinate " + std::to_string(i));
        }
        require_same_dof(gp.dof(), z.dof(), "finite-difference Jacobian");
        for (int r = 0; r < m; ++r) jac(r, i) = (gp[r] - gm[r]) / (2.0 * delta);
    }
    return jac;
}

PhasePoint fd_gradient(const ScalarMap& f, const PhasePoint& z) {
    const int m = z.size();
    PhasePoint grad(z.dof());
    for (int i = 0; i < m; ++i) {
        const double delta = fd_step(z[i]);
        PhasePoint zp = z;
        PhasePoint zm = z;
        zp[i] = z[i] + delta;
        zm[i] = z[i] - delta;
        const double fp = f(zp);
        const double fm = f(zm);
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw NonFiniteEvaluation("scalar map returned NaN/Inf near coordinate " + std::to_string(i));
        }
        grad[i] = (fp - fm) / (2.0 * delta);
    }
    return grad;
}

}  // namespace sympint
