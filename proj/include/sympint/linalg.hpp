#pragma once

// Dense linear algebra on 2n-dimensional phase space: phase points,
// square 2n x 2n matrices, the canonical complex structure J, the
// symplectic / Hamiltonian matrix predicates, a partial-pivoting solver
// and central-difference Jacobians.  Dimensions are desk scale
// (2n <= ~20), so everything is plain dense storage.

#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

#include "sympint/errors.hpp"

namespace sympint {

/// A point z in R^{2n}, stored as (q_1..q_n, p_1..p_n).
class PhasePoint {
public:
    PhasePoint() = default;
    explicit PhasePoint(int dof);
    PhasePoint(int dof, std::vector<double> coords);

    /// Build from a flat (q.., p..) list; the length must be even.
    static PhasePoint from_coords(std::vector<double> coords);

    int dof() const { return n_; }
    int size() const { return 2 * n_; }

    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    double q(int i) const { return c_[static_cast<std::size_t>(i)]; }
    double p(int i) const { return c_[static_cast<std::size_t>(n_ + i)]; }

    const std::vector<double>& coords() const { return c_; }

    double inf_norm() const;
    double two_norm() const;
    bool all_finite() const;

private:
    int n_ = 0;
    std::vector<double> c_;
};

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b);
PhasePoint operator-(const PhasePoint& a, const PhasePoint& b);
PhasePoint operator*(double s, const PhasePoint& a);

/// Dense real 2n x 2n matrix (row major).
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int dof);  // zero matrix
    SquareMatrix(int dof, std::vector<double> entries);

    static SquareMatrix identity(int dof);

    int dof() const { return n_; }
    int size() const { return 2 * n_; }

    double operator()(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * n_) +
                  static_cast<std::size_t>(j)];
    }
    double& operator()(int i, int j) {
        return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * n_) +
                  static_cast<std::size_t>(j)];
    }

    SquareMatrix transposed() const;
    double frobenius_norm() const;
    double inf_norm() const;  // max absolute row sum
    double max_abs() const;
    bool all_finite() const;

private:
    int n_ = 0;
    std::vector<double> e_;
};

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(double s, const SquareMatrix& a);
PhasePoint operator*(const SquareMatrix& a, const PhasePoint& x);

/// Raw residual norm plus the normalization used to judge it.
struct ResidualNorm {
    double value = 0.0;  // >= 0
    double scale = 1.0;  // > 0

    double normalized() const { return value / scale; }
    bool within(double tol) const { return normalized() <= tol; }
};

/// The canonical complex structure [[0, -I], [I, 0]].  Satisfies
/// J^2 = -I and J^T = -J exactly (entries are 0 and +-1).
SquareMatrix canonical_j(int dof);

/// Frobenius norm of b^T J + J b, scaled by 1 + ||b||_F.  Zero iff b is
/// a Hamiltonian matrix.
ResidualNorm hamiltonian_residual(const SquareMatrix& b);

/// Frobenius norm of A^T J A - J, scaled by 1 + ||A||_F^2.  Zero iff A
/// is a symplectic matrix.
ResidualNorm symplectic_residual(const SquareMatrix& a);

bool is_hamiltonian(const SquareMatrix& b, double tol = 1e-10);
bool is_symplectic(const SquareMatrix& a, double tol = 1e-10);

/// LU factorization with partial pivoting.  Throws SingularMatrix when a
/// pivot magnitude falls below eps_machine * ||A||_inf.
class LuDecomposition {
public:
    explicit LuDecomposition(SquareMatrix a);

    PhasePoint solve(const PhasePoint& rhs) const;
    SquareMatrix solve(const SquareMatrix& rhs) const;
    double determinant() const;

private:
    SquareMatrix lu_;
    std::vector<int> perm_;
    int parity_ = 1;
};

PhasePoint solve_linear(const SquareMatrix& a, const PhasePoint& rhs);
SquareMatrix solve_linear(const SquareMatrix& a, const SquareMatrix& rhs);
SquareMatrix inverse(const SquareMatrix& a);

/// Determinant via Gaussian elimination; returns 0 for an exactly
/// singular matrix instead of throwing.
double determinant(const SquareMatrix& a);

using VectorMap = std::function<PhasePoint(const PhasePoint&)>;
using ScalarMap = std::function<double(const PhasePoint&)>;

/// Central-difference Jacobian with per-coordinate step
/// cbrt(eps_machine) * max(1, |z_i|).  Throws NonFiniteEvaluation when g
/// returns a non-finite value at a probe point.
SquareMatrix fd_jacobian(const VectorMap& g, const PhasePoint& z);

/// Central-difference gradient of a scalar map, same stepping rule.
PhasePoint fd_gradient(const ScalarMap& f, const PhasePoint& z);

}  // namespace sympint
