#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigloc/symmetric_matrix.hpp"

namespace eigloc {

/// Frobenius inner product <A, B> = Tr(A B^T), the entrywise dot product.
double frobenius_inner(const SymmetricMatrix& a, const SymmetricMatrix& b);

/// sqrt(<A, A>).
double frobenius_norm(const SymmetricMatrix& a);

/// Tr(A B^T) / (||A||_F ||B||_F). Throws if either matrix is zero.
double cos_matrices(const SymmetricMatrix& a, const SymmetricMatrix& b);

/// cos(A, x x^T) = x^T A x / (x^T x ||A||_F). Throws if A is zero.
double cos_rank_one(const SymmetricMatrix& a, const Landmark& x);

struct RankOneProjection {
    double tau;                // coefficient of x x^T
    SymmetricMatrix residual;  // A - tau x x^T, Frobenius-orthogonal to x x^T
};

/// Orthogonal projection of A onto span{x x^T}: tau = x^T A x / (x^T x)^2.
RankOneProjection project_rank_one(const SymmetricMatrix& a, const Landmark& x);

struct EigenDecomposition {
    Vector eigenvalues;                 // sorted nonincreasing
    std::vector<Vector> eigenvectors;   // [i] is the unit eigenvector of eigenvalues[i]
    double residual_norm;               // max_i ||A v_i - lambda_i v_i||_2
};

struct EigOptions {
    double off_tol = 1e-12;  // converged when off-diagonal Frobenius norm <= off_tol * ||A||_F
    int max_sweeps = 100;
    int max_order = 2000;
};

/// Full eigendecomposition by cyclic Jacobi rotations. Eigenvectors are
/// orthonormal and oriented so the entry of largest magnitude is positive;
/// ties in eigenvalue sorting keep the rotation-produced order.
EigenDecomposition eig_full(const SymmetricMatrix& a, const EigOptions& opts = {});

struct LeadingEigenpair {
    double lambda1 = 0.0;
    Vector v1;
    double residual = 0.0;  // ||A v1 - lambda1 v1||_2 at return
    bool gap_flag = false;  // set when |lambda1 - lambda2| is below the degeneracy tolerance
};

struct SolverOptions {
    double tol = 1e-10;          // stop when residual <= tol * (1 + |lambda|)
    long max_iter = 50000;
    double degeneracy_tol = 1e-8;  // gap_flag when |l1 - l2| < degeneracy_tol * (1 + |l1|)
    std::optional<double> shift;   // sigma for the A + sigma I power iteration; estimated if absent
    std::uint64_t start_seed = 0x5b1dc0de5eedULL;  // start-vector derivation key
};

using MatVec = std::function<Vector(const Vector&)>;

/// Rightmost (largest) eigenpair of a symmetric operator given only its
/// matvec: power iteration on A + sigma I so the rightmost eigenvalue is
/// dominant in modulus, with a final Rayleigh-quotient evaluation and a
/// deflated second-eigenvalue estimate for degeneracy detection.
LeadingEigenpair leading_eigenpair(const MatVec& matvec, int n, const SolverOptions& opts = {});

/// Convenience overload for a stored matrix.
LeadingEigenpair leading_eigenpair(const SymmetricMatrix& a, const SolverOptions& opts = {});

struct HoffmanWielandtGap {
    double lhs;  // sum_i (lambda_i(A) - lambda_i(B))^2, both spectra sorted nonincreasing
    double rhs;  // ||A - B||_F^2
};

HoffmanWielandtGap hoffman_wielandt_gap(const SymmetricMatrix& a, const SymmetricMatrix& b);

/// Thrown by eig_full when the sweep cap is reached; carries the best iterate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, EigenDecomposition best)
        : std::runtime_error(msg), best_(std::move(best)) {}
    const EigenDecomposition& best() const { return best_; }

private:
    EigenDecomposition best_;
};

/// Thrown by leading_eigenpair when the iteration cap is exceeded without
/// convergence or detected degeneracy; carries the best iterate.
class IterationLimitError : public std::runtime_error {
public:
    IterationLimitError(const std::string& msg, LeadingEigenpair best)
        : std::runtime_error(msg), best_(std::move(best)) {}
    const LeadingEigenpair& best() const { return best_; }

private:
    LeadingEigenpair best_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from 64 random bits.
inline double u01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace detail

}  // namespace eigloc
