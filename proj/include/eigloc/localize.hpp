#pragma once

#include <optional>
#include <span>
#include <utility>

#include "eigloc/linalg.hpp"
#include "eigloc/symmetric_matrix.hpp"

#include "json.hpp"

namespace eigloc {

/// Localization of the leading eigenpair of A against the rank-one landmark
/// x x^T: the cosine c, the eigenvalue lower bound mu = c ||A||_F, the
/// relative-error bound s = sqrt(1 - c^2), and the alignment floor xi.
struct LocalizationReport {
    double c = 0.0;
    double s = 0.0;
    double mu = 0.0;
    bool simple_dominant_guaranteed = false;  // c > 1/sqrt(2)
    std::optional<double> xi;                 // defined when c^2 >= 1/2
    double lambda1 = 0.0;
    double relative_gap = 0.0;  // |lambda1 - mu| / |lambda1|
    double cos2_v1_x = 0.0;
    /// Degenerate leading eigenvalue: cos2_v1_x is then the squared cosine
    /// between x and its projection onto the leading eigenspace.
    bool degenerate = false;
};

/// Evaluate the localization bounds for (A, x). Requires cos(A, xx^T) > 0;
/// a nonpositive cosine is rejected with a hint to analyze -A instead.
LocalizationReport localize(const SymmetricMatrix& a, const Landmark& x);

/// Largest root of c^2 = 2 xi^2 - 2 xi + 1 in [1/2, 1]. Requires c^2 in [1/2, 1].
double xi_from_c(double c);

/// Strict polygonal inequality 2 max_i a_i > sum_i a_i over nonnegative values.
bool polygonal_check(std::span<const double> values);

/// Rank-two block construction blkdiag(y y^T, y y^T) with landmark (y, y):
/// cosine exactly 1/sqrt(2) and a double leading eigenvalue ||y||^2.
std::pair<SymmetricMatrix, Landmark> counterexample_diag(const Vector& y);

/// Anti-diagonal variant [[0, y y^T], [y y^T, 0]] with landmark (y, y):
/// simple nonzero eigenvalues +-||y||^2 of equal modulus.
std::pair<SymmetricMatrix, Landmark> counterexample_antidiag(const Vector& y);

nlohmann::json localization_to_json(const LocalizationReport& r);

}  // namespace eigloc
