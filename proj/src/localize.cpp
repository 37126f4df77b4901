#include "eigloc/localize.hpp"

#include <cmath>
#include <stdexcept>

namespace eigloc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

double xi_from_c(double c) {
    const double c2 = c * c;
    // 1e-12 slack keeps the exact boundary c = 1/sqrt(2) applicable under
    // the last rounding of the cosine computation.
    if (c2 < 0.5 - 1e-12) throw std::domain_error("xi_from_c: bound not applicable (c^2 < 1/2)");
    if (c2 > 1.0 + 1e-12) throw std::domain_error("xi_from_c: |c| must not exceed 1");
    const double disc = std::max(0.0, 2.0 * c2 - 1.0);
    return 0.5 * (1.0 + std::sqrt(disc));
}

bool polygonal_check(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("polygonal_check: empty list");
    double mx = 0.0, sum = 0.0;
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("polygonal_check: values must be nonnegative");
        mx = std::max(mx, v);
        sum += v;
    }
    return 2.0 * mx > sum;
}

LocalizationReport localize(const SymmetricMatrix& a, const Landmark& x) {
    if (a.order() != x.size()) throw std::invalid_argument("localize: dimension mismatch");

    const double norm_a = frobenius_norm(a);
    if (norm_a == 0.0) throw std::invalid_argument("localize: zero matrix");
    const double c = a.quad_form(x.vec()) / (x.squared_norm() * norm_a);
    if (c <= 0.0) throw std::domain_error("localize: landmark anti-aligned; analyze -A");

    LocalizationReport r;
    r.c = c;
    r.s = std::sqrt(std::max(0.0, 1.0 - c * c));
    r.mu = c * norm_a;
    r.simple_dominant_guaranteed = c > kInvSqrt2;
    if (c * c >= 0.5 - 1e-12) r.xi = xi_from_c(c);

    const EigenDecomposition dec = eig_full(a);
    const double lambda1 = dec.eigenvalues[0];
    r.lambda1 = lambda1;
    r.relative_gap = std::abs(lambda1 - r.mu) / std::abs(lambda1);

    // Leading eigenspace: eigenvalues within the degeneracy tolerance of lambda1.
    const double deg_tol = 1e-8 * (1.0 + std::abs(lambda1));
    int multiplicity = 1;
    while (multiplicity < a.order() &&
           lambda1 - dec.eigenvalues[multiplicity] < deg_tol)
        ++multiplicity;
    r.degenerate = multiplicity > 1;

    const double xx = x.squared_norm();
    if (!r.degenerate) {
        const double ci = dot(dec.eigenvectors[0], x.vec());
        r.cos2_v1_x = ci * ci / xx;
    } else {
        // Squared cosine between x and its projection onto the eigenspace:
        // the alignment of the best-aligned unit vector in that space.
        double proj_sq = 0.0;
        for (int i = 0; i < multiplicity; ++i) {
            const double ci = dot(dec.eigenvectors[i], x.vec());
            proj_sq += ci * ci;
        }
        r.cos2_v1_x = proj_sq / xx;
    }
    return r;
}

std::pair<SymmetricMatrix, Landmark> counterexample_diag(const Vector& y) {
    const Landmark check(y);  // validates y != 0
    const int m = static_cast<int>(y.size());
    SymmetricMatrix a = SymmetricMatrix::from_generator(2 * m, [&](int i, int j) {
        const bool top = i < m, left = j < m;
        if (top != left) return 0.0;
        return y[i % m] * y[j % m];
    });
    Vector x(y);
    x.insert(x.end(), y.begin(), y.end());
    return {std::move(a), Landmark(std::move(x))};
}

std::pair<SymmetricMatrix, Landmark> counterexample_antidiag(const Vector& y) {
    const Landmark check(y);
    const int m = static_cast<int>(y.size());
    SymmetricMatrix a = SymmetricMatrix::from_generator(2 * m, [&](int i, int j) {
        const bool top = i < m, left = j < m;
        if (top == left) return 0.0;
        return y[i % m] * y[j % m];
    });
    Vector x(y);
    x.insert(x.end(), y.begin(), y.end());
    return {std::move(a), Landmark(std::move(x))};
}

nlohmann::json localization_to_json(const LocalizationReport& r) {
    nlohmann::json j;
    j["c"] = r.c;
    j["s"] = r.s;
    j["mu"] = r.mu;
    j["simple_dominant_guaranteed"] = r.simple_dominant_guaranteed;
    j["xi"] = r.xi ? nlohmann::json(*r.xi) : nlohmann::json(nullptr);
    j["lambda1"] = r.lambda1;
    j["relative_gap"] = r.relative_gap;
    j["cos2_v1_x"] = r.cos2_v1_x;
    j["degenerate"] = r.degenerate;
    return j;
}

}  // namespace eigloc
