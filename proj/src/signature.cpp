#include "eigloc/signature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eigloc {

namespace {

// Relative slack so that exact equality cases (the block-J construction)
// are not lost to the last rounding of sqrt products.
bool holds_with_slack(double lhs, double rhs) {
    return lhs >= rhs - 1e-12 * (1.0 + std::abs(rhs));
}

void require_k_range(int k, int n) {
    if (!(k >= 1 && 2 * k < n))
        throw std::invalid_argument("signature check: k must satisfy 1 <= k < n/2 (k=" +
                                    std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

double condition_coefficient(int k, int n) {
    const double nk = static_cast<double>(n - k);
    const double kk = static_cast<double>(k);
    return std::sqrt(nk * nk + kk * kk);
}

// Computes and orients the rightmost eigenpair, fills the sign counts and
// the simplicity/dominance verdict.
void fill_conclusions(const SymmetricMatrix& a, SignatureReport& r) {
    const EigenDecomposition dec = eig_full(a);
    const int n = a.order();
    const double lambda1 = dec.eigenvalues[0];

    Vector v1 = dec.eigenvectors[0];
    double sum = 0.0;
    for (double x : v1) sum += x;
    if (sum < 0.0)
        for (double& x : v1) x = -x;

    double vmax = 0.0;
    for (double x : v1) vmax = std::max(vmax, std::abs(x));
    const SignCensus census = sign_census(v1, 1e-10 * vmax);
    r.nonneg_count = census.nonneg;
    r.pos_count = census.pos;

    const double tol = 1e-8 * (1.0 + std::abs(lambda1));
    const bool simple = n == 1 || dec.eigenvalues[1] < lambda1 - tol;
    const bool dominant = lambda1 > 0.0 && lambda1 > std::abs(dec.eigenvalues[n - 1]);
    r.rho_simple = simple && dominant;
}

}  // namespace

std::string to_string(SignatureVariant v) {
    switch (v) {
        case SignatureVariant::plain: return "plain";
        case SignatureVariant::shifted: return "shifted";
        case SignatureVariant::variance: return "variance";
    }
    return "unknown";
}

double pi_k_n(int k, int n) {
    if (n < 1 || k < 1 || k > n)
        throw std::invalid_argument("pi_k_n: requires 0 < k <= n");
    return std::sqrt(static_cast<double>(k) / static_cast<double>(n));
}

SignCensus sign_census(std::span<const double> v, double zero_tol) {
    if (zero_tol < 0.0) throw std::invalid_argument("sign_census: zero_tol must be >= 0");
    SignCensus c;
    for (double x : v) {
        if (x > zero_tol) ++c.pos;
        if (x >= -zero_tol) ++c.nonneg;
    }
    return c;
}

SignatureReport check_signature(const SymmetricMatrix& a, int k) {
    const int n = a.order();
    require_k_range(k, n);

    SignatureReport r;
    r.k = k;
    r.variant = SignatureVariant::plain;
    r.condition_lhs = a.sum_all();
    r.condition_rhs = condition_coefficient(k, n) * frobenius_norm(a);
    r.condition_holds = holds_with_slack(r.condition_lhs, r.condition_rhs);
    if (r.condition_holds) fill_conclusions(a, r);
    return r;
}

SignatureReport check_signature_shifted(const SymmetricMatrix& a, int k, double alpha) {
    const int n = a.order();
    require_k_range(k, n);

    SignatureReport r;
    r.k = k;
    r.variant = SignatureVariant::shifted;
    r.alpha = alpha;
    r.condition_lhs = a.sum_all();
    r.condition_rhs =
        condition_coefficient(k, n) * frobenius_norm(a.plus_scaled_identity(alpha)) - n * alpha;
    r.condition_holds = holds_with_slack(r.condition_lhs, r.condition_rhs);
    if (r.condition_holds) fill_conclusions(a, r);
    return r;
}

SignatureReport check_signature_variance(const SymmetricMatrix& a, int k) {
    const int n = a.order();
    require_k_range(k, n);

    const double mu = a.trace() / n;
    const SymmetricMatrix centered = a.plus_scaled_identity(-mu);
    const double sigma = frobenius_norm(centered) / std::sqrt(static_cast<double>(n));

    SignatureReport r;
    r.k = k;
    r.variant = SignatureVariant::variance;
    r.condition_lhs = (a.sum_all() - a.trace()) / n;
    r.condition_rhs = sigma * condition_coefficient(k, n) / std::sqrt(static_cast<double>(n));
    r.condition_holds = holds_with_slack(r.condition_lhs, r.condition_rhs);
    if (sigma == 0.0) {
        // A = mu I: every vector is an eigenvector, sign conclusions carry no content.
        r.degenerate = true;
        return r;
    }
    if (r.condition_holds) fill_conclusions(a, r);
    return r;
}

SymmetricMatrix blockJ_example(int k, int n) {
    require_k_range(k, n);
    return SymmetricMatrix::from_generator(
        n, [&](int i, int j) { return ((i < k) == (j < k)) ? 1.0 : 0.0; });
}

std::optional<int> max_k(const SymmetricMatrix& a) {
    const int n = a.order();
    std::optional<int> best;
    for (int k = 1; 2 * k < n; ++k) {
        const double lhs = a.sum_all();
        const double rhs = condition_coefficient(k, n) * frobenius_norm(a);
        if (holds_with_slack(lhs, rhs)) best = k;
    }
    return best;
}

nlohmann::json signature_to_json(const SignatureReport& r) {
    nlohmann::json j;
    j["k"] = r.k;
    j["condition_lhs"] = r.condition_lhs;
    j["condition_rhs"] = r.condition_rhs;
    j["condition_holds"] = r.condition_holds;
    j["nonneg_count"] = r.nonneg_count ? nlohmann::json(*r.nonneg_count) : nlohmann::json(nullptr);
    j["pos_count"] = r.pos_count ? nlohmann::json(*r.pos_count) : nlohmann::json(nullptr);
    j["rho_simple"] = r.rho_simple ? nlohmann::json(*r.rho_simple) : nlohmann::json(nullptr);
    j["variant"] = to_string(r.variant);
    if (r.alpha) j["alpha"] = *r.alpha;
    j["degenerate"] = r.degenerate;
    return j;
}

}  // namespace eigloc
