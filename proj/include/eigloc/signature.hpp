#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "eigloc/linalg.hpp"
#include "eigloc/symmetric_matrix.hpp"

#include "json.hpp"

namespace eigloc {

enum class SignatureVariant { plain, shifted, variance };

std::string to_string(SignatureVariant v);

/// Outcome of a leading-eigenvector sign-pattern check: the sufficient
/// condition 1^T A 1 >= sqrt((n-k)^2 + k^2) ||A||_F (or one of its shifted /
/// eigenvalue-moment reformulations) plus the observed sign counts of the
/// oriented leading eigenvector when the condition holds.
struct SignatureReport {
    int k = 0;
    double condition_lhs = 0.0;
    double condition_rhs = 0.0;
    bool condition_holds = false;
    std::optional<int> nonneg_count;  // populated when the eigenpair was computed
    std::optional<int> pos_count;
    std::optional<bool> rho_simple;   // spectral radius simple and dominant
    SignatureVariant variant = SignatureVariant::plain;
    std::optional<double> alpha;      // shift used by the shifted variant
    /// Variance variant with sigma = 0 (A = mu I): condition degenerates to
    /// 0 >= 0 and eigenvector conclusions are skipped.
    bool degenerate = false;
};

struct SignCensus {
    int nonneg = 0;  // #{i : v_i >= -zero_tol}
    int pos = 0;     // #{i : v_i >  zero_tol}
};

/// pi_{k,n} = sqrt(k/n), the maximal cosine between the all-ones vector and
/// any vector with at most k strictly positive entries. Requires 0 < k <= n.
double pi_k_n(int k, int n);

SignCensus sign_census(std::span<const double> v, double zero_tol);

/// Plain condition 1^T A 1 >= sqrt((n-k)^2 + k^2) ||A||_F for 1 <= k < n/2.
SignatureReport check_signature(const SymmetricMatrix& a, int k);

/// Shifted condition 1^T A 1 >= sqrt((n-k)^2 + k^2) ||A + alpha I||_F - n alpha;
/// conclusions apply to A's rightmost eigenpair (shifting preserves eigenvectors).
SignatureReport check_signature_shifted(const SymmetricMatrix& a, int k, double alpha);

/// Eigenvalue-moment condition (1/n) sum_{i != j} A_ij >= sigma sqrt(((n-k)^2 + k^2)/n)
/// with mu = tr(A)/n, sigma^2 = ||A - mu I||_F^2 / n; equivalent to the shifted
/// check at alpha = -tr(A)/n.
SignatureReport check_signature_variance(const SymmetricMatrix& a, int k);

/// blkdiag(J_k, J_{n-k}): attains the plain condition with equality and a
/// leading eigenvector with exactly n-k positive entries.
SymmetricMatrix blockJ_example(int k, int n);

/// Largest k < n/2 whose plain condition holds, by monotone scan; nullopt
/// when no k qualifies.
std::optional<int> max_k(const SymmetricMatrix& a);

nlohmann::json signature_to_json(const SignatureReport& r);

}  // namespace eigloc
