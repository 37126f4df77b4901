#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eigloc/linalg.hpp"
#include "eigloc/symmetric_matrix.hpp"

#include "json.hpp"

namespace eigloc::sbm {

/// Two-block stochastic block model: n vertices split into two fixed
/// clusters {0..n/2-1} and {n/2..n-1}, within-cluster edge probability p_in,
/// cross-cluster probability p_out. Edges are derived per (seed, i, j) by a
/// counter-based generator, so any edge is reproducible in isolation.
struct SbmParams {
    int n = 0;
    double p_in = 0.0;
    double p_out = 0.0;
    std::uint64_t seed = 0;
    /// Zero the diagonal instead of sampling loops as Bernoulli(p_in).
    bool loopless = false;

    /// Detection setup: requires 0 <= p_out <= p_in <= 1.
    static SbmParams detection(int n, double p_in, double p_out, std::uint64_t seed,
                               bool loopless = false);
    /// Negative-control setup: p_in < p_out allowed.
    static SbmParams relaxed(int n, double p_in, double p_out, std::uint64_t seed,
                             bool loopless = false);
};

struct SbmSample {
    SymmetricMatrix adjacency;  // entries in {0, 1}
    Landmark planted;           // z_i = +1 on the first cluster, -1 on the second
    double volume;              // 1^T A 1
    double nu_C;                // within-cluster quadratic forms
    double boundary;            // 2 * (cross-cluster quadratic form)

    std::vector<int> planted_labels() const;
};

SbmSample sample(const SbmParams& params);

/// Relabel the vertices of a sample by a permutation (robustness helper);
/// perm[v] is the new index of vertex v.
SbmSample permuted_copy(const SbmSample& s, std::span<const int> perm);

/// The modularity matrix M = A - (vol V / n^2) J as a matrix-free operator.
/// Holds a reference to the adjacency; the caller keeps it alive.
class ModularityOperator {
public:
    explicit ModularityOperator(const SymmetricMatrix& adjacency);
    explicit ModularityOperator(const SbmSample& s) : ModularityOperator(s.adjacency) {}

    int order() const { return adjacency_->order(); }
    double volume() const { return volume_; }
    /// ||M||_F from ||A||_F^2 - (1^T A 1)^2 / n^2 (no densification).
    double norm_fro() const { return norm_fro_; }
    /// M v = A v - (vol V / n^2)(1^T v) 1.
    Vector apply(const Vector& v) const;
    /// Dense M for oracle comparisons and the eig_full path.
    SymmetricMatrix densify() const;

private:
    const SymmetricMatrix* adjacency_;
    double volume_;
    double norm_fro_;
};

Vector modularity_matvec(const ModularityOperator& op, const Vector& v);

/// Rayleigh quotient q(S) = (vol S - vol V |S|^2 / n^2) / |S| of a vertex
/// subset (0-based indices, distinct, nonempty).
double rayleigh_q(const SbmSample& s, std::span<const int> subset);

/// gamma = (p_in - p_out) / sqrt((p_in + p_out)(2 - p_in - p_out)).
double gamma(double p_in, double p_out);

/// Accuracy floor 1/2 + 1/2 sqrt(2 gamma^2 - 1); requires gamma^2 >= 1/2.
double xi_bar(double gamma_val);

/// Predicted leading modularity eigenvalue (p_in - p_out) n / 2.
double mu_predicted(const SbmParams& params);

struct Bipartition {
    std::vector<int> labels;  // +1 / -1 per vertex; zero eigenvector entries go to +1
    Vector v1;
    double lambda1 = 0.0;
    double residual = 0.0;
    bool gap_flag = false;
};

/// Sign-based split from the leading modularity eigenvector, oriented so
/// cos(v1, planted) >= 0.
Bipartition spectral_bipartition(const SbmSample& s, const SolverOptions& opts = {});

/// Fraction of agreeing entries between two +-1 labelings.
double accuracy(std::span<const int> labels, std::span<const int> planted);

/// cos(M, z z^T) = (nu_C - boundary) / (n ||M||_F).
double cos_M_Z(const SbmSample& s);

nlohmann::json params_to_json(const SbmParams& p);
SbmParams params_from_json(const nlohmann::json& j);
/// Metadata sidecar for an exported sample: params plus nu_C / boundary / volume.
nlohmann::json sample_sidecar(const SbmParams& p, const SbmSample& s);

namespace detail {

/// Edge indicator for the unordered pair {i, j} under the given seed;
/// order-independent and side-effect free.
bool edge_present(std::uint64_t seed, int i, int j, double probability);

}  // namespace detail

}  // namespace eigloc::sbm
