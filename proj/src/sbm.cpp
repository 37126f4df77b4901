#include "eigloc/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eigloc::sbm {

namespace {

void validate_common(int n, double p_in, double p_out) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("SbmParams: n must be even and >= 4");
    if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
        throw std::invalid_argument("SbmParams: probabilities must lie in [0, 1]");
}

}  // namespace

SbmParams SbmParams::detection(int n, double p_in, double p_out, std::uint64_t seed,
                               bool loopless) {
    validate_common(n, p_in, p_out);
    if (p_out > p_in)
        throw std::invalid_argument("SbmParams::detection: requires p_out <= p_in "
                                    "(use relaxed() for negative controls)");
    return SbmParams{n, p_in, p_out, seed, loopless};
}

SbmParams SbmParams::relaxed(int n, double p_in, double p_out, std::uint64_t seed,
                             bool loopless) {
    validate_common(n, p_in, p_out);
    return SbmParams{n, p_in, p_out, seed, loopless};
}

namespace detail {

bool edge_present(std::uint64_t seed, int i, int j, double probability) {
    if (i > j) std::swap(i, j);
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
                              static_cast<std::uint32_t>(j);
    const std::uint64_t h = eigloc::detail::splitmix64(eigloc::detail::splitmix64(seed) ^ key);
    return eigloc::detail::u01(h) < probability;
}

}  // namespace detail

std::vector<int> SbmSample::planted_labels() const {
    std::vector<int> z(planted.vec().size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = planted.vec()[i] >= 0.0 ? 1 : -1;
    return z;
}

SbmSample sample(const SbmParams& params) {
    validate_common(params.n, params.p_in, params.p_out);
    const int n = params.n;
    const int half = n / 2;

    SymmetricMatrix adjacency = SymmetricMatrix::from_generator(n, [&](int i, int j) {
        if (i == j && params.loopless) return 0.0;
        const bool same = (i < half) == (j < half);
        const double p = same ? params.p_in : params.p_out;
        return detail::edge_present(params.seed, i, j, p) ? 1.0 : 0.0;
    });

    Vector z(n, 1.0);
    for (int i = half; i < n; ++i) z[i] = -1.0;

    Vector ones_c(n, 0.0), ones_cbar(n, 0.0);
    for (int i = 0; i < half; ++i) ones_c[i] = 1.0;
    for (int i = half; i < n; ++i) ones_cbar[i] = 1.0;
    const double within = adjacency.quad_form(ones_c) + adjacency.quad_form(ones_cbar);
    const double volume = adjacency.sum_all();
    const double cross = volume - within;  // 2 * 1_C^T A 1_Cbar, exact in integers

    return SbmSample{std::move(adjacency), Landmark(std::move(z)), volume, within, cross};
}

SbmSample permuted_copy(const SbmSample& s, std::span<const int> perm) {
    const int n = s.adjacency.order();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permuted_copy: permutation size mismatch");
    std::vector<char> hit(n, 0);
    for (int p : perm) {
        if (p < 0 || p >= n || hit[p]) throw std::invalid_argument("permuted_copy: not a permutation");
        hit[p] = 1;
    }
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[perm[v]] = v;

    SymmetricMatrix adjacency = SymmetricMatrix::from_generator(
        n, [&](int i, int j) { return s.adjacency(inv[i], inv[j]); });
    Vector z(n);
    for (int v = 0; v < n; ++v) z[perm[v]] = s.planted.vec()[v];
    return SbmSample{std::move(adjacency), Landmark(std::move(z)), s.volume, s.nu_C, s.boundary};
}

ModularityOperator::ModularityOperator(const SymmetricMatrix& adjacency)
    : adjacency_(&adjacency), volume_(adjacency.sum_all()) {
    const double norm_a_sq = frobenius_inner(adjacency, adjacency);
    const int n = adjacency.order();
    const double proj = volume_ * volume_ / (static_cast<double>(n) * n);
    norm_fro_ = std::sqrt(std::max(0.0, norm_a_sq - proj));
}

Vector ModularityOperator::apply(const Vector& v) const {
    const int n = order();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("ModularityOperator::apply: dimension mismatch");
    Vector y = adjacency_->matvec(v);
    double sum_v = 0.0;
    for (double x : v) sum_v += x;
    const double coeff = volume_ / (static_cast<double>(n) * n) * sum_v;
    for (double& x : y) x -= coeff;
    return y;
}

SymmetricMatrix ModularityOperator::densify() const {
    const int n = order();
    const double coeff = volume_ / (static_cast<double>(n) * n);
    const SymmetricMatrix& a = *adjacency_;
    return SymmetricMatrix::from_generator(n, [&](int i, int j) { return a(i, j) - coeff; });
}

Vector modularity_matvec(const ModularityOperator& op, const Vector& v) { return op.apply(v); }

double rayleigh_q(const SbmSample& s, std::span<const int> subset) {
    if (subset.empty()) throw std::invalid_argument("rayleigh_q: empty vertex subset");
    const int n = s.adjacency.order();
    Vector indicator(n, 0.0);
    for (int v : subset) {
        if (v < 0 || v >= n) throw std::invalid_argument("rayleigh_q: vertex index out of range");
        if (indicator[v] != 0.0) throw std::invalid_argument("rayleigh_q: duplicate vertex index");
        indicator[v] = 1.0;
    }
    const double size = static_cast<double>(subset.size());
    const double vol_s = s.adjacency.quad_form(indicator);
    const double expected = s.volume * size * size / (static_cast<double>(n) * n);
    return (vol_s - expected) / size;
}

double gamma(double p_in, double p_out) {
    if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
        throw std::invalid_argument("gamma: probabilities must lie in [0, 1]");
    const double s = p_in + p_out;
    if (s == 0.0 || s == 2.0) throw std::domain_error("gamma: degenerate model");
    return (p_in - p_out) / std::sqrt(s * (2.0 - s));
}

double xi_bar(double gamma_val) {
    const double g2 = gamma_val * gamma_val;
    // same boundary slack as xi_from_c
    if (g2 < 0.5 - 1e-12)
        throw std::domain_error("xi_bar: guarantee not applicable (gamma^2 < 1/2)");
    if (g2 > 1.0 + 1e-12) throw std::domain_error("xi_bar: |gamma| must not exceed 1");
    return 0.5 + 0.5 * std::sqrt(std::max(0.0, 2.0 * g2 - 1.0));
}

double mu_predicted(const SbmParams& params) {
    return (params.p_in - params.p_out) * params.n / 2.0;
}

Bipartition spectral_bipartition(const SbmSample& s, const SolverOptions& opts) {
    const ModularityOperator op(s);
    if (op.norm_fro() == 0.0)
        throw std::invalid_argument("spectral_bipartition: zero modularity matrix");

    SolverOptions solver = opts;
    if (!solver.shift) solver.shift = op.norm_fro();
    LeadingEigenpair pair = leading_eigenpair(
        [&op](const Vector& v) { return op.apply(v); }, op.order(), solver);

    if (dot(pair.v1, s.planted.vec()) < 0.0)
        for (double& x : pair.v1) x = -x;

    Bipartition b;
    b.labels.resize(pair.v1.size());
    for (std::size_t i = 0; i < pair.v1.size(); ++i) b.labels[i] = pair.v1[i] >= 0.0 ? 1 : -1;
    b.v1 = std::move(pair.v1);
    b.lambda1 = pair.lambda1;
    b.residual = pair.residual;
    b.gap_flag = pair.gap_flag;
    return b;
}

double accuracy(std::span<const int> labels, std::span<const int> planted) {
    if (labels.size() != planted.size())
        throw std::invalid_argument("accuracy: length mismatch");
    if (labels.empty()) throw std::invalid_argument("accuracy: empty labeling");
    int correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (std::abs(labels[i]) != 1 || std::abs(planted[i]) != 1)
            throw std::invalid_argument("accuracy: labels must be +1 or -1");
        if (labels[i] == planted[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double cos_M_Z(const SbmSample& s) {
    const ModularityOperator op(s);
    if (op.norm_fro() == 0.0)
        throw std::invalid_argument("cos_M_Z: zero modularity matrix (empty or complete A)");
    const int n = s.adjacency.order();
    return (s.nu_C - s.boundary) / (static_cast<double>(n) * op.norm_fro());
}

nlohmann::json params_to_json(const SbmParams& p) {
    return nlohmann::json{{"n", p.n},
                          {"p_in", p.p_in},
                          {"p_out", p.p_out},
                          {"seed", p.seed},
                          {"loopless", p.loopless}};
}

SbmParams params_from_json(const nlohmann::json& j) {
    return SbmParams::relaxed(j.at("n").get<int>(), j.at("p_in").get<double>(),
                              j.at("p_out").get<double>(), j.at("seed").get<std::uint64_t>(),
                              j.value("loopless", false));
}

nlohmann::json sample_sidecar(const SbmParams& p, const SbmSample& s) {
    nlohmann::json j;
    j["params"] = params_to_json(p);
    j["seed"] = p.seed;
    j["nu_C"] = s.nu_C;
    j["boundary"] = s.boundary;
    j["volume"] = s.volume;
    return j;
}

}  // namespace eigloc::sbm
