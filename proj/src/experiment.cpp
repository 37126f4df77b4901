#include "eigloc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace eigloc::experiment {

int default_threads() {
    if (const char* env = std::getenv("EIGLOC_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

TrialResult run_trial(const sbm::SbmParams& params, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();

    sbm::SbmParams p = params;
    p.seed = seed;

    TrialResult r;
    r.seed = seed;
    r.mu_pred = sbm::mu_predicted(p);

    const sbm::SbmSample s = sbm::sample(p);
    const sbm::ModularityOperator op(s);
    if (op.norm_fro() == 0.0) {
        r.skipped = true;
        r.skip_reason = "zero modularity norm";
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }

    const double cos_mz = sbm::cos_M_Z(s);
    r.cos2_MZ = std::min(1.0, cos_mz * cos_mz);  // <= 1 mathematically; clamp rounding

    const sbm::Bipartition b = sbm::spectral_bipartition(s);
    r.lambda1 = b.lambda1;
    r.gap_flag = b.gap_flag;
    r.rel_gap = std::abs(b.lambda1 - r.mu_pred) / b.lambda1;
    r.accuracy = sbm::accuracy(b.labels, s.planted_labels());

    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace {

void aggregate(ExperimentSummary& s, double epsilon, double epsilon_acc,
               const RunConfig& config) {
    s.epsilon = epsilon;
    s.epsilon_acc = epsilon_acc;
    s.gamma = sbm::gamma(s.params.p_in, s.params.p_out);
    if (s.gamma * s.gamma >= 0.5 - 1e-12)
        s.xi_bar = sbm::xi_bar(s.gamma);
    else
        s.xi_bar.reset();

    const double cos_floor = s.gamma * s.gamma - epsilon;
    const double gap_ceiling = std::sqrt(std::max(0.0, 1.0 - s.gamma * s.gamma)) + epsilon;

    int completed = 0, cos_ok = 0, lambda_ok = 0, gap_ok = 0;
    int nondeg = 0, acc_ok = 0, skipped = 0, degenerate = 0;
    double acc_sum = 0.0;
    for (const TrialResult& t : s.results) {
        if (t.skipped) {
            ++skipped;
            continue;
        }
        ++completed;
        if (t.cos2_MZ >= cos_floor) ++cos_ok;
        if (t.lambda1 >= t.mu_pred * (1.0 - config.lambda_slack)) ++lambda_ok;
        if (t.rel_gap <= gap_ceiling) ++gap_ok;
        acc_sum += t.accuracy;
        if (t.gap_flag) {
            ++degenerate;
        } else {
            ++nondeg;
            if (!s.xi_bar || t.accuracy >= *s.xi_bar - epsilon_acc) ++acc_ok;
        }
    }
    s.skipped_trials = skipped;
    s.degenerate_trials = degenerate;
    s.frac_cos_ok = completed > 0 ? static_cast<double>(cos_ok) / completed : 0.0;
    s.frac_lambda_ok = completed > 0 ? static_cast<double>(lambda_ok) / completed : 0.0;
    s.frac_rel_gap_ok = completed > 0 ? static_cast<double>(gap_ok) / completed : 0.0;
    s.mean_accuracy = completed > 0 ? acc_sum / completed : 0.0;
    s.frac_accuracy_ok = nondeg > 0 ? static_cast<double>(acc_ok) / nondeg : 0.0;
}

}  // namespace

ExperimentSummary run_batch(const sbm::SbmParams& params, int trials, double epsilon,
                            double epsilon_acc, const RunConfig& config) {
    if (trials < 1) throw std::invalid_argument("run_batch: trials must be >= 1");
    if (static_cast<std::size_t>(trials) > config.retain_cap)
        throw std::invalid_argument("run_batch: trials exceeds the per-point retention cap");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("run_batch: epsilon must lie in (0, 1)");

    ExperimentSummary s;
    s.params = params;
    s.trials = trials;
    s.results.resize(static_cast<std::size_t>(trials));

    const int want = config.threads >= 1 ? config.threads : default_threads();
    const int workers = std::max(1, std::min<int>(want, trials));

    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= trials) break;
            const std::uint64_t seed = params.seed + static_cast<std::uint64_t>(t);
            TrialResult& slot = s.results[static_cast<std::size_t>(t)];
            try {
                slot = run_trial(params, seed);
            } catch (const std::exception& e) {
                // per-trial failures are skip-counted, never fatal to the batch
                slot.seed = seed;
                slot.skipped = true;
                slot.skip_reason = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }

    aggregate(s, epsilon, epsilon_acc, config);
    return s;
}

std::vector<ExperimentSummary> sweep(std::span<const sbm::SbmParams> grid, int trials,
                                     double epsilon, double epsilon_acc,
                                     const RunConfig& config) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<ExperimentSummary> out;
    out.reserve(grid.size());
    for (const sbm::SbmParams& p : grid) {
        try {
            out.push_back(run_batch(p, trials, epsilon, epsilon_acc, config));
        } catch (const std::exception& e) {
            ExperimentSummary failed;
            failed.params = p;
            failed.trials = trials;
            failed.epsilon = epsilon;
            failed.epsilon_acc = epsilon_acc;
            failed.error = e.what();
            out.push_back(std::move(failed));
        }
    }
    return out;
}

ExperimentSummary recompute_summary(const ExperimentSummary& s, const RunConfig& config) {
    ExperimentSummary out = s;
    aggregate(out, s.epsilon, s.epsilon_acc, config);
    return out;
}

void write_csv(std::ostream& out, std::span<const TrialResult> results) {
    out << "seed,cos2_MZ,lambda1,mu_pred,rel_gap,accuracy,gap_flag\n";
    char buf[64];
    for (const TrialResult& t : results) {
        if (t.skipped) continue;
        out << t.seed;
        for (double v : {t.cos2_MZ, t.lambda1, t.mu_pred, t.rel_gap, t.accuracy}) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out << buf;
        }
        out << "," << (t.gap_flag ? 1 : 0) << "\n";
    }
}

nlohmann::json summary_to_json(const ExperimentSummary& s) {
    nlohmann::json j;
    j["params"] = sbm::params_to_json(s.params);
    j["trials"] = s.trials;
    j["frac_cos_ok"] = s.frac_cos_ok;
    j["frac_lambda_ok"] = s.frac_lambda_ok;
    j["frac_rel_gap_ok"] = s.frac_rel_gap_ok;
    j["mean_accuracy"] = s.mean_accuracy;
    j["frac_accuracy_ok"] = s.frac_accuracy_ok;
    j["gamma"] = s.gamma;
    j["xi_bar"] = s.xi_bar ? nlohmann::json(*s.xi_bar) : nlohmann::json(nullptr);
    j["epsilon"] = s.epsilon;
    j["epsilon_acc"] = s.epsilon_acc;
    j["skipped_trials"] = s.skipped_trials;
    j["degenerate_trials"] = s.degenerate_trials;
    if (s.error) j["error"] = *s.error;
    return j;
}

}  // namespace eigloc::experiment
