#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigloc/sbm.hpp"

#include "json.hpp"

namespace eigloc::experiment {

/// One analyzed sample. All fields except wall_time are deterministic
/// functions of (params, seed).
struct TrialResult {
    std::uint64_t seed = 0;
    double cos2_MZ = 0.0;
    double lambda1 = 0.0;
    double mu_pred = 0.0;
    double rel_gap = 0.0;   // |lambda1 - mu_pred| / lambda1
    double accuracy = 0.0;
    bool gap_flag = false;
    double wall_time = 0.0;  // seconds; excluded from determinism guarantees
    bool skipped = false;
    std::string skip_reason;
};

struct ExperimentSummary {
    sbm::SbmParams params;
    int trials = 0;
    double frac_cos_ok = 0.0;      // cos^2(M,Z) >= gamma^2 - epsilon
    double frac_lambda_ok = 0.0;   // lambda1 >= mu_pred * (1 - lambda_slack)
    double frac_rel_gap_ok = 0.0;  // rel_gap <= sqrt(1 - gamma^2) + epsilon
    double mean_accuracy = 0.0;
    double frac_accuracy_ok = 0.0;  // accuracy >= xi_bar - epsilon_acc, non-degenerate trials
    double gamma = 0.0;
    std::optional<double> xi_bar;  // absent when gamma^2 < 1/2
    double epsilon = 0.0;
    double epsilon_acc = 0.0;
    int skipped_trials = 0;
    int degenerate_trials = 0;
    std::optional<std::string> error;  // set when a sweep point failed outright

    /// Retained per-trial results (ordered by seed, capped), enabling
    /// recomputation of the fractions and CSV export.
    std::vector<TrialResult> results;
};

struct RunConfig {
    int threads = 0;             // 0: EIGLOC_THREADS env var, else hardware concurrency
    double lambda_slack = 0.1;   // slack in the lambda1 >= mu_pred predicate
    std::size_t retain_cap = 100000;
};

/// Thread count from the EIGLOC_THREADS environment variable, falling back
/// to hardware concurrency.
int default_threads();

TrialResult run_trial(const sbm::SbmParams& params, std::uint64_t seed);

/// Trials use seeds params.seed + 0 .. params.seed + trials - 1; trials run
/// concurrently and results are ordered by seed.
ExperimentSummary run_batch(const sbm::SbmParams& params, int trials, double epsilon,
                            double epsilon_acc, const RunConfig& config = {});

/// One summary per grid point, order preserved; a failing point is recorded
/// in its summary's error field and the sweep continues.
std::vector<ExperimentSummary> sweep(std::span<const sbm::SbmParams> grid, int trials,
                                     double epsilon, double epsilon_acc,
                                     const RunConfig& config = {});

/// Recompute the aggregate fields from retained results (consistency oracle).
ExperimentSummary recompute_summary(const ExperimentSummary& s,
                                    const RunConfig& config = {});

/// CSV with columns seed,cos2_MZ,lambda1,mu_pred,rel_gap,accuracy,gap_flag;
/// skipped trials are omitted.
void write_csv(std::ostream& out, std::span<const TrialResult> results);

nlohmann::json summary_to_json(const ExperimentSummary& s);

}  // namespace eigloc::experiment
