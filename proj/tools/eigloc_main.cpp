// eigloc: localization bounds for dominant eigenpairs, leading-eigenvector
// sign-pattern checks, and stochastic-block-model experiments.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eigloc/experiment.hpp"
#include "eigloc/io.hpp"
#include "eigloc/localize.hpp"
#include "eigloc/sbm.hpp"
#include "eigloc/signature.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBoundsInapplicable = 2;  // localize: c <= 0 or no dominance guarantee
constexpr int kExitConditionFails = 3;      // signature: sufficient condition not met

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

eigloc::SymmetricMatrix read_matrix_arg(const std::string& path) {
    if (path == "-") return eigloc::io::read_matrix_market(std::cin);
    return eigloc::io::read_matrix_market_file(path);
}

// All file outputs go through a temp-file-plus-rename so a failing command
// never leaves a partial file behind.
void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw eigloc::io::IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw eigloc::io::IoError("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_atomic(out_path, content);
}

eigloc::Landmark parse_landmark(const std::string& arg, int n) {
    if (arg == "ones") return eigloc::Landmark::ones(n);
    const auto colon = arg.find(':');
    if (colon != std::string::npos) {
        const std::string kind = arg.substr(0, colon);
        const std::string path = arg.substr(colon + 1);
        if (kind == "vector") return eigloc::Landmark(eigloc::io::read_vector_file(path));
        if (kind == "planted") {
            eigloc::Vector v = eigloc::io::read_vector_file(path);
            for (double x : v)
                if (x != 1.0 && x != -1.0)
                    throw std::invalid_argument("planted landmark must have +-1 entries");
            return eigloc::Landmark(std::move(v));
        }
    }
    throw std::invalid_argument("landmark must be 'ones', 'planted:<file>' or 'vector:<file>'");
}

std::string render_localization(const eigloc::LocalizationReport& r, const std::string& format) {
    if (format == "json") return eigloc::localization_to_json(r).dump(2) + "\n";
    std::ostringstream os;
    os << "c                          " << fmt12(r.c) << "\n"
       << "s                          " << fmt12(r.s) << "\n"
       << "mu                         " << fmt12(r.mu) << "\n"
       << "simple_dominant_guaranteed " << (r.simple_dominant_guaranteed ? "yes" : "no") << "\n"
       << "xi                         " << (r.xi ? fmt12(*r.xi) : "n/a") << "\n"
       << "lambda1                    " << fmt12(r.lambda1) << "\n"
       << "relative_gap               " << fmt12(r.relative_gap) << "\n"
       << "cos2_v1_x                  " << fmt12(r.cos2_v1_x) << "\n"
       << "degenerate                 " << (r.degenerate ? "yes" : "no") << "\n";
    return os.str();
}

std::string render_signature(const eigloc::SignatureReport& r, const std::string& format) {
    if (format == "json") return eigloc::signature_to_json(r).dump(2) + "\n";
    std::ostringstream os;
    os << "variant         " << eigloc::to_string(r.variant);
    if (r.alpha) os << " (alpha " << fmt12(*r.alpha) << ")";
    os << "\n"
       << "k               " << r.k << "\n"
       << "condition_lhs   " << fmt12(r.condition_lhs) << "\n"
       << "condition_rhs   " << fmt12(r.condition_rhs) << "\n"
       << "condition_holds " << (r.condition_holds ? "yes" : "no") << "\n";
    if (r.nonneg_count) os << "nonneg_count    " << *r.nonneg_count << "\n";
    if (r.pos_count) os << "pos_count       " << *r.pos_count << "\n";
    if (r.rho_simple) os << "rho_simple      " << (*r.rho_simple ? "yes" : "no") << "\n";
    if (r.degenerate) os << "degenerate      yes\n";
    return os.str();
}

std::string render_summary(const eigloc::experiment::ExperimentSummary& s,
                           const std::string& format) {
    if (format == "json") return eigloc::experiment::summary_to_json(s).dump(2) + "\n";
    std::ostringstream os;
    os << "n=" << s.params.n << " p_in=" << fmt12(s.params.p_in)
       << " p_out=" << fmt12(s.params.p_out) << " seed=" << s.params.seed
       << " trials=" << s.trials << "\n"
       << "gamma            " << fmt12(s.gamma) << "\n"
       << "xi_bar           " << (s.xi_bar ? fmt12(*s.xi_bar) : "n/a") << "\n"
       << "frac_cos_ok      " << fmt12(s.frac_cos_ok) << "\n"
       << "frac_lambda_ok   " << fmt12(s.frac_lambda_ok) << "\n"
       << "frac_rel_gap_ok  " << fmt12(s.frac_rel_gap_ok) << "\n"
       << "mean_accuracy    " << fmt12(s.mean_accuracy) << "\n"
       << "frac_accuracy_ok " << fmt12(s.frac_accuracy_ok) << "\n"
       << "skipped          " << s.skipped_trials << "\n"
       << "degenerate       " << s.degenerate_trials << "\n";
    if (s.error) os << "error            " << *s.error << "\n";
    return os.str();
}

struct LocalizeArgs {
    std::string matrix, landmark = "ones", format = "text", out;
};

int cmd_localize(const LocalizeArgs& a) {
    const eigloc::SymmetricMatrix m = read_matrix_arg(a.matrix);
    const eigloc::Landmark x = parse_landmark(a.landmark, m.order());

    eigloc::LocalizationReport report;
    try {
        report = eigloc::localize(m, x);
    } catch (const std::domain_error& e) {
        std::cerr << "eigloc: " << e.what() << "\n";
        return kExitBoundsInapplicable;
    }

    // cross-check the rendered bounds against the computed eigenpair
    const double slack = 1e-9 * (1.0 + std::abs(report.mu));
    if (report.lambda1 < report.mu - slack || report.relative_gap > report.s + 1e-9 ||
        (report.xi && report.cos2_v1_x < *report.xi - 1e-9)) {
        std::cerr << "eigloc: bound verification failed (numerical trouble)\n";
        return kExitError;
    }

    std::string text = render_localization(report, a.format);
    const double c2 = report.c * report.c;
    const bool boundary = std::abs(c2 - 0.5) <= 1e-9;
    if (a.format == "text" && boundary)
        text += "note: boundary case (cos^2 = 1/2); dominance is not guaranteed\n";
    emit(a.out, text);
    return report.simple_dominant_guaranteed ? kExitOk : kExitBoundsInapplicable;
}

struct SignatureArgs {
    std::string matrix, variant = "plain", format = "text", out;
    int k = 1;
    double alpha = 0.0;
};

int cmd_signature(const SignatureArgs& a) {
    const eigloc::SymmetricMatrix m = read_matrix_arg(a.matrix);
    eigloc::SignatureReport report;
    if (a.variant == "plain")
        report = eigloc::check_signature(m, a.k);
    else if (a.variant == "shifted")
        report = eigloc::check_signature_shifted(m, a.k, a.alpha);
    else if (a.variant == "variance")
        report = eigloc::check_signature_variance(m, a.k);
    else
        throw std::invalid_argument("variant must be plain, shifted or variance");

    if (report.condition_holds && !report.degenerate) {
        const int n = m.order();
        const bool counts_ok = report.nonneg_count && *report.nonneg_count >= n - a.k + 1 &&
                               report.pos_count && *report.pos_count >= n - a.k;
        // dominance of the rightmost eigenvalue is only promised by the plain form
        const bool radius_ok =
            a.variant != "plain" || report.rho_simple.value_or(false);
        if (!counts_ok || !radius_ok) {
            std::cerr << "eigloc: sign-pattern verification failed (numerical trouble)\n";
            return kExitError;
        }
    }

    emit(a.out, render_signature(report, a.format));
    return report.condition_holds ? kExitOk : kExitConditionFails;
}

struct SbmRunArgs {
    int n = 400;
    double pin = 0.9, pout = 0.05;
    int trials = 100;
    std::uint64_t seed = 0;
    double eps = 0.05, eps_acc = 0.02;
    bool loopless = false;
    std::string format = "text", out, csv;
};

int cmd_sbm_run(const SbmRunArgs& a) {
    eigloc::sbm::gamma(a.pin, a.pout);  // reject degenerate models up front
    const auto params = eigloc::sbm::SbmParams::relaxed(a.n, a.pin, a.pout, a.seed, a.loopless);
    const auto summary = eigloc::experiment::run_batch(params, a.trials, a.eps, a.eps_acc);
    if (!a.csv.empty()) {
        std::ostringstream os;
        eigloc::experiment::write_csv(os, summary.results);
        write_text_atomic(a.csv, os.str());
    }
    emit(a.out, render_summary(summary, a.format));
    return kExitOk;
}

struct SbmSweepArgs {
    std::vector<int> n{100, 200, 400};
    std::vector<double> pin{0.9};
    std::vector<double> pout{0.05};
    int trials = 50;
    std::uint64_t seed = 0;
    double eps = 0.05, eps_acc = 0.02;
    bool loopless = false;
    std::string format = "text", out;
};

int cmd_sbm_sweep(const SbmSweepArgs& a) {
    std::vector<eigloc::sbm::SbmParams> grid;
    for (int n : a.n)
        for (double pin : a.pin)
            for (double pout : a.pout) {
                eigloc::sbm::gamma(pin, pout);
                grid.push_back(eigloc::sbm::SbmParams::relaxed(n, pin, pout, a.seed, a.loopless));
            }
    const auto summaries = eigloc::experiment::sweep(grid, a.trials, a.eps, a.eps_acc);
    if (a.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : summaries) arr.push_back(eigloc::experiment::summary_to_json(s));
        emit(a.out, arr.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& s : summaries) text += render_summary(s, "text") + "\n";
        emit(a.out, text);
    }
    return kExitOk;
}

struct GenArgs {
    std::string kind;
    int k = 3, n = 10, m = 4;
    std::string y;
    double pin = 0.9, pout = 0.05;
    std::uint64_t seed = 0;
    bool loopless = false;
    std::string out;
};

eigloc::Vector parse_y(const GenArgs& a) {
    if (a.y.empty()) return eigloc::Vector(static_cast<std::size_t>(a.m), 1.0);
    eigloc::Vector v;
    std::istringstream is(a.y);
    std::string tok;
    while (std::getline(is, tok, ',')) v.push_back(std::stod(tok));
    return v;
}

void emit_matrix(const std::string& out, const eigloc::SymmetricMatrix& m, bool coordinate) {
    std::ostringstream os;
    if (coordinate)
        eigloc::io::write_matrix_market_coordinate(os, m);
    else
        eigloc::io::write_matrix_market_array(os, m);
    emit(out, os.str());
}

int cmd_gen_example(const GenArgs& a) {
    if (a.kind == "blockj") {
        emit_matrix(a.out, eigloc::blockJ_example(a.k, a.n), true);
        return kExitOk;
    }
    if (a.kind == "ce-diag" || a.kind == "ce-antidiag") {
        const eigloc::Vector y = parse_y(a);
        auto [m, x] = a.kind == "ce-diag" ? eigloc::counterexample_diag(y)
                                          : eigloc::counterexample_antidiag(y);
        emit_matrix(a.out, m, false);
        if (!a.out.empty()) {
            std::ostringstream os;
            eigloc::io::write_vector(os, x.vec());
            write_text_atomic(a.out + ".landmark", os.str());
        }
        return kExitOk;
    }
    if (a.kind == "sbm") {
        const auto params =
            eigloc::sbm::SbmParams::relaxed(a.n, a.pin, a.pout, a.seed, a.loopless);
        const auto s = eigloc::sbm::sample(params);
        emit_matrix(a.out, s.adjacency, true);
        if (!a.out.empty()) {
            write_text_atomic(a.out + ".json",
                              eigloc::sbm::sample_sidecar(params, s).dump(2) + "\n");
            std::ostringstream os;
            eigloc::io::write_vector(os, s.planted.vec());
            write_text_atomic(a.out + ".planted", os.str());
        }
        return kExitOk;
    }
    throw std::invalid_argument("gen-example kind must be blockj, ce-diag, ce-antidiag or sbm");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius-cosine localization of dominant eigenpairs, leading-eigenvector "
                 "sign patterns, and planted-partition experiments"};
    app.require_subcommand(1);

    LocalizeArgs loc;
    auto* c_loc = app.add_subcommand("localize",
                                     "Eigenvalue/eigenvector localization against a landmark");
    c_loc->add_option("--matrix", loc.matrix, "Matrix Market file ('-' for stdin)")->required();
    c_loc->add_option("--landmark", loc.landmark, "ones | planted:<file> | vector:<file>");
    c_loc->add_option("--format", loc.format)->check(CLI::IsMember({"json", "text"}));
    c_loc->add_option("--out", loc.out, "Write the report to a file (atomic)");

    SignatureArgs sig;
    auto* c_sig = app.add_subcommand("signature", "Leading-eigenvector sign-pattern check");
    c_sig->add_option("--matrix", sig.matrix, "Matrix Market file ('-' for stdin)")->required();
    c_sig->add_option("--k", sig.k, "Sign-count parameter, 1 <= k < n/2")->required();
    c_sig->add_option("--variant", sig.variant)->check(CLI::IsMember({"plain", "shifted", "variance"}));
    c_sig->add_option("--alpha", sig.alpha, "Diagonal shift (shifted variant)");
    c_sig->add_option("--format", sig.format)->check(CLI::IsMember({"json", "text"}));
    c_sig->add_option("--out", sig.out);

    SbmRunArgs run;
    auto* c_run = app.add_subcommand("sbm-run", "Monte-Carlo batch at one parameter point");
    c_run->add_option("--n", run.n, "Vertex count (even)");
    c_run->add_option("--pin", run.pin, "Within-cluster edge probability");
    c_run->add_option("--pout", run.pout, "Cross-cluster edge probability");
    c_run->add_option("--trials", run.trials);
    c_run->add_option("--seed", run.seed);
    c_run->add_option("--eps", run.eps, "Slack for the cos^2 and rel_gap predicates");
    c_run->add_option("--eps-acc", run.eps_acc, "Slack for the accuracy predicate");
    c_run->add_flag("--loopless", run.loopless, "Zero the diagonal instead of sampling loops");
    c_run->add_option("--format", run.format)->check(CLI::IsMember({"json", "text"}));
    c_run->add_option("--out", run.out, "Summary output file");
    c_run->add_option("--csv", run.csv, "Per-trial CSV output file");

    SbmSweepArgs sw;
    auto* c_sw = app.add_subcommand("sbm-sweep", "Monte-Carlo sweep over a parameter grid");
    c_sw->add_option("--n", sw.n, "Vertex counts (repeat or comma-separate)")->delimiter(',');
    c_sw->add_option("--pin", sw.pin)->delimiter(',');
    c_sw->add_option("--pout", sw.pout)->delimiter(',');
    c_sw->add_option("--trials", sw.trials);
    c_sw->add_option("--seed", sw.seed);
    c_sw->add_option("--eps", sw.eps);
    c_sw->add_option("--eps-acc", sw.eps_acc);
    c_sw->add_flag("--loopless", sw.loopless);
    c_sw->add_option("--format", sw.format)->check(CLI::IsMember({"json", "text"}));
    c_sw->add_option("--out", sw.out);

    GenArgs gen;
    auto* c_gen = app.add_subcommand("gen-example", "Write a named example matrix");
    c_gen->add_option("kind", gen.kind, "blockj | ce-diag | ce-antidiag | sbm")->required();
    c_gen->add_option("--k", gen.k);
    c_gen->add_option("--n", gen.n);
    c_gen->add_option("--m", gen.m, "Size of the all-ones block vector y");
    c_gen->add_option("--y", gen.y, "Comma-separated entries of y");
    c_gen->add_option("--pin", gen.pin);
    c_gen->add_option("--pout", gen.pout);
    c_gen->add_option("--seed", gen.seed);
    c_gen->add_flag("--loopless", gen.loopless);
    c_gen->add_option("--out", gen.out, "Output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_loc->parsed()) return cmd_localize(loc);
        if (c_sig->parsed()) return cmd_signature(sig);
        if (c_run->parsed()) return cmd_sbm_run(run);
        if (c_sw->parsed()) return cmd_sbm_sweep(sw);
        if (c_gen->parsed()) return cmd_gen_example(gen);
    } catch (const std::exception& e) {
        std::cerr << "eigloc: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
