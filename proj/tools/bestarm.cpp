// bestarm: generate instances, run single trials, and drive Monte Carlo
// experiments from the command line.
//
// Exit codes: 0 success, 2 invalid spec or arguments, 3 overflow encountered.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bestarm/baseline.hpp"
#include "bestarm/harness.hpp"
#include "bestarm/io.hpp"
#include "bestarm/metrics.hpp"
#include "bestarm/prism.hpp"
#include "bestarm/version.hpp"

namespace {

using namespace bestarm;

constexpr int kExitInvalid = 2;
constexpr int kExitOverflow = 3;

void emit(const std::optional<std::string>& path, const std::string& contents) {
    if (path) {
        write_file(*path, contents);
    } else {
        std::cout << contents;
        if (!contents.empty() && contents.back() != '\n') std::cout << '\n';
    }
}

struct CommonExperimentFlags {
    ExperimentSpec spec;
    std::string n_csv;
    std::string family = "bernoulli";
    std::string alg = "prism";
    std::string spec_path;
    std::string out_prefix;
    std::int64_t m = 0;
};

void add_experiment_flags(CLI::App* cmd, CommonExperimentFlags& f) {
    cmd->add_option("--spec", f.spec_path, "key = value spec file; flags override it");
    cmd->add_option("--alpha", f.spec.alpha, "alpha of the mean parameterization");
    cmd->add_option("--n", f.n_csv, "suboptimal arm count(s), comma separated");
    cmd->add_option("--mu0", f.spec.mu0, "best arm mean");
    cmd->add_option("--gap-scale", f.spec.gap_scale, "gap scale factor");
    cmd->add_option("--family", f.family, "bernoulli|gaussian|deterministic");
    cmd->add_option("--sigma", f.spec.sigma, "gaussian sigma");
    cmd->add_option("--alg", f.alg, "prism|conservative|uniform");
    cmd->add_option("--delta", f.spec.delta, "failure probability target");
    cmd->add_option("--m", f.m, "uniform per-arm budget (default: sufficient_m)");
    cmd->add_option("--trials", f.spec.trials, "Monte Carlo trials per n");
    cmd->add_option("--seed", f.spec.master_seed, "master seed");
    cmd->add_option("--jobs", f.spec.jobs, "worker threads across trials");
    cmd->add_option("--pull-cap", f.spec.pull_cap, "per-request pull ceiling");
    cmd->add_option("--phase-cap", f.spec.phase_cap, "PRISM phase cap");
    cmd->add_option("--out", f.out_prefix, "output prefix; writes <out>.csv and <out>.json");
}

std::vector<int> parse_n_csv(const std::string& csv) {
    std::vector<int> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

ExperimentSpec resolve_spec(const CLI::App* cmd, const CommonExperimentFlags& f) {
    ExperimentSpec spec;
    if (!f.spec_path.empty()) spec = parse_spec_file(read_file(f.spec_path));
    const auto given = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (given("--alpha")) spec.alpha = f.spec.alpha;
    if (given("--n")) spec.n_list = parse_n_csv(f.n_csv);
    if (given("--mu0")) spec.mu0 = f.spec.mu0;
    if (given("--gap-scale")) spec.gap_scale = f.spec.gap_scale;
    if (given("--family")) spec.family = family_from_name(f.family);
    if (given("--sigma")) spec.sigma = f.spec.sigma;
    if (given("--alg")) spec.algorithm = algorithm_from_name(f.alg);
    if (given("--delta")) spec.delta = f.spec.delta;
    if (given("--m")) spec.m = f.m;
    if (given("--trials")) spec.trials = f.spec.trials;
    if (given("--seed")) spec.master_seed = f.spec.master_seed;
    if (given("--jobs")) spec.jobs = f.spec.jobs;
    if (given("--pull-cap")) spec.pull_cap = f.spec.pull_cap;
    if (given("--phase-cap")) spec.phase_cap = f.spec.phase_cap;
    if (spec.n_list.empty()) throw std::invalid_argument("an n list is required (--n or spec file)");
    return spec;
}

int write_experiment_outputs(const ExperimentSpec& spec, const AggregateResult& result,
                             const std::string& out_prefix) {
    const std::string csv = rows_to_csv(result.rows);
    const std::string record = run_record_json(spec, result);
    if (out_prefix.empty()) {
        std::cout << csv;
        std::cout << record << '\n';
    } else {
        write_file(out_prefix + ".csv", csv);
        write_file(out_prefix + ".json", record);
    }
    for (const AggregateRow& row : result.rows) {
        if (row.overflows > 0) return kExitOverflow;
    }
    return 0;
}

int cmd_gen(int n, double alpha, double mu0, double gap_scale, const std::string& family,
            double sigma, std::optional<std::uint64_t> permutation_seed,
            const std::optional<std::string>& out) {
    const BanditInstance inst =
        make_alpha_instance(n, alpha, mu0, gap_scale, family_from_name(family), sigma);
    emit(out, instance_to_json(inst, permutation_seed));
    return 0;
}

int cmd_bounds(const std::string& instance_path, double delta, std::optional<double> alpha,
               double c1, const std::optional<std::string>& out,
               const std::optional<std::string>& slices_csv) {
    const InstanceFile file = load_instance(instance_path);
    const TheoryBounds bounds = theory_bounds(file.instance, delta, alpha, c1);
    emit(out, theory_bounds_to_json(bounds));
    if (slices_csv) write_file(*slices_csv, slices_to_csv(bounds.slicing));
    return 0;
}

int cmd_run(const std::string& instance_path, const std::string& alg, double delta,
            std::int64_t m, std::uint64_t seed, std::uint64_t trial, bool trace,
            std::int64_t pull_cap, int phase_cap, const std::optional<std::string>& out) {
    const InstanceFile file = load_instance(instance_path);
    EnvironmentHandle env(file.instance, seed, trial);

    TrialResult result;
    std::string alg_name;
    if (alg == "uniform") {
        if (m <= 0) m = sufficient_m(gaps(file.instance), delta);
        const UniformResult r = uniform_best(env, m);
        // Present the non-adaptive run as a single synthetic phase.
        result.chosen = r.chosen;
        result.correct = r.chosen == file.instance.best_external();
        result.total_pulls = r.total_pulls;
        result.n_phases = 1;
        result.termination = Termination::unique_survivor;
        PhaseLog log;
        log.phase = 1;
        for (int a = 0; a < env.n_arms(); ++a) log.active_before.push_back(a);
        log.me_output = r.chosen;
        log.n_ell = m;
        for (int a = 0; a < env.n_arms(); ++a) log.phase_means.emplace_back(a, r.means[a]);
        log.threshold = r.means[r.chosen];
        log.active_after = {r.chosen};
        log.pulls_phase = r.total_pulls;
        result.phases.push_back(std::move(log));
        alg_name = "uniform";
    } else {
        const PrismVariant variant = variant_from_name(alg == "prism" ? "standard" : alg);
        PrismOptions opt;
        opt.phase_cap = phase_cap;
        opt.pull_cap = pull_cap;
        opt.record_trace = true;
        result = prism(env, delta, variant, opt);
        alg_name = variant == PrismVariant::standard ? "prism_standard" : "prism_conservative";
    }

    emit(out, trial_result_to_json(result, alg_name, delta, seed, trial, trace));
    return result.termination == Termination::overflow ? kExitOverflow : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"best-arm identification toolkit"};
    app.set_version_flag("--version", std::string(bestarm::kVersion));
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an alpha-parameterized instance file");
    int gen_n = 8;
    double gen_alpha = 0.3, gen_mu0 = 0.9, gen_scale = 0.5, gen_sigma = 0.25;
    std::string gen_family = "bernoulli", gen_out, gen_perm_seed;
    gen->add_option("--n", gen_n, "suboptimal arm count")->required();
    gen->add_option("--alpha", gen_alpha, "alpha");
    gen->add_option("--mu0", gen_mu0, "best arm mean");
    gen->add_option("--gap-scale", gen_scale, "gap scale");
    gen->add_option("--family", gen_family, "bernoulli|gaussian|deterministic");
    gen->add_option("--sigma", gen_sigma, "gaussian sigma");
    gen->add_option("--permutation-seed", gen_perm_seed, "seed for the hidden permutation");
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "theory bounds for an instance file");
    std::string bounds_instance, bounds_out, bounds_slices;
    double bounds_delta = 0.1, bounds_c1 = 1.0;
    double bounds_alpha = -1.0;
    bounds->add_option("--instance", bounds_instance, "instance JSON path")->required();
    bounds->add_option("--delta", bounds_delta, "failure probability");
    bounds->add_option("--alpha", bounds_alpha, "alpha for the parameterized lower bound");
    bounds->add_option("--c1", bounds_c1, "adaptive lower bound constant");
    bounds->add_option("--out", bounds_out, "bounds JSON path (stdout when omitted)");
    bounds->add_option("--slices-csv", bounds_slices, "write (s, |slice|) CSV here");

    // run
    auto* run = app.add_subcommand("run", "run one trial on an instance file");
    std::string run_instance, run_alg = "prism", run_out;
    double run_delta = 0.1;
    std::int64_t run_m = 0, run_pull_cap = kDefaultPullCap;
    std::uint64_t run_seed = 0, run_trial = 0;
    int run_phase_cap = 40;
    bool run_trace = false;
    run->add_option("--instance", run_instance, "instance JSON path")->required();
    run->add_option("--alg", run_alg, "prism|standard|conservative|uniform");
    run->add_option("--delta", run_delta, "failure probability");
    run->add_option("--m", run_m, "uniform per-arm budget (default: sufficient_m)");
    run->add_option("--seed", run_seed, "master seed");
    run->add_option("--trial", run_trial, "trial id");
    run->add_flag("--trace", run_trace, "include the full phase trace");
    run->add_option("--pull-cap", run_pull_cap, "per-request pull ceiling");
    run->add_option("--phase-cap", run_phase_cap, "phase cap");
    run->add_option("--out", run_out, "output path (stdout when omitted)");

    // mc / scaling
    auto* mc = app.add_subcommand("mc", "Monte Carlo aggregate for each n");
    CommonExperimentFlags mc_flags;
    add_experiment_flags(mc, mc_flags);
    auto* scaling = app.add_subcommand("scaling", "sweep n and fit the log-log slope");
    CommonExperimentFlags scaling_flags;
    add_experiment_flags(scaling, scaling_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            std::optional<std::uint64_t> perm;
            if (!gen_perm_seed.empty()) perm = std::stoull(gen_perm_seed);
            return cmd_gen(gen_n, gen_alpha, gen_mu0, gen_scale, gen_family, gen_sigma, perm,
                           gen_out.empty() ? std::nullopt : std::make_optional(gen_out));
        }
        if (bounds->parsed()) {
            return cmd_bounds(
                bounds_instance, bounds_delta,
                bounds->count("--alpha") ? std::make_optional(bounds_alpha) : std::nullopt,
                bounds_c1, bounds_out.empty() ? std::nullopt : std::make_optional(bounds_out),
                bounds_slices.empty() ? std::nullopt : std::make_optional(bounds_slices));
        }
        if (run->parsed()) {
            return cmd_run(run_instance, run_alg, run_delta, run_m, run_seed, run_trial,
                           run_trace, run_pull_cap, run_phase_cap,
                           run_out.empty() ? std::nullopt : std::make_optional(run_out));
        }
        if (mc->parsed()) {
            const ExperimentSpec spec = resolve_spec(mc, mc_flags);
            AggregateResult result;
            for (int n : spec.n_list) result.rows.push_back(run_trials(spec, n));
            return write_experiment_outputs(spec, result, mc_flags.out_prefix);
        }
        if (scaling->parsed()) {
            const ExperimentSpec spec = resolve_spec(scaling, scaling_flags);
            const AggregateResult result = scaling_sweep(spec);
            return write_experiment_outputs(spec, result, scaling_flags.out_prefix);
        }
    } catch (const pull_overflow_error& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return kExitOverflow;
    } catch (const std::range_error& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return kExitOverflow;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}
