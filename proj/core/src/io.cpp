#include "bestarm/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bestarm/version.hpp"

namespace bestarm {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered bound_value_json(const BoundValue& b) {
    return ordered{{"value", b.value}, {"delta_in_range", b.delta_in_range}};
}

}  // namespace

std::string instance_to_json(const BanditInstance& instance,
                             std::optional<std::uint64_t> permutation_seed) {
    ordered j;
    j["means"] = instance.means_by_rank();
    j["family"] = family_name(instance.family());
    if (instance.family() == RewardFamily::gaussian) j["sigma"] = instance.sigma();
    if (permutation_seed) j["permutation_seed"] = *permutation_seed;
    return j.dump();
}

InstanceFile instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("instance file is not valid JSON: ") + e.what());
    }
    if (!j.contains("means") || !j["means"].is_array() || j["means"].empty())
        throw std::invalid_argument("instance file needs a non-empty 'means' array");
    if (!j.contains("family")) throw std::invalid_argument("instance file needs 'family'");

    const RewardFamily family = family_from_name(j["family"].get<std::string>());
    const double sigma = j.value("sigma", 0.25);
    BanditInstance instance(j["means"].get<std::vector<double>>(), family, sigma);

    InstanceFile out{std::move(instance), std::nullopt};
    if (j.contains("permutation_seed")) {
        out.permutation_seed = j["permutation_seed"].get<std::uint64_t>();
        out.instance = out.instance.shuffled(*out.permutation_seed);
    }
    return out;
}

InstanceFile load_instance(const std::string& path) {
    return instance_from_json(read_file(path));
}

std::string trial_result_to_json(const TrialResult& result, const std::string& algorithm,
                                 double delta, std::uint64_t seed, std::uint64_t trial_id,
                                 bool include_trace) {
    ordered j;
    j["algorithm"] = algorithm;
    j["delta"] = delta;
    j["seed"] = seed;
    j["trial_id"] = trial_id;
    j["chosen"] = result.chosen;
    j["correct"] = result.correct;
    j["total_pulls"] = result.total_pulls;
    j["n_phases"] = result.n_phases;
    j["termination"] = termination_name(result.termination);
    j["best_arm_eliminated"] = result.best_arm_eliminated;
    if (include_trace) {
        ordered phases = ordered::array();
        for (const PhaseLog& p : result.phases) {
            ordered ph;
            ph["phase"] = p.phase;
            ph["active_before"] = p.active_before;
            ph["me_output"] = p.me_output;
            ph["n_ell"] = p.n_ell;
            ph["eps_ell"] = p.eps_ell;
            ph["me_delta"] = p.me_delta;
            ordered means = ordered::array();
            for (const auto& [arm, mean] : p.phase_means)
                means.push_back(ordered::array({arm, mean}));
            ph["phase_means"] = std::move(means);
            ph["threshold"] = p.threshold;
            ph["active_after"] = p.active_after;
            ph["pulls_phase"] = p.pulls_phase;
            phases.push_back(std::move(ph));
        }
        j["phases"] = std::move(phases);
    }
    return j.dump(2);
}

std::string theory_bounds_to_json(const TheoryBounds& bounds) {
    ordered j;
    j["n_arms"] = bounds.n_arms;
    j["delta"] = bounds.delta;
    j["H"] = bounds.H;
    j["G"] = bounds.G;
    j["adaptive_lb"] = bound_value_json(bounds.adaptive);
    j["nonadaptive_lb_any"] =
        ordered{{"value", bounds.nonadaptive.lb_any},
                {"delta_in_range", bounds.nonadaptive.delta_in_range}};
    j["nonadaptive_lb_worst"] =
        ordered{{"value", bounds.nonadaptive.lb_worst},
                {"delta_in_range", bounds.nonadaptive.delta_in_range}};
    if (bounds.alpha_lower) j["alpha_lb"] = *bounds.alpha_lower;
    j["s_star"] = bounds.slicing.s_star;
    j["L_pred"] = bounds.slicing.l_pred;
    ordered slices;
    for (const auto& [s, ranks] : bounds.slicing.slices)
        slices[std::to_string(s)] = ranks;
    j["slices"] = std::move(slices);
    return j.dump(2);
}

std::string slices_to_csv(const SliceResult& slicing) {
    std::string csv = "s,count\n";
    for (const auto& [s, ranks] : slicing.slices)
        csv += std::to_string(s) + ',' + std::to_string(ranks.size()) + '\n';
    return csv;
}

std::string run_record_json(const ExperimentSpec& spec, const AggregateResult& result) {
    ordered j;
    ordered s;
    s["alpha"] = spec.alpha;
    s["n"] = spec.n_list;
    s["mu0"] = spec.mu0;
    s["gap_scale"] = spec.gap_scale;
    s["family"] = family_name(spec.family);
    s["sigma"] = spec.sigma;
    s["alg"] = algorithm_name(spec.algorithm);
    s["delta"] = spec.delta;
    s["m"] = spec.m > 0 ? ordered(spec.m) : ordered("sufficient");
    s["trials"] = spec.trials;
    s["seed"] = spec.master_seed;
    s["jobs"] = spec.jobs;
    s["pull_cap"] = spec.pull_cap;
    s["phase_cap"] = spec.phase_cap;
    j["spec"] = std::move(s);

    ordered rows = ordered::array();
    for (const AggregateRow& r : result.rows) {
        ordered row;
        row["n"] = r.n;
        row["instance_hash"] = r.instance_hash;
        row["trials"] = r.trials;
        row["completed"] = r.completed;
        row["overflows"] = r.overflows;
        row["successes"] = r.successes;
        row["success_rate"] = r.success_rate;
        row["mean_pulls"] = r.mean_pulls;
        row["stddev_pulls"] = r.stddev_pulls;
        row["total_pulls"] = r.total_pulls;
        row["best_arm_eliminated"] = r.best_arm_eliminated;
        row["H"] = r.H;
        row["G"] = r.G;
        row["lower_bound"] = r.lower_bound;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (result.fit) {
        j["fit"] = ordered{{"slope", result.fit->slope},
                           {"intercept", result.fit->intercept},
                           {"r_squared", result.fit->r_squared}};
    } else {
        j["fit"] = nullptr;
    }
    j["environment"] = ordered{{"tool", "bestarm"}, {"version", kVersion}};
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace bestarm
