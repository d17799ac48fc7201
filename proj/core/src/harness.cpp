#include "bestarm/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "bestarm/baseline.hpp"
#include "bestarm/hash.hpp"
#include "bestarm/io.hpp"
#include "bestarm/melim.hpp"
#include "bestarm/metrics.hpp"

namespace bestarm {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::prism_standard: return "prism_standard";
        case Algorithm::prism_conservative: return "prism_conservative";
        case Algorithm::uniform: return "uniform";
    }
    throw std::logic_error("unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "prism_standard" || name == "prism") return Algorithm::prism_standard;
    if (name == "prism_conservative" || name == "conservative")
        return Algorithm::prism_conservative;
    if (name == "uniform") return Algorithm::uniform;
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t shuffle_seed(std::uint64_t master_seed, std::uint64_t trial_id) {
    return mix64(mix64(master_seed ^ 0x517cc1b727220a95ULL) + trial_id * kGolden);
}

struct TrialOutcome {
    bool overflow = false;
    bool correct = false;
    bool best_eliminated = false;
    std::int64_t pulls = 0;
};

void validate_common(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (spec.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

}  // namespace

ExperimentSpec parse_spec_file(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    const auto fail = [&](const std::string& what) {
        throw std::invalid_argument("spec line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail("empty value for " + key);
        try {
            if (key == "alpha") spec.alpha = std::stod(value);
            else if (key == "n") {
                spec.n_list.clear();
                std::istringstream vs(value);
                std::string tok;
                while (std::getline(vs, tok, ',')) spec.n_list.push_back(std::stoi(tok));
            } else if (key == "mu0") spec.mu0 = std::stod(value);
            else if (key == "gap_scale") spec.gap_scale = std::stod(value);
            else if (key == "family") spec.family = family_from_name(value);
            else if (key == "sigma") spec.sigma = std::stod(value);
            else if (key == "alg") spec.algorithm = algorithm_from_name(value);
            else if (key == "delta") spec.delta = std::stod(value);
            else if (key == "m") spec.m = value == "sufficient" ? 0 : std::stoll(value);
            else if (key == "trials") spec.trials = std::stoi(value);
            else if (key == "seed") spec.master_seed = std::stoull(value);
            else if (key == "jobs") spec.jobs = std::stoi(value);
            else if (key == "pull_cap") spec.pull_cap = std::stoll(value);
            else if (key == "phase_cap") spec.phase_cap = std::stoi(value);
            else fail("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            fail("bad value for " + key);
        }
    }
    if (spec.n_list.empty()) throw std::invalid_argument("spec is missing an n list");
    return spec;
}

std::string spec_to_text(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "alpha = " << format_double(spec.alpha) << "\n";
    out << "n = ";
    for (std::size_t i = 0; i < spec.n_list.size(); ++i)
        out << (i ? "," : "") << spec.n_list[i];
    out << "\n";
    out << "mu0 = " << format_double(spec.mu0) << "\n";
    out << "gap_scale = " << format_double(spec.gap_scale) << "\n";
    out << "family = " << family_name(spec.family) << "\n";
    out << "sigma = " << format_double(spec.sigma) << "\n";
    out << "alg = " << algorithm_name(spec.algorithm) << "\n";
    out << "delta = " << format_double(spec.delta) << "\n";
    out << "m = " << (spec.m > 0 ? std::to_string(spec.m) : std::string("sufficient")) << "\n";
    out << "trials = " << spec.trials << "\n";
    out << "seed = " << spec.master_seed << "\n";
    out << "jobs = " << spec.jobs << "\n";
    out << "pull_cap = " << spec.pull_cap << "\n";
    out << "phase_cap = " << spec.phase_cap << "\n";
    return out.str();
}

FitResult fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("need at least two points");
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("points must be positive");
    }
    const double n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += std::log(x);
        my += std::log(y);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        const double dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("x values are all equal");
    FitResult out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return out;
}

AggregateRow run_trials(const ExperimentSpec& spec, int n) {
    validate_common(spec);
    const BanditInstance base =
        make_alpha_instance(n, spec.alpha, spec.mu0, spec.gap_scale, spec.family, spec.sigma);
    const auto gap_vec = gaps(base);

    std::int64_t uniform_m = spec.m;
    if (spec.algorithm == Algorithm::uniform && uniform_m <= 0)
        uniform_m = sufficient_m(gap_vec, spec.delta);
    if (spec.algorithm != Algorithm::uniform) {
        // Reject an out-of-range delta or phase cap here, not inside workers.
        phase_schedule(1, spec.delta,
                       spec.algorithm == Algorithm::prism_standard
                           ? PrismVariant::standard
                           : PrismVariant::conservative);
        if (spec.phase_cap < 1) throw std::invalid_argument("phase_cap must be >= 1");
    }

    const int trials = spec.trials;
    std::vector<TrialOutcome> outcomes(trials);
    std::atomic<int> next{0};

    const auto worker = [&]() {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= trials) return;
            const BanditInstance inst =
                base.shuffled(shuffle_seed(spec.master_seed, static_cast<std::uint64_t>(t)));
            EnvironmentHandle env(inst, spec.master_seed, static_cast<std::uint64_t>(t));
            TrialOutcome& out = outcomes[t];
            if (spec.algorithm == Algorithm::uniform) {
                const UniformResult r = uniform_best(env, uniform_m);
                out.correct = r.chosen == inst.best_external();
                out.pulls = r.total_pulls;
            } else {
                PrismOptions opt;
                opt.phase_cap = spec.phase_cap;
                opt.pull_cap = spec.pull_cap;
                opt.record_trace = false;
                const PrismVariant variant = spec.algorithm == Algorithm::prism_standard
                                                 ? PrismVariant::standard
                                                 : PrismVariant::conservative;
                const TrialResult r = prism(env, spec.delta, variant, opt);
                out.overflow = r.termination == Termination::overflow;
                out.correct = r.correct;
                out.best_eliminated = r.best_arm_eliminated;
                out.pulls = r.total_pulls;
            }
        }
    };

    const int jobs = std::min(spec.jobs, trials);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Merge in trial order; aggregation does not depend on completion order.
    AggregateRow row;
    row.n = n;
    row.trials = trials;
    for (const TrialOutcome& out : outcomes) {
        if (out.overflow) {
            ++row.overflows;
            continue;
        }
        ++row.completed;
        row.successes += out.correct ? 1 : 0;
        row.best_arm_eliminated += out.best_eliminated ? 1 : 0;
        row.total_pulls += out.pulls;
    }
    if (row.completed > 0) {
        row.success_rate = static_cast<double>(row.successes) / row.completed;
        row.mean_pulls = static_cast<double>(row.total_pulls) / row.completed;
        if (row.completed > 1) {
            double ss = 0.0;
            for (const TrialOutcome& out : outcomes) {
                if (out.overflow) continue;
                const double d = static_cast<double>(out.pulls) - row.mean_pulls;
                ss += d * d;
            }
            row.stddev_pulls = std::sqrt(ss / (row.completed - 1));
        }
    }

    row.H = hardness_H(gap_vec);
    row.G = hardness_G(gap_vec);
    row.lower_bound = spec.algorithm == Algorithm::uniform
                          ? nonadaptive_lb(row.H, n, spec.delta).lb_any
                          : adaptive_lb(row.H, spec.delta).value;
    row.instance_hash = git_blob_sha1(instance_to_json(base));
    return row;
}

AggregateResult scaling_sweep(const ExperimentSpec& spec) {
    validate_common(spec);
    if (spec.n_list.size() < 4)
        throw std::invalid_argument("scaling sweep needs at least 4 values of n");
    for (std::size_t i = 1; i < spec.n_list.size(); ++i) {
        if (spec.n_list[i] <= spec.n_list[i - 1])
            throw std::invalid_argument("n list must be strictly increasing");
    }
    if (spec.n_list.back() < 4 * spec.n_list.front())
        throw std::invalid_argument("scaling sweep must span at least 2 octaves");

    AggregateResult out;
    out.rows.reserve(spec.n_list.size());
    for (int n : spec.n_list) out.rows.push_back(run_trials(spec, n));

    std::vector<std::pair<double, double>> points;
    points.reserve(out.rows.size());
    for (const AggregateRow& row : out.rows) {
        if (row.completed > 0)
            points.emplace_back(static_cast<double>(row.n), row.mean_pulls);
    }
    if (points.size() >= 2) out.fit = fit_loglog_slope(points);
    return out;
}

std::string rows_to_csv(const std::vector<AggregateRow>& rows) {
    std::string csv =
        "n,trials,completed,overflows,success_rate,mean_pulls,stddev_pulls,total_pulls,H,G,"
        "lower_bound\n";
    for (const AggregateRow& r : rows) {
        csv += std::to_string(r.n) + ',' + std::to_string(r.trials) + ',' +
               std::to_string(r.completed) + ',' + std::to_string(r.overflows) + ',' +
               format_double(r.success_rate) + ',' + format_double(r.mean_pulls) + ',' +
               format_double(r.stddev_pulls) + ',' + std::to_string(r.total_pulls) + ',' +
               format_double(r.H) + ',' + format_double(r.G) + ',' +
               format_double(r.lower_bound) + '\n';
    }
    return csv;
}

}  // namespace bestarm
