#pragma once
/*
File formats.

Instance file: JSON object {"means": [...], "family": "...", "sigma"?,
"permutation_seed"?} with means listed in internal rank order. Loading
applies the permutation seed (identity when absent).

Run records and bounds records are JSON; experiment rows are CSV (see
rows_to_csv). Serialization is deterministic: fixed key order, floats with
17 significant digits.
*/

#include <cstdint>
#include <optional>
#include <string>

#include "bestarm/env.hpp"
#include "bestarm/harness.hpp"
#include "bestarm/metrics.hpp"
#include "bestarm/prism.hpp"

namespace bestarm {

struct InstanceFile {
    BanditInstance instance;
    std::optional<std::uint64_t> permutation_seed;
};

// Canonical instance JSON (means in rank order); permutation_seed emitted
// only when provided.
std::string instance_to_json(const BanditInstance& instance,
                             std::optional<std::uint64_t> permutation_seed = std::nullopt);

InstanceFile instance_from_json(const std::string& text);
InstanceFile load_instance(const std::string& path);

std::string trial_result_to_json(const TrialResult& result, const std::string& algorithm,
                                 double delta, std::uint64_t seed, std::uint64_t trial_id,
                                 bool include_trace);

std::string theory_bounds_to_json(const TheoryBounds& bounds);
std::string slices_to_csv(const SliceResult& slicing);

std::string run_record_json(const ExperimentSpec& spec, const AggregateResult& result);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace bestarm
