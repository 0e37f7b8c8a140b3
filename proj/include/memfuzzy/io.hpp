#pragma once

// JSON and file formats: experiment configs, fuzzy numbers, block model
// files and result documents. All physical quantities are SI.

#include <json.hpp>
#include <string>

#include "memfuzzy/device.hpp"
#include "memfuzzy/fuzzy.hpp"
#include "memfuzzy/harness.hpp"
#include "memfuzzy/system.hpp"

namespace memfuzzy::io {

using json = nlohmann::json;

[[nodiscard]] json to_json(const device::MemristorParams& p);
[[nodiscard]] device::MemristorParams params_from_json(const json& j);

[[nodiscard]] json to_json(const Universe& u);
[[nodiscard]] Universe universe_from_json(const json& j);

/// {"universe": {"lo", "hi", "count"}, "grades": [...]}
[[nodiscard]] json to_json(const FuzzyNumber& f);
[[nodiscard]] FuzzyNumber fuzzy_from_json(const json& j);

[[nodiscard]] json to_json(const harness::ExperimentConfig& c);

/// Parses a config, filling absent keys from `defaults` (RFC 7386 merge).
[[nodiscard]] harness::ExperimentConfig config_from_json(const json& j,
                                                         const harness::ExperimentConfig& defaults);
/// Parses a complete config. A top-level "experiment" key selects the
/// named defaults to merge onto.
[[nodiscard]] harness::ExperimentConfig config_from_json(const json& j);

/// Keys: mse, n_train, saturation_count, config, runtime_s, plus
/// diagnostics (degenerate_count, t0, max_delta_ratio, surfaces, models).
[[nodiscard]] json to_json(const harness::ExperimentResult& r, bool include_points = false);

/// Model file: topology, device constants, read mode, memristances and
/// fault mask of one block.
[[nodiscard]] json block_to_json(const Block& block);
[[nodiscard]] Block block_from_json(const json& j);

void save_block(const Block& block, const std::string& path);
[[nodiscard]] Block load_block(const std::string& path);

[[nodiscard]] json read_json_file(const std::string& path);
void write_json_file(const json& j, const std::string& path);

}  // namespace memfuzzy::io
