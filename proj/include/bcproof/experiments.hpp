// Experiment presets: deterministic parameter sweeps that emit one CSV row
// per parameter point, with a final "pass" column holding "true"/"false".
// Rows come out sorted by their parameter tuple, and a preset run twice gives
// byte-identical tables.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bcproof/io.hpp"

namespace bcproof {

/// Parameter grid. An empty list selects the preset's default values.
struct ExperimentParams {
  std::vector<long> n;
  std::vector<long> s;
  std::vector<long> B;
  std::vector<long> h;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
};

struct ExperimentPreset {
  std::string name;
  std::string description;
  std::vector<std::string> columns;
  std::function<Table(const ExperimentParams&)> run;
};

const std::vector<ExperimentPreset>& experiment_presets();

/// Throws std::invalid_argument for an unknown name.
const ExperimentPreset& find_preset(const std::string& name);

Table run_experiment(const std::string& name, const ExperimentParams& params = {});

/// True when the table has a "pass" column and every row holds "true".
bool all_pass(const Table& table);

/// The minimum proof size for jeroslow_inequality(3) with variable
/// disjunctions only, as computed by the extremal search.
inline constexpr std::size_t kFrozenSparseMinimumN3 = 11;

}  // namespace bcproof
