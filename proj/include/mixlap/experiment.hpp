#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace mixlap {

// Exit codes: 0 success, 1 verdict failure, 2 malformed config, 3 solver failure.
struct ExperimentOutcome {
  int exit_code = 0;
  nlohmann::json report;
  std::string error;
};

// Runs one config-driven experiment (solve | eigen | scan | symmetry |
// gibbons) and writes field/report/curve files into out_dir.
ExperimentOutcome run_experiment(const nlohmann::json& config, const std::string& out_dir,
                                 std::optional<std::uint64_t> seed_override = {});

std::string presets_text();
nlohmann::json presets_json();

std::uint64_t fnv1a_hash(const std::string& data);

}  // namespace mixlap
