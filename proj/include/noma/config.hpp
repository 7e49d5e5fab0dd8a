#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noma/experiments.hpp"

namespace noma {

inline constexpr const char* kToolVersion = "0.1.0";

struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<std::string> pairing;  // comma-separated algorithm names
  std::optional<int> set_size_z;
  std::optional<int> threads;
};

// Sectioned key-value text: [channel], [experiment], [qos]; a [manifest]
// section is ignored so a manifest is itself a valid config. Errors carry
// the source name, line number, and offending key.
ExperimentSpec parse_config_text(const std::string& text,
                                 const std::string& source_name,
                                 const FlagOverrides& overrides = {});

// Empty path yields the all-defaults spec (plus overrides).
ExperimentSpec parse_config(const std::string& path,
                            const FlagOverrides& overrides = {});

std::string serialize_spec(const ExperimentSpec& spec);

struct RunManifest {
  ExperimentSpec spec;
  std::string tool_version = kToolVersion;
  std::string created_utc;
  std::string subcommand;
  std::vector<std::string> outputs;
};

std::string serialize_manifest(const RunManifest& manifest);

std::string utc_timestamp_now();

}  // namespace noma
