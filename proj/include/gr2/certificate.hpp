#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>

namespace gr2 {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "gr2-1.0";
inline constexpr int kSchemaVersion = 1;

enum class Outcome { Pass, Fail, Error };

const char* outcome_name(Outcome o);

/// Everything but `timing_ms` is deterministic for fixed inputs.
struct Certificate {
  std::string command;
  int genus = 0;
  Json parameters = Json::object();
  Outcome result = Outcome::Pass;
  Json details = Json::object();
  std::uint64_t seed = 0;
  double timing_ms = 0;

  Json to_json(bool with_timing = true) const;
  std::string dump(bool with_timing = true) const;
  /// Human-readable summary: one header line plus indented details.
  std::string text() const;
};

}  // namespace gr2
