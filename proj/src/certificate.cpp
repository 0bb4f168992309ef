#include "gr2/certificate.hpp"

#include <sstream>

namespace gr2 {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Error: return "error";
  }
  return "error";
}

Json Certificate::to_json(bool with_timing) const {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["genus"] = genus;
  j["parameters"] = parameters;
  j["result"] = outcome_name(result);
  j["details"] = details;
  j["artifact_version"] = kArtifactVersion;
  j["seed"] = seed;
  if (with_timing) j["timing_ms"] = timing_ms;
  return j;
}

std::string Certificate::dump(bool with_timing) const { return to_json(with_timing).dump(2); }

namespace {

void write_details(std::ostringstream& out, const Json& j, int depth) {
  const std::string pad(2 * depth, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      out << pad << it.key() << ":\n";
      write_details(out, *it, depth + 1);
    } else if (it->is_string()) {
      out << pad << it.key() << ": " << it->get<std::string>() << "\n";
    } else {
      out << pad << it.key() << ": " << it->dump() << "\n";
    }
  }
}

}  // namespace

std::string Certificate::text() const {
  std::ostringstream out;
  out << command << " genus=" << genus << " result=" << outcome_name(result) << " (" << timing_ms << " ms)\n";
  write_details(out, details, 1);
  return out.str();
}

}  // namespace gr2
