#pragma once

#include "gr2/certificate.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gr2 {

struct SuiteOptions {
  int genus = 3;
  long trials = 1000;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& suite_names();

/// Runs one named suite (or "all"). Mathematical failures become a `fail`
/// certificate carrying the witness; usage errors propagate.
Certificate run_suite(const std::string& name, const SuiteOptions& opt);

Certificate rank_command(int genus);
/// K as a list of sparse vectors keyed by pair labels.
Certificate kernel_command(int genus);
Certificate abelianization_command(int genus);

/// kind is one of tau1-bp, tau1-pb, tau2-bscc, beta-bp, beta-bscc, cocycle.
Certificate invariant_command(const std::string& kind, const std::vector<std::string>& args, int genus);

}  // namespace gr2
