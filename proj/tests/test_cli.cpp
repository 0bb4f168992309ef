#include "gr2/errors.hpp"
#include "gr2/parallel.hpp"
#include "gr2/suites.hpp"

#include <doctest.h>

using namespace gr2;

TEST_CASE("every suite passes at genus 3") {
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    Certificate c = run_suite(name, {3, 200, 1});
    CHECK(c.result == Outcome::Pass);
    CHECK(c.command == "verify " + name);
  }
}

TEST_CASE("certificates are identical across thread counts") {
  const int saved = threads();
  for (const char* name : {"theorem-k", "theta-mod4", "d-identity", "uprime", "lemma-sp"}) {
    CAPTURE(name);
    std::string ref;
    for (int t : {1, 4, 8}) {
      set_threads(t);
      std::string d = run_suite(name, {3, 300, 11}).dump(false);
      if (ref.empty()) ref = d;
      CHECK(d == ref);
    }
  }
  set_threads(saved);
}

TEST_CASE("certificate shape") {
  Json j = run_suite("exact-rows", {3, 10, 0}).to_json(true);
  for (const char* key : {"schema", "command", "genus", "parameters", "result", "details", "artifact_version", "seed",
                          "timing_ms"})
    CHECK(j.contains(key));
  CHECK(j["artifact_version"] == kArtifactVersion);
  CHECK_FALSE(run_suite("exact-rows", {3, 10, 0}).to_json(false).contains("timing_ms"));
}

TEST_CASE("commands") {
  CHECK(rank_command(3).result == Outcome::Pass);
  Json k = kernel_command(3).to_json(false);
  CHECK(k["details"].contains("hnf_digest"));
  CHECK(abelianization_command(3).result == Outcome::Pass);
  CHECK(invariant_command("tau1-pb", {"a1", "a2", "b3"}, 3).text().find("-a1^a2^b3") != std::string::npos);
  CHECK(invariant_command("beta-bscc", {"(a1,b1)"}, 3).text().find("a1*b1") != std::string::npos);
  CHECK(invariant_command("tau2-bscc", {"(a1,b1)"}, 3).text().find("1/2") != std::string::npos);
  CHECK_THROWS_AS(invariant_command("nope", {}, 3), UsageError);
  CHECK_THROWS_AS(invariant_command("tau1-pb", {"a1", "a2"}, 3), UsageError);
  CHECK_THROWS_AS(run_suite("nope", {3, 1, 0}), UsageError);
  CHECK_THROWS_AS(run_suite("theorem-k", {2, 1, 0}), UsageError);
  CHECK(invariant_command("tau1-bp", {"(a1,a2)", "a3"}, 3).result == Outcome::Fail);
}
