// gr2: ranks, kernels, verification suites and invariant evaluation.
#include "gr2/errors.hpp"
#include "gr2/parallel.hpp"
#include "gr2/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

struct Common {
  int genus = 3;
  std::uint64_t seed = 0;
  long trials = 1000;
  int threads = 0;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--genus,-g", c.genus, "genus (at least 3)")->capture_default_str();
  app->add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();
  app->add_option("--trials", c.trials, "trials for randomized checks")->capture_default_str();
  app->add_option("--threads", c.threads, "OpenMP threads (default: GR2_THREADS, else all)");
  app->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app->add_option("--out", c.out, "also write the JSON certificate here");
}

int emit(const gr2::Certificate& cert, const Common& c) {
  if (c.format == "json")
    std::cout << cert.dump() << "\n";
  else
    std::cout << cert.text();
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw gr2::UsageError("cannot write " + c.out);
    f << cert.dump() << "\n";
  }
  return cert.result == gr2::Outcome::Pass ? 0 : 1;
}

void apply_threads(const Common& c) {
  int n = c.threads;
  if (n == 0)
    if (const char* env = std::getenv("GR2_THREADS")) n = std::atoi(env);
  if (n < 0) throw gr2::UsageError("--threads must be positive");
  if (n > 0) gr2::set_threads(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the degree-two Torelli relation module and its invariants"};
  app.require_subcommand(1);
  Common c;

  auto* rank = app.add_subcommand("rank", "ranks of Lambda3H, Lambda2Lambda3H, D2', K and im B");
  add_common(rank, c);
  auto* kernel = app.add_subcommand("kernel", "HNF basis of K keyed by pair labels");
  add_common(kernel, c);
  auto* ab = app.add_subcommand("abelianization", "invariant factors of the abelianization model");
  add_common(ab, c);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(gr2::suite_names()));
  add_common(verify, c);

  std::string kind;
  std::vector<std::string> args;
  auto* inv = app.add_subcommand("invariants", "evaluate an invariant formula");
  inv->add_option("kind", kind, "tau1-bp | tau1-pb | tau2-bscc | beta-bp | beta-bscc | cocycle")->required();
  inv->add_option("args", args, "arguments of the formula");
  add_common(inv, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_threads(c);
    gr2::Certificate cert;
    if (*rank) cert = gr2::rank_command(c.genus);
    else if (*kernel) cert = gr2::kernel_command(c.genus);
    else if (*ab) cert = gr2::abelianization_command(c.genus);
    else if (*verify) cert = gr2::run_suite(suite, {c.genus, c.trials, c.seed});
    else cert = gr2::invariant_command(kind, args, c.genus);
    return emit(cert, c);
  } catch (const gr2::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const gr2::MathFailure& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
