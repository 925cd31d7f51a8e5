// Command-line front end: `sqrt` solves one instance, `bench` runs a timing
// cell and prints its summary.
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fpsqrt/harness.hpp"

namespace {

constexpr int kExitNonResidue = 2;
constexpr int kExitRetryLimit = 3;

int exit_code_for(const fpsqrt::Error& err) {
  switch (err.kind()) {
    case fpsqrt::ErrorKind::kNonResidue: return kExitNonResidue;
    case fpsqrt::ErrorKind::kRetryLimitExceeded: return kExitRetryLimit;
    default: return 1;
  }
}

std::vector<fpsqrt::Algorithm> parse_algorithm_list(const std::string& list) {
  std::vector<fpsqrt::Algorithm> out;
  std::istringstream in(list);
  for (std::string tag; std::getline(in, tag, ',');) {
    if (!tag.empty()) out.push_back(fpsqrt::parse_algorithm(tag));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square roots modulo an odd prime"};
  app.require_subcommand(1);

  std::string prime_text;
  std::string value_text;
  std::string alg_tag = "auto";
  std::uint64_t seed = 1;
  auto* sqrt_cmd = app.add_subcommand("sqrt", "print the canonical square root of a mod p");
  sqrt_cmd->add_option("--prime", prime_text, "odd prime p (decimal or 0x-hex)")->required();
  sqrt_cmd->add_option("--value", value_text, "the value a")->required();
  sqrt_cmd->add_option("--alg", alg_tag, "auto|direct|tonelli|tonelli-qr|cipolla|peralta1|"
                                         "peralta2|curve-basic|curve-enhanced|curve-tonelli|"
                                         "curve-cipolla");
  sqrt_cmd->add_option("--seed", seed, "seed for the randomized methods");

  fpsqrt::ExperimentPlan plan;
  std::string format = "csv";
  std::string algs;
  auto* bench_cmd = app.add_subcommand("bench", "time every algorithm on one (bits, e) cell");
  bench_cmd->add_option("--bits", plan.bits, "prime size in bits")->required();
  bench_cmd->add_option("--e", plan.e, "2-adic valuation of p - 1")->required();
  bench_cmd->add_option("--trials", plan.trials, "runs per algorithm")->required();
  bench_cmd->add_option("--seed", plan.seed, "experiment seed")->required();
  bench_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_option("--algs", algs, "comma-separated algorithm tags");
  bench_cmd->add_flag("--fresh-primes", plan.fresh_primes, "new prime for every trial");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sqrt_cmd->parsed()) {
      const auto ctx = fpsqrt::decompose_two_adic(fpsqrt::parse_integer(prime_text));
      const fpsqrt::FieldElement a(ctx, fpsqrt::parse_integer(value_text));
      fpsqrt::RandomStream rng(seed);
      const auto outcome = fpsqrt::solve(a, fpsqrt::parse_algorithm(alg_tag), rng);
      std::cout << outcome.root.to_string() << '\n';
      return 0;
    }
    plan.output_format =
        format == "json" ? fpsqrt::OutputFormat::kJson : fpsqrt::OutputFormat::kCsv;
    plan.algorithms = parse_algorithm_list(algs);
    const auto rows = fpsqrt::summarize(fpsqrt::run_trials(plan));
    std::cout << (plan.output_format == fpsqrt::OutputFormat::kJson
                      ? fpsqrt::summary_to_json(rows)
                      : fpsqrt::summary_to_csv(rows));
    return 0;
  } catch (const fpsqrt::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code_for(err);
  }
}
