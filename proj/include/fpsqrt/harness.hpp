#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpsqrt/field.hpp"

namespace fpsqrt {

/// Random prime with exactly `bits` bits and p - 1 = 2^e * m, m odd.
/// Requires bits >= 8 and 1 <= e <= bits - 2; throws kGenerationFailed if no
/// prime turns up within a bounded number of candidates.
PrimeContextPtr gen_prime_with_valuation(unsigned bits, unsigned e, RandomStream& rng);

/// Algorithm used by solve() in auto mode once e >= 3.
inline constexpr Algorithm kDefaultProbabilistic = Algorithm::kCurveEnhanced;

/// Routes to the named solver. Auto picks the closed form for e <= 2 and
/// kDefaultProbabilistic otherwise. Non-residues are rejected up front.
SqrtOutcome solve(const FieldElement& a, Algorithm algorithm, RandomStream& rng);

/// True when `algorithm` can run at this valuation (curve methods and
/// Peralta II need e >= 2, the closed forms e <= 2).
bool applicable(Algorithm algorithm, unsigned e);

enum class OutputFormat { kCsv, kJson };

struct ExperimentPlan {
  unsigned bits = 256;
  unsigned e = 4;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms;
  OutputFormat output_format = OutputFormat::kCsv;
  /// Draw a new prime for every trial instead of one per cell.
  bool fresh_primes = false;

  /// Throws kBadParameter when bits < 8, e < 1, e > bits - 2 or trials < 1.
  void validate() const;
};

/// The algorithms benchmarked when a plan names none.
std::vector<Algorithm> default_bench_algorithms();

struct TrialReport {
  Algorithm algorithm = Algorithm::kAuto;
  bool success_first_try = false;
  unsigned retries = 0;
  std::int64_t elapsed_ns = 0;
  unsigned prime_bits = 0;
  unsigned e = 0;
  /// Decimal prime, input and canonical root, kept for replay checks.
  std::string prime;
  std::string value;
  std::string root;
  /// root^2 = value was re-checked by the harness.
  bool verified = false;
};

/// Runs plan.trials instances per algorithm. Trial i draws its residue and its
/// solver randomness from RandomStream::derive(seed, i), so every algorithm
/// sees the same inputs and a rerun reproduces everything but elapsed_ns.
std::vector<TrialReport> run_trials(const ExperimentPlan& plan);

struct SummaryRow {
  std::string algorithm;
  unsigned bits = 0;
  unsigned e = 0;
  std::size_t trials = 0;
  double success_rate = 0;
  double ci_low = 0;
  double ci_high = 0;
  double mean_ns = 0;
  double median_ns = 0;

  bool operator==(const SummaryRow&) const = default;
};

/// One row per (algorithm, bits, e) in first-seen order, with a Wilson 95%
/// interval on the first-try success rate. Throws kEmptyInput.
std::vector<SummaryRow> summarize(const std::vector<TrialReport>& reports);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> summary_from_csv(const std::string& csv);
std::string summary_to_json(const std::vector<SummaryRow>& rows);

}  // namespace fpsqrt
