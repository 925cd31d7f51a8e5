#include "fpsqrt/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "fpsqrt/classical.hpp"
#include "fpsqrt/singular_curve.hpp"

namespace fpsqrt {
namespace {

constexpr unsigned kPrimeCandidates = 200000;
constexpr std::uint64_t kPrimeStream = 0xfffffffffffffff0ULL;
// two-sided 95% normal quantile
constexpr double kZ95 = 1.959963984540054;

constexpr const char* kCsvHeader =
    "algorithm,bits,e,trials,success_rate,ci_low,ci_high,mean_ns,median_ns";

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_field(const std::string& text) {
  T out{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParseError, "bad CSV field '" + text + "'");
  }
  return out;
}

}  // namespace

PrimeContextPtr gen_prime_with_valuation(unsigned bits, unsigned e, RandomStream& rng) {
  if (bits < 8 || e < 1 || e + 2 > bits) {
    throw Error(ErrorKind::kBadParameter, "need bits >= 8 and 1 <= e <= bits - 2");
  }
  // p = 2^e + 1 (mod 2^(e+1)) pins the valuation of p - 1 to exactly e.
  const mpz_class low = (mpz_class(1) << e) + 1;
  for (unsigned i = 0; i < kPrimeCandidates; ++i) {
    mpz_class candidate = rng.uniform_bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    candidate >>= e + 1;
    candidate <<= e + 1;
    candidate += low;
    if (mpz_probab_prime_p(candidate.get_mpz_t(), 40) != 0) return decompose_two_adic(candidate);
  }
  throw Error(ErrorKind::kGenerationFailed,
              "no " + std::to_string(bits) + "-bit prime with e = " + std::to_string(e));
}

bool applicable(Algorithm algorithm, unsigned e) {
  switch (algorithm) {
    case Algorithm::kDirect:
      return e <= 2;
    case Algorithm::kPeraltaTwo:
    case Algorithm::kCurveBasic:
    case Algorithm::kCurveEnhanced:
    case Algorithm::kCurveTonelli:
    case Algorithm::kCurveCipolla:
      return e >= 2;
    default:
      return true;
  }
}

SqrtOutcome solve(const FieldElement& a, Algorithm algorithm, RandomStream& rng) {
  require_residue(a);
  if (algorithm == Algorithm::kAuto) {
    if (a.is_zero()) return {a, 0, Algorithm::kDirect};
    algorithm = a.context()->e() <= 2 ? Algorithm::kDirect : kDefaultProbabilistic;
  }
  switch (algorithm) {
    case Algorithm::kDirect: return sqrt_direct(a);
    case Algorithm::kTonelli: return tonelli_shanks(a, rng, NonResidueStrategy::kRandom);
    case Algorithm::kTonelliQr: return tonelli_shanks(a, rng, NonResidueStrategy::kSequential);
    case Algorithm::kCipolla: return cipolla(a, rng);
    case Algorithm::kPeraltaOne: return peralta_one(a, rng);
    case Algorithm::kPeraltaTwo: return peralta_two(a, rng);
    case Algorithm::kCurveBasic: return sqrt_singular_basic(a, rng);
    case Algorithm::kCurveEnhanced: return sqrt_singular_enhanced(a, rng);
    case Algorithm::kCurveTonelli: return sqrt_singular_tonelli(a, rng);
    case Algorithm::kCurveCipolla: return sqrt_singular_cipolla(a, rng);
    case Algorithm::kAuto: break;
  }
  throw Error(ErrorKind::kInternalInvariantViolation, "unhandled algorithm");
}

void ExperimentPlan::validate() const {
  if (bits < 8 || e < 1 || e + 2 > bits || trials < 1) {
    throw Error(ErrorKind::kBadParameter, "plan needs bits >= 8, 1 <= e <= bits - 2, trials >= 1");
  }
}

std::vector<Algorithm> default_bench_algorithms() {
  return {Algorithm::kTonelli,      Algorithm::kTonelliQr,     Algorithm::kCipolla,
          Algorithm::kPeraltaOne,   Algorithm::kPeraltaTwo,    Algorithm::kCurveBasic,
          Algorithm::kCurveEnhanced, Algorithm::kCurveTonelli, Algorithm::kCurveCipolla};
}

std::vector<TrialReport> run_trials(const ExperimentPlan& plan) {
  plan.validate();
  const std::vector<Algorithm> algorithms =
      plan.algorithms.empty() ? default_bench_algorithms() : plan.algorithms;

  PrimeContextPtr cell_prime;
  if (!plan.fresh_primes) {
    RandomStream prime_rng = RandomStream::derive(plan.seed, kPrimeStream);
    cell_prime = gen_prime_with_valuation(plan.bits, plan.e, prime_rng);
  }

  std::vector<TrialReport> reports;
  reports.reserve(algorithms.size() * plan.trials);
  for (const Algorithm algorithm : algorithms) {
    for (std::size_t i = 0; i < plan.trials; ++i) {
      PrimeContextPtr ctx = cell_prime;
      if (plan.fresh_primes) {
        RandomStream prime_rng = RandomStream::derive(plan.seed ^ kPrimeStream, i);
        ctx = gen_prime_with_valuation(plan.bits, plan.e, prime_rng);
      }
      RandomStream rng = RandomStream::derive(plan.seed, i);
      const FieldElement a = sample_field_element(ctx, rng, true).square();

      const auto start = std::chrono::steady_clock::now();
      const SqrtOutcome outcome = solve(a, algorithm, rng);
      const auto stop = std::chrono::steady_clock::now();

      if (outcome.root.square() != a) {
        throw Error(ErrorKind::kInternalInvariantViolation,
                    to_string(algorithm) + " returned a wrong root for " + a.to_string());
      }
      TrialReport report;
      report.algorithm = algorithm;
      report.retries = outcome.retries;
      report.success_first_try = outcome.retries == 0;
      report.elapsed_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
      report.prime_bits = static_cast<unsigned>(ctx->bits());
      report.e = ctx->e();
      report.prime = ctx->p().get_str();
      report.value = a.to_string();
      report.root = outcome.root.to_string();
      report.verified = true;
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

std::vector<SummaryRow> summarize(const std::vector<TrialReport>& reports) {
  if (reports.empty()) throw Error(ErrorKind::kEmptyInput, "no trial reports");

  using Key = std::tuple<Algorithm, unsigned, unsigned>;
  std::vector<Key> order;
  std::map<Key, std::vector<const TrialReport*>> groups;
  for (const auto& r : reports) {
    const Key key{r.algorithm, r.prime_bits, r.e};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  std::vector<SummaryRow> rows;
  for (const Key& key : order) {
    const auto& group = groups.at(key);
    const double n = static_cast<double>(group.size());
    std::vector<std::int64_t> times;
    double successes = 0;
    double total_ns = 0;
    for (const auto* r : group) {
      times.push_back(r->elapsed_ns);
      total_ns += static_cast<double>(r->elapsed_ns);
      if (r->success_first_try) successes += 1;
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    const double median = times.size() % 2 == 1
                              ? static_cast<double>(times[mid])
                              : (static_cast<double>(times[mid - 1]) + times[mid]) / 2.0;

    const double rate = successes / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (rate + z2 / (2 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(rate * (1 - rate) / n + z2 / (4 * n * n));

    SummaryRow row;
    row.algorithm = to_string(std::get<0>(key));
    row.bits = std::get<1>(key);
    row.e = std::get<2>(key);
    row.trials = group.size();
    row.success_rate = rate;
    row.ci_low = std::clamp(std::min(center - half, rate), 0.0, 1.0);
    row.ci_high = std::clamp(std::max(center + half, rate), 0.0, 1.0);
    row.mean_ns = total_ns / n;
    row.median_ns = median;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.bits << ',' << r.e << ',' << r.trials << ','
        << format_double(r.success_rate) << ',' << format_double(r.ci_low) << ','
        << format_double(r.ci_high) << ',' << format_double(r.mean_ns) << ','
        << format_double(r.median_ns) << '\n';
  }
  return out.str();
}

std::vector<SummaryRow> summary_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorKind::kParseError, "missing or unexpected CSV header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
    if (fields.size() != 9) throw Error(ErrorKind::kParseError, "expected 9 columns: " + line);
    SummaryRow r;
    r.algorithm = fields[0];
    r.bits = parse_field<unsigned>(fields[1]);
    r.e = parse_field<unsigned>(fields[2]);
    r.trials = parse_field<std::size_t>(fields[3]);
    r.success_rate = parse_field<double>(fields[4]);
    r.ci_low = parse_field<double>(fields[5]);
    r.ci_high = parse_field<double>(fields[6]);
    r.mean_ns = parse_field<double>(fields[7]);
    r.median_ns = parse_field<double>(fields[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string summary_to_json(const std::vector<SummaryRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"algorithm", r.algorithm},
                   {"bits", r.bits},
                   {"e", r.e},
                   {"trials", r.trials},
                   {"success_rate", r.success_rate},
                   {"ci_low", r.ci_low},
                   {"ci_high", r.ci_high},
                   {"mean_ns", r.mean_ns},
                   {"median_ns", r.median_ns}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace fpsqrt
