// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance                 run all eight
//   acceptance --criterion N   run only N
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fpsqrt/classical.hpp"
#include "fpsqrt/harness.hpp"
#include "fpsqrt/quad_ring.hpp"
#include "fpsqrt/singular_curve.hpp"
#include "oracles.hpp"

using namespace fpsqrt;

namespace {

// Collects sub-check results; the criterion passes when none failed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failed_;
      if (failed_ <= 20) std::cout << "  fail: " << what << '\n';
    }
    ++total_;
  }
  // A named sub-result that is always printed.
  void report(bool ok, const std::string& what) {
    std::cout << "  " << (ok ? "ok  " : "FAIL") << "  " << what << '\n';
    if (!ok) ++failed_;
    ++total_;
  }
  bool passed() const { return failed_ == 0; }
  std::size_t total() const { return total_; }
  std::size_t failed() const { return failed_; }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

PrimeContextPtr ctx_of(long p) { return decompose_two_adic(mpz_class(p)); }

std::vector<long> primes_with_valuation(unsigned e, std::uint64_t limit) {
  std::vector<long> out;
  for (auto p : testing::primes_up_to(limit)) {
    if (p > 3 && testing::two_adic_valuation(p - 1) == e) out.push_back(static_cast<long>(p));
  }
  return out;
}

bool same_point(const CurvePoint& P, long x, long y) {
  if (P.is_infinity()) return false;
  const CurvePoint n = normalize(P);
  return n.as_affine().x.value() == x && n.as_affine().y.value() == y;
}

// 1 ----------------------------------------------------------------------

void golden_example(Checks& c) {
  const auto ctx = ctx_of(2017);
  c.report(ctx->e() == 5 && ctx->m() == 63, "2017 - 1 = 2^5 * 63");
  const CurveParams curve = make_curve(FieldElement(ctx, 2L));
  const auto pt = [&](long x, long y) {
    return CurvePoint::affine(FieldElement(ctx, x), FieldElement(ctx, y));
  };
  for (auto coords : {Coordinates::kAffine, Coordinates::kProjective}) {
    const std::string tag = coords == Coordinates::kAffine ? " [affine]" : " [projective]";
    c.report(same_point(scalar_mul(63, pt(1, 3), curve, coords), 2, 90), "63*(1,3) = (2,90)" + tag);
    c.report(same_point(scalar_mul(1008, pt(289, 913), curve, coords), 0, 0),
             "1008*(289,913) = (0,0)" + tag);
    c.report(same_point(scalar_mul(63, pt(289, 913), curve, coords), 138, 258),
             "63*(289,913) = (138,258)" + tag);
    c.report(same_point(scalar_mul(8, pt(138, 258), curve, coords), 2, 1927),
             "8*(138,258) = (2,1927)" + tag);
  }

  const CurvePoint P = point_from_parameter(FieldElement(ctx, 611L), curve);
  bool chain = same_point(P, 176, 1857);
  CurvePoint Q = scalar_mul(63, P, curve);
  const long expected[][2] = {{1379, 1791}, {1553, 936}, {96, 384}, {2, 90}};
  for (const auto& xy : expected) {
    chain = chain && same_point(Q, xy[0], xy[1]);
    Q = add_projective(Q, Q, curve);
  }
  chain = chain && same_point(Q, 0, 0);
  c.report(chain, "t=611: (176,1857) -> (1379,1791) -> (1553,936) -> (96,384) -> (2,90)");

  const auto roots = brute_force_sqrt(FieldElement(ctx, 2L));
  c.report(roots.size() == 2 && roots[0].value() == 986 && roots[1].value() == 1031, "roots of 2 are {986, 1031}");

  const FieldElement a(ctx, 2L);
  bool all = true;
  for (int i = 0; i <= static_cast<int>(Algorithm::kCurveCipolla); ++i) {
    const auto alg = static_cast<Algorithm>(i);
    if (!applicable(alg, ctx->e())) continue;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RandomStream rng(seed);
      all = all && solve(a, alg, rng).root.value() == 986;
    }
  }
  c.report(all, "every applicable solver returns 986 (20 seeds each)");
}

// 2 ----------------------------------------------------------------------

void oracle_sweep(Checks& c) {
  RandomStream rng(2);
  std::size_t instances = 0;
  std::size_t nonresidues = 0;
  for (auto pu : testing::primes_up_to(2000)) {
    if (pu < 5) continue;
    const auto ctx = ctx_of(static_cast<long>(pu));
    std::vector<Algorithm> algs;
    for (int i = 1; i <= static_cast<int>(Algorithm::kCurveCipolla); ++i) {
      if (applicable(static_cast<Algorithm>(i), ctx->e())) algs.push_back(static_cast<Algorithm>(i));
    }
    for (unsigned long av = 0; av < pu; ++av) {
      const FieldElement a(ctx, static_cast<long>(av));
      const auto roots = brute_force_sqrt(a);
      for (Algorithm alg : algs) {
        try {
          const FieldElement r = solve(a, alg, rng).root;
          c.expect(!roots.empty() && (r == roots.front() || r == roots.back()) &&
                       r == canonical(r),
                   to_string(alg) + " p=" + std::to_string(pu) + " a=" + std::to_string(av));
          ++instances;
        } catch (const Error& err) {
          const bool ok = roots.empty() && err.kind() == ErrorKind::kNonResidue;
          c.expect(ok, to_string(alg) + " p=" + std::to_string(pu) + " a=" +
                           std::to_string(av) + ": " + err.what());
          if (ok) ++nonresidues;
        }
      }
    }
  }
  std::cout << "  " << instances << " residue instances solved, " << nonresidues
            << " non-residue rejections\n";
}

// 3 ----------------------------------------------------------------------

constexpr std::size_t kRateTrials = 10000;

// Fraction of first-try successes of `alg` over kRateTrials random residues.
double first_try_rate(long p, Algorithm alg, std::uint64_t seed) {
  const auto ctx = ctx_of(p);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < kRateTrials; ++i) {
    RandomStream rng = RandomStream::derive(seed, i);
    const FieldElement a = sample_field_element(ctx, rng, true).square();
    if (solve(a, alg, rng).retries == 0) ++hits;
  }
  return static_cast<double>(hits) / kRateTrials;
}

void rate_line(Checks& c, const std::string& label, double observed, double expected) {
  const bool ok = testing::within_sigma(observed, expected, kRateTrials, 3);
  c.report(ok, label + ": observed " + fmt(observed) + ", expected " + fmt(expected) +
                   " +- " + fmt(3 * std::sqrt(expected * (1 - expected) / kRateTrials)));
}

void probability_suite(Checks& c) {
  const long p3 = 9817;  // e = 3
  const long p5 = 9697;  // e = 5
  const long p2 = 9941;  // e = 2

  rate_line(c, "curve-basic    p=9817 e=3", first_try_rate(p3, Algorithm::kCurveBasic, 31),
            1 - 1.0 / 4);
  rate_line(c, "curve-basic    p=9697 e=5", first_try_rate(p5, Algorithm::kCurveBasic, 32),
            1 - 1.0 / 16);
  rate_line(c, "curve-enhanced p=9817 e=3", first_try_rate(p3, Algorithm::kCurveEnhanced, 33),
            1 - 1.0 / 8);
  rate_line(c, "curve-enhanced p=9697 e=5", first_try_rate(p5, Algorithm::kCurveEnhanced, 34),
            1 - 1.0 / 32);
  const double e2 = first_try_rate(p2, Algorithm::kCurveEnhanced, 35);
  c.report(e2 >= 0.70, "curve-enhanced p=9941 e=2: observed " + fmt(e2) + ", required >= 0.70");
  rate_line(c, "curve-tonelli  p=9817 e=3", first_try_rate(p3, Algorithm::kCurveTonelli, 36), 0.5);
  rate_line(c, "curve-tonelli  p=9697 e=5", first_try_rate(p5, Algorithm::kCurveTonelli, 37), 0.5);
  rate_line(c, "tonelli        p=9697 e=5", first_try_rate(p5, Algorithm::kTonelli, 38), 0.5);
}

// 4 ----------------------------------------------------------------------

void guaranteed_success(Checks& c) {
  std::vector<long> primes = primes_with_valuation(3, 10000);
  const auto e5 = primes_with_valuation(5, 10000);
  primes.insert(primes.end(), e5.begin(), e5.end());

  RandomStream rng(4);
  std::size_t runs = 0;
  std::size_t t_draws = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const auto ctx = ctx_of(primes[i % primes.size()]);
    const FieldElement a = sample_field_element(ctx, rng, true).square();
    const CurveParams curve = make_curve(a);
    FieldElement t = sample_field_element(ctx, rng, true);
    ++t_draws;
    while (legendre(t.square() + a) != -1) {
      t = sample_field_element(ctx, rng, true);
      ++t_draws;
    }
    const CurvePoint P = point_from_parameter(t, curve);
    const CurvePoint Q = scalar_mul(ctx->m(), P, curve);
    const auto root = enhanced_trial(P, curve);
    const std::string where = "p=" + ctx->p().get_str() + " a=" + a.to_string() +
                              " t=" + t.to_string();
    c.expect(!Q.is_infinity() && !same_point(Q, 0, 0), "mP trivial at " + where);
    c.expect(root.has_value() && root->square() == a, "extraction resampled at " + where);
    RandomStream solver_rng = RandomStream::derive(4, i);
    c.expect(sqrt_singular_cipolla(a, solver_rng).root.square() == a, "solver at " + where);
    ++runs;
  }
  std::cout << "  " << runs << " runs over " << primes.size() << " primes, " << t_draws
            << " t draws\n";
}

// 5 ----------------------------------------------------------------------

void group_law_consistency(Checks& c) {
  RandomStream prng(5);
  const auto ctx = gen_prime_with_valuation(256, 4, prng);
  RandomStream rng(55);
  const CurveParams curve = make_curve(sample_field_element(ctx, rng, true).square());
  const auto random_t = [&] {
    for (;;) {
      FieldElement t = sample_field_element(ctx, rng, true);
      if (!(t.square() + curve.a()).is_zero()) return t;
    }
  };
  std::size_t agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const CurvePoint P = point_from_parameter(random_t(), curve);
    const mpz_class k = rng.uniform_below(ctx->p());
    const CurvePoint A = scalar_mul(k, P, curve, Coordinates::kAffine);
    const CurvePoint B = scalar_mul(k, P, curve, Coordinates::kProjective);
    const bool ok = A == B && is_on_curve(B, curve);
    c.expect(ok, "scalar_mul disagrees for k=" + k.get_str());
    if (ok) ++agree;
  }
  c.report(agree == 1000, "affine == projective scalar_mul on " + std::to_string(agree) +
                              "/1000 random (k, P), 256-bit p");
  std::size_t doubled = 0;
  for (int i = 0; i < 1000; ++i) {
    const FieldElement t = random_t();
    const CurvePoint P = point_from_parameter(t, curve);
    const CurvePoint D = double_via_parameter(t, curve);
    const bool ok = D == add_affine(P, P, curve) && D == add_projective(P, P, curve);
    c.expect(ok, "closed-form doubling differs at t=" + t.to_string());
    if (ok) ++doubled;
  }
  c.report(doubled == 1000,
           "closed-form doubling matches generic doubling on " + std::to_string(doubled) + "/1000 t");
}

// 6 ----------------------------------------------------------------------

void structure_checks(Checks& c) {
  std::size_t curves = 0;
  std::size_t order_mismatch_3mod4 = 0;
  std::size_t order_ok_1mod4 = 0;
  std::size_t curves_1mod4 = 0;
  for (auto pu : testing::primes_up_to(200)) {
    if (pu < 5) continue;  // the shifted model needs 3 invertible
    const auto ctx = ctx_of(static_cast<long>(pu));
    // y values with y^2 = r, plain integers
    std::vector<std::vector<std::uint64_t>> sqrt_of(pu);
    for (std::uint64_t y = 0; y < pu; ++y) sqrt_of[y * y % pu].push_back(y);

    for (std::uint64_t av = 1; av < pu; ++av) {
      if (sqrt_of[av].empty()) continue;
      const FieldElement a(ctx, static_cast<long>(av));
      const CurveParams curve = make_curve(a);
      std::size_t count = 1;  // infinity
      std::size_t order2 = 0;
      std::size_t order4 = 0;
      bool order4_at_a = true;
      for (std::uint64_t x = 0; x < pu; ++x) {
        const std::uint64_t xa = (x + av) % pu;
        const std::uint64_t rhs = x * xa % pu * xa % pu;
        for (std::uint64_t y : sqrt_of[rhs]) {
          const CurvePoint P = CurvePoint::affine(FieldElement(ctx, static_cast<long>(x)),
                                                  FieldElement(ctx, static_cast<long>(y)));
          if (!is_on_curve(P, curve)) continue;  // the node
          ++count;
          const CurvePoint P2 = add_affine(P, P, curve);
          if (P2.is_infinity()) {
            ++order2;
            continue;
          }
          if (add_affine(P2, P2, curve).is_infinity()) {
            ++order4;
            order4_at_a = order4_at_a && x == av;
          }
        }
      }
      ++curves;
      const std::string where = "p=" + std::to_string(pu) + " a=" + std::to_string(av);
      c.expect(order2 == 1, "order-2 points != 1 at " + where);
      c.expect(order4 == 2 && order4_at_a, "order-4 points wrong at " + where);
      c.expect(count == pu - 1, "group order " + std::to_string(count) + " != p-1 at " + where);
      if (pu % 4 == 1) {
        ++curves_1mod4;
        if (count == pu - 1) ++order_ok_1mod4;
      } else if (count == pu + 1) {
        ++order_mismatch_3mod4;
      }
    }
  }
  std::cout << "  " << curves << " curves enumerated\n";
  c.report(order_ok_1mod4 == curves_1mod4,
           "p = 1 mod 4: order p-1 on " + std::to_string(order_ok_1mod4) + "/" +
               std::to_string(curves_1mod4) + " curves");
  c.report(order_mismatch_3mod4 == 0,
           "p = 3 mod 4: order p-1 expected, p+1 found on " +
               std::to_string(order_mismatch_3mod4) + " curves (-a is a non-residue there)");
}

// 7 ----------------------------------------------------------------------

void scale_check(Checks& c) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned cells[][2] = {{256, 4}, {512, 5}, {1024, 8}};
  std::vector<SummaryRow> all;
  for (const auto& cell : cells) {
    ExperimentPlan plan;
    plan.bits = cell[0];
    plan.e = cell[1];
    plan.trials = 1000;
    plan.seed = 7;
    const auto cell_start = std::chrono::steady_clock::now();
    const auto reports = run_trials(plan);
    const auto rows = summarize(reports);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - cell_start).count();
    std::cout << "  cell " << cell[0] << "-bit e=" << cell[1] << ": " << fmt(secs, 1) << " s\n";
    bool verified = true;
    for (const auto& r : reports) verified = verified && r.verified;
    c.expect(verified, "unverified report in cell");
    c.expect(rows.size() == default_bench_algorithms().size(), "missing algorithms in cell");
    for (const auto& r : rows) {
      c.expect(r.trials == 1000 && r.bits == cell[0] && r.e == cell[1], "bad row " + r.algorithm);
      c.expect(r.ci_low <= r.success_rate && r.success_rate <= r.ci_high, "bad CI " + r.algorithm);
    }
    all.insert(all.end(), rows.begin(), rows.end());
  }
  const std::string csv = summary_to_csv(all);
  std::cout << csv;
  c.report(summary_from_csv(csv) == all, "summary CSV is well formed and round-trips");
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.report(total < 600, "total wall time " + fmt(total, 1) + " s < 600 s");
}

// 8 ----------------------------------------------------------------------

void ring_laws(Checks& c) {
  RandomStream prng(8);
  const auto ctx = gen_prime_with_valuation(128, 3, prng);
  RandomStream rng(88);
  FieldElement d = sample_field_element(ctx, rng, true);
  while (legendre(d) != -1) d = sample_field_element(ctx, rng, true);
  const RingPtr field_ring = RingDescriptor::create(d);
  const auto random_elem = [&](const RingPtr& ring) {
    return RingElement(ring, sample_field_element(ctx, rng, false),
                       sample_field_element(ctx, rng, false));
  };
  std::size_t frob = 0;
  for (int i = 0; i < 1000; ++i) {
    const RingElement x = random_elem(field_ring);
    const bool ok = ring_pow(x, ctx->p()) == conjugate(x);
    c.expect(ok, "Frobenius differs at " + x.to_string());
    if (ok) ++frob;
  }
  c.report(frob == 1000, "x^p = conjugate(x) on " + std::to_string(frob) +
                             "/1000 elements, 128-bit p, non-residue d");
  std::size_t mult = 0;
  for (int i = 0; i < 1000; ++i) {
    // alternate between the field and a ring with a residue d
    const RingPtr ring =
        i % 2 == 0 ? field_ring : RingDescriptor::create(sample_field_element(ctx, rng, true).square());
    const RingElement x = random_elem(ring);
    const RingElement y = random_elem(ring);
    const bool ok = norm(ring_mul(x, y)) == norm(x) * norm(y);
    c.expect(ok, "norm not multiplicative at " + x.to_string());
    if (ok) ++mult;
  }
  c.report(mult == 1000, "N(xy) = N(x)N(y) on " + std::to_string(mult) + "/1000 pairs");
}

struct Criterion {
  const char* name;
  std::function<void(Checks&)> run;
};

const Criterion kCriteria[] = {
    {"golden example p=2017 a=2", golden_example},
    {"oracle sweep 5 <= p <= 2000", oracle_sweep},
    {"probability suite", probability_suite},
    {"curve-cipolla never resamples after t", guaranteed_success},
    {"affine/projective group law agreement", group_law_consistency},
    {"structure checks p <= 200", structure_checks},
    {"scale bench 256/512/1024-bit", scale_check},
    {"extension ring laws at 128 bits", ring_laws},
};

bool run_one(int n) {
  const Criterion& crit = kCriteria[n - 1];
  std::cout << "criterion " << n << ": " << crit.name << '\n';
  Checks checks;
  const auto start = std::chrono::steady_clock::now();
  try {
    crit.run(checks);
  } catch (const std::exception& ex) {
    checks.report(false, std::string("unexpected exception: ") + ex.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (checks.passed() ? "PASS" : "FAIL") << ' ' << n << ' ' << crit.name << " ("
            << checks.total() - checks.failed() << '/' << checks.total() << " checks, "
            << fmt(secs, 2) << " s)\n";
  return checks.passed();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 64;
    }
  }
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8};
  bool ok = true;
  for (int n : which) {
    if (n < 1 || n > 8) {
      std::cerr << "criterion must be 1..8\n";
      return 64;
    }
    ok = run_one(n) && ok;
  }
  return ok ? 0 : 1;
}
