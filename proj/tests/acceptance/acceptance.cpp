// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Pass --skip-long to leave out the X = 10^6 enumeration.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cubext/automorphisms.hpp"
#include "cubext/enumerator.hpp"
#include "cubext/predict.hpp"
#include "cubext/reduction.hpp"
#include "cubext/ring_tests.hpp"
#include "test_support.hpp"

using namespace cubext;
using cubext::testing::uniform;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned thresholds.
constexpr double kCountSecondsMax = 300;          // 1: "within minutes" per run
constexpr double kLongRunSecondsMax = 1800;       // 2: 30 minutes single-threaded
constexpr double kAppendixSecondsMax = 60;        // 3
constexpr int kCovariancePairs = 10'000;          // 4
constexpr int kSyzygyForms = 100'000;             // 5
constexpr int kDeltaForms = 10'000;               // 5
constexpr double kDeltaRelErr = 0x1p-32;          // 5
constexpr unsigned kDeltaPrec = 128;              // 5
constexpr int kComparePairs = 100'000;            // 6
constexpr int kEqualPairs = 1'200;                // 6: at least 10^3
constexpr int kNearPairs = 800;                   // 6
constexpr unsigned kOracleBits = 2000;            // 6
constexpr double kBoundSlack = 1e-9;              // 7: relative slack on double-evaluated loop bounds
constexpr double kSlopeMax = 1.15;                // 8
constexpr double kSigFigRelErr = 5e-4;            // 9: agreement to 4 significant figures
constexpr double kAsymptoticRelErr = 2e-3;        // 9
constexpr std::int64_t kMillion = 1'000'000;

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << detail << std::endl;
}

void skip(int id, const std::string& title, const std::string& why) {
  std::cout << "SKIP  [" << id << "] " << title << ": " << why << std::endl;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int p = 1) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(p) << v;
  return os.str();
}

struct CountRun {
  std::uint64_t n = 0;
  RunStats stats;
  double seconds = 0;
};

CountRun count(std::int64_t X) {
  CountingSink sink;
  const auto t0 = Clock::now();
  CountRun r;
  r.stats = enumerate(field_for(-4), X, sink);
  r.seconds = seconds_since(t0);
  r.n = sink.count();
  return r;
}

// 1
void counts(std::vector<std::pair<std::int64_t, CountRun>>& runs) {
  const std::pair<std::int64_t, std::uint64_t> want[] = {{10'000, 276}, {40'000, 1339}, {90'000, 3305}};
  bool ok = true;
  std::string detail;
  for (const auto& [X, n] : want) {
    const CountRun r = count(X);
    runs.emplace_back(X, r);
    ok = ok && r.n == n && r.seconds <= kCountSecondsMax;
    detail += "N(" + std::to_string(X) + ")=" + std::to_string(r.n) + " want " + std::to_string(n) + " in " +
              fmt(r.seconds) + "s; ";
  }
  report(1, ok, "count reproduction for Q(i)", detail);
}

// 2
std::optional<CountRun> long_count(bool skip_long) {
  if (skip_long) {
    skip(2, "N(10^6) = 42692", "--skip-long");
    return std::nullopt;
  }
  const CountRun r = count(kMillion);
  report(2, r.n == 42692 && r.seconds <= kLongRunSecondsMax, "N(10^6) = 42692 single-threaded",
         "got " + std::to_string(r.n) + " in " + fmt(r.seconds) + "s (limit " + fmt(kLongRunSecondsMax, 0) + "s)");
  return r;
}

// 3
void appendix() {
  std::ifstream in(std::string(CUBEXT_TEST_DATA_DIR) + "/appendix_a_qi.txt");
  if (!in) {
    report(3, false, "Appendix A regeneration", "fixture missing");
    return;
  }
  const AutTableFile expected = read_table(in);
  const auto t0 = Clock::now();
  const auto got = enumerate_automorphs(field_for(-4), AutRegion::LemmaBox);
  const double s = seconds_since(t0);
  const Order o(field_for(-4));
  const TableDiff d = diff_tables(o, expected.entries, got);
  for (const auto& m : d.missing) std::cout << "      missing " << to_string(o, m) << "\n";
  for (const auto& m : d.extra) std::cout << "      extra " << to_string(o, m) << "\n";
  for (const auto& m : d.wrong_conditions) std::cout << "      conditions differ " << to_string(o, m) << "\n";
  report(3, d.empty() && s <= kAppendixSecondsMax, "Appendix A regeneration",
         std::to_string(got.size()) + " computed vs " + std::to_string(expected.entries.size()) + " listed; " +
             std::to_string(d.missing.size()) + " missing, " + std::to_string(d.extra.size()) + " extra, " +
             std::to_string(d.wrong_conditions.size()) + " with other conditions; " + fmt(s, 2) + "s");
}

// 4
void covariance() {
  std::mt19937_64 g(4);
  int checked = 0, bad = 0, redrawn = 0;
  const auto& fields = cubext::testing::all_fields();
  while (checked < kCovariancePairs) {
    const Order o(field_for(fields[static_cast<std::size_t>(checked) % fields.size()]));
    const CubicForm f = cubext::testing::random_separable_form(o, g, 6);
    const GL2Mat m = cubext::testing::random_gl2(o, g, 2, 1);
    CubicForm mf;
    // Draws whose image leaves the int64 coefficient range are replaced, not counted.
    try {
      mf = act_cubic(o, m, f);
      (void)disc_cubic(o, mf);
    } catch (const ArithmeticOverflow&) {
      ++redrawn;
      continue;
    }
    if (mf.a.is_zero()) continue;
    ++checked;
    const HermitianForm h = julia_covariant<Mpfr>(o, f, 128), hm = julia_covariant<Mpfr>(o, mf, 128);
    if (!cubext::testing::overlaps(act_hermitian(o, m, h), hm)) ++bad;
  }
  report(4, bad == 0, "covariance H(M.F) = M.H(F)",
         std::to_string(checked) + " pairs over all nine fields, " + std::to_string(bad) + " failures, " +
             std::to_string(redrawn) + " out-of-range draws replaced");
}

// 5
void identities() {
  std::mt19937_64 g(5);
  const auto& fields = cubext::testing::all_fields();
  int syz_bad = 0, redrawn = 0;
  for (int i = 0; i < kSyzygyForms;) {
    const Order o(field_for(fields[static_cast<std::size_t>(i) % fields.size()]));
    const CubicForm f = cubext::testing::random_form(g, 20);
    try {
      const Seminvariants s = seminvariants(o, f);
      if (4 * o.pow(s.P_H, 3) != o.sqr(s.U_H) + 27 * o.mul(disc_cubic(o, f), o.sqr(f.a))) ++syz_bad;
      ++i;
    } catch (const ArithmeticOverflow&) {
      ++redrawn;
    }
  }
  int delta_bad = 0, delta_n = 0;
  double worst = 0;
  while (delta_n < kDeltaForms) {
    const Order o(field_for(fields[static_cast<std::size_t>(delta_n) % fields.size()]));
    const CubicForm f = cubext::testing::random_separable_form(o, g, 9);
    try {
      if (!is_irreducible(o, f)) continue;
    } catch (const ArithmeticOverflow&) {
      ++redrawn;
      continue;
    }
    ++delta_n;
    const double e = cubext::testing::delta_relative_error(o, f, julia_covariant<Mpfr>(o, f, kDeltaPrec));
    worst = std::max(worst, e);
    if (!(e < kDeltaRelErr)) ++delta_bad;
  }
  std::ostringstream d;
  d << kSyzygyForms << " syzygies, " << syz_bad << " failures, " << redrawn << " out-of-range draws replaced; " << delta_n << " Delta checks at " << kDeltaPrec
    << " bits, worst relative error " << std::scientific << std::setprecision(2) << worst << ", " << delta_bad
    << " above 2^-32";
  report(5, syz_bad == 0 && delta_bad == 0, "exact identities", d.str());
}

// 6
struct QuadIrr {
  long p, n, d;  // (p + sqrt n) / d, or p / d when n == 0
};

AlgebraicReal make_real(const QuadBasis& b, const QuadIrr& v) {
  auto q = [&](const mpq_class& x) { return FieldElem::from_rational(b, x); };
  if (v.n == 0) return AlgebraicReal::rational(b, mpq_class(v.p, v.d));
  const mpz_class s = sqrt(mpz_class(v.n));
  const KPoly f({q(v.p * v.p - v.n), q(-2 * v.p * v.d), q(v.d * v.d)});
  return AlgebraicReal::rational_root(f, mpq_class(v.p + s, v.d), mpq_class(v.p + s + 1, v.d));
}

Mpfr oracle_value(const QuadIrr& v) {
  Mpfr r(kOracleBits);
  mpfr_set_si(r.get(), v.n, MPFR_RNDN);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  mpfr_add_si(r.get(), r.get(), v.p, MPFR_RNDN);
  mpfr_div_si(r.get(), r.get(), v.d, MPFR_RNDN);
  return r;
}

Cmp oracle_cmp(const QuadIrr& a, const QuadIrr& b) {
  Mpfr diff(kOracleBits);
  mpfr_sub(diff.get(), oracle_value(a).get(), oracle_value(b).get(), MPFR_RNDN);
  if (mpfr_zero_p(diff.get()) || mpfr_get_exp(diff.get()) < -static_cast<long>(kOracleBits) + 100) return Cmp::Equal;
  return mpfr_sgn(diff.get()) < 0 ? Cmp::Less : Cmp::Greater;
}

void comparisons() {
  const Order o(field_for(-4));
  const QuadBasis b = basis_of(o);
  std::mt19937_64 g(6);
  auto non_square = [&](long hi) {
    for (;;) {
      const long n = uniform(g, 2, hi);
      const mpz_class s = sqrt(mpz_class(n));
      if (s * s != n) return n;
    }
  };
  int wrong = 0, false_equal = 0, equal_cases = 0, exhausted = 0;
  for (int i = 0; i < kComparePairs; ++i) {
    QuadIrr x, y;
    if (i < kEqualPairs) {
      // Same number, different polynomial and bracket.
      x = {uniform(g, -30, 30), non_square(400), uniform(g, 1, 9)};
      const long k = uniform(g, 2, 7);
      y = {k * x.p, k * k * x.n, k * x.d};
    } else if (i < kEqualPairs + kNearPairs) {
      // sqrt n against a continued-fraction convergent of it.
      const long n = non_square(60);
      x = {0, n, 1};
      mpz_class h0 = 1, h1 = sqrt(mpz_class(n)), k0 = 0, k1 = 1;
      mpz_class m = 0, dd = 1, a0 = h1, a = a0;
      const int steps = static_cast<int>(uniform(g, 3, 14));
      for (int s = 0; s < steps; ++s) {
        m = dd * a - m;
        dd = (n - m * m) / dd;
        a = (a0 + m) / dd;
        const mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
      }
      if (!h1.fits_slong_p() || !k1.fits_slong_p()) {
        --i;
        continue;
      }
      y = {h1.get_si(), 0, k1.get_si()};
    } else {
      const bool rational = uniform(g, 0, 9) == 0;
      x = {uniform(g, -40, 40), non_square(1000), uniform(g, 1, 15)};
      y = {uniform(g, -40, 40), rational ? 0 : non_square(1000), uniform(g, 1, 15)};
    }
    const Cmp want = oracle_cmp(x, y);
    equal_cases += want == Cmp::Equal;
    Cmp got;
    try {
      got = compare(make_real(b, x), make_real(b, y));
    } catch (const PrecisionExhausted&) {
      ++exhausted;
      ++wrong;
      continue;
    }
    if (got != want) ++wrong;
    if (got == Cmp::Equal && want != Cmp::Equal) ++false_equal;
  }
  report(6, wrong == 0 && false_equal == 0 && equal_cases >= 1000, "certified comparison against a 2000-bit oracle",
         std::to_string(kComparePairs) + " pairs, " + std::to_string(equal_cases) + " exact equalities, " +
             std::to_string(wrong) + " wrong, " + std::to_string(false_equal) + " false Equal, " +
             std::to_string(exhausted) + " precision failures");
}

// 7
void reduced_bounds() {
  const FieldParams& params = field_for(-4);
  const Order o(params);
  const std::int64_t X = 10'000;
  VectorSink sink;
  enumerate(params, X, sink);
  const LoopBounds lb = loop_bounds(params, X);
  const unsigned prec = 128;
  using IM = Interval<Mpfr>;
  const IM tk2 = IM::from_mpq(params.tK_sq, prec), ck = IM::from_mpq(params.c_K, prec);
  // Certified check: fails only when the enclosure shows lhs > rhs for sure.
  auto le = [](const IM& lhs, const IM& rhs) { return !(lhs - rhs).positive(); };
  int bad_h = 0, bad_coeff = 0;
  for (const auto& r : sink.records) {
    const HermitianForm h = julia_covariant<Mpfr>(o, r.form, prec);
    const IM delta = h.Delta();
    if (!le(h.P.sqr() * tk2, delta)) ++bad_h;                    // P <= sqrt(Delta) / t_K
    if (!le(h.Q.norm(), ck * h.P.sqr())) ++bad_h;                // |Q|^2 <= c_K P^2
    if (!le(tk2 * h.P * h.R, (tk2 + ck) * delta)) ++bad_h;       // P R <= (1 + c_K / t_K^2) Delta
    const CubicForm f0 = tau_reduce(o, r.form).F0;
    const double a = std::abs(o.to_complex(f0.a));
    const double cmax = (std::norm(o.to_complex(f0.b)) + lb.cH * lb.X14) / (3 * a);
    const DiscQuadratic q = disc_quadratic(o, f0.a, f0.b, f0.c);
    const double rad = lb.X14 / std::sqrt(std::abs(o.to_complex(q.A)));
    const std::complex<double> d0 = o.to_complex(f0.d);
    const double dist = std::min(std::abs(d0 - q.x1), std::abs(d0 - q.x2));
    const auto box = b0_values(o, f0.a);
    if (a > lb.a0_max * (1 + kBoundSlack)) ++bad_coeff;
    if (std::find(box.begin(), box.end(), f0.b) == box.end()) ++bad_coeff;
    if (std::abs(o.to_complex(f0.c)) > cmax * (1 + kBoundSlack)) ++bad_coeff;
    if (dist > rad * (1 + kBoundSlack)) ++bad_coeff;
  }
  report(7, bad_h == 0 && bad_coeff == 0 && sink.records.size() == 276, "reduced-form bounds at X = 10^4",
         std::to_string(sink.records.size()) + " forms, " + std::to_string(bad_h) + " covariant violations, " +
             std::to_string(bad_coeff) + " coefficient violations");
}

// 8
void scaling(const std::vector<std::pair<std::int64_t, CountRun>>& runs) {
  std::vector<std::pair<double, double>> pts;
  const CountRun r3 = count(1'000);
  pts.emplace_back(3.0, std::log10(static_cast<double>(r3.stats.candidates_iterated)));
  const CountRun* r4 = nullptr;
  for (const auto& [X, r] : runs)
    if (X == 10'000) r4 = &r;
  const CountRun r4own = r4 ? *r4 : count(10'000);
  pts.emplace_back(4.0, std::log10(static_cast<double>(r4own.stats.candidates_iterated)));
  const CountRun r5 = count(100'000);
  pts.emplace_back(5.0, std::log10(static_cast<double>(r5.stats.candidates_iterated)));
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x / 3;
    my += y / 3;
  }
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  const double slope = sxy / sxx;
  report(8, slope <= kSlopeMax, "near-linear scaling",
         "iterations " + std::to_string(r3.stats.candidates_iterated) + ", " +
             std::to_string(r4own.stats.candidates_iterated) + ", " + std::to_string(r5.stats.candidates_iterated) +
             " at X = 10^3, 10^4, 10^5; log-log slope " + fmt(slope, 3) + " (limit " + fmt(kSlopeMax, 2) + ")");
}

// 9
void asymptotics(const std::optional<CountRun>& big) {
  const std::pair<double, double> ref[] = {{1e4, 270.2}, {1e6, 42655.6}, {9e6, 421260}, {1e8, 4990962}};
  bool ok = true;
  std::string detail;
  for (const auto& [X, want] : ref) {
    const double got = predict_count(-4, X).total();
    const double rel = std::fabs(got - want) / want;
    ok = ok && rel < kSigFigRelErr;
    detail += fmt(got, 2) + " vs " + fmt(want, 1) + "; ";
  }
  if (big) {
    const double p = predict_count(-4, 1e6).total();
    const double rel = std::fabs(static_cast<double>(big->n) - p) / p;
    ok = ok && rel < kAsymptoticRelErr;
    detail += "N(10^6) off by " + fmt(100 * rel, 3) + "%";
  } else {
    detail += "N(10^6) comparison skipped";
  }
  report(9, ok, "asymptotic agreement", detail);
}

// 10
void determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("cubext_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto write = [&](int jobs) {
    const fs::path p = dir / ("jobs" + std::to_string(jobs) + ".jsonl");
    std::ofstream os(p, std::ios::binary);
    StreamSink sink(os, RecordFormat::Jsonl);
    enumerate_parallel(field_for(-4), 10'000, jobs, sink);
    sink.finish();
    return p;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = slurp(write(1)), b = slurp(write(8));
  fs::remove_all(dir);
  report(10, a == b && !a.empty(), "jobs = 1 and jobs = 8 give identical files",
         std::to_string(a.size()) + " and " + std::to_string(b.size()) + " bytes, " + (a == b ? "identical" : "different"));
}

}  // namespace

int main(int argc, char** argv) {
  bool skip_long = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--skip-long") == 0) {
      skip_long = true;
    } else {
      std::cerr << "usage: cubext_acceptance [--skip-long]\n";
      return 2;
    }
  }
  // An exception inside one criterion fails that criterion and the run continues.
  auto guarded = [](int id, const char* title, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report(id, false, title, std::string("exception: ") + e.what());
    }
  };
  std::vector<std::pair<std::int64_t, CountRun>> runs;
  guarded(1, "count reproduction for Q(i)", [&] { counts(runs); });
  std::optional<CountRun> big;
  guarded(2, "N(10^6) = 42692 single-threaded", [&] { big = long_count(skip_long); });
  guarded(3, "Appendix A regeneration", appendix);
  guarded(4, "covariance H(M.F) = M.H(F)", covariance);
  guarded(5, "exact identities", identities);
  guarded(6, "certified comparison against a 2000-bit oracle", comparisons);
  guarded(7, "reduced-form bounds at X = 10^4", reduced_bounds);
  guarded(8, "near-linear scaling", [&] { scaling(runs); });
  guarded(9, "asymptotic agreement", [&] { asymptotics(big); });
  guarded(10, "jobs = 1 and jobs = 8 give identical files", determinism);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
