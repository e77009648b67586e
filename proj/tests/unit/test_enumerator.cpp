#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cubext/automorphisms.hpp"
#include "cubext/enumerator.hpp"
#include "cubext/reduction.hpp"
#include "cubext/ring_tests.hpp"
#include "test_support.hpp"

using namespace cubext;

namespace {

std::vector<FieldRecord> run(int d_K, std::int64_t X, int jobs = 1, EnumerateOptions opts = {}) {
  VectorSink sink;
  enumerate_parallel(field_for(d_K), X, jobs, sink, opts);
  return sink.records;
}

std::string as_text(const std::vector<FieldRecord>& rs) {
  std::string s;
  for (const auto& r : rs) s += to_jsonl(r) + "\n";
  return s;
}

// Two forms are GL2(O_K)-equivalent when some small M sends one to the other.
bool equivalent_by_search(const Order& o, const CubicForm& f, const CubicForm& g, const std::vector<RingElem>& small) {
  for (RingElem A : small)
    for (RingElem B : small)
      for (RingElem C : small)
        for (RingElem D : small) {
          const GL2Mat m{A, B, C, D};
          if (!o.is_unit(det(o, m))) continue;
          if (act_cubic(o, m, f) == g) return true;
        }
  return false;
}

}  // namespace

TEST(Enumerator, TinyBoundsAreEmpty) {
  EXPECT_TRUE(run(-4, 1).empty());
  EXPECT_THROW(run(-4, 0), std::invalid_argument);
}

TEST(Enumerator, RecordsAreConsistent) {
  const Order o(field_for(-4));
  const auto rs = run(-4, 3000);
  ASSERT_FALSE(rs.empty());
  std::set<std::string> forms;
  for (const auto& r : rs) {
    EXPECT_EQ(r.d_K, -4);
    EXPECT_EQ(r.disc, disc_cubic(o, r.form));
    EXPECT_EQ(r.disc_norm, o.norm(r.disc));
    EXPECT_LE(r.disc_norm, 3000);
    const MaximalityReport m = is_maximal(o, r.form);
    EXPECT_TRUE(m.is_irreducible && m.is_maximal) << to_string(o, r.form);
    FormDecider dec(o, r.form);
    EXPECT_NE(is_julia_reduced(o, r.form, dec), Reducedness::No);
    EXPECT_TRUE(forms.insert(to_string(o, r.form)).second);
  }
}

TEST(Enumerator, CountIsMonotoneInX) {
  std::size_t prev = 0;
  for (std::int64_t X : {100, 500, 1000, 2000, 4000}) {
    const std::size_t n = run(-4, X).size();
    EXPECT_GE(n, prev) << X;
    prev = n;
  }
  // A bound cuts the larger list exactly.
  const auto big = run(-4, 4000), small = run(-4, 2000);
  std::size_t under = 0;
  for (const auto& r : big) under += r.disc_norm <= 2000;
  EXPECT_EQ(under, small.size());
}

TEST(Enumerator, JobsDoNotChangeOutput) {
  const auto one = run(-4, 3000, 1), three = run(-4, 3000, 3);
  EXPECT_EQ(as_text(one), as_text(three));
  const auto eis1 = run(-3, 2000, 1), eis4 = run(-3, 2000, 4);
  EXPECT_EQ(as_text(eis1), as_text(eis4));
  VectorSink s;
  EXPECT_THROW(enumerate_parallel(field_for(-4), 100, 0, s), std::invalid_argument);
}

// No two emitted forms with the same discriminant ideal are related by a small matrix.
TEST(Enumerator, EmittedFormsAreInequivalent) {
  const Order o(field_for(-4));
  const auto rs = run(-4, 3000);
  const auto small = o.elements_of_norm_at_most(4);
  std::map<std::int64_t, std::vector<CubicForm>> by_norm;
  for (const auto& r : rs) by_norm[r.disc_norm].push_back(r.form);
  int pairs = 0;
  for (const auto& [n, fs] : by_norm)
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        ++pairs;
        EXPECT_FALSE(equivalent_by_search(o, fs[i], fs[j], small)) << to_string(o, fs[i]) << " ~ " << to_string(o, fs[j]);
      }
  EXPECT_GT(pairs, 0);
}

// Each emitted form is already the minimum of its orbit under its stabilizer and the units.
TEST(Enumerator, EmittedFormsAreOrbitMinima) {
  const Order o(field_for(-4));
  const auto& t = automorphism_table(field_for(-4));
  for (const auto& r : run(-4, 3000)) {
    FormDecider dec(o, r.form);
    const auto stab = stabilizer_of(t, dec);
    EXPECT_EQ(orbit_minimum(o, r.form, stab), r.form) << to_string(o, r.form);
    for (RingElem u : o.units()) EXPECT_LE(compare_forms(o, r.form, scale(o, u, r.form)), 0);
  }
}

TEST(Enumerator, PairingMatchesMirror) {
  const Order o(field_for(-8));
  std::mt19937_64 g(5);
  for (int i = 0; i < 100; ++i) {
    const CubicForm f = cubext::testing::random_form(g, 5);
    EXPECT_EQ(half_count_pairing(o, f), mirror(o, f));
  }
}

TEST(Enumerator, PairConjugatesKeepsTheCount) {
  EnumerateOptions pc;
  pc.pair_conjugates = true;
  EXPECT_EQ(run(-8, 3000).size(), run(-8, 3000, 1, pc).size());
  EXPECT_THROW(run(-4, 100, 1, pc), std::invalid_argument);
  EXPECT_THROW(run(-3, 100, 1, pc), std::invalid_argument);
}

TEST(Enumerator, UncertifiedFieldsNeedOverride) {
  EXPECT_THROW(run(-7, 100), UnsupportedDomain);
  EnumerateOptions ok;
  ok.allow_uncertified_domain = true;
  EXPECT_NO_THROW(run(-7, 500, 1, ok));
}

TEST(Enumerator, StatsAddUp) {
  CountingSink sink;
  const RunStats st = enumerate(field_for(-4), 2000, sink);
  EXPECT_EQ(st.X, 2000);
  EXPECT_EQ(st.emitted, sink.count());
  EXPECT_GE(st.candidates_iterated, st.kept_reduced);
  EXPECT_GE(st.kept_reduced, st.kept_irreducible);
  EXPECT_GE(st.kept_irreducible, st.kept_maximal);
  EXPECT_GE(st.kept_maximal, st.emitted);
  RunStats a = st;
  a += st;
  EXPECT_EQ(a.emitted, 2 * st.emitted);
}
