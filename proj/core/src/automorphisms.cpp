#include "cubext/automorphisms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

namespace cubext {

const char* to_string(AutRegion r) {
  return r == AutRegion::ReducedClosure ? "reduced_closure" : "lemma_box";
}

AutRegion parse_region(const std::string& s) {
  if (s == "reduced_closure") return AutRegion::ReducedClosure;
  if (s == "lemma_box") return AutRegion::LemmaBox;
  throw std::invalid_argument("unknown region '" + s + "'");
}

KMatrix build_W(const Order& o, const GL2Mat& m) {
  const QuadBasis b = basis_of(o);
  auto F = [&](RingElem e) { return FieldElem::from_ring(b, e); };
  auto cj = [&](RingElem e) { return o.conj(e); };
  const RingElem A = m.A, B = m.B, C = m.C, D = m.D;
  return {
      {F(RingElem(o.norm(A)) - 1), F(o.mul(cj(A), C)), F(o.mul(A, cj(C))), F(RingElem(o.norm(C)))},
      {F(o.mul(cj(A), B)), F(o.mul(cj(A), D) - 1), F(o.mul(B, cj(C))), F(o.mul(cj(C), D))},
      {F(o.mul(A, cj(B))), F(o.mul(C, cj(B))), F(o.mul(A, cj(D)) - 1), F(o.mul(C, cj(D)))},
      {F(RingElem(o.norm(B))), F(o.mul(cj(B), D)), F(o.mul(B, cj(D))), F(RingElem(o.norm(D)) - 1)},
  };
}

namespace {

// Coordinates of e in the basis {1, sqrt(-D)}.
std::pair<mpq_class, mpq_class> sqrt_coords(const Order& o, const FieldElem& e) {
  mpq_class x(e.x(), e.den()), y(e.y(), e.den());
  x.canonicalize();
  y.canonicalize();
  if (o.trace() == 0) return {x, y};
  // w = (1 + sqrt(-D)) / 2
  mpq_class re = x + y / 2, im = y / 2;
  return {re, im};
}

}  // namespace

QMatrix real_conditions(const Order& o, const KMatrix& W) {
  const FieldElem s = FieldElem::from_ring(basis_of(o), o.sqrt_minus_D());
  QMatrix rows;
  for (const auto& w : W) {
    const FieldElem coef[4] = {w[0], w[1] + w[2], s * (w[1] - w[2]), w[3]};
    std::vector<mpq_class> r1(4), r2(4);
    for (int j = 0; j < 4; ++j) {
      auto [a, b] = sqrt_coords(o, coef[j]);
      r1[j] = a;
      r2[j] = b;
    }
    rows.push_back(r1);
    rows.push_back(r2);
  }
  return rref(rows);
}

namespace {

const std::vector<LinearPredicate>& region_walls(const FieldParams& p, AutRegion region) {
  static const std::vector<LinearPredicate> lemma{
      {{1, 2, 0, 0}}, {{1, -2, 0, 0}}, {{0, 0, 1, 0}}, {{1, 0, -2, 0}}, {{-1, 0, 0, 1}}};
  return region == AutRegion::LemmaBox ? lemma : domain_walls(p);
}

mpq_class dot(const LinearPredicate& w, const std::vector<mpq_class>& v) {
  mpq_class s = 0;
  for (int i = 0; i < 4; ++i) s += mpq_class(static_cast<long>(w.c[i])) * v[i];
  return s;
}

}  // namespace

bool locus_meets_region(const FieldParams& params, const QMatrix& conditions, AutRegion region) {
  if (conditions.empty()) return true;
  const auto basis = kernel_over_Q(conditions);
  if (basis.empty()) return false;
  if (basis.size() > 2) throw std::logic_error("stabilized locus of unexpected dimension");

  // Normalize P = 1: the locus is x0 + t*d (d = 0 when the kernel is a line through the origin).
  int ia = -1;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i][0] != 0) ia = static_cast<int>(i);
  if (ia < 0) return false;
  std::vector<mpq_class> x0(4), d(4, mpq_class(0));
  for (int j = 0; j < 4; ++j) x0[j] = basis[ia][j] / basis[ia][0];
  if (basis.size() == 2) {
    const auto& kb = basis[1 - ia];
    for (int j = 0; j < 4; ++j) d[j] = kb[j] - kb[0] * x0[j];
  }

  std::optional<mpq_class> lo, hi;
  for (const auto& w : region_walls(params, region)) {
    const mpq_class c0 = dot(w, x0), c1 = dot(w, d);
    if (c1 == 0) {
      if (c0 < 0) return false;
      continue;
    }
    const mpq_class t = -c0 / c1;
    if (c1 > 0) {
      if (!lo || t > *lo) lo = t;
    } else {
      if (!hi || t < *hi) hi = t;
    }
  }
  if (lo && hi && *lo > *hi) return false;

  // Delta at P = 1: R - u^2 - D v^2 along the line.
  const mpq_class Dq(params.D);
  const mpq_class g0 = x0[3] - x0[1] * x0[1] - Dq * x0[2] * x0[2];
  const mpq_class g1 = d[3] - 2 * x0[1] * d[1] - 2 * Dq * x0[2] * d[2];
  const mpq_class g2 = -(d[1] * d[1]) - Dq * d[2] * d[2];
  auto g = [&](const mpq_class& t) -> mpq_class { return g0 + g1 * t + g2 * t * t; };
  if (g2 < 0) {
    mpq_class t = -g1 / (2 * g2);
    if (lo && t < *lo) t = *lo;
    if (hi && t > *hi) t = *hi;
    return g(t) > 0;
  }
  if (g1 > 0) return !hi || g(*hi) > 0;
  if (g1 < 0) return !lo || g(*lo) > 0;
  return g0 > 0;
}

GL2Mat canonical_mod_units(const Order& o, const GL2Mat& m) {
  GL2Mat best = m;
  bool first = true;
  for (RingElem u : o.units()) {
    const GL2Mat c{o.mul(u, m.A), o.mul(u, m.B), o.mul(u, m.C), o.mul(u, m.D)};
    auto cmp = [&](const GL2Mat& x, const GL2Mat& y) {
      if (int r = o.compare(x.A, y.A)) return r;
      if (int r = o.compare(x.B, y.B)) return r;
      if (int r = o.compare(x.C, y.C)) return r;
      return o.compare(x.D, y.D);
    };
    if (first || cmp(c, best) < 0) best = c;
    first = false;
  }
  return best;
}

namespace {

int compare_mats(const Order& o, const GL2Mat& x, const GL2Mat& y) {
  if (int r = o.compare(x.A, y.A)) return r;
  if (int r = o.compare(x.B, y.B)) return r;
  if (int r = o.compare(x.C, y.C)) return r;
  return o.compare(x.D, y.D);
}

}  // namespace

std::vector<AutoMatrix> enumerate_automorphs(const FieldParams& params, AutRegion region) {
  const Order o(params);
  const mpq_class kappa = 1 + params.c_K / params.tK_sq;
  const auto nAD = static_cast<std::int64_t>(mpz_class(kappa.get_num() / kappa.get_den()).get_si());
  const mpq_class invt = 1 / params.tK_sq;
  const auto nC = static_cast<std::int64_t>(mpz_class(invt.get_num() / invt.get_den()).get_si());
  // |B| <= 2 sqrt(c_K) when C = 0, else |B| <= kappa + 1.
  const mpq_class b0sq = 4 * params.c_K;
  const auto nB0 = static_cast<std::int64_t>(mpz_class(b0sq.get_num() / b0sq.get_den()).get_si());
  const mpq_class bsq = (kappa + 1) * (kappa + 1);
  const auto nB = static_cast<std::int64_t>(mpz_class(bsq.get_num() / bsq.get_den()).get_si());

  const auto units_all = o.units();
  const auto Cs = o.elements_of_norm_at_most(nC);
  const auto B0s = o.elements_of_norm_at_most(nB0);

  std::map<std::vector<std::int64_t>, AutoMatrix> found;
  auto consider = [&](const GL2Mat& m) {
    if (!o.is_unit(det(o, m))) return;
    const GL2Mat c = canonical_mod_units(o, m);
    const std::vector<std::int64_t> key{c.A.x, c.A.y, c.B.x, c.B.y, c.C.x, c.C.y, c.D.x, c.D.y};
    if (found.count(key)) return;
    const KMatrix W = build_W(o, c);
    const auto r = static_cast<int>(rank_over_K(W));
    if (r == 1 || r == 4) return;
    AutoMatrix am{c, {}, r};
    if (r > 0) {
      am.conditions = real_conditions(o, W);
      if (!locus_meets_region(params, am.conditions, region)) return;
    }
    found.emplace(key, std::move(am));
  };

  // C = 0: A and D are units.
  for (RingElem A : units_all)
    for (RingElem D : units_all)
      for (RingElem B : B0s) consider({A, B, RingElem{0, 0}, D});

  // C != 0. Stabilizing H forces 1 = |A - zC|^2 + t^2 |C|^2, and likewise for D via the inverse,
  // so A/C and -D/C lie within 1/|C| of z. Every region keeps z in |Re z| <= 1/2, |Im z| <= sqrt(D)/2.
  const double hx = 0.5, hy = 0.5 * params.sqrt_D();
  auto near_box = [&](std::complex<double> w, double r) {
    const double dx = std::max(0.0, std::fabs(w.real()) - hx), dy = std::max(0.0, std::fabs(w.imag()) - hy);
    return dx * dx + dy * dy <= r * r * (1 + 1e-9) + 1e-12;
  };
  for (RingElem C : Cs) {
    if (C.is_zero()) continue;
    const std::complex<double> cz = o.to_complex(C);
    const double cabs = std::abs(cz);
    const double reach = cabs * std::hypot(hx, hy) + 1.0 + 1e-9;
    std::vector<RingElem> near;
    for (RingElem e : o.elements_in_disk({0.0, 0.0}, reach))
      if (o.norm(e) <= nAD && near_box(o.to_complex(e) / cz, 1.0 / cabs)) near.push_back(e);
    for (RingElem A : near)
      for (RingElem D : near) {
        const RingElem ad = o.mul(A, D);
        for (RingElem u : units_all) {
          auto B = o.try_divide(ad - u, C);
          if (!B || o.norm(*B) > nB) continue;
          consider({A, *B, C, D});
        }
      }
  }

  std::vector<AutoMatrix> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(), [&](const AutoMatrix& x, const AutoMatrix& y) {
    if (x.rank_class != y.rank_class) return x.rank_class < y.rank_class;
    if (x.conditions != y.conditions) return x.conditions < y.conditions;
    return compare_mats(o, x.M, y.M) < 0;
  });
  return out;
}

const std::vector<AutoMatrix>& automorphism_table(const FieldParams& params) {
  static std::mutex mu;
  static std::map<int, std::vector<AutoMatrix>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(params.d_K);
  if (it == cache.end()) it = cache.emplace(params.d_K, enumerate_automorphs(params, AutRegion::ReducedClosure)).first;
  return it->second;
}

LinearPredicate condition_predicate(const std::vector<mpq_class>& row) {
  mpz_class l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  LinearPredicate p;
  for (int i = 0; i < 4; ++i) {
    const mpq_class v = row[i] * l;
    if (!v.get_num().fits_slong_p()) throw std::overflow_error("condition coefficient too large");
    p.c[i] = v.get_num().get_si();
  }
  return p;
}

std::vector<GL2Mat> stabilizer_of(const std::vector<AutoMatrix>& table, BoundaryDecider& decider) {
  std::vector<GL2Mat> out;
  for (const auto& e : table) {
    bool all = true;
    for (const auto& row : e.conditions)
      if (decider.sign(condition_predicate(row)) != Sign::Zero) {
        all = false;
        break;
      }
    if (all) out.push_back(e.M);
  }
  return out;
}

void write_table(std::ostream& os, const FieldParams& params, AutRegion region, const std::vector<AutoMatrix>& t) {
  const Order o(params);
  os << "cubext-automorphisms 1\n";
  os << "d_K " << params.d_K << "\n";
  os << "region " << to_string(region) << "\n";
  os << "entries " << t.size() << "\n";
  for (const auto& e : t) {
    os << "M " << o.to_string(e.M.A) << " " << o.to_string(e.M.B) << " " << o.to_string(e.M.C) << " "
       << o.to_string(e.M.D) << " rank " << e.rank_class << " cond";
    for (std::size_t i = 0; i < e.conditions.size(); ++i) {
      if (i) os << " ;";
      for (const auto& q : e.conditions[i]) os << " " << q.get_str();
    }
    os << "\n";
  }
}

AutTableFile read_table(std::istream& is) {
  AutTableFile f;
  std::string tok;
  auto expect = [&](const std::string& want) {
    if (!(is >> tok) || tok != want) throw std::runtime_error("automorphism table: expected '" + want + "'");
  };
  expect("cubext-automorphisms");
  is >> f.format_version;
  if (f.format_version != 1) throw std::runtime_error("automorphism table: unsupported format version");
  expect("d_K");
  is >> f.d_K;
  const Order o(field_for(f.d_K));
  expect("region");
  is >> tok;
  f.region = parse_region(tok);
  expect("entries");
  std::size_t n = 0;
  is >> n;
  std::getline(is, tok);
  for (std::size_t i = 0; i < n; ++i) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("automorphism table: truncated");
    std::istringstream ls(line);
    std::string A, B, C, D;
    ls >> tok >> A >> B >> C >> D;
    if (tok != "M") throw std::runtime_error("automorphism table: bad record");
    AutoMatrix am;
    am.M = {o.parse(A), o.parse(B), o.parse(C), o.parse(D)};
    ls >> tok >> am.rank_class >> tok;
    std::vector<mpq_class> row;
    while (ls >> tok) {
      if (tok == ";") {
        am.conditions.push_back(row);
        row.clear();
        continue;
      }
      mpq_class q(tok);
      q.canonicalize();
      row.push_back(q);
    }
    if (!row.empty()) am.conditions.push_back(row);
    for (const auto& r : am.conditions)
      if (r.size() != 4) throw std::runtime_error("automorphism table: condition rows need 4 entries");
    f.entries.push_back(std::move(am));
  }
  return f;
}

TableDiff diff_tables(const Order& o, const std::vector<AutoMatrix>& expected, const std::vector<AutoMatrix>& actual) {
  auto key = [&](const GL2Mat& m) {
    const GL2Mat c = canonical_mod_units(o, m);
    return std::vector<std::int64_t>{c.A.x, c.A.y, c.B.x, c.B.y, c.C.x, c.C.y, c.D.x, c.D.y};
  };
  std::map<std::vector<std::int64_t>, const AutoMatrix*> act;
  for (const auto& e : actual) act[key(e.M)] = &e;
  std::map<std::vector<std::int64_t>, const AutoMatrix*> exp;
  for (const auto& e : expected) exp[key(e.M)] = &e;
  TableDiff d;
  for (const auto& [k, e] : exp) {
    auto it = act.find(k);
    if (it == act.end()) {
      d.missing.push_back(e->M);
      continue;
    }
    if (rref(e->conditions) != rref(it->second->conditions)) d.wrong_conditions.push_back(e->M);
  }
  for (const auto& [k, e] : act)
    if (!exp.count(k)) d.extra.push_back(e->M);
  return d;
}

}  // namespace cubext
