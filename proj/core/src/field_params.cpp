#include "cubext/field_params.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cubext {

UnsupportedField::UnsupportedField(int d)
    : std::invalid_argument("unsupported field discriminant " + std::to_string(d) +
                            " (need an imaginary quadratic field of class number 1: "
                            "-3, -4, -7, -8, -11, -19, -43, -67, -163)"),
      d_K(d) {}

namespace {

FieldParams make_field(int d_K) {
  FieldParams f;
  f.d_K = d_K;
  switch (d_K) {
    case -4:
      f.D = 1;
      f.kind = DomainKind::Qi;
      f.tK_sq = mpq_class(1, 2);
      f.c_K = mpq_class(1, 2);
      f.omega_trace = 0;
      f.omega_norm = 1;
      f.omega_name = "i";
      f.cell_re0 = 0;
      f.cell_eta0 = 0;
      f.cell_eta_width = 1;
      return f;
    case -8:
      f.D = 2;
      f.kind = DomainKind::Qsqrt2;
      f.tK_sq = mpq_class(1, 4);
      f.c_K = mpq_class(9, 4);
      f.omega_trace = 0;
      f.omega_norm = 2;
      f.omega_name = "sqrt(-2)";
      f.cell_re0 = mpq_class(-1, 2);
      f.cell_re_open_left = true;
      f.cell_eta0 = 0;
      f.cell_eta_width = 1;
      return f;
    case -3:
      f.D = 3;
      f.kind = DomainKind::Qsqrt3;
      f.tK_sq = mpq_class(2, 3);
      f.c_K = mpq_class(7, 12);
      break;
    case -7:
      f.D = 7;
      f.tK_sq = mpq_class(3, 7);
      break;
    case -11:
      f.D = 11;
      f.tK_sq = mpq_class(2, 11);
      break;
    case -19:
    case -43:
    case -67:
    case -163:
      f.D = -d_K;
      f.tK_sq = mpq_class(2, -d_K);
      break;
    default:
      throw UnsupportedField(d_K);
  }
  // d_K = 1 mod 4: w = (1 + sqrt(d_K)) / 2
  f.omega_trace = 1;
  f.omega_norm = (1 - d_K) / 4;
  f.omega_name = "(1+sqrt(" + std::to_string(d_K) + "))/2";
  f.cell_eta_width = mpq_class(1, 2);
  if (f.kind == DomainKind::Qsqrt3) {
    f.cell_re0 = 0;
    f.cell_eta0 = mpq_class(-1, 4);
  } else {
    f.kind = DomainKind::Generic;
    f.c_K = mpq_class(1 - d_K, 4);
    f.cell_re0 = mpq_class(-1, 2);
    f.cell_re_open_left = true;
    f.cell_eta0 = 0;
  }
  f.tK_sq.canonicalize();
  f.c_K.canonicalize();
  return f;
}

}  // namespace

const std::array<int, 9>& supported_discriminants() {
  static const std::array<int, 9> ds{-3, -4, -7, -8, -11, -19, -43, -67, -163};
  return ds;
}

const FieldParams& field_for(int d_K) {
  static const std::map<int, FieldParams> table = [] {
    std::map<int, FieldParams> m;
    for (int d : supported_discriminants()) m.emplace(d, make_field(d));
    return m;
  }();
  auto it = table.find(d_K);
  if (it == table.end()) throw UnsupportedField(d_K);
  return it->second;
}

double FieldParams::t_K() const { return std::sqrt(tK_sq.get_d()); }
double FieldParams::sqrt_D() const { return std::sqrt(static_cast<double>(D)); }

mpq_class FieldParams::omega_im_over_sqrtD() const {
  return omega_trace == 0 ? mpq_class(1) : mpq_class(1, 2);
}

std::string LinearPredicate::to_string() const {
  std::ostringstream os;
  os << "[" << c[0] << "*P + " << c[1] << "*ReQ + " << c[2] << "*ImQ/sqrtD + " << c[3] << "*R]";
  return os.str();
}

RationalPointDecider::RationalPointDecider(mpq_class re_z, mpq_class eta, mpq_class rho2)
    : re_z_(std::move(re_z)), eta_(std::move(eta)), rho2_(std::move(rho2)) {
  // GMP arithmetic assumes canonical operands.
  re_z_.canonicalize();
  eta_.canonicalize();
  rho2_.canonicalize();
}

Sign RationalPointDecider::sign(const LinearPredicate& p) {
  mpq_class v = mpq_class(p.c[0]) - p.c[1] * re_z_ - p.c[2] * eta_ + p.c[3] * rho2_;
  return sign_of(sgn(v));
}

Sign NullDecider::sign(const LinearPredicate& p) {
  throw Undecidable("no exact decider available for " + p.to_string());
}

namespace {

// Named walls, written in (P, ReQ, ImQ/sqrtD, R) coefficients.
constexpr LinearPredicate kReNonneg{{0, -1, 0, 0}};      // Re z >= 0
constexpr LinearPredicate kReAtMostHalf{{1, 2, 0, 0}};   // Re z <= 1/2
constexpr LinearPredicate kReAtLeastMHalf{{1, -2, 0, 0}};  // Re z >= -1/2
constexpr LinearPredicate kEtaNonneg{{0, 0, -1, 0}};     // Im z >= 0
constexpr LinearPredicate kEtaAtMostHalf{{1, 0, 2, 0}};  // eta <= 1/2
constexpr LinearPredicate kEtaAtMostQuarter{{1, 0, 4, 0}};  // eta <= 1/4
constexpr LinearPredicate kSphere{{-1, 0, 0, 1}};        // |z|^2 + t^2 >= 1
constexpr LinearPredicate kSqrt3Upper{{0, -1, 3, 0}};    // Im z <= Re z / sqrt(3)
constexpr LinearPredicate kSqrt3Lower{{0, -1, -3, 0}};   // Im z >= -Re z / sqrt(3)
constexpr LinearPredicate kReAtMostIm{{0, 1, -1, 0}};    // Re z <= Im z (Q(i))

}  // namespace

const std::vector<LinearPredicate>& domain_walls(const FieldParams& params) {
  static const std::vector<LinearPredicate> qi{kReNonneg, kReAtMostHalf, kEtaNonneg, kEtaAtMostHalf, kSphere};
  static const std::vector<LinearPredicate> q2{kReAtLeastMHalf, kReAtMostHalf, kEtaNonneg, kEtaAtMostQuarter,
                                               kSphere};
  static const std::vector<LinearPredicate> q3{kReNonneg, kReAtMostHalf, kSqrt3Upper, kSqrt3Lower, kSphere};
  static const std::vector<LinearPredicate> gen{kReAtLeastMHalf, kReAtMostHalf, kEtaNonneg, kEtaAtMostQuarter,
                                                kSphere};
  switch (params.kind) {
    case DomainKind::Qi: return qi;
    case DomainKind::Qsqrt2: return q2;
    case DomainKind::Qsqrt3: return q3;
    case DomainKind::Generic: return gen;
  }
  return gen;
}

bool in_F_K(const FieldParams& params, std::complex<double> z) {
  const double x = z.real();
  const double eta = z.imag() / params.sqrt_D();
  for (const auto& w : domain_walls(params)) {
    if (w == kSphere) continue;
    // P = 1, R unused
    double v = w.c[0] - w.c[1] * x - w.c[2] * eta;
    if (v < 0) return false;
  }
  return true;
}

namespace {

DomainVerdict resolve(const FieldParams& params, const std::vector<Sign>& wall_signs, BoundaryDecider& decider) {
  const auto& walls = domain_walls(params);
  bool on_boundary = false;
  for (Sign s : wall_signs) {
    if (s == Sign::Negative) return {DomainClass::Outside, false};
    if (s == Sign::Zero) on_boundary = true;
  }
  if (!on_boundary) return {DomainClass::Inside, false};
  auto keep_if = [&](const LinearPredicate& tie) {
    return decider.sign(tie) != Sign::Negative ? DomainClass::OnBoundaryKept : DomainClass::OnBoundaryRejected;
  };
  switch (params.kind) {
    case DomainKind::Qi: return {keep_if(kReAtMostIm), false};
    case DomainKind::Qsqrt2: return {keep_if(kReNonneg), false};
    case DomainKind::Qsqrt3: return {keep_if(kEtaNonneg), false};
    case DomainKind::Generic: break;
  }
  // Generic: Re z >= 0 is required on the sphere, on |Re z| = 1/2 and on Im z = 0.
  // The remaining face eta = 1/4 has no usable rule and is kept.
  bool clause2 = false;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (wall_signs[i] != Sign::Zero) continue;
    if (walls[i] == kEtaAtMostQuarter) continue;
    clause2 = true;
  }
  if (clause2) return {keep_if(kReNonneg), false};
  return {DomainClass::OnBoundaryKept, true};
}

}  // namespace

DomainVerdict classify_domain(const FieldParams& params, BoundaryDecider& decider) {
  const auto& walls = domain_walls(params);
  std::vector<Sign> signs;
  signs.reserve(walls.size());
  // A single negative wall settles the question, so look for one before paying for the rest.
  for (const auto& w : walls) {
    Sign s = decider.sign(w);
    if (s == Sign::Negative) return {DomainClass::Outside, false};
    signs.push_back(s);
  }
  return resolve(params, signs, decider);
}

namespace {

class FloatFirstDecider : public BoundaryDecider {
 public:
  FloatFirstDecider(const FieldParams& params, const DomainPoint& p, BoundaryDecider& exact)
      : x_(p.z.real()), eta_(p.z.imag() / params.sqrt_D()), rho2_(std::norm(p.z) + p.t * p.t), exact_(exact) {}

  Sign sign(const LinearPredicate& w) override {
    const double terms[4] = {static_cast<double>(w.c[0]), -w.c[1] * x_, -w.c[2] * eta_, w.c[3] * rho2_};
    double v = 0, mag = 0;
    for (double t : terms) {
      v += t;
      mag += std::fabs(t);
    }
    const double budget = 1e-12 * (1.0 + mag);
    if (v > budget) return Sign::Positive;
    if (v < -budget) return Sign::Negative;
    return exact_.sign(w);
  }

 private:
  double x_, eta_, rho2_;
  BoundaryDecider& exact_;
};

}  // namespace

DomainClass in_fundamental_domain(const FieldParams& params, const DomainPoint& p, BoundaryDecider& decider) {
  if (!(p.t > 0)) throw std::invalid_argument("domain point needs t > 0");
  FloatFirstDecider d(params, p, decider);
  return classify_domain(params, d).cls;
}

const char* to_string(DomainClass c) {
  switch (c) {
    case DomainClass::Inside: return "Inside";
    case DomainClass::Outside: return "Outside";
    case DomainClass::OnBoundaryKept: return "OnBoundaryKept";
    case DomainClass::OnBoundaryRejected: return "OnBoundaryRejected";
  }
  return "?";
}

}  // namespace cubext
