#include "cubext/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>

namespace cubext {

Order::Order(const FieldParams& params)
    : params_(&params), t_(params.omega_trace), n_(params.omega_norm) {
  // w = t/2 + i*sqrt(4n - t^2)/2
  omega_ = {t_ / 2.0, std::sqrt(static_cast<double>(4 * n_ - t_ * t_)) / 2.0};
  for (const RingElem& e : elements_in_disk({0.0, 0.0}, 1.5))
    if (norm(e) == 1) units_.push_back(e);
}

RingElem Order::mul(RingElem a, RingElem b) const {
  using checked::add;
  using checked::mul;
  using checked::sub;
  const std::int64_t yy = mul(a.y, b.y);
  return {sub(mul(a.x, b.x), mul(n_, yy)), add(add(mul(a.x, b.y), mul(a.y, b.x)), mul(t_, yy))};
}

RingElem Order::pow(RingElem a, unsigned e) const {
  RingElem r{1, 0};
  for (unsigned i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

// conj(x + y*w) = x + y*(t - w)
RingElem Order::conj(RingElem a) const { return {checked::add(a.x, checked::mul(t_, a.y)), checked::sub(0, a.y)}; }

std::int64_t Order::norm(RingElem a) const {
  __int128 x = a.x, y = a.y;
  return checked::narrow(x * x + t_ * x * y + n_ * y * y);
}

std::int64_t Order::trace_of(RingElem a) const { return twice_re(a); }

std::optional<RingElem> Order::try_divide(RingElem num, RingElem den) const {
  if (den.is_zero()) throw std::domain_error("division by zero in O_K");
  // num * conj(den) / norm(den), in 128-bit to avoid spurious overflow
  const __int128 cx = static_cast<__int128>(den.x) + t_ * static_cast<__int128>(den.y);
  const __int128 cy = -static_cast<__int128>(den.y);
  const __int128 ax = num.x, ay = num.y;
  const __int128 yy = ay * cy;
  const __int128 px = ax * cx - n_ * yy;
  const __int128 py = ax * cy + ay * cx + t_ * yy;
  const __int128 nd = norm(den);
  if (px % nd != 0 || py % nd != 0) return std::nullopt;
  return RingElem{checked::narrow(px / nd), checked::narrow(py / nd)};
}

RingElem Order::exact_divide(RingElem num, RingElem den) const {
  auto q = try_divide(num, den);
  if (!q) throw NotDivisible();
  return *q;
}

bool Order::divides(RingElem d, RingElem e) const {
  if (d.is_zero()) return e.is_zero();
  return try_divide(e, d).has_value();
}

RingElem Order::canonical_associate(RingElem a) const {
  RingElem best = a;
  for (const RingElem& u : units_) {
    RingElem c = mul(a, u);
    const auto key = [&](RingElem e) { return std::pair(twice_re(e), e.y); };
    if (key(c) > key(best)) best = c;
  }
  return best;
}

RingElem Order::sqrt_minus_D() const {
  // w = sqrt(-D) when t = 0, else 2w - 1
  return t_ == 0 ? RingElem{0, 1} : RingElem{-1, 2};
}

std::complex<double> Order::to_complex(RingElem a) const {
  return static_cast<double>(a.x) + static_cast<double>(a.y) * omega_;
}

int Order::compare(RingElem a, RingElem b) const {
  const std::int64_t na = norm(a), nb = norm(b);
  if (na != nb) return na < nb ? -1 : 1;
  const std::int64_t ra = twice_re(a), rb = twice_re(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (a.y != b.y) return a.y < b.y ? -1 : 1;
  return 0;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// g = u*a + v*b
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = floor_div(old_r, r);
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  u = old_s;
  v = old_t;
  return old_r;
}

}  // namespace

Order::ResidueBox Order::residue_box(RingElem m) const {
  if (m.is_zero()) throw std::domain_error("residues modulo zero");
  // The ideal (m) is spanned by m = (x, y) and m*w = (-n*y, x + t*y) in (1, w) coordinates.
  const RingElem mw = mul(m, RingElem{0, 1});
  std::int64_t u, v;
  const std::int64_t g = ext_gcd(m.y, mw.y, u, v);
  ResidueBox box;
  box.n2 = g;
  box.n1 = norm(m) / g;
  // u*m + v*m*w has w-coordinate g
  const RingElem e = u * m + v * mw;
  box.s = pos_mod(e.x, box.n1);
  return box;
}

RingElem Order::reduce_mod(RingElem e, const ResidueBox& box) const {
  const std::int64_t q = floor_div(e.y, box.n2);
  const std::int64_t x = checked::sub(e.x, checked::mul(q, box.s));
  return {pos_mod(x, box.n1), e.y - q * box.n2};
}

std::vector<RingElem> Order::residues_mod(RingElem m) const {
  const ResidueBox box = residue_box(m);
  std::vector<RingElem> out;
  out.reserve(static_cast<std::size_t>(box.n1 * box.n2));
  for (std::int64_t y = 0; y < box.n2; ++y)
    for (std::int64_t x = 0; x < box.n1; ++x) out.push_back({x, y});
  return out;
}

std::vector<RingElem> Order::elements_in_disk(std::complex<double> center, double radius) const {
  std::vector<RingElem> out;
  if (!(radius >= 0)) return out;
  const double im_w = omega_.imag();
  const auto y_lo = static_cast<std::int64_t>(std::floor((center.imag() - radius) / im_w));
  const auto y_hi = static_cast<std::int64_t>(std::ceil((center.imag() + radius) / im_w));
  const double r2 = radius * radius;
  for (std::int64_t y = y_lo; y <= y_hi; ++y) {
    const double dy = y * im_w - center.imag();
    const double rem = r2 - dy * dy;
    if (rem < 0) continue;
    const double half = std::sqrt(rem);
    const double cx = center.real() - y * omega_.real();
    const auto x_lo = static_cast<std::int64_t>(std::ceil(cx - half));
    const auto x_hi = static_cast<std::int64_t>(std::floor(cx + half));
    for (std::int64_t x = x_lo; x <= x_hi; ++x) out.push_back({x, y});
  }
  std::sort(out.begin(), out.end(), [this](RingElem a, RingElem b) { return less(a, b); });
  return out;
}

std::vector<RingElem> Order::elements_of_norm_at_most(std::int64_t bound) const {
  std::vector<RingElem> out;
  if (bound < 0) return out;
  for (const RingElem& e : elements_in_disk({0, 0}, std::sqrt(static_cast<double>(bound)) + 1.0))
    if (norm(e) <= bound) out.push_back(e);
  return out;
}

std::string Order::to_string(RingElem a) const {
  std::string s = std::to_string(a.x);
  s += a.y < 0 ? "-" : "+";
  s += std::to_string(a.y < 0 ? -a.y : a.y);
  s += "*w";
  return s;
}

RingElem Order::parse(const std::string& s) const {
  static const std::regex full(R"(\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*w\s*)");
  static const std::regex plain(R"(\s*([+-]?\d+)\s*)");
  std::smatch m;
  if (std::regex_match(s, m, full)) {
    const std::int64_t x = std::stoll(m[1]);
    std::int64_t y = std::stoll(m[3]);
    if (m[2] == "-") y = -y;
    return {x, y};
  }
  if (std::regex_match(s, m, plain)) return {std::stoll(m[1]), 0};
  throw std::invalid_argument("cannot parse ring element '" + s + "'");
}

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(QuadBasis b, mpz_class x, mpz_class y, mpz_class den)
    : b_(b), x_(std::move(x)), y_(std::move(y)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("zero denominator");
  canonicalize();
}

FieldElem FieldElem::from_rational(QuadBasis b, const mpq_class& q) {
  return FieldElem(b, q.get_num(), 0, q.get_den());
}

void FieldElem::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    x_ = -x_;
    y_ = -y_;
  }
  if (x_ == 0 && y_ == 0) {
    den_ = 1;
    return;
  }
  mpz_class g = gcd(gcd(x_, y_), den_);
  if (g != 1) {
    mpz_divexact(x_.get_mpz_t(), x_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(y_.get_mpz_t(), y_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

QuadBasis FieldElem::join(const FieldElem& a, const FieldElem& b) {
  if (a.b_.valid() && b.b_.valid() && !(a.b_ == b.b_)) throw std::logic_error("mixing elements of different fields");
  return a.b_.valid() ? a.b_ : b.b_;
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  if (a.den_ == b.den_) return FieldElem(FieldElem::join(a, b), a.x_ + b.x_, a.y_ + b.y_, a.den_);
  return FieldElem(FieldElem::join(a, b), a.x_ * b.den_ + b.x_ * a.den_, a.y_ * b.den_ + b.y_ * a.den_,
                   a.den_ * b.den_);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  r.x_ = -r.x_;
  r.y_ = -r.y_;
  return r;
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  const QuadBasis q = FieldElem::join(a, b);
  mpz_class yy = a.y_ * b.y_;
  if (yy != 0 && !q.valid()) throw std::logic_error("field element without basis data");
  mpz_class x = a.x_ * b.x_ - static_cast<long>(q.n) * yy;
  mpz_class y = a.x_ * b.y_ + a.y_ * b.x_ + static_cast<long>(q.t) * yy;
  return FieldElem(q, std::move(x), std::move(y), a.den_ * b.den_);
}

FieldElem FieldElem::conj() const {
  return FieldElem(b_, x_ + static_cast<long>(b_.t) * y_, -y_, den_);
}

mpq_class FieldElem::norm() const {
  mpz_class n = x_ * x_ + static_cast<long>(b_.t) * x_ * y_ + static_cast<long>(b_.n) * y_ * y_;
  mpq_class r(n, den_ * den_);
  r.canonicalize();
  return r;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  const FieldElem c = conj();
  const mpq_class n = norm();
  // c / n
  return FieldElem(b_, c.x_ * n.get_den(), c.y_ * n.get_den(), c.den_ * n.get_num());
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

std::complex<double> FieldElem::to_complex() const {
  const double t = b_.t;
  const double im_w = std::sqrt(static_cast<double>(4 * b_.n - b_.t * b_.t)) / 2.0;
  const mpq_class xq(x_, den_), yq(y_, den_);
  const double xd = xq.get_d(), yd = yq.get_d();
  return {xd + yd * t / 2.0, yd * im_w};
}

std::string FieldElem::to_string() const {
  std::string s = "(" + x_.get_str() + (y_ < 0 ? "-" : "+") + mpz_class(abs(y_)).get_str() + "*w)";
  if (den_ != 1) s += "/" + den_.get_str();
  return s;
}

}  // namespace cubext
