#include "cubext/forms.hpp"

#include <sstream>

namespace cubext {

RingElem disc_cubic(const Order& o, const CubicForm& f) {
  const RingElem ab = o.mul(f.a, f.b), cd = o.mul(f.c, f.d);
  const RingElem bc = o.mul(f.b, f.c), ad = o.mul(f.a, f.d);
  const RingElem t1 = o.sqr(bc);
  const RingElem t2 = 27 * o.sqr(ad);
  const RingElem t3 = 18 * o.mul(ab, cd);
  const RingElem t4 = 4 * o.mul(f.a, o.pow(f.c, 3));
  const RingElem t5 = 4 * o.mul(o.pow(f.b, 3), f.d);
  return t1 - t2 + t3 - t4 - t5;
}

RingElem det(const Order& o, const GL2Mat& m) { return o.mul(m.A, m.D) - o.mul(m.B, m.C); }

GL2Mat mat_mul(const Order& o, const GL2Mat& m, const GL2Mat& n) {
  return {o.mul(m.A, n.A) + o.mul(m.B, n.C), o.mul(m.A, n.B) + o.mul(m.B, n.D), o.mul(m.C, n.A) + o.mul(m.D, n.C),
          o.mul(m.C, n.B) + o.mul(m.D, n.D)};
}

GL2Mat scalar_mat(RingElem u) { return {u, 0, 0, u}; }

namespace {

// Binary form coefficients, highest power of x first.
using BinForm = std::vector<RingElem>;

BinForm mul_linear(const Order& o, const BinForm& p, RingElem lx, RingElem ly) {
  BinForm r(p.size() + 1, RingElem{});
  for (std::size_t i = 0; i < p.size(); ++i) {
    r[i] += o.mul(p[i], lx);
    r[i + 1] += o.mul(p[i], ly);
  }
  return r;
}

}  // namespace

CubicForm act_cubic(const Order& o, const GL2Mat& m, const CubicForm& f) {
  const RingElem dt = det(o, m);
  if (!o.is_unit(dt)) throw NonUnitDeterminant();
  const RingElem coef[4] = {f.a, f.b, f.c, f.d};
  BinForm acc(4, RingElem{});
  for (int k = 0; k < 4; ++k) {
    if (coef[k].is_zero()) continue;
    BinForm p{coef[k]};
    for (int i = 0; i < 3 - k; ++i) p = mul_linear(o, p, m.A, m.B);
    for (int i = 0; i < k; ++i) p = mul_linear(o, p, m.C, m.D);
    for (int i = 0; i < 4; ++i) acc[i] += p[i];
  }
  const RingElem inv = o.conj(dt);  // unit, so the inverse is the conjugate
  return {o.mul(inv, acc[0]), o.mul(inv, acc[1]), o.mul(inv, acc[2]), o.mul(inv, acc[3])};
}

CubicForm translate(const Order& o, const CubicForm& f, RingElem k) {
  const RingElem ak = o.mul(f.a, k), bk = o.mul(f.b, k), k2 = o.sqr(k);
  return {f.a, f.b + 3 * ak, 3 * o.mul(ak, k) + 2 * bk + f.c, o.mul(ak, k2) + o.mul(bk, k) + o.mul(f.c, k) + f.d};
}

CubicForm mirror(const Order& o, const CubicForm& f) {
  return {o.conj(f.a), -o.conj(f.b), o.conj(f.c), -o.conj(f.d)};
}

CubicForm scale(const Order& o, RingElem u, const CubicForm& f) {
  return {o.mul(u, f.a), o.mul(u, f.b), o.mul(u, f.c), o.mul(u, f.d)};
}

int compare_forms(const Order& o, const CubicForm& f, const CubicForm& g) {
  if (int c = o.compare(f.a, g.a)) return c;
  if (int c = o.compare(f.b, g.b)) return c;
  if (int c = o.compare(f.c, g.c)) return c;
  return o.compare(f.d, g.d);
}

Seminvariants seminvariants(const Order& o, const CubicForm& f) {
  const RingElem ac = o.mul(f.a, f.c);
  const RingElem P = o.sqr(f.b) - 3 * ac;
  const RingElem U = 2 * o.pow(f.b, 3) + 27 * o.mul(o.sqr(f.a), f.d) - 9 * o.mul(ac, f.b);
  return {P, U};
}

std::string to_string(const Order& o, const CubicForm& f) {
  std::ostringstream s;
  s << "(" << o.to_string(f.a) << ", " << o.to_string(f.b) << ", " << o.to_string(f.c) << ", " << o.to_string(f.d)
    << ")";
  return s.str();
}

std::string to_string(const Order& o, const GL2Mat& m) {
  std::ostringstream s;
  s << "[" << o.to_string(m.A) << ", " << o.to_string(m.B) << "; " << o.to_string(m.C) << ", " << o.to_string(m.D)
    << "]";
  return s.str();
}

template <class T>
Interval<T> sqrt_D_interval(const Order& o, unsigned prec) {
  return Interval<T>::from_long(o.params().D, prec).sqrt();
}

template <class T>
CBox<T> to_box(const Order& o, RingElem e, unsigned prec) {
  const mpq_class re(mpz_class(static_cast<long>(o.twice_re(e))), 2);
  Interval<T> im = Interval<T>::from_long(e.y, prec) * sqrt_D_interval<T>(o, prec) *
                   Interval<T>::from_mpq(o.params().omega_im_over_sqrtD(), prec);
  return {Interval<T>::from_mpq(re, prec), std::move(im)};
}

template <class T>
CubicCoeffs<T> cubic_coeffs(const Order& o, const CubicForm& f, unsigned prec) {
  return {to_box<T>(o, f.a, prec), to_box<T>(o, f.b, prec), to_box<T>(o, f.c, prec), to_box<T>(o, f.d, prec)};
}

template <class T>
Hermitian<T> make_hermitian(double P, std::complex<double> Q, double R, unsigned prec) {
  return {Interval<T>::from_double(P, prec),
          {Interval<T>::from_double(Q.real(), prec), Interval<T>::from_double(Q.imag(), prec)},
          Interval<T>::from_double(R, prec),
          prec};
}

template <class T>
RootBoxes<T> form_roots(const Order& o, const CubicForm& f, unsigned prec, unsigned* used_prec) {
  if (f.a.is_zero()) throw RepeatedRoots("cubic form has a = 0");
  if (disc_cubic(o, f).is_zero()) throw RepeatedRoots("cubic form has a repeated root");
  if constexpr (std::is_same_v<T, double>) {
    auto r = certified_cubic_roots<double>(cubic_coeffs<double>(o, f, 53), 53);
    if (!r) throw RootIsolationFailed("double precision cannot separate the roots");
    if (used_prec) *used_prec = 53;
    return *r;
  } else {
    RootApprox seed;
    const RootApprox* sp = nullptr;
    for (unsigned p = std::max(prec, 64u); p <= kMaxRootPrecision; p *= 2) {
      RootApprox out;
      auto r = certified_cubic_roots<Mpfr>(cubic_coeffs<Mpfr>(o, f, p), p, sp, &out);
      if (r) {
        if (used_prec) *used_prec = p;
        return *r;
      }
      seed = out;
      sp = &seed;
    }
    throw RootIsolationFailed("root isolation exceeded the precision limit");
  }
}

template <class T>
Hermitian<T> normalized_covariant(const RootBoxes<T>& r, unsigned prec) {
  Interval<T> p = Interval<T>::zero(prec), rr = Interval<T>::zero(prec);
  CBox<T> q = CBox<T>::zero(prec);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const Interval<T> ti = (r[j] - r[k]).norm();
    p += ti;
    q -= ti * r[i];
    rr += r[i].norm() * ti;
  }
  return {p, q, rr, prec};
}

template <class T>
Hermitian<T> julia_covariant(const Order& o, const CubicForm& f, unsigned prec) {
  unsigned used = prec;
  const RootBoxes<T> r = form_roots<T>(o, f, prec, &used);
  Hermitian<T> h = normalized_covariant<T>(r, used);
  const Interval<T> na = Interval<T>::from_long(o.norm(f.a), used);
  return {na * h.P, na * h.Q, na * h.R, used};
}

template <class T>
Hermitian<T> act_hermitian(const Order& o, const GL2Mat& m, const Hermitian<T>& h) {
  const unsigned p = h.precision;
  auto box = [&](RingElem e) { return to_box<T>(o, e, p); };
  auto nrm = [&](RingElem e) { return Interval<T>::from_long(o.norm(e), p); };
  const CBox<T> AbC = box(o.mul(o.conj(m.A), m.C));
  const CBox<T> AbB = box(o.mul(o.conj(m.A), m.B));
  const CBox<T> AbD = box(o.mul(o.conj(m.A), m.D));
  const CBox<T> BCb = box(o.mul(m.B, o.conj(m.C)));
  const CBox<T> CbD = box(o.mul(o.conj(m.C), m.D));
  const CBox<T> BbD = box(o.mul(o.conj(m.B), m.D));
  const Interval<T> two = Interval<T>::from_long(2, p);
  const CBox<T> Pb{h.P, Interval<T>::zero(p)}, Rb{h.R, Interval<T>::zero(p)};

  Hermitian<T> out;
  out.precision = p;
  out.P = h.P * nrm(m.A) + two * (AbC * h.Q).re + h.R * nrm(m.C);
  out.Q = Pb * AbB + h.Q * AbD + h.Q.conj() * BCb + Rb * CbD;
  out.R = h.P * nrm(m.B) + two * (BbD * h.Q).re + h.R * nrm(m.D);
  return out;
}

template <class T>
DomainPoint phi_map(const Hermitian<T>& h) {
  const Interval<T> delta = h.Delta();
  if (!h.P.positive() || !(Num<T>::sgn(delta.hi()) > 0))
    throw std::domain_error("Hermitian form is not positive definite");
  const double P = Num<T>::to_double(h.P.mid(), Dir::Near);
  const double re = Num<T>::to_double(h.Q.re.mid(), Dir::Near);
  const double im = Num<T>::to_double(h.Q.im.mid(), Dir::Near);
  const double dl = std::max(0.0, Num<T>::to_double(delta.mid(), Dir::Near));
  return {std::complex<double>(-re / P, -im / P), std::sqrt(dl) / P};
}

#define CUBEXT_FORMS_INST(T)                                                                               \
  template Interval<T> sqrt_D_interval<T>(const Order&, unsigned);                                         \
  template CBox<T> to_box<T>(const Order&, RingElem, unsigned);                                            \
  template CubicCoeffs<T> cubic_coeffs<T>(const Order&, const CubicForm&, unsigned);                       \
  template Hermitian<T> make_hermitian<T>(double, std::complex<double>, double, unsigned);                 \
  template RootBoxes<T> form_roots<T>(const Order&, const CubicForm&, unsigned, unsigned*);                \
  template Hermitian<T> normalized_covariant<T>(const RootBoxes<T>&, unsigned);                            \
  template Hermitian<T> julia_covariant<T>(const Order&, const CubicForm&, unsigned);                      \
  template Hermitian<T> act_hermitian<T>(const Order&, const GL2Mat&, const Hermitian<T>&);                \
  template DomainPoint phi_map<T>(const Hermitian<T>&);

CUBEXT_FORMS_INST(double)
CUBEXT_FORMS_INST(Mpfr)

}  // namespace cubext
