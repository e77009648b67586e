#include "cubext/predict.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "cubext/field_params.hpp"

namespace cubext {

double hurwitz_zeta(double s, double a) {
  if (s == 1.0) throw std::domain_error("hurwitz_zeta has a pole at s = 1");
  if (a <= 0) throw std::domain_error("hurwitz_zeta needs a > 0");
  // B_{2k} / (2k)!
  static constexpr double kB[] = {1.0 / 12,           -1.0 / 720,          1.0 / 30240,        -1.0 / 1209600,
                                  1.0 / 47900160,     -691.0 / 1307674368000.0, 1.0 / 74724249600.0,
                                  -3617.0 / 10670622842880000.0};
  const int N = 30;
  double sum = 0;
  for (int n = 0; n < N; ++n) sum += std::pow(n + a, -s);
  const double x = N + a;
  sum += std::pow(x, 1 - s) / (s - 1) + 0.5 * std::pow(x, -s);
  // Tail terms: B_{2k}/(2k)! * s (s+1) ... (s+2k-2) * x^{-s-2k+1}
  double rising = s;
  for (int k = 1; k <= 8; ++k) {
    sum += kB[k - 1] * rising * std::pow(x, -s - 2 * k + 1);
    rising *= (s + 2 * k - 1) * (s + 2 * k);
  }
  return sum;
}

int kronecker(int d, std::int64_t n) {
  if (n < 1) throw std::domain_error("kronecker needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const int m8 = ((d % 8) + 8) % 8;
    if (m8 % 2 == 0) return 0;
    if (m8 == 3 || m8 == 5) result = -result;
  }
  // Jacobi symbol (d / n) for odd n.
  std::int64_t a = ((d % n) + n) % n, m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

namespace {

// psi(a) by the same Euler-Maclaurin tail; B_{2k} / (2k).
double digamma(double a) {
  static constexpr double kB[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760.0,
                                  1.0 / 12};
  const int N = 30;
  double sum = 0;
  for (int n = 0; n < N; ++n) sum -= 1.0 / (n + a);
  const double x = N + a;
  sum += std::log(x) - 0.5 / x;
  for (int k = 1; k <= 7; ++k) sum -= kB[k - 1] * std::pow(x, -2 * k);
  return sum;
}

}  // namespace

double dirichlet_l(int d, double s) {
  const int q = std::abs(d);
  double sum = 0;
  if (s == 1.0) {
    // The poles of the Hurwitz terms cancel since the character sums to zero.
    for (int a = 1; a <= q; ++a)
      if (int c = kronecker(d, a)) sum -= c * digamma(static_cast<double>(a) / q);
    return sum / q;
  }
  for (int a = 1; a <= q; ++a)
    if (int c = kronecker(d, a)) sum += c * hurwitz_zeta(s, static_cast<double>(a) / q);
  return std::pow(q, -s) * sum;
}

double dedekind_zeta(int d_K, double s) { return hurwitz_zeta(s, 1.0) * dirichlet_l(d_K, s); }

double dedekind_residue(int d_K) {
  field_for(d_K);  // validates d_K
  const int w = d_K == -4 ? 4 : (d_K == -3 ? 6 : 2);
  return 2 * std::numbers::pi / (w * std::sqrt(static_cast<double>(-d_K)));
}

Prediction predict_count(int d_K, double X) {
  const double res = dedekind_residue(d_K);
  const double pi = std::numbers::pi;
  Prediction p;
  p.main_term = res / dedekind_zeta(d_K, 3.0) / 12.0 * X;
  const double g = std::tgamma(1.0 / 3.0);
  p.secondary_term = 1.0 / 40.0 / std::sqrt(static_cast<double>(-d_K)) * res * std::sqrt(3.0) * std::pow(g, 6) /
                     (pi * pi) * dedekind_zeta(d_K, 1.0 / 3.0) /
                     (dedekind_zeta(d_K, 2.0) * dedekind_zeta(d_K, 5.0 / 3.0)) * std::pow(X, 5.0 / 6.0);
  return p;
}

}  // namespace cubext
