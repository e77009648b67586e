#pragma once

#include <cstdint>

namespace cubext {

// Hurwitz zeta zeta(s, a) for real s != 1 and a > 0, continued analytically by Euler-Maclaurin.
double hurwitz_zeta(double s, double a);

// Kronecker symbol (d / n) for a fundamental discriminant d and n >= 1.
int kronecker(int d, std::int64_t n);

// L(s, chi_d) with chi_d = (d / .), for real s (s = 1 through the digamma function).
double dirichlet_l(int d, double s);

// zeta_K(s) = zeta(s) L(s, chi_{d_K}).
double dedekind_zeta(int d_K, double s);

// Residue of zeta_K at s = 1 by the class number formula (h_K = 1).
double dedekind_residue(int d_K);

struct Prediction {
  double main_term = 0;       // (1/12) Res / zeta_K(3) X
  double secondary_term = 0;  // the X^{5/6} term
  double total() const { return main_term + secondary_term; }
};

// Two-term asymptotic for the number of cubic extensions of K with norm of discriminant <= X.
Prediction predict_count(int d_K, double X);

}  // namespace cubext
