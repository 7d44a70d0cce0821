#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cmdir/analytic.hpp"
#include "cmdir/cocycle.hpp"

namespace cmdir {

// Integer data of A(p) when h = 1.
struct GrossIntegers {
  mpz_class j0, m, n, c4, c6, disc;
  std::array<mpz_class, 5> a;  // minimal model [a1, a2, a3, a4, a6]
};

struct GrossCurveData {
  i64 p = 0;
  int h = 1;
  prec_t prec = 0;
  Complex j0, m, n, c4, c6, disc;  // real embedding j0 = j(O_K)
  std::optional<GrossIntegers> exact;
  bool recognized() const { return exact.has_value(); }
};

// m^3 = j0 (real root), n^2 = (j0 - 1728)/(-p) with sgn n = (2/p),
// c4 = -m p, c6 = n p^2.  Precision doubles until integer recognition
// succeeds when h = 1.
GrossCurveData gross_curve(const FieldContext& k, prec_t prec);

// Integral model [a1..a6] with the given c4, c6, or nothing.
std::optional<std::array<mpz_class, 5>> model_from_invariants(const mpz_class& c4, const mpz_class& c6);
// #E(F_l) for the integral model, l prime of good reduction, by brute force.
long count_points(const std::array<mpz_class, 5>& a, long l);

struct PeriodData {
  Complex omega;
  Complex rho;
  int h = 1;
  bool real = false;  // Omega in R (otherwise in iR)
  LatticeBasis lattice;  // Omega O_K
  Complex lattice_delta;  // Delta(Omega O_K)
};

// rho = prod over classes of delta(b)/sqrt(N b); by default b runs over
// the stored class representatives.
Complex rho_unit(const Cocycle& c, const std::vector<Ideal>* reps = nullptr);
// prod_C |sigma_C rho|
Real rho_norm_abs(const Cocycle& c);
PeriodData omega_period(const Cocycle& c, prec_t prec);

struct PeriodCheck {
  bool pass = false;
  double relative_error = 0;
  std::string agm_lattice, omega_lattice;
};
PeriodCheck period_cross_check(const GrossCurveData& gc, const PeriodData& pd, prec_t prec);

// |prod_classes a^-6 Delta(tau_a)| / ((2 pi / p)^{6h} prod Gamma(m/p)^{6 chi(m)}) - 1
double chowla_selberg_residual(const FieldContext& k, prec_t prec);
// prod_{i<n} Gamma(i/n) / ((2 pi)^{(n-1)/2} n^{-1/2}) - 1
double gauss_gamma_residual(long n, prec_t prec);

}  // namespace cmdir
