#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cmdir/bigfloat.hpp"
#include "cmdir/linalg.hpp"

namespace cmdir {

using ZPoly = std::vector<mpz_class>;  // low to high
using QPoly = std::vector<mpq_class>;

ZPoly cyclotomic_poly(int k);
std::string to_string(const ZPoly& f);

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class CycloElem {
 public:
  CycloElem() : CycloElem(1) {}
  explicit CycloElem(int n);
  CycloElem(int n, QVector coeffs);

  static CycloElem zero(int n) { return CycloElem(n); }
  static CycloElem one(int n) { return rational(n, 1); }
  static CycloElem rational(int n, const mpq_class& q);
  static CycloElem zeta(int n, long k = 1);

  int modulus() const { return n_; }
  int degree() const { return static_cast<int>(c_.size()); }
  const QVector& coeffs() const { return c_; }

  CycloElem operator-() const;
  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
  friend CycloElem operator*(const CycloElem& a, const mpq_class& s);
  friend CycloElem operator*(const mpq_class& s, const CycloElem& a) { return a * s; }
  friend bool operator==(const CycloElem& a, const CycloElem& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

  bool is_zero() const;
  bool is_rational() const;
  CycloElem inverse() const;
  CycloElem pow(long e) const;
  // Complex value at zeta_n = exp(2 pi i / n).
  Complex embed(prec_t prec) const;
  std::string str() const;

 private:
  int n_;
  QVector c_;
};

// zeta_n -> zeta_n^j.
CycloElem galois_apply(long j, const CycloElem& x);
// Same element viewed in Q(zeta_N), n | N.
CycloElem lift(const CycloElem& x, int N);
// sqrt(-p) in Q(zeta_p) as the quadratic Gauss sum (p = 3 mod 4).
CycloElem sqrt_minus_p(int p);
// a + b (1 + sqrt(-p))/2 in Q(zeta_N), p | N.
CycloElem quad_in_cyclo(int p, long a, long b, int N);
// Multiplicative order of j mod n.
long mult_order(long j, long n);

// F[X]/(X^k - 1) over F = Q.  slot i holds the coefficient of X^i, with
// X^0 identified with X^k.
class GroupAlgebraElem {
 public:
  explicit GroupAlgebraElem(int k);
  // coefficients of X^1, ..., X^k
  static GroupAlgebraElem from_coeffs(int k, const QVector& a1_to_ak);
  static GroupAlgebraElem from_poly(int k, const QPoly& f);  // reduce f mod X^k - 1
  static GroupAlgebraElem one(int k);
  static GroupAlgebraElem x_power(int k, long e);

  int k() const { return k_; }
  const mpq_class& coeff(long i) const;
  mpq_class& coeff(long i);
  QPoly as_poly() const;  // degree < k representative

  friend GroupAlgebraElem operator+(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend GroupAlgebraElem operator-(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend bool operator==(const GroupAlgebraElem&, const GroupAlgebraElem&) = default;
  bool is_zero() const;
  Complex eval(const Complex& x) const;

 private:
  int k_;
  QVector a_;
};

// A cyclic F-module with a generator tau of order k, given by the matrix of
// tau (acting on column coordinates) in a chosen basis.
struct CyclicModule {
  int k = 0;
  QMatrix tau;
  // Q(zeta_p) over K, normal basis tau^i(zeta_p), tau: zeta -> zeta^j.
  static CyclicModule cyclotomic(int p, long j);
  CyclicModule change_basis(const QMatrix& b) const;  // b^{-1} tau b
};

// Theta(f)(u) = sum a_i tau^i(u), tau: zeta_n -> zeta_n^j.
CycloElem theta_apply(const GroupAlgebraElem& f, long j, const CycloElem& u);
QMatrix theta_matrix(const GroupAlgebraElem& f, const CyclicModule& m);

struct ThetaSpectrum {
  std::vector<Complex> values;   // f(zeta_k^i), i = 1..k, sorted (re, im)
  std::vector<Complex> charpoly;  // (-1)^k prod (X - f(zeta_k^i)), low to high
  int kernel_dim = 0;             // #{zeta in mu_k : f(zeta) = 0}
};
ThetaSpectrum theta_char_poly(const GroupAlgebraElem& f, prec_t prec);
// Orders e | k with f(primitive e-th roots) = 0, decided exactly.
std::vector<long> theta_zero_orders(const GroupAlgebraElem& f);

struct ThetaKernel {
  GroupAlgebraElem quotient;    // (X^k - 1) / prod_{zeta in Z} (X - zeta)
  int zero_count = 0;
  bool image_in_kernel = false;  // Theta(f) Theta(quotient) == 0
  std::size_t image_dim = 0;
};
ThetaKernel theta_kernel_image(const GroupAlgebraElem& f, const CyclicModule& m);

// Lexicographic (re, im) ordering of complex values.
void sort_lex(std::vector<Complex>& v);

}  // namespace cmdir
