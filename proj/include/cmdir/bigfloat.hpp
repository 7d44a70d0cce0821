#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace cmdir {

using prec_t = mpfr_prec_t;

// Guard bits added on top of a requested output precision.
inline constexpr prec_t kGuardBits = 32;

// RAII wrapper over mpfr_t.  Binary operations produce a result at the
// smaller of the two operand precisions.
class Real {
 public:
  explicit Real(prec_t prec = 64);
  Real(long v, prec_t prec);
  Real(int v, prec_t prec) : Real(static_cast<long>(v), prec) {}
  Real(long long v, prec_t prec) : Real(static_cast<long>(v), prec) {}
  Real(double v, prec_t prec);
  Real(const mpz_class& v, prec_t prec);
  Real(const mpq_class& v, prec_t prec);
  Real(const std::string& dec, prec_t prec);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  prec_t prec() const { return mpfr_get_prec(v_); }
  Real with_prec(prec_t prec) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpz_class round() const;
  mpz_class floor() const;
  std::string str(int digits = 0) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Base-2 exponent; very negative for zero.
  long exponent() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator/(long a, const Real& b);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

Real pi(prec_t prec);
Real two_pi(prec_t prec);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real abs(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real root(const Real& x, unsigned long n);  // real n-th root, x >= 0 or n odd
Real ldexp(const Real& x, long e);
Real epsilon(prec_t bits, prec_t prec);  // 2^-bits at precision prec

class Complex {
 public:
  explicit Complex(prec_t prec = 64) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(const Real& re) : re_(re), im_(0L, re.prec()) {}
  Complex(long re, prec_t prec) : re_(re, prec), im_(0L, prec) {}
  Complex(int re, prec_t prec) : Complex(static_cast<long>(re), prec) {}
  Complex(long long re, prec_t prec) : Complex(static_cast<long>(re), prec) {}
  Complex(const mpq_class& re, prec_t prec) : re_(re, prec), im_(0L, prec) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  prec_t prec() const;
  std::pair<double, double> to_double() const { return {re_.to_double(), im_.to_double()}; }

  Complex operator-() const { return {-re_, -im_}; }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(const Real& b, const Complex& a) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator*(const Complex& a, long b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(long b, const Complex& a) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator/(const Complex& a, long b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator+(const Complex& a, long b) { return {a.re_ + b, a.im_}; }
  friend Complex operator-(const Complex& a, long b) { return {a.re_ - b, a.im_}; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

 private:
  Real re_, im_;
};

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);
Complex pow(const Complex& z, const Real& e);
// k-th branch of the n-th root: |z|^(1/n) exp(i (arg z + 2 pi k) / n)
Complex nth_root(const Complex& z, long n, long k = 0);
Complex expi(const Real& theta);                  // e^{i theta}
Complex root_of_unity(long n, long k, prec_t prec);  // e^{2 pi i k / n}
Complex I(prec_t prec);
Complex change_prec(const Complex& z, prec_t prec);
std::string str(const Complex& z, int digits = 0);

// |a - b| / max(|b|, 1)
Real rel_diff(const Complex& a, const Complex& b);

}  // namespace cmdir
