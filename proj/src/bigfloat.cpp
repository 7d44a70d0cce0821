#include "cmdir/bigfloat.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace cmdir {

namespace {
prec_t pmin(const Real& a, const Real& b) { return std::min(a.prec(), b.prec()); }
}  // namespace

Real::Real(prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
Real::Real(long v, prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(double v, prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, v, MPFR_RNDN); }
Real::Real(const mpz_class& v, prec_t prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN); }
Real::Real(const mpq_class& v, prec_t prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN); }
Real::Real(const std::string& dec, prec_t prec) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, dec.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: " + dec);
  }
}
Real::Real(const Real& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real Real::with_prec(prec_t prec) const {
  Real r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

mpz_class Real::round() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

mpz_class Real::floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

std::string Real::str(int digits) const {
  char* buf = nullptr;
  if (digits <= 0) digits = static_cast<int>(prec() * 0.30103);
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_);
}

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) {
  Real r(pmin(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(pmin(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(pmin(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(pmin(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r(a.prec());
  mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r(a.prec());
  mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r(b.prec());
  mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.prec());
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, long b) {
  Real r(a.prec());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator/(long a, const Real& b) {
  Real r(b.prec());
  mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

Real pi(prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}
Real two_pi(prec_t prec) { return pi(prec) * 2; }

#define CMDIR_UNARY(name, fn)          \
  Real name(const Real& x) {           \
    Real r(x.prec());                  \
    fn(r.get(), x.get(), MPFR_RNDN);   \
    return r;                          \
  }
CMDIR_UNARY(sqrt, mpfr_sqrt)
CMDIR_UNARY(cbrt, mpfr_cbrt)
CMDIR_UNARY(exp, mpfr_exp)
CMDIR_UNARY(log, mpfr_log)
CMDIR_UNARY(sin, mpfr_sin)
CMDIR_UNARY(cos, mpfr_cos)
CMDIR_UNARY(abs, mpfr_abs)
#undef CMDIR_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(pmin(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, const Real& y) {
  Real r(pmin(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, long n) {
  Real r(x.prec());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}
Real root(const Real& x, unsigned long n) {
  Real r(x.prec());
  mpfr_rootn_ui(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}
Real ldexp(const Real& x, long e) {
  Real r(x.prec());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
Real epsilon(prec_t bits, prec_t prec) { return ldexp(Real(1L, prec), -static_cast<long>(bits)); }

prec_t Complex::prec() const { return std::min(re_.prec(), im_.prec()); }

Complex& Complex::operator+=(const Complex& o) {
  re_ = re_ + o.re_;
  im_ = im_ + o.im_;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re_ = re_ - o.re_;
  im_ = im_ - o.im_;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) { return *this = *this * o; }
Complex& Complex::operator/=(const Complex& o) { return *this = *this / o; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}
Complex operator/(const Complex& a, const Complex& b) {
  Real d = norm(b);
  if (d.is_zero()) throw std::domain_error("complex division by zero");
  return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
}

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }
Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }
Real abs(const Complex& z) {
  Real r(z.prec());
  mpfr_hypot(r.get(), z.re().get(), z.im().get(), MPFR_RNDN);
  return r;
}
Real arg(const Complex& z) { return atan2(z.im(), z.re()); }
Complex expi(const Real& t) { return {cos(t), sin(t)}; }
Complex exp(const Complex& z) {
  Real m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}
Complex log(const Complex& z) {
  if (z.is_zero()) throw std::domain_error("log of zero");
  return {log(abs(z)), arg(z)};
}
Complex sqrt(const Complex& z) {
  if (z.is_zero()) return z;
  Real m = abs(z);
  Real a = sqrt((m + z.re()) / 2);
  Real b = sqrt((m - z.re()) / 2);
  if (z.im().sign() < 0) b = -b;
  return {a, b};
}
Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(1L, z.prec()) / pow(z, -n);
  Complex r(1L, z.prec()), b = z;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}
Complex pow(const Complex& z, const Real& e) {
  if (z.is_zero()) return z;
  return exp(log(z) * e);
}
Complex nth_root(const Complex& z, long n, long k) {
  if (n <= 0) throw std::invalid_argument("nth_root: n must be positive");
  prec_t pr = z.prec();
  if (z.is_zero()) return z;
  Real m = root(abs(z), static_cast<unsigned long>(n));
  Real t = (arg(z) + two_pi(pr) * k) / n;
  return expi(t) * m;
}
Complex root_of_unity(long n, long k, prec_t prec) {
  long kk = ((k % n) + n) % n;
  if (kk == 0) return Complex(1L, prec);
  if (2 * kk == n) return Complex(-1L, prec);
  if (4 * kk == n) return {Real(0L, prec), Real(1L, prec)};
  if (4 * kk == 3 * n) return {Real(0L, prec), Real(-1L, prec)};
  return expi(two_pi(prec) * kk / n);
}
Complex I(prec_t prec) { return {Real(0L, prec), Real(1L, prec)}; }
Complex change_prec(const Complex& z, prec_t prec) { return {z.re().with_prec(prec), z.im().with_prec(prec)}; }

std::string str(const Complex& z, int digits) {
  return "(" + z.re().str(digits) + ", " + z.im().str(digits) + ")";
}

Real rel_diff(const Complex& a, const Complex& b) {
  Real d = abs(a - b);
  Real s = abs(b);
  if (s < Real(1L, s.prec())) return d;
  return d / s;
}

}  // namespace cmdir
