#include "cmdir/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "cmdir/quadfield.hpp"

namespace cmdir {

namespace {

ZPoly poly_div_exact(ZPoly num, const ZPoly& den) {
  // den monic
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(num.size()) - 1;
  ZPoly q(std::max(nn - dn + 1, 1), 0);
  for (int i = nn; i >= dn; --i) {
    mpz_class c = num[i];
    if (c == 0) continue;
    q[i - dn] = c;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (int i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

// Remainder of f modulo a monic integer polynomial.
QPoly poly_rem(QPoly f, const ZPoly& m) {
  int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(f.size()) - 1; i >= dm; --i) {
    if (f[i] == 0) continue;
    mpq_class c = f[i];
    for (int j = 0; j <= dm; ++j) f[i - dm + j] -= c * m[j];
  }
  f.resize(std::min<std::size_t>(f.size(), dm));
  f.resize(dm, 0);
  return f;
}

struct CycloData {
  int n = 1, phi = 1;
  ZPoly Phi;
  std::vector<QVector> xpow;  // zeta^k in the power basis, 0 <= k < n
};

const CycloData& data(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto d = std::make_unique<CycloData>();
  d->n = n;
  d->Phi = cyclotomic_poly(n);
  d->phi = static_cast<int>(d->Phi.size()) - 1;
  for (int k = 0; k < n; ++k) {
    QPoly f(k + 1, 0);
    f[k] = 1;
    d->xpow.push_back(poly_rem(f, d->Phi));
  }
  auto& ref = *d;
  cache[n] = std::move(d);
  return ref;
}

}  // namespace

ZPoly cyclotomic_poly(int k) {
  if (k < 1) throw std::invalid_argument("cyclotomic_poly: k must be positive");
  static std::mutex mu;
  static std::map<int, ZPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  ZPoly f(k + 1, 0);
  f[0] = -1;
  f[k] = 1;
  for (int d = 1; d < k; ++d)
    if (k % d == 0) f = poly_div_exact(f, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(mu);
  cache[k] = f;
  return f;
}

std::string to_string(const ZPoly& f) {
  std::string s;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!s.empty()) s += f[i] > 0 ? " + " : " - ";
    else if (f[i] < 0) s += "-";
    mpz_class a = abs(f[i]);
    if (a != 1 || i == 0) s += a.get_str();
    if (i > 0) s += i == 1 ? "X" : "X^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

CycloElem::CycloElem(int n) : n_(n), c_(data(n).phi, 0) {
  if (n < 1) throw std::invalid_argument("CycloElem: modulus must be positive");
}

CycloElem::CycloElem(int n, QVector coeffs) : n_(n) {
  const auto& d = data(n);
  for (auto& x : coeffs) x.canonicalize();
  c_ = poly_rem(std::move(coeffs), d.Phi);
}

CycloElem CycloElem::rational(int n, const mpq_class& q) {
  CycloElem e(n);
  e.c_[0] = q;
  return e;
}

CycloElem CycloElem::zeta(int n, long k) {
  CycloElem e(n);
  e.c_ = data(n).xpow[mod(k, n)];
  return e;
}

CycloElem CycloElem::operator-() const {
  CycloElem r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  if (o.n_ != n_) throw std::invalid_argument("CycloElem: modulus mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  if (o.n_ != n_) throw std::invalid_argument("CycloElem: modulus mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("CycloElem: modulus mismatch");
  const auto& d = data(a.n_);
  std::size_t m = a.c_.size();
  QVector raw(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
  }
  CycloElem r(a.n_);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == 0) continue;
    if (i < m) {
      r.c_[i] += raw[i];
      continue;
    }
    const auto& row = d.xpow[i % d.n];
    for (std::size_t j = 0; j < m; ++j)
      if (row[j] != 0) r.c_[j] += raw[i] * row[j];
  }
  return r;
}

CycloElem operator*(const CycloElem& a, const mpq_class& s) {
  CycloElem r = a;
  for (auto& x : r.c_) x *= s;
  return r;
}

bool CycloElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

bool CycloElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& x) { return x == 0; });
}

CycloElem CycloElem::inverse() const {
  if (is_zero()) throw std::domain_error("CycloElem: inverse of zero");
  // Solve (multiplication by *this) y = 1.
  std::size_t m = c_.size();
  QMatrix mat(m, QVector(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    CycloElem col = *this * zeta(n_, static_cast<long>(j));
    for (std::size_t i = 0; i < m; ++i) mat[i][j] = col.c_[i];
  }
  QMatrix inv = cmdir::inverse(mat);
  CycloElem r(n_);
  for (std::size_t i = 0; i < m; ++i) r.c_[i] = inv[i][0];
  return r;
}

CycloElem CycloElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloElem r = one(n_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Complex CycloElem::embed(prec_t prec) const {
  Complex z = root_of_unity(n_, 1, prec);
  Complex acc(0L, prec);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + Complex(c_[i], prec);
  return acc;
}

std::string CycloElem::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
    else if (c_[i] < 0) s += "-";
    mpq_class a = abs(c_[i]);
    if (a != 1 || i == 0) s += a.get_str() + (i ? "*" : "");
    if (i > 0) s += i == 1 ? "z" : "z^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

CycloElem galois_apply(long j, const CycloElem& x) {
  int n = x.modulus();
  if (std::gcd(mod(j, n), static_cast<long>(n)) != 1 && n > 1)
    throw std::invalid_argument("galois_apply: exponent not coprime to modulus");
  const auto& d = data(n);
  QVector out(x.degree(), 0);
  for (int i = 0; i < x.degree(); ++i) {
    const mpq_class& c = x.coeffs()[i];
    if (c == 0) continue;
    const auto& row = d.xpow[mod(static_cast<i64>(i) * j, n)];
    for (int t = 0; t < x.degree(); ++t)
      if (row[t] != 0) out[t] += c * row[t];
  }
  return CycloElem(n, out);
}

CycloElem lift(const CycloElem& x, int N) {
  int n = x.modulus();
  if (N % n != 0) throw std::invalid_argument("lift: modulus does not divide target");
  int step = N / n;
  CycloElem r(N);
  for (int i = 0; i < x.degree(); ++i)
    if (x.coeffs()[i] != 0) r += CycloElem::zeta(N, static_cast<long>(i) * step) * x.coeffs()[i];
  return r;
}

CycloElem sqrt_minus_p(int p) {
  QVector c(p, 0);
  for (int a = 1; a < p; ++a) c[a] = static_cast<long>(legendre(a, p));
  return CycloElem(p, c);
}

CycloElem quad_in_cyclo(int p, long a, long b, int N) {
  CycloElem g = lift(sqrt_minus_p(p), N);
  CycloElem w = (CycloElem::one(N) + g) * mpq_class(1, 2);
  return CycloElem::rational(N, a) + w * mpq_class(b);
}

long mult_order(long j, long n) {
  if (n == 1) return 1;
  long x = mod(j, n), k = 1, y = x;
  if (std::gcd(x, n) != 1) throw std::invalid_argument("mult_order: not a unit");
  while (y != 1 % n) {
    y = mod(static_cast<i64>(y) * x, n);
    ++k;
  }
  return k;
}

GroupAlgebraElem::GroupAlgebraElem(int k) : k_(k), a_(k, 0) {
  if (k < 1) throw std::invalid_argument("GroupAlgebraElem: k must be positive");
}

GroupAlgebraElem GroupAlgebraElem::from_coeffs(int k, const QVector& a) {
  if (static_cast<int>(a.size()) != k) throw std::invalid_argument("from_coeffs: need k coefficients");
  GroupAlgebraElem g(k);
  for (int i = 1; i <= k; ++i) {
    g.coeff(i) = a[i - 1];
    g.coeff(i).canonicalize();
  }
  return g;
}

GroupAlgebraElem GroupAlgebraElem::from_poly(int k, const QPoly& f) {
  GroupAlgebraElem g(k);
  for (std::size_t i = 0; i < f.size(); ++i) g.coeff(static_cast<long>(i)) += mpq_class(f[i]);
  for (int i = 0; i < k; ++i) g.coeff(i).canonicalize();
  return g;
}

GroupAlgebraElem GroupAlgebraElem::one(int k) { return x_power(k, 0); }

GroupAlgebraElem GroupAlgebraElem::x_power(int k, long e) {
  GroupAlgebraElem g(k);
  g.coeff(e) = 1;
  return g;
}

const mpq_class& GroupAlgebraElem::coeff(long i) const { return a_[mod(i, k_)]; }
mpq_class& GroupAlgebraElem::coeff(long i) { return a_[mod(i, k_)]; }

QPoly GroupAlgebraElem::as_poly() const { return a_; }

GroupAlgebraElem operator+(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  if (a.k_ != b.k_) throw std::invalid_argument("GroupAlgebraElem: degree mismatch");
  GroupAlgebraElem r = a;
  for (int i = 0; i < a.k_; ++i) r.a_[i] += b.a_[i];
  return r;
}

GroupAlgebraElem operator-(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  if (a.k_ != b.k_) throw std::invalid_argument("GroupAlgebraElem: degree mismatch");
  GroupAlgebraElem r = a;
  for (int i = 0; i < a.k_; ++i) r.a_[i] -= b.a_[i];
  return r;
}

GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  if (a.k_ != b.k_) throw std::invalid_argument("GroupAlgebraElem: degree mismatch");
  GroupAlgebraElem r(a.k_);
  for (int i = 0; i < a.k_; ++i) {
    if (a.a_[i] == 0) continue;
    for (int j = 0; j < a.k_; ++j) r.a_[(i + j) % a.k_] += a.a_[i] * b.a_[j];
  }
  return r;
}

bool GroupAlgebraElem::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpq_class& x) { return x == 0; });
}

Complex GroupAlgebraElem::eval(const Complex& x) const {
  Complex acc(0L, x.prec());
  for (int i = k_; i-- > 0;) acc = acc * x + Complex(a_[i], x.prec());
  return acc;
}

CyclicModule CyclicModule::cyclotomic(int p, long j) {
  long k = mult_order(j, p);
  if (2 * k != p - 1 || legendre(j, p) != 1)
    throw std::invalid_argument("cyclotomic module: tau must generate Gal(Q(zeta_p)/K)");
  CyclicModule m;
  m.k = static_cast<int>(k);
  m.tau.assign(k, QVector(k, 0));
  for (long i = 0; i < k; ++i) m.tau[(i + 1) % k][i] = 1;
  return m;
}

CyclicModule CyclicModule::change_basis(const QMatrix& b) const {
  CyclicModule m;
  m.k = k;
  m.tau = matmul(inverse(b), matmul(tau, b));
  return m;
}

CycloElem theta_apply(const GroupAlgebraElem& f, long j, const CycloElem& u) {
  long ord = mult_order(j, u.modulus());
  if (ord != f.k()) throw std::invalid_argument("theta_apply: tau has order " + std::to_string(ord) +
                                                ", expected " + std::to_string(f.k()));
  CycloElem acc = CycloElem::zero(u.modulus());
  CycloElem t = u;  // tau^0 u
  for (int i = 0; i < f.k(); ++i) {
    if (f.coeff(i) != 0) acc += t * f.coeff(i);
    t = galois_apply(j, t);
  }
  return acc;
}

QMatrix theta_matrix(const GroupAlgebraElem& f, const CyclicModule& m) {
  if (m.k != f.k()) throw std::invalid_argument("theta_matrix: order mismatch");
  std::size_t n = m.tau.size();
  QMatrix acc(n, QVector(n, 0)), t = qidentity(n);
  for (int i = 0; i < f.k(); ++i) {
    if (f.coeff(i) != 0) acc = add(acc, scale(t, f.coeff(i)));
    t = matmul(m.tau, t);
  }
  return acc;
}

void sort_lex(std::vector<Complex>& v) {
  if (v.empty()) return;
  Real tol = epsilon(v[0].prec() / 2, v[0].prec());
  std::stable_sort(v.begin(), v.end(), [&](const Complex& a, const Complex& b) {
    Real dr = a.re() - b.re();
    if (abs(dr) > tol) return dr.sign() < 0;
    Real di = a.im() - b.im();
    if (abs(di) > tol) return di.sign() < 0;
    return false;
  });
}

std::vector<long> theta_zero_orders(const GroupAlgebraElem& f) {
  std::vector<long> out;
  QPoly p = f.as_poly();
  for (i64 e : divisors(f.k())) {
    QPoly r = poly_rem(p, cyclotomic_poly(static_cast<int>(e)));
    if (std::all_of(r.begin(), r.end(), [](const mpq_class& x) { return x == 0; })) out.push_back(e);
  }
  return out;
}

ThetaSpectrum theta_char_poly(const GroupAlgebraElem& f, prec_t prec) {
  ThetaSpectrum s;
  int k = f.k();
  for (int i = 1; i <= k; ++i) s.values.push_back(f.eval(root_of_unity(k, i, prec)));
  // (-1)^k prod (X - v)
  std::vector<Complex> c{Complex(1L, prec)};
  for (const auto& v : s.values) {
    std::vector<Complex> nc(c.size() + 1, Complex(0L, prec));
    for (std::size_t j = 0; j < c.size(); ++j) {
      nc[j + 1] += c[j];
      nc[j] -= c[j] * v;
    }
    c = std::move(nc);
  }
  if (k % 2) for (auto& x : c) x = -x;
  s.charpoly = std::move(c);
  sort_lex(s.values);
  for (long e : theta_zero_orders(f)) s.kernel_dim += static_cast<int>(euler_phi(e));
  return s;
}

ThetaKernel theta_kernel_image(const GroupAlgebraElem& f, const CyclicModule& m) {
  int k = f.k();
  ZPoly q(k + 1, 0);
  q[0] = -1;
  q[k] = 1;
  int zeros = 0;
  for (long e : theta_zero_orders(f)) {
    q = poly_div_exact(q, cyclotomic_poly(static_cast<int>(e)));
    zeros += static_cast<int>(euler_phi(e));
  }
  QPoly qq(q.begin(), q.end());
  ThetaKernel out{GroupAlgebraElem::from_poly(k, qq), zeros, false, 0};
  QMatrix tf = theta_matrix(f, m), tq = theta_matrix(out.quotient, m);
  QMatrix prod = matmul(tf, tq);
  out.image_in_kernel = std::all_of(prod.begin(), prod.end(), [](const QVector& r) {
    return std::all_of(r.begin(), r.end(), [](const mpq_class& x) { return x == 0; });
  });
  out.image_dim = rank(tq);
  return out;
}

}  // namespace cmdir
