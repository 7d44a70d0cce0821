#include "cmdir/analytic.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace cmdir {

namespace {

Complex two_pi_i_tau_exp(const Complex& tau, const Real& scale) {
  // exp(2 pi i tau * scale)
  prec_t pr = tau.prec();
  Real tp = two_pi(pr) * scale;
  return exp(Complex(-tau.im() * tp, tau.re() * tp));
}

void require_upper(const Complex& tau, const char* who) {
  if (tau.im().sign() <= 0) throw std::domain_error(std::string(who) + ": Im(tau) must be positive");
}

}  // namespace

LatticeBasis LatticeBasis::oriented() const {
  if (omega1.is_zero() || omega2.is_zero()) throw std::domain_error("lattice basis: zero vector");
  Complex t = omega2 / omega1;
  Real tol = epsilon(t.prec() - 8, t.prec()) * abs(t);
  if (abs(t.im()) <= tol) throw std::domain_error("lattice basis: degenerate (real ratio)");
  if (t.im().sign() > 0) return *this;
  return {omega2, omega1};
}

LatticeBasis LatticeBasis::reduced() const {
  LatticeBasis b = oriented();
  for (int it = 0; it < 10000; ++it) {
    Complex t = b.tau();
    mpz_class k = t.re().round();
    if (k != 0) {
      b.omega2 = b.omega2 - b.omega1 * Real(k, t.prec());
      t = b.tau();
    }
    if (norm(t) < Real(1L, t.prec()) - epsilon(t.prec() - 4, t.prec())) {
      Complex w1 = b.omega1;
      b.omega1 = b.omega2;
      b.omega2 = -w1;
      continue;
    }
    return b;
  }
  throw std::runtime_error("lattice reduction did not terminate");
}

Complex embed(const FieldContext& k, const QuadInt& x, prec_t prec) {
  Real sp = sqrt(Real(k.p(), prec));
  return {Real(x.a, prec) + Real(x.b, prec) / 2, sp * x.b / 2};
}

LatticeBasis ideal_lattice(const FieldContext& k, const Ideal& x, prec_t prec) {
  auto [alpha, beta] = reduced_basis(k, x);
  return {embed(k, alpha, prec), embed(k, beta, prec)};
}

Complex dedekind_eta(const Complex& tau_in, prec_t prec) {
  require_upper(tau_in, "dedekind_eta");
  prec_t wp = prec + kGuardBits;
  Complex tau = change_prec(tau_in, wp);
  Complex q = two_pi_i_tau_exp(tau, Real(1L, wp));
  Real eps = epsilon(wp, wp);
  Complex sum(1L, wp);
  Complex q3 = q * q * q;
  Complex t1 = q;      // q^{n(3n-1)/2} at n = 1
  Complex t2 = q * q;  // q^{n(3n+1)/2} at n = 1
  Complex step1 = q3 * q;      // q^{3n+1}
  Complex step2 = q3 * q * q;  // q^{3n+2}
  for (long n = 1;; ++n) {
    Complex term = t1 + t2;
    if (n % 2) sum -= term;
    else sum += term;
    if (abs(t1) < eps) break;
    t1 = t1 * step1;
    t2 = t2 * step2;
    step1 = step1 * q3;
    step2 = step2 * q3;
    if (n > 1000000) throw std::runtime_error("dedekind_eta: no convergence");
  }
  Complex q24 = two_pi_i_tau_exp(tau, Real(1L, wp) / 24);
  return change_prec(q24 * sum, prec);
}

namespace {

Complex eisenstein(const Complex& tau_in, prec_t prec, int power, long coeff) {
  require_upper(tau_in, "eisenstein");
  prec_t wp = prec + kGuardBits;
  Complex tau = change_prec(tau_in, wp);
  Complex q = two_pi_i_tau_exp(tau, Real(1L, wp));
  Real eps = epsilon(wp, wp);
  Complex qn = q, sum(0L, wp);
  for (long n = 1;; ++n) {
    Complex term = qn / (Complex(1L, wp) - qn);
    Real np = pow(Real(n, wp), static_cast<long>(power));
    sum += term * np;
    if (abs(qn) * np < eps) break;
    qn = qn * q;
    if (n > 1000000) throw std::runtime_error("eisenstein: no convergence");
  }
  return change_prec(Complex(1L, wp) + sum * coeff, prec);
}

}  // namespace

Complex eisenstein_e4(const Complex& tau, prec_t prec) { return eisenstein(tau, prec, 3, 240); }
Complex eisenstein_e6(const Complex& tau, prec_t prec) { return eisenstein(tau, prec, 5, -504); }

Complex delta_of_lattice(const LatticeBasis& basis, prec_t prec) {
  prec_t wp = prec + kGuardBits;
  LatticeBasis b{change_prec(basis.omega1, wp), change_prec(basis.omega2, wp)};
  b = b.reduced();
  Complex eta = dedekind_eta(b.tau(), wp);
  Complex f = Complex(two_pi(wp)) / b.omega1;
  return change_prec(pow(f, 12L) * pow(eta, 24L), prec);
}

Complex delta_of_ideal(const FieldContext& k, const Ideal& x, prec_t prec) {
  return delta_of_lattice(ideal_lattice(k, x, prec + kGuardBits), prec);
}

std::pair<Complex, Complex> lattice_invariants(const LatticeBasis& basis, prec_t prec) {
  prec_t wp = prec + kGuardBits;
  LatticeBasis b{change_prec(basis.omega1, wp), change_prec(basis.omega2, wp)};
  b = b.reduced();
  Complex f = Complex(two_pi(wp)) / b.omega1;
  Complex f2 = f * f;
  Complex f4 = f2 * f2;
  Complex g2 = f4 * eisenstein_e4(b.tau(), wp) / 12;
  Complex g3 = f4 * f2 * eisenstein_e6(b.tau(), wp) / 216;
  return {change_prec(g2, prec), change_prec(g3, prec)};
}

namespace {
Complex reduce_tau(const Complex& tau) {
  LatticeBasis b{Complex(1L, tau.prec()), tau};
  return b.reduced().tau();
}
}  // namespace

Complex j_of_tau(const Complex& tau_in, prec_t prec) {
  require_upper(tau_in, "j_of_tau");
  prec_t wp = prec + kGuardBits;
  Complex tau = reduce_tau(change_prec(tau_in, wp));
  Complex e4 = eisenstein_e4(tau, wp);
  Complex eta = dedekind_eta(tau, wp);
  return change_prec(e4 * e4 * e4 / pow(eta, 24L), prec);
}

Complex j_of_tau_eisenstein(const Complex& tau_in, prec_t prec) {
  require_upper(tau_in, "j_of_tau_eisenstein");
  prec_t wp = prec + kGuardBits;
  Complex tau = reduce_tau(change_prec(tau_in, wp));
  Complex e4 = eisenstein_e4(tau, wp);
  Complex e6 = eisenstein_e6(tau, wp);
  Complex e43 = e4 * e4 * e4;
  return change_prec(e43 * 1728L / (e43 - e6 * e6), prec);
}

Complex j_invariant(const FieldContext& k, const Ideal& x, prec_t prec) {
  LatticeBasis b = ideal_lattice(k, x, prec + kGuardBits);
  return j_of_tau(b.tau(), prec);
}

Complex j_invariant_eisenstein(const FieldContext& k, const Ideal& x, prec_t prec) {
  LatticeBasis b = ideal_lattice(k, x, prec + kGuardBits);
  return j_of_tau_eisenstein(b.tau(), prec);
}

namespace {

// B_0, B_1, ..., B_m via sum_{j<=m} C(m+1, j) B_j = 0.
const std::vector<mpq_class>& bernoulli(std::size_t m) {
  static std::mutex mu;
  static std::vector<mpq_class> b{1};
  std::lock_guard<std::mutex> lock(mu);
  while (b.size() <= m) {
    std::size_t n = b.size();
    mpq_class s = 0;
    mpz_class binom = 1;  // C(n+1, j)
    for (std::size_t j = 0; j < n; ++j) {
      s += binom * b[j];
      binom = binom * static_cast<unsigned long>(n + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    b.push_back(-s / static_cast<long>(n + 1));
  }
  return b;
}

}  // namespace

Real log_gamma_positive(const Real& z) {
  if (z.sign() <= 0) throw std::domain_error("log_gamma_positive: argument must be positive");
  prec_t pr = z.prec();
  Real eps = epsilon(pr + 8, pr);
  Real res = (z - Real(mpq_class(1, 2), pr)) * log(z) - z + log(two_pi(pr)) / 2;
  Real zinv = 1L / z, z2inv = zinv * zinv, zp = zinv;
  for (long k = 1;; ++k) {
    const auto& b = bernoulli(2 * k);
    Real term = Real(b[2 * k], pr) / (2 * k * (2 * k - 1)) * zp;
    res += term;
    if (abs(term) < eps * abs(res)) break;
    zp = zp * z2inv;
    if (k > 4000) throw std::runtime_error("log_gamma: Stirling series did not converge");
  }
  return res;
}

Real gamma_fn(const mpq_class& x, prec_t prec) {
  if (x <= 0) throw std::domain_error("gamma_fn: argument must be positive");
  prec_t wp = prec + kGuardBits;
  double zmin = 0.3 * static_cast<double>(wp) + 10;
  Real xr(x, wp);
  long shift = 0;
  while (x.get_d() + shift < zmin) ++shift;
  Real prod(1L, wp);
  for (long i = 0; i < shift; ++i) prod = prod * (xr + i);
  Real g = exp(log_gamma_positive(xr + shift)) / prod;
  return g.with_prec(prec);
}

Complex agm(Complex a, Complex b, prec_t prec) {
  Real eps = epsilon(prec - 6, prec);
  Real scale = abs(a) + abs(b);
  for (int it = 0; it < 10000; ++it) {
    // a = -b (or a zero argument) makes the mean collapse to 0
    if (abs(a) + abs(b) <= eps * scale) return Complex(0L, prec);
    if (abs(a - b) <= eps * abs(a)) return a;
    Complex an = (a + b) / 2;
    Complex bn = sqrt(a * b);
    if (abs(an - bn) > abs(an + bn)) bn = -bn;
    a = std::move(an);
    b = std::move(bn);
  }
  throw std::runtime_error("agm: no convergence");
}

std::pair<Real, Real> lattice_coordinates(const LatticeBasis& b, const Complex& v) {
  const Real &a11 = b.omega1.re(), &a12 = b.omega2.re(), &a21 = b.omega1.im(), &a22 = b.omega2.im();
  Real det = a11 * a22 - a12 * a21;
  Real s = (v.re() * a22 - a12 * v.im()) / det;
  Real t = (a11 * v.im() - a21 * v.re()) / det;
  return {s, t};
}

Real lattice_distance(const LatticeBasis& b, const LatticeBasis& other) {
  prec_t pr = b.omega1.prec();
  Real worst(0L, pr);
  mpz_class m[2][2];
  const Complex* vs[2] = {&other.omega1, &other.omega2};
  for (int i = 0; i < 2; ++i) {
    auto [s, t] = lattice_coordinates(b, *vs[i]);
    m[i][0] = s.round();
    m[i][1] = t.round();
    Complex recon = b.omega1 * Real(m[i][0], pr) + b.omega2 * Real(m[i][1], pr);
    Real d = abs(recon - *vs[i]) / abs(*vs[i]);
    if (d > worst) worst = d;
  }
  mpz_class det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det != 1 && det != -1) return Real(-1L, pr);
  return worst;
}

namespace {

std::vector<Complex> cubic_roots(const Complex& c1, const Complex& c0, prec_t prec) {
  // x^3 + c1 x + c0 by Durand-Kerner
  Real bound = Real(1L, prec) + abs(c1) + abs(c0);
  Complex seed(Real(mpq_class(2, 5), prec), Real(mpq_class(9, 10), prec));
  std::vector<Complex> r{seed * bound, seed * seed * bound, seed * seed * seed * bound};
  auto f = [&](const Complex& x) { return x * x * x + c1 * x + c0; };
  Real eps = epsilon(prec - 4, prec) * bound;
  for (int it = 0; it < 5000; ++it) {
    Real delta(0L, prec);
    for (int i = 0; i < 3; ++i) {
      Complex den(1L, prec);
      for (int j = 0; j < 3; ++j)
        if (j != i) den = den * (r[i] - r[j]);
      Complex step = f(r[i]) / den;
      r[i] -= step;
      Real s = abs(step);
      if (s > delta) delta = s;
    }
    if (delta < eps) return r;
  }
  throw std::runtime_error("cubic_roots: no convergence");
}

}  // namespace

LatticeBasis agm_real_period(const Complex& c4_in, const Complex& c6_in, prec_t prec) {
  prec_t wp = prec + kGuardBits;
  Complex c4 = change_prec(c4_in, wp), c6 = change_prec(c6_in, wp);
  Complex disc = (c4 * c4 * c4 - c6 * c6) / 1728;
  if (abs(disc) < epsilon(wp / 2, wp) * (abs(c4 * c4 * c4) + abs(c6 * c6) + Real(1L, wp)))
    throw std::domain_error("agm_real_period: singular curve");
  Complex g2 = c4 / 12, g3 = c6 / 216;
  auto e = cubic_roots(-g2 / 4, -g3 / 4, wp);
  Real pi_ = pi(wp);
  std::vector<Complex> cand;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    Complex a = sqrt(e[i] - e[j]), b = sqrt(e[i] - e[k]);
    for (int s = 0; s < 2; ++s) {
      Complex m = agm(a, s ? -b : b, wp);
      if (m.is_zero()) continue;
      Complex w = Complex(pi_) / m;
      cand.push_back(w);
      cand.push_back(w * I(wp));
    }
  }
  Real tol = epsilon(wp / 2, wp);
  Real scale = abs(g2) + abs(g3);
  for (std::size_t x = 0; x < cand.size(); ++x)
    for (std::size_t y = x + 1; y < cand.size(); ++y) {
      LatticeBasis lb{cand[x], cand[y]};
      Complex t = cand[y] / cand[x];
      if (abs(t.im()) < tol * abs(t)) continue;
      LatticeBasis r = lb.reduced();
      auto [h2, h3] = lattice_invariants(r, wp);
      if (abs(h2 - g2) + abs(h3 - g3) < tol * scale)
        return {change_prec(r.omega1, prec), change_prec(r.omega2, prec)};
    }
  throw std::runtime_error("agm_real_period: no AGM basis reproduces the invariants");
}

Real distance_to_integers(const FieldContext& k, const Complex& z, QuadInt* nearest) {
  prec_t pr = z.prec();
  Real y = z.im() * 2 / sqrt(Real(k.p(), pr));
  Real x = z.re() - y / 2;
  mpz_class xr = x.round(), yr = y.round();
  if (nearest) {
    if (!xr.fits_slong_p() || !yr.fits_slong_p()) throw std::overflow_error("distance_to_integers: too large");
    *nearest = {xr.get_si(), yr.get_si()};
  }
  Real dx = abs(x - Real(xr, pr)), dy = abs(y - Real(yr, pr));
  return dx > dy ? dx : dy;
}

}  // namespace cmdir
