#include "cmdir/gross.hpp"

#include <stdexcept>

namespace cmdir {

namespace {

std::optional<mpz_class> near_integer(const Complex& z, prec_t prec) {
  mpz_class r = z.re().round();
  Complex diff = z - Complex(Real(r, z.prec()));
  Real scale = Real(1L, z.prec()) + abs(z);
  if (abs(diff) > epsilon(prec / 2, z.prec()) * scale) return std::nullopt;
  return r;
}

std::optional<GrossIntegers> recognize(const GrossCurveData& g, prec_t prec) {
  auto j = near_integer(g.j0, prec);
  if (!j) return std::nullopt;
  GrossIntegers e;
  e.j0 = *j;
  mpz_class m;
  mpz_root(m.get_mpz_t(), mpz_class(abs(e.j0)).get_mpz_t(), 3);
  if (e.j0 < 0) m = -m;
  if (m * m * m != e.j0) return std::nullopt;
  mpz_class num = e.j0 - 1728;
  const long p = static_cast<long>(g.p);
  if (num % (-p) != 0) return std::nullopt;
  mpz_class sq = num / (-p), n;
  if (sq < 0) return std::nullopt;
  mpz_sqrt(n.get_mpz_t(), sq.get_mpz_t());
  if (n * n != sq) return std::nullopt;
  if (legendre(2, g.p) == -1) n = -n;
  e.m = m;
  e.n = n;
  e.c4 = -m * p;
  e.c6 = n * p * p;
  mpz_class d = e.c4 * e.c4 * e.c4 - e.c6 * e.c6;
  if (d % 1728 != 0) return std::nullopt;
  e.disc = d / 1728;
  auto model = model_from_invariants(e.c4, e.c6);
  if (!model) throw std::logic_error("gross_curve: no integral model for recognized invariants");
  e.a = *model;
  return e;
}

}  // namespace

GrossCurveData gross_curve(const FieldContext& k, prec_t prec) {
  const int attempts = 3;
  prec_t pr = prec;
  for (int t = 0; t < attempts; ++t, pr *= 2) {
    GrossCurveData g;
    g.p = k.p();
    g.h = k.class_number();
    g.prec = pr;
    g.j0 = Complex(j_invariant(k, k.unit_ideal(), pr).re());
    Real j = g.j0.re();
    g.m = Complex(cbrt(j));
    Real sq = (j - 1728L) / Real(static_cast<long>(-g.p), pr);
    Real n = sqrt(sq);
    if (legendre(2, g.p) == -1) n = -n;
    g.n = Complex(n);
    g.c4 = g.m * static_cast<long>(-g.p);
    g.c6 = g.n * static_cast<long>(g.p * g.p);
    g.disc = (pow(g.c4, 3L) - g.c6 * g.c6) / 1728L;
    if (g.h > 1) return g;
    g.exact = recognize(g, pr);
    if (g.exact) return g;
  }
  throw std::runtime_error("gross_curve: integer recognition failed after precision escalation");
}

std::optional<std::array<mpz_class, 5>> model_from_invariants(const mpz_class& c4, const mpz_class& c6) {
  // b2 = -c6 mod 12 in [-5, 6]; then b4, b6 and the a_i must be integral.
  mpz_class b2 = -c6 % 12;
  if (b2 < 0) b2 += 12;
  if (b2 > 6) b2 -= 12;
  mpz_class t = b2 * b2 - c4;
  if (t % 24 != 0) return std::nullopt;
  mpz_class b4 = t / 24;
  t = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
  if (t % 216 != 0) return std::nullopt;
  mpz_class b6 = t / 216;
  mpz_class a1 = b2 % 2 != 0 ? 1 : 0;
  mpz_class a3 = b6 % 2 != 0 ? 1 : 0;
  mpz_class x = b2 - a1;
  if (x % 4 != 0) return std::nullopt;
  mpz_class a2 = x / 4;
  x = b4 - a1 * a3;
  if (x % 2 != 0) return std::nullopt;
  mpz_class a4 = x / 2;
  x = b6 - a3;
  if (x % 4 != 0) return std::nullopt;
  mpz_class a6 = x / 4;
  return std::array<mpz_class, 5>{a1, a2, a3, a4, a6};
}

long count_points(const std::array<mpz_class, 5>& a, long l) {
  auto r = [&](const mpz_class& v) {
    mpz_class m = v % l;
    if (m < 0) m += l;
    return m.get_si();
  };
  long a1 = r(a[0]), a2 = r(a[1]), a3 = r(a[2]), a4 = r(a[3]), a6 = r(a[4]);
  long count = 1;  // point at infinity
  for (long x = 0; x < l; ++x) {
    long rhs = ((x * x % l * x + a2 * x % l * x + a4 * x + a6) % l + l) % l;
    long lin = (a1 * x + a3) % l;
    for (long y = 0; y < l; ++y)
      if (((y * y + lin * y - rhs) % l + l) % l == 0) ++count;
  }
  return count;
}

Complex rho_unit(const Cocycle& c, const std::vector<Ideal>* reps) {
  const auto& rs = reps ? *reps : c.field().class_reps();
  prec_t pr = c.prec();
  Complex rho(1L, pr);
  for (const auto& b : rs) rho = rho * c.delta(b) / sqrt(Real(static_cast<long>(b.norm()), pr));
  return rho;
}

Real rho_norm_abs(const Cocycle& c) {
  const FieldContext& k = c.field();
  prec_t pr = c.prec();
  Real out(1L, pr);
  for (int s = 0; s < k.class_number(); ++s) {
    Complex r(1L, pr);
    for (const auto& b : k.class_reps()) r = r * c.delta_conjugate(s, b) / sqrt(Real(static_cast<long>(b.norm()), pr));
    out = out * abs(r);
  }
  return out;
}

PeriodData omega_period(const Cocycle& c, prec_t prec) {
  const FieldContext& k = c.field();
  i64 p = k.p();
  int h = k.class_number();
  prec_t wp = prec + kGuardBits;
  PeriodData pd;
  pd.h = h;
  pd.rho = change_prec(rho_unit(c), wp);
  Real rho = pd.rho.re();
  if (!(rho > Real(0L, wp))) throw std::logic_error("omega_period: rho is not positive");
  Real tp = two_pi(wp);
  Real val = rho * pow(tp, Real(mpq_class(static_cast<long>(2 * h + 1 - p), 4), wp)) *
             pow(Real(static_cast<long>(p), wp), Real(mpq_class(1 - 3 * h, 4), wp));
  for (i64 m = 1; m < p; ++m)
    if (legendre(m, p) == 1) val = val * gamma_fn(mpq_class(static_cast<long>(m), static_cast<long>(p)), wp);
  Real mag = root(val, static_cast<unsigned long>(h));
  // i^{(p+1)/4} times a positive real; the sign is normalized away
  pd.real = ((p + 1) / 4) % 2 == 0;
  pd.omega = pd.real ? Complex(mag, Real(0L, wp)) : Complex(Real(0L, wp), mag);
  Complex om = embed(k, {0, 1}, wp);
  pd.lattice = LatticeBasis{pd.omega, pd.omega * om};
  pd.lattice_delta = change_prec(delta_of_lattice(pd.lattice, wp), prec);
  pd.omega = change_prec(pd.omega, prec);
  pd.rho = change_prec(pd.rho, prec);
  pd.lattice = LatticeBasis{change_prec(pd.lattice.omega1, prec), change_prec(pd.lattice.omega2, prec)};
  return pd;
}

PeriodCheck period_cross_check(const GrossCurveData& gc, const PeriodData& pd, prec_t prec) {
  PeriodCheck r;
  LatticeBasis agm = agm_real_period(change_prec(gc.c4, prec), change_prec(gc.c6, prec), prec);
  LatticeBasis om = pd.lattice.oriented().reduced();
  Real dist = lattice_distance(agm, om);
  auto show = [](const LatticeBasis& b) { return "[" + str(b.omega1, 25) + ", " + str(b.omega2, 25) + "]"; };
  r.agm_lattice = show(agm);
  r.omega_lattice = show(om);
  r.relative_error = dist.sign() < 0 ? 1.0 : dist.to_double();
  r.pass = dist.sign() >= 0 && r.relative_error < 1e-30;
  return r;
}

double chowla_selberg_residual(const FieldContext& k, prec_t prec) {
  i64 p = k.p();
  int h = k.class_number();
  Real tp = two_pi(prec);
  Real lhs(1L, prec);
  for (const auto& f : k.reduced_forms()) {
    Complex tau(Real(static_cast<long>(-f.b), prec) / static_cast<long>(2 * f.a),
                sqrt(Real(static_cast<long>(p), prec)) / static_cast<long>(2 * f.a));
    Complex delta = pow(dedekind_eta(tau, prec), 24L) * pow(tp, 12L);
    lhs = lhs * abs(delta) / pow(Real(static_cast<long>(f.a), prec), 6L);
  }
  Real rhs = pow(tp / static_cast<long>(p), 6L * h);
  for (i64 m = 1; m < p; ++m) {
    Real g = pow(gamma_fn(mpq_class(static_cast<long>(m), static_cast<long>(p)), prec), 6L);
    rhs = legendre(m, p) == 1 ? rhs * g : rhs / g;
  }
  return abs(lhs / rhs - 1L).to_double();
}

double gauss_gamma_residual(long n, prec_t prec) {
  Real prod(1L, prec);
  for (long i = 1; i < n; ++i) prod = prod * gamma_fn(mpq_class(i, n), prec);
  Real expect = pow(two_pi(prec), Real(mpq_class(n - 1, 2), prec)) / sqrt(Real(n, prec));
  return abs(prod / expect - 1L).to_double();
}

}  // namespace cmdir
