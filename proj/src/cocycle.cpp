#include "cmdir/cocycle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cmdir/analytic.hpp"

namespace cmdir {

QuadInt delta_on_principal(const FieldContext& k, const QuadInt& a) {
  return k.jacobi_symbol_mod_p(a) == 1 ? a : -a;
}

namespace {

std::vector<Complex> elementary_symmetric(const std::vector<Complex>& v) {
  prec_t pr = v[0].prec();
  std::vector<Complex> e(v.size() + 1, Complex(0L, pr));
  e[0] = Complex(1L, pr);
  for (const auto& x : v)
    for (std::size_t i = v.size(); i > 0; --i) e[i] += e[i - 1] * x;
  return e;
}

double as_double(const Real& r) { return r.to_double(); }

// Test ideals for the delta certification: the representatives and a few
// small ideals in every class.
std::vector<Ideal> certification_ideals(const FieldContext& k) {
  std::vector<Ideal> out(k.class_reps().begin() + 1, k.class_reps().end());
  std::vector<int> per_class(k.class_number(), 0);
  for (i64 n = 2; n < 60; ++n)
    for (const auto& x : k.ideals_of_norm(n)) {
      int c = k.class_index(x);
      if (per_class[c] < 2 && std::find(out.begin(), out.end(), x) == out.end()) {
        out.push_back(x);
        ++per_class[c];
      }
    }
  return out;
}

}  // namespace

Complex Cocycle::delta(const Ideal& x) const {
  if (!k_->coprime_to_p(x)) throw std::domain_error("delta: ideal not coprime to p");
  int c = k_->class_index(x);
  const Ideal& r = k_->class_reps()[c];
  auto beta = k_->is_principal(k_->mul(x, k_->conj(r)));
  if (!beta) throw std::logic_error("delta: class bookkeeping failed");
  return embed(*k_, *beta, prec_) * values_[c] / r.norm();
}

Complex Cocycle::lambda(const Ideal& x) const {
  return Complex(x.norm(), prec_) / delta(k_->conj(x));
}

Complex Cocycle::delta_conjugate(int c, const Ideal& x) const {
  if (c == 0) return delta(x);
  Ideal rb = k_->conj(k_->class_reps()[c]);
  return delta(k_->mul(rb, x)) / delta(rb);
}

std::vector<Complex> Cocycle::delta_orbit(const Ideal& x) const {
  std::vector<Complex> v;
  for (int c = 0; c < k_->class_number(); ++c) v.push_back(delta_conjugate(c, x));
  return v;
}

std::optional<Cocycle> Cocycle::search(const FieldContext& k, prec_t prec, std::size_t* consistent) {
  int h = k.class_number();
  const auto& reps = k.class_reps();
  for (int c = 0; c < h; ++c)
    if (k.conj(reps[c]) != reps[k.class_inv(c)])
      throw std::logic_error("compute_delta: representatives not closed under conjugation");

  Cocycle base(k, prec);
  for (int c = 0; c < h; ++c) base.j_.push_back(j_invariant(k, k.conj(reps[c]), prec));
  base.values_.assign(h, Complex(1L, prec));
  base.report_.prec_used = prec;
  base.report_.root_choice.assign(h, 0);
  if (h == 1) {
    base.report_.candidates = base.report_.consistent = 1;
    base.report_.jacobi_ok = base.report_.capitulation_ok = true;
    *consistent = 1;
    return base;
  }

  Complex d0 = delta_of_ideal(k, k.unit_ideal(), prec);
  std::vector<Complex> roots(h, Complex(1L, prec));
  for (int c = 1; c < h; ++c) roots[c] = nth_root(d0 / delta_of_ideal(k, reps[c], prec), 12, 0);

  // Every delta value the certification needs, factored once: delta(y) =
  // coef(y) * values[class(y)].
  struct Factored {
    int cls;
    Complex coef;
  };
  auto factor = [&](const Ideal& y) {
    int c = k.class_index(y);
    auto beta = k.is_principal(k.mul(y, k.conj(reps[c])));
    return Factored{c, embed(k, *beta, prec) / reps[c].norm()};
  };
  auto tests = certification_ideals(k);
  // orbit[t][C] = (delta(conj r_C x_t), delta(conj r_C))
  std::vector<std::vector<std::pair<Factored, Factored>>> orbit(tests.size());
  for (std::size_t t = 0; t < tests.size(); ++t)
    for (int c = 0; c < h; ++c) {
      Ideal rb = k.conj(reps[c]);
      orbit[t].push_back({factor(k.mul(rb, tests[t])), factor(rb)});
    }
  std::vector<Factored> conj_f, direct_f;
  for (const auto& x : tests) {
    direct_f.push_back(factor(x));
    conj_f.push_back(factor(k.conj(x)));
  }
  std::vector<Complex> twelfth;
  for (const auto& x : tests) twelfth.push_back(d0 / delta_of_ideal(k, x, prec));

  Real tol = epsilon(prec / 2, prec);
  Complex z12 = root_of_unity(12, 1, prec);
  int free = (h - 1) / 2;
  std::vector<int> m(free, 0);
  std::optional<Cocycle> found;
  std::size_t count = 0, total = 0;
  for (;;) {
    ++total;
    std::vector<Complex> vals(h, Complex(1L, prec));
    for (int i = 0; i < free; ++i) {
      vals[i + 1] = roots[i + 1] * pow(z12, static_cast<long>(m[i]));
      vals[h - 1 - i] = conj(vals[i + 1]);
    }
    auto val = [&](const Factored& f) { return f.coef * vals[f.cls]; };
    bool ok = true;
    double integ = 0, conjres = 0, twres = 0;
    bool jac = true, cap = true;
    for (std::size_t t = 0; t < tests.size() && ok; ++t) {
      std::vector<Complex> v;
      for (const auto& [num, den] : orbit[t]) v.push_back(val(num) / val(den));
      auto e = elementary_symmetric(v);
      for (int i = 1; i <= h && ok; ++i) {
        Real dist = distance_to_integers(k, e[i]);
        Real sc = Real(1L, prec) + abs(e[i]);
        integ = std::max(integ, as_double(dist / sc));
        if (dist > tol * sc) ok = false;
      }
      Complex tr(0L, prec);
      for (int c = 0; c < h; ++c) tr += v[c] * base.j_[c];
      Real sc = Real(1L, prec) + abs(tr);
      if (distance_to_integers(k, tr) > tol * sc) ok = false;
      if (!ok) break;
      QuadInt nrm;
      distance_to_integers(k, e[h], &nrm);
      if (k.jacobi_symbol_mod_p(nrm) != 1) jac = false;
      if (k.principal(nrm) != k.pow(tests[t], h)) cap = false;
      Complex dx = val(direct_f[t]);
      conjres = std::max(conjres, as_double(abs(val(conj_f[t]) - conj(dx)) / abs(dx)));
      twres = std::max(twres, as_double(abs(pow(dx, 12L) - twelfth[t]) / abs(twelfth[t])));
    }
    if (ok && jac && cap) {
      ++count;
      if (!found) {
        Cocycle c(k, prec);
        c.values_ = vals;
        c.j_ = base.j_;
        auto& r = c.report_;
        r.prec_used = prec;
        r.root_choice.assign(h, 0);
        for (int i = 0; i < free; ++i) {
          r.root_choice[i + 1] = m[i];
          r.root_choice[h - 1 - i] = (12 - m[i]) % 12;  // conjugate root
        }
        r.integrality_residual = integ;
        r.conjugation_residual = conjres;
        r.twelfth_power_residual = twres;
        r.jacobi_ok = jac;
        r.capitulation_ok = cap;
        double rel = 0;
        for (int a = 0; a < h; ++a)
          for (int b = 0; b < h; ++b) {
            Ideal ab = k.mul(reps[a], reps[b]);
            Complex lhs = c.delta(ab);
            Complex rhs = c.delta(reps[a]) * c.delta_conjugate(k.class_inv(a), reps[b]);
            rel = std::max(rel, as_double(abs(lhs - rhs) / abs(lhs)));
          }
        r.relation_residual = rel;
        found = std::move(c);
      }
    }
    int i = 0;
    while (i < free && ++m[i] == 12) m[i++] = 0;
    if (i == free) break;
  }
  *consistent = count;
  if (found) {
    found->report_.candidates = total;
    found->report_.consistent = count;
  }
  return found;
}

Cocycle Cocycle::compute(const FieldContext& k, prec_t prec) {
  std::size_t consistent = 0;
  for (prec_t pr : {prec, 2 * prec}) {
    auto c = search(k, pr, &consistent);
    if (c && consistent == 1) {
      if (pr != prec) {
        // keep the caller's precision for downstream values
        Cocycle out = *c;
        return out;
      }
      return *c;
    }
  }
  throw std::runtime_error("compute_delta: no unique consistent twelfth-root assignment (" +
                           std::to_string(consistent) + " candidates) after precision escalation");
}

GaloisL::GaloisL(const FieldContext& k, i64 d)
    : k_(&k), h_(k.class_number()), d_(d), p_(k.p()), g_(primitive_root(k.p())) {
  canonical_eta(p_, d);  // validates d
  reps_.resize(size());
  for (int c = 0; c < h_; ++c) {
    const Ideal& r = k.class_reps()[c];
    i64 half = discrete_log(g_, r.norm(), p_) / 2;
    for (i64 j = 0; j < d_; ++j) {
      i64 i = mod(j - half, d_);
      i64 a = ipow_mod(g_, i, p_);
      reps_[index(c, j)] = k.mul(r, k.principal({a, 0}));
    }
  }
}

int GaloisL::artin(const Ideal& x) const {
  if (!k_->coprime_to_p(x)) throw std::domain_error("artin: ideal not coprime to p");
  i64 ind = discrete_log(g_, mod(x.norm(), p_), p_);
  if (ind % 2) throw std::logic_error("artin: norm is not a square mod p");
  return index(k_->class_index(x), ind / 2);
}

i64 GaloisL::cyclo_exponent(int x) const { return ipow_mod(g_, 2 * cyclo_part(x), p_); }

LElem act(const GaloisL& gal, int x, const LElem& u) {
  LElem out;
  out.reserve(u.size());
  for (int y = 0; y < gal.size(); ++y) out.push_back(u[gal.compose(y, x)]);
  return out;
}

LElem lmul(const LElem& a, const LElem& b) {
  LElem out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
  return out;
}

LElem ldiv(const LElem& a, const LElem& b) {
  LElem out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] / b[i]);
  return out;
}

LElem lscale(const LElem& a, const Complex& s) {
  LElem out;
  for (const auto& x : a) out.push_back(x * s);
  return out;
}

double lmax_abs(const LElem& a) {
  double m = 0;
  for (const auto& x : a) m = std::max(m, abs(x).to_double());
  return m;
}

CocycleSpace::CocycleSpace(const Cocycle& c, const EtaCharacter& chi, prec_t prec)
    : c_(&c), chi_(chi), prec_(prec), gal_(c.field(), chi.nebentypus_order()), fam_(c.field(), chi, prec) {
  const FieldContext& k = c.field();
  i64 p = k.p(), d = gal_.d();
  for (i64 i = 0; i < d; ++i) {
    i64 a = ipow_mod(gal_.g(), i, p);
    Ideal x = k.principal({a, 0});
    terms_.push_back({gal_.artin(x), trace_coefficient(x), embed(k, delta_on_principal(k, {a, 0}), prec)});
  }

  // Gaussian periods over T = <g^{2d}>, |T| = (p-1)/(2d)
  i64 e = (p - 1) / (2 * d);
  i64 gen_t = ipow_mod(gal_.g(), 2 * d, p);
  const auto& j = c.j_conjugates();
  Real js = abs(j[0]);
  Complex jscale = js > Real(1L, prec) ? Complex(Real(js.round(), prec)) : Complex(1L, prec);
  for (int i = 0; i < gal_.h(); ++i)
    for (i64 b = 0; b < d; ++b) {
      CycloElem period = CycloElem::zero(static_cast<int>(p));
      i64 start = ipow_mod(gal_.g(), 2 * b, p), t = 1;
      for (i64 m = 0; m < e; ++m) {
        period += CycloElem::zeta(static_cast<int>(p), start * t % p);
        t = t * gen_t % p;
      }
      LElem v = from_cyclo(period);
      for (int y = 0; y < gal_.size(); ++y) {
        Complex jp = pow(change_prec(j[gal_.class_part(y)], prec) / jscale, static_cast<long>(i));
        v[y] = v[y] * jp;
      }
      basis_.push_back(std::move(v));
    }
}

Real CocycleSpace::tolerance() const { return epsilon(prec_ / 2, prec_); }

LElem CocycleSpace::one() const { return LElem(gal_.size(), Complex(1L, prec_)); }

LElem CocycleSpace::from_k(const QuadInt& a) const {
  return LElem(gal_.size(), embed(c_->field(), a, prec_));
}

LElem CocycleSpace::from_cyclo(const CycloElem& x) const {
  i64 p = c_->field().p();
  if (x.modulus() != p) throw std::invalid_argument("from_cyclo: element must lie in Q(zeta_p)");
  i64 gen_t = ipow_mod(gal_.g(), 2 * gal_.d(), p);
  if (!(galois_apply(gen_t, x) == x)) throw std::invalid_argument("from_cyclo: element does not lie in L");
  LElem out;
  for (int y = 0; y < gal_.size(); ++y) out.push_back(galois_apply(gal_.cyclo_exponent(y), x).embed(prec_));
  return out;
}

LElem CocycleSpace::delta_tuple(const Ideal& x) const {
  std::vector<Complex> orb = c_->delta_orbit(x);
  LElem out;
  for (int y = 0; y < gal_.size(); ++y) out.push_back(change_prec(orb[gal_.class_part(y)], prec_));
  return out;
}

LElem CocycleSpace::lambda_tuple(const Ideal& x) const {
  LElem d = delta_tuple(c_->field().conj(x));
  LElem out;
  for (const auto& v : d) out.push_back(Complex(x.norm(), prec_) / v);
  return out;
}

Complex CocycleSpace::trace_coefficient(const Ideal& x) const {
  const FieldContext& k = c_->field();
  auto a = k.is_principal(x);
  if (!a) return Complex(0L, prec_);
  i64 e = chi_.exponent(k.residue(*a));
  Complex s(0L, prec_);
  for (i64 r = 1; r < chi_.order || (chi_.order == 1 && r == 1); ++r)
    if (gcd(r, chi_.order) == 1) s += root_of_unity(chi_.p - 1, mod(-r * e, chi_.p - 1), prec_);
  return s * static_cast<long>(k.class_number()) / embed(k, *a, prec_);
}

LElem CocycleSpace::twisted_coefficient(const LElem& u, const Ideal& x) const {
  int ax = gal_.artin(x);
  return ldiv(lmul(delta_tuple(x), act(gal_, gal_.inverse(ax), u)), u);
}

LElem CocycleSpace::lambda_twisted(const LElem& u, const Ideal& x) const {
  return ldiv(lmul(lambda_tuple(x), u), act(gal_, gal_.artin(x), u));
}

Complex CocycleSpace::g_sigma(std::size_t sigma, const LElem& u) const {
  Complex s(0L, prec_);
  for (int x = 0; x < gal_.size(); ++x) {
    const Ideal& a = gal_.representative(x);
    Complex t = c_->delta(a) * u[gal_.inverse(x)] / u[0];
    s += t / fam_.value(sigma, a);
  }
  return s;
}

LElem CocycleSpace::projector_apply(const LElem& u) const {
  LElem out(gal_.size(), Complex(0L, prec_));
  for (const auto& t : terms_) {
    Complex w = t.c * t.delta;
    LElem shifted = act(gal_, gal_.inverse(t.artin), u);
    for (int y = 0; y < gal_.size(); ++y) out[y] += w * shifted[y];
  }
  return out;
}

LElem CocycleSpace::trace_phi_tuple(const LElem& u) const { return ldiv(projector_apply(u), u); }

CMatrix CocycleSpace::projector_matrix() const {
  int n = gal_.size();
  CMatrix m = czeros(n, n, prec_);
  for (const auto& t : terms_) {
    Complex w = t.c * t.delta;
    int inv = gal_.inverse(t.artin);
    for (int y = 0; y < n; ++y) m[y][gal_.compose(y, inv)] += w;
  }
  return m;
}

TwistWitness CocycleSpace::make_modular() const {
  const FieldContext& k = c_->field();
  i64 p = k.p();
  Complex target(static_cast<long>(degree()), prec_);
  Real tol = tolerance() * static_cast<long>(degree());
  auto finish = [&](TwistWitness w) {
    w.trace = trace_phi(w.u);
    return w;
  };
  auto modular = [&](const LElem& u) {
    LElem t = trace_phi_tuple(u);
    for (const auto& v : t)
      if (abs(v - target) > tol) return false;
    return true;
  };

  std::string note;
  if (chi_.order == p - 1) {
    int kk = static_cast<int>((p - 1) / 2);
    ZPoly phi = cyclotomic_poly(kk);
    // (X^k - 1) / Phi_k
    ZPoly num(kk + 1, 0);
    num[0] = -1;
    num[kk] = 1;
    QPoly q(kk + 1 - (phi.size() - 1), 0);
    QPoly rem(num.begin(), num.end());
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = rem[i + phi.size() - 1];
      for (std::size_t j = 0; j < phi.size(); ++j) rem[i + j] -= q[i] * mpq_class(phi[j]);
    }
    GroupAlgebraElem f = GroupAlgebraElem::from_poly(kk, q);
    i64 gi = inv_mod(gal_.g(), p);
    i64 tau = ipow_mod(gi, 4, p);  // Artin symbol of (g^{-2}) on Q(zeta_p)
    CycloElem u = theta_apply(f, tau, CycloElem::zeta(static_cast<int>(p)));
    TwistWitness w;
    w.u = from_cyclo(u);
    w.exact = u;
    w.branch = 1;
    w.description = "u = Theta((X^k-1)/Phi_k)(zeta_p), tau: zeta_p -> zeta_p^" + std::to_string(tau);
    if (modular(w.u)) return finish(w);
    note = "; closed form did not pass the trace test";
  }

  LElem one_u = one();
  Complex tr = trace_phi(one_u);
  if (abs(tr) > tol) {
    TwistWitness w;
    // tr_Phi(lambda) lies in K, so u = tr / [L:K] gives the same cocycle
    w.u = one_u;
    w.exact = CycloElem::one(static_cast<int>(p));
    w.branch = 2;
    w.description = "u = tr_Phi(lambda)/[L:K] = 1" + note;
    if (modular(w.u)) return finish(w);
    note += "; nonzero trace is not [L:K]";
  }

  double scale = 0;
  for (const auto& b : basis_) scale = std::max(scale, lmax_abs(b));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    LElem v = projector_apply(basis_[i]);
    double mx = lmax_abs(v), mn = mx;
    for (const auto& x : v) mn = std::min(mn, abs(x).to_double());
    if (mn <= tol.to_double() * scale * degree()) continue;
    TwistWitness w;
    w.u = v;
    w.branch = 3;
    w.description = "u = pr(e_" + std::to_string(i) + "), e_i = j0^a P_b basis of L/K" + note;
    if (modular(w.u)) return finish(w);
  }
  throw std::runtime_error("make_modular: eigenspace of pr is numerically empty");
}

std::optional<LElem> CocycleSpace::is_cohomologous(const CocycleFn& l1, const CocycleFn& l2, unsigned seed) const {
  const FieldContext& k = c_->field();
  int n = gal_.size();
  std::vector<LElem> ratio;
  for (int x = 0; x < n; ++x) ratio.push_back(ldiv(l1(gal_.representative(x)), l2(gal_.representative(x))));
  Real tol = tolerance() * static_cast<long>(n);

  std::vector<Ideal> extra;
  for (i64 m = 2; m < 40 && extra.size() < 12; ++m)
    for (const auto& x : k.ideals_of_norm(m)) extra.push_back(x);

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 8; ++attempt) {
    LElem w(n, Complex(0L, prec_));
    for (const auto& b : basis_) {
      int c = coef(rng);
      for (int y = 0; y < n; ++y) w[y] += b[y] * static_cast<long>(c);
    }
    LElem b(n, Complex(0L, prec_));
    for (int x = 0; x < n; ++x) {
      LElem t = lmul(ratio[x], act(gal_, x, w));
      for (int y = 0; y < n; ++y) b[y] += t[y];
    }
    double mx = lmax_abs(b), mn = mx;
    for (const auto& v : b) mn = std::min(mn, abs(v).to_double());
    if (mx == 0 || mn < 1e-8 * mx) continue;  // degenerate w
    LElem u = ldiv(one(), b);
    auto matches = [&](const LElem& r, int ax) {
      LElem cb = ldiv(act(gal_, ax, u), u);
      for (int y = 0; y < n; ++y)
        if (abs(cb[y] - r[y]) > tol * (Real(1L, prec_) + abs(r[y]))) return false;
      return true;
    };
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = matches(ratio[x], x);
    for (std::size_t i = 0; i < extra.size() && ok; ++i)
      ok = matches(ldiv(l1(extra[i]), l2(extra[i])), gal_.artin(extra[i]));
    if (!ok) return std::nullopt;
    // normalize so that u[0] = 1
    return lscale(u, Complex(1L, prec_) / u[0]);
  }
  return std::nullopt;
}

}  // namespace cmdir
