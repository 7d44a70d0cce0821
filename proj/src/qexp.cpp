#include "cmdir/qexp.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cmdir/analytic.hpp"

namespace cmdir {

mpz_class QExpansion::integer(std::size_t n) const {
  if (!integral) throw std::logic_error("q-expansion has no integer recognition");
  return exact.at(n - 1).coeffs()[0].get_num();
}

namespace {

void check_bound(std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("number of terms must be at least 1");
}

// Exact canonical coefficients for h = 1: the generator of x with
// (beta / sqrt(-p)) = +1 is delta(x).
std::vector<mpz_class> canonical_integers(const FieldContext& k, std::size_t bound) {
  std::vector<mpz_class> out(bound, 0);
  for (std::size_t n = 1; n <= bound; ++n) {
    QuadInt s{0, 0};
    for (const auto& x : k.ideals_of_norm(static_cast<i64>(n))) s = k.add(s, delta_on_principal(k, *k.is_principal(x)));
    if (s.b != 0) throw std::logic_error("canonical coefficient is not rational");
    out[n - 1] = static_cast<long>(s.a);
  }
  return out;
}

}  // namespace

QExpansion canonical_direction(const FieldContext& k, const Cocycle& c, std::size_t bound) {
  check_bound(bound);
  QExpansion qe;
  qe.p = k.p();
  qe.h = k.class_number();
  qe.bound = bound;
  qe.prec = c.prec();
  qe.provenance = "canonical: a_n = sum of delta over ideals of norm n; " + c.principal_rule();
  for (std::size_t n = 1; n <= bound; ++n) {
    Complex s(0L, c.prec());
    for (const auto& x : k.ideals_of_norm(static_cast<i64>(n))) s += c.delta(x);
    qe.coeffs.push_back(s);
  }
  if (qe.h == 1) {
    int p = static_cast<int>(k.p());
    auto z = canonical_integers(k, bound);
    for (std::size_t n = 0; n < bound; ++n) {
      if (abs(qe.coeffs[n] - Complex(z[n].get_si(), c.prec())) > epsilon(c.prec() / 2, c.prec()))
        throw std::logic_error("canonical coefficient a_" + std::to_string(n + 1) + " failed integer recognition");
      qe.exact.push_back(CycloElem::rational(p, mpq_class(z[n])));
    }
    qe.integral = true;
  }
  return qe;
}

QExpansion direction_from_element(const CocycleSpace& s, const LElem& u, const std::optional<CycloElem>& exact,
                                  std::size_t bound, const std::string& provenance) {
  check_bound(bound);
  const FieldContext& k = s.cocycle().field();
  int deg = s.degree();
  Real tol = s.tolerance() * static_cast<long>(deg);
  LElem tr = s.trace_phi_tuple(u);
  for (int y = 0; y < deg; ++y)
    if (abs(tr[y] - Complex(static_cast<long>(deg), s.prec())) > tol) {
      std::ostringstream msg;
      msg << "non-modular twist: tr_Phi(lambda_u) = " << str(tr[y], 20) << " at embedding " << y << ", expected [L:K] = "
          << deg;
      throw std::runtime_error(msg.str());
    }

  const GaloisL& gal = s.galois();
  QExpansion qe;
  qe.p = k.p();
  qe.d = gal.d();
  qe.h = k.class_number();
  qe.bound = bound;
  qe.prec = s.prec();
  qe.provenance = provenance;
  for (std::size_t n = 1; n <= bound; ++n) {
    Complex a(0L, s.prec());
    for (const auto& x : k.ideals_of_norm(static_cast<i64>(n)))
      a += s.cocycle().delta(x) * u[gal.inverse(gal.artin(x))] / u[0];
    qe.coeffs.push_back(a);
  }

  if (exact && qe.h == 1) {
    // ^{x^-1} acts on Q(zeta_p) as zeta -> zeta^{1/N(x)}, so a_n = b_n sigma_{1/n}(u) / u.
    int p = static_cast<int>(k.p());
    auto b = canonical_integers(k, bound);
    CycloElem inv = exact->inverse();
    bool integral = true;
    for (std::size_t n = 1; n <= bound; ++n) {
      CycloElem e = CycloElem::zero(p);
      if (b[n - 1] != 0) {
        i64 j = inv_mod(static_cast<i64>(n % p), p);
        e = galois_apply(j, *exact) * inv * mpq_class(b[n - 1]);
      }
      if (abs(e.embed(s.prec()) - qe.coeffs[n - 1]) > tol * (Real(1L, s.prec()) + abs(qe.coeffs[n - 1])))
        throw std::logic_error("exact and numeric twisted coefficients disagree at n = " + std::to_string(n));
      if (!e.is_rational() || e.coeffs()[0].get_den() != 1) integral = false;
      qe.exact.push_back(std::move(e));
    }
    qe.integral = integral;
  }
  return qe;
}

QExpansion direction_from_twist(const CocycleSpace& s, const TwistWitness& w, std::size_t bound) {
  return direction_from_element(s, w.u, w.exact, bound, w.description);
}

QExpansion newform_expansion(const HeckeFamily& fam, std::size_t member, std::size_t bound) {
  check_bound(bound);
  const FieldContext& k = fam.field();
  QExpansion qe;
  qe.p = k.p();
  qe.d = fam.eta().nebentypus_order();
  qe.h = k.class_number();
  qe.bound = bound;
  qe.prec = fam.prec();
  qe.provenance = "newform of psi_{r=" + std::to_string(fam.members()[member].r) +
                  ", s=" + std::to_string(fam.members()[member].s) + "}";
  for (std::size_t n = 1; n <= bound; ++n) {
    Complex a(0L, fam.prec());
    for (const auto& x : k.ideals_of_norm(static_cast<i64>(n))) a += fam.value(member, x);
    qe.coeffs.push_back(a);
  }
  return qe;
}

EtaCharacter member_eta(const HeckeFamily& fam, std::size_t member) {
  const EtaCharacter& e = fam.eta();
  return make_eta(e.p, mod(e.t * fam.members().at(member).r, e.p - 1));
}

HeckeReport hecke_verify(const QExpansion& qe, const EtaCharacter& chi) {
  if (qe.bound < 20) throw std::invalid_argument("hecke_verify needs at least 20 coefficients");
  HeckeReport r;
  r.exact = qe.has_exact();
  std::size_t B = qe.bound;
  i64 p = qe.p;
  prec_t pr = qe.prec;
  Real tol = epsilon(prec_t(83), pr);  // 2^-83 < 1e-25
  auto note = [&](const std::string& s) {
    if (r.sample_failures.size() < 8) r.sample_failures.push_back(s);
  };

  for (std::size_t n = p; n <= B; n += p)
    if (!(abs(qe.a(n)) < tol) || (r.exact && !qe.exact[n - 1].is_zero())) {
      r.p_column_zero = false;
      note("a_" + std::to_string(n) + " != 0 although p | n");
    }

  for (std::size_t m = 2; m * m <= B; ++m)
    for (std::size_t n = m + 1; m * n <= B; ++n) {
      if (gcd(static_cast<i64>(m), static_cast<i64>(n)) != 1) continue;
      ++r.multiplicative_checks;
      bool ok;
      double res;
      if (r.exact) {
        CycloElem diff = qe.exact[m * n - 1] - qe.exact[m - 1] * qe.exact[n - 1];
        ok = diff.is_zero();
        res = ok ? 0.0 : abs(diff.embed(pr)).to_double();
      } else {
        Real e = abs(qe.a(m * n) - qe.a(m) * qe.a(n));
        res = e.to_double();
        ok = e < tol * (Real(1L, pr) + abs(qe.a(m * n)));
      }
      r.max_multiplicative_residual = std::max(r.max_multiplicative_residual, res);
      if (!ok) {
        ++r.multiplicative_failures;
        note("a_" + std::to_string(m * n) + " != a_" + std::to_string(m) + " a_" + std::to_string(n));
      }
    }

  // epsilon(l) has order dividing d; exact checks run in Q(zeta_{p d}).
  i64 d = nebentypus_order(chi);
  int N = static_cast<int>(d == 1 ? p : p * d);
  for (i64 l = 2; l * l <= static_cast<i64>(B); ++l) {
    if (!is_prime(l) || l == p) continue;
    i64 e = nebentypus_exponent(chi, l);
    Complex eps_num = root_of_unity(p - 1, e, pr);
    CycloElem eps_exact = CycloElem::one(N);
    if (d > 1) eps_exact = CycloElem::zeta(N, p * (e / ((p - 1) / d)));
    std::vector<std::size_t> pw{1, static_cast<std::size_t>(l)};
    while (pw.back() * l <= B) pw.push_back(pw.back() * l);
    for (std::size_t r1 = 1; r1 + 1 < pw.size(); ++r1) {
      std::size_t next = pw[r1 + 1], cur = pw[r1], prev = pw[r1 - 1];
      ++r.recursion_checks;
      bool ok;
      double res;
      if (r.exact) {
        auto L = [&](std::size_t n) { return lift(qe.exact[n - 1], N); };
        CycloElem diff = L(next) - L(l) * L(cur) + eps_exact * L(prev) * mpq_class(static_cast<long>(l));
        ok = diff.is_zero();
        res = ok ? 0.0 : abs(diff.embed(pr)).to_double();
      } else {
        Real err = abs(qe.a(next) - qe.a(l) * qe.a(cur) + eps_num * qe.a(prev) * static_cast<long>(l));
        res = err.to_double();
        ok = err < tol * (Real(1L, pr) + abs(qe.a(next)));
      }
      r.max_recursion_residual = std::max(r.max_recursion_residual, res);
      if (!ok) {
        ++r.recursion_failures;
        note("a_" + std::to_string(next) + " != a_" + std::to_string(l) + " a_" + std::to_string(cur) +
             " - eps(" + std::to_string(l) + ") " + std::to_string(l) + " a_" + std::to_string(prev));
      }
    }
  }
  return r;
}

QExpansion conjugate_direction(const QExpansion& qe, long j, const CycloElem& scalar) {
  if (scalar.is_zero()) throw std::invalid_argument("conjugate_direction: zero scalar");
  if (!qe.has_exact()) throw std::invalid_argument("conjugate_direction: needs exact coefficients");
  if (gcd(j, qe.p) != 1) throw std::invalid_argument("conjugate_direction: exponent must be a unit mod p");
  QExpansion out = qe;
  out.exact.clear();
  out.coeffs.clear();
  bool integral = true;
  for (const auto& a : qe.exact) {
    CycloElem b = galois_apply(j, a);
    if (b.modulus() == scalar.modulus()) b = b * scalar;
    else b = lift(b, std::lcm(b.modulus(), scalar.modulus())) * lift(scalar, std::lcm(b.modulus(), scalar.modulus()));
    out.coeffs.push_back(b.embed(qe.prec));
    if (!b.is_rational() || b.coeffs()[0].get_den() != 1) integral = false;
    out.exact.push_back(std::move(b));
  }
  out.integral = integral;
  out.provenance = qe.provenance + "; conjugated by zeta_p -> zeta_p^" + std::to_string(j) + ", scaled by " + scalar.str();
  return out;
}

double twist_identity_residual(const CocycleSpace& s, const LElem& u, const std::vector<Ideal>& sample,
                               i64 max_norm) {
  const FieldContext& k = s.cocycle().field();
  const GaloisL& gal = s.galois();
  double worst = 0;
  for (const auto& a : sample) {
    int inv = gal.inverse(gal.artin(a));
    LElem lam = act(gal, inv, s.lambda_twisted(u, a));
    for (i64 n = 1; n <= max_norm; ++n)
      for (const auto& x : k.ideals_of_norm(n)) {
        LElem lhs = lmul(lam, act(gal, inv, s.twisted_coefficient(u, x)));
        LElem rhs = s.twisted_coefficient(u, k.mul(a, x));
        for (std::size_t y = 0; y < lhs.size(); ++y)
          worst = std::max(worst, (abs(lhs[y] - rhs[y]) / (Real(1L, s.prec()) + abs(rhs[y]))).to_double());
      }
  }
  return worst;
}

}  // namespace cmdir
