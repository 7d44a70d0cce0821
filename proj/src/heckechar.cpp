#include "cmdir/heckechar.hpp"

#include <numeric>
#include <stdexcept>

#include "cmdir/analytic.hpp"

namespace cmdir {

i64 primitive_root(i64 p) {
  if (!is_prime(p)) throw std::invalid_argument("primitive_root: p must be prime");
  std::vector<i64> qs;
  i64 m = p - 1;
  for (i64 q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      qs.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) qs.push_back(m);
  for (i64 g = 2;; ++g) {
    bool ok = true;
    for (i64 q : qs)
      if (ipow_mod(g, (p - 1) / q, p) == 1) ok = false;
    if (ok) return g;
  }
}

i64 discrete_log(i64 g, i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) throw std::domain_error("discrete_log: zero residue");
  i64 x = 1;
  for (i64 e = 0; e < p - 1; ++e) {
    if (x == a) return e;
    x = x * g % p;
  }
  throw std::logic_error("discrete_log: g is not a primitive root");
}

i64 EtaCharacter::exponent(i64 m) const { return mod(t * discrete_log(g, m, p), p - 1); }

EtaCharacter make_eta(i64 p, i64 t) {
  if (t < 1 || t >= p - 1 || t % 2 == 0) throw std::invalid_argument("eta character: t must be odd in [1, p-1)");
  EtaCharacter c;
  c.p = p;
  c.g = primitive_root(p);
  c.t = t;
  c.order = (p - 1) / gcd(t, p - 1);
  return c;
}

EtaCharacter canonical_eta(i64 p, i64 d) {
  if (d < 1 || ((p - 1) / 2) % d != 0)
    throw std::invalid_argument("order d = " + std::to_string(d) + " does not divide (p-1)/2");
  return make_eta(p, (p - 1) / (2 * d));
}

bool same_kernel(const EtaCharacter& a, const EtaCharacter& b) {
  if (a.p != b.p) return false;
  for (i64 m = 1; m < a.p; ++m)
    if ((a.exponent(m) == 0) != (b.exponent(m) == 0)) return false;
  return true;
}

i64 dimension_of_Af(const FieldContext& k, i64 d) {
  canonical_eta(k.p(), d);  // validates d
  return k.class_number() * euler_phi(d);
}

SplittingFieldData splitting_field_data(const FieldContext& k, i64 d) {
  canonical_eta(k.p(), d);
  return {(k.p() - 1) / 2, d, k.class_number() * d};
}

std::vector<CharacterOrbit> enumerate_characters(const FieldContext& k) {
  i64 p = k.p();
  std::vector<CharacterOrbit> out;
  for (i64 d : divisors((p - 1) / 2)) {
    CharacterOrbit o;
    o.d = d;
    for (i64 t = 1; t < p - 1; t += 2)
      if ((p - 1) / gcd(t, p - 1) == 2 * d) o.members.push_back(make_eta(p, t));
    o.dimension = k.class_number() * euler_phi(d);
    out.push_back(std::move(o));
  }
  return out;
}

CycloElem eta_value(const FieldContext& k, const EtaCharacter& chi, const QuadInt& a) {
  i64 m = k.residue(a);
  if (m == 0) throw std::domain_error("eta_value: element divisible by sqrt(-p)");
  return CycloElem::zeta(static_cast<int>(chi.p - 1), chi.exponent(m));
}

std::pair<QuadInt, CycloElem> psi_principal(const FieldContext& k, const EtaCharacter& chi, const QuadInt& a) {
  return {a, eta_value(k, chi, a)};
}

namespace {

std::vector<i64> units_mod(i64 n) {
  std::vector<i64> out;
  for (i64 r = 1; r < n; ++r)
    if (gcd(r, n) == 1) out.push_back(r);
  if (n == 1) out.push_back(0);
  return out;
}

}  // namespace

CycloElem trace_psi(const FieldContext& k, const EtaCharacter& chi, const Ideal& x) {
  i64 p = chi.p;
  int N = static_cast<int>(p * (p - 1));
  if (!k.coprime_to_p(x)) throw std::domain_error("trace_psi: ideal not coprime to p");
  auto a = k.is_principal(x);
  if (!a) return CycloElem::zero(N);
  i64 e = chi.exponent(k.residue(*a));
  CycloElem s = CycloElem::zero(N);
  for (i64 r : units_mod(chi.order)) s += CycloElem::zeta(N, p * mod(r * e, p - 1));
  return quad_in_cyclo(static_cast<int>(p), a->a, a->b, N) * s * mpq_class(k.class_number());
}

i64 nebentypus_exponent(const EtaCharacter& chi, i64 n) {
  if (mod(n, chi.p) == 0) throw std::domain_error("nebentypus: p divides n");
  i64 half = legendre(n, chi.p) == 1 ? 0 : (chi.p - 1) / 2;
  return mod(half + chi.exponent(n), chi.p - 1);
}

CycloElem nebentypus(const EtaCharacter& chi, i64 n) {
  int m = static_cast<int>(chi.p - 1);
  if (mod(n, chi.p) == 0) return CycloElem::zero(m);
  return CycloElem::zeta(m, nebentypus_exponent(chi, n));
}

i64 nebentypus_order(const EtaCharacter& chi) {
  i64 m = chi.p - 1, ord = 1;
  for (i64 n = 1; n < chi.p; ++n) {
    i64 e = nebentypus_exponent(chi, n);
    i64 o = m / gcd(e, m);
    ord = ord / gcd(ord, o) * o;
  }
  return ord;
}

HeckeFamily::HeckeFamily(const FieldContext& k, const EtaCharacter& chi, prec_t prec)
    : k_(&k), chi_(chi), prec_(prec) {
  int h = k.class_number();
  const auto& reps = k.class_reps();
  auto rep = [&](int c) -> const Ideal& { return reps[c % h]; };
  for (int c = 2; c <= h; ++c) {
    Ideal prod = k.mul(k.mul(rep(c - 1), rep(1)), k.conj(rep(c)));
    auto g = k.is_principal(prod);
    if (!g) throw std::logic_error("HeckeFamily: chain ideal not principal");
    mu_.push_back(*g);
  }
  prec_t wp = prec + kGuardBits;
  for (i64 r : units_mod(chi.order)) {
    auto psi_int = [&](i64 n) { return change_prec(principal_value(r, {n, 0}), wp); };
    Complex base(1L, wp);
    if (h > 1) {
      // psi(r_1)^h = prod psi((mu_k)) / prod psi((N r_k))
      Complex num(1L, wp), den(1L, wp);
      for (int c = 2; c <= h; ++c) {
        num = num * change_prec(principal_value(r, mu_[c - 2]), wp);
        if (c < h) den = den * psi_int(rep(c).norm());
      }
      base = nth_root(num / den, h, 0);
    }
    for (int s = 0; s < h; ++s) {
      Member m;
      m.r = r;
      m.s = s;
      m.rep_values.assign(h, Complex(1L, wp));
      if (h > 1) {
        m.rep_values[1] = base * root_of_unity(h, s, wp);
        for (int c = 2; c < h; ++c)
          m.rep_values[c] = m.rep_values[c - 1] * m.rep_values[1] * psi_int(rep(c).norm()) /
                            change_prec(principal_value(r, mu_[c - 2]), wp);
      }
      for (auto& v : m.rep_values) v = change_prec(v, prec);
      members_.push_back(std::move(m));
    }
  }
}

Complex HeckeFamily::principal_value(i64 r, const QuadInt& a) const {
  i64 m = k_->residue(a);
  if (m == 0) throw std::domain_error("psi: element divisible by sqrt(-p)");
  i64 e = mod(r * chi_.exponent(m), chi_.p - 1);
  return embed(*k_, a, prec_) * root_of_unity(chi_.p - 1, e, prec_);
}

Complex HeckeFamily::value(std::size_t i, const Ideal& x) const {
  if (!k_->coprime_to_p(x)) throw std::domain_error("psi: ideal not coprime to p");
  const Member& m = members_.at(i);
  int c = k_->class_index(x);
  const Ideal& rc = k_->class_reps()[c];
  auto beta = k_->is_principal(k_->mul(x, k_->conj(rc)));
  if (!beta) throw std::logic_error("psi: class bookkeeping failed");
  Complex v = principal_value(m.r, *beta) * m.rep_values[c];
  if (c != 0) v = v / principal_value(m.r, {rc.norm(), 0});
  return v;
}

Complex HeckeFamily::trace(const Ideal& x) const {
  Complex s(0L, prec_);
  for (std::size_t i = 0; i < members_.size(); ++i) s += value(i, x);
  return s;
}

Complex HeckeFamily::inverse_trace(const Ideal& x) const {
  Complex s(0L, prec_);
  Complex one(1L, prec_);
  for (std::size_t i = 0; i < members_.size(); ++i) s += one / value(i, x);
  return s;
}

std::string HeckeFamily::choice_description() const {
  int h = k_->class_number();
  if (h == 1) return "class number one: psi((a)) = a eta(a) determines psi";
  std::string s = "psi_{r,s}(" + to_string(k_->class_reps()[1]) + ") = zeta_" + std::to_string(h) +
                  "^s * principal " + std::to_string(h) +
                  "-th root of psi_r of its h-th power; other classes via generators of reps[c-1] reps[1] conj(reps[c]):";
  for (const auto& m : mu_) s += " " + to_string(m);
  return s;
}

}  // namespace cmdir
