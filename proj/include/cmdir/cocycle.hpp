#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmdir/bigfloat.hpp"
#include "cmdir/cyclo.hpp"
#include "cmdir/heckechar.hpp"
#include "cmdir/linalg.hpp"
#include "cmdir/quadfield.hpp"

namespace cmdir {

// +-a with (+-a / sqrt(-p)) = +1.
QuadInt delta_on_principal(const FieldContext& k, const QuadInt& a);

struct DeltaSearchReport {
  std::size_t candidates = 0;         // root assignments examined
  std::size_t consistent = 0;         // assignments passing every condition
  std::vector<int> root_choice;       // twelfth-root index per class representative
  prec_t prec_used = 0;
  double integrality_residual = 0;    // symmetric functions of conjugates vs O_K
  double relation_residual = 0;       // cocycle relation on representative pairs
  double conjugation_residual = 0;    // delta(conj x) vs conj(delta(x))
  double twelfth_power_residual = 0;  // delta^12 vs Delta(O)/Delta(x) on test ideals
  bool jacobi_ok = false;             // (N_{H/K} delta / p) = 1
  bool capitulation_ok = false;       // (N_{H/K} delta(x)) = x^h as ideals
};

// The map delta on ideals coprime to p, with values in H under the fixed
// embedding.  Values on class representatives are stored; everything else
// follows from delta(x) = beta delta(r_c) / N(r_c), x conj(r_c) = (beta).
class Cocycle {
 public:
  static Cocycle compute(const FieldContext& k, prec_t prec);

  const FieldContext& field() const { return *k_; }
  prec_t prec() const { return prec_; }
  const std::vector<Complex>& class_values() const { return values_; }
  const DeltaSearchReport& report() const { return report_; }
  std::string principal_rule() const { return "delta((a)) = +-a with (delta/p) = +1"; }

  Complex delta(const Ideal& x) const;
  Complex lambda(const Ideal& x) const;  // N(x) / delta(conj x)
  // sigma_C delta(x), sigma_C the Artin symbol of class C.
  Complex delta_conjugate(int c, const Ideal& x) const;
  std::vector<Complex> delta_orbit(const Ideal& x) const;
  // sigma_C j(O_K) = j(conj r_C)
  const std::vector<Complex>& j_conjugates() const { return j_; }

 private:
  Cocycle(const FieldContext& k, prec_t prec) : k_(&k), prec_(prec) {}
  static std::optional<Cocycle> search(const FieldContext& k, prec_t prec, std::size_t* consistent);

  const FieldContext* k_;
  prec_t prec_;
  std::vector<Complex> values_;
  std::vector<Complex> j_;
  DeltaSearchReport report_;
};

// Gal(L/K) = Cl(K) x Z/d; element (C, j) is stored as C d + j.  The Artin
// symbol of x is (class(x), ind_g(N x)/2 mod d); (C, j) acts on H as sigma_C
// and on the degree-d subfield F of Q(zeta_p)/K as zeta_p -> zeta_p^{g^{2j}}.
class GaloisL {
 public:
  GaloisL(const FieldContext& k, i64 d);
  int h() const { return h_; }
  i64 d() const { return d_; }
  int size() const { return static_cast<int>(h_ * d_); }
  i64 g() const { return g_; }
  int index(int c, i64 j) const { return static_cast<int>(mod(c, h_) * d_ + mod(j, d_)); }
  int class_part(int x) const { return static_cast<int>(x / d_); }
  i64 cyclo_part(int x) const { return x % d_; }
  int compose(int x, int y) const { return index(class_part(x) + class_part(y), cyclo_part(x) + cyclo_part(y)); }
  int inverse(int x) const { return index(-class_part(x), -cyclo_part(x)); }
  int artin(const Ideal& x) const;
  // An ideal coprime to p with the given Artin symbol: r_C (a), a = g^i mod p.
  const Ideal& representative(int x) const { return reps_[x]; }
  // zeta_p -> zeta_p^{exponent} realizes the action on F.
  i64 cyclo_exponent(int x) const;

 private:
  const FieldContext* k_;
  int h_;
  i64 d_, p_, g_;
  std::vector<Ideal> reps_;
};

// Elements of L as their images under sigma_0, ..., sigma_{[L:K]-1}
// composed with the fixed embedding.
using LElem = std::vector<Complex>;
LElem act(const GaloisL& gal, int x, const LElem& u);  // (^x u)[y] = u[y x]
LElem lmul(const LElem& a, const LElem& b);
LElem ldiv(const LElem& a, const LElem& b);
LElem lscale(const LElem& a, const Complex& s);
double lmax_abs(const LElem& a);

struct TwistWitness {
  LElem u;
  std::optional<CycloElem> exact;  // u in Q(zeta_p) when available
  int branch = 0;                  // 0: already modular, 1: closed form, 2: trace, 3: projector image
  std::string description;
  Complex trace;  // tr_Phi(lambda_u) at the identity embedding
};

// lambda and its twists against a fixed nebentypus orbit.
class CocycleSpace {
 public:
  CocycleSpace(const Cocycle& c, const EtaCharacter& chi, prec_t prec);

  const Cocycle& cocycle() const { return *c_; }
  const GaloisL& galois() const { return gal_; }
  const EtaCharacter& eta() const { return chi_; }
  const HeckeFamily& family() const { return fam_; }
  prec_t prec() const { return prec_; }
  int degree() const { return gal_.size(); }  // [L:K]

  LElem one() const;
  LElem from_k(const QuadInt& a) const;
  // x must lie in F (fixed by the squares of order (p-1)/(2d)).
  LElem from_cyclo(const CycloElem& x) const;
  LElem delta_tuple(const Ideal& x) const;
  LElem lambda_tuple(const Ideal& x) const;
  // K-basis of L: j0^i P_b, P_b the Gaussian periods of F.
  const std::vector<LElem>& basis() const { return basis_; }

  // c_x = sum over Phi of 1/psi(x): (h/a) sum_r eta(a)^{-r} for x = (a), 0 otherwise.
  Complex trace_coefficient(const Ideal& x) const;

  // ^{x^-1} lambda_u(x) = delta(x) ^{x^-1}u / u
  LElem twisted_coefficient(const LElem& u, const Ideal& x) const;
  LElem lambda_twisted(const LElem& u, const Ideal& x) const;  // lambda(x) u / ^x u
  Complex g_sigma(std::size_t sigma, const LElem& u) const;
  LElem trace_phi_tuple(const LElem& u) const;  // pr(u) / u
  Complex trace_phi(const LElem& u) const { return trace_phi_tuple(u)[0]; }
  LElem projector_apply(const LElem& u) const;
  CMatrix projector_matrix() const;
  Real tolerance() const;

  TwistWitness make_modular() const;

  using CocycleFn = std::function<LElem(const Ideal&)>;
  // u with l1(x) / l2(x) = ^x u / u for all x, or nothing.
  std::optional<LElem> is_cohomologous(const CocycleFn& l1, const CocycleFn& l2, unsigned seed = 1) const;

 private:
  const Cocycle* c_;
  EtaCharacter chi_;
  prec_t prec_;
  GaloisL gal_;
  HeckeFamily fam_;
  std::vector<LElem> basis_;
  // principal Gal(L/H) part: (artin index, c, delta) of g^i O_K, i < d
  struct Term {
    int artin;
    Complex c;
    Complex delta;
  };
  std::vector<Term> terms_;
};

}  // namespace cmdir
