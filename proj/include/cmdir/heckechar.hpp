#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmdir/bigfloat.hpp"
#include "cmdir/cyclo.hpp"
#include "cmdir/quadfield.hpp"

namespace cmdir {

i64 primitive_root(i64 p);  // smallest
// ind_g(a) in [0, p-1); a must be a unit mod p.
i64 discrete_log(i64 g, i64 a, i64 p);

// eta(a) = zeta_{p-1}^{t ind_g(a mod sqrt(-p))}, t odd.
struct EtaCharacter {
  i64 p = 0;
  i64 g = 0;
  i64 t = 0;
  i64 order = 0;

  i64 nebentypus_order() const { return order / 2; }
  // exponent e with eta(m) = zeta_{p-1}^e, m a unit mod p
  i64 exponent(i64 m) const;
  friend bool operator==(const EtaCharacter&, const EtaCharacter&) = default;
};

EtaCharacter make_eta(i64 p, i64 t);
// t = (p-1)/(2d), the orbit representative used throughout.
EtaCharacter canonical_eta(i64 p, i64 d);
bool same_kernel(const EtaCharacter& a, const EtaCharacter& b);

struct CharacterOrbit {
  i64 d = 0;
  std::vector<EtaCharacter> members;
  i64 dimension = 0;  // h phi(d)
};
std::vector<CharacterOrbit> enumerate_characters(const FieldContext& k);

// Values in Q(zeta_{p-1}).
CycloElem eta_value(const FieldContext& k, const EtaCharacter& chi, const QuadInt& a);
// psi((a)) = a eta(a) as (a, eta(a)).
std::pair<QuadInt, CycloElem> psi_principal(const FieldContext& k, const EtaCharacter& chi, const QuadInt& a);
// Sum of all conjugates of psi at x, exact in Q(zeta_{p(p-1)}): a h sum_r eta(a)^r
// for x = (a), zero for non-principal x.
CycloElem trace_psi(const FieldContext& k, const EtaCharacter& chi, const Ideal& x);

// epsilon(n) = (n/p) eta(n); zero when p | n.
CycloElem nebentypus(const EtaCharacter& chi, i64 n);
i64 nebentypus_exponent(const EtaCharacter& chi, i64 n);  // epsilon(n) = zeta_{p-1}^e
i64 nebentypus_order(const EtaCharacter& chi);            // computed from the values

i64 dimension_of_Af(const FieldContext& k, i64 d);
struct SplittingFieldData {
  i64 kp_over_h = 0;  // [K_p : H]
  i64 l_over_h = 0;   // [L : H]
  i64 l_over_k = 0;   // [L : K]
};
SplittingFieldData splitting_field_data(const FieldContext& k, i64 d);

// All conjugates psi_{r,s} of the Hecke character with finite part eta:
// r runs over (Z/2d)*, s over Z/h.  On the generator class,
// psi_{r,s}(r_1) = zeta_h^s * (principal h-th root of psi_r(r_1^h)); other
// ideals follow from multiplicativity through the class representatives.
class HeckeFamily {
 public:
  struct Member {
    i64 r = 1;
    int s = 0;
    std::vector<Complex> rep_values;  // psi_{r,s}(reps[k])
  };

  HeckeFamily(const FieldContext& k, const EtaCharacter& chi, prec_t prec);

  const FieldContext& field() const { return *k_; }
  const EtaCharacter& eta() const { return chi_; }
  prec_t prec() const { return prec_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Member>& members() const { return members_; }

  // sigma psi(x) for sigma = members()[i]; x coprime to p.
  Complex value(std::size_t i, const Ideal& x) const;
  Complex trace(const Ideal& x) const;          // sum over sigma of sigma psi(x)
  Complex inverse_trace(const Ideal& x) const;  // c_x = sum over sigma of 1/sigma psi(x)
  // psi_r((a)) = a eta(a)^r under the fixed embedding.
  Complex principal_value(i64 r, const QuadInt& a) const;

  // Human-readable description of the extension choice.
  std::string choice_description() const;
  const std::vector<QuadInt>& chain_generators() const { return mu_; }

 private:
  const FieldContext* k_;
  EtaCharacter chi_;
  prec_t prec_;
  std::vector<QuadInt> mu_;  // mu_k generates reps[k-1] reps[1] conj(reps[k]), k = 2..h
  std::vector<Member> members_;
};

}  // namespace cmdir
