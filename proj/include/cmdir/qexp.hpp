#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cmdir/cocycle.hpp"

namespace cmdir {

struct QExpansion {
  i64 p = 0;
  i64 d = 1;  // nebentypus order
  int h = 1;
  std::size_t bound = 0;
  prec_t prec = 0;
  std::vector<Complex> coeffs;  // coeffs[n-1] = a_n under the identity embedding
  // Exact values in Q(zeta_p) when h = 1 (rationals in the canonical case).
  std::vector<CycloElem> exact;
  bool integral = false;  // every a_n recognized as a rational integer
  std::string provenance;

  i64 level() const { return p * p; }
  bool has_exact() const { return !exact.empty(); }
  const Complex& a(std::size_t n) const { return coeffs.at(n - 1); }
  // exact integer a_n; requires integral
  mpz_class integer(std::size_t n) const;
};

// a_n = sum of delta over ideals of norm n coprime to p.
QExpansion canonical_direction(const FieldContext& k, const Cocycle& c, std::size_t bound);
// a_n = sum over N(x) = n of ^{x^-1} lambda_u(x) = delta(x) ^{x^-1}u / u.
QExpansion direction_from_twist(const CocycleSpace& s, const TwistWitness& w, std::size_t bound);
// Same construction for an arbitrary u in L; throws unless lambda_u is modular.
QExpansion direction_from_element(const CocycleSpace& s, const LElem& u, const std::optional<CycloElem>& exact,
                                  std::size_t bound, const std::string& provenance);

// sum over N(x) = n of sigma psi(x), sigma = fam.members()[member]: an eigenform.
QExpansion newform_expansion(const HeckeFamily& fam, std::size_t member, std::size_t bound);
// eta^r for the member's r: the finite part of sigma psi.
EtaCharacter member_eta(const HeckeFamily& fam, std::size_t member);

struct HeckeReport {
  bool exact = false;
  std::size_t multiplicative_checks = 0, recursion_checks = 0;
  std::size_t multiplicative_failures = 0, recursion_failures = 0;
  double max_multiplicative_residual = 0;
  double max_recursion_residual = 0;
  bool p_column_zero = true;  // a_n = 0 whenever p | n
  std::vector<std::string> sample_failures;
  bool pass() const {
    return p_column_zero && multiplicative_failures == 0 && recursion_failures == 0;
  }
};
HeckeReport hecke_verify(const QExpansion& qe, const EtaCharacter& chi);

// scalar * (zeta_p -> zeta_p^j applied to every exact coefficient).
QExpansion conjugate_direction(const QExpansion& qe, long j, const CycloElem& scalar);
// Max residual of ^{a^-1}lambda_u(a) ^{a^-1}c(x) = c(a x) over the given
// ideals a and all x with N(x) <= max_norm, c(x) the twisted coefficient tuple.
double twist_identity_residual(const CocycleSpace& s, const LElem& u, const std::vector<Ideal>& sample,
                               i64 max_norm);

}  // namespace cmdir
