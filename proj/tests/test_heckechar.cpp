#include <random>
#include <set>
#include <stdexcept>

#include "cmdir/analytic.hpp"
#include "cmdir/heckechar.hpp"
#include "doctest.h"

using namespace cmdir;

namespace {

std::vector<Ideal> coprime_ideals(const FieldContext& k, i64 max_norm) {
  std::vector<Ideal> out;
  for (i64 n = 1; n <= max_norm; ++n)
    for (const auto& x : k.ideals_of_norm(n)) out.push_back(x);
  return out;
}

double absd(const Complex& z) { return abs(z).to_double(); }

}  // namespace

TEST_CASE("primitive roots and logs") {
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(23) == 5);
  CHECK(primitive_root(191) == 19);
  for (i64 p : {7, 23, 31}) {
    i64 g = primitive_root(p);
    for (i64 a = 1; a < p; ++a) CHECK(ipow_mod(g, discrete_log(g, a, p), p) == a);
  }
  CHECK_THROWS_AS(discrete_log(3, 14, 7), std::domain_error);
}

TEST_CASE("enumerate_characters") {
  auto d_of = [](i64 p) {
    FieldContext k(p);
    std::vector<i64> ds;
    for (const auto& o : enumerate_characters(k)) ds.push_back(o.d);
    return ds;
  };
  CHECK(d_of(7) == std::vector<i64>{1, 3});
  CHECK(d_of(11) == std::vector<i64>{1, 5});
  CHECK(d_of(23) == std::vector<i64>{1, 11});
  CHECK(d_of(31) == std::vector<i64>{1, 3, 5, 15});

  FieldContext k7(7);
  auto orbits = enumerate_characters(k7);
  REQUIRE(orbits[1].members.size() == 2);
  CHECK(orbits[1].members[0].t == 1);
  CHECK(orbits[1].members[1].t == 5);
  CHECK(orbits[1].dimension == 2);
  CHECK(orbits[0].members.size() == 1);
  CHECK(orbits[0].members[0].t == 3);
}

TEST_CASE("orbit bookkeeping for p < 100") {
  for (i64 p = 7; p < 100; p += 4) {
    if (!is_prime(p)) continue;
    FieldContext k(p);
    auto orbits = enumerate_characters(k);
    CHECK(orbits.size() == divisors((p - 1) / 2).size());
    i64 total = 0;
    std::size_t chars = 0;
    for (const auto& o : orbits) {
      total += o.dimension;
      chars += o.members.size();
      CHECK(o.members.size() == static_cast<std::size_t>(euler_phi(2 * o.d)));
      for (const auto& m : o.members) {
        CHECK(m.nebentypus_order() == o.d);
        CHECK(same_kernel(m, o.members[0]));
        CHECK(m.exponent(p - 1) == (p - 1) / 2);  // eta(-1) = -1
      }
    }
    CHECK(total == k.class_number() * (p - 1) / 2);
    CHECK(chars == static_cast<std::size_t>((p - 1) / 2));  // all odd t
    // characters from different orbits have different kernels
    for (std::size_t i = 0; i < orbits.size(); ++i)
      for (std::size_t j = i + 1; j < orbits.size(); ++j)
        CHECK_FALSE(same_kernel(orbits[i].members[0], orbits[j].members[0]));
  }
}

TEST_CASE("eta values") {
  FieldContext k(7);
  EtaCharacter quad = canonical_eta(7, 1);
  CHECK(quad.order == 2);
  CHECK(eta_value(k, quad, {1, 0}) == CycloElem::one(6));
  CHECK(eta_value(k, quad, {-1, 0}) == CycloElem::rational(6, -1));
  CHECK(eta_value(k, quad, {3, 0}) == CycloElem::rational(6, -1));
  EtaCharacter six = canonical_eta(7, 3);
  CHECK(eta_value(k, six, {3, 0}) == CycloElem::zeta(6));
  CHECK_THROWS_AS(eta_value(k, quad, k.sqrt_minus_p()), std::domain_error);
  CHECK_THROWS_AS(canonical_eta(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_eta(7, 2), std::invalid_argument);

  for (i64 p : {7, 11, 23, 31}) {
    FieldContext kp(p);
    EtaCharacter q = canonical_eta(p, 1);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<i64> u(-30, 30);
    for (int t = 0; t < 50; ++t) {
      QuadInt a{u(rng), u(rng)}, b{u(rng), u(rng)};
      if (kp.residue(a) == 0 || kp.residue(b) == 0) continue;
      CHECK(eta_value(kp, q, a) == CycloElem::rational(static_cast<int>(p - 1), kp.jacobi_symbol_mod_p(a)));
      for (const auto& o : enumerate_characters(kp)) {
        const auto& chi = o.members.back();
        CHECK(eta_value(kp, chi, kp.mul(a, b)) == eta_value(kp, chi, a) * eta_value(kp, chi, b));
        CHECK(psi_principal(kp, chi, a).second == -psi_principal(kp, chi, -a).second);
      }
    }
  }
}

TEST_CASE("psi_principal") {
  FieldContext k(7);
  EtaCharacter quad = canonical_eta(7, 1);
  auto one = psi_principal(k, quad, {1, 0});
  CHECK(one.first == QuadInt{1, 0});
  CHECK(one.second == CycloElem::one(6));
  auto three = psi_principal(k, quad, {3, 0});
  CHECK(three.first == QuadInt{3, 0});
  CHECK(three.second == CycloElem::rational(6, -1));
}

TEST_CASE("trace_psi exact") {
  FieldContext k7(7);
  CHECK(trace_psi(k7, canonical_eta(7, 1), k7.unit_ideal()) == CycloElem::one(42));
  CHECK(trace_psi(k7, canonical_eta(7, 3), k7.unit_ideal()) == CycloElem::rational(42, 2));
  CHECK(trace_psi(k7, canonical_eta(7, 1), k7.principal({3, 0})) == CycloElem::rational(42, -3));
  FieldContext k23(23);
  Ideal b = k23.ideals_of_norm(2)[0];
  CHECK(trace_psi(k23, canonical_eta(23, 1), b).is_zero());
  CHECK(trace_psi(k23, canonical_eta(23, 11), b).is_zero());
  CHECK(trace_psi(k23, canonical_eta(23, 11), k23.unit_ideal()) == CycloElem::rational(506, 30));
}

TEST_CASE("dimension and splitting field bookkeeping") {
  FieldContext k7(7), k23(23);
  CHECK(dimension_of_Af(k7, 1) == 1);
  CHECK(dimension_of_Af(k7, 3) == 2);
  CHECK(dimension_of_Af(k23, 11) == 30);
  CHECK_THROWS_AS(dimension_of_Af(k7, 2), std::invalid_argument);
  auto s = splitting_field_data(k7, 3);
  CHECK(s.kp_over_h == 3);
  CHECK(s.l_over_h == 3);
  CHECK(s.l_over_k == 3);
  s = splitting_field_data(k7, 1);
  CHECK(s.kp_over_h == 3);
  CHECK(s.l_over_h == 1);
  CHECK(s.l_over_k == 1);
  s = splitting_field_data(k23, 1);
  CHECK(s.kp_over_h == 11);
  CHECK(s.l_over_h == 1);
  CHECK(s.l_over_k == 3);
}

TEST_CASE("nebentypus is a character of order d") {
  for (i64 p : {7, 11, 23, 31, 43}) {
    for (i64 d : divisors((p - 1) / 2)) {
      EtaCharacter chi = canonical_eta(p, d);
      CHECK(nebentypus_order(chi) == d);
      for (i64 m = 1; m < 2 * p; ++m)
        for (i64 n = 1; n < p; n += 3) {
          if (m % p == 0) {
            CHECK(nebentypus(chi, m).is_zero());
            continue;
          }
          CHECK(nebentypus(chi, m * n) == nebentypus(chi, m) * nebentypus(chi, n));
        }
      CHECK(nebentypus(chi, -1) == CycloElem::one(static_cast<int>(p - 1)));  // even character
    }
  }
}

TEST_CASE("Hecke family values") {
  for (i64 p : {7, 23, 31, 47}) {
    FieldContext k(p);
    for (i64 d : divisors((p - 1) / 2)) {
      if (d > 5) continue;
      EtaCharacter chi = canonical_eta(p, d);
      HeckeFamily fam(k, chi, 192);
      CHECK(fam.size() == static_cast<std::size_t>(k.class_number() * euler_phi(2 * d)));
      auto ideals = coprime_ideals(k, 40);
      std::mt19937_64 rng(p * 31 + d);
      std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
      double worst = 0;
      for (int t = 0; t < 25; ++t) {
        const Ideal& x = ideals[pick(rng)];
        const Ideal& y = ideals[pick(rng)];
        Ideal xy = k.mul(x, y);
        for (std::size_t i = 0; i < fam.size(); ++i) {
          Complex vx = fam.value(i, x), vy = fam.value(i, y);
          worst = std::max(worst, (abs(fam.value(i, xy) - vx * vy) / abs(vx * vy)).to_double());
          worst = std::max(worst, std::abs(norm(vx).to_double() / x.norm() - 1));
        }
        auto g = k.is_principal(x);
        Complex tr = fam.trace(x);
        if (g) {
          Complex exact = trace_psi(k, chi, x).embed(192);
          CHECK(absd(tr - exact) < 1e-40 * (1 + absd(exact)));
        } else {
          CHECK(absd(tr) < 1e-40);
          CHECK(absd(fam.inverse_trace(x)) < 1e-40);
        }
      }
      CHECK(worst < 1e-40);
      // distinct members are distinct characters
      std::set<std::pair<i64, int>> seen;
      for (const auto& m : fam.members()) seen.insert({m.r, m.s});
      CHECK(seen.size() == fam.size());
      CHECK_FALSE(fam.choice_description().empty());
    }
  }
}
