#include <random>
#include <stdexcept>

#include "cmdir/gross.hpp"
#include "cmdir/qexp.hpp"
#include "doctest.h"

using namespace cmdir;

namespace {

double absd(const Complex& z) { return abs(z).to_double(); }

i64 kronecker_count(i64 n, i64 p) {
  i64 s = 0;
  for (i64 d : divisors(n)) s += legendre(d, p);
  return s;
}

}  // namespace

TEST_CASE("canonical direction for p = 7") {
  FieldContext k(7);
  Cocycle c = Cocycle::compute(k, 192);
  auto qe = canonical_direction(k, c, 40);
  REQUIRE(qe.integral);
  std::vector<long> expect{1, 1, 0, -1, 0, 0, 0, -3, -3, 0, 4};
  for (std::size_t n = 1; n <= expect.size(); ++n) CHECK(qe.integer(n) == expect[n - 1]);
  CHECK(qe.level() == 49);
  CHECK_THROWS_AS(canonical_direction(k, c, 0), std::invalid_argument);
}

TEST_CASE("canonical direction invariants") {
  for (i64 p : {7, 11, 19, 23, 31, 43}) {
    FieldContext k(p);
    Cocycle c = Cocycle::compute(k, 160);
    auto qe = canonical_direction(k, c, 300);
    INFO("p = " << p);
    CHECK(absd(qe.a(1) - Complex(1L, 160)) < 1e-40);
    for (std::size_t n = 1; n <= 300; ++n) {
      CHECK(absd(Complex(qe.a(n).im())) < 1e-35);  // real coefficients
      if (kronecker_count(static_cast<i64>(n), p) == 0 || n % p == 0) CHECK(absd(qe.a(n)) < 1e-35);
      if (is_prime(static_cast<i64>(n)) && legendre(static_cast<i64>(n), p) == -1) CHECK(absd(qe.a(n)) < 1e-35);
    }
    CHECK(qe.integral == (k.class_number() == 1));
  }
}

TEST_CASE("canonical coefficients match point counts on A(p)") {
  for (i64 p : {7, 11, 19}) {
    FieldContext k(p);
    Cocycle c = Cocycle::compute(k, 128);
    auto qe = canonical_direction(k, c, 200);
    auto g = gross_curve(k, 128);
    REQUIRE(g.recognized());
    for (long l = 2; l < 200; ++l) {
      if (!is_prime(l) || l == p) continue;
      CHECK(qe.integer(l) == l + 1 - count_points(g.exact->a, l));
    }
  }
}

TEST_CASE("hecke_verify on exact canonical expansions") {
  FieldContext k(7);
  Cocycle c = Cocycle::compute(k, 128);
  auto qe = canonical_direction(k, c, 500);
  auto r = hecke_verify(qe, canonical_eta(7, 1));
  CHECK(r.exact);
  CHECK(r.pass());
  CHECK(r.max_multiplicative_residual == 0);
  CHECK(r.max_recursion_residual == 0);
  CHECK(r.multiplicative_checks > 500);
  CHECK(r.recursion_checks > 10);
  CHECK_THROWS_AS(hecke_verify(canonical_direction(k, c, 10), canonical_eta(7, 1)), std::invalid_argument);

  // a corrupted coefficient is caught
  auto bad = qe;
  bad.exact[5] = CycloElem::rational(7, 1);
  bad.coeffs[5] = Complex(1L, 128);
  CHECK_FALSE(hecke_verify(bad, canonical_eta(7, 1)).pass());
}

TEST_CASE("twisted direction for p = 7, d = 3") {
  FieldContext k(7);
  Cocycle c = Cocycle::compute(k, 192);
  CocycleSpace s(c, canonical_eta(7, 3), 192);
  auto w = s.make_modular();
  auto qe = direction_from_twist(s, w, 200);
  REQUIRE(qe.has_exact());
  CHECK(qe.exact[0] == CycloElem::one(7));
  CHECK(qe.d == 3);

  // a_2 = lambda((a)) ^{(a^2)}u / u for a = (1 + sqrt(-7))/2
  CycloElem u = *w.exact;
  QuadInt a{0, 1};
  Ideal xa = k.principal(a);
  // ^{(a^2)} acts by zeta -> zeta^{N(a)^2}; both primes above 2 contribute
  Complex lam_num = c.lambda(xa);
  Complex direct(0L, 192);
  for (const auto& x : k.ideals_of_norm(2)) {
    Complex lx = c.lambda(x);
    i64 n2 = ipow_mod(x.norm(), 2, 7);
    direct += lx * galois_apply(n2, u).embed(192) / u.embed(192);
  }
  CHECK(absd(qe.a(2) - direct) < 1e-30);
  CHECK(absd(lam_num) > 0);

  // g_u spans the two conjugate newforms of the orbit, so it is no eigenform:
  // eps(2) = zeta_3 lies outside Q(zeta_7), which holds every a_n
  auto r = hecke_verify(qe, canonical_eta(7, 3));
  CHECK(r.exact);
  CHECK(r.p_column_zero);
  CHECK(r.multiplicative_failures > 0);
  CHECK(r.recursion_failures > 0);
  // the canonical orbit members satisfy both relations exactly
  auto canon = canonical_direction(k, c, 200);
  CHECK(hecke_verify(canon, canonical_eta(7, 1)).pass());

  // untwisted lambda is rejected for d > 1
  CHECK_THROWS_AS(direction_from_element(s, s.one(), CycloElem::one(7), 20, "lambda"), std::runtime_error);
}

TEST_CASE("w = 1 for d = 1 reproduces the canonical direction") {
  for (i64 p : {7, 23}) {
    FieldContext k(p);
    Cocycle c = Cocycle::compute(k, 160);
    CocycleSpace s(c, canonical_eta(p, 1), 160);
    auto w = s.make_modular();
    auto a = direction_from_twist(s, w, 120);
    auto b = canonical_direction(k, c, 120);
    for (std::size_t n = 1; n <= 120; ++n) CHECK(absd(a.a(n) - b.a(n)) < 1e-30 * (1 + absd(b.a(n))));
  }
}

TEST_CASE("conjugate directions") {
  FieldContext k(7);
  Cocycle c = Cocycle::compute(k, 192);
  CocycleSpace s(c, canonical_eta(7, 3), 192);
  auto w = s.make_modular();
  auto qe = direction_from_twist(s, w, 100);

  auto same = conjugate_direction(qe, 1, CycloElem::one(7));
  for (std::size_t n = 0; n < 100; ++n) CHECK(same.exact[n] == qe.exact[n]);
  CHECK_THROWS_AS(conjugate_direction(qe, 1, CycloElem::zero(7)), std::invalid_argument);

  // sigma_3 of the coefficients of g_u is the direction of sigma_3 u
  auto conj3 = conjugate_direction(qe, 3, CycloElem::one(7));
  CycloElem u3 = galois_apply(3, *w.exact);
  auto direct = direction_from_element(s, s.from_cyclo(u3), u3, 100, "sigma_3 u");
  CHECK(conj3.exact[0] == CycloElem::one(7));
  for (std::size_t n = 0; n < 100; ++n) CHECK(conj3.exact[n] == direct.exact[n]);

  // twist identity on random principal ideals
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> pick(-6, 6);
  std::vector<Ideal> sample;
  while (sample.size() < 5) {
    QuadInt a{pick(rng), pick(rng)};
    if (k.norm(a) <= 1 || k.residue(a) == 0) continue;
    sample.push_back(k.principal(a));
  }
  CHECK(twist_identity_residual(s, w.u, sample, 30) < 1e-25);

  FieldContext k23(23);
  Cocycle c23 = Cocycle::compute(k23, 160);
  CocycleSpace s23(c23, canonical_eta(23, 11), 160);
  auto w23 = s23.make_modular();
  std::vector<Ideal> mixed{k23.ideals_of_norm(2)[0], k23.ideals_of_norm(3)[0], k23.principal({3, 1})};
  CHECK(twist_identity_residual(s23, w23.u, mixed, 20) < 1e-25);
}
