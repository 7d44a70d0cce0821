#include <map>
#include <random>
#include <stdexcept>

#include "cmdir/quadfield.hpp"
#include "doctest.h"

using namespace cmdir;

namespace {

// Class numbers from the analytic class number formula
// h = -(1/p) sum_{a<p} a (a/p), computed offline.
const std::map<i64, int> kClassNumbers = {
    {7, 1},   {11, 1}, {19, 1},  {23, 3},  {31, 3},  {43, 1},  {47, 5},  {59, 3},
    {67, 1},  {71, 7}, {79, 5},  {83, 3},  {103, 5}, {107, 3}, {127, 5}, {131, 5},
    {139, 3}, {151, 7}, {163, 1}, {167, 11}, {179, 5}, {191, 13}, {199, 9}};

std::vector<Ideal> sample_ideals(const FieldContext& k, i64 max_norm) {
  std::vector<Ideal> out;
  for (i64 n = 1; n <= max_norm; ++n)
    for (const auto& x : k.ideals_of_norm(n, false)) out.push_back(x);
  return out;
}

// Brute-force generator search independent of the class group machinery.
bool brute_principal(const FieldContext& k, const Ideal& x) {
  i64 n = x.norm();
  for (i64 b = -40; b <= 40; ++b)
    for (i64 a = -200; a <= 200; ++a)
      if (k.norm({a, b}) == n && k.contains(x, {a, b})) return true;
  return false;
}

}  // namespace

TEST_CASE("make_field validates p") {
  CHECK_THROWS_WITH_AS(FieldContext(13), doctest::Contains("3 mod 4"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(FieldContext(15), doctest::Contains("not prime"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(FieldContext(3), doctest::Contains("exceed 3"), std::invalid_argument);
  CHECK_THROWS_AS(FieldContext(49), std::invalid_argument);
}

TEST_CASE("class numbers") {
  for (auto [p, h] : kClassNumbers) {
    FieldContext k(p);
    CHECK_MESSAGE(k.class_number() == h, "p = " << p);
    CHECK(h % 2 == 1);
    for (const auto& r : k.class_reps()) CHECK(r.norm() % p != 0);
  }
  FieldContext k7(7);
  REQUIRE(k7.class_reps().size() == 1);
  CHECK(k7.class_reps()[0] == k7.unit_ideal());
}

TEST_CASE("class representatives and table") {
  for (i64 p : {23, 31, 47, 71, 167}) {
    FieldContext k(p);
    int h = k.class_number();
    const auto& reps = k.class_reps();
    for (int c = 0; c < h; ++c) {
      CHECK(k.class_index(reps[c]) == c);
      CHECK(k.conj(reps[c]) == reps[k.class_inv(c)]);
      if (c) {
        CHECK(reps[c].norm() % 2 != 0);
        CHECK(is_prime(reps[c].norm()));
      }
    }
    const auto& t = k.multiplication_table();
    for (int a = 0; a < h; ++a) {
      CHECK(t[0][a] == a);
      bool has_inverse = false;
      for (int b = 0; b < h; ++b) {
        if (t[a][b] == 0) has_inverse = true;
        CHECK(t[a][b] == t[b][a]);
        for (int c = 0; c < h; ++c) CHECK(t[t[a][b]][c] == t[a][t[b][c]]);
      }
      CHECK(has_inverse);
    }
    // composition table agrees with ideal multiplication
    for (int a = 0; a < h; ++a)
      for (int b = 0; b < h; ++b) CHECK(k.class_index(k.mul(reps[a], reps[b])) == t[a][b]);
  }
}

TEST_CASE("ideal multiplication examples") {
  FieldContext k7(7);
  CHECK(k7.mul(k7.unit_ideal(), k7.unit_ideal()) == k7.unit_ideal());
  auto twos = k7.ideals_of_norm(2);
  REQUIRE(twos.size() == 2);
  CHECK(k7.conj(twos[0]) == twos[1]);
  CHECK(k7.mul(twos[0], twos[1]) == k7.principal({2, 0}));

  FieldContext k23(23);
  auto b = k23.ideals_of_norm(2);
  REQUIRE(b.size() == 2);
  CHECK_FALSE(k23.is_principal(b[0]).has_value());
  Ideal cube = k23.pow(b[0], 3);
  CHECK(cube.norm() == 8);
  auto g = k23.is_principal(cube);
  REQUIRE(g.has_value());
  CHECK(k23.norm(*g) == 8);
  CHECK(k23.principal(*g) == cube);
}

TEST_CASE("norm multiplicativity and conjugation") {
  std::mt19937_64 rng(7);
  for (i64 p : {7, 23, 47, 71}) {
    FieldContext k(p);
    auto ideals = sample_ideals(k, 60);
    std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const Ideal& x = ideals[pick(rng)];
      const Ideal& y = ideals[pick(rng)];
      Ideal xy = k.mul(x, y);
      CHECK(xy.norm() == x.norm() * y.norm());
      CHECK(k.conj(k.conj(x)) == x);
      CHECK(k.conj(xy) == k.mul(k.conj(x), k.conj(y)));
      CHECK(k.mul(x, k.conj(x)) == k.principal({x.norm(), 0}));
      CHECK(xy == k.mul(y, x));
    }
  }
}

TEST_CASE("is_principal against brute force") {
  for (i64 p : {7, 23, 31, 47}) {
    FieldContext k(p);
    for (i64 n = 1; n < 50; ++n)
      for (const auto& x : k.ideals_of_norm(n, false)) {
        auto g = k.is_principal(x);
        CHECK_MESSAGE(g.has_value() == brute_principal(k, x), "p=" << p << " " << to_string(x));
        if (g) {
          CHECK(k.norm(*g) == x.norm());
          CHECK(k.principal(*g) == x);
          if (k.coprime_to_p(x)) CHECK(k.jacobi_symbol_mod_p(*g) == 1);
        }
      }
  }
}

TEST_CASE("is_principal examples") {
  FieldContext k(7);
  auto g = k.is_principal(k.p_ideal());
  REQUIRE(g.has_value());
  CHECK(*g == k.sqrt_minus_p());
  for (i64 n = 1; n < 30; ++n)
    for (const auto& x : k.ideals_of_norm(n, false)) CHECK(k.is_principal(x).has_value());
}

TEST_CASE("ideals_of_norm") {
  FieldContext k(7);
  auto one = k.ideals_of_norm(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == k.unit_ideal());
  CHECK(k.ideals_of_norm(3).empty());
  CHECK(k.ideals_of_norm(7).empty());
  CHECK(k.ideals_of_norm(7, false).size() == 1);
  CHECK(k.ideals_of_norm(9).size() == 1);
  // count = sum_{d | n} kronecker(-p, d) for n coprime to p
  for (i64 p : {7, 23, 31}) {
    FieldContext kp(p);
    for (i64 n = 1; n < 300; ++n) {
      if (n % p == 0) continue;
      long expect = 0;
      for (i64 d : divisors(n)) {
        // Kronecker (-p / d) = (d / p) for p = 3 mod 4 and odd or even d
        expect += legendre(d, p);
      }
      CHECK_MESSAGE(static_cast<long>(kp.ideals_of_norm(n).size()) == expect, "p=" << p << " n=" << n);
    }
  }
}

TEST_CASE("jacobi symbol mod p") {
  FieldContext k(7);
  CHECK(k.jacobi_symbol_mod_p({1, 0}) == 1);
  CHECK(k.jacobi_symbol_mod_p({3, 0}) == -1);
  CHECK_THROWS_AS(k.jacobi_symbol_mod_p(k.sqrt_minus_p()), std::domain_error);
  for (i64 p : {7, 11, 19, 23, 31, 43}) {
    FieldContext kp(p);
    CHECK(kp.jacobi_symbol_mod_p({-1, 0}) == -1);
    // conjugation acts trivially mod the prime above p
    for (i64 a = -5; a <= 5; ++a)
      for (i64 b = -5; b <= 5; ++b) {
        QuadInt x{a, b};
        if (kp.residue(x) == 0) continue;
        CHECK(kp.jacobi_symbol_mod_p(x) == kp.jacobi_symbol_mod_p(kp.conj(x)));
        CHECK(kp.residue(kp.mul(x, x)) == mod(kp.residue(x) * kp.residue(x), p));
      }
  }
}

TEST_CASE("reduced basis spans the ideal") {
  FieldContext k(23);
  for (i64 n = 1; n < 80; ++n)
    for (const auto& x : k.ideals_of_norm(n, false)) {
      auto [a, b] = reduced_basis(k, x);
      CHECK(k.contains(x, a));
      CHECK(k.contains(x, b));
      // index of span(a, b) in O_K equals the norm: |Im(b conj(a))| / Im(w)
      QuadInt t = k.mul(b, k.conj(a));
      CHECK(t.b == x.norm());
      CHECK(k.norm(a) <= k.norm(b));
    }
}
