#include <stdexcept>

#include "cmdir/analytic.hpp"
#include "doctest.h"

using namespace cmdir;

namespace {

constexpr prec_t kPrec = 256;

double rel(const Complex& a, const Complex& b) { return (abs(a - b) / abs(b)).to_double(); }
double rel(const Real& a, const Real& b) { return (abs(a - b) / abs(b)).to_double(); }

Complex cx(double re, double im) { return {Real(re, kPrec), Real(im, kPrec)}; }

}  // namespace

TEST_CASE("dedekind eta at i") {
  // Gamma(1/4) / (2 pi^{3/4}), 50 digits via mpmath
  Real expect("0.7682254223260566590025941795761806445178669144648", kPrec);
  Complex e = dedekind_eta(Complex(Real(0L, kPrec), Real(1L, kPrec)), kPrec);
  CHECK(abs(e.im()).to_double() < 1e-60);
  CHECK(rel(e.re(), expect) < 1e-48);
  // closed form at full precision
  Real cf = gamma_fn(mpq_class(1, 4), kPrec) / (pow(pi(kPrec), Real(0.75, kPrec)) * 2);
  CHECK(rel(e.re(), cf) < 1e-70);
}

TEST_CASE("dedekind eta transformation laws") {
  Complex tau = cx(0.123, 0.87);
  Complex e = dedekind_eta(tau, kPrec);
  // eta(tau + 1) = exp(pi i / 12) eta(tau)
  Complex shifted = dedekind_eta(tau + Complex(1L, kPrec), kPrec);
  Complex phase = expi(pi(kPrec) / 12);
  CHECK(rel(shifted, phase * e) < 1e-70);
  // eta(-1/tau) = sqrt(-i tau) eta(tau)
  Complex inv = dedekind_eta(-Complex(1L, kPrec) / tau, kPrec);
  Complex s = sqrt(-I(kPrec) * tau);
  CHECK(rel(inv, s * e) < 1e-70);
  CHECK_THROWS_AS(dedekind_eta(cx(0.3, -0.1), kPrec), std::domain_error);
  CHECK_THROWS_AS(dedekind_eta(cx(0.3, 0.0), kPrec), std::domain_error);
}

TEST_CASE("j invariant of class number one orders") {
  struct Case {
    long p;
    const char* j;
  };
  for (auto c : {Case{7, "-3375"}, Case{11, "-32768"}, Case{19, "-884736"}, Case{43, "-884736000"},
                 Case{67, "-147197952000"}, Case{163, "-262537412640768000"}}) {
    FieldContext k(c.p);
    Complex j = j_invariant(k, k.unit_ideal(), kPrec);
    Complex je = j_invariant_eisenstein(k, k.unit_ideal(), kPrec);
    Real expect(mpz_class(c.j), kPrec);
    CHECK_MESSAGE(rel(j.re(), expect) < 1e-60, "p=" << c.p);
    CHECK(abs(j.im()).to_double() < 1e-40);
    CHECK(rel(je, j) < 1e-60);
  }
  CHECK(rel(j_of_tau(cx(0, 1), kPrec), Complex(1728L, kPrec)) < 1e-60);
}

TEST_CASE("j invariants for p = 23 are the roots of the class polynomial") {
  FieldContext k(23);
  std::vector<Complex> js;
  for (const auto& r : k.class_reps()) js.push_back(j_invariant(k, r, kPrec));
  REQUIRE(js.size() == 3);
  // H_{-23}(X) = X^3 + 3491750 X^2 - 5151296875 X + 12771880859375
  Complex e1 = js[0] + js[1] + js[2];
  Complex e2 = js[0] * js[1] + js[0] * js[2] + js[1] * js[2];
  Complex e3 = js[0] * js[1] * js[2];
  CHECK(rel(e1, Complex(-3491750L, kPrec)) < 1e-50);
  CHECK(rel(e2, Complex(-5151296875L, kPrec)) < 1e-50);
  CHECK(rel(e3, Complex(Real(mpz_class("-12771880859375"), kPrec))) < 1e-50);
  // class invariant: j depends only on the class
  Ideal b = k.ideals_of_norm(2)[0];
  Complex jb = j_invariant(k, b, kPrec);
  Complex jr = j_invariant(k, k.class_reps()[k.class_index(b)], kPrec);
  CHECK(rel(jb, jr) < 1e-50);
}

TEST_CASE("delta of ideals is homogeneous of weight -12") {
  FieldContext k(23);
  Ideal a = k.class_reps()[1];
  QuadInt x{3, 1};
  Ideal xa = k.mul(k.principal(x), a);
  Complex d = delta_of_ideal(k, a, kPrec), dx = delta_of_ideal(k, xa, kPrec);
  CHECK(rel(dx, d / pow(embed(k, x, kPrec), 12L)) < 1e-60);
  FieldContext k7(7);
  // Delta(O_K) and j: j = g2^3 1728 / (g2^3 - 27 g3^2)
  auto lb = ideal_lattice(k7, k7.unit_ideal(), kPrec);
  auto [g2, g3] = lattice_invariants(lb, kPrec);
  Complex del = delta_of_lattice(lb, kPrec);
  CHECK(rel(g2 * g2 * g2 - g3 * g3 * 27, del) < 1e-60);
}

TEST_CASE("lattice reduction preserves the lattice") {
  LatticeBasis b{cx(1.3, 0.2), cx(7.1, 3.9)};
  LatticeBasis r = b.reduced();
  CHECK(r.tau().im().sign() > 0);
  CHECK(abs(r.tau().re()).to_double() <= 0.5 + 1e-30);
  CHECK(abs(r.tau()).to_double() >= 1 - 1e-30);
  CHECK(lattice_distance(b, r).to_double() >= 0);
  CHECK(lattice_distance(b, r).to_double() < 1e-60);
  LatticeBasis half{b.omega1 * Real(2L, kPrec), b.omega2};
  CHECK(lattice_distance(b, half).to_double() < 0);
  CHECK_THROWS_AS((LatticeBasis{cx(1, 0), cx(2, 0)}.oriented()), std::domain_error);
}

TEST_CASE("gamma function identities") {
  Real sqrt_pi = sqrt(pi(kPrec));
  CHECK(rel(gamma_fn(mpq_class(1, 2), kPrec), sqrt_pi) < 1e-70);
  CHECK(rel(gamma_fn(mpq_class(5), kPrec), Real(24L, kPrec)) < 1e-70);
  Real refl = gamma_fn(mpq_class(1, 3), kPrec) * gamma_fn(mpq_class(2, 3), kPrec);
  CHECK(rel(refl, two_pi(kPrec) / sqrt(Real(3L, kPrec))) < 1e-70);
  Real g17("6.5480629402478244377140933494289962626211351873841", kPrec);
  CHECK(rel(gamma_fn(mpq_class(1, 7), kPrec), g17) < 1e-48);
  // functional equation at a non-special point
  Real a = gamma_fn(mpq_class(17, 5), kPrec), b = gamma_fn(mpq_class(12, 5), kPrec);
  CHECK(rel(a, b * Real(mpq_class(12, 5), kPrec)) < 1e-70);
  CHECK_THROWS_AS(gamma_fn(mpq_class(0), kPrec), std::domain_error);
}

TEST_CASE("complex agm") {
  Real expect("1.1981402347355922074399224922803238782272126632157", kPrec);
  Complex m = agm(Complex(1L, kPrec), Complex(sqrt(Real(2L, kPrec))), kPrec);
  CHECK(rel(m.re(), expect) < 1e-48);
  CHECK(abs(m.im()).to_double() < 1e-60);
}

TEST_CASE("agm period lattice reproduces the invariants") {
  // y^2 + xy = x^3 - x^2 - 2x - 1 (c4 = 105, c6 = 1323)
  for (auto [c4, c6] : {std::pair<long, long>{105, 1323}, {352, -6776}, {-48, 0}, {0, 864}}) {
    LatticeBasis lb = agm_real_period(Complex(c4, kPrec), Complex(c6, kPrec), kPrec);
    auto [g2, g3] = lattice_invariants(lb, kPrec);
    if (c4) CHECK(rel(g2, Complex(mpq_class(c4, 12), kPrec)) < 1e-60);
    else CHECK(abs(g2).to_double() < 1e-60);
    if (c6) CHECK(rel(g3, Complex(mpq_class(c6, 216), kPrec)) < 1e-60);
    else CHECK(abs(g3).to_double() < 1e-60);
  }
  // c4^3 = c6^2
  CHECK_THROWS_AS(agm_real_period(Complex(4L, kPrec), Complex(8L, kPrec), kPrec), std::domain_error);
}

TEST_CASE("distance to integers") {
  FieldContext k(7);
  QuadInt near;
  Complex z = embed(k, {3, -2}, kPrec);
  CHECK(distance_to_integers(k, z, &near).to_double() < 1e-60);
  CHECK(near == QuadInt{3, -2});
  Complex off = z + cx(0.25, 0);
  CHECK(distance_to_integers(k, off).to_double() == doctest::Approx(0.25));
}
