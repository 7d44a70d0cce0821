#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cmdir {

using i64 = long long;

i64 mod(i64 a, i64 m);
i64 ipow_mod(i64 b, i64 e, i64 m);
i64 inv_mod(i64 a, i64 m);
bool is_prime(i64 n);
i64 legendre(i64 a, i64 p);
i64 gcd(i64 a, i64 b);
std::vector<i64> divisors(i64 n);
i64 euler_phi(i64 n);

// a + b*omega, omega = (1 + sqrt(-p))/2.
struct QuadInt {
  i64 a = 0;
  i64 b = 0;
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
  friend auto operator<=>(const QuadInt&, const QuadInt&) = default;
  QuadInt operator-() const { return {-a, -b}; }
};

// content * (n Z + (shift + omega) Z), 0 <= shift < n, n | N(shift + omega).
struct Ideal {
  i64 content = 1;
  i64 n = 1;
  i64 shift = 0;
  i64 norm() const { return content * content * n; }
  friend bool operator==(const Ideal&, const Ideal&) = default;
  friend auto operator<=>(const Ideal&, const Ideal&) = default;
};

struct QuadForm {
  i64 a, b, c;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

std::string to_string(const QuadInt& x);
std::string to_string(const Ideal& x);

// K = Q(sqrt(-p)) for a prime p = 3 mod 4, p > 3.  Classes are indexed by
// the exponent k of a fixed generator class, so composition is addition
// mod h.  Only cyclic class groups are supported.
class FieldContext {
 public:
  explicit FieldContext(i64 p);

  i64 p() const { return p_; }
  i64 discriminant() const { return -p_; }
  int class_number() const { return h_; }
  // (1+p)/4, so omega^2 = omega - P1.
  i64 p1() const { return p1_; }

  QuadInt mul(const QuadInt& x, const QuadInt& y) const;
  QuadInt add(const QuadInt& x, const QuadInt& y) const { return {x.a + y.a, x.b + y.b}; }
  QuadInt conj(const QuadInt& x) const { return {x.a + x.b, -x.b}; }
  i64 norm(const QuadInt& x) const { return x.a * x.a + x.a * x.b + x.b * x.b * p1_; }
  QuadInt sqrt_minus_p() const { return {-1, 2}; }

  Ideal unit_ideal() const { return {}; }
  Ideal principal(const QuadInt& x) const;
  Ideal mul(const Ideal& x, const Ideal& y) const;
  Ideal pow(const Ideal& x, int e) const;
  Ideal conj(const Ideal& x) const;
  Ideal p_ideal() const { return principal(sqrt_minus_p()); }
  bool contains(const Ideal& x, const QuadInt& a) const;
  bool coprime_to_p(const Ideal& x) const { return x.norm() % p_ != 0; }

  QuadForm reduced_form(const Ideal& x) const;
  int class_index(const Ideal& x) const;
  int class_mul(int i, int j) const { return static_cast<int>(mod(i + j, h_)); }
  int class_inv(int i) const { return static_cast<int>(mod(-i, h_)); }
  const std::vector<std::vector<int>>& multiplication_table() const { return table_; }

  // reps()[k] lies in class k; reps()[0] = O_K, the others are split primes
  // of norm coprime to 2p, smallest norm in their class.
  const std::vector<Ideal>& class_reps() const { return reps_; }
  const std::vector<QuadForm>& reduced_forms() const { return forms_; }

  // Generator of a principal ideal, normalized: (a/p) = +1 when coprime to
  // the prime above p, otherwise nonnegative real part (then positive
  // imaginary part).
  std::optional<QuadInt> is_principal(const Ideal& x) const;

  std::vector<Ideal> ideals_of_norm(i64 n, bool coprime_to_p = true) const;

  // m in [0, p) with a = m mod (sqrt(-p)).
  i64 residue(const QuadInt& a) const;
  int jacobi_symbol_mod_p(const QuadInt& a) const;

 private:
  std::optional<QuadInt> primitive_generator(i64 n, i64 shift) const;
  QuadInt normalize_generator(QuadInt g, bool coprime) const;

  i64 p_, p1_;
  int h_ = 0;
  std::vector<QuadForm> forms_;
  std::map<QuadForm, int> index_of_form_;
  std::vector<Ideal> reps_;
  std::vector<std::vector<int>> table_;
};

// Z-basis (alpha, beta) of an ideal with Im(beta/alpha) > 0, Gauss reduced:
// |Re(beta/alpha)| <= 1/2 and N(beta) >= N(alpha).
std::pair<QuadInt, QuadInt> reduced_basis(const FieldContext& k, const Ideal& x);

}  // namespace cmdir
