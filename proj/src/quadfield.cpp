#include "cmdir/quadfield.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmdir {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 ipow_mod(i64 b, i64 e, i64 m) {
  __int128 r = 1 % m, x = mod(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<i64>(r);
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 inv_mod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
    std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(x, m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 legendre(i64 a, i64 p) {
  i64 r = mod(a, p);
  if (r == 0) return 0;
  return ipow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (i64 q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      r -= r / q;
    }
  if (n > 1) r -= r / n;
  return r;
}

std::string to_string(const QuadInt& x) {
  return std::to_string(x.a) + (x.b < 0 ? " - " : " + ") + std::to_string(x.b < 0 ? -x.b : x.b) + "w";
}

std::string to_string(const Ideal& x) {
  std::string s = "(" + std::to_string(x.n) + ", " + std::to_string(x.shift) + " + w)";
  return x.content == 1 ? s : std::to_string(x.content) + s;
}

namespace {

struct Hnf {
  i64 a, b, c;  // lattice a Z + (b + c w) Z
};

// Hermite normal form of the Z-span of x_i + y_i w.
Hnf hnf(std::vector<std::pair<i64, i64>> gens) {
  // Euclid on the w-coordinate.
  for (;;) {
    std::size_t piv = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].second != 0 && (piv == gens.size() || std::llabs(gens[i].second) < std::llabs(gens[piv].second)))
        piv = i;
    if (piv == gens.size()) throw std::logic_error("hnf: rank deficient");
    bool done = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i == piv || gens[i].second == 0) continue;
      i64 q = gens[i].second / gens[piv].second;
      gens[i].first -= q * gens[piv].first;
      gens[i].second -= q * gens[piv].second;
      if (gens[i].second != 0) done = false;
    }
    if (done) {
      i64 a = 0;
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (i != piv) a = std::gcd(a, gens[i].first);
      i64 b = gens[piv].first, c = gens[piv].second;
      if (c < 0) {
        b = -b;
        c = -c;
      }
      if (a == 0) throw std::logic_error("hnf: rank deficient");
      return {a, mod(b, a), c};
    }
  }
}

}  // namespace

QuadInt FieldContext::mul(const QuadInt& x, const QuadInt& y) const {
  return {x.a * y.a - x.b * y.b * p1_, x.a * y.b + x.b * y.a + x.b * y.b};
}

static Ideal from_hnf(const Hnf& h) {
  if (h.a % h.c != 0 || h.b % h.c != 0) throw std::logic_error("lattice is not an ideal");
  i64 n = h.a / h.c;
  return {h.c, n, mod(h.b / h.c, n)};
}

Ideal FieldContext::principal(const QuadInt& x) const {
  if (x.a == 0 && x.b == 0) throw std::invalid_argument("principal: zero element");
  QuadInt xw = mul(x, {0, 1});
  return from_hnf(hnf({{x.a, x.b}, {xw.a, xw.b}}));
}

Ideal FieldContext::mul(const Ideal& x, const Ideal& y) const {
  QuadInt gx[2] = {{x.n, 0}, {x.shift, 1}};
  QuadInt gy[2] = {{y.n, 0}, {y.shift, 1}};
  std::vector<std::pair<i64, i64>> gens;
  for (auto& u : gx)
    for (auto& v : gy) {
      QuadInt w = mul(u, v);
      gens.emplace_back(w.a, w.b);
    }
  Ideal r = from_hnf(hnf(gens));
  r.content *= x.content * y.content;
  return r;
}

Ideal FieldContext::pow(const Ideal& x, int e) const {
  if (e < 0) throw std::invalid_argument("pow: negative exponent");
  Ideal r = unit_ideal(), b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Ideal FieldContext::conj(const Ideal& x) const { return {x.content, x.n, mod(-1 - x.shift, x.n)}; }

bool FieldContext::contains(const Ideal& x, const QuadInt& a) const {
  if (a.a % x.content != 0 || a.b % x.content != 0) return false;
  i64 u = a.a / x.content, v = a.b / x.content;
  return mod(u - v * x.shift, x.n) == 0;
}

QuadForm FieldContext::reduced_form(const Ideal& x) const {
  i64 a = x.n, b = 2 * x.shift + 1;
  i64 c = static_cast<i64>((static_cast<__int128>(x.shift) * x.shift + x.shift + p1_) / a);
  auto ceil_div = [](i64 u, i64 v) { return u >= 0 ? (u + v - 1) / v : -((-u) / v); };
  for (;;) {
    if (b > a || b <= -a) {
      b -= 2 * a * ceil_div(b - a, 2 * a);
      c = (b * b + p_) / (4 * a);
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
  }
}

int FieldContext::class_index(const Ideal& x) const {
  auto it = index_of_form_.find(reduced_form(x));
  if (it == index_of_form_.end()) throw std::logic_error("class_index: unknown form");
  return it->second;
}

FieldContext::FieldContext(i64 p) : p_(p), p1_((1 + p) / 4) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (p <= 3) throw std::invalid_argument("p = " + std::to_string(p) + " must exceed 3");
  if (p % 4 != 3) throw std::invalid_argument("p = " + std::to_string(p) + " is not 3 mod 4");

  // Reduced forms (a, b, c), b odd, b^2 - 4ac = -p.
  for (i64 a = 1; 3 * a * a <= p; ++a)
    for (i64 b = -a + 1; b <= a; ++b) {
      if (mod(b, 2) != 1) continue;
      i64 num = b * b + p;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      forms_.push_back({a, b, c});
    }
  h_ = static_cast<int>(forms_.size());

  auto prime_ideals_above = [&](i64 l) {
    std::vector<Ideal> out;
    for (i64 b = 0; b < l; ++b)
      if ((b * b + b + p1_) % l == 0) out.push_back({1, l, b});
    return out;
  };
  auto form_ideal = [&](const QuadForm& f) { return Ideal{1, f.a, mod((f.b - 1) / 2, f.a)}; };

  // Cyclicity check: some class must have order h.
  auto order_of = [&](const Ideal& x) {
    QuadForm id = reduced_form(unit_ideal());
    Ideal y = x;
    int k = 1;
    while (reduced_form(y) != id) {
      y = form_ideal(reduced_form(mul(y, x)));
      ++k;
      if (k > h_) throw std::logic_error("order_of: exceeded class number");
    }
    return k;
  };
  bool cyclic = false;
  for (const auto& f : forms_)
    if (order_of(form_ideal(f)) == h_) cyclic = true;
  if (!cyclic) throw std::domain_error("class group of Q(sqrt(-" + std::to_string(p) + ")) is not cyclic");

  // Generator: smallest split prime of norm coprime to 2p with order h.
  std::optional<Ideal> gen;
  for (i64 l = 3; !gen; l += 2) {
    if (l == p || !is_prime(l) || legendre(-p, l) != 1) continue;
    for (const auto& q : prime_ideals_above(l))
      if (!gen && order_of(q) == h_) gen = q;
  }
  Ideal y = unit_ideal();
  for (int k = 0; k < h_; ++k) {
    index_of_form_[reduced_form(y)] = k;
    y = form_ideal(reduced_form(mul(y, *gen)));
  }

  reps_.assign(h_, unit_ideal());
  std::vector<bool> have(h_, false);
  have[0] = true;
  int missing = h_ - 1;
  for (i64 l = 3; missing > 0; l += 2) {
    if (l == p || !is_prime(l) || legendre(-p, l) != 1) continue;
    for (const auto& q : prime_ideals_above(l)) {
      int k = class_index(q);
      if (!have[k]) {
        have[k] = true;
        reps_[k] = q;
        --missing;
      }
    }
  }

  table_.assign(h_, std::vector<int>(h_, 0));
  for (int i = 0; i < h_; ++i)
    for (int j = 0; j < h_; ++j) table_[i][j] = class_mul(i, j);
}

std::optional<QuadInt> FieldContext::primitive_generator(i64 n, i64 shift) const {
  // x + y w with 4n = (2x + y)^2 + p y^2 and n | x - y*shift.
  for (i64 y = 0; p_ * y * y <= 4 * n; ++y) {
    i64 r = 4 * n - p_ * y * y;
    i64 s = static_cast<i64>(std::llround(std::sqrt(static_cast<long double>(r))));
    while (s * s > r) --s;
    while ((s + 1) * (s + 1) <= r) ++s;
    if (s * s != r) continue;
    for (i64 sy : {y, -y})
      for (i64 t : {s, -s}) {
        if (mod(t - sy, 2) != 0) continue;
        i64 x = (t - sy) / 2;
        if (mod(x - sy * shift, n) == 0) return QuadInt{x, sy};
      }
  }
  return std::nullopt;
}

QuadInt FieldContext::normalize_generator(QuadInt g, bool coprime) const {
  if (coprime) {
    if (jacobi_symbol_mod_p(g) != 1) g = -g;
    return g;
  }
  i64 re2 = 2 * g.a + g.b;  // twice the real part
  if (re2 < 0 || (re2 == 0 && g.b < 0)) g = -g;
  return g;
}

std::optional<QuadInt> FieldContext::is_principal(const Ideal& x) const {
  if (class_index(x) != 0) return std::nullopt;
  auto g = primitive_generator(x.n, x.shift);
  if (!g) throw std::logic_error("is_principal: trivial class without generator");
  QuadInt r{g->a * x.content, g->b * x.content};
  return normalize_generator(r, coprime_to_p(x));
}

std::vector<Ideal> FieldContext::ideals_of_norm(i64 n, bool coprime) const {
  std::vector<Ideal> out;
  if (n < 1) throw std::invalid_argument("ideals_of_norm: n must be positive");
  if (coprime && n % p_ == 0) return out;
  for (i64 c = 1; c * c <= n; ++c) {
    if (n % (c * c) != 0) continue;
    i64 m = n / (c * c);
    for (i64 b = 0; b < m; ++b)
      if ((b * b + b + p1_) % m == 0) out.push_back({c, m, b});
  }
  return out;
}

i64 FieldContext::residue(const QuadInt& a) const {
  // omega = 1/2 mod the prime above p.
  i64 half = (p_ + 1) / 2;
  return mod(mod(a.a, p_) + mod(a.b, p_) * half, p_);
}

int FieldContext::jacobi_symbol_mod_p(const QuadInt& a) const {
  i64 m = residue(a);
  if (m == 0) throw std::domain_error("jacobi_symbol_mod_p: element divisible by sqrt(-p)");
  return static_cast<int>(legendre(m, p_));
}

std::pair<QuadInt, QuadInt> reduced_basis(const FieldContext& k, const Ideal& x) {
  QuadInt alpha{x.content * x.n, 0}, beta{x.content * x.shift, x.content};
  auto re2_ratio_num = [&](const QuadInt& u, const QuadInt& v) {
    QuadInt t = k.mul(v, k.conj(u));  // v * conj(u); Re = (2a + b)/2
    return 2 * t.a + t.b;
  };
  for (;;) {
    i64 nu = k.norm(alpha);
    // beta -= round(Re(beta/alpha)) alpha, Re(beta/alpha) = r / (2 nu)
    i64 r = re2_ratio_num(alpha, beta);
    i64 q = static_cast<i64>(std::floor(static_cast<long double>(r) / (2.0L * nu) + 0.5L));
    beta = {beta.a - q * alpha.a, beta.b - q * alpha.b};
    if (k.norm(beta) < nu) {
      QuadInt t = alpha;
      alpha = beta;
      beta = -t;
      continue;
    }
    return {alpha, beta};
  }
}

}  // namespace cmdir
