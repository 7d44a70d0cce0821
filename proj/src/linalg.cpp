#include "cmdir/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace cmdir {

CMatrix czeros(std::size_t rows, std::size_t cols, prec_t prec) {
  return CMatrix(rows, CVector(cols, Complex(0L, prec)));
}

CMatrix cidentity(std::size_t n, prec_t prec) {
  CMatrix m = czeros(n, n, prec);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Complex(1L, prec);
  return m;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  prec_t pr = a.empty() || a[0].empty() ? 64 : a[0][0].prec();
  CMatrix c = czeros(n, m, pr);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

CVector matvec(const CMatrix& a, const CVector& x) {
  CVector y;
  y.reserve(a.size());
  for (const auto& row : a) {
    Complex s(0L, x.empty() ? 64 : x[0].prec());
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    y.push_back(std::move(s));
  }
  return y;
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
  CMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b[i][j];
  return c;
}

CMatrix scale(const CMatrix& a, const Complex& s) {
  CMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x = x * s;
  return c;
}

Real max_abs(const CMatrix& a) {
  Real best(0L, a.empty() || a[0].empty() ? 64 : a[0][0].prec());
  for (const auto& row : a)
    for (const auto& x : row) {
      Real v = abs(x);
      if (v > best) best = v;
    }
  return best;
}

Real max_abs(const CVector& v) {
  Real best(0L, v.empty() ? 64 : v[0].prec());
  for (const auto& x : v) {
    Real t = abs(x);
    if (t > best) best = t;
  }
  return best;
}

namespace {

// Row echelon in place; returns pivot columns.
std::vector<std::size_t> echelon(CMatrix& a, const Real& tol) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size();
  Real thresh = max_abs(a) * tol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    Real bv = abs(a[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      Real v = abs(a[i][c]);
      if (v > bv) {
        bv = v;
        best = i;
      }
    }
    if (bv <= thresh) continue;
    std::swap(a[r], a[best]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      Complex f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(CMatrix a, const Real& tol) { return echelon(a, tol).size(); }

std::size_t nullity(const CMatrix& a, const Real& tol) {
  return (a.empty() ? 0 : a[0].size()) - rank(a, tol);
}

CVector solve(CMatrix a, CVector b) {
  std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    Real bv = abs(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      Real v = abs(a[i][c]);
      if (v > bv) {
        bv = v;
        best = i;
      }
    }
    if (bv.is_zero()) throw std::domain_error("solve: singular matrix");
    std::swap(a[c], a[best]);
    std::swap(b[c], b[best]);
    for (std::size_t i = c + 1; i < n; ++i) {
      Complex f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  CVector x(n, Complex(0L, b.empty() ? 64 : b[0].prec()));
  for (std::size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

CVector null_vector(CMatrix a, const Real& tol) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  prec_t pr = a[0][0].prec();
  auto piv = echelon(a, tol);
  if (piv.size() == cols) return {};
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::size_t free = 0;
  while (is_piv[free]) ++free;
  CVector x(cols, Complex(0L, pr));
  x[free] = Complex(1L, pr);
  for (std::size_t r = piv.size(); r-- > 0;) {
    std::size_t c = piv[r];
    Complex s(0L, pr);
    for (std::size_t j = c + 1; j < cols; ++j) s += a[r][j] * x[j];
    x[c] = -s / a[r][c];
  }
  return x;
}

QMatrix qidentity(std::size_t n) {
  QMatrix m(n, QVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix c(n, QVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

QMatrix add(const QMatrix& a, const QMatrix& b) {
  QMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

QMatrix scale(const QMatrix& a, const mpq_class& s) {
  QMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return c;
}

std::size_t rank(QMatrix a) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

QMatrix inverse(QMatrix a) {
  std::size_t n = a.size();
  QMatrix inv = qidentity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error("inverse: singular rational matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    mpq_class d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
QVector charpoly(const QMatrix& a) {
  std::size_t n = a.size();
  QVector c(n + 1, 0);
  c[n] = 1;
  QMatrix m(n, QVector(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix am = matmul(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    QMatrix t = matmul(a, m);
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += t[i][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

CMatrix to_complex(const QMatrix& a, prec_t prec) {
  CMatrix c;
  c.reserve(a.size());
  for (const auto& row : a) {
    CVector r;
    r.reserve(row.size());
    for (const auto& x : row) r.emplace_back(x, prec);
    c.push_back(std::move(r));
  }
  return c;
}

}  // namespace cmdir
