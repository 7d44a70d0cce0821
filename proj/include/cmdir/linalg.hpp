#pragma once

#include <gmpxx.h>

#include <vector>

#include "cmdir/bigfloat.hpp"

namespace cmdir {

using CVector = std::vector<Complex>;
using CMatrix = std::vector<CVector>;  // row-major
using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;

CMatrix cidentity(std::size_t n, prec_t prec);
CMatrix czeros(std::size_t rows, std::size_t cols, prec_t prec);
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CVector matvec(const CMatrix& a, const CVector& x);
CMatrix sub(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& a, const Complex& s);
Real max_abs(const CMatrix& a);
Real max_abs(const CVector& v);

// Rank by Gaussian elimination with partial pivoting; entries below
// tol * max|a| are treated as zero.
std::size_t rank(CMatrix a, const Real& tol);
std::size_t nullity(const CMatrix& a, const Real& tol);
// Solve a x = b for square nonsingular a.
CVector solve(CMatrix a, CVector b);
// One nonzero null vector of a, or empty if a is numerically injective.
CVector null_vector(CMatrix a, const Real& tol);

QMatrix qidentity(std::size_t n);
QMatrix matmul(const QMatrix& a, const QMatrix& b);
QMatrix add(const QMatrix& a, const QMatrix& b);
QMatrix scale(const QMatrix& a, const mpq_class& s);
std::size_t rank(QMatrix a);
QMatrix inverse(QMatrix a);
// det(X I - a), coefficients low to high (monic of degree n).
QVector charpoly(const QMatrix& a);
CMatrix to_complex(const QMatrix& a, prec_t prec);

}  // namespace cmdir
