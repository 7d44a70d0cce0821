#pragma once

#include <gmpxx.h>

#include "cmdir/bigfloat.hpp"
#include "cmdir/quadfield.hpp"

namespace cmdir {

using BigComplex = Complex;

struct LatticeBasis {
  Complex omega1, omega2;
  Complex tau() const { return omega2 / omega1; }
  // Same lattice with Im(omega2/omega1) > 0.
  LatticeBasis oriented() const;
  // Same lattice, tau reduced to the standard fundamental domain.
  LatticeBasis reduced() const;
};

// Fixed embedding sqrt(-p) = +i sqrt(p).
Complex embed(const FieldContext& k, const QuadInt& x, prec_t prec);
LatticeBasis ideal_lattice(const FieldContext& k, const Ideal& x, prec_t prec);

Complex dedekind_eta(const Complex& tau, prec_t prec);
// Normalized Eisenstein series E4, E6 (constant term 1).
Complex eisenstein_e4(const Complex& tau, prec_t prec);
Complex eisenstein_e6(const Complex& tau, prec_t prec);

Complex delta_of_lattice(const LatticeBasis& basis, prec_t prec);
Complex delta_of_ideal(const FieldContext& k, const Ideal& x, prec_t prec);
// g2, g3 of the lattice.
std::pair<Complex, Complex> lattice_invariants(const LatticeBasis& basis, prec_t prec);

Complex j_of_tau(const Complex& tau, prec_t prec);
Complex j_of_tau_eisenstein(const Complex& tau, prec_t prec);
Complex j_invariant(const FieldContext& k, const Ideal& x, prec_t prec);
Complex j_invariant_eisenstein(const FieldContext& k, const Ideal& x, prec_t prec);

Real gamma_fn(const mpq_class& x, prec_t prec);
Real log_gamma_positive(const Real& x);  // x > 0

// Lattice with g2 = c4/12, g3 = c6/216, i.e. periods of dx/y on
// y^2 = 4x^3 - g2 x - g3, via the complex AGM.  Reduced and oriented.
LatticeBasis agm_real_period(const Complex& c4, const Complex& c6, prec_t prec);
Complex agm(Complex a, Complex b, prec_t prec);

// Coordinates of v in basis (w1, w2) as reals.
std::pair<Real, Real> lattice_coordinates(const LatticeBasis& b, const Complex& v);
// Max relative distance of the basis vectors of `other` from `b`, plus the
// integer test det = +-1.  Returns a negative value if not unimodular.
Real lattice_distance(const LatticeBasis& b, const LatticeBasis& other);
// Distance of x from the nearest element of k's ring of integers under the
// fixed embedding, measured in the (1, omega) coordinates.
Real distance_to_integers(const FieldContext& k, const Complex& z, QuadInt* nearest = nullptr);

}  // namespace cmdir
