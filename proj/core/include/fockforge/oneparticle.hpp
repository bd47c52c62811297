// Lowest-weight irreducible positive-energy representations at finite
// truncation, plus the Moebius/Cayley geometry of the circle.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace fockforge {

// Truncation of the lowest-weight-n irrep to its first d weight vectors
// e_0, ..., e_{d-1}.  The conformal Hamiltonian eigenvalue on e_k is
// 2*pi*(n + k); the 2*pi stays inside the eigenvalues so that beta is a
// dimensionless inverse temperature throughout.
struct LowestWeightIrrep {
  int n;  // lowest weight, >= 1
  int d;  // truncation dimension, >= 1

  LowestWeightIrrep(int n, int d);
};

// Eigenvalues 2*pi*(n + k), k = 0..d-1, each with multiplicity one.
std::vector<double> rotation_spectrum(const LowestWeightIrrep& irrep);

// Truncated sl(2) ladder triple.  L_zero e_k = (n+k) e_k,
// L_plus e_k = sqrt((k+1)(k+2n)) e_{k+1} (dropped at the cutoff),
// L_minus = transpose(L_plus).  [L_zero, L_plus] = L_plus holds exactly on
// the truncated matrices; [L_minus, L_plus] = 2 L_zero holds away from the
// last basis row/column.
struct LadderOperators {
  Eigen::MatrixXd raising;  // L_plus
  Eigen::MatrixXd lowering; // L_minus
  Eigen::MatrixXd weight;   // L_zero
};
LadderOperators ladder_operators(const LowestWeightIrrep& irrep);

// Tr(e^{-beta l}) = e^{-2 pi beta n} / (1 - e^{-2 pi beta}) over the full
// (untruncated) irrep.  Throws std::domain_error for beta <= 0.
double one_particle_gibbs_trace(int n, double beta);

// Cayley identification of R u {inf} with the unit circle:
// cayley(x) = (1 + ix)/(1 - ix), so 0 -> 1, 1 -> i, inf -> -1 and the
// positive half-line maps onto the upper semicircle I0.
std::complex<double> cayley(double x);
double inverse_cayley(std::complex<double> z);

// Element of PSL(2,R) acting on the line by x -> (ax+b)/(cx+d) and on the
// circle by conjugation with the Cayley map.  ad - bc must equal 1 within
// 1e-12 (checked at construction).
struct MoebiusElement {
  double a, b, c, d;

  MoebiusElement(double a, double b, double c, double d);

  static MoebiusElement identity();
  MoebiusElement inverse() const;
  MoebiusElement compose(const MoebiusElement& rhs) const;  // this after rhs

  double apply_line(double x) const;
  std::complex<double> apply_circle(std::complex<double> z) const;

  double max_entry_distance(const MoebiusElement& rhs) const;
};

MoebiusElement operator*(const MoebiusElement& lhs, const MoebiusElement& rhs);

// One-parameter flows attached to I0: dilations x -> e^t x, translations
// x -> x + t, and rotations of the circle by angle theta.
MoebiusElement dilation_flow(double t);
MoebiusElement translation_flow(double t);
MoebiusElement rotation_flow(double theta);

// Reflection r_I0: z -> conj(z) on the circle; in the line coordinate it is
// x -> -x.  It fixes the two boundary points of I0 (the Cayley images of 0
// and inf), swaps I0 with its complement, commutes with the dilation flow
// and conjugates the translation flow T(t) to T(-t).  The orientation
// reversing reflection PRESERVING I0 is rotation_flow(pi) composed with r;
// that one conjugates the dilation flow to its inverse.
std::complex<double> reflect_circle(std::complex<double> z);
double reflect_line(double x);

}  // namespace fockforge
