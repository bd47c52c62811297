// Real-linear subspaces of C^d, their symplectic complements, and the
// finite-dimensional Tomita modular data S = J Delta^{1/2} attached to a
// standard subspace.  Real-linear structure is handled by doubling: v in C^d
// becomes [Re v; Im v] in R^{2d}, multiplication by i becomes the block map
// [a;b] -> [-b;a], and Im<u,v> becomes a symplectic form.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace fockforge {

class TruncatedFockSpace;

// R^{2d} doubling helpers.
Eigen::VectorXd realify(const Eigen::VectorXcd& v);
Eigen::VectorXcd complexify(const Eigen::VectorXd& v);

// Real-linear subspace H of C^d, stored as an orthonormal (for Re<.,.>)
// basis of its realification.  Rank decisions use SVD with relative
// threshold 1e-10.
class RealSubspace {
 public:
  static RealSubspace from_generators(
      int d, const std::vector<Eigen::VectorXcd>& generators);
  static RealSubspace from_real_basis(int d, Eigen::MatrixXd basis);

  int ambient_dim() const { return d_; }
  int real_dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  // Canonical complex generators (the basis columns, complexified).
  std::vector<Eigen::VectorXcd> generators() const;

  bool contains(const Eigen::VectorXcd& v, double tol = 1e-10) const;

  static constexpr double kRankThreshold = 1e-10;

 private:
  RealSubspace(int d, Eigen::MatrixXd basis);

  int d_;
  Eigen::MatrixXd basis_;  // 2d x m, orthonormal columns
};

// H' = { k : Im<h,k> = 0 for all h in H }.  dim H + dim H' = 2d and
// (H')' = H.
RealSubspace symplectic_complement(const RealSubspace& h);

// H is standard iff H + iH = C^d and H cap iH = {0}; equivalently the real
// dimension is d and [B, iB] has full rank 2d.
struct StandardnessReport {
  bool standard;
  int real_dim;          // m
  int rank_sum;          // rank of [B, iB] = dim(H + iH)
  int dim_intersection;  // 2m - rank_sum = dim(H cap iH)
};
StandardnessReport is_standard(const RealSubspace& h);

// Modular data of a standard subspace: S(h + ik) = h - ik for h, k in H,
// Delta = S*S, and S = J Delta^{1/2}.  The anti-linear maps are stored as a
// complex matrix composed with entrywise conjugation in the standard frame:
// S v = s_matrix conj(v), J v = j_unitary conj(v).
struct TomitaData {
  Eigen::MatrixXcd delta;
  Eigen::MatrixXcd s_matrix;
  Eigen::MatrixXcd j_unitary;
  Eigen::VectorXd delta_eigenvalues;   // ascending, all > 0
  Eigen::MatrixXcd delta_eigenvectors; // unitary, columns match eigenvalues
  double conditioning;  // condition number of the frame [B, iB]

  Eigen::VectorXcd apply_s(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd apply_j(const Eigen::VectorXcd& v) const;
  Eigen::MatrixXcd delta_power(double s) const;  // Delta^s
  Eigen::MatrixXcd delta_it(double t) const;     // Delta^{it}
};

// Throws std::invalid_argument unless is_standard(h) holds; conditioning is
// reported so near-degenerate standard subspaces fail loudly rather than
// silently losing digits.
TomitaData tomita(const RealSubspace& h);

// sin of the largest principal angle between the column spans of two
// orthonormal bases of equal dimension.
double subspace_defect(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// max_t defect(Delta^{it} H, H): the modular flow preserves H.
double modular_flow_check(const RealSubspace& h, const std::vector<double>& ts);

// defect(J H, H'): the modular conjugation maps H onto its symplectic
// complement.
double modular_conjugation_defect(const RealSubspace& h);

// Draw a vector of H with unit norm from seeded Gaussian coefficients.
Eigen::VectorXcd sample_unit_vector(const RealSubspace& h, std::uint64_t seed);

// max over seeded samples (h, k) in H x H' of the band-restricted norm of
// [s(h), d(k)] on the given truncated Fock space; zero up to tolerance is
// twisted duality at the generator level.
double twisted_duality_generators(const TruncatedFockSpace& space,
                                  const RealSubspace& h, int samples,
                                  std::uint64_t seed);

}  // namespace fockforge
