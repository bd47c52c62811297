// Truncated full Fock space over C^d with Boltzmann statistics: no
// symmetrization, tuples of length k <= N index an orthonormal basis.
// Left/right creation generate the free fields s(h), d(h); the flip Z
// exchanges them.  Truncation is a hard cutoff: components that would leave
// the space are dropped, and every operator carries the largest source
// particle number on which its action still agrees with the untruncated
// operator (exact_band).
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockforge {

struct LowestWeightIrrep;

using Complex = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<Complex>;

// Thrown when a result would need sectors above the particle-number cutoff.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Basis of the truncation: all tuples (a_1, ..., a_k) with entries in
// 0..d-1 and 0 <= k <= N, ordered by particle number k, then
// lexicographically (a_1 most significant).  The empty tuple is the vacuum
// and sits at index 0.  Total dimension D = sum_{k=0}^{N} d^k.
//
// Construction fails (std::length_error) if D exceeds the dimension guard,
// 2^20 by default; the FOCKFORGE_MAX_DIM environment variable overrides it.
class TruncatedFockSpace {
 public:
  TruncatedFockSpace(int d, int N);

  int d() const { return d_; }
  int N() const { return N_; }
  long long dim() const { return D_; }

  long long sector_offset(int k) const { return offsets_[k]; }
  long long sector_dim(int k) const { return offsets_[k + 1] - offsets_[k]; }
  int sector_of(long long index) const;

  long long rank(std::span<const int> tuple) const;
  std::vector<int> unrank(long long index) const;

  static long long dimension_guard();

  friend bool operator==(const TruncatedFockSpace& a,
                         const TruncatedFockSpace& b) {
    return a.d_ == b.d_ && a.N_ == b.N_;
  }

 private:
  int d_;
  int N_;
  long long D_;
  std::vector<long long> offsets_;  // size N+2, offsets_[N+1] = D
};

// Vector in the truncated Fock space, coefficients in the tuple basis.
struct FockVector {
  int d;
  int N;
  Eigen::VectorXcd coeffs;

  FockVector(const TruncatedFockSpace& space)
      : d(space.d()), N(space.N()),
        coeffs(Eigen::VectorXcd::Zero(space.dim())) {}
  FockVector(const TruncatedFockSpace& space, Eigen::VectorXcd c);

  double norm() const { return coeffs.norm(); }
};

// <u, v>: conjugate-linear in the first argument.
Complex inner_product(const FockVector& u, const FockVector& v);

FockVector vacuum_vector(const TruncatedFockSpace& space);
// Basis vector of the given tuple.
FockVector basis_vector(const TruncatedFockSpace& space,
                        std::span<const int> tuple);

// Sparse operator on the truncated space.  exact_band is the largest source
// particle number k such that columns from sectors <= k reproduce the
// untruncated operator; columns from sectors above it are truncation
// artifacts.  shift_min/shift_max bound the particle-number change and drive
// the band bookkeeping under products and adjoints.
class FockOperator {
 public:
  FockOperator(const TruncatedFockSpace& space, SparseMatrixXcd mat,
               int exact_band, int shift_min, int shift_max,
               bool compression);

  int d() const { return d_; }
  int N() const { return N_; }
  long long dim() const { return mat_.rows(); }
  int exact_band() const { return exact_band_; }
  int shift_min() const { return shift_min_; }
  int shift_max() const { return shift_max_; }
  const SparseMatrixXcd& matrix() const { return mat_; }

  FockOperator adjoint() const;
  FockVector apply(const FockVector& v) const;
  Complex trace() const;
  Complex entry(long long row, long long col) const;

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(Complex scale, const FockOperator& a);

 private:
  void require_same_space(const FockOperator& other) const;

  SparseMatrixXcd mat_;
  int d_;
  int N_;
  int exact_band_;
  int shift_min_;
  int shift_max_;
  bool compression_;  // stored matrix is exactly P A P for untruncated A
};

FockOperator identity_operator(const TruncatedFockSpace& space);
// Rank-one projector onto the vacuum.
FockOperator vacuum_projector(const TruncatedFockSpace& space);

// Left creation l(h): tuple -> h tensor tuple; exact band N-1.
FockOperator left_creation(const TruncatedFockSpace& space,
                           const Eigen::VectorXcd& h);
// Right creation r(h): tuple -> tuple tensor h; exact band N-1.
FockOperator right_creation(const TruncatedFockSpace& space,
                            const Eigen::VectorXcd& h);

// Free fields s(h) = l(h) + l(h)*, d(h) = r(h) + r(h)*; exact band N-1.
FockOperator field_s(const TruncatedFockSpace& space,
                     const Eigen::VectorXcd& h);
FockOperator field_d(const TruncatedFockSpace& space,
                     const Eigen::VectorXcd& h);

// Flip Z: (a_1, ..., a_k) -> (a_k, ..., a_1).  Z^2 = 1, Z Omega = Omega,
// Z l(h) Z = r(h) and Z s(h) Z = d(h) hold exactly on the truncated space.
FockOperator flip(const TruncatedFockSpace& space);

// Second quantization Gamma(u) = sum_k u^{tensor k}, sector preserving and
// exact on the whole truncation.  Functorial: Gamma(u) Gamma(v) = Gamma(uv).
FockOperator second_quantize(const TruncatedFockSpace& space,
                             const Eigen::MatrixXcd& u);

// Gamma(e^{-beta l}) for the lowest-weight-n irrep truncated to space.d()
// levels: diagonal with entry exp(-2 pi beta sum_i (n + a_i)) at
// (a_1, ..., a_k).  Requires irrep.d == space.d and beta > 0.
FockOperator conformal_hamiltonian_gibbs(const TruncatedFockSpace& space,
                                         const LowestWeightIrrep& irrep,
                                         double beta);

// Twist (1 + i u)/(1 + i) attached to a 2 pi rotation unitary u; for the
// integer-spectrum rotations arising here u = 1 and the twist is trivial.
FockOperator twist_unitary(const FockOperator& u);

// Largest singular value of the block with source sectors <= src_max and
// target sectors <= tgt_max.
double band_operator_norm(const FockOperator& op, int src_max, int tgt_max);
Eigen::MatrixXcd band_block(const FockOperator& op, int src_max, int tgt_max);

// [s(h), d(k)] as a stored operator.
FockOperator field_commutator(const TruncatedFockSpace& space,
                              const Eigen::VectorXcd& h,
                              const Eigen::VectorXcd& k);

// Operator norm of [s(h), d(k)] - 2i Im<h,k> P_Omega restricted to source
// and target particle numbers <= N-2, where the truncated commutator
// reproduces the untruncated one.  Requires N >= 2.
double commutator_defect(const TruncatedFockSpace& space,
                         const Eigen::VectorXcd& h,
                         const Eigen::VectorXcd& k);

// Norm of [s(h), d(k)] on the same band, without subtracting the vacuum
// term; equals 2 |Im<h,k>| up to truncation noise.
double field_commutator_band_norm(const TruncatedFockSpace& space,
                                  const Eigen::VectorXcd& h,
                                  const Eigen::VectorXcd& k);

// <s(h)^p Omega, Omega>.  The walk from the vacuum stays in the cyclic
// subspace spanned by the tensor powers of h (dimension N+1), where s(h)
// acts as ||h|| times the free Jacobi matrix; the moment is computed there
// by matrix powers.  Exact for N >= ceil(p/2); otherwise the truncation can
// touch the result and a TruncationError is thrown instead.
Complex vacuum_moment(const TruncatedFockSpace& space,
                      const Eigen::VectorXcd& h, int p);

}  // namespace fockforge
