#include "fockforge/fock.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fockforge/oneparticle.hpp"

namespace fockforge {

namespace {

constexpr long long kDefaultDimensionGuard = 1ll << 20;
// Cap on stored entries when second-quantizing a non-diagonal map.
constexpr long long kMaxGammaEntries = 1ll << 25;

long long checked_total(int d, int N, long long guard,
                        std::vector<long long>& offsets) {
  offsets.assign(static_cast<std::size_t>(N) + 2, 0);
  long long total = 0;
  long long pow = 1;  // d^k
  for (int k = 0; k <= N; ++k) {
    offsets[k] = total;
    if (__builtin_add_overflow(total, pow, &total) || total > guard)
      throw std::length_error(
          "truncated Fock dimension exceeds the guard (" +
          std::to_string(guard) + "); set FOCKFORGE_MAX_DIM to raise it");
    if (k < N && __builtin_mul_overflow(pow, static_cast<long long>(d), &pow))
      throw std::length_error(
          "truncated Fock dimension overflows; reduce d or N");
  }
  offsets[static_cast<std::size_t>(N) + 1] = total;
  return total;
}

int clamp_band(int band, int N) { return std::max(-1, std::min(N, band)); }
int clamp_shift(int s, int N) { return std::max(-N, std::min(N, s)); }

}  // namespace

// ---------------------------------------------------------------------------
// TruncatedFockSpace

TruncatedFockSpace::TruncatedFockSpace(int d, int N) : d_(d), N_(N) {
  if (d < 1) throw std::invalid_argument("one-particle dimension must be >= 1");
  if (N < 0) throw std::invalid_argument("particle cutoff must be >= 0");
  D_ = checked_total(d, N, dimension_guard(), offsets_);
}

long long TruncatedFockSpace::dimension_guard() {
  const char* env = std::getenv("FOCKFORGE_MAX_DIM");
  if (env == nullptr || *env == '\0') return kDefaultDimensionGuard;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0' || v <= 0) return kDefaultDimensionGuard;
  return v;
}

int TruncatedFockSpace::sector_of(long long index) const {
  if (index < 0 || index >= D_)
    throw std::out_of_range("Fock index out of range");
  int k = 0;
  while (offsets_[static_cast<std::size_t>(k) + 1] <= index) ++k;
  return k;
}

long long TruncatedFockSpace::rank(std::span<const int> tuple) const {
  const int k = static_cast<int>(tuple.size());
  if (k > N_) throw std::out_of_range("tuple longer than the particle cutoff");
  long long rw = 0;
  for (int a : tuple) {
    if (a < 0 || a >= d_) throw std::out_of_range("tuple entry out of range");
    rw = rw * d_ + a;
  }
  return offsets_[k] + rw;
}

std::vector<int> TruncatedFockSpace::unrank(long long index) const {
  const int k = sector_of(index);
  long long rw = index - offsets_[k];
  std::vector<int> tuple(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    tuple[i] = static_cast<int>(rw % d_);
    rw /= d_;
  }
  return tuple;
}

// ---------------------------------------------------------------------------
// Vectors

FockVector::FockVector(const TruncatedFockSpace& space, Eigen::VectorXcd c)
    : d(space.d()), N(space.N()), coeffs(std::move(c)) {
  if (coeffs.size() != space.dim())
    throw std::invalid_argument("coefficient vector has the wrong dimension");
}

Complex inner_product(const FockVector& u, const FockVector& v) {
  if (u.d != v.d || u.N != v.N)
    throw std::invalid_argument("vectors live in different Fock spaces");
  return u.coeffs.dot(v.coeffs);  // conjugate-linear in the first argument
}

FockVector vacuum_vector(const TruncatedFockSpace& space) {
  FockVector v(space);
  v.coeffs(0) = 1.0;
  return v;
}

FockVector basis_vector(const TruncatedFockSpace& space,
                        std::span<const int> tuple) {
  FockVector v(space);
  v.coeffs(space.rank(tuple)) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(const TruncatedFockSpace& space, SparseMatrixXcd mat,
                           int exact_band, int shift_min, int shift_max,
                           bool compression)
    : mat_(std::move(mat)), d_(space.d()), N_(space.N()),
      exact_band_(clamp_band(exact_band, space.N())),
      shift_min_(clamp_shift(shift_min, space.N())),
      shift_max_(clamp_shift(shift_max, space.N())),
      compression_(compression) {
  if (mat_.rows() != space.dim() || mat_.cols() != space.dim())
    throw std::invalid_argument("operator matrix has the wrong dimension");
}

void FockOperator::require_same_space(const FockOperator& other) const {
  if (d_ != other.d_ || N_ != other.N_)
    throw std::invalid_argument("operators live in different Fock spaces");
}

FockOperator FockOperator::adjoint() const {
  const TruncatedFockSpace space(d_, N_);
  SparseMatrixXcd adj = mat_.adjoint();
  const int smin = -shift_max_;
  const int smax = -shift_min_;
  // A compression P A P conjugate-transposes to P A* P, which is exact
  // wherever A* cannot overflow the cutoff.  Otherwise only the rows fed
  // entirely by trusted columns survive.
  const int band = compression_ ? N_ - std::max(0, smax)
                                : exact_band_ + shift_min_;
  return FockOperator(space, std::move(adj), band, smin, smax, compression_);
}

FockVector FockOperator::apply(const FockVector& v) const {
  if (v.d != d_ || v.N != N_)
    throw std::invalid_argument("vector lives in a different Fock space");
  const TruncatedFockSpace space(d_, N_);
  return FockVector(space, mat_ * v.coeffs);
}

Complex FockOperator::trace() const { return mat_.diagonal().sum(); }

Complex FockOperator::entry(long long row, long long col) const {
  return mat_.coeff(row, col);
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  a.require_same_space(b);
  const TruncatedFockSpace space(a.d_, a.N_);
  return FockOperator(space, a.mat_ + b.mat_,
                      std::min(a.exact_band_, b.exact_band_),
                      std::min(a.shift_min_, b.shift_min_),
                      std::max(a.shift_max_, b.shift_max_),
                      a.compression_ && b.compression_);
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  a.require_same_space(b);
  const TruncatedFockSpace space(a.d_, a.N_);
  return FockOperator(space, a.mat_ - b.mat_,
                      std::min(a.exact_band_, b.exact_band_),
                      std::min(a.shift_min_, b.shift_min_),
                      std::max(a.shift_max_, b.shift_max_),
                      a.compression_ && b.compression_);
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  a.require_same_space(b);
  const TruncatedFockSpace space(a.d_, a.N_);
  // Exact where b is exact and b cannot push a source past a's band.
  const int band = std::min(b.exact_band_, a.exact_band_ - b.shift_max_);
  const bool sector_preserving = a.shift_min_ == 0 && a.shift_max_ == 0 &&
                                 b.shift_min_ == 0 && b.shift_max_ == 0;
  return FockOperator(space, SparseMatrixXcd(a.mat_ * b.mat_), band,
                      a.shift_min_ + b.shift_min_, a.shift_max_ + b.shift_max_,
                      a.compression_ && b.compression_ && sector_preserving);
}

FockOperator operator*(Complex scale, const FockOperator& a) {
  const TruncatedFockSpace space(a.d_, a.N_);
  return FockOperator(space, SparseMatrixXcd(a.mat_ * scale), a.exact_band_,
                      a.shift_min_, a.shift_max_, a.compression_);
}

// ---------------------------------------------------------------------------
// Operator constructors

FockOperator identity_operator(const TruncatedFockSpace& space) {
  SparseMatrixXcd m(space.dim(), space.dim());
  m.setIdentity();
  return FockOperator(space, std::move(m), space.N(), 0, 0, true);
}

FockOperator vacuum_projector(const TruncatedFockSpace& space) {
  SparseMatrixXcd m(space.dim(), space.dim());
  m.insert(0, 0) = 1.0;
  m.makeCompressed();
  return FockOperator(space, std::move(m), space.N(), 0, 0, true);
}

namespace {

FockOperator creation_impl(const TruncatedFockSpace& space,
                           const Eigen::VectorXcd& h, bool left) {
  if (h.size() != space.d())
    throw std::invalid_argument("one-particle vector has the wrong dimension");
  const int d = space.d();
  const int N = space.N();
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int k = 0; k < N; ++k) {
    const long long src_off = space.sector_offset(k);
    const long long dst_off = space.sector_offset(k + 1);
    const long long dim_k = space.sector_dim(k);
    for (long long rw = 0; rw < dim_k; ++rw) {
      for (int a = 0; a < d; ++a) {
        const Complex amp = h(a);
        if (amp == Complex{}) continue;
        const long long dst_rw = left ? a * dim_k + rw : rw * d + a;
        trips.emplace_back(dst_off + dst_rw, src_off + rw, amp);
      }
    }
  }
  SparseMatrixXcd m(space.dim(), space.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return FockOperator(space, std::move(m), N - 1, 1, 1, true);
}

}  // namespace

FockOperator left_creation(const TruncatedFockSpace& space,
                           const Eigen::VectorXcd& h) {
  return creation_impl(space, h, true);
}

FockOperator right_creation(const TruncatedFockSpace& space,
                            const Eigen::VectorXcd& h) {
  return creation_impl(space, h, false);
}

FockOperator field_s(const TruncatedFockSpace& space,
                     const Eigen::VectorXcd& h) {
  const FockOperator l = left_creation(space, h);
  return l + l.adjoint();
}

FockOperator field_d(const TruncatedFockSpace& space,
                     const Eigen::VectorXcd& h) {
  const FockOperator r = right_creation(space, h);
  return r + r.adjoint();
}

FockOperator flip(const TruncatedFockSpace& space) {
  const int d = space.d();
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(space.dim()));
  for (int k = 0; k <= space.N(); ++k) {
    const long long off = space.sector_offset(k);
    const long long dim_k = space.sector_dim(k);
    for (long long rw = 0; rw < dim_k; ++rw) {
      long long rev = 0;
      long long tmp = rw;
      for (int i = 0; i < k; ++i) {
        rev = rev * d + (tmp % d);
        tmp /= d;
      }
      trips.emplace_back(off + rev, off + rw, Complex{1.0, 0.0});
    }
  }
  SparseMatrixXcd m(space.dim(), space.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return FockOperator(space, std::move(m), space.N(), 0, 0, true);
}

FockOperator second_quantize(const TruncatedFockSpace& space,
                             const Eigen::MatrixXcd& u) {
  if (u.rows() != space.d() || u.cols() != space.d())
    throw std::invalid_argument("one-particle map has the wrong dimension");
  const int d = space.d();
  const int N = space.N();

  bool diagonal = true;
  for (int i = 0; i < d && diagonal; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && u(i, j) != Complex{}) {
        diagonal = false;
        break;
      }

  std::vector<Eigen::Triplet<Complex>> trips;
  if (diagonal) {
    // Gamma(diag w) is diagonal with entry prod_i w_{a_i} at (a_1...a_k).
    trips.reserve(static_cast<std::size_t>(space.dim()));
    std::vector<Complex> prev{Complex{1.0, 0.0}};
    trips.emplace_back(0, 0, Complex{1.0, 0.0});
    for (int k = 1; k <= N; ++k) {
      const long long off = space.sector_offset(k);
      std::vector<Complex> cur(static_cast<std::size_t>(space.sector_dim(k)));
      for (long long rw = 0; rw < static_cast<long long>(cur.size()); ++rw) {
        cur[rw] = prev[rw / d] * u(static_cast<int>(rw % d),
                                   static_cast<int>(rw % d));
        if (cur[rw] != Complex{}) trips.emplace_back(off + rw, off + rw, cur[rw]);
      }
      prev = std::move(cur);
    }
  } else {
    struct Entry {
      long long row, col;
      Complex amp;
    };
    std::vector<std::pair<std::pair<int, int>, Complex>> u_entries;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (u(i, j) != Complex{}) u_entries.push_back({{i, j}, u(i, j)});

    std::vector<Entry> cur{{0, 0, Complex{1.0, 0.0}}};
    trips.emplace_back(0, 0, Complex{1.0, 0.0});
    long long stored = 1;
    for (int k = 1; k <= N; ++k) {
      const long long off = space.sector_offset(k);
      std::vector<Entry> next;
      next.reserve(cur.size() * u_entries.size());
      for (const Entry& e : cur)
        for (const auto& [ij, amp] : u_entries) {
          const Complex a = e.amp * amp;
          if (a == Complex{}) continue;
          next.push_back({e.row * d + ij.first, e.col * d + ij.second, a});
        }
      stored += static_cast<long long>(next.size());
      if (stored > kMaxGammaEntries)
        throw std::length_error(
            "second quantization of a non-diagonal map is too dense at this "
            "truncation");
      for (const Entry& e : next)
        trips.emplace_back(off + e.row, off + e.col, e.amp);
      cur = std::move(next);
    }
  }
  SparseMatrixXcd m(space.dim(), space.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return FockOperator(space, std::move(m), space.N(), 0, 0, true);
}

FockOperator conformal_hamiltonian_gibbs(const TruncatedFockSpace& space,
                                         const LowestWeightIrrep& irrep,
                                         double beta) {
  if (irrep.d != space.d())
    throw std::invalid_argument(
        "irrep truncation must match the one-particle dimension");
  if (beta <= 0.0) throw std::domain_error("Gibbs operator requires beta > 0");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(space.d(), space.d());
  for (int a = 0; a < space.d(); ++a)
    u(a, a) = std::exp(-2.0 * std::numbers::pi * beta * (irrep.n + a));
  return second_quantize(space, u);
}

FockOperator twist_unitary(const FockOperator& u) {
  const TruncatedFockSpace space(u.d(), u.N());
  const Complex i{0.0, 1.0};
  const Complex scale = 1.0 / (1.0 + i);
  SparseMatrixXcd id(space.dim(), space.dim());
  id.setIdentity();
  SparseMatrixXcd m = (id + i * u.matrix()) * scale;
  return FockOperator(space, std::move(m),
                      std::min(space.N(), u.exact_band()),
                      std::min(0, u.shift_min()), std::max(0, u.shift_max()),
                      false);
}

// ---------------------------------------------------------------------------
// Band-restricted diagnostics

Eigen::MatrixXcd band_block(const FockOperator& op, int src_max, int tgt_max) {
  const TruncatedFockSpace space(op.d(), op.N());
  if (src_max < 0 || tgt_max < 0 || src_max > op.N() || tgt_max > op.N())
    throw std::invalid_argument("band limits out of range");
  // Sectors are contiguous and sorted, so the band block is a corner.
  const long long cols = space.sector_offset(src_max) +
                         space.sector_dim(src_max);
  const long long rows = space.sector_offset(tgt_max) +
                         space.sector_dim(tgt_max);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(rows, cols);
  const SparseMatrixXcd& m = op.matrix();
  for (long long col = 0; col < cols; ++col)
    for (SparseMatrixXcd::InnerIterator it(m, col); it; ++it)
      if (it.row() < rows) block(it.row(), col) = it.value();
  return block;
}

double band_operator_norm(const FockOperator& op, int src_max, int tgt_max) {
  const Eigen::MatrixXcd block = band_block(op, src_max, tgt_max);
  if (block.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
  return svd.singularValues()(0);
}

FockOperator field_commutator(const TruncatedFockSpace& space,
                              const Eigen::VectorXcd& h,
                              const Eigen::VectorXcd& k) {
  const FockOperator s = field_s(space, h);
  const FockOperator d = field_d(space, k);
  return s * d - d * s;
}

double commutator_defect(const TruncatedFockSpace& space,
                         const Eigen::VectorXcd& h,
                         const Eigen::VectorXcd& k) {
  if (space.N() < 2)
    throw std::invalid_argument("commutator defect needs N >= 2");
  const double im = h.dot(k).imag();
  const FockOperator c = field_commutator(space, h, k);
  const FockOperator expected = Complex{0.0, 2.0 * im} *
                                vacuum_projector(space);
  return band_operator_norm(c - expected, space.N() - 2, space.N() - 2);
}

double field_commutator_band_norm(const TruncatedFockSpace& space,
                                  const Eigen::VectorXcd& h,
                                  const Eigen::VectorXcd& k) {
  if (space.N() < 2)
    throw std::invalid_argument("commutator band norm needs N >= 2");
  return band_operator_norm(field_commutator(space, h, k), space.N() - 2,
                            space.N() - 2);
}

// ---------------------------------------------------------------------------
// Vacuum moments

Complex vacuum_moment(const TruncatedFockSpace& space,
                      const Eigen::VectorXcd& h, int p) {
  if (h.size() != space.d())
    throw std::invalid_argument("one-particle vector has the wrong dimension");
  if (p < 0) throw std::invalid_argument("moment order must be >= 0");
  if (p == 0) return Complex{1.0, 0.0};
  if (space.N() < (p + 1) / 2)
    throw TruncationError(
        "vacuum moment of order " + std::to_string(p) +
        " needs particle cutoff N >= " + std::to_string((p + 1) / 2));

  // On span{h^{tensor k}} the field is ||h|| times the free Jacobi matrix.
  const int dim = space.N() + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) {
    jacobi(i, i + 1) = 1.0;
    jacobi(i + 1, i) = 1.0;
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v(0) = 1.0;
  for (int step = 0; step < p; ++step) v = jacobi * v;
  return Complex{v(0) * std::pow(h.norm(), p), 0.0};
}

}  // namespace fockforge
