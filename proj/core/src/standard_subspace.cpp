#include "fockforge/standard_subspace.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fockforge/fock.hpp"

namespace fockforge {

namespace {

// [a;b] -> [-b;a], the realification of multiplication by i.
Eigen::MatrixXd apply_i(const Eigen::MatrixXd& m) {
  const long d = m.rows() / 2;
  Eigen::MatrixXd out(m.rows(), m.cols());
  out.topRows(d) = -m.bottomRows(d);
  out.bottomRows(d) = m.topRows(d);
  return out;
}

int svd_rank(const Eigen::MatrixXd& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > RealSubspace::kRankThreshold * sv(0)) ++rank;
  return rank;
}

// Orthonormal basis of the column span (thin SVD, relative threshold).
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (long i = 0; i < sv.size(); ++i)
      if (sv(i) > RealSubspace::kRankThreshold * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

Eigen::VectorXcd complexify(const Eigen::VectorXd& v) {
  const long d = v.size() / 2;
  Eigen::VectorXcd out(d);
  out.real() = v.head(d);
  out.imag() = v.tail(d);
  return out;
}

RealSubspace::RealSubspace(int d, Eigen::MatrixXd basis)
    : d_(d), basis_(std::move(basis)) {}

RealSubspace RealSubspace::from_generators(
    int d, const std::vector<Eigen::VectorXcd>& generators) {
  if (d < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  Eigen::MatrixXd g(2 * d, static_cast<long>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != d)
      throw std::invalid_argument("generator has the wrong dimension");
    g.col(static_cast<long>(j)) = realify(generators[j]);
  }
  return RealSubspace(d, orthonormal_span(g));
}

RealSubspace RealSubspace::from_real_basis(int d, Eigen::MatrixXd basis) {
  if (basis.rows() != 2 * d)
    throw std::invalid_argument("real basis has the wrong dimension");
  return RealSubspace(d, orthonormal_span(basis));
}

std::vector<Eigen::VectorXcd> RealSubspace::generators() const {
  std::vector<Eigen::VectorXcd> out;
  out.reserve(static_cast<std::size_t>(basis_.cols()));
  for (long j = 0; j < basis_.cols(); ++j)
    out.push_back(complexify(basis_.col(j)));
  return out;
}

bool RealSubspace::contains(const Eigen::VectorXcd& v, double tol) const {
  const Eigen::VectorXd r = realify(v);
  const double nrm = r.norm();
  if (nrm == 0.0) return true;
  const Eigen::VectorXd residual = r - basis_ * (basis_.transpose() * r);
  return residual.norm() <= tol * nrm;
}

RealSubspace symplectic_complement(const RealSubspace& h) {
  const int d = h.ambient_dim();
  const long m = h.basis().cols();
  if (m == 0) {
    // Everything is symplectically orthogonal to the zero subspace.
    return RealSubspace::from_real_basis(
        d, Eigen::MatrixXd::Identity(2 * d, 2 * d));
  }
  // k in H' iff (Omega b_j)^T k = 0 for the basis b_j, where
  // Omega [a;b] = [b;-a] realifies the form Im<.,.>.
  Eigen::MatrixXd omega_b(2 * d, m);
  omega_b.topRows(d) = h.basis().bottomRows(d);
  omega_b.bottomRows(d) = -h.basis().topRows(d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(omega_b.transpose(),
                                        Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (long i = 0; i < sv.size(); ++i)
      if (sv(i) > RealSubspace::kRankThreshold * sv(0)) ++rank;
  const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(2 * d - rank);
  return RealSubspace::from_real_basis(d, null_basis);
}

StandardnessReport is_standard(const RealSubspace& h) {
  const int d = h.ambient_dim();
  const int m = h.real_dim();
  Eigen::MatrixXd sum(2 * d, 2 * m);
  sum.leftCols(m) = h.basis();
  sum.rightCols(m) = apply_i(h.basis());
  const int rank = svd_rank(sum);
  StandardnessReport report;
  report.real_dim = m;
  report.rank_sum = rank;
  report.dim_intersection = 2 * m - rank;
  report.standard = (m == d) && (rank == 2 * d);
  return report;
}

Eigen::VectorXcd TomitaData::apply_s(const Eigen::VectorXcd& v) const {
  return s_matrix * v.conjugate();
}

Eigen::VectorXcd TomitaData::apply_j(const Eigen::VectorXcd& v) const {
  return j_unitary * v.conjugate();
}

Eigen::MatrixXcd TomitaData::delta_power(double s) const {
  Eigen::VectorXcd scaled(delta_eigenvalues.size());
  for (long i = 0; i < delta_eigenvalues.size(); ++i)
    scaled(i) = std::pow(delta_eigenvalues(i), s);
  return delta_eigenvectors * scaled.asDiagonal() *
         delta_eigenvectors.adjoint();
}

Eigen::MatrixXcd TomitaData::delta_it(double t) const {
  Eigen::VectorXcd scaled(delta_eigenvalues.size());
  for (long i = 0; i < delta_eigenvalues.size(); ++i) {
    const double phase = t * std::log(delta_eigenvalues(i));
    scaled(i) = std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return delta_eigenvectors * scaled.asDiagonal() *
         delta_eigenvectors.adjoint();
}

TomitaData tomita(const RealSubspace& h) {
  const StandardnessReport report = is_standard(h);
  if (!report.standard)
    throw std::invalid_argument("Tomita data requires a standard subspace");
  const int d = h.ambient_dim();

  // S fixes H pointwise and negates iH; solve for its real 2d x 2d matrix
  // on the frame W = [B, iB].
  Eigen::MatrixXd w(2 * d, 2 * d);
  w.leftCols(d) = h.basis();
  w.rightCols(d) = apply_i(h.basis());
  Eigen::MatrixXd target(2 * d, 2 * d);
  target.leftCols(d) = h.basis();
  target.rightCols(d) = -apply_i(h.basis());

  Eigen::JacobiSVD<Eigen::MatrixXd> wsvd(w);
  const double cond =
      wsvd.singularValues()(0) / wsvd.singularValues()(2 * d - 1);

  // s_real = target * w^{-1}  <=>  w^T s_real^T = target^T.
  const Eigen::MatrixXd s_real =
      w.transpose().fullPivLu().solve(target.transpose()).transpose();

  // S is anti-linear, so s_real = realify(M) * diag(I,-I) and the complex
  // matrix M with S v = M conj(v) sits in the left half.
  Eigen::MatrixXcd m(d, d);
  m.real() = s_real.topLeftCorner(d, d);
  m.imag() = s_real.bottomLeftCorner(d, d);

  TomitaData data;
  data.s_matrix = m;
  data.conditioning = cond;
  // Delta = S*S; for S v = M conj(v) the anti-linear adjoint gives
  // Delta = M^T conj(M).
  Eigen::MatrixXcd delta = m.transpose() * m.conjugate();
  delta = 0.5 * (delta + delta.adjoint()).eval();
  data.delta = delta;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(delta);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("modular operator eigendecomposition failed");
  data.delta_eigenvalues = es.eigenvalues();
  data.delta_eigenvectors = es.eigenvectors();
  if (data.delta_eigenvalues(0) <= 0.0)
    throw std::runtime_error(
        "modular operator is not positive definite; the subspace frame is "
        "numerically degenerate (conditioning " +
        std::to_string(cond) + ")");

  data.j_unitary = m * data.delta_power(-0.5).conjugate();
  return data;
}

double subspace_defect(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("subspace bases have different dimensions");
  if (a.cols() == 0) return 0.0;
  const Eigen::MatrixXd residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  return svd.singularValues()(0);
}

double modular_flow_check(const RealSubspace& h,
                          const std::vector<double>& ts) {
  const TomitaData data = tomita(h);
  const int d = h.ambient_dim();
  double worst = 0.0;
  for (double t : ts) {
    const Eigen::MatrixXcd u = data.delta_it(t);
    Eigen::MatrixXd u_real(2 * d, 2 * d);
    u_real.topLeftCorner(d, d) = u.real();
    u_real.topRightCorner(d, d) = -u.imag();
    u_real.bottomLeftCorner(d, d) = u.imag();
    u_real.bottomRightCorner(d, d) = u.real();
    worst = std::max(worst, subspace_defect(h.basis(), u_real * h.basis()));
  }
  return worst;
}

double modular_conjugation_defect(const RealSubspace& h) {
  const TomitaData data = tomita(h);
  const int d = h.ambient_dim();
  // J v = j_unitary conj(v): realified, conjugation is diag(I,-I).
  Eigen::MatrixXd j_real(2 * d, 2 * d);
  j_real.topLeftCorner(d, d) = data.j_unitary.real();
  j_real.topRightCorner(d, d) = data.j_unitary.imag();
  j_real.bottomLeftCorner(d, d) = data.j_unitary.imag();
  j_real.bottomRightCorner(d, d) = -data.j_unitary.real();
  const RealSubspace complement = symplectic_complement(h);
  return subspace_defect(complement.basis(), j_real * h.basis());
}

Eigen::VectorXcd sample_unit_vector(const RealSubspace& h,
                                    std::uint64_t seed) {
  if (h.real_dim() == 0)
    throw std::invalid_argument("cannot sample from the zero subspace");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd coefs(h.real_dim());
  double nrm = 0.0;
  do {
    for (long i = 0; i < coefs.size(); ++i) coefs(i) = gauss(rng);
    nrm = coefs.norm();
  } while (nrm < 1e-8);
  const Eigen::VectorXd v = h.basis() * (coefs / nrm);
  return complexify(v);
}

double twisted_duality_generators(const TruncatedFockSpace& space,
                                  const RealSubspace& h, int samples,
                                  std::uint64_t seed) {
  if (h.ambient_dim() != space.d())
    throw std::invalid_argument(
        "subspace ambient dimension must match the one-particle dimension");
  const RealSubspace complement = symplectic_complement(h);
  if (h.real_dim() == 0 || complement.real_dim() == 0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Eigen::VectorXcd hv = sample_unit_vector(h, seed + 2 * i);
    const Eigen::VectorXcd kv =
        sample_unit_vector(complement, seed + 2 * i + 1);
    worst = std::max(worst, field_commutator_band_norm(space, hv, kv));
  }
  return worst;
}

}  // namespace fockforge
