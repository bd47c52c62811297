#include "fockforge/oneparticle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fockforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDetTolerance = 1e-12;
}  // namespace

LowestWeightIrrep::LowestWeightIrrep(int n_, int d_) : n(n_), d(d_) {
  if (n < 1) throw std::invalid_argument("lowest weight n must be >= 1");
  if (d < 1) throw std::invalid_argument("truncation dimension d must be >= 1");
}

std::vector<double> rotation_spectrum(const LowestWeightIrrep& irrep) {
  std::vector<double> spec(static_cast<std::size_t>(irrep.d));
  for (int k = 0; k < irrep.d; ++k) spec[k] = kTwoPi * (irrep.n + k);
  return spec;
}

LadderOperators ladder_operators(const LowestWeightIrrep& irrep) {
  if (irrep.d < 2)
    throw std::invalid_argument("ladder operators need dimension d >= 2");
  const int d = irrep.d;
  LadderOperators ops;
  ops.raising = Eigen::MatrixXd::Zero(d, d);
  ops.weight = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    ops.weight(k, k) = irrep.n + k;
    if (k + 1 < d)
      ops.raising(k + 1, k) =
          std::sqrt(double(k + 1) * double(k + 2 * irrep.n));
  }
  ops.lowering = ops.raising.transpose();
  return ops;
}

double one_particle_gibbs_trace(int n, double beta) {
  if (n < 1) throw std::invalid_argument("lowest weight n must be >= 1");
  if (beta <= 0.0) throw std::domain_error("gibbs trace requires beta > 0");
  const double x = std::exp(-kTwoPi * beta);
  return std::exp(-kTwoPi * beta * n) / (1.0 - x);
}

std::complex<double> cayley(double x) {
  if (std::isinf(x)) return {-1.0, 0.0};
  // (1 + ix)/(1 - ix) expanded over the real denominator 1 + x^2.
  const double den = 1.0 + x * x;
  return {(1.0 - x * x) / den, 2.0 * x / den};
}

double inverse_cayley(std::complex<double> z) {
  // x = i(1 - z)/(1 + z); for |z| = 1 this reduces to 2 Im z / |1 + z|^2.
  const double den = std::norm(z + 1.0);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * z.imag() / den;
}

MoebiusElement::MoebiusElement(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
  const double det = a * d - b * c;
  if (std::abs(det - 1.0) > kDetTolerance)
    throw std::invalid_argument("Moebius element must have determinant 1");
}

MoebiusElement MoebiusElement::identity() { return {1.0, 0.0, 0.0, 1.0}; }

MoebiusElement MoebiusElement::inverse() const { return {d, -b, -c, a}; }

MoebiusElement MoebiusElement::compose(const MoebiusElement& rhs) const {
  return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
          c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

MoebiusElement operator*(const MoebiusElement& lhs, const MoebiusElement& rhs) {
  return lhs.compose(rhs);
}

double MoebiusElement::apply_line(double x) const {
  if (std::isinf(x)) {
    if (c == 0.0) return std::copysign(std::numeric_limits<double>::infinity(),
                                       x * a * d);
    return a / c;
  }
  const double den = c * x + d;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return (a * x + b) / den;
}

std::complex<double> MoebiusElement::apply_circle(std::complex<double> z) const {
  // Conjugate the line action by the Cayley map, staying in complex
  // arithmetic so the point z = -1 (the image of infinity) needs no special
  // casing: with w = i(1-z)/(1+z), the image is
  // (1 + i m(w))/(1 - i m(w)) = ((d - ib) + (c + ia) w') / ...  Expanding
  // m(w) = (aw + b)/(cw + d) directly:
  const std::complex<double> i{0.0, 1.0};
  const std::complex<double> num = (1.0 - z) * i;  // i(1-z)
  const std::complex<double> den = 1.0 + z;
  // m(w) with w = num/den, kept projective: m = (a*num + b*den, c*num + d*den)
  const std::complex<double> mn = a * num + b * den;
  const std::complex<double> md = c * num + d * den;
  // cayley(m) = (den' + i*num')/(den' - i*num') with num'/den' = mn/md.
  const std::complex<double> out_num = md + i * mn;
  const std::complex<double> out_den = md - i * mn;
  return out_num / out_den;
}

double MoebiusElement::max_entry_distance(const MoebiusElement& rhs) const {
  // PSL(2,R): compare up to the overall sign.
  const double plus = std::max({std::abs(a - rhs.a), std::abs(b - rhs.b),
                                std::abs(c - rhs.c), std::abs(d - rhs.d)});
  const double minus = std::max({std::abs(a + rhs.a), std::abs(b + rhs.b),
                                 std::abs(c + rhs.c), std::abs(d + rhs.d)});
  return std::min(plus, minus);
}

MoebiusElement dilation_flow(double t) {
  const double e = std::exp(0.5 * t);
  return {e, 0.0, 0.0, 1.0 / e};
}

MoebiusElement translation_flow(double t) { return {1.0, t, 0.0, 1.0}; }

MoebiusElement rotation_flow(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {c, s, -s, c};
}

std::complex<double> reflect_circle(std::complex<double> z) {
  return std::conj(z);
}

double reflect_line(double x) { return -x; }

}  // namespace fockforge
