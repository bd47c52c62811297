#include "fockforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "fockforge/fock.hpp"
#include "fockforge/oneparticle.hpp"
#include "fockforge/serialize.hpp"
#include "fockforge/standard_subspace.hpp"
#include "fockforge/thermo.hpp"

namespace fockforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Accumulates checks; the worst check is the one with the largest
// defect/tolerance ratio, and the suite passes iff that ratio is <= 1.
class Checker {
 public:
  void note(double defect, double tolerance, const std::string& label) {
    ++count_;
    const double normalized = defect / tolerance;
    if (normalized > worst_normalized_) {
      worst_normalized_ = normalized;
      worst_defect_ = defect;
      worst_tolerance_ = tolerance;
      worst_label_ = label;
    }
  }

  void require(bool ok, const std::string& label) {
    note(ok ? 0.0 : 1.0, 0.5, label);
  }

  bool passed() const { return worst_normalized_ <= 1.0; }

  SuiteResult finish(const std::string& suite,
                     const std::string& context = "") const {
    SuiteResult r;
    r.suite = suite;
    r.passed = passed();
    r.max_defect = worst_defect_;
    r.tolerance = worst_tolerance_;
    std::ostringstream os;
    os << count_ << " checks; worst: " << worst_label_;
    if (!context.empty()) os << "; " << context;
    r.detail = os.str();
    if (!r.passed) r.failure_dump_json = dump;
    return r;
  }

  std::string dump;  // JSON debug dump attached to a failing suite

 private:
  int count_ = 0;
  double worst_normalized_ = -1.0;
  double worst_defect_ = 0.0;
  double worst_tolerance_ = 1.0;
  std::string worst_label_ = "no checks";
};

Eigen::VectorXcd gaussian_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex{re, im};
  }
  return v;
}

Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int d) {
  Eigen::MatrixXcd a(d, d);
  std::normal_distribution<double> g;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      a(i, j) = Complex{re, im};
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

int clamp_d(int d) { return std::clamp(d, 1, 4); }

// ---------------------------------------------------------------- mobius --

SuiteResult suite_mobius(const VerifyOptions&) {
  Checker ck;
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> xs = {0.0, 0.5, 1.0, -3.0, 2.25, -0.875, 7.0};
  const std::vector<double> ts = {0.3, -1.2, 2.0};

  std::vector<MoebiusElement> gens;
  for (double t : ts) {
    gens.push_back(dilation_flow(t));
    gens.push_back(translation_flow(t));
    gens.push_back(rotation_flow(t));
  }
  gens.push_back(dilation_flow(0.7).compose(translation_flow(-0.4)));

  const MoebiusElement id = MoebiusElement::identity();
  for (const MoebiusElement& g : gens) {
    ck.note(g.compose(g.inverse()).max_entry_distance(id), 1e-12,
            "g g^{-1} = id");
    ck.note(g.inverse().compose(g).max_entry_distance(id), 1e-12,
            "g^{-1} g = id");
  }
  for (std::size_t i = 0; i + 2 < gens.size(); ++i) {
    const MoebiusElement lhs = (gens[i] * gens[i + 1]) * gens[i + 2];
    const MoebiusElement rhs = gens[i] * (gens[i + 1] * gens[i + 2]);
    ck.note(lhs.max_entry_distance(rhs), 1e-12, "associativity");
  }
  for (double s : ts)
    for (double t : ts) {
      ck.note(dilation_flow(s).compose(dilation_flow(t))
                  .max_entry_distance(dilation_flow(s + t)),
              1e-12, "dilation flow additive");
      ck.note(translation_flow(s).compose(translation_flow(t))
                  .max_entry_distance(translation_flow(s + t)),
              1e-12, "translation flow additive");
      ck.note(rotation_flow(s).compose(rotation_flow(t))
                  .max_entry_distance(rotation_flow(s + t)),
              1e-12, "rotation flow additive");
    }

  // Cayley anchors, round trips, and pinned flow values.
  ck.note(std::abs(cayley(0.0) - Complex{1.0, 0.0}), 1e-15, "cayley(0) = 1");
  ck.note(std::abs(cayley(1.0) - Complex{0.0, 1.0}), 1e-15, "cayley(1) = i");
  ck.note(std::abs(cayley(inf) - Complex{-1.0, 0.0}), 1e-15,
          "cayley(inf) = -1");
  for (double x : xs)
    ck.note(std::abs(inverse_cayley(cayley(x)) - x) / (1.0 + x * x), 1e-13,
            "cayley round trip");
  ck.note(std::abs(dilation_flow(std::log(4.0)).apply_line(1.0) - 4.0), 1e-13,
          "dilation scales the line");
  ck.note(std::abs(translation_flow(3.0).apply_line(2.0) - 5.0), 1e-14,
          "translation shifts the line");

  // Rotations act on the circle as multiplication by e^{i theta}.
  for (double theta : {0.3, 0.5 * kPi, kPi})
    for (double x : {0.0, 1.0, -3.0}) {
      const Complex z = cayley(x);
      const Complex expected = std::polar(1.0, theta) * z;
      ck.note(std::abs(rotation_flow(theta).apply_circle(z) - expected), 1e-12,
              "rotation is a circle rotation");
    }

  // The circle action is the line action conjugated by the Cayley map,
  // including the point at infinity.
  for (const MoebiusElement& g : gens) {
    for (double x : xs)
      ck.note(std::abs(g.apply_circle(cayley(x)) - cayley(g.apply_line(x))),
              1e-11, "circle/line transport");
    ck.note(std::abs(g.apply_circle(Complex{-1.0, 0.0}) -
                     cayley(g.apply_line(inf))),
            1e-11, "circle/line transport at infinity");
  }

  // Reflection r: z -> conj z.  It fixes the two boundary points of the
  // upper semicircle, swaps the semicircle with its complement, commutes
  // with dilations and conjugates translations to inverse translations; the
  // semicircle-preserving reflection rotation(pi) r conjugates dilations to
  // inverse dilations.
  for (double x : xs)
    ck.note(std::abs(reflect_line(x) + x), 1e-15, "reflect_line is negation");
  ck.note(std::abs(reflect_circle(cayley(0.0)) - cayley(0.0)), 1e-15,
          "r fixes cayley(0)");
  ck.note(std::abs(reflect_circle(cayley(inf)) - cayley(inf)), 1e-15,
          "r fixes cayley(inf)");
  for (double x : {0.5, 1.0, 7.0}) {
    ck.note(std::max(0.0, reflect_circle(cayley(x)).imag()), 1e-15,
            "r maps the upper semicircle below the axis");
    const Complex rho_z = rotation_flow(kPi).apply_circle(reflect_circle(cayley(x)));
    ck.note(std::max(0.0, -rho_z.imag()), 1e-15,
            "rotation(pi) r preserves the upper semicircle");
  }
  const auto rho = [](Complex w) {
    return rotation_flow(kPi).apply_circle(reflect_circle(w));
  };
  for (double t : ts)
    for (double x : xs) {
      const Complex z = cayley(x);
      ck.note(std::abs(reflect_circle(dilation_flow(t).apply_circle(
                           reflect_circle(z))) -
                       dilation_flow(t).apply_circle(z)),
              1e-11, "r commutes with dilations");
      ck.note(std::abs(reflect_circle(translation_flow(t).apply_circle(
                           reflect_circle(z))) -
                       translation_flow(-t).apply_circle(z)),
              1e-11, "r conjugates T(t) to T(-t)");
      ck.note(std::abs(rho(dilation_flow(t).apply_circle(rho(z))) -
                       dilation_flow(-t).apply_circle(z)),
              1e-11, "rotation(pi) r conjugates dilations to inverse");
    }
  return ck.finish("mobius");
}

// ---------------------------------------------------------------- ladder --

SuiteResult suite_ladder(const VerifyOptions&) {
  Checker ck;
  const std::vector<std::pair<int, int>> cases = {
      {1, 8}, {2, 6}, {3, 5}, {1, 2}, {5, 3}};
  for (const auto& [n, d] : cases) {
    const LowestWeightIrrep irrep(n, d);
    const LadderOperators lad = ladder_operators(irrep);
    const Eigen::MatrixXd& lp = lad.raising;
    const Eigen::MatrixXd& lm = lad.lowering;
    const Eigen::MatrixXd& l0 = lad.weight;
    const double scale = std::max(1.0, lp.norm() * l0.norm());
    ck.note((lm - lp.transpose()).norm(), 1e-15,
            "L_minus = transpose(L_plus)");
    ck.note((l0 * lp - lp * l0 - lp).norm(), 1e-13 * scale,
            "[L_zero, L_plus] = L_plus");
    ck.note((l0 * lm - lm * l0 + lm).norm(), 1e-13 * scale,
            "[L_zero, L_minus] = -L_minus");
    if (d >= 2) {
      const Eigen::MatrixXd comm = lm * lp - lp * lm - 2.0 * l0;
      ck.note(comm.topLeftCorner(d - 1, d - 1).norm(), 1e-12 * scale,
              "[L_minus, L_plus] = 2 L_zero off the cutoff");
    }
    const std::vector<double> spec = rotation_spectrum(irrep);
    double sd = 0.0;
    for (int k = 0; k < d; ++k) {
      sd = std::max(sd, std::abs(spec[static_cast<std::size_t>(k)] -
                                 kTwoPi * (n + k)));
      sd = std::max(sd, std::abs(l0(k, k) - double(n + k)));
    }
    ck.note(sd, 1e-12 * kTwoPi * (n + d), "spectrum is 2 pi (n + k)");
  }
  // Pinned matrix elements.
  const LadderOperators lad1 = ladder_operators(LowestWeightIrrep(1, 2));
  ck.note(std::abs(lad1.raising(1, 0) - std::sqrt(2.0)), 1e-15,
          "L_plus e_0 = sqrt(2) e_1 at n = 1");
  const LadderOperators lad2 = ladder_operators(LowestWeightIrrep(2, 3));
  ck.note(std::abs(lad2.raising(2, 1) - std::sqrt(10.0)), 1e-15,
          "L_plus e_1 = sqrt(10) e_2 at n = 2");
  return ck.finish("ladder");
}

// ----------------------------------------------------------------- gibbs --

SuiteResult suite_gibbs(const VerifyOptions& opts) {
  Checker ck;
  const int d = std::clamp(opts.d, 2, 4);
  const int N = std::clamp(opts.N, 2, 5);
  const TruncatedFockSpace space(d, N);
  const FockOperator* worst_op = nullptr;
  std::vector<FockOperator> keep;
  keep.reserve(8);
  for (int n : {1, 2})
    for (double beta : {0.3, 0.11}) {
      const LowestWeightIrrep irrep(n, d);
      keep.push_back(conformal_hamiltonian_gibbs(space, irrep, beta));
      const FockOperator& g = keep.back();
      worst_op = &keep.front();

      double offdiag = 0.0;
      const SparseMatrixXcd& m = g.matrix();
      for (int outer = 0; outer < m.outerSize(); ++outer)
        for (SparseMatrixXcd::InnerIterator it(m, outer); it; ++it)
          if (it.row() != it.col())
            offdiag = std::max(offdiag, std::abs(it.value()));
      ck.note(offdiag, 1e-30, "Gibbs operator is diagonal");

      long double q_d = 0.0L;
      for (int a = 0; a < d; ++a)
        q_d += expl(-(long double)(kTwoPi * beta) * (n + a));
      long double direct = 0.0L, pw = 1.0L;
      for (int k = 0; k <= N; ++k) {
        direct += pw;
        pw *= q_d;
      }
      const Complex tr = g.trace();
      ck.note(std::abs(tr.real() - (double)direct) / (double)direct, 1e-13,
              "trace equals the geometric partial sum");
      ck.note(std::abs(tr.imag()), 1e-15 * (double)direct, "trace is real");
      ck.note(std::abs(g.entry(0, 0) - Complex{1.0, 0.0}), 1e-30,
              "vacuum entry is 1");

      std::vector<std::vector<int>> tuples = {{0}, {d - 1}, {0, d - 1}};
      if (N >= 3) tuples.push_back({1 % d, 0, d - 1});
      for (const std::vector<int>& tup : tuples) {
        int energy = 0;
        for (int a : tup) energy += n + a;
        const double expected = std::exp(-kTwoPi * beta * energy);
        const long long idx = space.rank(tup);
        ck.note(std::abs(g.entry(idx, idx) - expected), 1e-14 * expected,
                "diagonal entry e^{-2 pi beta energy}");
      }

      const FockOperator g2 = conformal_hamiltonian_gibbs(space, irrep, 0.17);
      const FockOperator g12 =
          conformal_hamiltonian_gibbs(space, irrep, beta + 0.17);
      const SparseMatrixXcd diff = (g * g2).matrix() - g12.matrix();
      ck.note(diff.norm(), 1e-13 * std::sqrt((double)space.dim()),
              "semigroup in beta");
      ck.note(g.exact_band() == N ? 0.0 : 1.0, 0.5,
              "Gibbs operator exact on the whole truncation");
    }

  // One-particle trace against the truncated spectrum plus the exact
  // geometric remainder.
  for (int n : {1, 3})
    for (double beta : {0.2, 0.7}) {
      const int K = 240;
      const LowestWeightIrrep big(n, K);
      const std::vector<double> spec = rotation_spectrum(big);
      long double partial = 0.0L;
      for (double ev : spec) partial += expl(-(long double)beta * ev);
      const double x = std::exp(-kTwoPi * beta);
      const double rem = std::exp(-kTwoPi * beta * (n + K)) / (1.0 - x);
      const double tr = one_particle_gibbs_trace(n, beta);
      ck.note(std::abs(tr - (double)(partial + (long double)rem)) / tr, 1e-12,
              "one-particle trace matches the spectrum sum");
    }

  bool threw = false;
  try {
    one_particle_gibbs_trace(1, 0.0);
  } catch (const std::domain_error&) {
    threw = true;
  }
  ck.require(threw, "beta <= 0 rejected");
  threw = false;
  try {
    conformal_hamiltonian_gibbs(space, LowestWeightIrrep(1, d), -1.0);
  } catch (const std::domain_error&) {
    threw = true;
  }
  ck.require(threw, "negative beta rejected");

  if (!ck.passed() && worst_op != nullptr) ck.dump = to_debug_json(*worst_op);
  return ck.finish("gibbs");
}

// ----------------------------------------------------------- commutation --

SuiteResult suite_commutation(const VerifyOptions& opts) {
  Checker ck;
  const int d = clamp_d(opts.d);
  const int N = std::clamp(opts.N, 2, 6);
  const TruncatedFockSpace space(d, N);
  std::mt19937_64 rng(opts.seed);
  Eigen::VectorXcd worst_h = Eigen::VectorXcd::Zero(d);
  Eigen::VectorXcd worst_k = Eigen::VectorXcd::Zero(d);
  double worst = -1.0;
  const int pairs = std::max(4, opts.samples * 4);
  for (int i = 0; i < pairs; ++i) {
    const Eigen::VectorXcd h = gaussian_vector(rng, d);
    const Eigen::VectorXcd k = gaussian_vector(rng, d);
    const double scale = std::max(1.0, h.norm() * k.norm());
    const double defect = commutator_defect(space, h, k);
    if (defect > worst) {
      worst = defect;
      worst_h = h;
      worst_k = k;
    }
    ck.note(defect, 1e-12 * scale, "commutator is 2i Im<h,k> P_vac on band");
    const Eigen::VectorXcd hr = h.real().cast<Complex>();
    const Eigen::VectorXcd kr = k.real().cast<Complex>();
    ck.note(field_commutator_band_norm(space, hr, kr),
            1e-12 * std::max(1.0, hr.norm() * kr.norm()),
            "real pairs commute on band");
  }

  // Pinned pure case h = e_0, k = i e_0.
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(d);
  e0(0) = Complex{1.0, 0.0};
  const Eigen::VectorXcd ie0 = Complex{0.0, 1.0} * e0;
  ck.note(commutator_defect(space, e0, ie0), 1e-13,
          "h = e_0, k = i e_0 gives exactly 2i P_vac");
  const FockOperator comm = field_commutator(space, e0, ie0);
  ck.note(std::abs(comm.entry(0, 0) - Complex{0.0, 2.0}), 1e-14,
          "vacuum matrix element is 2i");
  ck.require(comm.exact_band() >= N - 2, "commutator band bookkeeping");

  if (!ck.passed())
    ck.dump = to_debug_json(field_commutator(space, worst_h, worst_k));
  return ck.finish("commutation");
}

// ------------------------------------------------------------------ flip --

SuiteResult suite_flip(const VerifyOptions& opts) {
  Checker ck;
  const int d = clamp_d(opts.d);
  const int N = std::clamp(opts.N, 1, 5);
  const TruncatedFockSpace space(d, N);
  const FockOperator z = flip(space);
  const FockOperator id = identity_operator(space);
  ck.note(((z * z).matrix() - id.matrix()).norm(), 1e-14, "Z^2 = 1");
  ck.note((z.adjoint().matrix() - z.matrix()).norm(), 1e-14,
          "Z is self-adjoint");
  const FockVector om = vacuum_vector(space);
  ck.note((z.apply(om).coeffs - om.coeffs).norm(), 1e-14, "Z vacuum = vacuum");
  std::mt19937_64 rng(opts.seed ^ 0x5eedull);
  for (int i = 0; i < std::max(2, opts.samples); ++i) {
    const Eigen::VectorXcd h = gaussian_vector(rng, d);
    const SparseMatrixXcd conj_l =
        z.matrix() * left_creation(space, h).matrix() * z.matrix();
    ck.note((conj_l - right_creation(space, h).matrix()).norm(), 1e-14,
            "Z l(h) Z = r(h)");
    const SparseMatrixXcd conj_s =
        z.matrix() * field_s(space, h).matrix() * z.matrix();
    ck.note((conj_s - field_d(space, h).matrix()).norm(), 1e-14,
            "Z s(h) Z = d(h)");
  }
  if (!ck.passed()) ck.dump = to_debug_json(z);
  return ck.finish("flip");
}

// ------------------------------------------------------------ functorial --

SuiteResult suite_functorial(const VerifyOptions& opts) {
  Checker ck;
  const int d = clamp_d(opts.d);
  const int N = std::clamp(opts.N, 1, 5);
  const TruncatedFockSpace space(d, N);
  const double scale = std::sqrt((double)space.dim());
  const FockOperator id = identity_operator(space);
  const FockVector om = vacuum_vector(space);
  std::mt19937_64 rng(opts.seed ^ 0xf0f0ull);
  std::vector<FockOperator> keep;
  for (int i = 0; i < std::max(2, opts.samples); ++i) {
    const Eigen::MatrixXcd u = random_unitary(rng, d);
    const Eigen::MatrixXcd v = random_unitary(rng, d);
    const FockOperator gu = second_quantize(space, u);
    const FockOperator gv = second_quantize(space, v);
    const FockOperator guv = second_quantize(space, u * v);
    keep.push_back(gu);
    ck.note(((gu * gv).matrix() - guv.matrix()).norm(), 1e-12 * scale,
            "Gamma(u) Gamma(v) = Gamma(uv)");
    ck.note(((gu * gu.adjoint()).matrix() - id.matrix()).norm(), 1e-12 * scale,
            "Gamma(u) is unitary");
    ck.note((gu.adjoint().matrix() -
             second_quantize(space, u.adjoint()).matrix()).norm(),
            1e-12 * scale, "Gamma(u)* = Gamma(u*)");
    ck.note((gu.apply(om).coeffs - om.coeffs).norm(), 1e-14,
            "Gamma(u) fixes the vacuum");
    ck.note(gu.exact_band() == N ? 0.0 : 1.0, 0.5,
            "Gamma exact on the whole truncation");

    // Diagonal fast path against the generic path through conjugation.
    Eigen::VectorXd diag_entries(d);
    std::uniform_real_distribution<double> unif(0.3, 1.5);
    for (int j = 0; j < d; ++j) diag_entries(j) = unif(rng);
    const Eigen::MatrixXcd dm = diag_entries.cast<Complex>().asDiagonal();
    const FockOperator gd = second_quantize(space, dm);
    const FockOperator lhs = second_quantize(space, u * dm * u.adjoint());
    const FockOperator rhs = gu * gd * gu.adjoint();
    const double pscale = std::max(1.0, rhs.matrix().norm());
    ck.note((lhs.matrix() - rhs.matrix()).norm(), 1e-12 * pscale,
            "diagonal and generic paths agree under conjugation");
  }
  ck.note((second_quantize(space, Eigen::MatrixXcd::Identity(d, d)).matrix() -
           id.matrix()).norm(),
          1e-14, "Gamma(1) = 1");
  if (!ck.passed() && !keep.empty()) ck.dump = to_debug_json(keep.front());
  return ck.finish("functorial");
}

// --------------------------------------------------------------- moments --

SuiteResult suite_moments(const VerifyOptions& opts) {
  Checker ck;
  const int d = clamp_d(opts.d);
  const int N = std::max(opts.N, 5);
  const TruncatedFockSpace space(d, N);
  static const double catalan[6] = {1.0, 1.0, 2.0, 5.0, 14.0, 42.0};
  std::mt19937_64 rng(opts.seed ^ 0x3011ull);
  const Eigen::VectorXcd h = gaussian_vector(rng, d);

  std::ostringstream reported;
  for (int m = 0; m <= 5; ++m) {
    const Complex mom = vacuum_moment(space, h, 2 * m);
    const double normalized = mom.real() / std::pow(h.norm(), 2 * m);
    if (m > 0) reported << ", ";
    reported << llround(normalized);
    ck.note(std::abs(normalized - catalan[m]), 1e-9,
            "even moments are Catalan numbers");
    ck.note(std::abs(mom.imag()), 1e-12 * std::pow(h.norm(), 2 * m),
            "moments are real");
    if (m <= 4)
      ck.note(std::abs(vacuum_moment(space, h, 2 * m + 1)), 1e-14,
              "odd moments vanish");
  }

  // Dual route: repeated application of s(h) in the full space, which is
  // exact for walks of length p <= 2N.
  const FockOperator s = field_s(space, h);
  const FockVector om = vacuum_vector(space);
  FockVector w = om;
  for (int p = 1; p <= 2 * N; ++p) {
    w = s.apply(w);
    const Complex brute = inner_product(om, w);
    const Complex cyclic = vacuum_moment(space, h, p);
    ck.note(std::abs(brute - cyclic),
            1e-11 * std::max(1.0, std::abs(cyclic)),
            "cyclic route matches the full-space route");
  }

  bool threw = false;
  try {
    vacuum_moment(space, h, 2 * N + 2);
  } catch (const TruncationError&) {
    threw = true;
  }
  ck.require(threw, "TruncationError beyond the exact window");

  if (!ck.passed()) ck.dump = to_debug_json(s);
  return ck.finish("moments",
                   "moments / |h|^{2m} for m = 0..5: " + reported.str() +
                       " (Catalan)");
}

// -------------------------------------------------------------- locality --

SuiteResult suite_locality(const VerifyOptions& opts) {
  Checker ck;
  const int d = clamp_d(opts.d);
  const int N = std::clamp(opts.N, 2, 5);
  const TruncatedFockSpace space(d, N);
  std::string dump;
  for (int rep = 0; rep < std::max(1, opts.samples / 2); ++rep) {
    const RealSubspace h =
        well_conditioned_standard_subspace(d, opts.seed + 101 * rep);
    const RealSubspace hp = symplectic_complement(h);
    if (dump.empty()) dump = to_debug_json(h);
    ck.note(std::abs(h.real_dim() + hp.real_dim() - 2 * d), 0.5,
            "dim H + dim H' = 2d");
    ck.require(is_standard(hp).standard, "H' standard when H is");
    const RealSubspace hpp = symplectic_complement(hp);
    ck.note(subspace_defect(hpp.basis(), h.basis()), 1e-10, "(H')' = H");

    double max_im = 0.0, max_comm = 0.0;
    for (int i = 0; i < opts.samples; ++i) {
      const Eigen::VectorXcd a = sample_unit_vector(h, opts.seed + 7 * i + 1);
      const Eigen::VectorXcd b = sample_unit_vector(hp, opts.seed + 7 * i + 4);
      max_im = std::max(max_im, std::abs(a.dot(b).imag()));
      max_comm = std::max(max_comm, field_commutator_band_norm(space, a, b));
    }
    ck.note(max_im, 1e-12, "Im<h,k> = 0 across H x H'");
    ck.note(max_comm, 1e-12, "fields over H x H' commute on band");
  }
  if (!ck.passed()) ck.dump = dump;
  return ck.finish("locality");
}

// --------------------------------------------------------------- modular --

SuiteResult suite_modular(const VerifyOptions& opts) {
  Checker ck;
  std::string dump;
  for (int d : {1, 2, 3}) {
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
    for (int rep = 0; rep < std::max(1, opts.samples / 2); ++rep) {
      const RealSubspace h =
          well_conditioned_standard_subspace(d, opts.seed + 31 * d + rep);
      const TomitaData td = tomita(h);
      if (dump.empty()) dump = to_debug_json(h);

      double sfix = 0.0;
      for (int i = 0; i < opts.samples; ++i) {
        const Eigen::VectorXcd v =
            sample_unit_vector(h, opts.seed + 11 * i + rep);
        sfix = std::max(sfix, (td.apply_s(v) - v).norm());
      }
      ck.note(sfix, 1e-10, "S fixes H pointwise");

      std::mt19937_64 rng(opts.seed + d + 17 * rep);
      const Eigen::VectorXcd w = gaussian_vector(rng, d);
      ck.note((td.apply_s(td.apply_s(w)) - w).norm() / w.norm(), 1e-9,
              "S^2 = 1");
      ck.note((td.s_matrix -
               td.j_unitary * td.delta_power(0.5).conjugate()).norm(),
              1e-9 * std::max(1.0, td.s_matrix.norm()),
              "S = J Delta^{1/2}");
      ck.note((td.j_unitary * td.j_unitary.conjugate() - eye).norm(), 1e-10,
              "J^2 = 1");
      ck.note((td.j_unitary * td.j_unitary.adjoint() - eye).norm(), 1e-10,
              "J is unitary");
      const Eigen::MatrixXcd jdj =
          td.j_unitary * td.delta.conjugate() * td.j_unitary.conjugate();
      const Eigen::MatrixXcd dinv = td.delta_power(-1.0);
      ck.note((jdj - dinv).norm(), 1e-9 * std::max(1.0, dinv.norm()),
              "J Delta J = Delta^{-1}");

      const Eigen::VectorXd& ev = td.delta_eigenvalues;
      double pair_defect = 0.0;
      for (int i = 0; i < ev.size(); ++i)
        pair_defect = std::max(
            pair_defect, std::abs(ev(i) * ev(ev.size() - 1 - i) - 1.0));
      ck.note(pair_defect, 1e-8, "Delta spectrum pairs lambda with 1/lambda");
      ck.note(ev.minCoeff() > 0.0 ? 0.0 : 1.0, 0.5, "Delta is positive");

      ck.note(modular_flow_check(h, {0.1, 1.0, 10.0}), 1e-9,
              "Delta^{it} preserves H");
      ck.note(modular_conjugation_defect(h), 1e-9, "J maps H onto H'");
    }
  }

  // Pinned d = 1 case H = R: Delta = 1, J = conjugation, S = conjugation.
  const RealSubspace hr =
      RealSubspace::from_generators(1, {Eigen::VectorXcd::Ones(1)});
  const TomitaData td1 = tomita(hr);
  ck.note(std::abs(td1.delta(0, 0) - Complex{1.0, 0.0}), 1e-12,
          "H = R has Delta = 1");
  ck.note(std::abs(td1.s_matrix(0, 0) - Complex{1.0, 0.0}), 1e-12,
          "H = R has S = conjugation");
  ck.note(std::abs(td1.j_unitary(0, 0) - Complex{1.0, 0.0}), 1e-12,
          "H = R has J = conjugation");
  if (!ck.passed()) ck.dump = dump;
  return ck.finish("modular");
}

// --------------------------------------------------------------- duality --

SuiteResult suite_duality(const VerifyOptions& opts) {
  Checker ck;
  const int d = clamp_d(opts.d);
  const int N = std::clamp(opts.N, 2, 5);
  const TruncatedFockSpace space(d, N);
  std::string dump;
  for (int rep = 0; rep < std::max(1, opts.samples / 2); ++rep) {
    const RealSubspace h =
        well_conditioned_standard_subspace(d, opts.seed + 999 + rep);
    if (dump.empty()) dump = to_debug_json(h);
    ck.note(twisted_duality_generators(space, h, opts.samples,
                                       opts.seed + 10 * rep),
            1e-12, "generator twisted duality across H x H'");
  }
  // Positive control: generic pairs have band norm exactly 2 |Im<h,k>|.
  std::mt19937_64 rng(opts.seed ^ 0xd0a1ull);
  bool found_nonzero = false;
  for (int i = 0; i < std::max(3, opts.samples); ++i) {
    const Eigen::VectorXcd a = gaussian_vector(rng, d);
    const Eigen::VectorXcd b = gaussian_vector(rng, d);
    const double im = a.dot(b).imag();
    const double scale = std::max(1.0, a.norm() * b.norm());
    if (std::abs(im) > 0.05 * scale) found_nonzero = true;
    ck.note(std::abs(field_commutator_band_norm(space, a, b) -
                     2.0 * std::abs(im)),
            1e-10 * scale, "control pairs give band norm 2 |Im<h,k>|");
  }
  ck.require(found_nonzero, "controls exercise nonzero Im<h,k>");
  if (!ck.passed()) ck.dump = dump;
  return ck.finish("duality");
}

// ------------------------------------------------------------- partition --

SuiteResult suite_partition(const VerifyOptions& opts) {
  Checker ck;

  // Multiplicities against exhaustive tuple enumeration.
  for (int n = 1; n <= 3; ++n) {
    const int m_max = 12;
    const MultiplicityTable t = multiplicities(n, m_max);
    std::vector<long long> brute(static_cast<std::size_t>(m_max) + 1, 0);
    std::function<void(int)> enumerate = [&](int sum) {
      ++brute[static_cast<std::size_t>(sum)];
      for (int a = n; sum + a <= m_max; ++a) enumerate(sum + a);
    };
    enumerate(0);
    int mismatches = 0;
    for (int m = 0; m <= m_max; ++m)
      if (t.nu[static_cast<std::size_t>(m)] != BigInt(brute[m])) ++mismatches;
    ck.note(mismatches, 0.5, "recurrence matches tuple enumeration");
  }

  // Doubling law at n = 1.
  const MultiplicityTable t1 = multiplicities(1, 30);
  int law_mismatches = 0;
  for (int m = 1; m <= 30; ++m)
    if (t1.nu[static_cast<std::size_t>(m)] != BigInt(1) << (m - 1))
      ++law_mismatches;
  ck.note(law_mismatches, 0.5, "nu_m = 2^{m-1} at n = 1");

  // Generating function at n = 1: partial sums of nu_m x^m against
  // (1-x)/(1-2x); the analytic remainder is (2x)^{m_max} scaled down, with
  // a floating-point floor added since the exact bound dives below
  // double precision for small x.
  for (double x : {0.1, 0.25, 0.4}) {
    const int m_max = 40;
    const double beta = -std::log(x) / kTwoPi;
    const double partial = partition_truncated(1, beta, m_max).value;
    const double target = (1.0 - x) / (1.0 - 2.0 * x);
    const double allowed =
        std::max(std::pow(2.0 * x, m_max),
                 256.0 * std::numeric_limits<double>::epsilon());
    ck.note(std::abs(partial - target) / target, allowed,
            "generating function (1-x)/(1-2x)");
  }

  // Finite/divergent classification around each threshold.
  for (int n = 1; n <= 4; ++n) {
    const double bm = beta_max(n);
    ck.require(partition_closed(n, 1.05 * bm).finite(),
               "finite just above beta_n");
    ck.require(!partition_closed(n, 0.95 * bm).finite(),
               "divergent just below beta_n");
    ck.require(!partition_closed(n, bm).finite(),
               "divergent at beta_n exactly");
  }

  // Pinned closed value: n = 1, x = 1/4 gives q = 1/3 and value 1.5.
  const double beta_quarter = std::log(4.0) / kTwoPi;
  const PartitionResult pinned = partition_closed(1, beta_quarter);
  ck.require(pinned.finite(), "pinned point is finite");
  if (pinned.finite())
    ck.note(std::abs(*pinned.value - 1.5), 1e-12, "closed value 1.5 at x = 1/4");

  // Truncated sums stay within their reported tail bounds.
  std::mt19937_64 rng(opts.seed ^ 0x9a37ull);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const double bm = beta_max(n);
    const double beta = bm * (1.05 + 2.0 * unif(rng));
    const int m_max = 120 + static_cast<int>(rng() % 80);
    const TruncatedPartition tp = partition_truncated(n, beta, m_max);
    const PartitionResult closed = partition_closed(n, beta);
    ck.require(tp.has_bound, "bound available above beta_n");
    ck.require(closed.finite(), "closed form finite above beta_n");
    if (tp.has_bound && closed.finite())
      ck.note(std::abs(*closed.value - tp.value) /
                  std::max(tp.tail_bound, 1e-300),
              1.0, "truncated sum within its tail bound");
  }
  ck.require(!partition_truncated(1, 0.9 * beta_max(1), 50).has_bound,
             "no bound below beta_n");

  // Root solver against closed forms and monotonicity.
  ck.note(std::abs(beta_max(1) - std::log(2.0) / kTwoPi), 1e-13,
          "beta_1 = ln 2 / (2 pi)");
  const double x2 = (std::sqrt(5.0) - 1.0) / 2.0;
  ck.note(std::abs(beta_max(2) + std::log(x2) / kTwoPi), 1e-13,
          "beta_2 from the golden ratio");
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 10; ++n) {
    const double bm = beta_max(n);
    ck.require(bm > 0.0 && bm < prev, "beta_n strictly decreasing");
    prev = bm;
  }
  for (int n : {1, 2, 5, 17, 50}) {
    const BetaMaxResult r = beta_max_solve(n);
    ck.note(std::abs(r.residual), 1e-14, "solver residual");
    ck.note(std::abs(std::pow(r.x_root, n) + r.x_root - 1.0), 5e-14,
            "x_root solves x^n + x = 1");
  }

  // Schatten norms: finite iff p beta > beta_n, and value^p recovers the
  // trace at p beta.
  for (int n : {1, 2})
    for (double beta : {0.08, 0.2})
      for (double p : {0.5, 1.0, 2.0}) {
        const PartitionResult s = schatten_norm(n, beta, p);
        const PartitionResult c = partition_closed(n, p * beta);
        ck.require(s.finite() == c.finite(),
                   "p-norm finite iff p beta above beta_n");
        if (s.finite() && c.finite())
          ck.note(std::abs(std::pow(*s.value, p) - *c.value) / *c.value,
                  1e-12, "p-norm recovers the trace at p beta");
      }

  // Pole coefficients: closed form at n = 1, finite differences at n = 2,
  // and the one-sided limit probe (beta - beta_1) Tr at beta_1 + 10^{-k}.
  ck.note(std::abs(pole_coefficient(1) - 1.0 / (4.0 * kPi)), 1e-13,
          "c_1 = 1/(4 pi)");
  {
    const double bm = beta_max(2);
    const double hstep = 1e-5;
    const auto q_of = [](double beta) {
      const double x = std::exp(-kTwoPi * beta);
      return x * x / (1.0 - x);
    };
    const double qprime = (q_of(bm + hstep) - q_of(bm - hstep)) / (2.0 * hstep);
    ck.note(std::abs(pole_coefficient(2) - (-1.0 / qprime)), 1e-6,
            "c_2 matches the finite-difference slope");
  }
  const double beta1 = beta_max(1);
  const double c1 = pole_coefficient(1);
  for (int k = 3; k <= 6; ++k) {
    const double delta = std::pow(10.0, -k);
    const PartitionResult pr = partition_closed(1, beta1 + delta);
    ck.require(pr.finite(), "probe point finite");
    if (pr.finite())
      ck.note(std::abs(delta * *pr.value - c1), 1.2 * delta,
              "(beta - beta_1) Tr approaches c_1");
  }

  return ck.finish("partition");
}

// -------------------------------------------------------------- crossval --

SuiteResult suite_crossval(const VerifyOptions&) {
  Checker ck;
  std::string dump;

  // Energy histogram of the truncated Fock basis against the multiplicity
  // recurrence, on windows where the truncation is complete.
  for (int n : {1, 2}) {
    const int d = (n == 1) ? 6 : 5;
    const int N = (n == 1) ? 5 : 4;
    const TruncatedFockSpace space(d, N);
    const int m_c = std::min(n + d - 1, n * N);
    std::vector<long long> hist(static_cast<std::size_t>(m_c) + 1, 0);
    for (long long idx = 0; idx < space.dim(); ++idx) {
      const std::vector<int> tup = space.unrank(idx);
      int energy = 0;
      for (int a : tup) energy += n + a;
      if (energy <= m_c) ++hist[static_cast<std::size_t>(energy)];
    }
    const MultiplicityTable t = multiplicities(n, m_c);
    int mismatches = 0;
    for (int m = 0; m <= m_c; ++m)
      if (t.nu[static_cast<std::size_t>(m)] != BigInt(hist[m])) ++mismatches;
    ck.note(mismatches, 0.5, "Fock energy histogram matches multiplicities");

    // Diagonal partial sum of the Gibbs operator against the truncated
    // partition sum over the same energy window.
    const double beta = 0.31;
    const LowestWeightIrrep irrep(n, d);
    const FockOperator g = conformal_hamiltonian_gibbs(space, irrep, beta);
    if (dump.empty()) dump = to_debug_json(g);
    long double fock_sum = 0.0L;
    for (long long idx = 0; idx < space.dim(); ++idx) {
      const std::vector<int> tup = space.unrank(idx);
      int energy = 0;
      for (int a : tup) energy += n + a;
      if (energy <= m_c) fock_sum += (long double)g.entry(idx, idx).real();
    }
    const TruncatedPartition tp = partition_truncated(n, beta, m_c);
    ck.note(std::abs((double)fock_sum - tp.value), 5e-13 * std::max(1.0, tp.value),
            "Gibbs diagonal matches the truncated partition sum");
  }

  // Trace of the Gibbs operator is monotone in the truncation and bounded
  // by the closed form.
  const double beta = 0.25;
  const PartitionResult closed = partition_closed(1, beta);
  ck.require(closed.finite(), "closed form finite at beta = 0.25");
  double prev_trace = 0.0;
  for (int dn = 2; dn <= 6; ++dn) {
    const TruncatedFockSpace space(dn, dn);
    const double tr =
        conformal_hamiltonian_gibbs(space, LowestWeightIrrep(1, dn), beta)
            .trace()
            .real();
    ck.require(tr > prev_trace, "trace monotone in the truncation");
    if (closed.finite())
      ck.require(tr < *closed.value, "trace below the closed form");
    prev_trace = tr;
  }

  // The partition ratio q equals the one-particle Gibbs trace.
  for (int n : {1, 2, 3})
    for (double b : {0.2, 0.5}) {
      const double q = partition_closed(n, b).q;
      const double tr = one_particle_gibbs_trace(n, b);
      ck.note(std::abs(q - tr) / tr, 1e-13,
              "partition ratio equals the one-particle trace");
    }

  if (!ck.passed()) ck.dump = dump;
  return ck.finish("crossval");
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"mobius", suite_mobius},         {"ladder", suite_ladder},
    {"gibbs", suite_gibbs},           {"commutation", suite_commutation},
    {"flip", suite_flip},             {"functorial", suite_functorial},
    {"moments", suite_moments},       {"locality", suite_locality},
    {"modular", suite_modular},       {"duality", suite_duality},
    {"partition", suite_partition},   {"crossval", suite_crossval},
};

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const SuiteEntry& e : kSuites) names.emplace_back(e.name);
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  for (const SuiteEntry& e : kSuites)
    if (name == e.name) return e.fn(opts);
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteResult> run_all(const VerifyOptions& opts) {
  std::vector<SuiteResult> results;
  for (const SuiteEntry& e : kSuites) results.push_back(e.fn(opts));
  return results;
}

RealSubspace well_conditioned_standard_subspace(int d, std::uint64_t seed,
                                                double cond_limit,
                                                int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(seed +
                        0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(
                                                    attempt + 1));
    std::vector<Eigen::VectorXcd> gens;
    gens.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) gens.push_back(gaussian_vector(rng, d));
    const RealSubspace h = RealSubspace::from_generators(d, gens);
    if (!is_standard(h).standard) continue;
    try {
      if (tomita(h).conditioning <= cond_limit) return h;
    } catch (const std::exception&) {
      continue;
    }
  }
  throw std::runtime_error("no well-conditioned standard subspace found");
}

}  // namespace fockforge
