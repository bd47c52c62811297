#include "fockforge/serialize.hpp"

#include <json.hpp>
#include <stdexcept>
#include <vector>

#include "fockforge/fock.hpp"
#include "fockforge/standard_subspace.hpp"

namespace fockforge {

namespace {
using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  return j;
}
}  // namespace

std::string to_debug_json(const FockOperator& op) {
  json entries = json::array();
  const SparseMatrixXcd& m = op.matrix();
  for (int outer = 0; outer < m.outerSize(); ++outer)
    for (SparseMatrixXcd::InnerIterator it(m, outer); it; ++it)
      entries.push_back({it.row(), it.col(), it.value().real(),
                         it.value().imag()});
  return json{{"d", op.d()}, {"N", op.N()}, {"entries", entries}}.dump();
}

std::string to_debug_json(const FockVector& v) {
  json coeffs = json::array();
  for (long i = 0; i < v.coeffs.size(); ++i)
    coeffs.push_back({v.coeffs(i).real(), v.coeffs(i).imag()});
  return json{{"d", v.d}, {"N", v.N}, {"coeffs", coeffs}}.dump();
}

std::string to_debug_json(const RealSubspace& h) {
  json generators = json::array();
  for (const Eigen::VectorXcd& g : h.generators()) {
    json vec = json::array();
    for (long i = 0; i < g.size(); ++i)
      vec.push_back({g(i).real(), g(i).imag()});
    generators.push_back(vec);
  }
  return json{{"d", h.ambient_dim()}, {"generators", generators}}.dump();
}

FockOperator operator_from_debug_json(const std::string& text) {
  const json j = parse(text);
  const TruncatedFockSpace space(j.at("d").get<int>(), j.at("N").get<int>());
  std::vector<Eigen::Triplet<Complex>> trips;
  for (const json& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 4)
      throw std::invalid_argument("operator entry must be [row,col,re,im]");
    trips.emplace_back(e[0].get<long long>(), e[1].get<long long>(),
                       Complex{e[2].get<double>(), e[3].get<double>()});
  }
  SparseMatrixXcd m(space.dim(), space.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return FockOperator(space, std::move(m), -1, -space.N(), space.N(), false);
}

FockVector vector_from_debug_json(const std::string& text) {
  const json j = parse(text);
  const TruncatedFockSpace space(j.at("d").get<int>(), j.at("N").get<int>());
  const json& coeffs = j.at("coeffs");
  if (static_cast<long long>(coeffs.size()) != space.dim())
    throw std::invalid_argument("coefficient count does not match dimension");
  Eigen::VectorXcd c(space.dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const json& e = coeffs[i];
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("coefficient must be [re,im]");
    c(static_cast<long>(i)) = Complex{e[0].get<double>(), e[1].get<double>()};
  }
  return FockVector(space, std::move(c));
}

RealSubspace subspace_from_debug_json(const std::string& text) {
  const json j = parse(text);
  const int d = j.at("d").get<int>();
  std::vector<Eigen::VectorXcd> generators;
  for (const json& g : j.at("generators")) {
    if (static_cast<int>(g.size()) != d)
      throw std::invalid_argument("generator length does not match dimension");
    Eigen::VectorXcd vec(d);
    for (int i = 0; i < d; ++i) {
      const json& e = g[static_cast<std::size_t>(i)];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("generator component must be [re,im]");
      vec(i) = Complex{e[0].get<double>(), e[1].get<double>()};
    }
    generators.push_back(std::move(vec));
  }
  return RealSubspace::from_generators(d, generators);
}

}  // namespace fockforge
