// JSON debug formats: operators as {"d","N","entries":[[row,col,re,im],...]},
// vectors as {"d","N","coeffs":[[re,im],...]}, subspaces as
// {"d","generators":[[[re,im] per component] per generator]}.  Matrix-only:
// band metadata is not carried, so operators read back from JSON report no
// trusted band.
#pragma once

#include <string>

namespace fockforge {

class FockOperator;
struct FockVector;
class RealSubspace;

std::string to_debug_json(const FockOperator& op);
std::string to_debug_json(const FockVector& v);
std::string to_debug_json(const RealSubspace& h);

FockOperator operator_from_debug_json(const std::string& text);
FockVector vector_from_debug_json(const std::string& text);
RealSubspace subspace_from_debug_json(const std::string& text);

}  // namespace fockforge
