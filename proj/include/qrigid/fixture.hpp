#pragma once

#include <string>
#include <vector>

#include "qrigid/opsys.hpp"

namespace qrigid {

// Built-in reference tuple: four symmetric traceless 7x7 matrices, recorded to
// six significant digits. certify_tuple on it reaches full rank 49 with a
// comfortable singular-value margin, which makes it a stable regression anchor.
OperatorTuple<FloatScalar> fixture_n7_d4();

std::vector<std::string> fixture_names();

OperatorTuple<FloatScalar> fixture_by_name(const std::string& name);

}  // namespace qrigid
