#pragma once

#include <string>

namespace ccb::csv {

/// 17 significant digits, enough to round-trip any double. Infinities and
/// NaN print as inf, -inf and nan.
std::string num(double x);

}  // namespace ccb::csv
