#include "ccbuckle/csv.hpp"

#include <cmath>

#include <fmt/core.h>

namespace ccb::csv {

std::string num(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    // Avoid "-0" in tables.
    return fmt::format("{:.17g}", x == 0.0 ? 0.0 : x);
}

}  // namespace ccb::csv
