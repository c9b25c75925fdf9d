#pragma once

#include <string>

namespace sgc {

/// Shortest decimal text that round-trips to the same double ("inf"/"nan" for
/// non-finite values). Locale independent.
std::string format_double(double value);

}  // namespace sgc
