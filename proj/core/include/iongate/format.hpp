#pragma once

#include <string>

namespace iongate {

// Shortest decimal string that round-trips to the same double. Deterministic
// across runs; used for byte-stable CSV and operator dumps.
std::string format_double(double value);

}  // namespace iongate
