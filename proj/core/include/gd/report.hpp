#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "gd/linalg.hpp"

namespace gd {

// Outcome of a sampled property harness.  Failure is a report, not an error.
struct CheckReport {
    bool pass = false;
    int samples = 0;
    std::uint64_t seed = 0;
    double worst_gap = 0.0;
    std::optional<SymmetricMatrix> witness;
    std::map<std::string, double> residuals;
};

}  // namespace gd
