#pragma once

#include "srlab/report.hpp"

#include <cstdint>
#include <vector>

namespace srlab {

// Verification batteries behind the `verify` command. Each returns one Check
// per named identity or invariant; trials scales the random sample counts.

std::vector<Check> groups_suite(std::uint64_t seed, int trials = 200);
std::vector<Check> frames_suite(std::uint64_t seed, int trials = 1000);
std::vector<Check> maps_suite(std::uint64_t seed, int trials = 10000);

// Random sample boxes used across the suites: [-2,2]^3 for Heisenberg and
// RotoTranslation, [-2,2] x [e^-2, e^2] x [-2,2] for AffineAdditive (lambda
// drawn log-uniformly).
GroupPoint random_point(GroupId g, class Rng& rng);

}  // namespace srlab
