#pragma once

#include <cstdint>

namespace srlab {

// xoshiro256++ with splitmix64 seeding. Hand-rolled so that seeded runs are
// reproducible across standard library implementations (std::*_distribution
// is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);
  double normal();                        // Box-Muller
  int uniform_int(int lo, int hi);        // inclusive bounds

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace srlab
