#pragma once

#include "srlab/modulus.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace srlab {

enum class CheckStatus { Pass, Fail, Info };

// Origin of a reference value: a published constant, an exact identity, or a
// value derived from an independent oracle (quadrature, brute force, ...).
enum class RefOrigin { Published, Exact, Derived };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Info;
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  RefOrigin origin = RefOrigin::Exact;
  std::string note;
};

struct Report {
  std::string command;
  std::map<std::string, std::string> args;
  std::uint64_t seed = 0;
  bool deterministic = false;
  std::vector<Check> checks;

  int failures() const;
  void add(Check c) { checks.push_back(std::move(c)); }
};

// JSON emitters. Numbers carry 17 significant digits so serialized reports
// round-trip exactly; deterministic reports carry no timestamp.
std::string to_json(const Report& r);
std::string to_json(const ModulusReport& r);
std::string to_json(const MeasureNetwork& net);
MeasureNetwork network_from_json(std::istream& is);

std::string format_double(double v);  // %.17g, nan/inf -> null

}  // namespace srlab
