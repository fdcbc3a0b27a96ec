#pragma once

#include <map>
#include <string>
#include <vector>

#include "rebal/instance.hpp"

namespace rebal {

/// Stand-in for the symbolic "small positive number" used by the
/// counter-example instances; every strict inequality they rely on holds.
inline constexpr Money kFixtureEpsilon = 0.001;

struct Misreport {
  UserId user;
  Money bid;
  std::string label;
};

/// A hand-built demonstration instance: the instance itself, the truthful
/// bid profile, the intended budget, display labels for users, and the
/// misreports the counter-example narratives rely on.
struct FixtureBundle {
  std::string name;
  Instance instance;
  BidProfile truthful;
  Money budget = 0;
  std::map<UserId, std::string> user_labels;
  std::vector<Misreport> misreports;

  std::string user_label(UserId id) const;
};

/// Known names: fig1a, fig1b, fig1c, fig2, sqrt2_case1, sqrt2_case2.
/// Throws std::invalid_argument listing the valid names otherwise.
FixtureBundle fixture(const std::string& name);

std::vector<std::string> fixture_names();

}  // namespace rebal
