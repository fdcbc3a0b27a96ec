#include "rebal/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace rebal {

namespace {

struct FixtureSpec {
  std::vector<Money> costs;                         // users a, b, ... in order
  std::vector<Money> revenues;                      // tasks 1, 2, ... in order
  std::vector<std::pair<int, int>> edges;           // (user index 0-based, task id)
  Money budget;
  std::vector<Misreport> misreports;
};

FixtureBundle build(const std::string& name, const FixtureSpec& spec) {
  FixtureBundle b;
  b.name = name;
  b.budget = spec.budget;
  b.misreports = spec.misreports;
  Instance& inst = b.instance;
  inst.budget = spec.budget;
  inst.range_h = 1;  // edges are explicit; the range is not used
  inst.locations.push_back({1, {0, 0}});
  for (std::size_t i = 0; i < spec.costs.size(); ++i) {
    UserId id = static_cast<UserId>(i) + 1;
    inst.users.push_back({id, {0, 0}, spec.costs[i]});
    b.user_labels[id] = std::string(1, static_cast<char>('a' + i));
  }
  for (std::size_t j = 0; j < spec.revenues.size(); ++j) {
    TaskId id = static_cast<TaskId>(j) + 1;
    inst.tasks.push_back({id, 1, static_cast<int>(j) + 1, spec.revenues[j]});
  }
  for (const auto& [ui, t] : spec.edges) {
    inst.edges.emplace_back(ui + 1, t);
  }
  std::sort(inst.edges.begin(), inst.edges.end());
  inst.validate();
  b.truthful = BidProfile::truthful(inst);
  return b;
}

}  // namespace

std::string FixtureBundle::user_label(UserId id) const {
  auto it = user_labels.find(id);
  return it != user_labels.end() ? it->second : std::to_string(id);
}

std::vector<std::string> fixture_names() {
  return {"fig1a", "fig1b", "fig1c", "fig2", "sqrt2_case1", "sqrt2_case2"};
}

FixtureBundle fixture(const std::string& name) {
  const Money eps = kFixtureEpsilon;
  const Money rt2 = std::sqrt(2.0);
  if (name == "fig1a") {
    // Two epsilon-cost users, two unit tasks, one private task each.
    // Exhibits the budget infeasibility of welfare-maximizing payments.
    return build(name, {{eps, eps},
                        {1, 1},
                        {{0, 1}, {1, 2}},
                        1,
                        {}});
  }
  if (name == "fig1b") {
    // Ratio-greedy allocation with revenue-capped payments: user a gains by
    // underbidding.
    return build(name, {{2, 1},
                        {2, 3},
                        {{0, 1}, {0, 2}, {1, 2}},
                        100,
                        {{1, eps, "a underbids"}}});
  }
  if (name == "fig1c") {
    // Revenue-optimal matching paying task values: user b gains by raising
    // her bid to 3.
    return build(name, {{1, 1},
                        {1, 3, 2},
                        {{0, 1}, {0, 2}, {1, 2}, {1, 3}},
                        100,
                        {{2, 3, "b overbids"}}});
  }
  if (name == "fig2") {
    // Walk-through instance: revenues (7, 6, 3, 2, 1.5, 1), costs
    // (5, 4, 3.5, 2), budget 14. The sweep allocates (b,1), (c,2) at price 5
    // and (d,3) at price 3; task 4 hits the budget gate.
    std::vector<std::pair<int, int>> edges;
    for (int ui = 0; ui < 3; ++ui) {
      edges.push_back({ui, 1});
      edges.push_back({ui, 2});
    }
    edges.push_back({3, 3});
    edges.push_back({0, 4});
    return build(name, {{5, 4, 3.5, 2},
                        {7, 6, 3, 2, 1.5, 1},
                        edges,
                        14,
                        {}});
  }
  if (name == "sqrt2_case1") {
    return build(name, {{eps, rt2 + 1},
                        {1 + eps, rt2 + 1 + eps, rt2 + 1},
                        {{0, 1}, {0, 2}, {1, 2}, {1, 3}},
                        100,
                        {{2, rt2 + 1 + eps / 2, "b overbids"}}});
  }
  if (name == "sqrt2_case2") {
    return build(name, {{eps, rt2 + 1 + eps / 2},
                        {1 + eps, rt2 + 1 + eps, rt2 + 1},
                        {{0, 1}, {0, 2}, {1, 2}, {1, 3}},
                        100,
                        {}});
  }
  std::string names;
  for (const std::string& n : fixture_names()) {
    names += names.empty() ? n : ", " + n;
  }
  throw std::invalid_argument("unknown fixture '" + name +
                              "' (available: " + names + ")");
}

}  // namespace rebal
