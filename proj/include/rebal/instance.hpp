#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rebal/bipartite.hpp"
#include "rebal/types.hpp"

namespace rebal {

/// Rectangular grid of demand cells. Weights are normalized to sum to 1.
struct GridWorld {
  int rows = 0;
  int cols = 0;
  double cell_size = 0;  // meters
  std::vector<double> demand_weights;  // rows * cols entries

  /// Weights drawn i.i.d. uniform and normalized.
  static GridWorld random(int rows, int cols, double cell_size,
                          std::uint64_t seed);
  /// Takes raw nonnegative weights (one per cell) and normalizes them.
  static GridWorld with_weights(int rows, int cols, double cell_size,
                                std::vector<double> weights);

  int cell_count() const { return rows * cols; }
  Point cell_center(int cell) const;
  void validate() const;  // throws std::invalid_argument
};

struct InstanceConfig {
  int n_users = 0;
  int n_locations = 0;
  double range_h = 0;      // meters; maximum extra distance a user accepts
  Money cost_upper = 5;    // private costs are U[0, cost_upper]
  double base_supply = 1;  // bikes already parked at each location
  double gamma = 100;      // task value scale
  double epsilon_s = 1;    // supply smoothing
  std::uint64_t seed = 0;
  bool allow_cell_reuse = true;         // sample cells with replacement once exhausted
  bool drop_zero_revenue_tasks = false;
  Money budget = 0;  // carried in the instance header; not used by generation
};

struct UserSpec {
  UserId id;
  Point destination;
  Money private_cost;
};

struct LocationSpec {
  LocationId id;
  Point position;
};

struct TaskSpec {
  TaskId id;
  LocationId location;
  int rank;  // 1-based: "park here as the rank-th bike"
  Money revenue;
};

/// One auction instance: users with private costs, parking locations, ranked
/// tasks with predicted revenues, and the feasibility edge set.
struct Instance {
  std::vector<UserSpec> users;      // ascending id
  std::vector<LocationSpec> locations;
  std::vector<TaskSpec> tasks;      // ascending id
  std::vector<std::pair<UserId, TaskId>> edges;  // sorted (user, task)
  double range_h = 0;
  Money budget = 0;

  const UserSpec* find_user(UserId id) const;
  const TaskSpec* find_task(TaskId id) const;
  std::map<TaskId, Money> revenue_map() const;
  Money max_task_revenue() const;  // 0 when there are no tasks
  void validate() const;           // throws std::invalid_argument
};

/// Declared cost per user; may differ from the private cost.
struct BidProfile {
  std::map<UserId, Money> bids;

  static BidProfile truthful(const Instance& instance);

  /// Copy with one bid replaced (used for deviation sweeps).
  BidProfile with(UserId user, Money bid) const;

  Money at(UserId user) const;  // throws std::invalid_argument if missing
  bool covers(const Instance& instance) const;
};

/// The user/task feasibility graph of an instance.
Graph feasibility_graph(const Instance& instance);

/// Revenue of a matching under an instance's task revenues.
Money matching_revenue(const Instance& instance, const Matching& m);

/// KL(d || q) = sum_k d_k ln(d_k / q_k), with 0 ln 0 = 0.
double kl_divergence(const std::vector<double>& d, const std::vector<double>& q);

/// Predicted revenues for ranks 1..max_rank of one location: the drop in
/// KL divergence between demand and the smoothed supply distribution caused
/// by parking the x-th extra bike there, scaled by gamma and clamped at 0.
/// `demand` must be normalized (tolerance 1e-9); base_supply nonnegative.
std::vector<Money> kl_task_values(const std::vector<double>& demand,
                                  const std::vector<double>& base_supply,
                                  int location_index, int max_rank,
                                  double gamma, double epsilon_s);

/// Seed-deterministic synthetic instance: locations at demand-weighted cell
/// centers, user destinations cell-weighted with uniform in-cell offsets,
/// costs U[0, cost_upper], revenues from kl_task_values, edges by the
/// Euclidean range rule.
Instance generate_instance(const InstanceConfig& config, const GridWorld& world);

}  // namespace rebal
