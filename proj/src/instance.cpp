#include "rebal/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rebal {

GridWorld GridWorld::random(int rows, int cols, double cell_size,
                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(rows) * cols);
  for (double& v : w) v = rng.uniform01();
  return with_weights(rows, cols, cell_size, std::move(w));
}

GridWorld GridWorld::with_weights(int rows, int cols, double cell_size,
                                  std::vector<double> weights) {
  GridWorld world;
  world.rows = rows;
  world.cols = cols;
  world.cell_size = cell_size;
  world.demand_weights = std::move(weights);
  double sum = std::accumulate(world.demand_weights.begin(),
                               world.demand_weights.end(), 0.0);
  if (sum <= 0) throw std::invalid_argument("grid: demand weights sum to 0");
  for (double& v : world.demand_weights) v /= sum;
  world.validate();
  return world;
}

void GridWorld::validate() const {
  if (rows <= 0 || cols <= 0 || cell_size <= 0) {
    throw std::invalid_argument("grid: rows, cols, cell_size must be positive");
  }
  if (static_cast<int>(demand_weights.size()) != rows * cols) {
    throw std::invalid_argument("grid: expected one weight per cell");
  }
  double sum = 0;
  for (double v : demand_weights) {
    if (v < 0) throw std::invalid_argument("grid: negative demand weight");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("grid: demand weights not normalized");
  }
}

Point GridWorld::cell_center(int cell) const {
  int r = cell / cols;
  int c = cell % cols;
  return {(c + 0.5) * cell_size, (r + 0.5) * cell_size};
}

const UserSpec* Instance::find_user(UserId id) const {
  auto it = std::lower_bound(users.begin(), users.end(), id,
                             [](const UserSpec& u, UserId v) { return u.id < v; });
  return (it != users.end() && it->id == id) ? &*it : nullptr;
}

const TaskSpec* Instance::find_task(TaskId id) const {
  auto it = std::lower_bound(tasks.begin(), tasks.end(), id,
                             [](const TaskSpec& t, TaskId v) { return t.id < v; });
  return (it != tasks.end() && it->id == id) ? &*it : nullptr;
}

std::map<TaskId, Money> Instance::revenue_map() const {
  std::map<TaskId, Money> r;
  for (const TaskSpec& t : tasks) r[t.id] = t.revenue;
  return r;
}

Money Instance::max_task_revenue() const {
  Money best = 0;
  for (const TaskSpec& t : tasks) best = std::max(best, t.revenue);
  return best;
}

void Instance::validate() const {
  for (std::size_t i = 1; i < users.size(); ++i) {
    if (users[i - 1].id >= users[i].id) {
      throw std::invalid_argument("instance: user ids must be ascending");
    }
  }
  for (std::size_t i = 1; i < tasks.size(); ++i) {
    if (tasks[i - 1].id >= tasks[i].id) {
      throw std::invalid_argument("instance: task ids must be ascending");
    }
  }
  for (const TaskSpec& t : tasks) {
    if (t.revenue < 0) throw std::invalid_argument("instance: negative revenue");
  }
  for (const auto& [u, t] : edges) {
    if (!find_user(u) || !find_task(t)) {
      throw std::invalid_argument("instance: edge with unknown endpoint");
    }
  }
}

BidProfile BidProfile::truthful(const Instance& instance) {
  BidProfile p;
  for (const UserSpec& u : instance.users) p.bids[u.id] = u.private_cost;
  return p;
}

BidProfile BidProfile::with(UserId user, Money bid) const {
  BidProfile p = *this;
  p.bids[user] = bid;
  return p;
}

Money BidProfile::at(UserId user) const {
  auto it = bids.find(user);
  if (it == bids.end()) {
    throw std::invalid_argument("bid profile: no bid for user " +
                                std::to_string(user));
  }
  return it->second;
}

bool BidProfile::covers(const Instance& instance) const {
  return std::all_of(instance.users.begin(), instance.users.end(),
                     [&](const UserSpec& u) { return bids.count(u.id) > 0; });
}

Graph feasibility_graph(const Instance& instance) {
  std::vector<UserId> users;
  std::vector<TaskId> tasks;
  for (const UserSpec& u : instance.users) users.push_back(u.id);
  for (const TaskSpec& t : instance.tasks) tasks.push_back(t.id);
  return Graph::make(std::move(users), std::move(tasks), instance.edges);
}

Money matching_revenue(const Instance& instance, const Matching& m) {
  Money total = 0;
  for (const auto& [u, t] : m.pairs) {
    const TaskSpec* task = instance.find_task(t);
    if (!task) throw std::invalid_argument("matching references unknown task");
    total += task->revenue;
  }
  return total;
}

double kl_divergence(const std::vector<double>& d, const std::vector<double>& q) {
  if (d.size() != q.size()) {
    throw std::invalid_argument("kl: dimension mismatch");
  }
  double sum = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] == 0) continue;  // 0 ln 0 = 0
    if (q[k] <= 0) {
      throw std::invalid_argument("kl: zero support under q where d > 0");
    }
    sum += d[k] * std::log(d[k] / q[k]);
  }
  return sum;
}

std::vector<Money> kl_task_values(const std::vector<double>& demand,
                                  const std::vector<double>& base_supply,
                                  int location_index, int max_rank,
                                  double gamma, double epsilon_s) {
  if (demand.size() != base_supply.size()) {
    throw std::invalid_argument("kl_task_values: dimension mismatch");
  }
  if (location_index < 0 ||
      location_index >= static_cast<int>(demand.size())) {
    throw std::invalid_argument("kl_task_values: location index out of range");
  }
  if (gamma <= 0 || epsilon_s <= 0) {
    throw std::invalid_argument("kl_task_values: gamma and epsilon_s must be positive");
  }
  double dsum = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::fabs(dsum - 1.0) > 1e-9) {
    throw std::invalid_argument("kl_task_values: demand not normalized");
  }
  for (double s : base_supply) {
    if (s < 0) throw std::invalid_argument("kl_task_values: negative supply");
  }

  const std::size_t m = demand.size();
  auto smoothed = [&](int extra) {
    std::vector<double> q(m);
    double total = 0;
    for (std::size_t k = 0; k < m; ++k) {
      q[k] = base_supply[k] + epsilon_s +
             (static_cast<int>(k) == location_index ? extra : 0);
      total += q[k];
    }
    for (double& v : q) v /= total;
    return q;
  };

  std::vector<Money> values;
  values.reserve(static_cast<std::size_t>(max_rank));
  double prev_kl = kl_divergence(demand, smoothed(0));
  for (int x = 1; x <= max_rank; ++x) {
    double cur_kl = kl_divergence(demand, smoothed(x));
    values.push_back(std::max(0.0, gamma * (prev_kl - cur_kl)));
    prev_kl = cur_kl;
  }
  return values;
}

namespace {

/// Index drawn proportionally to `weights` (not necessarily normalized).
std::size_t weighted_draw(Rng& rng, const std::vector<double>& weights,
                          double total) {
  double target = rng.uniform01() * total;
  double acc = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    acc += weights[i];
    last = i;
    if (target < acc) return i;
  }
  return last;  // guard against accumulated rounding
}

}  // namespace

Instance generate_instance(const InstanceConfig& config, const GridWorld& world) {
  world.validate();
  if (config.n_users < 0 || config.n_locations < 0) {
    throw std::invalid_argument("generate_instance: negative counts");
  }
  if (config.range_h <= 0) {
    throw std::invalid_argument("generate_instance: range_h must be positive");
  }
  if (config.cost_upper <= 0) {
    throw std::invalid_argument("generate_instance: cost_upper must be positive");
  }
  if (!config.allow_cell_reuse && config.n_locations > world.cell_count()) {
    throw std::invalid_argument(
        "generate_instance: more locations than cells with cell reuse disabled");
  }

  // Independent draw streams so that growing one dimension does not shift
  // the draws of another (instances with more locations extend, rather than
  // reshuffle, instances with fewer).
  Rng loc_rng(derive_seed(config.seed, 0x10c));
  Rng user_rng(derive_seed(config.seed, 0x05e));
  Rng cost_rng(derive_seed(config.seed, 0xc05));

  Instance inst;
  inst.range_h = config.range_h;
  inst.budget = config.budget;

  // Locations: demand-weighted cells without replacement while any remain.
  std::vector<double> pool = world.demand_weights;
  double pool_total = 1.0;
  int cells_left = world.cell_count();
  std::vector<int> loc_cells;
  for (int l = 0; l < config.n_locations; ++l) {
    if (cells_left == 0) {
      pool = world.demand_weights;
      pool_total = 1.0;
      cells_left = world.cell_count();
    }
    std::size_t cell = weighted_draw(loc_rng, pool, pool_total);
    loc_cells.push_back(static_cast<int>(cell));
    pool_total -= pool[cell];
    pool[cell] = 0;
    --cells_left;
    inst.locations.push_back({l + 1, world.cell_center(static_cast<int>(cell))});
  }

  // Users: destination cell by demand weight, uniform offset inside the cell.
  for (int i = 0; i < config.n_users; ++i) {
    std::size_t cell = weighted_draw(user_rng, world.demand_weights, 1.0);
    int r = static_cast<int>(cell) / world.cols;
    int c = static_cast<int>(cell) % world.cols;
    Point dest{(c + user_rng.uniform01()) * world.cell_size,
               (r + user_rng.uniform01()) * world.cell_size};
    Money cost = cost_rng.uniform(0.0, config.cost_upper);
    inst.users.push_back({i + 1, dest, cost});
  }

  // Demand over locations: each location inherits its cell's weight,
  // renormalized over the chosen locations.
  std::vector<double> loc_demand(loc_cells.size(), 0.0);
  double demand_total = 0;
  for (std::size_t l = 0; l < loc_cells.size(); ++l) {
    loc_demand[l] = world.demand_weights[loc_cells[l]];
    demand_total += loc_demand[l];
  }
  if (demand_total > 0) {
    for (double& v : loc_demand) v /= demand_total;
  } else if (!loc_demand.empty()) {
    std::fill(loc_demand.begin(), loc_demand.end(), 1.0 / loc_demand.size());
  }
  std::vector<double> supply(loc_cells.size(), config.base_supply);

  // Tasks: ranks 1..n per location, ids sequential by (location, rank).
  TaskId next_task = 1;
  for (std::size_t l = 0; l < loc_cells.size(); ++l) {
    std::vector<Money> values =
        loc_demand.empty()
            ? std::vector<Money>{}
            : kl_task_values(loc_demand, supply, static_cast<int>(l),
                             config.n_users, config.gamma, config.epsilon_s);
    for (int x = 1; x <= config.n_users; ++x) {
      Money r = values[static_cast<std::size_t>(x - 1)];
      if (config.drop_zero_revenue_tasks && r <= 0) {
        ++next_task;  // keep ids stable whether or not zeros are kept
        continue;
      }
      inst.tasks.push_back({next_task, inst.locations[l].id, x, r});
      ++next_task;
    }
  }

  // Feasibility edges: range rule on the user's destination, identical for
  // every rank of a location.
  std::map<LocationId, std::vector<TaskId>> tasks_at;
  for (const TaskSpec& t : inst.tasks) tasks_at[t.location].push_back(t.id);
  for (const UserSpec& u : inst.users) {
    for (const LocationSpec& loc : inst.locations) {
      if (euclidean(u.destination, loc.position) > config.range_h) continue;
      for (TaskId t : tasks_at[loc.id]) inst.edges.emplace_back(u.id, t);
    }
  }
  std::sort(inst.edges.begin(), inst.edges.end());
  inst.validate();
  return inst;
}

}  // namespace rebal
