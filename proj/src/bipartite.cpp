#include "rebal/bipartite.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rebal {

namespace {

bool sorted_contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

int index_of(const std::vector<int>& v, int x) {
  return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
}

}  // namespace

Graph Graph::make(std::vector<UserId> users, std::vector<TaskId> tasks,
                  std::vector<std::pair<UserId, TaskId>> edges) {
  std::sort(users.begin(), users.end());
  std::sort(tasks.begin(), tasks.end());
  if (std::adjacent_find(users.begin(), users.end()) != users.end()) {
    throw std::invalid_argument("graph: duplicate user id");
  }
  if (std::adjacent_find(tasks.begin(), tasks.end()) != tasks.end()) {
    throw std::invalid_argument("graph: duplicate task id");
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.second, a.first) < std::make_pair(b.second, b.first);
  });
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("graph: duplicate edge");
  }
  for (const auto& [u, t] : edges) {
    if (!sorted_contains(users, u) || !sorted_contains(tasks, t)) {
      throw std::invalid_argument("graph: edge (" + std::to_string(u) + "," +
                                  std::to_string(t) + ") has unknown endpoint");
    }
  }
  Graph g;
  g.user_ids = std::move(users);
  g.task_ids = std::move(tasks);
  g.edges = std::move(edges);
  return g;
}

bool Graph::has_user(UserId id) const { return sorted_contains(user_ids, id); }
bool Graph::has_task(TaskId id) const { return sorted_contains(task_ids, id); }

std::optional<TaskId> Matching::task_of(UserId user) const {
  for (const auto& [u, t] : pairs) {
    if (u == user) return t;
  }
  return std::nullopt;
}

std::optional<UserId> Matching::user_of(TaskId task) const {
  for (const auto& [u, t] : pairs) {
    if (t == task) return u;
  }
  return std::nullopt;
}

bool augment_task(int task, const std::vector<std::vector<int>>& task_adj,
                  const std::vector<char>& user_alive,
                  std::vector<int>& match_of_user,
                  std::vector<int>& match_of_task,
                  std::vector<char>& visited) {
  std::fill(visited.begin(), visited.end(), 0);
  // Recursive Kuhn step; flips matched edges only along a successful path.
  auto dfs = [&](auto&& self, int t) -> bool {
    for (int u : task_adj[t]) {
      if (!user_alive[u] || visited[u]) continue;
      visited[u] = 1;
      int held = match_of_user[u];
      if (held < 0 || self(self, held)) {
        match_of_user[u] = t;
        match_of_task[t] = u;
        return true;
      }
    }
    return false;
  };
  return dfs(dfs, task);
}

namespace {

struct DenseGraph {
  std::vector<std::vector<int>> task_adj;  // task index -> user indices, ascending
  int n_users = 0;
  int n_tasks = 0;
};

DenseGraph densify(const Graph& g) {
  DenseGraph d;
  d.n_users = static_cast<int>(g.user_ids.size());
  d.n_tasks = static_cast<int>(g.task_ids.size());
  d.task_adj.assign(d.n_tasks, {});
  for (const auto& [u, t] : g.edges) {
    d.task_adj[index_of(g.task_ids, t)].push_back(index_of(g.user_ids, u));
  }
  return d;  // edge sort order already gives ascending users per task
}

std::vector<int> match_tasks(const DenseGraph& d) {
  std::vector<int> match_of_user(d.n_users, -1);
  std::vector<int> match_of_task(d.n_tasks, -1);
  std::vector<char> alive(d.n_users, 1);
  std::vector<char> visited(d.n_users, 0);
  for (int t = 0; t < d.n_tasks; ++t) {
    augment_task(t, d.task_adj, alive, match_of_user, match_of_task, visited);
  }
  return match_of_task;
}

}  // namespace

Matching max_matching(const Graph& g) {
  DenseGraph d = densify(g);
  std::vector<int> match_of_task = match_tasks(d);
  Matching m;
  for (int t = 0; t < d.n_tasks; ++t) {
    if (match_of_task[t] >= 0) {
      m.pairs.emplace_back(g.user_ids[match_of_task[t]], g.task_ids[t]);
    }
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

bool has_right_perfect_matching(const Graph& g) {
  DenseGraph d = densify(g);
  std::vector<int> match_of_task = match_tasks(d);
  return std::count_if(match_of_task.begin(), match_of_task.end(),
                       [](int u) { return u >= 0; }) == d.n_tasks;
}

bool is_user_critical(const Graph& g, UserId user) {
  if (!g.has_user(user)) {
    throw std::invalid_argument("is_user_critical: unknown user " +
                                std::to_string(user));
  }
  if (!has_right_perfect_matching(g)) {
    throw std::invalid_argument(
        "is_user_critical: graph has no right-perfect matching");
  }
  DenseGraph d = densify(g);
  int removed = index_of(g.user_ids, user);
  std::vector<int> match_of_user(d.n_users, -1);
  std::vector<int> match_of_task(d.n_tasks, -1);
  std::vector<char> alive(d.n_users, 1);
  std::vector<char> visited(d.n_users, 0);
  alive[removed] = 0;
  int covered = 0;
  for (int t = 0; t < d.n_tasks; ++t) {
    if (augment_task(t, d.task_adj, alive, match_of_user, match_of_task,
                     visited)) {
      ++covered;
    }
  }
  return covered != d.n_tasks;
}

}  // namespace rebal
