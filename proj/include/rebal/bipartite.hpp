#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rebal/types.hpp"

namespace rebal {

/// Bipartite feasibility graph: users on the left, tasks on the right.
/// Ids are arbitrary ints; node lists are kept ascending and edges sorted by
/// (task, user), which is the traversal order all matching routines use.
struct Graph {
  std::vector<UserId> user_ids;
  std::vector<TaskId> task_ids;
  std::vector<std::pair<UserId, TaskId>> edges;

  /// Canonicalizes and validates: throws std::invalid_argument on duplicate
  /// ids, duplicate edges, or edges whose endpoints are not listed.
  static Graph make(std::vector<UserId> users, std::vector<TaskId> tasks,
                    std::vector<std::pair<UserId, TaskId>> edges);

  bool has_user(UserId id) const;
  bool has_task(TaskId id) const;
};

/// A matching: each user and each task appears at most once.
struct Matching {
  std::vector<std::pair<UserId, TaskId>> pairs;  // sorted by user id

  std::size_t size() const { return pairs.size(); }
  std::optional<TaskId> task_of(UserId user) const;
  std::optional<UserId> user_of(TaskId task) const;
};

/// Maximum-cardinality matching via one augmenting-path search per task.
/// Deterministic: tasks are processed in ascending id order and adjacency is
/// scanned in ascending user order, so repeated runs give identical pairs.
Matching max_matching(const Graph& g);

/// True iff every task can be matched (matching of size |T|). Vacuously true
/// when the graph has no tasks.
bool has_right_perfect_matching(const Graph& g);

/// True iff deleting `user` and its edges destroys the right-perfect
/// matching. The graph must have one and must contain the user; throws
/// std::invalid_argument otherwise.
bool is_user_critical(const Graph& g, UserId user);

/// One augmenting-path attempt for `task` over dense-index adjacency.
/// `task_adj[t]` lists candidate user indices in the order they should be
/// tried; users with user_alive[u] == 0 are skipped. On success updates both
/// match arrays (-1 means unmatched) and returns true; on failure leaves them
/// untouched. `visited` is caller-provided scratch of size n_users, reset
/// here. Matched partners of live users are assumed live.
bool augment_task(int task, const std::vector<std::vector<int>>& task_adj,
                  const std::vector<char>& user_alive,
                  std::vector<int>& match_of_user,
                  std::vector<int>& match_of_task,
                  std::vector<char>& visited);

}  // namespace rebal
