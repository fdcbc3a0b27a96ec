#include "rebal/mechanism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rebal {

bool AuctionOutcome::matched(UserId user) const {
  return payments.count(user) > 0;
}

Money AuctionOutcome::payment_or_zero(UserId user) const {
  auto it = payments.find(user);
  return it != payments.end() ? it->second : 0.0;
}

AuctionOutcome finalize_outcome(const Instance& instance,
                                std::vector<std::pair<UserId, TaskId>> matches,
                                std::map<UserId, Money> payments) {
  AuctionOutcome out;
  std::sort(matches.begin(), matches.end());
  out.matches = std::move(matches);
  out.payments = std::move(payments);
  for (const auto& [u, t] : out.matches) {
    const TaskSpec* task = instance.find_task(t);
    if (!task) throw std::invalid_argument("outcome references unknown task");
    out.revenue += task->revenue;
  }
  for (const auto& [u, p] : out.payments) out.total_payment += p;
  out.profit = out.revenue - out.total_payment;
  return out;
}

std::vector<OrderedElement> merged_order(
    const std::vector<std::pair<TaskId, Money>>& tasks,
    const std::vector<std::pair<UserId, Money>>& users, std::uint64_t seed) {
  Rng rng(seed);
  struct Entry {
    OrderedElement elem;
    int kind;  // tasks sort before users at equal value
    std::size_t tie;
  };
  std::vector<Entry> entries;
  entries.reserve(tasks.size() + users.size());

  auto add_kind = [&](auto const& items, ElementKind kind) {
    std::vector<std::size_t> tie_rank(items.size());
    std::iota(tie_rank.begin(), tie_rank.end(), std::size_t{0});
    rng.shuffle(tie_rank);
    for (std::size_t i = 0; i < items.size(); ++i) {
      entries.push_back({{kind, items[i].first, items[i].second},
                         kind == ElementKind::Task ? 0 : 1,
                         tie_rank[i]});
    }
  };
  add_kind(tasks, ElementKind::Task);
  add_kind(users, ElementKind::User);

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.elem.value != b.elem.value) return a.elem.value > b.elem.value;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.tie < b.tie;
  });

  std::vector<OrderedElement> order;
  order.reserve(entries.size());
  for (const Entry& e : entries) order.push_back(e.elem);
  return order;
}

Graph prune_edges(const Graph& g, const BidProfile& bids,
                  const std::map<TaskId, Money>& revenues) {
  std::vector<std::pair<UserId, TaskId>> kept;
  for (const auto& [u, t] : g.edges) {
    Money bid = bids.at(u);  // throws if missing
    auto rit = revenues.find(t);
    if (rit == revenues.end()) {
      throw std::invalid_argument("prune_edges: no revenue for task " +
                                  std::to_string(t));
    }
    if (money_leq(bid, rit->second)) kept.emplace_back(u, t);
  }
  return Graph::make(g.user_ids, g.task_ids, std::move(kept));
}

namespace {

/// Dense-index working state of one sweep. All invariants are local to a
/// single run_trupretar call.
struct Sweep {
  const Instance& inst;
  std::vector<UserId> user_ids;
  std::vector<TaskId> task_ids;
  std::vector<Money> bid;
  std::vector<Money> revenue;
  std::vector<std::vector<int>> pruned_adj;  // task -> users, ascending

  std::vector<char> in_work_user, in_work_task, allocated_user;
  std::vector<std::vector<int>> work_task_adj;  // users of a work task, ascending
  std::vector<std::vector<int>> work_user_adj;  // work tasks of a user, ascending
  std::vector<int> match_of_user, match_of_task;  // -1 = unmatched
  std::vector<char> visited;
  int work_task_count = 0;

  Money price = -1;  // global price; set by the first admission
  Money budget_left = 0;
  bool gate_fired = false;
  std::vector<std::tuple<UserId, TaskId, Money>> allocations;
  std::vector<SweepEvent>* events = nullptr;

  explicit Sweep(const Instance& instance, const BidProfile& bids,
                 Money budget, std::vector<SweepEvent>* ev)
      : inst(instance), budget_left(budget), events(ev) {
    for (const UserSpec& u : inst.users) {
      user_ids.push_back(u.id);
      bid.push_back(bids.at(u.id));
      if (bid.back() < 0) {
        throw std::invalid_argument("bids must be nonnegative");
      }
    }
    for (const TaskSpec& t : inst.tasks) {
      task_ids.push_back(t.id);
      revenue.push_back(t.revenue);
    }
    int nu = static_cast<int>(user_ids.size());
    int nt = static_cast<int>(task_ids.size());
    pruned_adj.assign(nt, {});
    for (const auto& [u, t] : inst.edges) {
      int ui = user_index(u);
      int ti = task_index(t);
      if (money_leq(bid[ui], revenue[ti])) pruned_adj[ti].push_back(ui);
    }
    in_work_user.assign(nu, 0);
    in_work_task.assign(nt, 0);
    allocated_user.assign(nu, 0);
    work_task_adj.assign(nt, {});
    work_user_adj.assign(nu, {});
    match_of_user.assign(nu, -1);
    match_of_task.assign(nt, -1);
    visited.assign(nu, 0);
  }

  int user_index(UserId id) const {
    return static_cast<int>(
        std::lower_bound(user_ids.begin(), user_ids.end(), id) -
        user_ids.begin());
  }
  int task_index(TaskId id) const {
    return static_cast<int>(
        std::lower_bound(task_ids.begin(), task_ids.end(), id) -
        task_ids.begin());
  }

  int matched_count() const {
    return static_cast<int>(
        std::count_if(match_of_task.begin(), match_of_task.end(),
                      [](int u) { return u >= 0; }));
  }

  void emit(SweepEvent ev) {
    if (!events) return;
    ev.price_after = price;
    ev.budget_left = budget_left;
    ev.work_tasks = work_task_count;
    ev.work_matched = matched_count();
    events->push_back(ev);
  }

  bool augment(int task) {
    return augment_task(task, work_task_adj, in_work_user, match_of_user,
                        match_of_task, visited);
  }

  static void sorted_insert(std::vector<int>& v, int x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  }
  static void sorted_erase(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
  }

  /// Tasks reachable from some free in-work user along alternating paths.
  /// A matched user is critical exactly when her task is not reachable.
  std::vector<char> reachable_tasks() const {
    std::vector<char> task_reached(task_ids.size(), 0);
    std::vector<char> user_seen(user_ids.size(), 0);
    std::vector<int> queue;
    for (int u = 0; u < static_cast<int>(user_ids.size()); ++u) {
      if (in_work_user[u] && match_of_user[u] < 0) {
        user_seen[u] = 1;
        queue.push_back(u);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int t : work_user_adj[u]) {
        if (task_reached[t]) continue;
        task_reached[t] = 1;
        int u2 = match_of_task[t];
        if (u2 >= 0 && !user_seen[u2]) {
          user_seen[u2] = 1;
          queue.push_back(u2);
        }
      }
    }
    return task_reached;
  }

  void drop_user_node(int u) {
    for (int t : work_user_adj[u]) sorted_erase(work_task_adj[t], u);
    work_user_adj[u].clear();
    in_work_user[u] = 0;
  }

  void drop_task_node(int t) {
    for (int u : work_task_adj[t]) sorted_erase(work_user_adj[u], t);
    work_task_adj[t].clear();
    in_work_task[t] = 0;
    --work_task_count;
  }

  /// Allocates critical user `u` over her first workable edge in ascending
  /// task order. The current matched task always works, so this cannot fail.
  void allocate(int u) {
    int held = match_of_user[u];
    std::vector<int> candidates = work_user_adj[u];
    for (int j : candidates) {
      bool ok = false;
      int displaced = -1;
      if (j == held) {
        ok = true;
        match_of_user[u] = -1;
        match_of_task[j] = -1;
      } else {
        displaced = match_of_task[j];
        match_of_user[u] = -1;
        match_of_task[held] = -1;
        match_of_user[displaced] = -1;
        match_of_task[j] = -1;
        in_work_user[u] = 0;  // the repair path must avoid her
        ok = augment(held);
        in_work_user[u] = 1;
        if (!ok) {
          match_of_user[u] = held;
          match_of_task[held] = u;
          match_of_user[displaced] = j;
          match_of_task[j] = displaced;
        }
      }
      if (ok) {
        allocations.emplace_back(user_ids[u], task_ids[j], price);
        allocated_user[u] = 1;
        budget_left -= price;
        drop_user_node(u);
        drop_task_node(j);
        emit({SweepEvent::Kind::Allocate, user_ids[u], task_ids[j], price});
        return;
      }
    }
    throw std::logic_error("critical user has no workable edge");
  }

  /// Runs the criticality check to a fixed point: scan users in ascending id
  /// order, allocate each critical one, and repeat until a full pass changes
  /// nothing.
  void allocation_scan() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<char> reached = reachable_tasks();
      for (int u = 0; u < static_cast<int>(user_ids.size()); ++u) {
        if (!in_work_user[u]) continue;
        int t = match_of_user[u];
        if (t < 0 || reached[t]) continue;
        allocate(u);
        changed = true;
        reached = reachable_tasks();
      }
    }
  }

  void consider_task(int j) {
    bool budget_ok =
        money_leq((work_task_count + 1) * revenue[j], budget_left);
    if (!budget_ok) gate_fired = true;

    std::vector<int> incoming;
    for (int u : pruned_adj[j]) {
      if (!allocated_user[u]) incoming.push_back(u);
    }

    if (!budget_ok) {
      SweepEvent ev{SweepEvent::Kind::RejectTask, task_ids[j]};
      ev.value = revenue[j];
      ev.budget_reject = true;
      if (events) {
        // Report whether the matching test would also have failed; probe on
        // scratch state so the rejection leaves no trace.
        auto saved_user = match_of_user;
        auto saved_task = match_of_task;
        ev.matching_reject = !probe_admission(j, incoming);
        match_of_user = std::move(saved_user);
        match_of_task = std::move(saved_task);
        restore_tentative(j);
      }
      emit(ev);
      return;
    }

    if (probe_admission(j, incoming)) {
      // Commit: the successful augmentation already updated the matching.
      in_work_task[j] = 1;
      ++work_task_count;
      for (int u : incoming) sorted_insert(work_user_adj[u], j);
      price = revenue[j];
      SweepEvent ev{SweepEvent::Kind::AdmitTask, task_ids[j]};
      ev.value = revenue[j];
      emit(ev);
      allocation_scan();
    } else {
      restore_tentative(j);
      SweepEvent ev{SweepEvent::Kind::RejectTask, task_ids[j]};
      ev.value = revenue[j];
      ev.matching_reject = true;
      emit(ev);
    }
  }

  std::vector<int> probe_joined;  // users the pending admission pulled in

  /// Tentatively installs task j's edge set and tries to augment from j.
  /// On success the work adjacency for j and the joining users' alive flags
  /// are left in place (commit decides the rest); on failure the caller must
  /// call restore_tentative. Users already in the work graph stay members
  /// even when an earlier allocation consumed their last edge, so membership
  /// is tracked here rather than inferred from adjacency.
  bool probe_admission(int j, const std::vector<int>& incoming) {
    probe_joined.clear();
    work_task_adj[j] = incoming;
    for (int u : incoming) {
      if (!in_work_user[u]) {
        in_work_user[u] = 1;
        probe_joined.push_back(u);
      }
    }
    return augment(j);
  }

  void restore_tentative(int j) {
    work_task_adj[j].clear();
    for (int u : probe_joined) in_work_user[u] = 0;
    probe_joined.clear();
  }

  void consider_user(int u) {
    if (!in_work_user[u]) {
      emit({SweepEvent::Kind::SkipUser, user_ids[u], -1, bid[u]});
      return;
    }
    int t = match_of_user[u];
    bool removable = true;
    if (t >= 0) {
      match_of_user[u] = -1;
      match_of_task[t] = -1;
      in_work_user[u] = 0;
      removable = augment(t);
      in_work_user[u] = 1;
      if (!removable) {
        match_of_user[u] = t;
        match_of_task[t] = u;
      }
    }
    if (removable) {
      drop_user_node(u);
      price = bid[u];
      emit({SweepEvent::Kind::RemoveUser, user_ids[u], -1, bid[u]});
      allocation_scan();
    } else {
      // Unreachable when the allocation scan ran to a fixed point; kept to
      // match the sweep rule that a critical user is never deleted.
      emit({SweepEvent::Kind::SkipUser, user_ids[u], -1, bid[u]});
    }
  }
};

}  // namespace

AuctionOutcome run_trupretar(const Instance& instance, const BidProfile& bids,
                             Money budget, std::uint64_t seed,
                             std::vector<SweepEvent>* events) {
  if (budget < 0) {
    throw std::invalid_argument("run_trupretar: budget must be nonnegative");
  }
  if (!bids.covers(instance)) {
    throw std::invalid_argument("run_trupretar: bids must cover all users");
  }

  Sweep sweep(instance, bids, budget, events);

  std::vector<std::pair<TaskId, Money>> task_values;
  std::vector<std::pair<UserId, Money>> user_values;
  for (const TaskSpec& t : instance.tasks) task_values.emplace_back(t.id, t.revenue);
  for (const UserSpec& u : instance.users) {
    user_values.emplace_back(u.id, bids.at(u.id));
  }

  for (const OrderedElement& e : merged_order(task_values, user_values, seed)) {
    if (e.kind == ElementKind::Task) {
      sweep.consider_task(sweep.task_index(e.id));
    } else {
      sweep.consider_user(sweep.user_index(e.id));
    }
  }

  std::vector<std::pair<UserId, TaskId>> matches;
  std::map<UserId, Money> payments;
  for (const auto& [u, t, p] : sweep.allocations) {
    matches.emplace_back(u, t);
    payments[u] = p;
  }
  AuctionOutcome out = finalize_outcome(instance, std::move(matches),
                                        std::move(payments));
  out.budget_gate_fired = sweep.gate_fired;
  return out;
}

Money budget_guideline(Money revenue_sufficient, double beta) {
  if (revenue_sufficient < 0) {
    throw std::invalid_argument("budget_guideline: revenue must be nonnegative");
  }
  if (!(beta > 0) || beta > 2) {
    throw std::invalid_argument("budget_guideline: beta must be in (0, 2]");
  }
  return beta * revenue_sufficient;
}

}  // namespace rebal
