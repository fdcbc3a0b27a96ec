#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rebal/bipartite.hpp"
#include "rebal/instance.hpp"

namespace rebal {

/// Result of running an auction mechanism on one instance.
struct AuctionOutcome {
  std::vector<std::pair<UserId, TaskId>> matches;  // sorted by user id
  std::map<UserId, Money> payments;                // one entry per match
  Money revenue = 0;
  Money total_payment = 0;
  Money profit = 0;
  /// Set by run_trupretar when the task admission inequality
  /// (|T'|+1) * r_j <= B' failed for at least one considered task.
  bool budget_gate_fired = false;

  bool matched(UserId user) const;
  Money payment_or_zero(UserId user) const;
};

/// Fills revenue / total_payment / profit from matches + payments.
AuctionOutcome finalize_outcome(const Instance& instance,
                                std::vector<std::pair<UserId, TaskId>> matches,
                                std::map<UserId, Money> payments);

enum class ElementKind { Task, User };

struct OrderedElement {
  ElementKind kind;
  int id;
  Money value;  // task revenue or user bid

  bool operator==(const OrderedElement&) const = default;
};

/// Tasks and users merged into one list, sorted by value descending. A task
/// precedes a user of equal value; equal values of the same kind fall back to
/// a seeded shuffle, so ties are random but reproducible.
std::vector<OrderedElement> merged_order(
    const std::vector<std::pair<TaskId, Money>>& tasks,
    const std::vector<std::pair<UserId, Money>>& users, std::uint64_t seed);

/// Copy of the graph keeping exactly the edges with bid(i) <= revenue(j)
/// (money tolerance applies). Nodes are preserved. Throws
/// std::invalid_argument when a bid or revenue is missing.
Graph prune_edges(const Graph& g, const BidProfile& bids,
                  const std::map<TaskId, Money>& revenues);

/// One step of the sweep, for demo rendering and invariant tests.
struct SweepEvent {
  enum class Kind {
    AdmitTask,    // id = task, value = revenue
    RejectTask,   // id = task; reject flags say why
    RemoveUser,   // id = user, value = bid
    SkipUser,     // id = user not present in the work graph
    Allocate,     // id = user, partner = task, value = payment
  };
  Kind kind;
  int id = -1;
  int partner = -1;
  Money value = 0;
  bool budget_reject = false;    // (|T'|+1) * r_j exceeded B'
  bool matching_reject = false;  // admitting the task broke right-perfection
  Money price_after = -1;        // global price after the event; -1 = unset
  Money budget_left = 0;
  int work_tasks = 0;    // |T'| after the event
  int work_matched = 0;  // size of the internal matching after the event
};

/// The budget-feasible reverse auction with predicted task revenue.
/// Sweeps tasks and users in merged value order over a working subgraph that
/// always keeps a right-perfect matching: a task is admitted (with edges to
/// every unallocated connected user) when the graph stays right-perfect and
/// (|T'|+1) * r_j fits the remaining budget; a user is deleted when the graph
/// stays right-perfect without her. Every admission or deletion lowers the
/// global price to the element's value, and any user who becomes critical is
/// immediately allocated one of her edges at that price.
///
/// Guarantees, for any bids and budget: total payment <= budget, and
/// bid <= payment <= matched task revenue for every match. Payments equal
/// each winner's threshold bid. Deterministic given (instance, bids, budget,
/// seed); the seed only breaks ordering ties.
AuctionOutcome run_trupretar(const Instance& instance, const BidProfile& bids,
                             Money budget, std::uint64_t seed,
                             std::vector<SweepEvent>* events = nullptr);

/// Budget suggestion B = beta * revenue_sufficient for beta in (0, 2].
/// Running with this budget keeps at least beta/2 of the revenue an optimal
/// allocation could reach. Throws std::invalid_argument for beta outside
/// (0, 2] or negative revenue.
Money budget_guideline(Money revenue_sufficient, double beta);

}  // namespace rebal
