#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pnet/core.hpp"
#include "pnet/structure.hpp"

namespace pnet {

struct ExplorationLimits {
  long max_nodes = 100000;
  std::optional<Int> max_token_sum;  // successors above this sum are cut off
};

struct RgArc {
  int from;
  Tid label;
  int to;
};

/// Explicit reachability graph. Nodes are markings in BFS discovery order;
/// node 0 is the root. Complete graphs are closed under firing.
struct ReachabilityGraph {
  Marking root;
  std::vector<Marking> nodes;
  std::vector<RgArc> arcs;
  bool complete = true;
  long node_limit_hit = 0;  // informational

  std::optional<int> find(const Marking& m) const;
  std::map<Marking, int> index;
};

struct TruncatedGraphError : PnetError {
  using PnetError::PnetError;
};

struct NotChoiceFreeError : PnetError {
  using PnetError::PnetError;
};

struct LivenessSearchExhaustedError : PnetError {
  using PnetError::PnetError;
};

struct NotApplicableError : PnetError {
  using PnetError::PnetError;
};

ReachabilityGraph build_rg(const System& s, const ExplorationLimits& limits = {});

bool is_deadlock(const System& s);
bool is_deadlock(const Net& net, const Marking& m);

/// Liveness via SCC condensation: live iff every bottom SCC fires every
/// transition somewhere inside it. Requires a complete graph.
bool oracle_live(const ReachabilityGraph& rg, const Net& net);

/// Reversibility = strong connectivity of the complete reachability graph.
bool oracle_reversible(const ReachabilityGraph& rg);

bool oracle_deadlock_free(const ReachabilityGraph& rg);

/// A home state exists iff the condensation has exactly one bottom SCC.
bool oracle_has_home_state(const ReachabilityGraph& rg);

/// Searches for a marking M reachable in s and a sequence sigma feasible at
/// M with P(sigma) >= 1 and I.P(sigma) >= 0 (equivalently, end marking >=
/// M). Returns (M, sigma) or nullopt within the given limits.
std::optional<std::pair<Marking, FiringSequence>> dickson_witness(
    const System& s, const ExplorationLimits& limits = {}, int depth_factor = 4);

enum class LivenessStatus { Live, NonLive, Unknown };

/// Liveness of choice-free systems through the Dickson-style witness, with
/// the complete-graph oracle as fallback. Throws NotChoiceFreeError.
LivenessStatus cf_liveness(const System& s, const ExplorationLimits& limits = {});

/// Builds a firing sequence with Parikh vector exactly y, given a feasible
/// sigma_enable with P(sigma_enable) >= y (WMG<= realization property).
FiringSequence realize_tvector(const System& s, const ParikhVector& y,
                               const FiringSequence& sigma_enable);

struct ConfluenceWitness {
  FiringSequence sigma;  // feasible from M0, P(sigma) >= Y
  Marking m_prime;       // reached both by sigma from M0 and sigma-Y from M
};

/// Constructive confluence for live H1S-WMG<= systems: for M = M0 + I.Y >= 0
/// builds sigma with P(sigma) >= Y such that sigma-Y from M meets sigma's
/// end marking. Throws NotApplicableError on class mismatch and
/// LivenessSearchExhaustedError when the inner enabling search hits the cap.
ConfluenceWitness confluence_witness(const System& s, const ParikhVector& y,
                                     long search_cap = 100000);

/// Keller check: tau(sigma-tau) and sigma(tau-sigma) both feasible and lead
/// to the same marking. Inputs must be feasible from M0.
bool check_keller(const System& s, const FiringSequence& tau, const FiringSequence& sigma);

/// Integer feasibility of M = M0 + I.Y; returns a (componentwise small)
/// witness Y when M is potentially reachable.
std::optional<ParikhVector> pr_member(const System& s, const Marking& m,
                                      long node_budget = 200000);

struct DirectednessResult {
  enum class Status { Holds, CounterExample, Unknown } status;
  std::optional<Marking> counterexample;
};

/// Window-bounded check of initial directedness of PRG(S): enumerates
/// potentially reachable markings with bounded Parikh sum and tests
/// intersection of bounded reachability sets. Holds is reported only when
/// the enumeration saturated inside the window.
DirectednessResult initially_directed(const System& s, Int pr_sum_limit = 8,
                                      const ExplorationLimits& limits = {});

/// Marking-division lift: M0 = k*M0', sigma feasible in (N,M0') with D
/// deadlocked at its end; verifies sigma^k is feasible in s and D is
/// deadlocked at its end marking.
bool divisibility_deadlock_lift(const System& s, const Int& k, const FiringSequence& sigma,
                                const Siphon& d);

/// DOT rendering; node label = marking vector, arc label = transition id.
std::string to_dot(const ReachabilityGraph& rg, const Net& net);

}  // namespace pnet
