#include "pnet/behavior.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "pnet/lp.hpp"

namespace pnet {

std::optional<int> ReachabilityGraph::find(const Marking& m) const {
  auto it = index.find(m);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ReachabilityGraph build_rg(const System& s, const ExplorationLimits& limits) {
  if (limits.max_nodes < 1) throw PnetError("build_rg: max_nodes must be >= 1");
  ReachabilityGraph rg;
  rg.root = s.initial;
  rg.nodes.push_back(s.initial);
  rg.index[s.initial] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    Marking m = rg.nodes[v];
    for (Tid t = 0; t < s.net.transition_count(); ++t) {
      if (!enabled(s.net, m, t)) continue;
      Marking next = fire(s.net, m, t);
      if (limits.max_token_sum && sum(next) > *limits.max_token_sum) {
        rg.complete = false;
        continue;
      }
      auto it = rg.index.find(next);
      int w;
      if (it == rg.index.end()) {
        if (static_cast<long>(rg.nodes.size()) >= limits.max_nodes) {
          rg.complete = false;
          rg.node_limit_hit++;
          continue;
        }
        w = static_cast<int>(rg.nodes.size());
        rg.nodes.push_back(next);
        rg.index[next] = w;
        queue.push_back(w);
      } else {
        w = it->second;
      }
      rg.arcs.push_back({v, t, w});
    }
  }
  return rg;
}

bool is_deadlock(const Net& net, const Marking& m) {
  for (Tid t = 0; t < net.transition_count(); ++t)
    if (enabled(net, m, t)) return false;
  return true;
}

bool is_deadlock(const System& s) { return is_deadlock(s.net, s.initial); }

namespace {

void require_complete(const ReachabilityGraph& rg) {
  if (!rg.complete)
    throw TruncatedGraphError("oracle requires a complete reachability graph");
}

// Iterative Tarjan SCC over the graph arcs; returns component id per node,
// components numbered in reverse topological order.
std::vector<int> scc_ids(const ReachabilityGraph& rg, int& count) {
  int n = static_cast<int>(rg.nodes.size());
  std::vector<std::vector<std::pair<Tid, int>>> adj(n);
  for (const auto& a : rg.arcs) adj[a.from].push_back({a.label, a.to});
  std::vector<int> ids(n, -1), low(n, 0), num(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int index = 0;
  count = 0;
  // Explicit stack DFS.
  struct Frame {
    int v;
    std::size_t next_child = 0;
  };
  for (int root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    std::vector<Frame> frames{{root}};
    num[root] = low[root] = index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_child < adj[f.v].size()) {
        int w = adj[f.v][f.next_child++].second;
        if (num[w] == -1) {
          num[w] = low[w] = index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        if (low[f.v] == num[f.v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            ids[w] = count;
            if (w == f.v) break;
          }
          ++count;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return ids;
}

}  // namespace

bool oracle_live(const ReachabilityGraph& rg, const Net& net) {
  require_complete(rg);
  int count = 0;
  std::vector<int> ids = scc_ids(rg, count);
  std::vector<bool> bottom(count, true);
  for (const auto& a : rg.arcs)
    if (ids[a.from] != ids[a.to]) bottom[ids[a.from]] = false;
  // Every transition must label an arc inside every bottom SCC.
  std::vector<std::vector<bool>> fires(count, std::vector<bool>(net.transition_count(), false));
  for (const auto& a : rg.arcs)
    if (ids[a.from] == ids[a.to]) fires[ids[a.from]][a.label] = true;
  // Arcs leaving a node of a bottom SCC stay inside it, so the check above
  // covers exactly the firings available from the component.
  for (int c = 0; c < count; ++c) {
    if (!bottom[c]) continue;
    for (Tid t = 0; t < net.transition_count(); ++t)
      if (!fires[c][t]) return false;
  }
  return true;
}

bool oracle_reversible(const ReachabilityGraph& rg) {
  require_complete(rg);
  int count = 0;
  scc_ids(rg, count);
  return count == 1;
}

bool oracle_deadlock_free(const ReachabilityGraph& rg) {
  require_complete(rg);
  std::vector<bool> has_out(rg.nodes.size(), false);
  for (const auto& a : rg.arcs) has_out[a.from] = true;
  for (bool b : has_out)
    if (!b) return false;
  return !rg.nodes.empty();
}

bool oracle_has_home_state(const ReachabilityGraph& rg) {
  require_complete(rg);
  int count = 0;
  std::vector<int> ids = scc_ids(rg, count);
  std::vector<bool> bottom(count, true);
  for (const auto& a : rg.arcs)
    if (ids[a.from] != ids[a.to]) bottom[ids[a.from]] = false;
  int bottoms = 0;
  for (int c = 0; c < count; ++c) bottoms += bottom[c] ? 1 : 0;
  // Every node reaches some bottom SCC; with a single one, its markings are
  // reachable from everywhere.
  return bottoms == 1;
}

std::optional<std::pair<Marking, FiringSequence>> dickson_witness(
    const System& s, const ExplorationLimits& limits, int depth_factor) {
  ReachabilityGraph rg = build_rg(s, limits);
  const int nt = s.net.transition_count();
  const std::size_t depth_cap = static_cast<std::size_t>(depth_factor) * std::max(1, nt);
  long budget = limits.max_nodes * 8;

  FiringSequence path;
  std::function<bool(const Marking&, const Marking&, IVec&)> dfs =
      [&](const Marking& start, const Marking& cur, IVec& counts) -> bool {
    if (--budget < 0) return false;
    if (path.size() > 0) {
      bool all = true;
      for (Tid t = 0; t < nt; ++t)
        if (counts[t] == 0) {
          all = false;
          break;
        }
      if (all && dominates(cur, start)) return true;
    }
    if (path.size() >= depth_cap) return false;
    for (Tid t = 0; t < nt; ++t) {
      if (!enabled(s.net, cur, t)) continue;
      Marking next = fire(s.net, cur, t);
      path.push_back(t);
      counts[t] += 1;
      if (dfs(start, next, counts)) return true;
      counts[t] -= 1;
      path.pop_back();
    }
    return false;
  };

  for (const Marking& m : rg.nodes) {
    path.clear();
    IVec counts(nt, 0);
    if (dfs(m, m, counts)) return std::make_pair(m, path);
    if (budget < 0) break;
  }
  return std::nullopt;
}

LivenessStatus cf_liveness(const System& s, const ExplorationLimits& limits) {
  if (!classify(s.net).choice_free)
    throw NotChoiceFreeError("cf_liveness requires a choice-free net");
  auto witness = dickson_witness(s, limits);
  if (witness) return LivenessStatus::Live;
  ReachabilityGraph rg = build_rg(s, limits);
  if (rg.complete) return oracle_live(rg, s.net) ? LivenessStatus::Live : LivenessStatus::NonLive;
  return LivenessStatus::Unknown;
}

FiringSequence realize_tvector(const System& s, const ParikhVector& y,
                               const FiringSequence& sigma_enable) {
  if (!classify(s.net).wmg_le)
    throw NotApplicableError("realize_tvector requires a WMG<= net");
  if (!feasible(s.net, s.initial, sigma_enable))
    throw PnetError("realize_tvector: sigma_enable is not feasible");
  ParikhVector pe = parikh(sigma_enable, s.net.transition_count());
  if (!dominates(pe, y)) throw PnetError("realize_tvector: P(sigma_enable) < Y somewhere");
  IncidenceMatrix I = incidence(s.net);
  Marking target = add(s.initial, I.times(y));
  if (!all_nonnegative(target)) throw PnetError("realize_tvector: M0 + I.Y has a negative entry");

  // DFS over firings constrained by the remaining budget; total length is
  // sum(Y), so the search is finite. Greedy order: transition index.
  FiringSequence out;
  IVec remaining = y;
  Int total = sum(y);
  std::function<bool(const Marking&, Int)> dfs = [&](const Marking& m, Int left) -> bool {
    if (left == 0) return true;
    for (Tid t = 0; t < s.net.transition_count(); ++t) {
      if (remaining[t] == 0 || !enabled(s.net, m, t)) continue;
      remaining[t] -= 1;
      out.push_back(t);
      if (dfs(fire(s.net, m, t), left - 1)) return true;
      remaining[t] += 1;
      out.pop_back();
    }
    return false;
  };
  if (!dfs(s.initial, total))
    throw PnetError("realize_tvector: no realization found (precondition violated)");
  return out;
}

ConfluenceWitness confluence_witness(const System& s, const ParikhVector& y, long search_cap) {
  ClassReport cls = classify(s.net);
  if (!cls.h1s_wmg_le)
    throw NotApplicableError("confluence_witness requires an H1S-WMG<= system");
  IncidenceMatrix I = incidence(s.net);
  Marking m_target = add(s.initial, I.times(y));
  if (!all_nonnegative(m_target))
    throw PnetError("confluence_witness: M0 + I.Y has a negative entry");

  auto shared = shared_places(s.net);
  std::vector<bool> is_choice(s.net.transition_count(), false);
  for (Pid p : shared)
    for (const auto& [t, w] : s.net.place_outputs(p)) is_choice[t] = true;

  FiringSequence sigma;
  Marking m = s.initial;
  IVec remaining = y;
  while (!is_zero(remaining)) {
    Tid chosen = -1;
    for (Tid t = 0; t < s.net.transition_count(); ++t)
      if (remaining[t] > 0 && enabled(s.net, m, t)) {
        chosen = t;
        break;
      }
    if (chosen >= 0) {
      sigma.push_back(chosen);
      m = fire(s.net, m, chosen);
      remaining[chosen] -= 1;
      continue;
    }
    // No supp(Y) transition enabled: BFS over non-choice transitions outside
    // supp(Y) until one of supp(Y) becomes enabled (the liveness step of the
    // inductive construction).
    std::map<Marking, std::pair<Marking, Tid>> parent;
    std::deque<Marking> queue{m};
    parent[m] = {m, -1};
    std::optional<std::pair<Marking, Tid>> hit;
    long explored = 0;
    while (!queue.empty() && !hit) {
      Marking cur = queue.front();
      queue.pop_front();
      if (++explored > search_cap)
        throw LivenessSearchExhaustedError("confluence_witness: enabling search exhausted");
      for (Tid t = 0; t < s.net.transition_count() && !hit; ++t) {
        if (remaining[t] > 0 && enabled(s.net, cur, t)) {
          hit = {cur, t};
          break;
        }
      }
      if (hit) break;
      for (Tid t = 0; t < s.net.transition_count(); ++t) {
        if (is_choice[t] || remaining[t] > 0 || !enabled(s.net, cur, t)) continue;
        Marking next = fire(s.net, cur, t);
        if (parent.count(next)) continue;
        parent[next] = {cur, t};
        queue.push_back(next);
      }
    }
    if (!hit)
      throw LivenessSearchExhaustedError("confluence_witness: no enabling sequence found");
    // Reconstruct the path to the hit marking, then fire the supp(Y) member.
    FiringSequence path;
    Marking walk = hit->first;
    while (!(walk == m)) {
      auto& [prev, t] = parent[walk];
      path.push_back(t);
      walk = prev;
    }
    std::reverse(path.begin(), path.end());
    for (Tid t : path) {
      sigma.push_back(t);
      m = fire(s.net, m, t);
    }
    sigma.push_back(hit->second);
    m = fire(s.net, m, hit->second);
    remaining[hit->second] -= 1;
  }

  // Validation by replay: sigma-Y from M reaches the same end marking.
  ConfluenceWitness w{sigma, m};
  FiringSequence rest = residue_by_vector(sigma, y);
  Marking check = fire_sequence(s.net, m_target, rest);  // throws if infeasible
  if (!(check == w.m_prime))
    throw PnetError("confluence_witness: replay validation failed");
  ParikhVector ps = parikh(sigma, s.net.transition_count());
  if (!dominates(ps, y)) throw PnetError("confluence_witness: P(sigma) < Y");
  return w;
}

bool check_keller(const System& s, const FiringSequence& tau, const FiringSequence& sigma) {
  if (!feasible(s.net, s.initial, tau) || !feasible(s.net, s.initial, sigma))
    throw PnetError("check_keller: inputs must be feasible from M0");
  FiringSequence left = concat(tau, residue(sigma, tau));
  FiringSequence right = concat(sigma, residue(tau, sigma));
  if (!feasible(s.net, s.initial, left) || !feasible(s.net, s.initial, right)) return false;
  return fire_sequence(s.net, s.initial, left) == fire_sequence(s.net, s.initial, right);
}

std::optional<ParikhVector> pr_member(const System& s, const Marking& m, long node_budget) {
  IncidenceMatrix I = incidence(s.net);
  const int nt = s.net.transition_count(), np = s.net.place_count();
  LinearModel model;
  for (int t = 0; t < nt; ++t) model.add_variable("y_" + s.net.transition_name(t), true);
  for (int p = 0; p < np; ++p) {
    LinearConstraint c;
    c.coeffs.assign(nt, 0);
    for (int t = 0; t < nt; ++t) c.coeffs[t] = Rat(I.rows[p][t]);
    c.rel = Rel::Eq;
    c.rhs = Rat(m[p] - s.initial[p]);
    model.add_constraint(std::move(c));
  }
  SolveOutcome r = ilp_feasible(model, node_budget);
  if (r.status != SolveOutcome::Status::Feasible) return std::nullopt;
  ParikhVector y(nt);
  for (int t = 0; t < nt; ++t) y[t] = rat_num(r.point[t]);
  // Recheck M - M0 = I.Y exactly.
  if (!(add(s.initial, I.times(y)) == m))
    throw PnetError("internal error: pr_member witness fails the state equation");
  return y;
}

DirectednessResult initially_directed(const System& s, Int pr_sum_limit,
                                      const ExplorationLimits& limits) {
  IncidenceMatrix I = incidence(s.net);
  const int nt = s.net.transition_count();

  ReachabilityGraph base = build_rg(s, limits);
  if (!base.complete) return {DirectednessResult::Status::Unknown, std::nullopt};

  std::set<Marking> seen;  // potentially reachable markings in the window
  seen.insert(s.initial);
  bool saturated = false;
  // Level k enumerates Parikh vectors with component sum k; saturation =
  // one full level adding no new marking.
  std::vector<IVec> level{IVec(nt, 0)};
  for (Int k = 1; k <= pr_sum_limit; ++k) {
    std::vector<IVec> next;
    std::map<IVec, bool> level_seen;
    bool added = false;
    for (const auto& y : level)
      for (int t = 0; t < nt; ++t) {
        IVec y2 = y;
        y2[t] += 1;
        if (level_seen.count(y2)) continue;
        level_seen[y2] = true;
        next.push_back(y2);
        Marking m = add(s.initial, I.times(y2));
        if (!all_nonnegative(m)) continue;
        if (seen.insert(m).second) added = true;
      }
    level = std::move(next);
    if (!added) {
      saturated = true;
      break;
    }
  }

  for (const auto& m1 : seen) {
    if (m1 == s.initial) continue;
    ReachabilityGraph rg1 = build_rg(System(s.net, m1), limits);
    if (!rg1.complete) return {DirectednessResult::Status::Unknown, std::nullopt};
    bool meet = false;
    for (const auto& m : rg1.nodes)
      if (base.index.count(m)) {
        meet = true;
        break;
      }
    if (!meet) return {DirectednessResult::Status::CounterExample, m1};
  }
  if (!saturated) return {DirectednessResult::Status::Unknown, std::nullopt};
  return {DirectednessResult::Status::Holds, std::nullopt};
}

bool divisibility_deadlock_lift(const System& s, const Int& k, const FiringSequence& sigma,
                                const Siphon& d) {
  if (k < 1) throw PnetError("divisibility_deadlock_lift: k must be >= 1");
  Marking m0_small(s.initial.size());
  for (std::size_t p = 0; p < s.initial.size(); ++p) {
    if (s.initial[p] % k != 0)
      throw PnetError("divisibility_deadlock_lift: M0 is not divisible by k");
    m0_small[p] = s.initial[p] / k;
  }
  if (!feasible(s.net, m0_small, sigma))
    throw PnetError("divisibility_deadlock_lift: sigma is not feasible in (N, M0/k)");
  Marking m_small = fire_sequence(s.net, m0_small, sigma);
  if (!is_deadlocked_siphon(s.net, m_small, d))
    throw PnetError("divisibility_deadlock_lift: D is not deadlocked after sigma in (N, M0/k)");
  // Verify the lifted claim directly.
  FiringSequence lifted;
  for (Int i = 0; i < k; ++i) lifted.insert(lifted.end(), sigma.begin(), sigma.end());
  if (!feasible(s.net, s.initial, lifted)) return false;
  Marking m_big = fire_sequence(s.net, s.initial, lifted);
  return is_deadlocked_siphon(s.net, m_big, d);
}

std::string to_dot(const ReachabilityGraph& rg, const Net& net) {
  std::ostringstream os;
  os << "digraph rg {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < rg.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << format_marking(rg.nodes[i]) << "\"];\n";
  for (const auto& a : rg.arcs)
    os << "  n" << a.from << " -> n" << a.to << " [label=\"" << net.transition_name(a.label)
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pnet
