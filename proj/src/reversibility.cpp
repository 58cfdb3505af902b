#include "pnet/reversibility.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pnet/liveness.hpp"
#include "pnet/structure.hpp"

namespace pnet {

LocalOrdering::LocalOrdering(FiringSequence base, int transition_count)
    : base_(std::move(base)), counts_(parikh(base_, transition_count)),
      positions_(transition_count) {
  for (std::size_t i = 0; i < base_.size(); ++i)
    positions_[base_[i]].push_back(Int(i + 1));
}

Int LocalOrdering::position_of_occurrence(Tid t, const Int& m) const {
  const Int& per_cycle = counts_[t];
  if (per_cycle == 0) throw PnetError("position_of_occurrence: transition absent from base");
  Int cycles = (m - 1) / per_cycle;
  Int inside = (m - 1) % per_cycle;  // 0-based occurrence within one copy
  return cycles * Int(base_.size()) + positions_[t][static_cast<std::size_t>(inside)];
}

Int LocalOrdering::occurrences_before(Tid t, const Int& len) const {
  if (len <= 0) return 0;
  Int cycles = len / Int(base_.size());
  Int rem = len % Int(base_.size());
  Int inside = 0;
  for (const auto& pos : positions_[t])
    if (pos <= rem) ++inside;
  return cycles * counts_[t] + inside;
}

std::optional<Tid> tnext(const std::set<Tid>& e, const FiringSequence& sigma,
                         const FiringSequence& kappa, int transition_count) {
  ParikhVector ps = parikh(sigma, transition_count);
  ParikhVector pk = parikh(kappa, transition_count);
  std::optional<Tid> best;
  Int best_pos = 0;
  for (Tid t : e) {
    if (ps[t] >= pk[t]) continue;
    // Position of occurrence number ps[t]+1 of t in kappa.
    Int want = ps[t] + 1;
    Int seen = 0;
    Int pos = 0;
    for (std::size_t i = 0; i < kappa.size(); ++i)
      if (kappa[i] == t && ++seen == want) {
        pos = Int(i + 1);
        break;
      }
    if (!best || pos < best_pos) {
      best = t;
      best_pos = pos;
    }
  }
  return best;
}

FiringSequence prefix_before_nth(const FiringSequence& kappa, Tid t, const Int& n) {
  if (n < 1) throw PnetError("prefix_before_nth: n must be >= 1");
  Int seen = 0;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (kappa[i] == t && ++seen == n)
      return FiringSequence(kappa.begin(), kappa.begin() + i);
  }
  throw PnetError("prefix_before_nth: fewer than n occurrences");
}

bool delayed(const std::set<Tid>& e, const FiringSequence& alpha, const LocalOrdering& ordering,
             Tid t) {
  if (!e.count(t)) throw PnetError("delayed: t must belong to E");
  ParikhVector pa = parikh(alpha, static_cast<int>(ordering.base_parikh().size()));
  for (Tid other : e) {
    if (other == t) continue;
    const Int& n = pa[other];
    if (n < 1) continue;  // K^0 is undefined: no condition from this t'
    // Occurrences of t before the n-th occurrence of `other` in the
    // projection of base^infinity on E; projection preserves per-symbol
    // occurrence order, so absolute positions in base^infinity suffice.
    Int pos = ordering.position_of_occurrence(other, n);
    Int before = ordering.occurrences_before(t, pos - 1);
    if (pa[t] < before) return true;
  }
  return false;
}

bool validate_tsequence(const System& s, const FiringSequence& sigma) {
  const int nt = s.net.transition_count();
  ParikhVector p = parikh(sigma, nt);
  for (Tid t = 0; t < nt; ++t)
    if (p[t] == 0) return false;
  if (!feasible(s.net, s.initial, sigma)) return false;
  return fire_sequence(s.net, s.initial, sigma) == s.initial;
}

namespace {

std::optional<Pid> unique_shared_place(const Net& net) {
  auto shared = shared_places(net);
  if (shared.size() > 1) throw NotApplicableError("system has more than one shared place");
  if (shared.empty()) return std::nullopt;
  return *shared.begin();
}

}  // namespace

FiringSequence algo_sc1(const System& s, const TSequence& sigma_r, Tid t,
                        long step_budget_factor) {
  const Net& net = s.net;
  const int nt = net.transition_count();
  if (!validate_tsequence(s, sigma_r.sequence))
    throw PnetError("algo_sc1: sigma_r is not a feasible T-sequence");
  if (!enabled(net, s.initial, t)) throw PnetError("algo_sc1: t is not enabled at M0");

  auto shared = unique_shared_place(net);
  std::set<Tid> post_p;
  if (shared)
    for (const auto& [tt, w] : net.place_outputs(*shared)) post_p.insert(tt);
  if (!shared || !post_p.count(t)) return {};  // nothing delayed by a non-choice firing

  LocalOrdering ordering(sigma_r.sequence, nt);
  FiringSequence kappa0 = prefix_before_nth(sigma_r.sequence, t, 1);
  ParikhVector pk0 = parikh(kappa0, nt);

  FiringSequence alpha{t};
  Marking m = fire(net, s.initial, t);
  long budget = step_budget_factor * static_cast<long>(sigma_r.sequence.size()) + 16;

  auto outer_pending = [&](const ParikhVector& pa) {
    for (Tid t2 : post_p)
      if (t2 != t && pk0[t2] > pa[t2]) return true;
    return false;
  };

  ParikhVector pa = parikh(alpha, nt);
  while (outer_pending(pa)) {
    for (;;) {
      auto tj = tnext(post_p, alpha, kappa0, nt);
      if (!tj) throw PnetError("algo_sc1: tnext undefined while occurrences remain");
      if (enabled(net, m, *tj)) break;
      // Fire, among the enabled non-choice transitions, the one whose next
      // occurrence after its current count appears first in sigma_r^inf.
      Tid pick = -1;
      Int pick_pos = 0;
      for (Tid ti = 0; ti < nt; ++ti) {
        if (post_p.count(ti) || !enabled(net, m, ti)) continue;
        Int pos = ordering.position_of_occurrence(ti, pa[ti] + 1);
        if (pick < 0 || pos < pick_pos) {
          pick = ti;
          pick_pos = pos;
        }
      }
      if (pick < 0)
        throw LivenessSearchExhaustedError("algo_sc1: no enabled non-choice transition");
      if (--budget < 0) throw LivenessSearchExhaustedError("algo_sc1: step budget exhausted");
      alpha.push_back(pick);
      pa[pick] += 1;
      m = fire(net, m, pick);
    }
    Tid tj = *tnext(post_p, alpha, kappa0, nt);
    if (--budget < 0) throw LivenessSearchExhaustedError("algo_sc1: step budget exhausted");
    alpha.push_back(tj);
    pa[tj] += 1;
    m = fire(net, m, tj);
  }
  return FiringSequence(alpha.begin() + 1, alpha.end());
}

FiringSequence algo_sc2(const System& s, const FiringSequence& alpha_in, const TSequence& sigma_r,
                        long step_budget_factor) {
  const Net& net = s.net;
  const int nt = net.transition_count();
  ParikhVector pr = parikh(sigma_r.sequence, nt);
  ParikhVector pa = parikh(alpha_in, nt);
  // Smallest l >= 1 with P(alpha) <= l * P(sigma_r).
  Int l = 1;
  for (Tid t = 0; t < nt; ++t) {
    if (pr[t] == 0) throw PnetError("algo_sc2: sigma_r must contain every transition");
    Int need = (pa[t] + pr[t] - 1) / pr[t];
    l = std::max(l, need);
  }
  FiringSequence kappa;
  for (Int i = 0; i < l; ++i)
    kappa.insert(kappa.end(), sigma_r.sequence.begin(), sigma_r.sequence.end());
  ParikhVector pk = parikh(kappa, nt);

  Marking m = fire_sequence(net, s.initial, alpha_in);  // throws if alpha infeasible
  FiringSequence out;
  // Occurrence positions per transition inside kappa, 1-based.
  std::vector<std::vector<Int>> pos(nt);
  for (std::size_t i = 0; i < kappa.size(); ++i) pos[kappa[i]].push_back(Int(i + 1));

  long budget = step_budget_factor * static_cast<long>(kappa.size()) + 16;
  while (pa != pk) {
    Tid pick = -1;
    Int pick_pos = 0;
    for (Tid t = 0; t < nt; ++t) {
      if (pa[t] >= pk[t]) continue;
      Int p = pos[t][static_cast<std::size_t>(pa[t])];
      if (pick < 0 || p < pick_pos) {
        pick = t;
        pick_pos = p;
      }
    }
    if (pick < 0) throw PnetError("algo_sc2: no candidate although P(alpha) != P(kappa)");
    if (!enabled(net, m, pick))
      throw PnetError("algo_sc2: designated transition '" + net.transition_name(pick) +
                      "' is not enabled (violated precondition)");
    if (--budget < 0) throw PnetError("algo_sc2: step budget exhausted");
    out.push_back(pick);
    pa[pick] += 1;
    m = fire(net, m, pick);
  }
  if (!(m == s.initial))
    throw PnetError("algo_sc2: completion did not return to the initial marking");
  return out;
}

namespace {

/// Minimal consistency vector: a full-support minimal T-semiflow when one
/// exists, else the primitive sum of the minimal T-semiflows (when their
/// supports cover T).
std::optional<IVec> minimal_consistency_vector(const Net& net) {
  std::vector<Semiflow> flows;
  try {
    flows = semiflows(net, SemiflowKind::T);
  } catch (const TruncatedError&) {
    return std::nullopt;
  }
  const int nt = net.transition_count();
  std::optional<IVec> best;
  for (const auto& f : flows) {
    bool full = true;
    for (Tid t = 0; t < nt; ++t)
      if (f.vector[t] == 0) {
        full = false;
        break;
      }
    if (full && (!best || f.vector < *best)) best = f.vector;
  }
  if (best) return best;
  IVec total(nt, 0);
  for (const auto& f : flows) total = add(total, f.vector);
  for (Tid t = 0; t < nt; ++t)
    if (total[t] == 0) return std::nullopt;  // not consistent
  Int g = vec_gcd(total);
  if (g > 1)
    for (auto& x : total) x /= g;
  return total;
}

}  // namespace

std::optional<TSequence> find_tsequence(const System& s, int k_max, long state_budget) {
  if (consistency(s.net) == std::nullopt) return std::nullopt;
  auto y_min = minimal_consistency_vector(s.net);
  if (!y_min) return std::nullopt;
  const int nt = s.net.transition_count();

  for (int k = 1; k <= k_max; ++k) {
    IVec budget(nt);
    for (Tid t = 0; t < nt; ++t) budget[t] = Int(k) * (*y_min)[t];
    long states = state_budget;
    std::map<std::pair<Marking, IVec>, bool> dead;
    FiringSequence seq;
    std::function<bool(const Marking&, IVec&)> dfs = [&](const Marking& m, IVec& rem) -> bool {
      if (is_zero(rem)) return m == s.initial;
      auto key = std::make_pair(m, rem);
      if (dead.count(key)) return false;
      if (--states < 0) return false;
      for (Tid t = 0; t < nt; ++t) {
        if (rem[t] == 0 || !enabled(s.net, m, t)) continue;
        rem[t] -= 1;
        seq.push_back(t);
        if (dfs(fire(s.net, m, t), rem)) return true;
        seq.pop_back();
        rem[t] += 1;
      }
      if (states >= 0) dead[key] = true;
      return false;
    };
    IVec rem = budget;
    if (dfs(s.initial, rem)) {
      TSequence result{seq};
      if (!validate_tsequence(s, result.sequence))
        throw PnetError("internal error: found T-sequence fails validation");
      return result;
    }
  }
  return std::nullopt;
}

ReversibilityVerdict check_reversibility(const System& s, int k_max,
                                         const ExplorationLimits& limits) {
  ReversibilityVerdict v{ReversibilityVerdict::Status::Unknown, std::nullopt, ""};
  ClassReport cls = classify(s.net);
  if (!cls.h1s) {
    v.status = ReversibilityVerdict::Status::NotApplicable;
    v.reason = cls.shared_place_count > 1
                   ? "more than one shared place (" + std::to_string(cls.shared_place_count) + ")"
                   : "net is not homogeneous";
    return v;
  }
  // Establish liveness: ILP pipeline when its gate admits the system, else
  // the reachability-graph oracle.
  bool live;
  LivenessVerdict lv = check_liveness(s);
  if (lv.status == LivenessVerdict::Status::Live) {
    live = true;
  } else if (lv.status == LivenessVerdict::Status::NonLive) {
    live = false;
  } else {
    ReachabilityGraph rg = build_rg(s, limits);
    if (!rg.complete) {
      v.status = ReversibilityVerdict::Status::NotApplicable;
      v.reason = "liveness could not be established (graph truncated)";
      return v;
    }
    live = oracle_live(rg, s.net);
  }
  if (!live) {
    v.status = ReversibilityVerdict::Status::NotApplicable;
    v.reason = "system is not live";
    return v;
  }

  if (consistency(s.net) == std::nullopt) {
    // No T-vector >= 1 with I.Y = 0 exists, so no T-sequence can exist.
    v.status = ReversibilityVerdict::Status::NotReversible;
    v.reason = "net is not consistent";
    return v;
  }
  auto ts = find_tsequence(s, k_max);
  if (ts) {
    v.status = ReversibilityVerdict::Status::Reversible;
    v.tsequence = ts;
  } else {
    v.status = ReversibilityVerdict::Status::Unknown;
    v.reason = "no T-sequence found within k_max = " + std::to_string(k_max);
  }
  return v;
}

FiringSequence return_path(const System& s, const TSequence& sigma_r,
                           const FiringSequence& sigma) {
  if (!feasible(s.net, s.initial, sigma)) throw PnetError("return_path: sigma is not feasible");
  std::function<FiringSequence(const System&, const TSequence&, const FiringSequence&)> rec =
      [&](const System& sys, const TSequence& sr, const FiringSequence& rest) -> FiringSequence {
    if (rest.empty()) return {};
    Tid t = rest.front();
    FiringSequence sigma_t = algo_sc1(sys, sr, t);
    FiringSequence alpha{t};
    alpha.insert(alpha.end(), sigma_t.begin(), sigma_t.end());
    FiringSequence sigma_t2 = algo_sc2(sys, alpha, sr);
    FiringSequence t_star = concat(sigma_t, sigma_t2);  // M_t -> M0
    System rebased(sys.net, fire(sys.net, sys.initial, t));
    TSequence rebased_sr{concat(t_star, FiringSequence{t})};
    FiringSequence tail = rec(rebased, rebased_sr,
                              FiringSequence(rest.begin() + 1, rest.end()));
    return concat(tail, t_star);
  };
  FiringSequence star = rec(s, sigma_r, sigma);
  // Replay validation before returning.
  if (!(fire_sequence(s.net, s.initial, concat(sigma, star)) == s.initial))
    throw PnetError("return_path: replay validation failed");
  return star;
}

}  // namespace pnet
