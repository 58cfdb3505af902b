#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pnet/behavior.hpp"
#include "pnet/core.hpp"
#include "pnet/lp.hpp"
#include "pnet/structure.hpp"

namespace pnet {

/// One rewritten (p,t) pair: the arc p->t was replaced by the relay
/// p -> t_p -> p_a -> t plus the back edge t -> p_b -> t_p, all new arcs
/// unit-weighted, p_a initially empty and p_b holding one token.
struct ThetaPair {
  Pid p;        // original place (index in the original net)
  Tid t;        // original transition (index in the original net)
  Pid p_a, p_b; // new places (indices in the transformed net)
  Tid t_p;      // new transition (index in the transformed net)
};

struct ThetaResult {
  System transformed;
  std::vector<ThetaPair> pairs;  // in lexicographic (p,t) name order
  // Index maps from the original system into the transformed one.
  std::vector<Pid> place_map;
  std::vector<Tid> trans_map;

  bool is_new_transition(Tid t_in_transformed) const;
  /// New transitions whose firing enables an input place of t (t given in
  /// transformed indices), in increasing label order.
  std::vector<Tid> new_trans_pre(Tid t_in_transformed) const;
};

/// Rewrites every pair (p, t) of the input with p's only output t and
/// |pre(t)| >= 2 so that afterwards every non-shared input place of a
/// synchronization has structural bound 1.
ThetaResult theta_transform(const System& s);

/// Expanded sequence theta(alpha): inserts Seq(NewTransPre(t)) before each
/// occurrence of t. alpha must be feasible in the original system; the
/// result is feasible in the transformed one.
FiringSequence expand_sequence(const ThetaResult& theta, const FiringSequence& alpha);

/// Reduced sequence: drops, for each new transition, its last occurrence
/// when no firing of its target transition follows it. beta must be
/// feasible in the transformed system and the result remains feasible.
FiringSequence reduce_sequence(const ThetaResult& theta, const FiringSequence& beta);

struct MultipleUnboundedInputsError : PnetError {
  Tid transition;
  MultipleUnboundedInputsError(const std::string& what, Tid t) : PnetError(what), transition(t) {}
};

/// One linear non-fireability constraint per transition of the transformed
/// system, over marking variables indexed like its places. `bounds` maps
/// every place to a finite structural-bound upper estimate.
/// Strictness is folded into the right-hand side (a < b becomes a <= b-1).
std::vector<LinearConstraint> nonfireability_constraints(const System& system_theta,
                                                         const std::vector<Int>& bounds,
                                                         int marking_var_offset,
                                                         int total_vars);

struct DeadlockIlp {
  LinearModel model;       // variables: m_<place>..., y_<transition>...
  ThetaResult theta;
  std::vector<Int> bounds; // per transformed place
  int marking_offset = 0;  // first marking variable index
  int parikh_offset = 0;   // first Parikh variable index
};

/// State equation of the transformed system plus one non-fireability row per
/// transition plus per-place bound rows; feasible integer points are
/// potentially reachable deadlocks. Throws NotApplicableError when the
/// class/connectedness/boundedness gate fails.
DeadlockIlp deadlock_ilp(const System& s);

struct LivenessVerdict {
  enum class Status { Live, NonLive, NotApplicable, Inconclusive } status;
  std::optional<Marking> deadlock;       // NonLive: witness in the original net
  std::optional<ParikhVector> firing_count;
  std::string reason;                    // NotApplicable / Inconclusive detail
  long ilp_nodes = 0;
};

/// The full decision pipeline: gate, transform, bounds, ILP, solve, project
/// the witness back and re-validate it mechanically.
LivenessVerdict check_liveness(const System& s, long node_budget = 200000);

/// Siphon-deadlock ILP: state equation of s plus emptiness of D
/// (M(p) <= min outgoing weight - 1 for each p in D with outputs).
LinearModel siphon_deadlock_ilp(const System& s, const Siphon& d);

}  // namespace pnet
