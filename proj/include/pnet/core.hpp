#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pnet/error.hpp"
#include "pnet/numeric.hpp"

namespace pnet {

using Pid = int;  ///< place index inside a Net
using Tid = int;  ///< transition index inside a Net

/// A marking: tokens per place, indexed like Net::place_names().
using Marking = IVec;

/// Occurrence counts per transition, indexed like Net::transition_names().
using ParikhVector = IVec;

/// Finite firing sequence, as transition indices.
using FiringSequence = std::vector<Tid>;

struct NotEnabledError : PnetError {
  Tid transition;
  std::size_t step;  // position in the sequence being fired, 0 for single firings
  NotEnabledError(const std::string& what, Tid t, std::size_t k)
      : PnetError(what), transition(t), step(k) {}
};

/// Place/transition incidence structure of a weighted net.
///
/// Weights are stored sparsely and are always >= 1; an absent arc has
/// weight 0. Place and transition identifiers are opaque strings; indices
/// follow declaration order, while "increasing label order" (used by
/// Seq(A) in the liveness pipeline) is lexicographic on the identifier.
class Net {
 public:
  Net() = default;

  Pid add_place(const std::string& name);
  Tid add_transition(const std::string& name);

  /// Adds a place->transition arc. Weight must be >= 1; duplicate arcs and
  /// unknown endpoints are rejected.
  void add_input_arc(const std::string& place, const std::string& trans, Int weight = 1);
  /// Adds a transition->place arc.
  void add_output_arc(const std::string& trans, const std::string& place, Int weight = 1);

  void add_input_arc(Pid p, Tid t, Int weight = 1);
  void add_output_arc(Tid t, Pid p, Int weight = 1);

  int place_count() const { return static_cast<int>(place_names_.size()); }
  int transition_count() const { return static_cast<int>(trans_names_.size()); }
  bool non_trivial() const { return place_count() > 0 && transition_count() > 0; }

  const std::vector<std::string>& place_names() const { return place_names_; }
  const std::vector<std::string>& transition_names() const { return trans_names_; }
  const std::string& place_name(Pid p) const { return place_names_.at(p); }
  const std::string& transition_name(Tid t) const { return trans_names_.at(t); }

  std::optional<Pid> find_place(const std::string& name) const;
  std::optional<Tid> find_transition(const std::string& name) const;
  Pid place(const std::string& name) const;       // throws on unknown id
  Tid transition(const std::string& name) const;  // throws on unknown id

  /// W(p,t); 0 when there is no arc.
  const Int& input_weight(Pid p, Tid t) const;
  /// W(t,p); 0 when there is no arc.
  const Int& output_weight(Tid t, Pid p) const;

  /// Input places of t with their weights, ordered by place index.
  const std::vector<std::pair<Pid, Int>>& pre(Tid t) const { return pre_[t]; }
  /// Output places of t with their weights, ordered by place index.
  const std::vector<std::pair<Pid, Int>>& post(Tid t) const { return post_[t]; }
  /// Output transitions of p (p^bullet), ordered by transition index.
  const std::vector<std::pair<Tid, Int>>& place_outputs(Pid p) const { return p_out_[p]; }
  /// Input transitions of p (^bullet p), ordered by transition index.
  const std::vector<std::pair<Tid, Int>>& place_inputs(Pid p) const { return p_in_[p]; }

 private:
  std::vector<std::string> place_names_, trans_names_;
  std::map<std::string, Pid> place_index_;
  std::map<std::string, Tid> trans_index_;
  std::vector<std::vector<std::pair<Pid, Int>>> pre_, post_;    // per transition
  std::vector<std::vector<std::pair<Tid, Int>>> p_out_, p_in_;  // per place
};

/// Integer matrix I(p,t) = W(t,p) - W(p,t), rows = places, columns = transitions.
struct IncidenceMatrix {
  std::vector<IVec> rows;  // rows[p][t]

  const Int& at(Pid p, Tid t) const { return rows[p][t]; }
  int place_count() const { return static_cast<int>(rows.size()); }
  int transition_count() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }

  /// I * Y for a T-vector Y.
  IVec times(const IVec& y) const;
  /// X^T * I for a P-vector X.
  IVec transpose_times(const IVec& x) const;
};

/// A net together with its initial marking.
struct System {
  Net net;
  Marking initial;

  System() = default;
  System(Net n, Marking m0);
};

IncidenceMatrix incidence(const Net& net);

/// True iff every input place of t holds at least the arc weight at m.
bool enabled(const Net& net, const Marking& m, Tid t);
inline bool enabled(const System& s, Tid t) { return enabled(s.net, s.initial, t); }

/// Fires t at m. Throws NotEnabledError when t is not enabled.
Marking fire(const Net& net, const Marking& m, Tid t);
inline Marking fire(const System& s, Tid t) { return fire(s.net, s.initial, t); }

/// Fires the sequence stepwise; on failure reports the offending step and
/// transition through NotEnabledError.
Marking fire_sequence(const Net& net, const Marking& m0, const FiringSequence& sigma);
inline Marking fire_sequence(const System& s, const FiringSequence& sigma) {
  return fire_sequence(s.net, s.initial, sigma);
}

/// True iff the whole sequence is feasible from m0.
bool feasible(const Net& net, const Marking& m0, const FiringSequence& sigma);

ParikhVector parikh(const FiringSequence& sigma, int transition_count);

std::vector<Tid> support(const ParikhVector& y);

/// Left residue tau \ sigma: cancels in tau the leftmost occurrences of the
/// symbols of sigma, read left to right.
FiringSequence residue(const FiringSequence& tau, const FiringSequence& sigma);

/// Residue by a T-vector: for each transition t, removes the
/// min(P(tau)(t), Y(t)) leftmost occurrences of t.
FiringSequence residue_by_vector(const FiringSequence& tau, const ParikhVector& y);

FiringSequence concat(const FiringSequence& a, const FiringSequence& b);

/// Projection of sigma on a transition subset (keeps relative order).
FiringSequence project(const FiringSequence& sigma, const std::vector<bool>& keep);

std::string format_sequence(const Net& net, const FiringSequence& sigma);
std::string format_marking(const Marking& m);

}  // namespace pnet
