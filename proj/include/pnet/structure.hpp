#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pnet/core.hpp"

namespace pnet {

/// Structural class flags; see the implication lattice in the unit tests.
struct ClassReport {
  bool unit_weighted = false;
  bool homogeneous = false;
  bool choice_free = false;
  bool wmg_le = false;
  bool wmg = false;  // weighted T-system: every place has exactly one input and one output
  bool marked_graph = false;
  bool state_machine = false;
  bool hfc = false;
  bool hac = false;
  int shared_place_count = 0;
  bool h1s = false;
  bool h1s_wmg_le = false;
  bool strongly_connected = false;
  bool wmg_after_shared_deletion_strongly_connected = false;
};

struct Siphon {
  std::set<Pid> places;  // non-empty
};

struct NotASiphonError : PnetError {
  using PnetError::PnetError;
};

struct TruncatedError : PnetError {
  long cap;
  explicit TruncatedError(long c)
      : PnetError("enumeration truncated at cap " + std::to_string(c)), cap(c) {}
};

enum class SemiflowKind { P, T };

struct Semiflow {
  SemiflowKind kind;
  IVec vector;  // over places (P) or transitions (T)
  bool minimal = true;
};

struct StructuralBoundEstimate {
  Pid place;
  std::optional<Int> upper;  // nullopt = structurally unbounded place
};

ClassReport classify(const Net& net);

std::set<Pid> shared_places(const Net& net);

/// Strong connectivity of the bipartite place/transition digraph.
bool strongly_connected(const Net& net);

/// Removes p and its adjacent arcs.
Net delete_place(const Net& net, Pid p);

/// True iff D is non-empty and satisfies pre(D) included in post(D).
bool is_siphon(const Net& net, const std::set<Pid>& places);

/// All minimal siphons. Throws TruncatedError when more than cap sets are
/// found during the search (the count is worst-case exponential).
std::vector<Siphon> minimal_siphons(const Net& net, long cap = 10000);

/// Deadlocked siphon test: every output transition of every place of D lacks
/// tokens. Places without outputs impose no condition.
bool is_deadlocked_siphon(const System& s, const Siphon& d);
bool is_deadlocked_siphon(const Net& net, const Marking& m, const Siphon& d);

/// Generating set of minimal-support semiflows (Fourier-Motzkin style
/// elimination on the incidence matrix, exact integer arithmetic).
std::vector<Semiflow> semiflows(const Net& net, SemiflowKind kind, long cap = 20000);

/// Integer witness X >= 1 with X^T I = 0, if one exists.
std::optional<IVec> conservativeness(const Net& net);

/// Integer witness Y >= 1 with I Y = 0, if one exists.
std::optional<IVec> consistency(const Net& net);

/// Rational-LP characterization: bounded iff no Y >= 0, Y != 0 with
/// I Y >= 0, I Y != 0 exists.
bool structurally_bounded(const Net& net);

/// LP ceiling of max M(p) over the rational relaxation of PR(S).
StructuralBoundEstimate structural_bound_upper(const System& s, Pid p);

/// P-subsystem induced by the place subset (transitions = pre/post of P').
System p_subsystem(const System& s, const std::set<Pid>& places);

}  // namespace pnet
