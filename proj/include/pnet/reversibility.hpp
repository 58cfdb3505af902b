#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pnet/behavior.hpp"
#include "pnet/core.hpp"

namespace pnet {

/// Occurrence bookkeeping for a base sequence sigma_r repeated forever.
/// sigma_r^infinity is never materialized; positions are computed from one
/// index pass over the base sequence.
class LocalOrdering {
 public:
  LocalOrdering(FiringSequence base, int transition_count);

  const FiringSequence& base() const { return base_; }
  const ParikhVector& base_parikh() const { return counts_; }

  /// 1-based position of the m-th occurrence of t in base^infinity
  /// (m >= 1; t must occur in the base sequence).
  Int position_of_occurrence(Tid t, const Int& m) const;

  /// Occurrences of t among the first `len` letters of base^infinity.
  Int occurrences_before(Tid t, const Int& len) const;

 private:
  FiringSequence base_;
  ParikhVector counts_;
  std::vector<std::vector<Int>> positions_;  // per transition, 1-based
};

/// Next transition function: among t' in E with P(sigma)(t') < P(kappa)(t'),
/// the one whose (P(sigma)(t')+1)-th occurrence appears first in kappa.
std::optional<Tid> tnext(const std::set<Tid>& e, const FiringSequence& sigma,
                         const FiringSequence& kappa, int transition_count);

/// Largest prefix of kappa preceding the n-th occurrence of t (n >= 1).
FiringSequence prefix_before_nth(const FiringSequence& kappa, Tid t, const Int& n);

/// Delayed-occurrence predicate of t relative to the local ordering of E
/// induced by the ordering's base sequence: some t' in E fired n >= 1 times
/// in alpha while t occurred fewer times in alpha than before the n-th t'
/// of the projected infinite ordering.
bool delayed(const std::set<Tid>& e, const FiringSequence& alpha, const LocalOrdering& ordering,
             Tid t);

/// A feasible sequence covering all transitions whose Parikh vector is a
/// T-semiflow; firing it returns to the start marking.
struct TSequence {
  FiringSequence sequence;
};

/// Validates supp = T, I.P = 0 and replay feasibility.
bool validate_tsequence(const System& s, const FiringSequence& sigma);

/// First loop of the return-path construction: after firing t (an output of
/// the shared place), fires the delayed occurrences of K^1_t(sigma_r),
/// following the base ordering for enabled non-choice transitions. Returns
/// sigma_t with t.sigma_t leaving no delayed occurrence. When t is not an
/// output of the shared place the result is empty.
FiringSequence algo_sc1(const System& s, const TSequence& sigma_r, Tid t,
                        long step_budget_factor = 10);

/// Second loop: completes alpha = t.sigma_t to a full multiple of sigma_r,
/// firing the transition whose next occurrence appears first in
/// kappa = sigma_r^l; ends exactly at the initial marking.
FiringSequence algo_sc2(const System& s, const FiringSequence& alpha, const TSequence& sigma_r,
                        long step_budget_factor = 10);

/// Bounded search for a feasible T-sequence: for k = 1..k_max, depth-first
/// over firings constrained by the budget k*Y (Y the minimal consistency
/// vector), with backtracking and dead-state memoization.
std::optional<TSequence> find_tsequence(const System& s, int k_max = 4,
                                        long state_budget = 2000000);

struct ReversibilityVerdict {
  enum class Status { Reversible, NotReversible, NotApplicable, Unknown } status;
  std::optional<TSequence> tsequence;
  std::string reason;
};

/// Reversibility for H1S systems under the liveness assumption: reversible
/// iff a T-sequence is feasible. Liveness is established through the ILP
/// pipeline when applicable, else the reachability-graph oracle.
ReversibilityVerdict check_reversibility(const System& s, int k_max = 4,
                                         const ExplorationLimits& limits = {});

/// Return path: a sequence sigma_star with M0[sigma sigma_star> M0, built by
/// peeling sigma transition by transition through algo_sc1/algo_sc2.
FiringSequence return_path(const System& s, const TSequence& sigma_r,
                           const FiringSequence& sigma);

}  // namespace pnet
