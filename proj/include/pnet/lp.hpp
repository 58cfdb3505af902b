#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pnet/error.hpp"
#include "pnet/numeric.hpp"

namespace pnet {

enum class Rel { Le, Eq, Ge };

enum class Sense { Minimize, Maximize };

struct LinearConstraint {
  std::string name;
  std::vector<Rat> coeffs;  // one per variable
  Rel rel = Rel::Le;
  Rat rhs = 0;
};

struct Objective {
  Sense sense = Sense::Minimize;
  std::vector<Rat> coeffs;
};

/// Variables are non-negative; integrality is a per-variable flag.
/// Strict inequalities are never stored: integer callers fold a < b into
/// a <= b - 1 before building the model.
struct LinearModel {
  std::vector<std::string> var_names;
  std::vector<bool> integer;  // per variable
  std::vector<LinearConstraint> constraints;
  std::optional<Objective> objective;

  int add_variable(const std::string& name, bool is_integer);
  void add_constraint(LinearConstraint c);
  int variable_count() const { return static_cast<int>(var_names.size()); }

  /// Exact check that a point satisfies every constraint (and integrality
  /// when require_integrality is set).
  bool satisfied_by(const std::vector<Rat>& point, bool require_integrality) const;
};

struct SolveOutcome {
  enum class Status { Optimal, Feasible, Infeasible, Unbounded } status;
  Rat value = 0;               // objective value, Optimal only
  std::vector<Rat> point;      // Optimal / Feasible
  long node_count = 0;         // branch & bound nodes (1 for plain LP solves)
};

struct MalformedModelError : PnetError {
  using PnetError::PnetError;
};

struct NodeBudgetExceededError : PnetError {
  long budget;
  explicit NodeBudgetExceededError(long b)
      : PnetError("ILP node budget exceeded (" + std::to_string(b) + ")"), budget(b) {}
};

/// Exact rational simplex (two phases, Bland's rule). Requires an objective
/// for an Optimal outcome; without one the phase-1 point is returned as
/// Feasible. Deterministic: a fixed pivot rule yields identical outcomes
/// across runs.
SolveOutcome lp_solve(const LinearModel& model);

/// Integer feasibility by depth-first branch & bound on the LP relaxation,
/// branching on the most fractional integer variable. Throws
/// NodeBudgetExceededError when the node budget runs out.
SolveOutcome ilp_feasible(const LinearModel& model, long node_budget = 200000);

/// LP-format text (Minimize / Subject To / Bounds / Generals / End).
/// Rational coefficients are scaled per row to integers; an optional list
/// of comment lines is emitted after the header.
std::string export_lp(const LinearModel& model,
                      const std::vector<std::string>& comments = {});

}  // namespace pnet
