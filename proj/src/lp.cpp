#include "pnet/lp.hpp"

#include <algorithm>
#include <sstream>

namespace pnet {

int LinearModel::add_variable(const std::string& name, bool is_integer) {
  var_names.push_back(name);
  integer.push_back(is_integer);
  return variable_count() - 1;
}

void LinearModel::add_constraint(LinearConstraint c) {
  if (static_cast<int>(c.coeffs.size()) != variable_count())
    throw MalformedModelError("constraint '" + c.name + "' has wrong coefficient count");
  constraints.push_back(std::move(c));
}

bool LinearModel::satisfied_by(const std::vector<Rat>& point, bool require_integrality) const {
  if (static_cast<int>(point.size()) != variable_count()) return false;
  for (int j = 0; j < variable_count(); ++j) {
    if (point[j] < 0) return false;
    if (require_integrality && integer[j] && !is_integral(point[j])) return false;
  }
  for (const auto& c : constraints) {
    Rat lhs = 0;
    for (int j = 0; j < variable_count(); ++j)
      if (c.coeffs[j] != 0) lhs += c.coeffs[j] * point[j];
    switch (c.rel) {
      case Rel::Le: if (!(lhs <= c.rhs)) return false; break;
      case Rel::Eq: if (!(lhs == c.rhs)) return false; break;
      case Rel::Ge: if (!(lhs >= c.rhs)) return false; break;
    }
  }
  return true;
}

namespace {

// Dense exact-rational simplex. The tableau rows always hold B^-1 A and
// B^-1 b, so reduced costs are c_j - c_B . a[:,j]. Bland's rule: entering
// column is the lowest-index improving one, ratio-test ties break toward
// the lowest basic column index. No cycling, deterministic outcomes.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rat>> rows, std::vector<Rat> rhs, int n_struct, int n_art)
      : a_(std::move(rows)), b_(std::move(rhs)), n_struct_(n_struct), n_art_(n_art) {
    basis_.resize(a_.size());
    const int art0 = cols() - n_art_;
    for (int i = 0; i < rowcount(); ++i) basis_[i] = art0 + i;
  }

  int rowcount() const { return static_cast<int>(a_.size()); }
  int cols() const { return a_.empty() ? 0 : static_cast<int>(a_[0].size()); }

  // Minimizes c (length == cols()). Returns false on unboundedness.
  bool minimize(const std::vector<Rat>& c) {
    for (;;) {
      std::vector<bool> in_basis(cols(), false);
      for (int b : basis_) in_basis[b] = true;
      std::vector<Rat> cb(rowcount());
      for (int i = 0; i < rowcount(); ++i) cb[i] = c[basis_[i]];

      int entering = -1;
      for (int j = 0; j < cols(); ++j) {
        if (in_basis[j]) continue;
        Rat reduced = c[j];
        for (int i = 0; i < rowcount(); ++i)
          if (cb[i] != 0 && a_[i][j] != 0) reduced -= cb[i] * a_[i][j];
        if (reduced < 0) { entering = j; break; }
      }
      if (entering < 0) return true;

      int leaving = -1;
      Rat best_ratio = 0;
      for (int i = 0; i < rowcount(); ++i) {
        if (a_[i][entering] > 0) {
          Rat ratio = b_[i] / a_[i][entering];
          if (leaving < 0 || ratio < best_ratio ||
              (ratio == best_ratio && basis_[i] < basis_[leaving])) {
            leaving = i;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  Rat objective_value(const std::vector<Rat>& c) const {
    Rat v = 0;
    for (int i = 0; i < rowcount(); ++i)
      if (c[basis_[i]] != 0) v += c[basis_[i]] * b_[i];
    return v;
  }

  // After phase 1: pivots zero-level artificials out of the basis and drops
  // redundant rows, then erases the artificial columns.
  void drop_artificials() {
    const int art0 = cols() - n_art_;
    for (int i = rowcount() - 1; i >= 0; --i) {
      if (basis_[i] < art0) continue;
      int target = -1;
      for (int j = 0; j < art0 && target < 0; ++j) {
        bool basic = std::find(basis_.begin(), basis_.end(), j) != basis_.end();
        if (!basic && a_[i][j] != 0) target = j;
      }
      if (target >= 0) {
        pivot(i, target);  // degenerate pivot, value stays 0
      } else {
        a_.erase(a_.begin() + i);  // row is redundant
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
    for (auto& row : a_) row.resize(art0);
    n_art_ = 0;
  }

  std::vector<Rat> extract_point() const {
    std::vector<Rat> p(n_struct_, 0);
    for (int i = 0; i < rowcount(); ++i)
      if (basis_[i] < n_struct_) p[basis_[i]] = b_[i];
    return p;
  }

 private:
  void pivot(int r, int j) {
    Rat piv = a_[r][j];
    for (int k = 0; k < cols(); ++k)
      if (a_[r][k] != 0) a_[r][k] /= piv;
    b_[r] /= piv;
    for (int i = 0; i < rowcount(); ++i) {
      if (i == r) continue;
      Rat f = a_[i][j];
      if (f == 0) continue;
      for (int k = 0; k < cols(); ++k)
        if (a_[r][k] != 0) a_[i][k] -= f * a_[r][k];
      b_[i] -= f * b_[r];
    }
    basis_[r] = j;
  }

  std::vector<std::vector<Rat>> a_;
  std::vector<Rat> b_;
  std::vector<int> basis_;
  int n_struct_;
  int n_art_;
};

}  // namespace

SolveOutcome lp_solve(const LinearModel& model) {
  const int n = model.variable_count();
  for (const auto& c : model.constraints)
    if (static_cast<int>(c.coeffs.size()) != n)
      throw MalformedModelError("constraint '" + c.name + "' has wrong coefficient count");
  if (model.objective && static_cast<int>(model.objective->coeffs.size()) != n)
    throw MalformedModelError("objective has wrong coefficient count");

  const int m = static_cast<int>(model.constraints.size());
  int n_slack = 0;
  for (const auto& c : model.constraints)
    if (c.rel != Rel::Eq) ++n_slack;
  const int total = n + n_slack + m;

  // Equality rows with rhs >= 0 over structural | slack | artificial columns.
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(total, 0));
  std::vector<Rat> rhs(m);
  int slack_at = n;
  for (int i = 0; i < m; ++i) {
    const auto& c = model.constraints[i];
    Rat sign = (c.rhs < 0) ? -1 : 1;
    for (int j = 0; j < n; ++j) rows[i][j] = sign * c.coeffs[j];
    rhs[i] = sign * c.rhs;
    if (c.rel != Rel::Eq) {
      Rat slack_sign = (c.rel == Rel::Le) ? 1 : -1;
      rows[i][slack_at] = sign * slack_sign;
      ++slack_at;
    }
    rows[i][n + n_slack + i] = 1;
  }

  Simplex tab(std::move(rows), std::move(rhs), n, m);

  std::vector<Rat> phase1(total, 0);
  for (int i = 0; i < m; ++i) phase1[n + n_slack + i] = 1;
  tab.minimize(phase1);  // bounded below by 0, never unbounded
  SolveOutcome out{SolveOutcome::Status::Infeasible, 0, {}, 1};
  if (tab.objective_value(phase1) != 0) return out;
  tab.drop_artificials();

  if (!model.objective) {
    out.status = SolveOutcome::Status::Feasible;
    out.point = tab.extract_point();
    if (!model.satisfied_by(out.point, false))
      throw MalformedModelError("internal error: simplex point fails substitution");
    return out;
  }

  std::vector<Rat> cost(n + n_slack, 0);
  Rat obj_sign = (model.objective->sense == Sense::Maximize) ? -1 : 1;
  for (int j = 0; j < n; ++j) cost[j] = obj_sign * model.objective->coeffs[j];
  if (!tab.minimize(cost)) {
    out.status = SolveOutcome::Status::Unbounded;
    return out;
  }
  out.status = SolveOutcome::Status::Optimal;
  out.point = tab.extract_point();
  Rat val = 0;
  for (int j = 0; j < n; ++j)
    if (model.objective->coeffs[j] != 0) val += model.objective->coeffs[j] * out.point[j];
  out.value = val;
  if (!model.satisfied_by(out.point, false))
    throw MalformedModelError("internal error: simplex point fails substitution");
  return out;
}

namespace {

// Most fractional integer variable, lowest index on ties.
int pick_branch_var(const LinearModel& model, const std::vector<Rat>& point) {
  int best = -1;
  Rat best_dist = 0;
  for (int j = 0; j < model.variable_count(); ++j) {
    if (!model.integer[j] || is_integral(point[j])) continue;
    Rat frac = point[j] - Rat(floor_rat(point[j]));
    Rat dist = frac <= Rat(1, 2) ? frac : 1 - frac;
    if (best < 0 || dist > best_dist) {
      best = j;
      best_dist = dist;
    }
  }
  return best;
}

struct BnbState {
  const LinearModel* base;
  long budget;
  long nodes = 0;
};

std::optional<std::vector<Rat>> bnb(BnbState& st, LinearModel& work) {
  if (++st.nodes > st.budget) throw NodeBudgetExceededError(st.budget);
  SolveOutcome rel = lp_solve(work);
  if (rel.status == SolveOutcome::Status::Infeasible) return std::nullopt;
  if (rel.status == SolveOutcome::Status::Unbounded)
    throw MalformedModelError("relaxation objective unbounded during branch & bound");
  int j = pick_branch_var(*st.base, rel.point);
  if (j < 0) return rel.point;

  Rat v = rel.point[j];
  std::vector<Rat> unit(work.variable_count(), 0);
  unit[j] = 1;
  {
    work.constraints.push_back({"", unit, Rel::Le, Rat(floor_rat(v))});
    auto r = bnb(st, work);
    work.constraints.pop_back();
    if (r) return r;
  }
  {
    work.constraints.push_back({"", unit, Rel::Ge, Rat(ceil_rat(v))});
    auto r = bnb(st, work);
    work.constraints.pop_back();
    if (r) return r;
  }
  return std::nullopt;
}

}  // namespace

SolveOutcome ilp_feasible(const LinearModel& model, long node_budget) {
  LinearModel work = model;
  if (!work.objective) {
    // Minimize the integer-variable sum: node relaxations then sit at the
    // bottom of the feasible fibers, which keeps branching effective on
    // state-equation models and makes witnesses componentwise small.
    Objective obj;
    obj.sense = Sense::Minimize;
    obj.coeffs.assign(work.variable_count(), 0);
    for (int j = 0; j < work.variable_count(); ++j)
      if (work.integer[j]) obj.coeffs[j] = 1;
    work.objective = obj;
  }
  BnbState st{&model, node_budget};
  auto point = bnb(st, work);
  SolveOutcome out{SolveOutcome::Status::Infeasible, 0, {}, st.nodes};
  if (point) {
    if (!model.satisfied_by(*point, true))
      throw MalformedModelError("internal error: branch & bound point fails substitution");
    out.status = SolveOutcome::Status::Feasible;
    out.point = *point;
  }
  return out;
}

namespace {

// Scales a rational row to coprime integers.
std::pair<std::vector<Int>, Int> scale_row(const std::vector<Rat>& coeffs, const Rat& rhs) {
  Int l = 1;
  for (const auto& c : coeffs) l = boost::multiprecision::lcm(l, rat_den(c));
  l = boost::multiprecision::lcm(l, rat_den(rhs));
  std::vector<Int> out;
  out.reserve(coeffs.size());
  Int g = 0;
  for (const auto& c : coeffs) {
    Int v = rat_num(c) * (l / rat_den(c));
    g = boost::multiprecision::gcd(g, v);
    out.push_back(v);
  }
  Int r = rat_num(rhs) * (l / rat_den(rhs));
  g = boost::multiprecision::gcd(g, r);
  if (g > 1) {
    for (auto& v : out) v /= g;
    r /= g;
  }
  return {out, r};
}

void append_terms(std::ostringstream& os, const std::vector<Int>& coeffs,
                  const std::vector<std::string>& names) {
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    if (first) {
      if (coeffs[j] < 0) os << "- ";
      first = false;
    } else {
      os << (coeffs[j] < 0 ? " - " : " + ");
    }
    Int a = boost::multiprecision::abs(coeffs[j]);
    if (a != 1) os << a << ' ';
    os << names[j];
  }
  if (first) os << "0 " << (names.empty() ? "x" : names[0]);
}

}  // namespace

std::string export_lp(const LinearModel& model, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& line : comments) os << "\\ " << line << '\n';
  if (model.objective && model.objective->sense == Sense::Maximize)
    os << "Maximize\n";
  else
    os << "Minimize\n";
  os << " obj:";
  if (model.objective) {
    auto [row, rhs_unused] = scale_row(model.objective->coeffs, 0);
    (void)rhs_unused;
    os << ' ';
    append_terms(os, row, model.var_names);
  } else {
    os << " 0 " << (model.var_names.empty() ? "x" : model.var_names[0]);
  }
  os << "\nSubject To\n";
  int anon = 0;
  for (const auto& c : model.constraints) {
    auto [row, rhs] = scale_row(c.coeffs, c.rhs);
    std::string name = c.name.empty() ? ("c" + std::to_string(++anon)) : c.name;
    os << ' ' << name << ": ";
    append_terms(os, row, model.var_names);
    os << (c.rel == Rel::Le ? " <= " : c.rel == Rel::Ge ? " >= " : " = ");
    os << rhs << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : model.var_names) os << ' ' << v << " >= 0\n";
  bool any_int = false;
  for (bool b : model.integer) any_int = any_int || b;
  if (any_int) {
    os << "Generals\n";
    for (int j = 0; j < model.variable_count(); ++j)
      if (model.integer[j]) os << ' ' << model.var_names[j] << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace pnet
