#include "pnet/structure.hpp"

#include <algorithm>
#include <functional>

#include "pnet/lp.hpp"

namespace pnet {

std::set<Pid> shared_places(const Net& net) {
  std::set<Pid> out;
  for (Pid p = 0; p < net.place_count(); ++p)
    if (net.place_outputs(p).size() >= 2) out.insert(p);
  return out;
}

namespace {

bool net_homogeneous(const Net& net) {
  for (Pid p = 0; p < net.place_count(); ++p) {
    const auto& outs = net.place_outputs(p);
    for (std::size_t i = 1; i < outs.size(); ++i)
      if (outs[i].second != outs[0].second) return false;
  }
  return true;
}

bool net_unit_weighted(const Net& net) {
  for (Tid t = 0; t < net.transition_count(); ++t) {
    for (const auto& [p, w] : net.pre(t))
      if (w > 1) return false;
    for (const auto& [p, w] : net.post(t))
      if (w > 1) return false;
  }
  return true;
}

bool post_subset(const Net& net, Pid a, Pid b) {
  for (const auto& [t, w] : net.place_outputs(a)) {
    if (net.input_weight(b, t) == 0) return false;
  }
  return true;
}

bool net_wmg_le(const Net& net) {
  for (Pid p = 0; p < net.place_count(); ++p)
    if (net.place_outputs(p).size() > 1 || net.place_inputs(p).size() > 1) return false;
  return true;
}

}  // namespace

bool strongly_connected(const Net& net) {
  // Nodes 0..P-1 are places, P..P+T-1 transitions.
  const int np = net.place_count(), nt = net.transition_count();
  const int n = np + nt;
  if (n == 0) return false;
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (Tid t = 0; t < nt; ++t) {
    for (const auto& [p, w] : net.pre(t)) {
      fwd[p].push_back(np + t);
      bwd[np + t].push_back(p);
    }
    for (const auto& [p, w] : net.post(t)) {
      fwd[np + t].push_back(p);
      bwd[p].push_back(np + t);
    }
  }
  auto reaches_all = [n](const std::vector<std::vector<int>>& g) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g[v])
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  };
  return reaches_all(fwd) && reaches_all(bwd);
}

ClassReport classify(const Net& net) {
  if (!net.non_trivial()) throw PnetError("classify: trivial net");
  ClassReport r;
  r.unit_weighted = net_unit_weighted(net);
  r.homogeneous = net_homogeneous(net);
  r.choice_free = true;
  r.wmg = true;
  r.state_machine = r.unit_weighted;
  for (Pid p = 0; p < net.place_count(); ++p) {
    if (net.place_outputs(p).size() > 1) r.choice_free = false;
    if (net.place_outputs(p).size() != 1 || net.place_inputs(p).size() != 1) r.wmg = false;
  }
  r.wmg_le = net_wmg_le(net);
  r.marked_graph = r.wmg && r.unit_weighted;
  for (Tid t = 0; t < net.transition_count(); ++t)
    if (net.pre(t).size() != 1 || net.post(t).size() != 1) r.state_machine = false;

  auto shared = shared_places(net);
  r.shared_place_count = static_cast<int>(shared.size());
  r.h1s = r.homogeneous && r.shared_place_count <= 1;

  // FC / AC conditions quantify over pairs of input places of each
  // synchronization; nets without synchronizations satisfy them vacuously.
  bool fc = true, ac = true;
  for (Tid t = 0; t < net.transition_count(); ++t) {
    const auto& ins = net.pre(t);
    if (ins.size() < 2) continue;
    for (std::size_t i = 0; i < ins.size() && (fc || ac); ++i)
      for (std::size_t j = i + 1; j < ins.size(); ++j) {
        bool ab = post_subset(net, ins[i].first, ins[j].first);
        bool ba = post_subset(net, ins[j].first, ins[i].first);
        if (!(ab && ba)) fc = false;
        if (!(ab || ba)) ac = false;
      }
  }
  r.hfc = r.homogeneous && fc;
  r.hac = r.homogeneous && ac;

  r.strongly_connected = strongly_connected(net);

  Net reduced = net;
  // Delete shared places from highest index down so indices stay valid.
  for (auto it = shared.rbegin(); it != shared.rend(); ++it) reduced = delete_place(reduced, *it);
  bool reduced_wmg_le = reduced.place_count() == 0 ? true : net_wmg_le(reduced);
  r.h1s_wmg_le = r.h1s && reduced_wmg_le;
  r.wmg_after_shared_deletion_strongly_connected =
      reduced.non_trivial() && net_wmg_le(reduced) && strongly_connected(reduced);
  return r;
}

Net delete_place(const Net& net, Pid p) {
  if (p < 0 || p >= net.place_count()) throw PnetError("delete_place: unknown place");
  Net out;
  for (Pid q = 0; q < net.place_count(); ++q)
    if (q != p) out.add_place(net.place_name(q));
  for (Tid t = 0; t < net.transition_count(); ++t) out.add_transition(net.transition_name(t));
  for (Tid t = 0; t < net.transition_count(); ++t) {
    for (const auto& [q, w] : net.pre(t))
      if (q != p) out.add_input_arc(net.place_name(q), net.transition_name(t), w);
    for (const auto& [q, w] : net.post(t))
      if (q != p) out.add_output_arc(net.transition_name(t), net.place_name(q), w);
  }
  return out;
}

bool is_siphon(const Net& net, const std::set<Pid>& places) {
  if (places.empty()) return false;
  // pre(D) subset of post(D): every transition producing into D consumes from D.
  for (Pid p : places) {
    for (const auto& [t, w] : net.place_inputs(p)) {
      bool consumes = false;
      for (const auto& [q, wq] : net.pre(t))
        if (places.count(q)) {
          consumes = true;
          break;
        }
      if (!consumes) return false;
    }
  }
  return true;
}

namespace {

// Branching closure search: grows D to cover every input transition of D
// (a transition feeding D must also consume from D), branching over the
// candidate covering places. Finds every minimal siphon containing `root`
// and avoiding `excluded`; may also emit non-minimal ones, filtered later.
void siphon_search(const Net& net, std::set<Pid>& d, std::vector<bool>& excluded,
                   std::vector<Siphon>& out, long cap) {
  // Find an uncovered input transition of D.
  Tid uncovered = -1;
  for (Pid p : d) {
    for (const auto& [t, w] : net.place_inputs(p)) {
      bool consumes = false;
      for (const auto& [q, wq] : net.pre(t))
        if (d.count(q)) {
          consumes = true;
          break;
        }
      if (!consumes) {
        uncovered = t;
        break;
      }
    }
    if (uncovered >= 0) break;
  }
  if (uncovered < 0) {
    out.push_back(Siphon{d});
    if (static_cast<long>(out.size()) > cap) throw TruncatedError(cap);
    return;
  }
  std::vector<Pid> candidates;
  for (const auto& [q, w] : net.pre(uncovered))
    if (!excluded[q] && !d.count(q)) candidates.push_back(q);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Pid c = candidates[i];
    d.insert(c);
    siphon_search(net, d, excluded, out, cap);
    d.erase(c);
    excluded[c] = true;
  }
  for (Pid c : candidates) excluded[c] = false;
}

}  // namespace

std::vector<Siphon> minimal_siphons(const Net& net, long cap) {
  if (cap < 1) throw PnetError("minimal_siphons: cap must be >= 1");
  std::vector<Siphon> raw;
  std::vector<bool> excluded(net.place_count(), false);
  for (Pid p = 0; p < net.place_count(); ++p) {
    // Siphons whose smallest member is p: smaller places stay excluded.
    std::set<Pid> d{p};
    siphon_search(net, d, excluded, raw, cap);
    excluded[p] = true;
  }
  // Subset-minimality filter.
  std::sort(raw.begin(), raw.end(), [](const Siphon& a, const Siphon& b) {
    if (a.places.size() != b.places.size()) return a.places.size() < b.places.size();
    return a.places < b.places;
  });
  raw.erase(std::unique(raw.begin(), raw.end(),
                        [](const Siphon& a, const Siphon& b) { return a.places == b.places; }),
            raw.end());
  std::vector<Siphon> out;
  for (const auto& s : raw) {
    bool has_subset = false;
    for (const auto& kept : out) {
      if (std::includes(s.places.begin(), s.places.end(), kept.places.begin(),
                        kept.places.end())) {
        has_subset = true;
        break;
      }
    }
    if (!has_subset) out.push_back(s);
  }
  return out;
}

bool is_deadlocked_siphon(const Net& net, const Marking& m, const Siphon& d) {
  if (!is_siphon(net, d.places)) throw NotASiphonError("the given place set is not a siphon");
  for (Pid p : d.places)
    for (const auto& [t, w] : net.place_outputs(p))
      if (m[p] >= w) return false;
  return true;
}

bool is_deadlocked_siphon(const System& s, const Siphon& d) {
  return is_deadlocked_siphon(s.net, s.initial, d);
}

namespace {

struct FmRow {
  IVec combo;  // coefficients over the original rows (the semiflow candidate)
  IVec rest;   // remaining matrix entries for the columns not yet eliminated
};

void normalize(FmRow& r) {
  Int g = 0;
  for (const auto& x : r.combo) g = boost::multiprecision::gcd(g, x);
  for (const auto& x : r.rest) g = boost::multiprecision::gcd(g, x);
  if (g > 1) {
    for (auto& x : r.combo) x /= g;
    for (auto& x : r.rest) x /= g;
  }
}

// Drops rows whose combo support strictly contains another row's support,
// and exact duplicates. Strict-superset elimination is the classical
// minimal-support filter; equal supports with different vectors are kept.
std::vector<FmRow> filter_minimal_support(std::vector<FmRow> rows) {
  auto supp = [](const IVec& v) {
    std::vector<int> s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) s.push_back(static_cast<int>(i));
    return s;
  };
  std::vector<std::vector<int>> supports;
  supports.reserve(rows.size());
  for (const auto& r : rows) supports.push_back(supp(r.combo));
  std::vector<FmRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < rows.size() && keep; ++j) {
      if (i == j) continue;
      if (supports[j].size() < supports[i].size() &&
          std::includes(supports[i].begin(), supports[i].end(), supports[j].begin(),
                        supports[j].end()))
        keep = false;
      if (j < i && rows[j].combo == rows[i].combo && rows[j].rest == rows[i].rest)
        keep = false;  // exact duplicate
    }
    if (keep) out.push_back(rows[i]);
  }
  return out;
}

}  // namespace

std::vector<Semiflow> semiflows(const Net& net, SemiflowKind kind, long cap) {
  if (cap < 1) throw PnetError("semiflows: cap must be >= 1");
  IncidenceMatrix I = incidence(net);
  // For P-semiflows rows are places, columns transitions; T-semiflows work
  // on the transpose.
  int nrows = (kind == SemiflowKind::P) ? net.place_count() : net.transition_count();
  int ncols = (kind == SemiflowKind::P) ? net.transition_count() : net.place_count();
  std::vector<FmRow> rows(nrows);
  for (int i = 0; i < nrows; ++i) {
    rows[i].combo.assign(nrows, 0);
    rows[i].combo[i] = 1;
    rows[i].rest.assign(ncols, 0);
    for (int j = 0; j < ncols; ++j)
      rows[i].rest[j] = (kind == SemiflowKind::P) ? I.rows[i][j] : I.rows[j][i];
  }
  for (int col = 0; col < ncols; ++col) {
    std::vector<FmRow> next;
    std::vector<const FmRow*> pos, neg;
    for (const auto& r : rows) {
      if (r.rest[col] > 0)
        pos.push_back(&r);
      else if (r.rest[col] < 0)
        neg.push_back(&r);
      else
        next.push_back(r);
    }
    for (const auto* rp : pos)
      for (const auto* rn : neg) {
        FmRow combined;
        Int a = -rn->rest[col];  // > 0
        Int b = rp->rest[col];   // > 0
        combined.combo.resize(nrows);
        for (int i = 0; i < nrows; ++i) combined.combo[i] = a * rp->combo[i] + b * rn->combo[i];
        combined.rest.resize(ncols);
        for (int j = 0; j < ncols; ++j) combined.rest[j] = a * rp->rest[j] + b * rn->rest[j];
        normalize(combined);
        next.push_back(std::move(combined));
        if (static_cast<long>(next.size()) > cap) throw TruncatedError(cap);
      }
    rows = filter_minimal_support(std::move(next));
    if (static_cast<long>(rows.size()) > cap) throw TruncatedError(cap);
  }
  rows = filter_minimal_support(std::move(rows));
  std::vector<Semiflow> out;
  for (auto& r : rows) {
    bool nonneg = all_nonnegative(r.combo);
    if (!nonneg || is_zero(r.combo)) continue;
    // Verify the kernel equation exactly.
    IVec check = (kind == SemiflowKind::P) ? I.transpose_times(r.combo) : I.times(r.combo);
    if (!is_zero(check)) throw PnetError("internal error: semiflow fails kernel equation");
    out.push_back(Semiflow{kind, r.combo, true});
  }
  std::sort(out.begin(), out.end(),
            [](const Semiflow& a, const Semiflow& b) { return a.vector < b.vector; });
  return out;
}

namespace {

// Feasibility of { v >= 1, A^T v = 0 } scaled to integers, where A is given
// row-wise; returns the integer witness.
std::optional<IVec> kernel_witness_ge1(const IncidenceMatrix& I, bool transpose) {
  int n = transpose ? I.place_count() : I.transition_count();      // variables
  int m = transpose ? I.transition_count() : I.place_count();      // equations
  LinearModel model;
  for (int j = 0; j < n; ++j) model.add_variable("v" + std::to_string(j), false);
  for (int i = 0; i < m; ++i) {
    LinearConstraint c;
    c.coeffs.assign(n, 0);
    for (int j = 0; j < n; ++j) c.coeffs[j] = Rat(transpose ? I.rows[j][i] : I.rows[i][j]);
    c.rel = Rel::Eq;
    c.rhs = 0;
    model.add_constraint(std::move(c));
  }
  for (int j = 0; j < n; ++j) {
    LinearConstraint c;
    c.coeffs.assign(n, 0);
    c.coeffs[j] = 1;
    c.rel = Rel::Ge;
    c.rhs = 1;
    model.add_constraint(std::move(c));
  }
  SolveOutcome r = lp_solve(model);
  if (r.status != SolveOutcome::Status::Feasible && r.status != SolveOutcome::Status::Optimal)
    return std::nullopt;
  Int l = 1;
  for (const auto& x : r.point) l = boost::multiprecision::lcm(l, rat_den(x));
  IVec out(n);
  for (int j = 0; j < n; ++j) out[j] = rat_num(r.point[j]) * (l / rat_den(r.point[j]));
  return out;
}

}  // namespace

std::optional<IVec> conservativeness(const Net& net) {
  return kernel_witness_ge1(incidence(net), /*transpose=*/true);
}

std::optional<IVec> consistency(const Net& net) {
  return kernel_witness_ge1(incidence(net), /*transpose=*/false);
}

bool structurally_bounded(const Net& net) {
  IncidenceMatrix I = incidence(net);
  const int nt = net.transition_count(), np = net.place_count();
  // Unbounded iff some Y >= 0 with I Y >= 0, I Y != 0; by scaling this is
  // feasibility of { Y >= 0, I Y >= 0, sum(I Y) >= 1 }.
  LinearModel model;
  for (int t = 0; t < nt; ++t) model.add_variable("y" + std::to_string(t), false);
  for (int p = 0; p < np; ++p) {
    LinearConstraint c;
    c.coeffs.assign(nt, 0);
    for (int t = 0; t < nt; ++t) c.coeffs[t] = Rat(I.rows[p][t]);
    c.rel = Rel::Ge;
    c.rhs = 0;
    model.add_constraint(std::move(c));
  }
  LinearConstraint total;
  total.coeffs.assign(nt, 0);
  for (int t = 0; t < nt; ++t) {
    Int s = 0;
    for (int p = 0; p < np; ++p) s += I.rows[p][t];
    total.coeffs[t] = Rat(s);
  }
  total.rel = Rel::Ge;
  total.rhs = 1;
  model.add_constraint(std::move(total));
  SolveOutcome r = lp_solve(model);
  return r.status == SolveOutcome::Status::Infeasible;
}

StructuralBoundEstimate structural_bound_upper(const System& s, Pid p) {
  const Net& net = s.net;
  if (p < 0 || p >= net.place_count()) throw PnetError("structural_bound_upper: unknown place");
  IncidenceMatrix I = incidence(net);
  const int np = net.place_count(), nt = net.transition_count();
  // Variables: M (per place), Y (per transition), all rational here.
  LinearModel model;
  for (int q = 0; q < np; ++q) model.add_variable("m" + std::to_string(q), false);
  for (int t = 0; t < nt; ++t) model.add_variable("y" + std::to_string(t), false);
  for (int q = 0; q < np; ++q) {
    LinearConstraint c;
    c.coeffs.assign(np + nt, 0);
    c.coeffs[q] = 1;
    for (int t = 0; t < nt; ++t) c.coeffs[np + t] = Rat(-I.rows[q][t]);
    c.rel = Rel::Eq;
    c.rhs = Rat(s.initial[q]);
    model.add_constraint(std::move(c));
  }
  Objective obj;
  obj.sense = Sense::Maximize;
  obj.coeffs.assign(np + nt, 0);
  obj.coeffs[p] = 1;
  model.objective = obj;
  SolveOutcome r = lp_solve(model);
  StructuralBoundEstimate est{p, std::nullopt};
  if (r.status == SolveOutcome::Status::Optimal) est.upper = ceil_rat(r.value);
  if (r.status == SolveOutcome::Status::Infeasible)
    throw PnetError("internal error: PR relaxation infeasible at M0");
  return est;
}

System p_subsystem(const System& s, const std::set<Pid>& places) {
  const Net& net = s.net;
  for (Pid p : places)
    if (p < 0 || p >= net.place_count()) throw PnetError("p_subsystem: unknown place");
  std::set<Tid> trans;
  for (Pid p : places) {
    for (const auto& [t, w] : net.place_inputs(p)) trans.insert(t);
    for (const auto& [t, w] : net.place_outputs(p)) trans.insert(t);
  }
  Net sub;
  Marking m0;
  for (Pid p = 0; p < net.place_count(); ++p)
    if (places.count(p)) {
      sub.add_place(net.place_name(p));
      m0.push_back(s.initial[p]);
    }
  for (Tid t = 0; t < net.transition_count(); ++t)
    if (trans.count(t)) sub.add_transition(net.transition_name(t));
  for (Tid t = 0; t < net.transition_count(); ++t) {
    if (!trans.count(t)) continue;
    for (const auto& [p, w] : net.pre(t))
      if (places.count(p)) sub.add_input_arc(net.place_name(p), net.transition_name(t), w);
    for (const auto& [p, w] : net.post(t))
      if (places.count(p)) sub.add_output_arc(net.transition_name(t), net.place_name(p), w);
  }
  return System(std::move(sub), std::move(m0));
}

}  // namespace pnet
