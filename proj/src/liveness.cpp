#include "pnet/liveness.hpp"

#include <algorithm>

namespace pnet {

bool ThetaResult::is_new_transition(Tid t) const {
  for (const auto& pr : pairs)
    if (pr.t_p == t) return true;
  return false;
}

std::vector<Tid> ThetaResult::new_trans_pre(Tid t) const {
  // New transitions t_p with output p_a feeding t.
  std::vector<std::pair<std::string, Tid>> named;
  for (const auto& pr : pairs) {
    if (transformed.net.input_weight(pr.p_a, t) > 0)
      named.push_back({transformed.net.transition_name(pr.t_p), pr.t_p});
  }
  std::sort(named.begin(), named.end());  // increasing label order
  std::vector<Tid> out;
  for (auto& [name, id] : named) out.push_back(id);
  return out;
}

namespace {

std::string fresh_name(const Net& net, std::string base) {
  while (net.find_place(base) || net.find_transition(base)) base += "_";
  return base;
}

}  // namespace

ThetaResult theta_transform(const System& s) {
  const Net& net = s.net;
  // Snapshot the pairs first: rewriting creates new (p, t_p) pairs that the
  // loop must not revisit.
  std::vector<std::pair<Pid, Tid>> pairs;
  for (Pid p = 0; p < net.place_count(); ++p) {
    const auto& outs = net.place_outputs(p);
    if (outs.size() != 1) continue;
    Tid t = outs[0].first;
    if (net.pre(t).size() >= 2) pairs.push_back({p, t});
  }
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    if (net.place_name(a.first) != net.place_name(b.first))
      return net.place_name(a.first) < net.place_name(b.first);
    return net.transition_name(a.second) < net.transition_name(b.second);
  });

  ThetaResult out;
  Net tn;
  Marking tm;
  for (Pid p = 0; p < net.place_count(); ++p) {
    out.place_map.push_back(tn.add_place(net.place_name(p)));
    tm.push_back(s.initial[p]);
  }
  for (Tid t = 0; t < net.transition_count(); ++t)
    out.trans_map.push_back(tn.add_transition(net.transition_name(t)));

  std::map<std::pair<Pid, Tid>, bool> rewritten;
  for (const auto& pr : pairs) rewritten[pr] = true;

  // Copy all arcs except the rewritten (p,t) input arcs.
  for (Tid t = 0; t < net.transition_count(); ++t) {
    for (const auto& [p, w] : net.pre(t))
      if (!rewritten.count({p, t})) tn.add_input_arc(p, t, w);
    for (const auto& [p, w] : net.post(t)) tn.add_output_arc(t, p, w);
  }

  for (const auto& [p, t] : pairs) {
    const std::string& pn = net.place_name(p);
    const std::string& tname = net.transition_name(t);
    Pid pa = tn.add_place(fresh_name(tn, "pa_" + pn + "_" + tname));
    Pid pb = tn.add_place(fresh_name(tn, "pb_" + pn + "_" + tname));
    Tid tp = tn.add_transition(fresh_name(tn, "tp_" + pn + "_" + tname));
    tm.push_back(0);  // p_a
    tm.push_back(1);  // p_b
    tn.add_input_arc(p, tp, net.input_weight(p, t));
    tn.add_output_arc(tp, pa, 1);
    tn.add_input_arc(pa, t, 1);
    tn.add_output_arc(t, pb, 1);
    tn.add_input_arc(pb, tp, 1);
    out.pairs.push_back(ThetaPair{p, t, pa, pb, tp});
  }
  out.transformed = System(std::move(tn), std::move(tm));
  return out;
}

FiringSequence expand_sequence(const ThetaResult& theta, const FiringSequence& alpha) {
  FiringSequence out;
  for (Tid t : alpha) {
    Tid tt = theta.trans_map.at(t);
    for (Tid tp : theta.new_trans_pre(tt)) out.push_back(tp);
    out.push_back(tt);
  }
  if (!feasible(theta.transformed.net, theta.transformed.initial, out))
    throw PnetError("expand_sequence: expanded sequence is not feasible (alpha infeasible?)");
  return out;
}

FiringSequence reduce_sequence(const ThetaResult& theta, const FiringSequence& beta) {
  if (!feasible(theta.transformed.net, theta.transformed.initial, beta))
    throw PnetError("reduce_sequence: beta is not feasible in the transformed system");
  std::vector<bool> drop(beta.size(), false);
  for (const auto& pr : theta.pairs) {
    // Last occurrence of t_p with no occurrence of its target t after it.
    int last = -1;
    for (std::size_t i = 0; i < beta.size(); ++i)
      if (beta[i] == pr.t_p) last = static_cast<int>(i);
    if (last < 0) continue;
    Tid target = theta.trans_map.at(pr.t);
    bool target_after = false;
    for (std::size_t i = last + 1; i < beta.size(); ++i)
      if (beta[i] == target) {
        target_after = true;
        break;
      }
    if (!target_after) drop[last] = true;
  }
  FiringSequence out;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (!drop[i]) out.push_back(beta[i]);
  if (!feasible(theta.transformed.net, theta.transformed.initial, out))
    throw PnetError("reduce_sequence: reduced sequence lost feasibility");
  return out;
}

std::vector<LinearConstraint> nonfireability_constraints(const System& system_theta,
                                                         const std::vector<Int>& bounds,
                                                         int marking_var_offset,
                                                         int total_vars) {
  const Net& net = system_theta.net;
  if (static_cast<int>(bounds.size()) != net.place_count())
    throw PnetError("nonfireability_constraints: bounds size mismatch");
  std::vector<LinearConstraint> out;
  for (Tid t = 0; t < net.transition_count(); ++t) {
    const auto& ins = net.pre(t);
    LinearConstraint c;
    c.name = "nonfire_" + net.transition_name(t);
    c.coeffs.assign(total_vars, 0);
    c.rel = Rel::Le;
    if (ins.empty()) {
      // A transition without inputs is always enabled: no deadlock can
      // satisfy this row (0 <= -1).
      c.rhs = -1;
      out.push_back(std::move(c));
      continue;
    }
    // Input places whose bound exceeds the arc weight need the weighted
    // form; at most one such place may exist (guaranteed after the
    // transformation for 1S systems).
    std::vector<std::pair<Pid, Int>> big;
    for (const auto& [p, w] : ins)
      if (bounds[p] > w) big.push_back({p, w});
    if (big.size() >= 2)
      throw MultipleUnboundedInputsError(
          "transition '" + net.transition_name(t) + "' has " + std::to_string(big.size()) +
              " input places with structural bound above the arc weight",
          t);
    if (ins.size() == 1) {
      // Single input p': M(p') <= W(p',t) - 1.
      c.coeffs[marking_var_offset + ins[0].first] = 1;
      c.rhs = Rat(ins[0].second - 1);
    } else if (big.empty()) {
      // All inputs bounded by their weights: sum M(p) <= sum W(p,t) - 1.
      Int rhs = -1;
      for (const auto& [p, w] : ins) {
        c.coeffs[marking_var_offset + p] = 1;
        rhs += w;
      }
      c.rhs = Rat(rhs);
    } else {
      // SB(p') sum_{p in pi} M(p) + M(p') <= SB(p') sum W(p,t) + W(p',t) - 1.
      Pid pp = big[0].first;
      Int wpp = big[0].second;
      Int sb = bounds[pp];
      Int rhs = wpp - 1;
      for (const auto& [p, w] : ins) {
        if (p == pp) continue;
        c.coeffs[marking_var_offset + p] = Rat(sb);
        rhs += sb * w;
      }
      c.coeffs[marking_var_offset + pp] += 1;
      c.rhs = Rat(rhs);
    }
    out.push_back(std::move(c));
  }
  return out;
}

DeadlockIlp deadlock_ilp(const System& s) {
  ClassReport cls = classify(s.net);
  if (!cls.h1s_wmg_le)
    throw NotApplicableError("deadlock_ilp: system is not an H1S-WMG<=");
  if (!cls.strongly_connected)
    throw NotApplicableError("deadlock_ilp: net is not strongly connected");
  if (!cls.wmg_after_shared_deletion_strongly_connected)
    throw NotApplicableError(
        "deadlock_ilp: deleting the shared place does not leave a strongly connected WMG<=");
  if (!structurally_bounded(s.net))
    throw NotApplicableError("deadlock_ilp: net is not structurally bounded");

  DeadlockIlp out;
  out.theta = theta_transform(s);
  const System& st = out.theta.transformed;
  const Net& net = st.net;
  const int np = net.place_count(), nt = net.transition_count();

  for (Pid p = 0; p < np; ++p) {
    StructuralBoundEstimate est = structural_bound_upper(st, p);
    if (!est.upper)
      throw NotApplicableError("deadlock_ilp: place '" + net.place_name(p) +
                               "' has no finite structural bound");
    out.bounds.push_back(*est.upper);
  }

  LinearModel& model = out.model;
  out.marking_offset = 0;
  for (Pid p = 0; p < np; ++p) model.add_variable("m_" + net.place_name(p), true);
  out.parikh_offset = np;
  for (Tid t = 0; t < nt; ++t) model.add_variable("y_" + net.transition_name(t), true);

  IncidenceMatrix I = incidence(net);
  for (Pid p = 0; p < np; ++p) {
    LinearConstraint c;
    c.name = "state_" + net.place_name(p);
    c.coeffs.assign(np + nt, 0);
    c.coeffs[p] = 1;
    for (Tid t = 0; t < nt; ++t) c.coeffs[np + t] = Rat(-I.rows[p][t]);
    c.rel = Rel::Eq;
    c.rhs = Rat(st.initial[p]);
    model.add_constraint(std::move(c));
  }
  for (auto& c : nonfireability_constraints(st, out.bounds, 0, np + nt))
    model.add_constraint(std::move(c));
  for (Pid p = 0; p < np; ++p) {
    LinearConstraint c;
    c.name = "sb_" + net.place_name(p);
    c.coeffs.assign(np + nt, 0);
    c.coeffs[p] = 1;
    c.rel = Rel::Le;
    c.rhs = Rat(out.bounds[p]);
    model.add_constraint(std::move(c));
  }
  return out;
}

LivenessVerdict check_liveness(const System& s, long node_budget) {
  LivenessVerdict v{LivenessVerdict::Status::Inconclusive, std::nullopt, std::nullopt, "", 0};
  DeadlockIlp ilp;
  try {
    ilp = deadlock_ilp(s);
  } catch (const NotApplicableError& e) {
    v.status = LivenessVerdict::Status::NotApplicable;
    v.reason = e.what();
    return v;
  }
  SolveOutcome r;
  try {
    r = ilp_feasible(ilp.model, node_budget);
  } catch (const NodeBudgetExceededError& e) {
    v.status = LivenessVerdict::Status::Inconclusive;
    v.reason = e.what();
    return v;
  }
  v.ilp_nodes = r.node_count;
  if (r.status == SolveOutcome::Status::Infeasible) {
    v.status = LivenessVerdict::Status::Live;
    return v;
  }

  // Project the transformed witness back: keep original transitions' firing
  // counts and rebuild the marking through the original state equation (the
  // token committed into a gadget's p_a flows back into p). Then re-validate.
  const int np0 = s.net.place_count(), nt0 = s.net.transition_count();
  ParikhVector y(nt0);
  for (Tid t = 0; t < nt0; ++t)
    y[t] = rat_num(r.point[ilp.parikh_offset + ilp.theta.trans_map[t]]);
  IncidenceMatrix I = incidence(s.net);
  Marking m = add(s.initial, I.times(y));
  if (!all_nonnegative(m) || !is_deadlock(s.net, m)) {
    v.status = LivenessVerdict::Status::Inconclusive;
    v.reason = "witness projection failed re-validation";
    return v;
  }
  (void)np0;
  v.status = LivenessVerdict::Status::NonLive;
  v.deadlock = m;
  v.firing_count = y;
  return v;
}

LinearModel siphon_deadlock_ilp(const System& s, const Siphon& d) {
  if (!is_siphon(s.net, d.places))
    throw NotASiphonError("siphon_deadlock_ilp: the given place set is not a siphon");
  const Net& net = s.net;
  const int np = net.place_count(), nt = net.transition_count();
  LinearModel model;
  for (Pid p = 0; p < np; ++p) model.add_variable("m_" + net.place_name(p), true);
  for (Tid t = 0; t < nt; ++t) model.add_variable("y_" + net.transition_name(t), true);
  IncidenceMatrix I = incidence(net);
  for (Pid p = 0; p < np; ++p) {
    LinearConstraint c;
    c.name = "state_" + net.place_name(p);
    c.coeffs.assign(np + nt, 0);
    c.coeffs[p] = 1;
    for (Tid t = 0; t < nt; ++t) c.coeffs[np + t] = Rat(-I.rows[p][t]);
    c.rel = Rel::Eq;
    c.rhs = Rat(s.initial[p]);
    model.add_constraint(std::move(c));
  }
  for (Pid p : d.places) {
    const auto& outs = net.place_outputs(p);
    if (outs.empty()) continue;  // no condition
    Int min_w = outs[0].second;
    for (const auto& [t, w] : outs) min_w = std::min(min_w, w);
    LinearConstraint c;
    c.name = "empty_" + net.place_name(p);
    c.coeffs.assign(np + nt, 0);
    c.coeffs[p] = 1;
    c.rel = Rel::Le;
    c.rhs = Rat(min_w - 1);
    model.add_constraint(std::move(c));
  }
  return model;
}

}  // namespace pnet
