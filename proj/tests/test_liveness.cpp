#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "pnet/dsl.hpp"
#include "pnet/liveness.hpp"
#include "pnet/models.hpp"

using namespace pnet;

namespace {

const System& fx(const std::string& name) { return fixtures().at(name).system; }

const ThetaPair& pair_for(const ThetaResult& th, const std::string& p, const std::string& t) {
  for (const auto& pr : th.pairs) {
    const Net& net = th.transformed.net;  // original names survive unchanged
    if (net.place_name(pr.p) == p && net.transition_name(pr.t) == t) return pr;
  }
  REQUIRE(false);
  throw PnetError("unreachable");
}

void check_theta_invariants(const System& s, const ThetaResult& th) {
  const Net& tn = th.transformed.net;
  for (const auto& pr : th.pairs) {
    // Original arc gone, weight moved onto the relay transition.
    CHECK(tn.input_weight(pr.p, pr.t) == 0);
    CHECK(tn.input_weight(pr.p, pr.t_p) == s.net.input_weight(pr.p, pr.t));
    CHECK(tn.output_weight(pr.t_p, pr.p_a) == 1);
    CHECK(tn.input_weight(pr.p_a, pr.t) == 1);
    CHECK(tn.output_weight(pr.t, pr.p_b) == 1);
    CHECK(tn.input_weight(pr.p_b, pr.t_p) == 1);
    CHECK(th.transformed.initial[pr.p_a] == 0);
    CHECK(th.transformed.initial[pr.p_b] == 1);
  }
}

}  // namespace

TEST_CASE("theta_transform: fig10 rewrites exactly one pair") {
  const System& s = fx("fig10");
  ThetaResult th = theta_transform(s);
  REQUIRE(th.pairs.size() == 1);
  const ThetaPair& pr = pair_for(th, "p", "t");
  CHECK(th.transformed.net.place_count() == 4);
  CHECK(th.transformed.net.transition_count() == 3);
  check_theta_invariants(s, th);
  // The shared place keeps its arcs.
  const Net& tn = th.transformed.net;
  CHECK(tn.input_weight(tn.place("pp"), tn.transition("t")) == 3);
  CHECK(tn.input_weight(tn.place("pp"), tn.transition("tprime")) == 1);
  CHECK(pr.p == s.net.place("p"));
}

TEST_CASE("theta_transform: fig11 rewrites (p2,t2) and (p4,t4)") {
  const System& s = fx("fig11");
  ThetaResult th = theta_transform(s);
  REQUIRE(th.pairs.size() == 2);
  pair_for(th, "p2", "t2");
  pair_for(th, "p4", "t4");
  check_theta_invariants(s, th);
  // 1S in, 1S out.
  CHECK(shared_places(s.net).size() == 1);
  CHECK(shared_places(th.transformed.net).size() == 1);
}

TEST_CASE("theta_transform: identity when no transition has two inputs") {
  const System& s = fx("fig6");
  ThetaResult th = theta_transform(s);
  CHECK(th.pairs.empty());
  CHECK(th.transformed.net.place_count() == s.net.place_count());
  CHECK(th.transformed.net.transition_count() == s.net.transition_count());
}

TEST_CASE("theta_transform rewrites synchronizations of weighted nets too") {
  // fig1's t2 consumes from two single-output places: both pairs rewritten.
  ThetaResult th = theta_transform(fx("fig1"));
  CHECK(th.pairs.size() == 2);
  check_theta_invariants(fx("fig1"), th);
}

TEST_CASE("theta class preservation on fixtures and swimming pool") {
  for (const auto& sys :
       {gen_swimming_pool(1, 1, 1), gen_swimming_pool(2, 1, 1), fx("fig3_left")}) {
    ClassReport before = classify(sys.net);
    ThetaResult th = theta_transform(sys);
    ClassReport after = classify(th.transformed.net);
    if (before.h1s) CHECK(after.h1s);
    if (before.homogeneous) CHECK(after.homogeneous);
    if (before.h1s_wmg_le) CHECK(after.h1s_wmg_le);
    if (before.strongly_connected && before.h1s_wmg_le &&
        before.wmg_after_shared_deletion_strongly_connected) {
      CHECK(after.strongly_connected);
      CHECK(after.wmg_after_shared_deletion_strongly_connected);
    }
  }
}

TEST_CASE("expand_sequence: fig10 and boundary") {
  const System& s = fx("fig10");
  ThetaResult th = theta_transform(s);
  CHECK(expand_sequence(th, {}).empty());
  Tid t = s.net.transition("t");
  FiringSequence expanded = expand_sequence(th, {t});
  REQUIRE(expanded.size() == 2);
  CHECK(expanded[0] == th.pairs[0].t_p);
  CHECK(expanded[1] == th.trans_map[t]);
}

TEST_CASE("expand_sequence replay on random feasible sequences") {
  testgen::Rng rng(501);
  std::vector<System> hosts{gen_swimming_pool(2, 1, 1), fx("fig11"), fx("fig3_left")};
  for (const auto& host : hosts) {
    ThetaResult th = theta_transform(host);
    for (int i = 0; i < 30; ++i) {
      FiringSequence alpha = testgen::random_walk(rng, host, 12);
      FiringSequence beta = expand_sequence(th, alpha);  // validates feasibility internally
      CHECK(feasible(th.transformed.net, th.transformed.initial, beta));
    }
  }
}

TEST_CASE("reduce_sequence: the three-relay example") {
  // t1 consumes p1 and q1; t2 consumes p2, p3 and q2. q1, q2 are shared
  // (second consumer u1/u2) so only p1, p2, p3 are rewritten.
  System s = parse_net(
      "place p1 init 2\nplace p2 init 2\nplace p3 init 2\n"
      "place q1 init 2\nplace q2 init 2\n"
      "trans t1\ntrans t2\ntrans u1\ntrans u2\n"
      "arc p1 -> t1\narc q1 -> t1\n"
      "arc p2 -> t2\narc p3 -> t2\narc q2 -> t2\n"
      "arc q1 -> u1\narc q2 -> u2\n");
  ThetaResult th = theta_transform(s);
  REQUIRE(th.pairs.size() == 3);
  Tid tp1 = pair_for(th, "p1", "t1").t_p;
  Tid tp2 = pair_for(th, "p2", "t2").t_p;
  Tid tp3 = pair_for(th, "p3", "t2").t_p;
  const Net& tn = th.transformed.net;
  Tid t1 = tn.transition("t1"), t2 = tn.transition("t2");

  FiringSequence beta{tp2, tp3, tp1, t1, tp1, t2, tp3, tp2};
  REQUIRE(feasible(tn, th.transformed.initial, beta));
  FiringSequence reduced = reduce_sequence(th, beta);
  CHECK(reduced == FiringSequence{tp2, tp3, tp1, t1, t2});

  // No trailing relay occurrence: unchanged.
  FiringSequence plain{tp1, t1};
  CHECK(reduce_sequence(th, plain) == plain);
}

TEST_CASE("reduce_sequence replay on random feasible sequences") {
  testgen::Rng rng(502);
  System host = gen_swimming_pool(2, 2, 1);
  ThetaResult th = theta_transform(host);
  for (int i = 0; i < 40; ++i) {
    FiringSequence beta = testgen::random_walk(rng, th.transformed, 14);
    FiringSequence reduced = reduce_sequence(th, beta);
    CHECK(feasible(th.transformed.net, th.transformed.initial, reduced));
    CHECK(reduced.size() <= beta.size());
  }
}

TEST_CASE("nonfireability constraint shapes on the swimming pool") {
  System sp = gen_swimming_pool(2, 2, 2);
  DeadlockIlp ilp = deadlock_ilp(sp);
  const Net& tn = ilp.theta.transformed.net;
  const int np = tn.place_count();
  REQUIRE(ilp.theta.pairs.size() == 4);

  auto find_row = [&](const std::string& name) -> const LinearConstraint& {
    for (const auto& c : ilp.model.constraints)
      if (c.name == name) return c;
    REQUIRE(false);
    throw PnetError("unreachable");
  };
  auto nonzero_marking_coeffs = [&](const LinearConstraint& c) {
    std::vector<std::pair<std::string, Rat>> out;
    for (Pid p = 0; p < np; ++p)
      if (c.coeffs[p] != 0) out.push_back({tn.place_name(p), c.coeffs[p]});
    return out;
  };

  // One nonfire row per transition of the transformed system.
  int nonfire_rows = 0;
  for (const auto& c : ilp.model.constraints)
    if (c.name.rfind("nonfire_", 0) == 0) ++nonfire_rows;
  CHECK(nonfire_rows == tn.transition_count());

  // Single-input transitions: M(p) = 0 (encoded as <= 0).
  for (const char* row : {"nonfire_Enter", "nonfire_RelK", "nonfire_RelB", "nonfire_RelK2"}) {
    const auto& c = find_row(row);
    auto nz = nonzero_marking_coeffs(c);
    REQUIRE(nz.size() == 1);
    CHECK(nz[0].second == 1);
    CHECK(c.rhs == 0);
    CHECK(c.rel == Rel::Le);
  }

  // GetB: both rewritten inputs have structural bound 1: the two-term
  // bounded-sum form M(pa) + M(pa') < 2, i.e. <= 1.
  {
    const auto& c = find_row("nonfire_GetB");
    auto nz = nonzero_marking_coeffs(c);
    REQUIRE(nz.size() == 2);
    CHECK(nz[0].second == 1);
    CHECK(nz[1].second == 1);
    CHECK(c.rhs == 1);
  }

  // GetK / GetK2: shared place with bound above its weight: the weighted
  // form SB(Cabins) M(p_a) + M(Cabins) <= SB(Cabins) W(p_a, .) + W(Cabins, .) - 1.
  Pid cabins = tn.place("Cabins");
  Rat sb = Rat(ilp.bounds[cabins]);
  REQUIRE(sb >= 2);
  for (const char* row : {"nonfire_GetK", "nonfire_GetK2"}) {
    const auto& c = find_row(row);
    auto nz = nonzero_marking_coeffs(c);
    REQUIRE(nz.size() == 2);
    bool saw_cabins = false, saw_relay = false;
    for (auto& [name, coeff] : nz) {
      if (name == "Cabins") {
        CHECK(coeff == 1);
        saw_cabins = true;
      } else {
        CHECK(coeff == sb);
        CHECK(name.rfind("pa_", 0) == 0);
        saw_relay = true;
      }
    }
    CHECK(saw_cabins);
    CHECK(saw_relay);
    CHECK(c.rhs == sb * 1 + 1 - 1);
  }

  // Relay transitions: SB(p) M(p_b) + M(p) <= SB(p) + W(p, t_p) - 1.
  for (const auto& pr : ilp.theta.pairs) {
    const auto& c = find_row("nonfire_" + tn.transition_name(pr.t_p));
    CHECK(c.coeffs[pr.p_b] == Rat(ilp.bounds[pr.p]));
    CHECK(c.coeffs[pr.p] == 1);
    CHECK(c.rhs == Rat(ilp.bounds[pr.p]) + Rat(tn.input_weight(pr.p, pr.t_p)) - 1);
  }

  // New places have structural bound exactly 1.
  for (const auto& pr : ilp.theta.pairs) {
    CHECK(ilp.bounds[pr.p_a] == 1);
    CHECK(ilp.bounds[pr.p_b] == 1);
  }

  // Model size: state equation rows + one nonfire row per transition +
  // per-place bound rows.
  CHECK(ilp.model.constraints.size() <=
        static_cast<std::size_t>(2 * tn.place_count() + tn.transition_count()));
}

TEST_CASE("nonfireability rejects two above-bound inputs") {
  System s = parse_net(
      "place p1 init 3\nplace p2 init 3\n"
      "trans t\ntrans u\ntrans v\n"
      "arc p1 -> t\narc p2 -> t\narc p1 -> u\narc p2 -> v\n");
  // Both p1 and p2 are shared, so theta leaves them alone; both have bound
  // 3 > 1.
  ThetaResult th = theta_transform(s);
  CHECK(th.pairs.empty());
  std::vector<Int> bounds{3, 3};
  CHECK_THROWS_AS(nonfireability_constraints(th.transformed, bounds, 0, 2),
                  MultipleUnboundedInputsError);
}

TEST_CASE("deadlock_ilp gate") {
  CHECK_THROWS_AS(deadlock_ilp(fx("fig8")), NotApplicableError);   // not WMG<= after deletion
  CHECK_THROWS_AS(deadlock_ilp(fx("fig21")), NotApplicableError);  // two shared places
  System sq = p_subsystem(gen_swimming_pool(1, 1, 1),
                          {gen_swimming_pool(1, 1, 1).net.place("Dressed")});
  CHECK_THROWS_AS(deadlock_ilp(sq), NotApplicableError);  // not strongly connected
}

TEST_CASE("check_liveness on the small swimming-pool instances") {
  LivenessVerdict live = check_liveness(gen_swimming_pool(1, 1, 1));
  CHECK(live.status == LivenessVerdict::Status::Live);

  LivenessVerdict dead = check_liveness(gen_swimming_pool(2, 1, 1));
  REQUIRE(dead.status == LivenessVerdict::Status::NonLive);
  REQUIRE(dead.deadlock.has_value());
  REQUIRE(dead.firing_count.has_value());
  System sp = gen_swimming_pool(2, 1, 1);
  // Soundness: the witness satisfies the state equation and is a deadlock.
  CHECK(is_deadlock(sp.net, *dead.deadlock));
  CHECK(pr_member(sp, *dead.deadlock).has_value());
  IncidenceMatrix I = incidence(sp.net);
  CHECK(add(sp.initial, I.times(*dead.firing_count)) == *dead.deadlock);

  LivenessVerdict na = check_liveness(fx("fig8"));
  CHECK(na.status == LivenessVerdict::Status::NotApplicable);
}

TEST_CASE("check_liveness agrees with the oracle on applicable fixtures") {
  std::vector<System> samples{gen_swimming_pool(1, 1, 1), gen_swimming_pool(2, 1, 1),
                              gen_swimming_pool(1, 2, 2), fx("fig3_left"), fx("fig3_right"),
                              gen_emblem({1, 1, 1, 1, 1, 2, 1, 1, 1})};
  for (const auto& s : samples) {
    LivenessVerdict v = check_liveness(s);
    if (v.status != LivenessVerdict::Status::Live &&
        v.status != LivenessVerdict::Status::NonLive)
      continue;
    ReachabilityGraph rg = build_rg(s);
    REQUIRE(rg.complete);
    CHECK((v.status == LivenessVerdict::Status::Live) == oracle_live(rg, s.net));
  }
}

TEST_CASE("siphon_deadlock_ilp") {
  System sp = gen_swimming_pool(2, 1, 1);
  std::set<Pid> q;
  for (const char* n : {"Dressed", "Dress", "Cabins", "Bags", "Undress"})
    q.insert(sp.net.place(n));
  LinearModel model = siphon_deadlock_ilp(sp, Siphon{q});
  SolveOutcome r = ilp_feasible(model);
  REQUIRE(r.status == SolveOutcome::Status::Feasible);
  // The witness marking deadlocks the siphon.
  Marking m(sp.net.place_count());
  for (Pid p = 0; p < sp.net.place_count(); ++p) m[p] = rat_num(r.point[p]);
  CHECK(is_deadlocked_siphon(sp.net, m, Siphon{q}));

  // fig1's siphon {p1,p3} is protected by a P-semiflow.
  const System& fig1 = fx("fig1");
  Siphon d{{fig1.net.place("p1"), fig1.net.place("p3")}};
  CHECK(ilp_feasible(siphon_deadlock_ilp(fig1, d)).status == SolveOutcome::Status::Infeasible);

  CHECK_THROWS_AS(siphon_deadlock_ilp(fig1, Siphon{{fig1.net.place("p1")}}), NotASiphonError);
}

TEST_CASE("theta deadlockability equivalence at desk scale") {
  testgen::Rng rng(503);
  int done = 0;
  for (int i = 0; i < 80 && done < 25; ++i) {
    System s = testgen::random_net(rng, 4, 4, 2, 3);
    ExplorationLimits limits;
    limits.max_nodes = 3000;
    ReachabilityGraph rg = build_rg(s, limits);
    if (!rg.complete) continue;
    ThetaResult th = theta_transform(s);
    ReachabilityGraph rgt = build_rg(th.transformed, limits);
    if (!rgt.complete) continue;
    ++done;
    auto has_deadlock = [](const ReachabilityGraph& g, const Net& net) {
      for (const auto& m : g.nodes)
        if (is_deadlock(net, m)) return true;
      return false;
    };
    CHECK(has_deadlock(rg, s.net) == has_deadlock(rgt, th.transformed.net));
  }
  CHECK(done >= 15);
}
