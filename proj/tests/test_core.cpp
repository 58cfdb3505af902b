#include <doctest.h>

#include "generators.hpp"
#include "pnet/core.hpp"
#include "pnet/models.hpp"

using namespace pnet;

namespace {

const System& fx(const std::string& name) { return fixtures().at(name).system; }

FiringSequence seq(const Net& net, const std::vector<std::string>& names) {
  FiringSequence s;
  for (const auto& n : names) s.push_back(net.transition(n));
  return s;
}

// Sequences over plain letters for the residue tests.
FiringSequence letters(const std::string& word) {
  FiringSequence s;
  for (char c : word) s.push_back(c - 'a');
  return s;
}

std::string unletters(const FiringSequence& s) {
  std::string w;
  for (Tid t : s) w.push_back(static_cast<char>('a' + t));
  return w;
}

}  // namespace

TEST_CASE("incidence of the fig1 net") {
  const System& s = fx("fig1");
  IncidenceMatrix I = incidence(s.net);
  Tid t2 = s.net.transition("t2");
  CHECK(I.at(s.net.place("p1"), t2) == 2);
  CHECK(I.at(s.net.place("p2"), t2) == 1);
  CHECK(I.at(s.net.place("p3"), t2) == -4);
  CHECK(I.at(s.net.place("p4"), t2) == -3);
}

TEST_CASE("incidence of an isolated transition is a zero column") {
  Net net;
  net.add_place("p");
  net.add_transition("t");
  net.add_transition("u");
  net.add_input_arc("p", "t", 1);
  IncidenceMatrix I = incidence(net);
  CHECK(I.at(0, net.transition("u")) == 0);
}

TEST_CASE("incidence entries equal W(t,p) - W(p,t) on random nets") {
  testgen::Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    System s = testgen::random_net(rng, 5, 5);
    IncidenceMatrix I = incidence(s.net);
    for (Pid p = 0; p < s.net.place_count(); ++p)
      for (Tid t = 0; t < s.net.transition_count(); ++t)
        CHECK(I.at(p, t) == s.net.output_weight(t, p) - s.net.input_weight(p, t));
  }
}

TEST_CASE("enabledness at the fig1 initial marking") {
  const System& s = fx("fig1");
  CHECK(enabled(s, s.net.transition("t2")));
  CHECK_FALSE(enabled(s, s.net.transition("t1")));  // M(p1) = 0 < 1

  Net net;
  net.add_place("p");
  net.add_transition("free");
  Marking m{0};
  CHECK(enabled(net, m, 0));  // empty pre-set
}

TEST_CASE("firing fig1") {
  const System& s = fx("fig1");
  Marking m = fire(s, s.net.transition("t2"));
  CHECK(m == Marking{2, 1, 0, 0});
  CHECK_THROWS_AS(fire(s, s.net.transition("t1")), NotEnabledError);

  Marking end = fire_sequence(s, seq(s.net, {"t2", "t1", "t3"}));
  CHECK(end == Marking{1, 0, 2, 3});
  // State equation recheck.
  IncidenceMatrix I = incidence(s.net);
  ParikhVector y = parikh(seq(s.net, {"t2", "t1", "t3"}), 3);
  CHECK(end == add(s.initial, I.times(y)));
}

TEST_CASE("fire_sequence reports the failing step") {
  const System& s = fx("fig1");
  try {
    fire_sequence(s, seq(s.net, {"t2", "t1", "t2"}));  // p3 holds 2 < 4 after t2 t1
    FAIL("expected NotEnabledError");
  } catch (const NotEnabledError& e) {
    CHECK(e.step == 3);
    CHECK(e.transition == s.net.transition("t2"));
  }
  CHECK(fire_sequence(s, {}) == s.initial);  // empty sequence
}

TEST_CASE("state equation holds along random feasible sequences") {
  testgen::Rng rng(102);
  for (int i = 0; i < 80; ++i) {
    System s = testgen::random_net(rng);
    FiringSequence sigma = testgen::random_walk(rng, s, 12);
    IncidenceMatrix I = incidence(s.net);
    Marking lhs = fire_sequence(s, sigma);
    Marking rhs = add(s.initial, I.times(parikh(sigma, s.net.transition_count())));
    CHECK(lhs == rhs);
    CHECK(all_nonnegative(lhs));
  }
}

TEST_CASE("parikh counting") {
  CHECK(parikh({}, 3) == ParikhVector{0, 0, 0});
  CHECK(parikh({1, 0, 2}, 3) == ParikhVector{1, 1, 1});
  FiringSequence twice = concat({1, 0, 2}, {1, 0, 2});
  CHECK(parikh(twice, 3) == ParikhVector{2, 2, 2});
}

TEST_CASE("residue worked examples") {
  CHECK(unletters(residue(letters("acbcacbc"), letters("abbcb"))) == "cacc");
  CHECK(unletters(residue(letters("abbcb"), letters("acbcacbc"))) == "b");
  CHECK(unletters(residue(letters("abbcb"), letters(""))) == "abbcb");
}

TEST_CASE("residue by vector: boundary cases") {
  FiringSequence tau = letters("abcabc");
  CHECK(residue_by_vector(tau, ParikhVector{0, 0, 0}) == tau);
  CHECK(residue_by_vector(tau, parikh(tau, 3)).empty());
}

TEST_CASE("residue properties on random sequences") {
  testgen::Rng rng(103);
  for (int i = 0; i < 300; ++i) {
    int n = testgen::pick(rng, 1, 4);
    auto randseq = [&](int len) {
      FiringSequence s;
      for (int k = 0; k < len; ++k) s.push_back(testgen::pick(rng, 0, n - 1));
      return s;
    };
    FiringSequence tau = randseq(testgen::pick(rng, 0, 10));
    FiringSequence sigma = randseq(testgen::pick(rng, 0, 10));
    FiringSequence r = residue(tau, sigma);
    ParikhVector pt = parikh(tau, n), ps = parikh(sigma, n), pr = parikh(r, n);
    // Length: |tau - sigma| = |tau| - sum_t min(P(tau)(t), P(sigma)(t)).
    Int removed = 0;
    for (int t = 0; t < n; ++t) removed += std::min(pt[t], ps[t]);
    CHECK(Int(r.size()) == Int(tau.size()) - removed);
    // Parikh: P(tau-sigma)(t) = max(0, P(tau)(t) - P(sigma)(t)).
    for (int t = 0; t < n; ++t) CHECK(pr[t] == std::max(Int(0), Int(pt[t] - ps[t])));
    // Both residue definitions agree.
    CHECK(residue_by_vector(tau, ps) == r);
  }
}

TEST_CASE("weight-zero arcs are rejected") {
  Net net;
  net.add_place("p");
  net.add_transition("t");
  CHECK_THROWS_AS(net.add_input_arc("p", "t", 0), PnetError);
  CHECK_THROWS_AS(net.add_output_arc("t", "p", 0), PnetError);
  net.add_input_arc("p", "t", 1);
  CHECK_THROWS_AS(net.add_input_arc("p", "t", 1), PnetError);  // duplicate
}
