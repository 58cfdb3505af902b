#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "pnet/behavior.hpp"
#include "pnet/models.hpp"
#include "pnet/structure.hpp"

using namespace pnet;

namespace {

const System& fx(const std::string& name) { return fixtures().at(name).system; }

std::set<Pid> places(const Net& net, const std::vector<std::string>& names) {
  std::set<Pid> s;
  for (const auto& n : names) s.insert(net.place(n));
  return s;
}

// Exhaustive subset enumeration, the independent oracle for siphon tests.
std::vector<std::set<Pid>> brute_minimal_siphons(const Net& net) {
  int np = net.place_count();
  REQUIRE(np <= 12);
  std::vector<std::set<Pid>> all;
  for (unsigned mask = 1; mask < (1u << np); ++mask) {
    std::set<Pid> d;
    for (int p = 0; p < np; ++p)
      if (mask & (1u << p)) d.insert(p);
    if (is_siphon(net, d)) all.push_back(d);
  }
  std::vector<std::set<Pid>> minimal;
  for (const auto& d : all) {
    bool has_sub = false;
    for (const auto& e : all)
      if (e != d && std::includes(d.begin(), d.end(), e.begin(), e.end())) {
        has_sub = true;
        break;
      }
    if (!has_sub) minimal.push_back(d);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

}  // namespace

TEST_CASE("classification of the fixture nets") {
  ClassReport fig1 = classify(fx("fig1").net);
  CHECK(fig1.wmg);
  CHECK(fig1.choice_free);
  CHECK(fig1.shared_place_count == 0);
  CHECK(fig1.h1s_wmg_le);
  CHECK_FALSE(fig1.unit_weighted);
  CHECK(fig1.homogeneous);

  ClassReport fig4 = classify(fx("fig4_left").net);
  CHECK(fig4.h1s);
  CHECK(fig4.shared_place_count == 1);
  CHECK_FALSE(fig4.choice_free);

  ClassReport fig21 = classify(fx("fig21").net);
  CHECK(fig21.shared_place_count == 2);
  CHECK_FALSE(fig21.h1s);
  CHECK(fig21.homogeneous);

  ClassReport fig16 = classify(fx("fig16").net);
  CHECK(fig16.hfc);
  CHECK(fig16.hac);
  CHECK_FALSE(fig16.choice_free);

  ClassReport sp = classify(gen_swimming_pool(1, 1, 1).net);
  CHECK(sp.h1s_wmg_le);
  CHECK(sp.strongly_connected);
  CHECK(sp.wmg_after_shared_deletion_strongly_connected);
  CHECK(sp.unit_weighted);
}

TEST_CASE("classify flag implication lattice on random nets") {
  testgen::Rng rng(201);
  for (int i = 0; i < 200; ++i) {
    System s = (i % 2) ? testgen::random_net(rng) : testgen::random_cf(rng);
    ClassReport r = classify(s.net);
    if (r.choice_free) CHECK(r.hfc);
    if (r.wmg_le) CHECK(r.choice_free);
    if (r.unit_weighted) CHECK(r.homogeneous);
    CHECK(r.h1s == (r.homogeneous && r.shared_place_count <= 1));
    if (r.hfc) CHECK(r.hac);
    if (r.wmg) CHECK(r.wmg_le);
    if (r.marked_graph) CHECK((r.wmg && r.unit_weighted));
  }
}

TEST_CASE("shared places") {
  CHECK(shared_places(fx("fig1").net).empty());
  auto fig4_shared = shared_places(fx("fig4_left").net);
  CHECK(fig4_shared == places(fx("fig4_left").net, {"p"}));

  Net star;
  star.add_place("hub");
  star.add_transition("a");
  star.add_transition("b");
  star.add_transition("c");
  for (const char* t : {"a", "b", "c"}) star.add_input_arc("hub", t, 1);
  CHECK(shared_places(star) == std::set<Pid>{0});
}

TEST_CASE("strong connectivity") {
  CHECK(strongly_connected(fx("fig1").net));
  CHECK(strongly_connected(gen_swimming_pool(1, 1, 1).net));

  Net source;  // a source transition breaks strong connectivity
  source.add_place("p");
  source.add_transition("t");
  source.add_output_arc("t", "p", 1);
  source.add_input_arc("p", "t", 1);
  source.add_transition("src");
  source.add_output_arc("src", "p", 1);
  CHECK_FALSE(strongly_connected(source));
}

TEST_CASE("delete_place: fig4 yields the choice-free net") {
  const System& left = fx("fig4_left");
  Net reduced = delete_place(left.net, left.net.place("p"));
  CHECK(classify(reduced).choice_free);
  // Same arcs as the shipped fig4_right fixture.
  const Net& right = fx("fig4_right").net;
  REQUIRE(reduced.place_count() == right.place_count());
  REQUIRE(reduced.transition_count() == right.transition_count());
  for (Pid p = 0; p < right.place_count(); ++p)
    for (Tid t = 0; t < right.transition_count(); ++t) {
      Pid rp = reduced.place(right.place_name(p));
      Tid rt = reduced.transition(right.transition_name(t));
      CHECK(reduced.input_weight(rp, rt) == right.input_weight(p, t));
      CHECK(reduced.output_weight(rt, rp) == right.output_weight(t, p));
    }

  // Deleting an isolated place leaves every arc in place.
  Net iso;
  iso.add_place("lonely");
  iso.add_place("q");
  iso.add_transition("t");
  iso.add_input_arc("q", "t", 2);
  Net after = delete_place(iso, iso.place("lonely"));
  CHECK(after.input_weight(after.place("q"), after.transition("t")) == 2);

  // Swimming pool minus Cabins: strongly connected WMG.
  const System sp = gen_swimming_pool(1, 1, 1);
  Net wmg = delete_place(sp.net, sp.net.place("Cabins"));
  CHECK(classify(wmg).wmg);
  CHECK(strongly_connected(wmg));
}

TEST_CASE("minimal siphons of fig1") {
  const System& s = fx("fig1");
  auto sets = minimal_siphons(s.net);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].places == places(s.net, {"p1", "p3"}));
  CHECK(sets[1].places == places(s.net, {"p2", "p4"}));
}

TEST_CASE("minimal siphons: self-loop and swimming pool") {
  Net loop;
  loop.add_place("p");
  loop.add_transition("t");
  loop.add_input_arc("p", "t", 1);
  loop.add_output_arc("t", "p", 1);
  auto sets = minimal_siphons(loop);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].places == std::set<Pid>{0});

  const System sp = gen_swimming_pool(1, 1, 1);
  auto sp_sets = minimal_siphons(sp.net);
  std::set<Pid> q = places(sp.net, {"Dressed", "Dress", "Cabins", "Bags", "Undress"});
  bool found = false;
  for (const auto& d : sp_sets) found = found || d.places == q;
  CHECK(found);
}

TEST_CASE("minimal siphons agree with subset enumeration") {
  testgen::Rng rng(202);
  for (int i = 0; i < 60; ++i) {
    System s = testgen::random_net(rng, 6, 5);
    auto expected = brute_minimal_siphons(s.net);
    auto got = minimal_siphons(s.net);
    std::vector<std::set<Pid>> got_sets;
    for (const auto& d : got) got_sets.push_back(d.places);
    std::sort(got_sets.begin(), got_sets.end());
    CHECK(got_sets == expected);
    for (const auto& d : got) CHECK(is_siphon(s.net, d.places));
  }
}

TEST_CASE("minimal siphon cap turns blowup into an error") {
  // Dense shared structure with many alternative covers.
  Net net;
  for (int p = 0; p < 10; ++p) net.add_place("p" + std::to_string(p));
  for (int t = 0; t < 5; ++t) net.add_transition("t" + std::to_string(t));
  for (int p = 0; p < 10; ++p)
    for (int t = 0; t < 5; ++t) {
      net.add_input_arc(p, t, 1);
      net.add_output_arc(t, p, 1);
    }
  CHECK_THROWS_AS(minimal_siphons(net, 3), TruncatedError);
}

TEST_CASE("deadlocked siphons") {
  // Empty-marked siphon with unit outputs.
  Net net;
  net.add_place("a");
  net.add_place("b");
  net.add_transition("t");
  net.add_input_arc("a", "t", 1);
  net.add_output_arc("t", "b", 1);
  // {a} is a siphon only if pre(a) subset post(a); a has no inputs.
  CHECK(is_deadlocked_siphon(net, Marking{0, 0}, Siphon{{0}}));
  CHECK_FALSE(is_deadlocked_siphon(net, Marking{1, 0}, Siphon{{0}}));
  CHECK_THROWS_AS(is_deadlocked_siphon(net, Marking{0, 0}, Siphon{{1}}), NotASiphonError);

  const System& fig1 = fx("fig1");
  CHECK_FALSE(is_deadlocked_siphon(fig1, Siphon{places(fig1.net, {"p2", "p4"})}));  // M(p4)=3>=3

  const System& fig8 = fx("fig8");
  Siphon d{places(fig8.net, {"p1", "p2", "p4", "p5"})};
  REQUIRE(is_siphon(fig8.net, d.places));
  Marking dead{0, 0, 2, 1, 0};
  // p1 -> t1 needs 2, p2 -> t1/t2 need 1, p4 -> t2 needs 1, p5 -> t3 needs 1.
  CHECK_FALSE(is_deadlocked_siphon(fig8.net, dead, d));  // p4 holds 1 >= W(p4,t2)=1
}

TEST_CASE("semiflows: fixture hits") {
  // fig7 carries the P-semiflow marking p0+p5+p6+p7.
  const System& fig7 = fx("fig7");
  IncidenceMatrix I = incidence(fig7.net);
  IVec v(fig7.net.place_count(), 0);
  for (const char* n : {"p0", "p5", "p6", "p7"}) v[fig7.net.place(n)] = 1;
  CHECK(is_zero(I.transpose_times(v)));
  auto pflows = semiflows(fig7.net, SemiflowKind::P);
  bool found = false;
  for (const auto& f : pflows) found = found || f.vector == v;
  CHECK(found);

  // Swimming pool and emblem: the minimal T-semiflow is all-ones.
  for (const System& s : {gen_swimming_pool(2, 1, 1), gen_emblem({1, 1, 1, 1, 1, 2, 1, 1, 1})}) {
    auto tflows = semiflows(s.net, SemiflowKind::T);
    REQUIRE(tflows.size() == 1);
    CHECK(tflows[0].vector == IVec(s.net.transition_count(), 1));
  }

  // A transition with a zero column gives the unit T-semiflow.
  Net net;
  net.add_place("p");
  net.add_transition("t");
  net.add_transition("idle");
  net.add_input_arc("p", "t", 1);
  auto tflows = semiflows(net, SemiflowKind::T);
  REQUIRE(tflows.size() == 1);
  CHECK(tflows[0].vector == IVec{0, 1});
}

TEST_CASE("semiflows satisfy their kernel equation and are prime") {
  testgen::Rng rng(203);
  for (int i = 0; i < 60; ++i) {
    System s = testgen::random_net(rng, 5, 5);
    IncidenceMatrix I = incidence(s.net);
    for (auto kind : {SemiflowKind::P, SemiflowKind::T}) {
      for (const auto& f : semiflows(s.net, kind)) {
        IVec check = (kind == SemiflowKind::P) ? I.transpose_times(f.vector) : I.times(f.vector);
        CHECK(is_zero(check));
        CHECK(vec_gcd(f.vector) == 1);
        CHECK(all_nonnegative(f.vector));
        CHECK_FALSE(is_zero(f.vector));
      }
    }
  }
}

TEST_CASE("conservativeness and consistency") {
  // The emblem is 1-conservative.
  System emblem = gen_emblem({1, 0, 0, 0, 0, 2, 0, 0, 1});
  auto x = conservativeness(emblem.net);
  REQUIRE(x.has_value());
  IncidenceMatrix I = incidence(emblem.net);
  CHECK(is_zero(I.transpose_times(*x)));
  IVec ones(emblem.net.place_count(), 1);
  CHECK(is_zero(I.transpose_times(ones)));  // X = 1 is itself a witness

  System sp = gen_swimming_pool(3, 2, 1);
  CHECK(conservativeness(sp.net).has_value());
  auto y = consistency(sp.net);
  REQUIRE(y.has_value());
  CHECK(is_zero(incidence(sp.net).times(*y)));

  Net pump;  // single t -> p arc: adds tokens forever
  pump.add_place("p");
  pump.add_transition("t");
  pump.add_output_arc("t", "p", 1);
  CHECK_FALSE(conservativeness(pump).has_value());
}

TEST_CASE("structural boundedness") {
  CHECK(structurally_bounded(gen_swimming_pool(1, 1, 1).net));  // conservative
  CHECK(structurally_bounded(fx("fig8").net));

  Net pump;
  pump.add_place("p");
  pump.add_transition("t");
  pump.add_output_arc("t", "p", 1);
  CHECK_FALSE(structurally_bounded(pump));
}

TEST_CASE("structural bound upper estimates") {
  // 1-conservative net with k tokens total: every place bounded by k.
  System emblem = gen_emblem({1, 0, 0, 0, 0, 2, 0, 0, 1});
  Int total = sum(emblem.initial);
  for (Pid p = 0; p < emblem.net.place_count(); ++p) {
    auto est = structural_bound_upper(emblem, p);
    REQUIRE(est.upper.has_value());
    CHECK(*est.upper <= total);
  }

  Net pump;
  pump.add_place("p");
  pump.add_transition("t");
  pump.add_output_arc("t", "p", 1);
  auto est = structural_bound_upper(System(pump, Marking{0}), 0);
  CHECK_FALSE(est.upper.has_value());
}

TEST_CASE("structural bound dominates bounded PR enumeration") {
  testgen::Rng rng(204);
  int checked = 0;
  for (int i = 0; i < 40 && checked < 20; ++i) {
    System s = testgen::random_net(rng, 4, 4, 2, 3);
    if (!structurally_bounded(s.net)) continue;
    ++checked;
    IncidenceMatrix I = incidence(s.net);
    const int nt = s.net.transition_count();
    // Exact max over the PR window with Parikh sum <= 5.
    std::vector<Int> best(s.net.place_count(), 0);
    std::function<void(IVec&, int, int)> enumerate = [&](IVec& y, int from, int left) {
      Marking m = add(s.initial, I.times(y));
      if (all_nonnegative(m))
        for (Pid p = 0; p < s.net.place_count(); ++p) best[p] = std::max(best[p], m[p]);
      if (left == 0) return;
      for (int t = from; t < nt; ++t) {
        y[t] += 1;
        enumerate(y, t, left - 1);
        y[t] -= 1;
      }
    };
    IVec y(nt, 0);
    enumerate(y, 0, 5);
    for (Pid p = 0; p < s.net.place_count(); ++p) {
      auto est = structural_bound_upper(s, p);
      REQUIRE(est.upper.has_value());
      CHECK(*est.upper >= best[p]);
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("p_subsystem") {
  const System sp = gen_swimming_pool(1, 1, 1);
  std::set<Pid> all;
  for (Pid p = 0; p < sp.net.place_count(); ++p) all.insert(p);
  System same = p_subsystem(sp, all);
  CHECK(same.net.place_count() == sp.net.place_count());
  CHECK(same.net.transition_count() == sp.net.transition_count());
  CHECK(same.initial == sp.initial);

  // The siphon Q induces the non-live unbounded subsystem.
  std::set<Pid> q = places(sp.net, {"Dressed", "Dress", "Cabins", "Bags", "Undress"});
  System sq = p_subsystem(sp, q);
  CHECK(sq.net.place_count() == 5);
  CHECK(sq.net.transition_count() == 6);  // GetK, GetB, RelK, GetK2, RelB, RelK2
  CHECK_FALSE(structurally_bounded(sq.net));

  // Singleton: only adjacent transitions survive.
  System single = p_subsystem(sp, places(sp.net, {"out"}));
  CHECK(single.net.place_count() == 1);
  CHECK(single.net.transition_count() == 2);  // Enter, RelK2
}
