#include "pnet/models.hpp"

#include <sstream>

#include "pnet/dsl.hpp"

namespace pnet {

System gen_swimming_pool(const Int& users, const Int& bags, const Int& cabins) {
  if (users < 1 || bags < 1 || cabins < 1)
    throw PnetError("gen_swimming_pool: parameters must be >= 1");
  std::ostringstream d;
  d << "place out init " << users << "\n"
    << "place entered\n"
       "place WaitBag\n"
       "place Undress\n"
       "place InBath\n"
       "place Dress\n"
       "place Dressed\n"
    << "place Cabins init " << cabins << "\n"
    << "place Bags init " << bags << "\n"
    << "trans Enter\n"
       "trans GetK\n"
       "trans GetB\n"
       "trans RelK\n"
       "trans GetK2\n"
       "trans RelB\n"
       "trans RelK2\n"
       "arc out -> Enter\n"
       "arc Enter -> entered\n"
       "arc entered -> GetK\n"
       "arc Cabins -> GetK\n"
       "arc GetK -> WaitBag\n"
       "arc WaitBag -> GetB\n"
       "arc Bags -> GetB\n"
       "arc GetB -> Undress\n"
       "arc Undress -> RelK\n"
       "arc RelK -> InBath\n"
       "arc RelK -> Cabins\n"
       "arc InBath -> GetK2\n"
       "arc Cabins -> GetK2\n"
       "arc GetK2 -> Dress\n"
       "arc Dress -> RelB\n"
       "arc RelB -> Dressed\n"
       "arc RelB -> Bags\n"
       "arc Dressed -> RelK2\n"
       "arc RelK2 -> out\n"
       "arc RelK2 -> Cabins\n";
  return parse_net(d.str());
}

System gen_emblem(const std::vector<Int>& m) {
  if (m.size() != 9) throw PnetError("gen_emblem: expected 9 token counts");
  std::ostringstream d;
  for (int i = 0; i < 9; ++i) d << "place p" << i << " init " << m[i] << "\n";
  d << "trans t0\ntrans t1\ntrans t2\ntrans t3\n"
       "arc t0 -> p1\narc p1 -> t2\n"
       "arc t0 -> p2\narc p2 -> t2\n"
       "arc t2 -> p3\narc p3 -> t0\n"
       "arc t2 -> p4\narc p4 -> t0\n"
       "arc t0 -> p0\narc p0 -> t1\n"
       "arc t1 -> p6\narc p6 -> t3\n"
       "arc t1 -> p7\narc p7 -> t3\n"
       "arc t3 -> p8\narc p8 -> t2\n"
       "arc t2 -> p5\narc p5 -> t0\n"
       "arc t3 -> p5\narc p5 -> t1\n";
  return parse_net(d.str());
}

System gen_emblem_reduced(const std::vector<Int>& m) {
  if (m.size() != 6) throw PnetError("gen_emblem_reduced: expected 6 token counts");
  const char* names[6] = {"p0", "p1", "p3", "p5", "p6", "p8"};
  std::ostringstream d;
  for (int i = 0; i < 6; ++i) d << "place " << names[i] << " init " << m[i] << "\n";
  d << "trans t0\ntrans t1\ntrans t2\ntrans t3\n"
       "arc t0 -> p1\narc p1 -> t2\n"
       "arc t2 -> p3\narc p3 -> t0\n"
       "arc t0 -> p0\narc p0 -> t1\n"
       "arc t1 -> p6\narc p6 -> t3\n"
       "arc t3 -> p8\narc p8 -> t2\n"
       "arc t2 -> p5\narc p5 -> t0\n"
       "arc t3 -> p5\narc p5 -> t1\n";
  return parse_net(d.str());
}

namespace {

System fig1() {
  return parse_net(
      "place p1\nplace p2\nplace p3 init 4\nplace p4 init 3\n"
      "trans t1\ntrans t2\ntrans t3\n"
      "arc p3 -> t2 weight 4\narc p4 -> t2 weight 3\n"
      "arc t2 -> p1 weight 2\narc t2 -> p2\n"
      "arc p1 -> t1\narc t1 -> p3 weight 2\n"
      "arc p2 -> t3\narc t3 -> p4 weight 3\n");
}

System fig3(bool extra_token) {
  std::ostringstream d;
  d << "place p1 init 2\nplace p2 init " << (extra_token ? 2 : 1) << "\n"
    << "place p3\nplace p4\nplace p5\nplace p6\n"
       "trans t1\ntrans t2\ntrans t3\ntrans t4\n"
       "arc p1 -> t1\narc p1 -> t2\n"
       "arc t2 -> p2\narc p2 -> t1\n"
       "arc t1 -> p3\narc p3 -> t2\n"
       "arc t2 -> p5\narc p5 -> t3\n"
       "arc t1 -> p4\narc p4 -> t3\n"
       "arc t3 -> p6\narc t3 -> p1\n"
       "arc p6 -> t4\narc t4 -> p1\n";
  return parse_net(d.str());
}

System fig4_left() {
  return parse_net(
      "place p init 3\nplace p1\nplace p2 init 1\nplace p3 init 2\n"
      "place p4 init 1\nplace p5\nplace p6\n"
      "trans t1\ntrans t2\ntrans t3\ntrans t4\ntrans t5\n"
      "arc t2 -> p6 weight 2\narc p6 -> t5 weight 5\n"
      "arc t1 -> p\narc p -> t4 weight 2\n"
      "arc p1 -> t3 weight 2\narc t3 -> p4 weight 3\n"
      "arc p4 -> t4\narc t4 -> p5\n"
      "arc p5 -> t5 weight 2\narc t5 -> p3 weight 5\n"
      "arc p3 -> t2 weight 2\n"
      "arc p -> t5 weight 2\narc p -> t2 weight 2\n"
      "arc t2 -> p2\narc p2 -> t1 weight 3\n"
      "arc t1 -> p1 weight 5\narc t3 -> p1\n"
      "arc t3 -> p weight 4\n");
}

System fig4_right() {
  // fig4_left with the shared place p deleted: a choice-free net.
  return parse_net(
      "place p1\nplace p2 init 1\nplace p3 init 2\nplace p4 init 1\nplace p5\nplace p6\n"
      "trans t1\ntrans t2\ntrans t3\ntrans t4\ntrans t5\n"
      "arc t2 -> p6 weight 2\narc p6 -> t5 weight 5\n"
      "arc p1 -> t3 weight 2\narc t3 -> p4 weight 3\n"
      "arc p4 -> t4\narc t4 -> p5\n"
      "arc p5 -> t5 weight 2\narc t5 -> p3 weight 5\n"
      "arc p3 -> t2 weight 2\n"
      "arc t2 -> p2\narc p2 -> t1 weight 3\n"
      "arc t1 -> p1 weight 5\narc t3 -> p1\n");
}

System fig6() {
  return parse_net(
      "place p init 1\nplace p1\nplace p2\n"
      "trans t1\ntrans t2\n"
      "arc p -> t1\narc t1 -> p1\narc p -> t2\narc t2 -> p2\n");
}

System fig7() {
  return parse_net(
      "place p0 init 1\nplace p1\nplace p2 init 1\nplace p3\nplace p4\n"
      "place p5 init 1\nplace p6\nplace p7\nplace p8\nplace p9\n"
      "place p10\nplace p11\nplace p12 init 1\nplace p13 init 1\n"
      "trans t0\ntrans t1\ntrans t2\ntrans t3\ntrans t4\ntrans t5\ntrans t6\ntrans t7\n"
      "arc p0 -> t0\narc p0 -> t1\narc t0 -> p1\narc t1 -> p1\n"
      "arc p1 -> t2\narc p1 -> t3\narc t2 -> p4\narc t3 -> p4\n"
      "arc p2 -> t2\narc t2 -> p3\narc p3 -> t3\narc t3 -> p2\n"
      "arc t0 -> p10\narc p10 -> t6\narc t6 -> p0\n"
      "arc t1 -> p11\narc p11 -> t7\narc t7 -> p0\n"
      "arc p4 -> t6\narc p4 -> t7\narc p5 -> t6\narc p5 -> t7\n"
      "arc t4 -> p5\narc t5 -> p5\n"
      "arc t6 -> p8\narc p8 -> t4\narc t7 -> p9\narc p9 -> t5\n"
      "arc t4 -> p12\narc p12 -> t0\narc t5 -> p13\narc p13 -> t1\n"
      "arc t0 -> p7\narc p7 -> t4\narc t1 -> p6\narc p6 -> t5\n"
      "arc p6 -> t4\narc t4 -> p6\narc p7 -> t5\narc t5 -> p7\n");
}

System fig8() {
  return parse_net(
      "place p1 init 2\nplace p2 init 2\nplace p3\nplace p4 init 1\nplace p5\n"
      "trans t1\ntrans t2\ntrans t3\n"
      "arc t3 -> p1\narc t3 -> p4\narc p4 -> t2\n"
      "arc p2 -> t2\narc t2 -> p2 weight 2\narc t2 -> p5\narc p5 -> t3\n"
      "arc p2 -> t1\narc p1 -> t1 weight 2\narc t1 -> p1\n"
      "arc t1 -> p3\narc p3 -> t3\n");
}

System fig10() {
  // Two-input synchronization t with a non-shared single-output place p and
  // a shared place pp also feeding t'.
  return parse_net(
      "place p init 2\nplace pp init 3\n"
      "trans t\ntrans tprime\n"
      "arc p -> t weight 2\narc pp -> t weight 3\narc pp -> tprime\n");
}

System fig11() {
  return parse_net(
      "place p init 1\nplace p1 init 2\nplace p2\nplace p3\nplace p4\n"
      "trans t1\ntrans t2\ntrans t3\ntrans t4\n"
      "arc p1 -> t1 weight 2\narc t1 -> p2\narc t1 -> p\n"
      "arc p2 -> t2\narc p -> t2 weight 2\narc t2 -> p3 weight 3\n"
      "arc p3 -> t3 weight 3\narc t3 -> p\narc t3 -> p4 weight 2\n"
      "arc p -> t4 weight 5\narc p4 -> t4 weight 2\narc t4 -> p1 weight 4\n");
}

System fig16() {
  return parse_net(
      "place p1 init 1\nplace p2 init 1\nplace p3 init 1\nplace p4\n"
      "trans t1\ntrans t2\ntrans t3\ntrans t4\ntrans t5\n"
      "arc p1 -> t1 weight 2\narc t2 -> p1\n"
      "arc p2 -> t2\narc p2 -> t3\n"
      "arc t1 -> p3\narc t1 -> p2\n"
      "arc t3 -> p4\narc p3 -> t4\narc t4 -> p4\n"
      "arc p4 -> t5 weight 2\narc t5 -> p2 weight 2\n");
}

System fig17() {
  // fig16 after firing t3 t4 t5.
  return parse_net(
      "place p1 init 1\nplace p2 init 2\nplace p3\nplace p4\n"
      "trans t1\ntrans t2\ntrans t3\ntrans t4\ntrans t5\n"
      "arc p1 -> t1 weight 2\narc t2 -> p1\n"
      "arc p2 -> t2\narc p2 -> t3\n"
      "arc t1 -> p3\narc t1 -> p2\n"
      "arc t3 -> p4\narc p3 -> t4\narc t4 -> p4\n"
      "arc p4 -> t5 weight 2\narc t5 -> p2 weight 2\n");
}

System fig18() {
  return parse_net(
      "place p1 init 1\nplace p2 init 1\nplace p3 init 2\nplace p4\n"
      "place p5 init 2\nplace p6 init 2\nplace p7 init 1\n"
      "trans t1\ntrans t2\ntrans t3\ntrans t4\ntrans t5\n"
      "arc p1 -> t1 weight 2\narc t2 -> p1\n"
      "arc p2 -> t2\narc p2 -> t3\n"
      "arc t1 -> p3\narc t1 -> p2\n"
      "arc t3 -> p4\narc p3 -> t4\narc t4 -> p4\n"
      "arc p4 -> t5 weight 2\narc t5 -> p2 weight 2\n"
      "arc t1 -> p7 weight 2\narc p7 -> t2\n"
      "arc t3 -> p5\narc p5 -> t2\n"
      "arc t2 -> p6\narc p6 -> t3\n");
}

System fig21() {
  return parse_net(
      "place p0 init 1\nplace p1 init 1\nplace p2\nplace p3\n"
      "place p4 init 1\nplace p5 init 1\nplace p6 init 1\nplace p7 init 1\n"
      "trans t0\ntrans t1\ntrans t2\ntrans t3\n"
      "arc t2 -> p2\narc p2 -> t2\narc p2 -> t1\narc t3 -> p2\n"
      "arc p1 -> t3\narc t1 -> p1\narc p1 -> t0\narc t0 -> p1\n"
      "arc t0 -> p7\narc p7 -> t3\n"
      "arc p0 -> t0\narc t2 -> p0\n"
      "arc t0 -> p3\narc p3 -> t2\n"
      "arc t2 -> p4\narc p4 -> t1\n"
      "arc t1 -> p5\narc p5 -> t2\n"
      "arc t3 -> p6\narc p6 -> t0\n");
}

}  // namespace

const std::map<std::string, Fixture>& fixtures() {
  static const std::map<std::string, Fixture> all = [] {
    std::map<std::string, Fixture> m;
    m.emplace("fig1", Fixture{fig1(), "weighted marked graph, live and reversible, 6-state graph"});
    m.emplace("fig3_left", Fixture{fig3(false), "live and reversible unit-weighted H1S-WMG<="});
    m.emplace("fig3_right",
              Fixture{fig3(true), "fig3_left with one extra token on p2; non-live and "
                                  "non-reversible"});
    m.emplace("fig4_left", Fixture{fig4_left(), "weighted H1S net, shared place p"});
    m.emplace("fig4_right", Fixture{fig4_right(), "fig4_left with the shared place deleted"});
    m.emplace("fig6", Fixture{fig6(), "one-place fork; initially directed but not directed"});
    m.emplace("fig7", Fixture{fig7(), "unit-weighted asymmetric-choice system, live, bounded, "
                                      "no home state"});
    m.emplace("fig8", Fixture{fig8(), "live and reversible H1S (not WMG<= after deletion); "
                                      "potentially reachable deadlock (0,0,2,1,0)"});
    m.emplace("fig10", Fixture{fig10(), "one synchronization with one rewritable input place"});
    m.emplace("fig11", Fixture{fig11(), "1S system with two rewritable pairs (p2,t2), (p4,t4)"});
    m.emplace("fig16", Fixture{fig16(), "live homogeneous free-choice system"});
    m.emplace("fig17", Fixture{fig17(), "fig16 after firing t3 t4 t5"});
    m.emplace("fig18", Fixture{fig18(), "live reversible H1S with shared place p2"});
    m.emplace("fig21", Fixture{fig21(), "live H2S-WMG enabling a T-sequence yet not reversible"});
    return m;
  }();
  return all;
}

}  // namespace pnet
