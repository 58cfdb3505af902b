#pragma once

#include <map>
#include <string>

#include "pnet/core.hpp"

namespace pnet {

/// Swimming-pool protocol: `users` customers outside, `bags` free bags,
/// `cabins` free cabin keys. Unit-weighted H1S-WMG with shared place Cabins.
System gen_swimming_pool(const Int& users, const Int& bags, const Int& cabins);

/// Conference-emblem net: 9 places p0..p8 around 4 transitions, p5 shared.
System gen_emblem(const std::vector<Int>& m);  // m.size() == 9

/// Reduced emblem (p2, p4, p7 removed): order m0, m1, m3, m5, m6, m8.
System gen_emblem_reduced(const std::vector<Int>& m);  // m.size() == 6

struct Fixture {
  System system;
  std::string description;
};

/// Small nets exercised throughout the test suites, keyed fig1, fig3_left,
/// fig3_right, fig4_left, fig4_right, fig6, fig7, fig8, fig10, fig11,
/// fig16, fig17, fig18, fig21.
const std::map<std::string, Fixture>& fixtures();

}  // namespace pnet
