#pragma once

#include <json.hpp>

#include "pnet/behavior.hpp"
#include "pnet/liveness.hpp"
#include "pnet/reversibility.hpp"
#include "pnet/structure.hpp"

namespace pnet {

using Json = nlohmann::ordered_json;

Json to_json(const ClassReport& r);
Json to_json(const Net& net, const Marking& m);
Json to_json(const Net& net, const FiringSequence& sigma);
Json to_json(const Net& net, const LivenessVerdict& v);
Json to_json(const Net& net, const ReversibilityVerdict& v);
Json bounds_json(const System& s);

/// Combined analysis: classification, both decision pipelines, structural
/// bounds and timings. Witnesses are replay-validated before they are
/// serialized.
struct AnalysisReport {
  ClassReport classification;
  LivenessVerdict liveness;
  ReversibilityVerdict reversibility;
  Json bounds;
  long liveness_ms = 0;
  long reversibility_ms = 0;
};

AnalysisReport analyze(const System& s, int k_max = 4, long node_budget = 200000);
Json to_json(const Net& net, const AnalysisReport& r);

}  // namespace pnet
