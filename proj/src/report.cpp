#include "pnet/report.hpp"

namespace pnet {

Json to_json(const ClassReport& r) {
  Json j;
  j["unit_weighted"] = r.unit_weighted;
  j["homogeneous"] = r.homogeneous;
  j["choice_free"] = r.choice_free;
  j["wmg_le"] = r.wmg_le;
  j["wmg"] = r.wmg;
  j["marked_graph"] = r.marked_graph;
  j["state_machine"] = r.state_machine;
  j["hfc"] = r.hfc;
  j["hac"] = r.hac;
  j["shared_place_count"] = r.shared_place_count;
  j["h1s"] = r.h1s;
  j["h1s_wmg_le"] = r.h1s_wmg_le;
  j["strongly_connected"] = r.strongly_connected;
  j["wmg_after_shared_deletion_strongly_connected"] =
      r.wmg_after_shared_deletion_strongly_connected;
  return j;
}

Json to_json(const Net& net, const Marking& m) {
  Json j = Json::object();
  for (Pid p = 0; p < net.place_count(); ++p) j[net.place_name(p)] = m[p].str();
  return j;
}

Json to_json(const Net& net, const FiringSequence& sigma) {
  Json j = Json::array();
  for (Tid t : sigma) j.push_back(net.transition_name(t));
  return j;
}

Json to_json(const Net& net, const LivenessVerdict& v) {
  Json j;
  switch (v.status) {
    case LivenessVerdict::Status::Live: j["status"] = "live"; break;
    case LivenessVerdict::Status::NonLive: j["status"] = "non-live"; break;
    case LivenessVerdict::Status::NotApplicable: j["status"] = "not-applicable"; break;
    case LivenessVerdict::Status::Inconclusive: j["status"] = "inconclusive"; break;
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.deadlock) j["deadlock"] = to_json(net, *v.deadlock);
  if (v.firing_count) {
    Json y = Json::object();
    for (Tid t = 0; t < net.transition_count(); ++t)
      y[net.transition_name(t)] = (*v.firing_count)[t].str();
    j["firing_count"] = y;
  }
  j["ilp_nodes"] = v.ilp_nodes;
  return j;
}

Json to_json(const Net& net, const ReversibilityVerdict& v) {
  Json j;
  switch (v.status) {
    case ReversibilityVerdict::Status::Reversible: j["status"] = "reversible"; break;
    case ReversibilityVerdict::Status::NotReversible: j["status"] = "not-reversible"; break;
    case ReversibilityVerdict::Status::NotApplicable: j["status"] = "not-applicable"; break;
    case ReversibilityVerdict::Status::Unknown: j["status"] = "unknown"; break;
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.tsequence) j["tsequence"] = to_json(net, v.tsequence->sequence);
  return j;
}

Json bounds_json(const System& s) {
  Json j = Json::object();
  for (Pid p = 0; p < s.net.place_count(); ++p) {
    StructuralBoundEstimate est = structural_bound_upper(s, p);
    j[s.net.place_name(p)] = est.upper ? Json(est.upper->str()) : Json("unbounded");
  }
  return j;
}

}  // namespace pnet
