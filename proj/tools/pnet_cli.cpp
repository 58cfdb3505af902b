// Command-line front end: classification, liveness, reversibility,
// reachability exploration, ILP export and model generation.
//
// Exit codes: 0 success, 1 property refuted (non-live / not reversible /
// deadlock reachable), 2 errors, unknown or not-applicable outcomes.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pnet/dsl.hpp"
#include "pnet/liveness.hpp"
#include "pnet/models.hpp"
#include "pnet/report.hpp"
#include "pnet/reversibility.hpp"

namespace {

using namespace pnet;

constexpr int kOk = 0, kRefuted = 1, kError = 2;

// Net arguments name either a file or a shipped fixture.
System load_net(const std::string& arg) {
  const auto& fx = fixtures();
  auto it = fx.find(arg);
  if (it != fx.end()) return it->second.system;
  std::ifstream in(arg);
  if (!in) throw PnetError("cannot open '" + arg + "' (not a file or fixture name)");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_net(buf.str());
}

int run_classify(const std::string& net_arg, bool json) {
  System s = load_net(net_arg);
  ClassReport r = classify(s.net);
  if (json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    Json j = to_json(r);
    for (auto& [k, v] : j.items()) std::cout << k << ": " << v.dump() << "\n";
  }
  return kOk;
}

int run_liveness(const std::string& net_arg, bool use_oracle, long budget, bool json) {
  System s = load_net(net_arg);
  auto t0 = std::chrono::steady_clock::now();
  LivenessVerdict v;
  if (use_oracle) {
    ReachabilityGraph rg = build_rg(s);
    if (!rg.complete) {
      v.status = LivenessVerdict::Status::Inconclusive;
      v.reason = "reachability graph truncated";
    } else {
      v.status = oracle_live(rg, s.net) ? LivenessVerdict::Status::Live
                                        : LivenessVerdict::Status::NonLive;
    }
  } else {
    v = check_liveness(s, budget);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (v.deadlock && !is_deadlock(s.net, *v.deadlock))
    throw PnetError("internal error: deadlock witness failed replay");
  if (json) {
    Json j = to_json(s.net, v);
    j["elapsed_ms"] = ms;
    std::cout << j.dump(2) << "\n";
  } else {
    Json j = to_json(s.net, v);
    std::cout << "liveness: " << j["status"].get<std::string>();
    if (!v.reason.empty()) std::cout << " (" << v.reason << ")";
    std::cout << " [" << ms << " ms]\n";
    if (v.deadlock)
      std::cout << "  deadlock: " << to_json(s.net, *v.deadlock).dump() << "\n";
  }
  switch (v.status) {
    case LivenessVerdict::Status::Live: return kOk;
    case LivenessVerdict::Status::NonLive: return kRefuted;
    default: return kError;
  }
}

int run_reversibility(const std::string& net_arg, int kmax, bool json) {
  System s = load_net(net_arg);
  ReversibilityVerdict v = check_reversibility(s, kmax);
  if (v.tsequence && !validate_tsequence(s, v.tsequence->sequence))
    throw PnetError("internal error: T-sequence witness failed replay");
  if (json) {
    std::cout << to_json(s.net, v).dump(2) << "\n";
  } else {
    Json j = to_json(s.net, v);
    std::cout << "reversibility: " << j["status"].get<std::string>();
    if (!v.reason.empty()) std::cout << " (" << v.reason << ")";
    std::cout << "\n";
    if (v.tsequence)
      std::cout << "  tsequence: " << format_sequence(s.net, v.tsequence->sequence) << "\n";
  }
  switch (v.status) {
    case ReversibilityVerdict::Status::Reversible: return kOk;
    case ReversibilityVerdict::Status::NotReversible: return kRefuted;
    default: return kError;
  }
}

int run_reach(const std::string& net_arg, long max_nodes, const std::string& dot_path,
              bool json) {
  System s = load_net(net_arg);
  ExplorationLimits limits;
  limits.max_nodes = max_nodes;
  ReachabilityGraph rg = build_rg(s, limits);
  bool deadlock = false;
  for (std::size_t i = 0; i < rg.nodes.size() && !deadlock; ++i)
    deadlock = is_deadlock(s.net, rg.nodes[i]);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) throw PnetError("cannot write '" + dot_path + "'");
    out << to_dot(rg, s.net);
  }
  if (json) {
    Json j;
    j["nodes"] = rg.nodes.size();
    j["arcs"] = rg.arcs.size();
    j["complete"] = rg.complete;
    j["deadlock_found"] = deadlock;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "nodes: " << rg.nodes.size() << "\narcs: " << rg.arcs.size()
              << "\ncomplete: " << (rg.complete ? "yes" : "no")
              << "\ndeadlock_found: " << (deadlock ? "yes" : "no") << "\n";
  }
  if (!rg.complete) return kError;
  return deadlock ? kRefuted : kOk;
}

int run_export_ilp(const std::string& net_arg, const std::string& out_path) {
  System s = load_net(net_arg);
  DeadlockIlp ilp = deadlock_ilp(s);
  std::vector<std::string> comments;
  comments.push_back("potentially reachable deadlock model");
  comments.push_back("variables: m_* marking, y_* firing counts");
  for (const auto& c : ilp.model.constraints)
    if (c.name.rfind("nonfire_", 0) == 0)
      comments.push_back("nonfire " + c.name.substr(8));
  std::string text = export_lp(ilp.model, comments);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw PnetError("cannot write '" + out_path + "'");
    out << text;
  }
  return kOk;
}

int run_bounds(const std::string& net_arg, bool json) {
  System s = load_net(net_arg);
  Json j = bounds_json(s);
  if (json) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& [k, v] : j.items()) std::cout << k << ": " << v.get<std::string>() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted Petri net analysis (liveness, reversibility, reachability)"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json appear after the subcommand name
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string net_arg;
  auto* classify_cmd = app.add_subcommand("classify", "structural class flags");
  classify_cmd->add_option("net", net_arg, "net file or fixture name")->required();

  bool use_oracle = false;
  long budget = 200000;
  auto* liveness_cmd = app.add_subcommand("liveness", "liveness decision (state-equation ILP)");
  liveness_cmd->add_option("net", net_arg)->required();
  liveness_cmd->add_flag("--oracle", use_oracle, "use the reachability-graph oracle instead");
  liveness_cmd->add_option("--budget", budget, "ILP node budget");

  int kmax = 4;
  auto* rev_cmd = app.add_subcommand("reversibility", "reversibility for live H1S systems");
  rev_cmd->add_option("net", net_arg)->required();
  rev_cmd->add_option("--kmax", kmax, "maximal T-semiflow multiple searched");

  long max_nodes = 100000;
  std::string dot_path;
  auto* reach_cmd = app.add_subcommand("reach", "bounded reachability graph");
  reach_cmd->add_option("net", net_arg)->required();
  reach_cmd->add_option("--max-nodes", max_nodes, "node cap");
  reach_cmd->add_option("--dot", dot_path, "write DOT to this path");

  std::string out_path;
  auto* export_cmd = app.add_subcommand("export-ilp", "write the liveness ILP in LP format");
  export_cmd->add_option("net", net_arg)->required();
  export_cmd->add_option("-o,--output", out_path, "output path (default stdout)");

  auto* bounds_cmd = app.add_subcommand("bounds", "structural bound upper estimates");
  bounds_cmd->add_option("net", net_arg)->required();

  auto* gen_cmd = app.add_subcommand("gen", "emit a generated model in the net DSL");
  std::string model;
  std::vector<std::string> params;
  gen_cmd->add_option("model", model, "swimming-pool | emblem | emblem-reduced | fixture")
      ->required();
  gen_cmd->add_option("params", params, "model parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify_cmd)) return run_classify(net_arg, json);
    if (app.got_subcommand(liveness_cmd)) return run_liveness(net_arg, use_oracle, budget, json);
    if (app.got_subcommand(rev_cmd)) return run_reversibility(net_arg, kmax, json);
    if (app.got_subcommand(reach_cmd)) return run_reach(net_arg, max_nodes, dot_path, json);
    if (app.got_subcommand(export_cmd)) return run_export_ilp(net_arg, out_path);
    if (app.got_subcommand(bounds_cmd)) return run_bounds(net_arg, json);
    if (app.got_subcommand(gen_cmd)) {
      using pnet::Int;
      auto need = [&](std::size_t n) {
        if (params.size() != n)
          throw pnet::PnetError("expected " + std::to_string(n) + " parameters");
      };
      if (model == "swimming-pool") {
        need(3);
        std::cout << pnet::serialize(
            pnet::gen_swimming_pool(Int(params[0]), Int(params[1]), Int(params[2])));
      } else if (model == "emblem") {
        need(9);
        std::vector<Int> m;
        for (auto& p : params) m.push_back(Int(p));
        std::cout << pnet::serialize(pnet::gen_emblem(m));
      } else if (model == "emblem-reduced") {
        need(6);
        std::vector<Int> m;
        for (auto& p : params) m.push_back(Int(p));
        std::cout << pnet::serialize(pnet::gen_emblem_reduced(m));
      } else if (model == "fixture") {
        need(1);
        const auto& fx = pnet::fixtures();
        auto it = fx.find(params[0]);
        if (it == fx.end()) throw pnet::PnetError("unknown fixture '" + params[0] + "'");
        std::cout << pnet::serialize(it->second.system);
      } else {
        throw pnet::PnetError("unknown model '" + model + "'");
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
