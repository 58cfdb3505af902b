#include "pnet/dsl.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace pnet {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

Int parse_count(const std::string& tok, int line, const char* what) {
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(std::string("invalid ") + what + " '" + tok + "'", line);
  return Int(tok);
}

}  // namespace

System parse_net(const std::string& text) {
  Net net;
  std::vector<std::pair<std::string, Int>> inits;
  struct PendingArc {
    std::string from, to;
    Int weight;
    int line;
  };
  std::vector<PendingArc> arcs;

  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "place") {
      if (toks.size() != 2 && toks.size() != 4)
        throw ParseError("expected 'place <id> [init <n>]'", line_no);
      if (!valid_id(toks[1])) throw ParseError("invalid identifier '" + toks[1] + "'", line_no);
      Int init = 0;
      if (toks.size() == 4) {
        if (toks[2] != "init") throw ParseError("expected 'init'", line_no);
        init = parse_count(toks[3], line_no, "token count");
      }
      if (net.find_place(toks[1]) || net.find_transition(toks[1]))
        throw ParseError("duplicate identifier '" + toks[1] + "'", line_no);
      net.add_place(toks[1]);
      inits.push_back({toks[1], init});
    } else if (kw == "trans") {
      if (toks.size() != 2) throw ParseError("expected 'trans <id>'", line_no);
      if (!valid_id(toks[1])) throw ParseError("invalid identifier '" + toks[1] + "'", line_no);
      if (net.find_place(toks[1]) || net.find_transition(toks[1]))
        throw ParseError("duplicate identifier '" + toks[1] + "'", line_no);
      net.add_transition(toks[1]);
    } else if (kw == "arc") {
      if ((toks.size() != 4 && toks.size() != 6) || toks[2] != "->")
        throw ParseError("expected 'arc <id> -> <id> [weight <n>]'", line_no);
      Int w = 1;
      if (toks.size() == 6) {
        if (toks[4] != "weight") throw ParseError("expected 'weight'", line_no);
        w = parse_count(toks[5], line_no, "weight");
        if (w < 1) throw ParseError("arc weight must be >= 1", line_no);
      }
      arcs.push_back({toks[1], toks[3], w, line_no});
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line_no);
    }
  }

  for (const auto& a : arcs) {
    bool from_place = net.find_place(a.from).has_value();
    bool from_trans = net.find_transition(a.from).has_value();
    bool to_place = net.find_place(a.to).has_value();
    bool to_trans = net.find_transition(a.to).has_value();
    if (!from_place && !from_trans)
      throw ParseError("undeclared identifier '" + a.from + "'", a.line);
    if (!to_place && !to_trans) throw ParseError("undeclared identifier '" + a.to + "'", a.line);
    if (from_place && to_place)
      throw ParseError("arc connects two places ('" + a.from + "' -> '" + a.to + "')", a.line);
    if (from_trans && to_trans)
      throw ParseError("arc connects two transitions ('" + a.from + "' -> '" + a.to + "')",
                       a.line);
    try {
      if (from_place)
        net.add_input_arc(a.from, a.to, a.weight);
      else
        net.add_output_arc(a.from, a.to, a.weight);
    } catch (const PnetError& e) {
      throw ParseError(e.what(), a.line);
    }
  }

  if (!net.non_trivial())
    throw ParseError("net needs at least one place and one transition", line_no ? line_no : 1);

  Marking m0(net.place_count(), 0);
  for (const auto& [name, tokens] : inits) m0[net.place(name)] = tokens;
  return System(std::move(net), std::move(m0));
}

std::string serialize(const System& s) {
  std::ostringstream os;
  const Net& net = s.net;
  for (Pid p = 0; p < net.place_count(); ++p) {
    os << "place " << net.place_name(p);
    if (s.initial[p] != 0) os << " init " << s.initial[p];
    os << '\n';
  }
  for (Tid t = 0; t < net.transition_count(); ++t) os << "trans " << net.transition_name(t) << '\n';
  for (Tid t = 0; t < net.transition_count(); ++t) {
    for (const auto& [p, w] : net.pre(t)) {
      os << "arc " << net.place_name(p) << " -> " << net.transition_name(t);
      if (w != 1) os << " weight " << w;
      os << '\n';
    }
    for (const auto& [p, w] : net.post(t)) {
      os << "arc " << net.transition_name(t) << " -> " << net.place_name(p);
      if (w != 1) os << " weight " << w;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace pnet
