#include "pnet/core.hpp"

#include <algorithm>
#include <sstream>

namespace pnet {

namespace {
const Int kZero = 0;

template <typename K>
const Int& lookup(const std::vector<std::pair<K, Int>>& arcs, K key) {
  for (const auto& [k, w] : arcs)
    if (k == key) return w;
  return kZero;
}

template <typename K>
void insert_sorted(std::vector<std::pair<K, Int>>& arcs, K key, Int w) {
  auto it = std::lower_bound(arcs.begin(), arcs.end(), key,
                             [](const std::pair<K, Int>& a, K k) { return a.first < k; });
  arcs.insert(it, {key, std::move(w)});
}
}  // namespace

Pid Net::add_place(const std::string& name) {
  if (place_index_.count(name) || trans_index_.count(name))
    throw PnetError("duplicate identifier '" + name + "'");
  Pid id = place_count();
  place_names_.push_back(name);
  place_index_[name] = id;
  p_out_.emplace_back();
  p_in_.emplace_back();
  return id;
}

Tid Net::add_transition(const std::string& name) {
  if (place_index_.count(name) || trans_index_.count(name))
    throw PnetError("duplicate identifier '" + name + "'");
  Tid id = transition_count();
  trans_names_.push_back(name);
  trans_index_[name] = id;
  pre_.emplace_back();
  post_.emplace_back();
  return id;
}

void Net::add_input_arc(Pid p, Tid t, Int weight) {
  if (p < 0 || p >= place_count()) throw PnetError("unknown place index");
  if (t < 0 || t >= transition_count()) throw PnetError("unknown transition index");
  if (weight < 1) throw PnetError("arc weight must be >= 1");
  if (input_weight(p, t) != 0)
    throw PnetError("duplicate arc " + place_name(p) + " -> " + transition_name(t));
  insert_sorted(pre_[t], p, weight);
  insert_sorted(p_out_[p], t, weight);
}

void Net::add_output_arc(Tid t, Pid p, Int weight) {
  if (p < 0 || p >= place_count()) throw PnetError("unknown place index");
  if (t < 0 || t >= transition_count()) throw PnetError("unknown transition index");
  if (weight < 1) throw PnetError("arc weight must be >= 1");
  if (output_weight(t, p) != 0)
    throw PnetError("duplicate arc " + transition_name(t) + " -> " + place_name(p));
  insert_sorted(post_[t], p, weight);
  insert_sorted(p_in_[p], t, weight);
}

void Net::add_input_arc(const std::string& place_id, const std::string& trans_id, Int weight) {
  add_input_arc(place(place_id), transition(trans_id), std::move(weight));
}

void Net::add_output_arc(const std::string& trans_id, const std::string& place_id, Int weight) {
  add_output_arc(transition(trans_id), place(place_id), std::move(weight));
}

std::optional<Pid> Net::find_place(const std::string& name) const {
  auto it = place_index_.find(name);
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Tid> Net::find_transition(const std::string& name) const {
  auto it = trans_index_.find(name);
  if (it == trans_index_.end()) return std::nullopt;
  return it->second;
}

Pid Net::place(const std::string& name) const {
  auto p = find_place(name);
  if (!p) throw PnetError("unknown place '" + name + "'");
  return *p;
}

Tid Net::transition(const std::string& name) const {
  auto t = find_transition(name);
  if (!t) throw PnetError("unknown transition '" + name + "'");
  return *t;
}

const Int& Net::input_weight(Pid p, Tid t) const { return lookup(pre_.at(t), p); }
const Int& Net::output_weight(Tid t, Pid p) const { return lookup(post_.at(t), p); }

IVec IncidenceMatrix::times(const IVec& y) const {
  IVec r(rows.size(), 0);
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (std::size_t t = 0; t < y.size(); ++t)
      if (rows[p][t] != 0 && y[t] != 0) r[p] += rows[p][t] * y[t];
  return r;
}

IVec IncidenceMatrix::transpose_times(const IVec& x) const {
  IVec r(transition_count(), 0);
  for (std::size_t p = 0; p < rows.size(); ++p)
    if (x[p] != 0)
      for (std::size_t t = 0; t < r.size(); ++t)
        if (rows[p][t] != 0) r[t] += rows[p][t] * x[p];
  return r;
}

System::System(Net n, Marking m0) : net(std::move(n)), initial(std::move(m0)) {
  if (static_cast<int>(initial.size()) != net.place_count())
    throw PnetError("initial marking length does not match place count");
  if (!all_nonnegative(initial)) throw PnetError("initial marking has a negative entry");
}

IncidenceMatrix incidence(const Net& net) {
  if (!net.non_trivial()) throw PnetError("incidence of a trivial net");
  IncidenceMatrix I;
  I.rows.assign(net.place_count(), IVec(net.transition_count(), 0));
  for (Tid t = 0; t < net.transition_count(); ++t) {
    for (const auto& [p, w] : net.post(t)) I.rows[p][t] += w;
    for (const auto& [p, w] : net.pre(t)) I.rows[p][t] -= w;
  }
  return I;
}

bool enabled(const Net& net, const Marking& m, Tid t) {
  if (t < 0 || t >= net.transition_count()) throw PnetError("unknown transition index");
  for (const auto& [p, w] : net.pre(t))
    if (m[p] < w) return false;
  return true;
}

Marking fire(const Net& net, const Marking& m, Tid t) {
  if (!enabled(net, m, t))
    throw NotEnabledError("transition '" + net.transition_name(t) + "' is not enabled", t, 0);
  Marking r = m;
  for (const auto& [p, w] : net.pre(t)) r[p] -= w;
  for (const auto& [p, w] : net.post(t)) r[p] += w;
  return r;
}

Marking fire_sequence(const Net& net, const Marking& m0, const FiringSequence& sigma) {
  Marking m = m0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    Tid t = sigma[k];
    if (!enabled(net, m, t))
      throw NotEnabledError("step " + std::to_string(k + 1) + ": transition '" +
                                net.transition_name(t) + "' is not enabled",
                            t, k + 1);
    for (const auto& [p, w] : net.pre(t)) m[p] -= w;
    for (const auto& [p, w] : net.post(t)) m[p] += w;
  }
  return m;
}

bool feasible(const Net& net, const Marking& m0, const FiringSequence& sigma) {
  Marking m = m0;
  for (Tid t : sigma) {
    if (!enabled(net, m, t)) return false;
    for (const auto& [p, w] : net.pre(t)) m[p] -= w;
    for (const auto& [p, w] : net.post(t)) m[p] += w;
  }
  return true;
}

ParikhVector parikh(const FiringSequence& sigma, int transition_count) {
  ParikhVector y(transition_count, 0);
  for (Tid t : sigma) y.at(t) += 1;
  return y;
}

std::vector<Tid> support(const ParikhVector& y) {
  std::vector<Tid> s;
  for (std::size_t t = 0; t < y.size(); ++t)
    if (y[t] > 0) s.push_back(static_cast<Tid>(t));
  return s;
}

FiringSequence residue(const FiringSequence& tau, const FiringSequence& sigma) {
  std::vector<bool> erased(tau.size(), false);
  // One erased-flag pass per symbol of sigma, matching the inductive
  // definition tau - (t sigma') = (tau - t) - sigma'.
  for (Tid t : sigma) {
    for (std::size_t i = 0; i < tau.size(); ++i) {
      if (!erased[i] && tau[i] == t) {
        erased[i] = true;
        break;
      }
    }
  }
  FiringSequence r;
  for (std::size_t i = 0; i < tau.size(); ++i)
    if (!erased[i]) r.push_back(tau[i]);
  return r;
}

FiringSequence residue_by_vector(const FiringSequence& tau, const ParikhVector& y) {
  IVec remaining = y;
  FiringSequence r;
  for (Tid t : tau) {
    if (t < static_cast<int>(remaining.size()) && remaining[t] > 0)
      remaining[t] -= 1;
    else
      r.push_back(t);
  }
  return r;
}

FiringSequence concat(const FiringSequence& a, const FiringSequence& b) {
  FiringSequence r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

FiringSequence project(const FiringSequence& sigma, const std::vector<bool>& keep) {
  FiringSequence r;
  for (Tid t : sigma)
    if (keep[t]) r.push_back(t);
  return r;
}

std::string format_sequence(const Net& net, const FiringSequence& sigma) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) os << ' ';
    os << net.transition_name(sigma[i]);
  }
  return os.str();
}

std::string format_marking(const Marking& m) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ',';
    os << m[i];
  }
  os << ')';
  return os.str();
}

}  // namespace pnet
