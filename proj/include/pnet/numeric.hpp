#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <vector>

namespace pnet {

/// Arbitrary-precision integer. Token counts, weights and Parikh entries
/// never overflow silently.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, used by the LP/ILP layer.
using Rat = boost::multiprecision::cpp_rational;

/// Dense integer vector indexed by place or transition position.
using IVec = std::vector<Int>;

inline bool all_nonnegative(const IVec& v) {
  for (const auto& x : v)
    if (x < 0) return false;
  return true;
}

/// Componentwise a >= b (vectors of equal length).
inline bool dominates(const IVec& a, const IVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

inline bool is_zero(const IVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline IVec add(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IVec sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Int sum(const IVec& v) {
  Int s = 0;
  for (const auto& x : v) s += x;
  return s;
}

inline Int vec_gcd(const IVec& v) {
  Int g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

/// Numerator/denominator helpers for Rat.
inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int floor_rat(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (q * rat_den(r) != rat_num(r) && rat_num(r) < 0) --q;
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int f = floor_rat(r);
  return f * rat_den(r) == rat_num(r) ? f : f + 1;
}

inline bool is_integral(const Rat& r) { return rat_den(r) == 1; }

}  // namespace pnet
