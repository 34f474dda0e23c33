#pragma once

#include <string>
#include <vector>

#include "cfreal/extraction.hpp"
#include "cfreal/rational.hpp"
#include "cfreal/stream.hpp"
#include "oracles.hpp"

namespace support {

inline std::vector<cfr::Integer> ints(std::initializer_list<long> v) {
  return std::vector<cfr::Integer>(v.begin(), v.end());
}

inline std::vector<cfr::Integer> first_terms(const cfr::Stream& s, std::size_t n) {
  auto p = cfr::leading_terms(s, n);
  return p.certified;
}

// Reads a stream that is expected to end, returning everything it certified.
inline cfr::TermPrefix read_all(const cfr::Stream& s) { return cfr::leading_terms(s, 1000000); }

inline std::string join(const std::vector<cfr::Integer>& v) {
  std::string out;
  for (const auto& t : v) out += (out.empty() ? "" : " ") + t.get_str();
  return out;
}

// The enclosure overlaps the oracle interval, so the value it encloses can be
// the true one.
inline bool consistent(const cfr::Interval& enc, const oracle::Encl& o) {
  return enc.lo() <= cfr::ExtRational(o.hi) && cfr::ExtRational(o.lo) <= enc.hi();
}

}  // namespace support
