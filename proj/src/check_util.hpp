#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "norden/ambient.hpp"

namespace norden::detail {

inline std::vector<std::size_t> one_based(std::initializer_list<std::size_t> idx) {
  std::vector<std::size_t> out;
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

inline Check failed(std::string name, std::vector<std::size_t> witness, std::string detail) {
  return Check{std::move(name), false, std::move(witness), std::move(detail)};
}

inline Check passed(std::string name) { return Check{std::move(name), true, {}, {}}; }

inline std::size_t sz(Index i) { return static_cast<std::size_t>(i); }
inline Index ix(std::size_t i) { return static_cast<Index>(i); }

}  // namespace norden::detail
