#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace ceg {

inline constexpr double kDefaultTolerance = 1e-9;

// Graph-local vertex handle. Identity is meaningless across graphs; files
// refer to vertices by string keys instead.
struct VertexId {
  std::uint32_t value = 0;

  auto operator<=>(const VertexId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, VertexId v) {
  return os << 'v' << v.value;
}

struct Colour {
  std::string name;

  auto operator<=>(const Colour&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Colour& c) {
  return os << c.name;
}

struct Edge {
  VertexId source;
  VertexId target;
  std::string label;
  std::optional<double> theta;
  std::optional<std::uint64_t> count;
  // Label as written in the input, when label equivalence rewrote it.
  std::optional<std::string> original_label;
};

struct PathStep {
  Colour colour;
  std::string label;

  auto operator<=>(const PathStep&) const = default;
};

// A root-to-leaf (or root-to-sink) path as its sequence of
// (vertex colour, edge label) tuples.
struct PathSignature {
  std::vector<PathStep> steps;

  std::size_t size() const { return steps.size(); }
  auto operator<=>(const PathSignature&) const = default;
};

using PathSet = std::set<PathSignature>;

std::ostream& operator<<(std::ostream& os, const PathSignature& path);

}  // namespace ceg

template <>
struct std::hash<ceg::VertexId> {
  std::size_t operator()(ceg::VertexId v) const noexcept {
    return std::hash<std::uint32_t>{}(v.value);
  }
};
