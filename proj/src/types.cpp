#include "ceg/types.hpp"

namespace ceg {

std::ostream& operator<<(std::ostream& os, const PathSignature& path) {
  os << '[';
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    if (i) os << ", ";
    os << '(' << path.steps[i].colour.name << ", " << path.steps[i].label
       << ')';
  }
  return os << ']';
}

}  // namespace ceg
