#include "voacheck/vec.hpp"

namespace voacheck {

std::string Vec::to_string(const std::function<std::string(int)>& name) const {
  if (coords_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : coords_) {
    if (!first) out += " + ";
    first = false;
    if (c != 1) out += "(" + voacheck::to_string(c) + ")*";
    out += name(k);
  }
  return out;
}

}  // namespace voacheck
