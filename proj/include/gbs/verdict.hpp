#pragma once

#include <string>

namespace gbs {

enum class Verdict { yes, no, undetermined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undetermined: return "undetermined";
  }
  return "?";
}

inline Verdict from_bool(bool b) { return b ? Verdict::yes : Verdict::no; }

}  // namespace gbs
