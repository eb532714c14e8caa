#pragma once

#include <array>
#include <string>

#include "mwp/error.hpp"

namespace mwp {

// The six stereotype operation patterns a problem can be solved with.
// Enum order is the deterministic tie-break order for classification.
enum class SolutionType { Addition = 0, Subtraction, Multiplication, Division, Sum, TvqF };

constexpr int kSolutionTypeCount = 6;

constexpr std::array<SolutionType, kSolutionTypeCount> all_solution_types() {
  return {SolutionType::Addition,       SolutionType::Subtraction, SolutionType::Multiplication,
          SolutionType::Division,       SolutionType::Sum,         SolutionType::TvqF};
}

inline const std::string& to_string(SolutionType s) {
  static const std::array<std::string, kSolutionTypeCount> names = {
      "Addition", "Subtraction", "Multiplication", "Division", "Sum", "TVQ-F"};
  return names[static_cast<int>(s)];
}

inline SolutionType solution_type_from_string(const std::string& s) {
  for (SolutionType t : all_solution_types())
    if (to_string(t) == s) return t;
  throw ParseError("unknown solution type: " + s);
}

inline bool is_arithmetic(SolutionType s) {
  return s == SolutionType::Addition || s == SolutionType::Subtraction ||
         s == SolutionType::Multiplication || s == SolutionType::Division;
}

// Operand order matters for subtraction and division.
inline bool is_ordered(SolutionType s) {
  return s == SolutionType::Subtraction || s == SolutionType::Division;
}

}  // namespace mwp
