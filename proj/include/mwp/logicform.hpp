#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwp/quantity.hpp"
#include "mwp/rational.hpp"
#include "mwp/solution_type.hpp"

namespace mwp {

// A term of the logic language: a constant symbol, a number, a match
// variable (?x) or a fresh variable ($x, consequent-only).
struct Term {
  enum Kind { Constant, Number, MatchVar, FreshVar };
  Kind kind = Constant;
  std::string text;  // symbol or variable name (without the ?/$ sigil)
  Rational number;

  static Term constant(std::string s) { return {Constant, std::move(s), {}}; }
  static Term num(Rational r) { return {Number, "", r}; }
  static Term match_var(std::string s) { return {MatchVar, std::move(s), {}}; }
  static Term fresh_var(std::string s) { return {FreshVar, std::move(s), {}}; }

  bool is_var() const { return kind == MatchVar || kind == FreshVar; }
  bool operator==(const Term& o) const;
  std::string str() const;
};

// Role-tagged first-order fact; function-style facts (quan) carry a value.
struct Fact {
  std::string pred;
  std::vector<Term> args;
  std::optional<Rational> value;

  bool ground() const;
  bool operator==(const Fact& o) const;
  std::string str() const;
};

Fact make_fact(std::string pred, std::vector<Term> args, std::optional<Rational> value = std::nullopt);

// Insertion-ordered set of ground facts with a predicate index.
class FactSet {
 public:
  // Returns true when the fact was new. Ground facts only.
  bool insert(Fact f);
  bool contains(const Fact& f) const;
  const std::vector<Fact>& facts() const { return facts_; }
  size_t size() const { return facts_.size(); }
  const std::vector<int>& by_pred(const std::string& pred) const;

  // Value of the quan fact with the given id, if present.
  std::optional<Rational> quan_value(const std::string& id) const;
  const Fact* find_quan(const std::string& id) const;

  bool operator==(const FactSet& o) const;

 private:
  std::vector<Fact> facts_;
  std::map<std::string, std::vector<int>> index_;
  std::map<std::string, int> keys_;
};

// The executable question form: one of the four two-operand arithmetic
// utilities, Sum over a function/condition pattern pair, or the TVQ
// final-state evaluator.
struct UtilityCall {
  SolutionType type = SolutionType::Addition;
  std::string first, second;           // quantity ids for arithmetic utilities
  std::vector<Fact> function_pattern;  // arithmetic: ground operand facts; Sum/TVQF: quan pattern
  std::vector<Fact> condition;         // Sum/TVQF condition pattern
  std::string str() const;
};

struct OperandConfig;  // operands.hpp

// Body transformation: quan/role/qmap/price facts per Fig-style layout.
FactSet transform_body(const Extraction& ex);

// Question transformation into a utility call. Arithmetic types require
// an operand configuration; Sum/TVQF derive patterns from the question.
UtilityCall transform_question(const Extraction& ex, SolutionType stype, const OperandConfig* operands);

// Logic-form text format: one statement per line, facts joined by '&',
// 'ask' lines for utility calls, '#' comments.
std::string to_text(const FactSet& fs);
FactSet factset_from_text(const std::string& text);
Fact parse_fact_text(const std::string& text);
std::vector<Fact> parse_conjunction(const std::string& text);

}  // namespace mwp
