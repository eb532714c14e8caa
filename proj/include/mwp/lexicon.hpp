#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mwp/rational.hpp"

namespace mwp {

enum class VerbClass { Positive, Negative, Stative };

const std::string& to_string(VerbClass vc);
VerbClass verb_class_from_string(const std::string& s);

struct VerbForm {
  enum Kind { Base, Past, PastPart, ThirdSg, Gerund } kind;
  std::string lemma;
};

// Bundled closed-world lexicon: verb morphology and classes, irregular
// noun plurals, person names, adjectives, temporal nouns, and the
// hypernym table used for entity entailment.
class Lexicon {
 public:
  // Loads verbs.txt, verb_classes.txt, nouns_irregular.txt, names.txt,
  // modifiers.txt, temporal.txt and hypernyms.txt from `asset_dir`.
  static Lexicon load(const std::string& asset_dir);

  std::optional<VerbForm> verb_form(const std::string& word) const;
  bool is_verb_lemma(const std::string& lemma) const { return verb_class_.count(lemma) > 0; }
  VerbClass verb_class(const std::string& lemma) const;

  // Singular lemma for a noun surface form; flags plural when detected.
  std::string noun_lemma(const std::string& word, bool* was_plural = nullptr) const;
  std::string plural_of(const std::string& lemma) const;

  bool is_name(const std::string& word) const { return names_.count(word) > 0; }
  bool is_modifier(const std::string& word) const { return modifiers_.count(lower(word)) > 0; }
  bool is_temporal(const std::string& word) const { return temporal_.count(lower(word)) > 0; }

  // Entity entailment: reflexive after lemma normalization, otherwise a
  // directed path in the hypernym table (hyponym -> hypernym).
  bool entails(const std::string& specific, const std::string& general) const;
  // Adds a pair at runtime (tests exercise relevance monotonicity).
  void add_hypernym(const std::string& hyponym, const std::string& hypernym);

  // Digits, decimals, $-amounts and number words zero..one hundred plus
  // "dozen". Returns nothing when the token is not a number.
  static std::optional<Rational> number_value(const std::string& token);
  static bool is_money_token(const std::string& token);  // $-prefixed

  const std::vector<std::string>& name_list() const { return name_list_; }
  const std::vector<std::string>& modifier_list() const { return modifier_list_; }

 private:
  static std::string lower(const std::string& s);

  std::map<std::string, VerbForm> verb_forms_;        // surface -> form
  std::map<std::string, VerbClass> verb_class_;       // lemma -> class
  std::map<std::string, std::string> irregular_sg_;   // plural -> singular
  std::map<std::string, std::string> irregular_pl_;   // singular -> plural
  std::set<std::string> names_;
  std::set<std::string> modifiers_;
  std::set<std::string> temporal_;
  std::multimap<std::string, std::string> hypernyms_; // hyponym -> hypernym
  std::vector<std::string> name_list_;
  std::vector<std::string> modifier_list_;
};

}  // namespace mwp
