#include "mwp/lexicon.hpp"

#include <cctype>
#include <fstream>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

const std::map<std::string, int>& number_words() {
  static const std::map<std::string, int> words = [] {
    std::map<std::string, int> m;
    const char* units[] = {"zero", "one", "two",   "three", "four", "five",
                           "six",  "seven", "eight", "nine"};
    for (int i = 0; i < 10; ++i) m[units[i]] = i;
    const char* teens[] = {"ten",     "eleven",  "twelve",    "thirteen", "fourteen",
                           "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
    for (int i = 0; i < 10; ++i) m[teens[i]] = 10 + i;
    const char* tens[] = {"twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};
    for (int i = 0; i < 8; ++i) m[tens[i]] = 20 + 10 * i;
    // hyphenated compounds twenty-one .. ninety-nine
    for (int t = 0; t < 8; ++t)
      for (int u = 1; u < 10; ++u) m[std::string(tens[t]) + "-" + units[u]] = 20 + 10 * t + u;
    m["hundred"] = 100;
    m["one hundred"] = 100;
    m["dozen"] = 12;
    return m;
  }();
  return words;
}

}  // namespace

const std::string& to_string(VerbClass vc) {
  static const std::string names[] = {"positive", "negative", "stative"};
  return names[static_cast<int>(vc)];
}

VerbClass verb_class_from_string(const std::string& s) {
  if (s == "positive") return VerbClass::Positive;
  if (s == "negative") return VerbClass::Negative;
  if (s == "stative") return VerbClass::Stative;
  throw ParseError("unknown verb class: " + s);
}

std::string Lexicon::lower(const std::string& s) { return mwp::lower(s); }

Lexicon Lexicon::load(const std::string& asset_dir) {
  Lexicon lex;
  for (const auto& line : read_lines(asset_dir + "/verbs.txt")) {
    auto cols = split_ws(line);
    if (cols.size() != 5) throw ParseError("verbs.txt: expected 5 columns: " + line);
    const std::string& lemma = cols[0];
    lex.verb_forms_[lemma] = {VerbForm::Base, lemma};
    lex.verb_forms_[cols[1]] = {VerbForm::Past, lemma};
    if (!lex.verb_forms_.count(cols[2]) || cols[2] != cols[1])
      lex.verb_forms_[cols[2]] = {VerbForm::PastPart, lemma};
    lex.verb_forms_[cols[3]] = {VerbForm::ThirdSg, lemma};
    lex.verb_forms_[cols[4]] = {VerbForm::Gerund, lemma};
  }
  for (const auto& line : read_lines(asset_dir + "/verb_classes.txt")) {
    auto cols = split_ws(line);
    if (cols.size() != 2) throw ParseError("verb_classes.txt: expected 2 columns: " + line);
    lex.verb_class_[cols[0]] = verb_class_from_string(cols[1]);
  }
  for (const auto& line : read_lines(asset_dir + "/nouns_irregular.txt")) {
    auto cols = split_ws(line);
    if (cols.size() != 2) throw ParseError("nouns_irregular.txt: expected 2 columns: " + line);
    lex.irregular_sg_[cols[0]] = cols[1];
    lex.irregular_pl_[cols[1]] = cols[0];
  }
  for (const auto& line : read_lines(asset_dir + "/names.txt")) {
    lex.names_.insert(line);
    lex.name_list_.push_back(line);
  }
  for (const auto& line : read_lines(asset_dir + "/modifiers.txt")) {
    lex.modifiers_.insert(line);
    lex.modifier_list_.push_back(line);
  }
  for (const auto& line : read_lines(asset_dir + "/temporal.txt")) lex.temporal_.insert(lower(line));
  for (const auto& line : read_lines(asset_dir + "/hypernyms.txt")) {
    auto cols = split_ws(line);
    if (cols.size() != 2) throw ParseError("hypernyms.txt: expected 2 columns: " + line);
    lex.hypernyms_.emplace(cols[0], cols[1]);
  }
  return lex;
}

std::optional<VerbForm> Lexicon::verb_form(const std::string& word) const {
  auto it = verb_forms_.find(lower(word));
  if (it == verb_forms_.end()) return std::nullopt;
  return it->second;
}

VerbClass Lexicon::verb_class(const std::string& lemma) const {
  auto it = verb_class_.find(lemma);
  if (it == verb_class_.end()) return VerbClass::Stative;
  return it->second;
}

std::string Lexicon::noun_lemma(const std::string& word, bool* was_plural) const {
  std::string w = lower(word);
  if (was_plural) *was_plural = false;
  auto irr = irregular_sg_.find(w);
  if (irr != irregular_sg_.end()) {
    if (was_plural) *was_plural = true;
    return irr->second;
  }
  auto ends_with = [&](const char* suf) {
    size_t n = std::string(suf).size();
    return w.size() > n && w.compare(w.size() - n, n, suf) == 0;
  };
  if (ends_with("ies") && w.size() > 3) {
    if (was_plural) *was_plural = true;
    return w.substr(0, w.size() - 3) + "y";  // candies -> candy
  }
  if (ends_with("xes") || ends_with("sses") || ends_with("zzes") || ends_with("shes") ||
      ends_with("ches")) {
    if (was_plural) *was_plural = true;
    return w.substr(0, w.size() - 2);  // boxes -> box, dresses -> dress
  }
  if (w.size() > 2 && w.back() == 's' && w[w.size() - 2] != 's' && w[w.size() - 2] != 'u') {
    if (was_plural) *was_plural = true;
    return w.substr(0, w.size() - 1);
  }
  return w;
}

std::string Lexicon::plural_of(const std::string& lemma) const {
  auto irr = irregular_pl_.find(lemma);
  if (irr != irregular_pl_.end()) return irr->second;
  auto ends_with = [&](const char* suf) {
    size_t n = std::string(suf).size();
    return lemma.size() >= n && lemma.compare(lemma.size() - n, n, suf) == 0;
  };
  if (ends_with("y") && lemma.size() > 1) {
    char prev = lemma[lemma.size() - 2];
    if (prev != 'a' && prev != 'e' && prev != 'i' && prev != 'o' && prev != 'u')
      return lemma.substr(0, lemma.size() - 1) + "ies";
  }
  if (ends_with("s") || ends_with("x") || ends_with("sh") || ends_with("ch")) return lemma + "es";
  return lemma + "s";
}

bool Lexicon::entails(const std::string& specific, const std::string& general) const {
  std::string from = noun_lemma(specific);
  std::string to = noun_lemma(general);
  if (from == to) return true;
  // bounded DFS up the hypernym table
  std::vector<std::string> stack = {from};
  std::set<std::string> seen = {from};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    auto [lo, hi] = hypernyms_.equal_range(cur);
    for (auto it = lo; it != hi; ++it) {
      if (it->second == to) return true;
      if (seen.insert(it->second).second) stack.push_back(it->second);
    }
  }
  return false;
}

void Lexicon::add_hypernym(const std::string& hyponym, const std::string& hypernym) {
  hypernyms_.emplace(hyponym, hypernym);
}

std::optional<Rational> Lexicon::number_value(const std::string& token) {
  if (token.empty()) return std::nullopt;
  std::string t = token;
  if (t[0] == '$') t = t.substr(1);
  if (t.empty()) return std::nullopt;
  bool numeric = true;
  bool any_digit = false;
  for (char c : t) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      any_digit = true;
    else if (c != '.' && c != '-')
      numeric = false;
  }
  if (numeric && any_digit) {
    try {
      return Rational::parse(t);
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }
  auto it = number_words().find(mwp::lower(token));
  if (it != number_words().end()) return Rational(it->second);
  return std::nullopt;
}

bool Lexicon::is_money_token(const std::string& token) { return !token.empty() && token[0] == '$'; }

}  // namespace mwp
