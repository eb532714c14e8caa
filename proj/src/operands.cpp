#include "mwp/operands.hpp"

#include <cstdio>
#include <sstream>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

RelationPrior::RelationPrior() {
  for (auto& row : table)
    for (double& cell : row) cell = 1.0 / 3.0;
}

std::string RelationPrior::to_text() const {
  std::string out;
  for (SolutionType s : all_solution_types()) {
    for (int r = -1; r <= 1; ++r) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%s %d %.17g\n", to_string(s).c_str(), r, p(s, r));
      out += buf;
    }
  }
  return out;
}

RelationPrior RelationPrior::from_text(const std::string& text) {
  RelationPrior prior;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_ws(line);
    if (cols.size() != 3) throw ParseError("relation prior line needs 'type r prob': " + line);
    SolutionType s = solution_type_from_string(cols[0]);
    int r = std::atoi(cols[1].c_str());
    if (r < -1 || r > 1) throw ParseError("relation prior r outside {-1,0,1}: " + line);
    prior.table[static_cast<int>(s)][r + 1] = std::strtod(cols[2].c_str(), nullptr);
  }
  return prior;
}

namespace {

bool role_match(const Quantity& q, const QuestionQuantity& q0, const char* role) {
  auto a = q.role_tags.find(role);
  auto b = q0.role_tags.find(role);
  if (a == q.role_tags.end() || b == q0.role_tags.end()) return false;
  return lower(a->second) == lower(b->second);
}

bool role_exists(const QuestionQuantity& q0, const char* role) {
  return q0.role_tags.count(role) > 0;
}

}  // namespace

const std::vector<std::string>& operand_feature_names() {
  static const std::vector<std::string> names = {
      "type=Addition", "type=Subtraction", "type=Multiplication", "type=Division",
      "in_qmap", "value=1",
      "n<2", "n=2", "n=3", "n=4", "n>4",
      "im_entity", "ie_entity", "im_verb", "ie_verb",
      "ex_nsubj", "tm_nsubj=exact", "tm_nsubj=quasi", "tm_nsubj=unmatch",
      "ex_modifier", "im_modifier",
      "ex_place", "im_place",
      "ex_temporal", "im_temporal",
      "ex_xcomp", "im_xcomp"};
  return names;
}

FeatureVec extract_operand_features(const Quantity& q, const QuestionQuantity& q0,
                                    const Extraction& ex, SolutionType s, const Lexicon& lex) {
  FeatureVec f;
  auto put = [&](const std::string& name, bool value) { f.emplace_back(name, value ? 1.0 : 0.0); };

  put("type=Addition", s == SolutionType::Addition);
  put("type=Subtraction", s == SolutionType::Subtraction);
  put("type=Multiplication", s == SolutionType::Multiplication);
  put("type=Division", s == SolutionType::Division);

  bool in_map = false;
  for (const auto& m : ex.maps)
    if (m.from_id == q.id || m.to_id == q.id) in_map = true;
  put("in_qmap", in_map);
  put("value=1", q.value == Rational(1));

  int n = static_cast<int>(ex.quantities.size());
  put("n<2", n < 2);
  put("n=2", n == 2);
  put("n=3", n == 3);
  put("n=4", n == 4);
  put("n>4", n > 4);

  put("im_entity", lower(q.entity) == lower(q0.entity) && q0.entity != "#");
  put("ie_entity", q0.entity != "#" && lex.entails(q.entity, q0.entity));
  put("im_verb", !q.verb.empty() && q.verb == q0.verb);
  put("ie_verb", !q.verb.empty() && !q0.verb.empty() && lex.entails(q.verb, q0.verb));

  put("ex_nsubj", role_exists(q0, "nsubj"));
  bool exact = role_match(q, q0, "nsubj");
  bool quasi = !exact && (!role_exists(q0, "nsubj") || q0.subject_plural_pronoun);
  put("tm_nsubj=exact", exact);
  put("tm_nsubj=quasi", quasi);
  put("tm_nsubj=unmatch", !exact && !quasi);

  put("ex_modifier", role_exists(q0, "modifier"));
  put("im_modifier", role_match(q, q0, "modifier"));
  put("ex_place", role_exists(q0, "place"));
  put("im_place", role_match(q, q0, "place"));
  put("ex_temporal", role_exists(q0, "temporal"));
  put("im_temporal", role_match(q, q0, "temporal"));
  put("ex_xcomp", role_exists(q0, "xcomp"));
  put("im_xcomp", role_match(q, q0, "xcomp"));
  return f;
}

double score_config(const OperandConfig& config, const std::vector<double>& select_probs,
                    const RelationPrior& prior, SolutionType s) {
  double score = prior.p(s, config.r);
  for (size_t i = 0; i < select_probs.size(); ++i) {
    double p = select_probs[i];
    score *= config.selected[i] ? p : (1.0 - p);
  }
  return score;
}

std::vector<OperandConfig> enumerate_configs(const Extraction& ex) {
  std::vector<OperandConfig> out;
  int n = static_cast<int>(ex.quantities.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational& vi = ex.quantities[i].value;
      const Rational& vj = ex.quantities[j].value;
      OperandConfig base;
      base.selected.assign(n, false);
      base.selected[i] = base.selected[j] = true;
      if (vi == vj) {
        base.r = 0;
        base.first = i;
        base.second = j;  // equal values: textual order
        out.push_back(base);
      } else {
        int hi = vi > vj ? i : j;
        int lo = hi == i ? j : i;
        OperandConfig greater = base;
        greater.r = 1;
        greater.first = hi;
        greater.second = lo;
        out.push_back(greater);
        OperandConfig less = base;
        less.r = -1;
        less.first = lo;
        less.second = hi;
        out.push_back(less);
      }
    }
  }
  return out;
}

std::vector<double> operand_probabilities(const Extraction& ex, SolutionType s,
                                          const LinearModel& operand_model, const Lexicon& lex) {
  std::vector<double> probs;
  probs.reserve(ex.quantities.size());
  for (const auto& q : ex.quantities) {
    auto f = extract_operand_features(q, ex.question, ex, s, lex);
    probs.push_back(operand_model.probabilities(f)[0]);
  }
  return probs;
}

Rational apply_arithmetic(SolutionType s, const Rational& a, const Rational& b) {
  switch (s) {
    case SolutionType::Addition: return a + b;
    case SolutionType::Subtraction: return a - b;
    case SolutionType::Multiplication: return a * b;
    case SolutionType::Division:
      if (b.is_zero()) throw ArithmeticError("division by zero operand");
      return a / b;
    default: throw ContractError("apply_arithmetic on non-arithmetic type");
  }
}

OperandConfig select_operands(const Extraction& ex, SolutionType s, const LinearModel& operand_model,
                              const RelationPrior& prior, const Lexicon& lex) {
  if (!is_arithmetic(s)) throw ContractError("operand selection only applies to arithmetic types");
  if (ex.quantities.size() < 2)
    throw ContractError("insufficient operands: need at least 2 quantities, have " +
                        std::to_string(ex.quantities.size()));
  auto probs = operand_probabilities(ex, s, operand_model, lex);
  auto configs = enumerate_configs(ex);
  const OperandConfig* best = nullptr;
  double best_score = -1.0;
  for (const auto& c : configs) {
    double score = score_config(c, probs, prior, s);
    if (score > best_score) {  // strict: enumeration order implements the tie-break
      best_score = score;
      best = &c;
    }
  }
  return *best;
}

}  // namespace mwp
