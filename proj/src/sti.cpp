#include "mwp/sti.hpp"

#include <set>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

const std::vector<std::string>& sti_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (int i = 1; i <= 26; ++i) out.push_back("f" + std::to_string(i));
    return out;
  }();
  return names;
}

FeatureVec StiFeatures::to_features() const {
  FeatureVec out;
  for (int i = 0; i < 26; ++i) out.emplace_back(sti_feature_names()[i], f[i] ? 1.0 : 0.0);
  return out;
}

namespace {

bool rate_word(const std::string& det) {
  return det == "each" || det == "every" || det == "per" || det == "a" || det == "an";
}

}  // namespace

StiFeatures extract_sti_features(const Extraction& ex, const Annotation& ann, const StiConfig& cfg) {
  StiFeatures out;
  auto& f = out.f;
  const auto& qs = ex.quantities;
  const QuestionQuantity& q0 = ex.question;

  auto direct = [&](const Quantity& q) { return q.relevance == 2; };

  f[0] = q0.verb_class == VerbClass::Positive;  // (1)

  int n_direct = 0, n_direct_change = 0;
  int max_t_direct = INT32_MIN, max_t_all = INT32_MIN, min_t_all = INT32_MAX;
  for (const auto& q : qs) {
    max_t_all = std::max(max_t_all, q.time);
    min_t_all = std::min(min_t_all, q.time);
    if (!direct(q)) continue;
    ++n_direct;
    max_t_direct = std::max(max_t_direct, q.time);
    if (q.action != VerbClass::Stative) ++n_direct_change;
    if (q.action == VerbClass::Positive) {
      f[1] = true;                         // (2)
      if (q0.time < q.time) f[6] = true;   // (7)
    }
    if (q.action == VerbClass::Negative) {
      f[2] = true;                         // (3)
      if (q0.time < q.time) f[7] = true;   // (8)
    }
    if (q.action == VerbClass::Stative) {
      f[3] = true;                         // (4)
      if (q.time < q0.time) f[9] = true;   // (10)
    }
  }
  f[4] = n_direct > 2;          // (5)
  f[5] = n_direct_change == 2;  // (6)
  for (const auto& q : qs)      // (9): stative at the latest directly-related time
    if (direct(q) && q.action == VerbClass::Stative && q.time == max_t_direct) f[8] = true;
  f[10] = !qs.empty() && q0.time >= max_t_all;  // (11)
  f[11] = !qs.empty() && q0.time <= min_t_all;  // (12)

  f[12] = f[13] = f[14] = true;  // (13)(14)(15): vacuous over an empty range
  std::string first_verb;
  int first_time = INT32_MIN;
  for (const auto& q : qs) {
    if (!direct(q)) continue;
    if (first_verb.empty() && first_time == INT32_MIN) {
      first_verb = q.verb;
      first_time = q.time;
    }
    if (q.verb != first_verb) f[12] = false;   // (13)
    if (q.time != q0.time) f[13] = false;      // (14)
    if (q.time != first_time) f[14] = false;   // (15)
  }

  // (16)-(18): a directly-related quantity map-adjacent to an
  // indirectly-related one
  for (const auto& m : ex.maps) {
    const Quantity* a = ex.find(m.from_id);
    const Quantity* b = ex.find(m.to_id);
    if (!a || !b) continue;
    for (int dir = 0; dir < 2; ++dir) {
      const Quantity* qi = dir == 0 ? a : b;
      const Quantity* qj = dir == 0 ? b : a;
      if (qi->relevance != 2 || qj->relevance != 1) continue;
      if (qi->value > qj->value) f[15] = true;      // (16)
      if (rate_word(qi->determiner)) f[16] = true;  // (17)
      if (rate_word(qj->determiner)) f[17] = true;  // (18)
    }
  }

  // (19): three directly-related quantities sharing a verb
  std::map<std::string, int> verb_counts;
  for (const auto& q : qs)
    if (direct(q) && !q.verb.empty()) ++verb_counts[q.verb];
  for (const auto& [_, c] : verb_counts)
    if (c >= 3) f[18] = true;

  int qi_idx = ann.question_index();
  if (qi_idx >= 0) {
    const Sentence& qsent = ann.sentences[qi_idx];
    std::set<std::string> keywords = {"total", "altogether", "sum"};
    if (cfg.together_keyword) keywords.insert("together");
    std::set<Rational> question_numbers;
    for (size_t i = 0; i < qsent.tokens.size(); ++i) {
      const Token& t = qsent.tokens[i];
      std::string lw = lower(t.surface);
      if (keywords.count(lw)) f[19] = true;                                   // (20)
      if (lw == "in" && i + 1 < qsent.tokens.size() &&
          lower(qsent.tokens[i + 1].surface) == "all")
        f[19] = true;                                                         // (20) "in all"
      if (lw == "more" || lw == "than" || t.pos == "RBR") f[20] = true;       // (21)
      if (lw == "left") f[21] = true;                                         // (22)
      if (t.pos == "CD") question_numbers.insert(Rational::parse(t.lemma));
      if (t.lemma == "each" && i + 1 < qsent.tokens.size() &&
          (qsent.tokens[i + 1].pos == "NN" || qsent.tokens[i + 1].pos == "NNS"))
        f[24] = true;                                                         // (25)
    }
    for (const auto& q : qs)
      if (question_numbers.count(q.value)) f[22] = true;                      // (23)
  }

  // (24): "the rest <verb> ... E_U" in a body sentence
  for (int si = 0; si < static_cast<int>(ann.sentences.size()); ++si) {
    if (si == qi_idx) continue;
    const auto& toks = ann.sentences[si].tokens;
    for (size_t i = 0; i + 1 < toks.size(); ++i) {
      if (lower(toks[i].surface) != "the" || toks[i + 1].lemma != "rest") continue;
      bool saw_verb = false;
      for (size_t k = i + 2; k < toks.size(); ++k) {
        if (toks[k].pos.size() >= 2 && toks[k].pos[0] == 'V' && toks[k].pos[1] == 'B') saw_verb = true;
        else if (saw_verb && toks[k].lemma == q0.entity) f[23] = true;
      }
    }
  }

  f[25] = (q0.anchor_unknown() || q0.anchor_from_nmod) && q0.verb_class == VerbClass::Stative;  // (26)
  return out;
}

std::pair<SolutionType, std::array<double, kSolutionTypeCount>> predict_solution_type(
    const StiFeatures& features, const LinearModel& model) {
  if (model.classes().size() != kSolutionTypeCount)
    throw ContractError("solution-type model must have all " + std::to_string(kSolutionTypeCount) +
                        " classes");
  auto probs = model.probabilities(features.to_features());
  std::array<double, kSolutionTypeCount> by_type{};
  std::array<bool, kSolutionTypeCount> seen{};
  for (size_t c = 0; c < model.classes().size(); ++c) {
    SolutionType t = solution_type_from_string(model.classes()[c]);
    by_type[static_cast<int>(t)] = probs[c];
    seen[static_cast<int>(t)] = true;
  }
  for (bool s : seen)
    if (!s) throw ContractError("solution-type model is missing a class");
  int best = 0;
  for (int c = 1; c < kSolutionTypeCount; ++c)
    if (by_type[c] > by_type[best]) best = c;
  return {static_cast<SolutionType>(best), by_type};
}

}  // namespace mwp
