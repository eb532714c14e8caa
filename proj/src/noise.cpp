#include "mwp/noise.hpp"

#include <random>
#include <set>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

const std::string& to_string(NoiseKind k) {
  static const std::string names[] = {"new-subject", "new-entity", "new-modifier"};
  return names[static_cast<int>(k)];
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "new-subject") return NoiseKind::NewSubject;
  if (s == "new-entity") return NoiseKind::NewEntity;
  if (s == "new-modifier") return NoiseKind::NewModifier;
  throw ParseError("unknown noise kind: " + s + " (expected new-subject|new-entity|new-modifier)");
}

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct ProblemWords {
  std::set<std::string> subjects;   // lowercased
  std::set<std::string> entities;
  std::set<std::string> modifiers;
  std::string primary_subject;      // first body subject (surface casing)
  std::string primary_entity;       // asked entity, else first quantity entity
  std::string primary_modifier;     // modifier of the first directly-related quantity
};

ProblemWords collect_words(const AnalyzedProblem& analysis) {
  ProblemWords w;
  const Extraction& ex = analysis.extraction;
  for (const auto& q : ex.quantities) {
    auto it = q.role_tags.find("nsubj");
    if (it != q.role_tags.end()) {
      w.subjects.insert(lower(it->second));
      if (w.primary_subject.empty() && is_capitalized(it->second)) w.primary_subject = it->second;
    }
    w.entities.insert(lower(q.entity));
    auto mod = q.role_tags.find("modifier");
    if (mod != q.role_tags.end()) {
      w.modifiers.insert(lower(mod->second));
      if (w.primary_modifier.empty() && q.relevance == 2) w.primary_modifier = mod->second;
    }
  }
  const QuestionQuantity& q0 = ex.question;
  auto qs = q0.role_tags.find("nsubj");
  if (qs != q0.role_tags.end()) {
    w.subjects.insert(lower(qs->second));
    if (w.primary_subject.empty() && is_capitalized(qs->second)) w.primary_subject = qs->second;
  }
  if (!q0.entity.empty() && q0.entity != "#" && q0.entity != "money") {
    w.entities.insert(lower(q0.entity));
    w.primary_entity = q0.entity;
  }
  auto qm = q0.role_tags.find("modifier");
  if (qm != q0.role_tags.end()) {
    w.modifiers.insert(lower(qm->second));
    if (w.primary_modifier.empty()) w.primary_modifier = qm->second;
  }
  if (w.primary_entity.empty() && !ex.quantities.empty()) {
    for (const auto& q : ex.quantities)
      if (q.relevance == 2) {
        w.primary_entity = q.entity;
        break;
      }
    if (w.primary_entity.empty()) w.primary_entity = ex.quantities.front().entity;
  }
  if (w.primary_modifier.empty()) {
    // modifier is optional; fall back to any body modifier
    for (const auto& q : ex.quantities) {
      auto it = q.role_tags.find("modifier");
      if (it != q.role_tags.end()) {
        w.primary_modifier = it->second;
        break;
      }
    }
  }
  return w;
}

std::string pick_unused(const std::vector<std::string>& pool, const std::set<std::string>& used,
                        size_t skip) {
  size_t skipped = 0;
  for (const auto& cand : pool) {
    if (used.count(lower(cand))) continue;
    if (skipped++ == skip) return cand;
  }
  throw Error("noise pool exhausted");
}

}  // namespace

NoiseSpec default_noise_spec(const Dataset& ds, const Pipeline& pipe, NoiseKind kind, uint64_t seed) {
  NoiseSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  // dataset vocabulary first: reuse existing words where possible
  std::vector<std::string> seen_entities;
  std::set<std::string> entity_set;
  for (const auto& p : ds.problems) {
    try {
      AnalyzedProblem analysis = pipe.analyze(p);
      for (const auto& q : analysis.extraction.quantities) {
        if (q.money) continue;
        if (entity_set.insert(lower(q.entity)).second) seen_entities.push_back(q.entity);
      }
    } catch (const Error&) {
      // out-of-grammar problems contribute no vocabulary
    }
  }
  spec.entities = seen_entities;
  for (const char* extra : {"book", "pen", "stone", "ribbon", "kite"})
    if (entity_set.insert(extra).second) spec.entities.push_back(extra);
  spec.subjects = pipe.lexicon().name_list();
  spec.modifiers = pipe.lexicon().modifier_list();
  return spec;
}

std::vector<MWProblem> make_noisy_variants(const MWProblem& problem, const NoiseSpec& spec,
                                           const Pipeline& pipe) {
  AnalyzedProblem analysis = pipe.analyze(problem);
  ProblemWords words = collect_words(analysis);
  if (words.primary_subject.empty() && spec.kind == NoiseKind::NewEntity)
    throw Error("problem '" + problem.id + "' has no identifiable subject for new-entity noise");
  if (words.primary_entity.empty())
    throw Error("problem '" + problem.id + "' has no identifiable entity");

  std::mt19937_64 rng(spec.seed ^ fnv1a(problem.id));
  auto next_value = [&] { return 2 + static_cast<int>(rng() % 8); };

  std::vector<MWProblem> variants;
  const std::string suffix = spec.kind == NoiseKind::NewSubject   ? "ns"
                             : spec.kind == NoiseKind::NewEntity  ? "ne"
                                                                  : "nm";
  for (int k = 0; k < spec.count; ++k) {
    int value = next_value();
    std::string sentence;
    switch (spec.kind) {
      case NoiseKind::NewSubject: {
        std::string name = pick_unused(spec.subjects, words.subjects, k);
        std::string mod = words.primary_modifier;
        sentence = name + " has " + std::to_string(value) + " " + (mod.empty() ? "" : mod + " ") +
                   pipe.lexicon().plural_of(words.primary_entity) + ".";
        break;
      }
      case NoiseKind::NewEntity: {
        // an injected entity must be genuinely irrelevant: no entailment
        // relation with the asked entity or any body entity either way
        std::set<std::string> related = words.entities;
        std::set<std::string> context = words.entities;
        context.insert(lower(analysis.extraction.question.entity));
        for (const auto& cand : spec.entities)
          for (const auto& e : context)
            if (pipe.lexicon().entails(cand, e) || pipe.lexicon().entails(e, cand))
              related.insert(lower(cand));
        std::string entity = pick_unused(spec.entities, related, k);
        sentence = words.primary_subject + " also has " + std::to_string(value) + " " +
                   pipe.lexicon().plural_of(pipe.lexicon().noun_lemma(entity)) + ".";
        break;
      }
      case NoiseKind::NewModifier: {
        std::string name = pick_unused(spec.subjects, words.subjects, k);
        std::string mod = pick_unused(spec.modifiers, words.modifiers, k);
        sentence = name + " has " + std::to_string(value) + " " + mod + " " +
                   pipe.lexicon().plural_of(words.primary_entity) + ".";
        break;
      }
    }
    MWProblem variant;
    variant.id = problem.id + "-" + suffix + std::to_string(k + 1);
    variant.body = problem.body + " " + sentence;
    variant.question = problem.question;
    variant.answer = problem.answer;  // noise is answer-preserving by construction
    variants.push_back(std::move(variant));
  }
  return variants;
}

Dataset noisify_dataset(const Dataset& ds, const Pipeline& pipe, NoiseKind kind, uint64_t seed) {
  NoiseSpec spec = default_noise_spec(ds, pipe, kind, seed);
  Dataset out;
  out.name = ds.name + "-" + to_string(kind);
  for (const auto& p : ds.problems)
    for (auto& v : make_noisy_variants(p, spec, pipe)) out.problems.push_back(std::move(v));
  return out;
}

}  // namespace mwp
