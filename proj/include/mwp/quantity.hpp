#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwp/corpus.hpp"
#include "mwp/lexicon.hpp"
#include "mwp/rational.hpp"

namespace mwp {

enum class AnchorRole { Nsubj, Obj, Nmod, None };

const std::string& to_string(AnchorRole ar);

// A known quantity extracted from a body sentence together with the
// properties derived from its context.
struct Quantity {
  std::string id;  // q1, q2, ...
  Rational value;
  std::string entity;      // lemma; for money amounts this is "dollar"
  std::string unit = "#";  // measure noun for classifier phrases ("cup of coffee")
  std::string verb;        // governing verb lemma
  VerbClass verb_class = VerbClass::Stative;
  int time = 4;  // tense/aspect encoding, Present Simple when no verb
  AnchorRole anchor_role = AnchorRole::None;
  VerbClass action = VerbClass::Stative;
  int relevance = 0;  // 2 direct, 1 indirect, 0 unrelated
  int sentence = 0;   // source position
  int token = 0;
  std::map<std::string, std::string> role_tags;  // nsubj obj nmod modifier place temporal xcomp
  std::string determiner;  // each/every/per/a/an when attached to the mention
  bool money = false;
};

// The unknown quantity asked by the question sentence.
struct QuestionQuantity {
  std::string entity = "#";
  std::string unit = "#";
  std::string verb;
  VerbClass verb_class = VerbClass::Stative;
  int time = 4;
  std::string anchor;  // empty = Unknown
  bool anchor_from_nmod = false;
  bool subject_plural_pronoun = false;
  std::map<std::string, std::string> role_tags;
  bool money = false;

  bool anchor_unknown() const { return anchor.empty(); }
};

// Directed link between two quantities ("2 pencils weigh 30 grams"),
// stored from the counted/agent side to the measure side.
struct QuantityMap {
  std::string id;  // m1, m2, ...
  std::string from_id;
  std::string to_id;
};

// Unit-price statement ("A sandwich is priced at $0.75"); becomes a
// price(entity, value) fact rather than a quantity.
struct PriceEntry {
  std::string entity;
  Rational value;
};

struct Extraction {
  std::vector<Quantity> quantities;
  std::vector<QuantityMap> maps;
  QuestionQuantity question;
  std::vector<PriceEntry> prices;

  const Quantity* find(const std::string& id) const;
};

// Tense/aspect timeline encoding: Past/Present/Future map to 2/4/6,
// adjusted by -1/0/+1 for Perfect/Simple/Progressive.
int derive_time(Tense tense, Aspect aspect);

// Anchor of the question: the subject lemma when the subject is a
// content noun phrase distinct from the asked entity, the nominal
// modifier for expletive ("there") subjects, otherwise Unknown (empty).
struct AnchorResult {
  std::string anchor;
  bool from_nmod = false;
};
AnchorResult derive_anchor(const Annotation& ann);

// Action re-signs the verb class by the anchor's grammatical role.
VerbClass derive_action(VerbClass vc, AnchorRole ar);

// Relevance: 2 when the entity entails the asked entity (and the anchor,
// if known, plays a role); 1 via a quantity map adjacent to a
// directly-related quantity; 0 otherwise.
void derive_relevance(std::vector<Quantity>& quantities, const std::vector<QuantityMap>& maps,
                      const QuestionQuantity& question, const Lexicon& lex);

// Full extraction over an annotated problem: one Quantity per numeric
// mention in body sentences, QuantityMaps for rate-style links, price
// entries, and the QuestionQuantity. Relevance is already derived.
Extraction extract_quantities(const Annotation& ann, const Lexicon& lex);

}  // namespace mwp
