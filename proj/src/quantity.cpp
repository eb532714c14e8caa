#include "mwp/quantity.hpp"

#include <set>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

const std::string& to_string(AnchorRole ar) {
  static const std::string names[] = {"nsubj", "obj", "nmod", "none"};
  return names[static_cast<int>(ar)];
}

int derive_time(Tense tense, Aspect aspect) {
  int base = tense == Tense::Past ? 2 : tense == Tense::Present ? 4 : 6;
  int adjust = aspect == Aspect::Perfect ? -1 : aspect == Aspect::Simple ? 0 : 1;
  return base + adjust;
}

VerbClass derive_action(VerbClass vc, AnchorRole ar) {
  bool object_side = ar == AnchorRole::Obj || ar == AnchorRole::Nmod;
  if (vc == VerbClass::Positive && ar == AnchorRole::Nsubj) return VerbClass::Positive;
  if (vc == VerbClass::Negative && object_side) return VerbClass::Positive;
  if (vc == VerbClass::Negative && ar == AnchorRole::Nsubj) return VerbClass::Negative;
  if (vc == VerbClass::Positive && object_side) return VerbClass::Negative;
  return vc;
}

namespace {

const std::set<std::string> kPersonalPronouns = {"he", "she", "they", "we", "i", "you"};
const std::set<std::string> kMoneyNouns = {"dollar", "cent"};
const std::set<std::string> kMoneyVerbs = {"pay", "spend", "cost", "earn"};
const std::set<std::string> kMapVerbs = {"weigh", "cost", "hold", "contain", "pay", "spend"};

// Children lists and ancestor walks over one annotated sentence.
struct TreeView {
  const Sentence& sent;
  std::vector<std::vector<int>> kids;
  int root = -1;

  explicit TreeView(const Sentence& s) : sent(s), kids(s.tokens.size()) {
    for (size_t i = 0; i < s.tokens.size(); ++i) {
      int h = s.tokens[i].head;
      if (h == 0)
        root = static_cast<int>(i);
      else
        kids[h - 1].push_back(static_cast<int>(i));
    }
  }

  const Token& tok(int i) const { return sent.tokens[i]; }

  int child(int head, const std::string& rel) const {
    for (int k : kids[head])
      if (tok(k).relation == rel) return k;
    return -1;
  }

  std::vector<int> children(int head, const std::string& rel) const {
    std::vector<int> out;
    for (int k : kids[head])
      if (tok(k).relation == rel) out.push_back(k);
    return out;
  }

  bool is_verb(int i) const {
    const std::string& p = tok(i).pos;
    return p.size() >= 2 && p[0] == 'V' && p[1] == 'B';
  }

  int verb_ancestor(int i) const {
    int cur = i;
    int guard = 0;
    while (cur >= 0 && !is_verb(cur)) {
      int h = tok(cur).head;
      cur = h == 0 ? -1 : h - 1;
      if (++guard > static_cast<int>(sent.tokens.size())) return -1;
    }
    return cur;
  }

  // the noun together with everything conj-linked to it
  std::set<int> conj_group(int noun) const {
    std::set<int> group = {noun};
    int up = noun;
    while (tok(up).relation == "conj" && tok(up).head != 0) {
      up = tok(up).head - 1;
      group.insert(up);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (int g : std::set<int>(group))
        for (int k : children(g, "conj"))
          if (group.insert(k).second) grew = true;
    }
    return group;
  }

  std::string case_of(int noun) const {
    int c = child(noun, "case");
    return c < 0 ? "" : tok(c).lemma;
  }
};

bool matches_anchor(const std::string& role_value, const std::string& anchor) {
  if (anchor.empty() || role_value.empty()) return false;
  if (lower(role_value) == lower(anchor)) return true;
  // a personal pronoun stands in for a person anchor
  return kPersonalPronouns.count(lower(role_value)) > 0 && is_capitalized(anchor);
}

AnchorRole anchor_role_of(const Quantity& q, const std::string& anchor) {
  auto has = [&](const char* role) {
    auto it = q.role_tags.find(role);
    return it != q.role_tags.end() && matches_anchor(it->second, anchor);
  };
  if (has("nsubj")) return AnchorRole::Nsubj;
  if (has("obj")) return AnchorRole::Obj;
  if (has("nmod") || has("place") || has("temporal")) return AnchorRole::Nmod;
  return AnchorRole::None;
}

int question_entity_token(const TreeView& tv) {
  for (size_t i = 0; i < tv.sent.tokens.size(); ++i) {
    const Token& t = tv.tok(i);
    if ((t.lemma == "many" || t.lemma == "much") && t.relation == "amod") return t.head - 1;
  }
  return -1;
}

// Fills the role tags a quantity inherits from its governing verb and
// from the entity noun itself. `exclude` lists noun tokens that must not
// become roles (the entity and anything conjoined with it).
void fill_roles(Quantity& q, const TreeView& tv, int verb, const std::set<int>& exclude) {
  auto add = [&](const std::string& role, int tok_idx) {
    if (tok_idx < 0 || exclude.count(tok_idx)) return;
    if (!q.role_tags.count(role)) q.role_tags[role] = tv.tok(tok_idx).lemma;
  };
  if (verb < 0) return;
  add("nsubj", tv.child(verb, "nsubj"));
  int obj = tv.child(verb, "obj");
  int iobj = tv.child(verb, "iobj");
  add("obj", iobj >= 0 ? iobj : obj);
  if (iobj >= 0) add("obj", obj);  // first non-excluded one wins
  for (int k : tv.children(verb, "nmod")) add("nmod", k);
  for (int k : tv.children(verb, "place")) add("place", k);
  for (int k : tv.children(verb, "tmod")) add("temporal", k);
  int xc = tv.child(verb, "xcomp");
  if (xc >= 0) q.role_tags["xcomp"] = tv.tok(xc).lemma;
  for (int k : tv.children(verb, "advmod"))
    if (tv.tok(k).pos == "RB" && (tv.tok(k).lemma == "yesterday" || tv.tok(k).lemma == "today" ||
                                  tv.tok(k).lemma == "tomorrow"))
      add("temporal", k);
}

void apply_entity_np(Quantity& q, const TreeView& tv, int noun, const Lexicon& lex) {
  q.entity = tv.tok(noun).lemma;
  int det = tv.child(noun, "det");
  if (det >= 0) {
    const std::string& d = tv.tok(det).lemma;
    if (d == "each" || d == "every" || d == "per" || d == "a" || d == "an") q.determiner = d;
  }
  int amod = tv.child(noun, "amod");
  if (amod >= 0 && tv.tok(amod).lemma != "many" && tv.tok(amod).lemma != "much")
    q.role_tags["modifier"] = tv.tok(amod).lemma;
  // classifier phrase: "3 cups of coffee" counts coffee in cups
  int of_nmod = tv.child(noun, "nmod");
  if (of_nmod >= 0 && tv.case_of(of_nmod) == "of") {
    q.unit = tv.tok(noun).lemma;
    q.entity = tv.tok(of_nmod).lemma;
  }
  if (kMoneyNouns.count(q.entity)) {
    q.money = true;
    q.entity = "dollar";
    q.unit = "dollar";
  }
  (void)lex;
}

void apply_verb(Quantity& q, const TreeView& tv, int verb, const Lexicon& lex) {
  if (verb < 0) return;
  const Token& vt = tv.tok(verb);
  q.verb = vt.lemma;
  q.verb_class = lex.verb_class(vt.lemma);
  if (vt.tense && vt.aspect) q.time = derive_time(*vt.tense, *vt.aspect);
}

}  // namespace

AnchorResult derive_anchor(const Annotation& ann) {
  int qi = ann.question_index();
  if (qi < 0) throw ValidationError("annotation has no question sentence");
  TreeView tv(ann.sentences[qi]);
  if (tv.root < 0) throw ValidationError("question sentence has no root");
  int entity = question_entity_token(tv);
  int subj = tv.child(tv.root, "nsubj");
  if (subj >= 0 && subj != entity) {
    const Token& st = tv.tok(subj);
    if (st.pos == "NNP" || st.pos == "NN" || st.pos == "NNS") return {st.lemma, false};
    // pronoun subjects do not anchor
  }
  for (int k : tv.children(tv.root, "nmod")) {
    const Token& t = tv.tok(k);
    if (t.pos == "NNP" || t.pos == "NN" || t.pos == "NNS") return {t.lemma, true};
  }
  return {"", false};
}

void derive_relevance(std::vector<Quantity>& quantities, const std::vector<QuantityMap>& maps,
                      const QuestionQuantity& question, const Lexicon& lex) {
  for (auto& q : quantities) {
    bool entails = lex.entails(q.entity, question.entity);
    bool direct = question.anchor_unknown() ? entails
                                            : (q.anchor_role != AnchorRole::None && entails);
    q.relevance = direct ? 2 : 0;
  }
  auto index_of = [&](const std::string& id) -> int {
    for (size_t i = 0; i < quantities.size(); ++i)
      if (quantities[i].id == id) return static_cast<int>(i);
    return -1;
  };
  for (const auto& m : maps) {
    int a = index_of(m.from_id), b = index_of(m.to_id);
    if (a < 0 || b < 0) continue;
    if (quantities[a].relevance == 2 && quantities[b].relevance == 0) quantities[b].relevance = 1;
    if (quantities[b].relevance == 2 && quantities[a].relevance == 0) quantities[a].relevance = 1;
  }
}

const Quantity* Extraction::find(const std::string& id) const {
  for (const auto& q : quantities)
    if (q.id == id) return &q;
  return nullptr;
}

Extraction extract_quantities(const Annotation& ann, const Lexicon& lex) {
  int qi = ann.question_index();
  if (qi < 0) throw ValidationError("annotation has no question sentence");

  Extraction ex;
  int next_map = 1;

  for (int si = 0; si < static_cast<int>(ann.sentences.size()); ++si) {
    if (si == qi) continue;
    const Sentence& sent = ann.sentences[si];
    TreeView tv(sent);
    if (tv.root < 0) continue;
    const std::string& root_lemma = tv.tok(tv.root).lemma;

    // price statement: "A sandwich is priced at $0.75." / "A pudding costs 2 dollars."
    if (root_lemma == "price" || root_lemma == "cost") {
      int subj = tv.child(tv.root, "nsubj");
      bool unit_subject = false;
      if (subj >= 0) {
        int det = tv.child(subj, "det");
        unit_subject = det >= 0 && (tv.tok(det).lemma == "a" || tv.tok(det).lemma == "an");
        for (int k : tv.children(tv.root, "advmod"))
          if (tv.tok(k).lemma == "each" || tv.tok(k).lemma == "every") unit_subject = true;
        if (tv.child(subj, "nummod") >= 0) unit_subject = false;
      }
      if (unit_subject) {
        int amount = -1;
        for (int i = 0; i < static_cast<int>(sent.tokens.size()); ++i)
          if (tv.tok(i).pos == "CD" &&
              (tv.tok(i).relation == "nmod" || tv.tok(i).relation == "obj" ||
               tv.tok(i).relation == "nummod"))
            amount = i;
        if (amount >= 0) {
          ex.prices.push_back({tv.tok(subj).lemma, Rational::parse(tv.tok(amount).lemma)});
          continue;
        }
      }
    }

    // explicit quantities: one per numeric mention
    std::vector<int> mention_nouns;  // entity noun token per created quantity
    for (int i = 0; i < static_cast<int>(sent.tokens.size()); ++i) {
      const Token& t = tv.tok(i);
      if (t.pos != "CD") continue;
      Quantity q;
      q.value = Rational::parse(t.lemma);
      q.sentence = si;
      q.token = i;
      int noun = -1;
      if (t.relation == "nummod") {
        noun = t.head - 1;
      } else {
        // a bare amount acting as an argument ("spent $5")
        q.entity = "dollar";
        q.unit = "dollar";
        q.money = true;
      }
      std::set<int> exclude;
      if (noun >= 0) {
        exclude = tv.conj_group(noun);
        apply_entity_np(q, tv, noun, lex);
      }
      if (Lexicon::is_money_token(t.surface)) {
        q.money = true;
        q.entity = "dollar";
        q.unit = "dollar";
      }
      int verb = tv.verb_ancestor(noun >= 0 ? noun : i);
      apply_verb(q, tv, verb, lex);
      fill_roles(q, tv, verb, exclude);
      ex.quantities.push_back(std::move(q));
      mention_nouns.push_back(noun >= 0 ? noun : i);
    }

    // rate / map constructions
    if (kMapVerbs.count(root_lemma)) {
      auto quantity_at = [&](int noun) -> int {
        for (size_t k = 0; k < mention_nouns.size(); ++k) {
          if (ex.quantities.size() < mention_nouns.size()) break;
          size_t base = ex.quantities.size() - mention_nouns.size();
          if (mention_nouns[k] == noun && ex.quantities[base + k].sentence == si)
            return static_cast<int>(base + k);
        }
        return -1;
      };
      int subj = tv.child(tv.root, "nsubj");
      int subj_q = -1;
      if (subj >= 0) {
        if (tv.child(subj, "nummod") >= 0) {
          subj_q = quantity_at(subj);
        } else {
          int det = tv.child(subj, "det");
          std::string d = det >= 0 ? tv.tok(det).lemma : "";
          if (d == "a" || d == "an" || d == "each" || d == "every" || d == "per") {
            // implicit unit quantity: "Each box holds 6 candies"
            Quantity q;
            q.value = Rational(1);
            q.sentence = si;
            q.token = subj;
            q.determiner = d;
            std::set<int> exclude = tv.conj_group(subj);
            apply_entity_np(q, tv, subj, lex);
            q.determiner = d;
            apply_verb(q, tv, tv.root, lex);
            fill_roles(q, tv, tv.root, exclude);
            ex.quantities.push_back(std::move(q));
            mention_nouns.push_back(subj);
            subj_q = static_cast<int>(ex.quantities.size() - 1);
          }
        }
      }
      // measure side: an object or for/into-phrase carrying a number
      int measure_q = -1, counted_q = -1;
      for (size_t k = 0; k < mention_nouns.size(); ++k) {
        size_t base = ex.quantities.size() - mention_nouns.size();
        const Quantity& cand = ex.quantities[base + k];
        if (cand.sentence != si) continue;
        int noun = mention_nouns[k];
        if (noun == subj) continue;
        const std::string& rel = tv.tok(noun).relation;
        if (rel == "obj" && measure_q < 0) measure_q = static_cast<int>(base + k);
        if (rel == "nmod" && tv.case_of(noun) == "for") counted_q = static_cast<int>(base + k);
      }
      // ids are assigned later; reference quantities by index for now
      auto add_map = [&](int from, int to) {
        ex.maps.push_back({"m" + std::to_string(next_map++), "#idx:" + std::to_string(from),
                           "#idx:" + std::to_string(to)});
      };
      if (root_lemma == "pay" || root_lemma == "spend") {
        // "pays 20 dollars for 4 books": books -> dollars
        if (counted_q >= 0 && measure_q >= 0 && ex.quantities[measure_q].money)
          add_map(counted_q, measure_q);
      } else if (subj_q >= 0 && measure_q >= 0) {
        add_map(subj_q, measure_q);
      }
    }
  }

  if (ex.quantities.empty()) throw ValidationError("no numeric mention in body sentences");

  // stable ids in (sentence, token) order
  std::vector<int> order(ex.quantities.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Quantity& qa = ex.quantities[a];
    const Quantity& qb = ex.quantities[b];
    return qa.sentence != qb.sentence ? qa.sentence < qb.sentence : qa.token < qb.token;
  });
  std::vector<Quantity> sorted;
  std::vector<int> new_index(ex.quantities.size());
  for (size_t rank = 0; rank < order.size(); ++rank) {
    new_index[order[rank]] = static_cast<int>(rank);
    sorted.push_back(ex.quantities[order[rank]]);
    sorted.back().id = "q" + std::to_string(rank + 1);
  }
  ex.quantities = std::move(sorted);
  for (auto& m : ex.maps) {
    auto resolve = [&](std::string& ref) {
      if (ref.rfind("#idx:", 0) == 0) {
        int old = std::atoi(ref.substr(5).c_str());
        ref = ex.quantities[new_index[old]].id;
      }
    };
    resolve(m.from_id);
    resolve(m.to_id);
  }

  // question quantity
  const Sentence& qsent = ann.sentences[qi];
  TreeView qtv(qsent);
  QuestionQuantity& q0 = ex.question;
  int entity_tok = question_entity_token(qtv);
  if (entity_tok >= 0) {
    const Token& et = qtv.tok(entity_tok);
    q0.entity = et.lemma;
    int of_nmod = qtv.child(entity_tok, "nmod");
    if (of_nmod >= 0 && qtv.case_of(of_nmod) == "of") {
      q0.unit = et.lemma;
      q0.entity = qtv.tok(of_nmod).lemma;
    }
    int amod = -1;
    for (int k : qtv.children(entity_tok, "amod"))
      if (qtv.tok(k).lemma != "many" && qtv.tok(k).lemma != "much") amod = k;
    if (amod >= 0) q0.role_tags["modifier"] = qtv.tok(amod).lemma;
  }
  if (qtv.root >= 0) {
    const Token& rt = qtv.tok(qtv.root);
    q0.verb = rt.lemma;
    q0.verb_class = lex.verb_class(rt.lemma);
    if (rt.tense && rt.aspect) q0.time = derive_time(*rt.tense, *rt.aspect);
    int subj = qtv.child(qtv.root, "nsubj");
    if (subj >= 0 && subj != entity_tok) {
      const Token& st = qtv.tok(subj);
      q0.role_tags["nsubj"] = st.lemma;
      if (st.pos == "PRP" && (st.lemma == "they" || st.lemma == "we")) q0.subject_plural_pronoun = true;
    }
    int obj = qtv.child(qtv.root, "obj");
    if (obj >= 0 && obj != entity_tok) q0.role_tags["obj"] = qtv.tok(obj).lemma;
    for (int k : qtv.children(qtv.root, "nmod")) {
      if (k == entity_tok) continue;
      if (!q0.role_tags.count("nmod")) q0.role_tags["nmod"] = qtv.tok(k).lemma;
      std::string c = qtv.case_of(k);
      if ((c == "in" || c == "at" || c == "on" || c == "into") && !q0.role_tags.count("place"))
        q0.role_tags["place"] = qtv.tok(k).lemma;
    }
    for (int k : qtv.children(qtv.root, "tmod"))
      if (!q0.role_tags.count("temporal")) q0.role_tags["temporal"] = qtv.tok(k).lemma;
    int xc = qtv.child(qtv.root, "xcomp");
    if (xc >= 0) q0.role_tags["xcomp"] = qtv.tok(xc).lemma;
  }
  if (q0.entity == "money" || (entity_tok < 0 && kMoneyVerbs.count(q0.verb))) {
    q0.money = true;
    q0.entity = "money";
    q0.unit = "dollar";
  }
  if (q0.entity == "#" && !q0.money)
    throw ValidationError("question entity not identifiable in: \"" + qsent.text() + "\"");

  AnchorResult anchor = derive_anchor(ann);
  q0.anchor = anchor.anchor;
  q0.anchor_from_nmod = anchor.from_nmod;

  for (auto& q : ex.quantities) {
    q.anchor_role = q0.anchor_unknown() ? AnchorRole::None : anchor_role_of(q, q0.anchor);
    q.action = derive_action(q.verb_class, q.anchor_role);
  }
  derive_relevance(ex.quantities, ex.maps, q0, lex);
  return ex;
}

}  // namespace mwp
