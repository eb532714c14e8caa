#include "mwp/annotate.hpp"

#include <cctype>
#include <set>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

namespace {

const std::set<std::string> kPronouns = {"i",  "you", "he",  "she", "it", "we",
                                         "they", "him", "her", "them", "us", "me"};
const std::set<std::string> kPluralPronouns = {"they", "them", "we", "us"};
const std::set<std::string> kDeterminers = {"a",    "an",   "the",  "each", "every", "per",
                                            "all",  "some", "this", "that", "these", "those"};
const std::set<std::string> kModals = {"will", "would", "should", "shall", "can",
                                       "could", "may",  "might",  "must"};
const std::set<std::string> kPrepositions = {"in", "on",  "at",  "into", "from", "of",
                                             "for", "with", "by", "than", "to"};
const std::set<std::string> kAdverbs = {"also", "now", "too", "then", "altogether", "together", "here"};

std::string pronoun_lemma(const std::string& w) {
  if (w == "him") return "he";
  if (w == "her") return "she";
  if (w == "them") return "they";
  if (w == "us") return "we";
  if (w == "me") return "i";
  return w;
}

bool is_be(const std::string& w) {
  return w == "be" || w == "is" || w == "are" || w == "am" || w == "was" || w == "were" ||
         w == "been" || w == "being";
}

bool is_do(const std::string& w) { return w == "do" || w == "does" || w == "did" || w == "done"; }

bool is_have(const std::string& w) { return w == "have" || w == "has" || w == "had" || w == "having"; }

struct WorkSentence {
  std::vector<Token> toks;

  bool is_verb(int i) const {
    const std::string& p = toks[i].pos;
    return p.size() >= 2 && p[0] == 'V' && p[1] == 'B';
  }
  bool is_noun_head(int i) const {
    const std::string& p = toks[i].pos;
    return p == "NN" || p == "NNS" || p == "NNP" || p == "PRP" || p == "CD";
  }
  void attach(int child, int head, const std::string& rel) {
    toks[child].head = head + 1;  // stored 1-based
    toks[child].relation = rel;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Tokenization

static std::vector<std::vector<std::string>> split_sentences(const std::string& text) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> cur;
  std::string tok;
  auto flush_tok = [&] {
    if (!tok.empty()) {
      cur.push_back(tok);
      tok.clear();
    }
  };
  auto end_sentence = [&] {
    if (!cur.empty()) {
      sentences.push_back(cur);
      cur.clear();
    }
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_tok();
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '$' || c == '\'') {
      tok.push_back(c);
      continue;
    }
    if (c == '-' && !tok.empty() && i + 1 < text.size() &&
        std::isalnum(static_cast<unsigned char>(text[i + 1]))) {
      tok.push_back(c);  // hyphenated number words
      continue;
    }
    if (c == '.' && !tok.empty() && (tok[0] == '$' || std::isdigit(static_cast<unsigned char>(tok[0]))) &&
        i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      tok.push_back(c);  // decimal point
      continue;
    }
    flush_tok();
    if (c == '.' || c == '?' || c == '!') {
      cur.push_back(std::string(1, c));
      end_sentence();
    } else if (c == ',') {
      cur.push_back(",");
    }
    // other symbols dropped
  }
  flush_tok();
  end_sentence();
  return sentences;
}

// ---------------------------------------------------------------------------
// Tagging

static Token tag_word(const std::string& w, const Lexicon& lex) {
  Token t;
  t.surface = w;
  std::string lw = lower(w);

  if (w == "." || w == "?" || w == "!" || w == ",") {
    t.pos = "PUNCT";
    t.lemma = w;
    return t;
  }
  if (auto num = Lexicon::number_value(w)) {
    t.pos = "CD";
    t.lemma = num->str();
    return t;
  }
  if (kPronouns.count(lw)) {
    t.pos = "PRP";
    t.lemma = pronoun_lemma(lw);
    return t;
  }
  if (lw == "there") {
    t.pos = "EX";
    t.lemma = "there";
    return t;
  }
  if (lw == "how") {
    t.pos = "WRB";
    t.lemma = "how";
    return t;
  }
  if (lw == "many" || lw == "much") {
    t.pos = "JJ";
    t.lemma = lw;
    return t;
  }
  if (lw == "more" || lw == "fewer" || lw == "less") {
    t.pos = "RBR";
    t.lemma = lw;
    return t;
  }
  if (kDeterminers.count(lw)) {
    t.pos = "DT";
    t.lemma = lw;
    return t;
  }
  if (kModals.count(lw)) {
    t.pos = "MD";
    t.lemma = lw;
    return t;
  }
  if (is_be(lw)) {
    t.lemma = "be";
    t.pos = (lw == "was" || lw == "were") ? "VBD"
            : (lw == "is")                ? "VBZ"
            : (lw == "been")              ? "VBN"
            : (lw == "being")             ? "VBG"
                                          : "VBP";
    return t;
  }
  if (is_do(lw)) {
    t.lemma = "do";
    t.pos = lw == "did" ? "VBD" : lw == "does" ? "VBZ" : lw == "done" ? "VBN" : "VBP";
    return t;
  }
  if (is_have(lw)) {
    t.lemma = "have";
    t.pos = lw == "had" ? "VBD" : lw == "has" ? "VBZ" : lw == "having" ? "VBG" : "VBP";
    return t;
  }
  if (lw == "if" || lw == "when") {
    t.pos = "IN";
    t.lemma = lw;
    return t;
  }
  if (kPrepositions.count(lw)) {
    t.pos = lw == "to" ? "TO" : "IN";
    t.lemma = lw;
    return t;
  }
  if (lw == "and" || lw == "or") {
    t.pos = "CC";
    t.lemma = lw;
    return t;
  }
  if (kAdverbs.count(lw)) {
    t.pos = "RB";
    t.lemma = lw;
    return t;
  }
  if (lex.is_name(w)) {
    t.pos = "NNP";
    t.lemma = w;
    return t;
  }
  if (auto vf = lex.verb_form(lw)) {
    t.lemma = vf->lemma;
    switch (vf->kind) {
      case VerbForm::Base: t.pos = "VB"; break;
      case VerbForm::Past: t.pos = "VBD"; break;
      case VerbForm::PastPart: t.pos = "VBN"; break;
      case VerbForm::ThirdSg: t.pos = "VBZ"; break;
      case VerbForm::Gerund: t.pos = "VBG"; break;
    }
    return t;
  }
  if (lex.is_modifier(lw)) {
    t.pos = "JJ";
    t.lemma = lw;
    return t;
  }
  if (lex.is_temporal(lw)) {
    t.pos = is_capitalized(w) ? "NNP" : "RB";
    t.lemma = is_capitalized(w) ? w : lw;
    return t;
  }
  bool alpha = !w.empty();
  for (char c : w)
    if (!std::isalpha(static_cast<unsigned char>(c))) alpha = false;
  if (alpha && is_capitalized(w)) {
    t.pos = "NNP";  // unknown capitalized word: treat as a name
    t.lemma = w;
    return t;
  }
  if (alpha) {
    bool plural = false;
    t.lemma = lex.noun_lemma(lw, &plural);
    t.pos = plural ? "NNS" : "NN";
    return t;
  }
  throw AnnotationError("cannot tag token '" + w + "'");
}

// ---------------------------------------------------------------------------
// Clause parsing

namespace {

class SentenceParser {
 public:
  SentenceParser(WorkSentence& s, const Lexicon& lex, const std::string& text)
      : s_(s), lex_(lex), text_(text) {}

  int parse_clause(int begin, int end);  // returns root index
  int parse_question(int begin, int end);

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw AnnotationError(why + " in sentence: \"" + text_ + "\"");
  }

  // Parses [DT]? [CD]? [JJ|RBR]* head-noun ["of" noun], attaching inner
  // relations. Returns the head index or -1; advances `i` past the NP.
  int parse_np(int& i, int end);

  struct Region {
    int finite = -1;  // first verb/modal of the chain
    int main = -1;    // content verb
    std::vector<int> aux;
  };
  Region find_verb_region(int begin, int end) const;
  void assign_tense(const Region& r);
  void attach_post(int root, int i, int end, bool in_question);

  WorkSentence& s_;
  const Lexicon& lex_;
  const std::string& text_;
};

int SentenceParser::parse_np(int& i, int end) {
  int det = -1, head = -1;
  std::vector<int> mods, nums;
  while (i < end) {
    const Token& t = s_.toks[i];
    if (t.pos == "DT" && det < 0 && head < 0) {
      det = i;
      ++i;
    } else if (t.pos == "CD" && head < 0) {
      nums.push_back(i);
      ++i;
    } else if ((t.pos == "JJ" || t.pos == "RBR") && head < 0) {
      mods.push_back(i);
      ++i;
    } else if (s_.is_noun_head(i) && t.pos != "CD" && head < 0) {
      head = i;
      ++i;
    } else {
      break;
    }
  }
  if (head < 0 && !nums.empty()) {
    head = nums.back();  // bare amount, e.g. "$0.75"
    nums.pop_back();
  }
  if (head < 0) {
    if (det >= 0 || !mods.empty()) fail("dangling noun phrase");
    return -1;
  }
  if (det >= 0) s_.attach(det, head, "det");
  for (int m : mods) s_.attach(m, head, s_.toks[m].pos == "RBR" ? "advmod" : "amod");
  for (int n : nums) s_.attach(n, head, "nummod");
  // measure construction: "cups of coffee"
  if (i + 1 < end && s_.toks[i].lemma == "of" && s_.toks[i].pos == "IN") {
    int prep = i;
    ++i;
    int inner = parse_np(i, end);
    if (inner >= 0) {
      s_.attach(prep, inner, "case");
      s_.attach(inner, head, "nmod");
    } else {
      --i;
    }
  }
  return head;
}

SentenceParser::Region SentenceParser::find_verb_region(int begin, int end) const {
  Region r;
  for (int i = begin; i < end; ++i) {
    if (s_.toks[i].pos == "MD" || s_.is_verb(i)) {
      r.finite = i;
      break;
    }
  }
  if (r.finite < 0) return r;
  // walk the chain: modal/aux + adverbs + content verb
  int i = r.finite;
  r.main = r.finite;
  while (i + 1 < end) {
    const Token& next = s_.toks[i + 1];
    if (next.pos == "RB") {
      ++i;
      continue;
    }
    if (!(next.pos.size() >= 2 && next.pos[0] == 'V')) break;
    const Token& cur = s_.toks[r.main];
    bool cur_is_aux = s_.toks[r.main].pos == "MD" || is_be(lower(cur.surface)) ||
                      is_do(lower(cur.surface)) || is_have(lower(cur.surface));
    if (!cur_is_aux) break;
    r.aux.push_back(r.main);
    r.main = i + 1;
    ++i;
  }
  return r;
}

void SentenceParser::assign_tense(const Region& r) {
  Token& main = s_.toks[r.main];
  Tense tense = Tense::Present;
  Aspect aspect = Aspect::Simple;
  const Token& finite = s_.toks[r.finite];
  std::string flw = lower(finite.surface);
  if (r.finite == r.main) {
    if (finite.pos == "VBD" || finite.pos == "VBN") tense = Tense::Past;
  } else if (finite.pos == "MD") {
    tense = (flw == "will" || flw == "would" || flw == "should" || flw == "shall") ? Tense::Future
                                                                                   : Tense::Present;
    if (main.pos == "VBG") aspect = Aspect::Progressive;
  } else if (is_have(flw)) {
    aspect = Aspect::Perfect;
    tense = flw == "had" ? Tense::Past : Tense::Present;
  } else if (is_be(flw)) {
    tense = (flw == "was" || flw == "were") ? Tense::Past : Tense::Present;
    if (main.pos == "VBG") aspect = Aspect::Progressive;
    // be + participle is a passive: Simple aspect
  } else if (is_do(flw)) {
    tense = flw == "did" ? Tense::Past : Tense::Present;
  }
  main.tense = tense;
  main.aspect = aspect;
}

void SentenceParser::attach_post(int root, int i, int end, bool in_question) {
  int cur_verb = root;
  int obj = -1;
  int last_np = -1;
  while (i < end) {
    const Token& t = s_.toks[i];
    if (t.pos == "PUNCT" && t.surface == "," && i + 1 < end &&
        (s_.toks[i + 1].pos == "CD" || s_.toks[i + 1].pos == "DT" || s_.toks[i + 1].pos == "JJ" ||
         s_.is_noun_head(i + 1)) &&
        last_np >= 0) {
      // comma list continuation: "2 roses, 3 lilies and 4 tulips"
      int comma = i;
      ++i;
      int head = parse_np(i, end);
      if (head < 0) fail("dangling comma");
      s_.attach(comma, head, "punct");
      s_.attach(head, last_np, "conj");
      last_np = head;
      continue;
    }
    if (t.pos == "PUNCT") {
      s_.attach(i, root, "punct");
      ++i;
      continue;
    }
    if (t.pos == "RB" || t.pos == "RBR") {
      s_.attach(i, cur_verb, "advmod");
      ++i;
      continue;
    }
    if (t.pos == "TO" && i + 1 < end && s_.toks[i + 1].pos == "VB") {
      s_.attach(i, i + 1, "mark");
      s_.attach(i + 1, cur_verb, "xcomp");
      cur_verb = i + 1;
      i += 2;
      continue;
    }
    if (t.pos == "IN" || t.pos == "TO") {
      int prep = i;
      // fixed adverbials: "in all", "in total"
      if (t.lemma == "in" && i + 1 < end &&
          (s_.toks[i + 1].lemma == "all" || s_.toks[i + 1].lemma == "total")) {
        s_.attach(prep, cur_verb, "advmod");
        s_.attach(i + 1, cur_verb, "advmod");
        i += 2;
        continue;
      }
      ++i;
      int head = parse_np(i, end);
      if (head < 0) fail("preposition without object");
      const std::string& pl = s_.toks[prep].lemma;
      const Token& obj_tok = s_.toks[head];
      std::string rel;
      if (obj_tok.pos == "CD") {
        rel = "nmod";  // amounts ("priced at $2") are plain nominal modifiers
      } else if (pl == "in" || pl == "at" || pl == "on" || pl == "into") {
        bool temporal = lex_.is_temporal(obj_tok.lemma) || lex_.is_temporal(lower(obj_tok.surface));
        rel = temporal ? "tmod" : (in_question ? "nmod" : "place");
      } else {
        rel = "nmod";
      }
      s_.attach(prep, head, "case");
      s_.attach(head, cur_verb, rel);
      continue;
    }
    if (t.pos == "CC") {
      int marker = i;
      ++i;
      int head = parse_np(i, end);
      if (head < 0) fail("conjunction without phrase");
      s_.attach(marker, head, "cc");
      if (last_np >= 0)
        s_.attach(head, last_np, "conj");
      else
        s_.attach(head, cur_verb, "obj");
      last_np = head;
      continue;
    }
    if (t.pos == "JJ" && s_.toks[cur_verb].lemma == "be") {
      // predicative adjective: treat as a modifier of the subject
      int subj = -1;
      for (size_t k = 0; k < s_.toks.size(); ++k)
        if (s_.toks[k].relation == "nsubj" && s_.toks[k].head == cur_verb + 1) subj = int(k);
      // a following noun turns this into an ordinary NP ("red flowers")
      bool np_follows = false;
      for (int k = i + 1; k < end && (s_.toks[k].pos == "JJ" || s_.is_noun_head(k)); ++k)
        if (s_.is_noun_head(k)) np_follows = true;
      if (!np_follows && subj >= 0) {
        s_.attach(i, subj, "amod");
        ++i;
        continue;
      }
    }
    if (t.pos == "DT" || t.pos == "CD" || t.pos == "JJ" || s_.is_noun_head(i)) {
      int head = parse_np(i, end);
      if (head < 0) fail("cannot parse noun phrase");
      if (obj < 0) {
        s_.attach(head, cur_verb, "obj");
        obj = head;
      } else if (s_.toks[obj].pos == "NNP" || s_.toks[obj].pos == "PRP") {
        // ditransitive: "gave Sam 43 seashells"
        s_.toks[obj].relation = "iobj";
        s_.attach(head, cur_verb, "obj");
      } else {
        s_.attach(head, cur_verb, "nmod");
      }
      last_np = head;
      continue;
    }
    fail("unexpected token '" + t.surface + "'");
  }
}

int SentenceParser::parse_clause(int begin, int end) {
  // leading subordinate clause: "If ... , <main>"
  if (begin < end && (s_.toks[begin].lemma == "if" || s_.toks[begin].lemma == "when")) {
    int comma = -1;
    for (int i = begin; i < end; ++i)
      if (s_.toks[i].surface == ",") {
        comma = i;
        break;
      }
    if (comma < 0) fail("subordinate clause without comma");
    int main_root = parse_clause(comma + 1, end);
    int sub_root = parse_clause(begin + 1, comma);
    s_.attach(sub_root, main_root, "advcl");
    s_.attach(begin, sub_root, "mark");
    s_.attach(comma, main_root, "punct");
    return main_root;
  }

  Region region = find_verb_region(begin, end);
  if (region.finite < 0) fail("no known verb");

  // subject: noun phrase before the verb region
  int i = begin;
  int subj = -1;
  bool expletive = false;
  if (i < end && s_.toks[i].pos == "EX") {
    expletive = true;
    ++i;
  } else if (i < region.finite) {
    subj = parse_np(i, region.finite);
  }
  while (i < region.finite) {
    if (s_.toks[i].pos == "RB")
      s_.attach(i, region.main, "advmod");
    else if (s_.toks[i].head == 0 && int(i) != subj)
      fail("unexpected token '" + s_.toks[i].surface + "' before verb");
    ++i;
  }

  int root = region.main;
  s_.toks[root].head = 0;
  s_.toks[root].relation = "root";
  for (int a : region.aux) s_.attach(a, root, "aux");
  if (expletive) {
    s_.attach(begin, root, "expl");
    // expletive subject: the content NP follows the verb ("There are 30 flowers ...")
    int j = region.main + 1;
    int head = parse_np(j, end);
    if (head >= 0) {
      s_.attach(head, root, "nsubj");
      assign_tense(region);
      attach_post(root, j, end, false);
      return root;
    }
  }
  if (subj >= 0) s_.attach(subj, root, "nsubj");
  assign_tense(region);
  attach_post(root, region.main + 1, end, false);
  return root;
}

int SentenceParser::parse_question(int begin, int end) {
  int i = begin;
  if (!(i + 1 < end && s_.toks[i].lemma == "how" &&
        (s_.toks[i + 1].lemma == "many" || s_.toks[i + 1].lemma == "much")))
    fail("unsupported question pattern");
  int how = i, qword = i + 1;
  i += 2;

  // asked entity NP (may be absent for "how much")
  std::vector<int> mods;
  int entity = -1;
  while (i < end && (s_.toks[i].pos == "JJ" || s_.toks[i].pos == "RBR")) mods.push_back(i++);
  if (i < end && (s_.toks[i].pos == "NN" || s_.toks[i].pos == "NNS")) entity = i++;
  // measure construction in the question: "how many cups of coffee"
  if (entity >= 0 && i + 1 < end && s_.toks[i].lemma == "of" && s_.toks[i].pos == "IN") {
    int prep = i++;
    int inner = parse_np(i, end);
    if (inner >= 0) {
      s_.attach(prep, inner, "case");
      s_.attach(inner, entity, "nmod");
    }
  }

  int root = -1;
  if (i < end && (s_.toks[i].pos == "MD" || is_do(lower(s_.toks[i].surface)) ||
                  (is_have(lower(s_.toks[i].surface)) && s_.is_verb(i)))) {
    // "how many E did S V ...?"
    int aux = i++;
    int subj = parse_np(i, end);
    if (i >= end || !s_.is_verb(i)) fail("question verb missing");
    int verb = i++;
    root = verb;
    s_.toks[root].head = 0;
    s_.toks[root].relation = "root";
    s_.attach(aux, root, "aux");
    if (subj >= 0) s_.attach(subj, root, "nsubj");
    std::string alw = lower(s_.toks[aux].surface);
    Tense tense = Tense::Present;
    if (alw == "did") tense = Tense::Past;
    else if (alw == "will" || alw == "would" || alw == "should" || alw == "shall") tense = Tense::Future;
    s_.toks[root].tense = tense;
    s_.toks[root].aspect = Aspect::Simple;
    attach_post(root, i, end, true);
  } else if (i < end && is_be(lower(s_.toks[i].surface))) {
    // "how many E are (there) ...?"
    int be = i++;
    bool expletive = false;
    int ex = -1;
    if (i < end && s_.toks[i].pos == "EX") {
      expletive = true;
      ex = i++;
    }
    Tense tense = (lower(s_.toks[be].surface) == "was" || lower(s_.toks[be].surface) == "were")
                      ? Tense::Past
                      : Tense::Present;
    if (i < end && (s_.toks[i].pos == "VBN" || s_.toks[i].pos == "VBD") && s_.toks[i].lemma != "be") {
      // passive: "how many pencils are left?", "how much was spent?"
      root = i++;
      s_.attach(be, root, "aux");
    } else {
      root = be;
    }
    s_.toks[root].head = 0;
    s_.toks[root].relation = "root";
    if (expletive) s_.attach(ex, root, "expl");
    s_.toks[root].tense = tense;
    s_.toks[root].aspect = Aspect::Simple;
    attach_post(root, i, end, true);
  } else {
    fail("unsupported question pattern");
  }

  s_.attach(how, qword, "advmod");
  if (entity >= 0) {
    s_.attach(qword, entity, "amod");
    for (int m : mods) s_.attach(m, entity, s_.toks[m].pos == "RBR" ? "advmod" : "amod");
    s_.attach(entity, root, "obj");
    if (s_.toks[root].lemma == "be" || s_.toks[root].pos == "VBN") s_.toks[entity].relation = "nsubj";
  } else {
    s_.attach(qword, root, "advmod");
    for (int m : mods) s_.attach(m, root, "advmod");
  }
  return root;
}

}  // namespace

// ---------------------------------------------------------------------------

Annotation Annotator::annotate_text(const std::string& text) const {
  Annotation ann;
  for (const auto& words : split_sentences(text)) {
    WorkSentence ws;
    for (const auto& w : words) ws.toks.push_back(tag_word(w, lex_));
    // noun/verb ambiguity: a verb-form surface right after a number,
    // determiner or adjective is a noun mention ("6 packs", "each pack")
    for (size_t i = 1; i < ws.toks.size(); ++i) {
      const std::string& prev = ws.toks[i - 1].pos;
      std::string lw = lower(ws.toks[i].surface);
      if (is_be(lw) || is_do(lw) || is_have(lw)) continue;  // auxiliaries stay verbs
      if (ws.is_verb(static_cast<int>(i)) && (prev == "CD" || prev == "DT" || prev == "JJ")) {
        bool plural = false;
        Token& t = ws.toks[i];
        t.lemma = lex_.noun_lemma(lower(t.surface), &plural);
        t.pos = plural ? "NNS" : "NN";
        t.tense.reset();
        t.aspect.reset();
      }
    }
    std::string stext = join(words.begin(), words.end(), " ");
    SentenceParser parser(ws, lex_, stext);
    int end = static_cast<int>(ws.toks.size());
    bool question = !words.empty() && words.back() == "?";
    int content_end = end;
    if (!ws.toks.empty() && ws.toks.back().pos == "PUNCT") content_end = end - 1;
    int root = question ? parser.parse_question(0, content_end) : parser.parse_clause(0, content_end);
    if (content_end < end) ws.toks[end - 1].head = root + 1, ws.toks[end - 1].relation = "punct";
    // any token left unattached indicates a pattern gap
    for (int i = 0; i < end; ++i) {
      if (i != root && ws.toks[i].head == 0)
        throw AnnotationError("cannot attach token '" + ws.toks[i].surface + "' in sentence: \"" +
                              stext + "\"");
    }
    Sentence sent;
    sent.tokens = std::move(ws.toks);
    ann.sentences.push_back(std::move(sent));
  }
  validate(ann);
  return ann;
}

Annotation Annotator::annotate(const MWProblem& problem) const { return annotate_text(problem.text()); }

}  // namespace mwp
