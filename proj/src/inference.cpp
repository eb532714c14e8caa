#include "mwp/inference.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

// ---------------------------------------------------------------------------
// Unification

namespace {

// entity slot of a quan pattern (third argument)
bool entity_slot(const Fact& pattern, size_t arg_idx) {
  return pattern.pred == "quan" && arg_idx == 2;
}

bool match_term(const Term& pat, const Term& got, size_t arg_idx, const Fact& pattern_fact,
                Bindings& b, const Lexicon* entail) {
  switch (pat.kind) {
    case Term::Constant:
      if (got.kind != Term::Constant) return false;
      if (pat.text == got.text) return true;
      if (entail && entity_slot(pattern_fact, arg_idx)) return entail->entails(got.text, pat.text);
      return false;
    case Term::Number:
      return got.kind == Term::Number && got.number == pat.number;
    case Term::MatchVar: {
      auto it = b.find(pat.text);
      if (it != b.end()) return it->second == got;
      b.emplace(pat.text, got);
      return true;
    }
    case Term::FreshVar:
      throw ContractError("fresh variable $" + pat.text + " in a match pattern");
  }
  return false;
}

bool match_fact(const Fact& pattern, const Fact& fact, Bindings& b, const Lexicon* entail) {
  if (pattern.pred != fact.pred || pattern.args.size() != fact.args.size()) return false;
  if (pattern.value) {
    if (!fact.value || !(*fact.value == *pattern.value)) return false;
  }
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], fact.args[i], i, pattern, b, entail)) return false;
  return true;
}

void unify_rec(std::span<const Fact> pattern, size_t k, const FactSet& facts, const Bindings& current,
               const Lexicon* entail, std::vector<Bindings>& out) {
  if (k == pattern.size()) {
    out.push_back(current);
    return;
  }
  for (int idx : facts.by_pred(pattern[k].pred)) {
    Bindings next = current;
    if (match_fact(pattern[k], facts.facts()[idx], next, entail))
      unify_rec(pattern, k + 1, facts, next, entail, out);
  }
}

}  // namespace

std::vector<Bindings> unify(std::span<const Fact> pattern, const FactSet& facts, const Bindings& seed,
                            const Lexicon* entail) {
  std::vector<Bindings> out;
  unify_rec(pattern, 0, facts, seed, entail, out);
  return out;
}

// ---------------------------------------------------------------------------
// Saturation

namespace {

Term instantiate_term(const Term& t, const Bindings& b) {
  if (t.kind == Term::MatchVar || t.kind == Term::FreshVar) {
    auto it = b.find(t.kind == Term::FreshVar ? "$" + t.text : t.text);
    if (it == b.end()) throw ContractError("unbound variable " + t.str() + " in consequent");
    return it->second;
  }
  return t;
}

Fact instantiate_fact(const Fact& templ, const Bindings& b) {
  Fact f;
  f.pred = templ.pred;
  f.value = templ.value;
  for (const auto& a : templ.args) f.args.push_back(instantiate_term(a, b));
  return f;
}

Rational eval_expr(const ValueExpr& e, const Bindings& b, const FactSet& facts) {
  switch (e.kind) {
    case ValueExpr::Number:
      return e.number;
    case ValueExpr::VarRef: {
      auto it = b.find(e.var);
      if (it == b.end()) throw ContractError("unbound variable ?" + e.var + " in value expression");
      if (it->second.kind != Term::Number)
        throw InferenceError("variable ?" + e.var + " is not bound to a number");
      return it->second.number;
    }
    case ValueExpr::FactValue: {
      Fact ground = instantiate_fact(e.fact, b);
      for (int idx : facts.by_pred(ground.pred)) {
        const Fact& f = facts.facts()[idx];
        if (f.pred == ground.pred && f.args == ground.args) {
          if (!f.value) throw InferenceError("fact " + f.str() + " has no value");
          return *f.value;
        }
      }
      throw InferenceError("no fact matching " + ground.str() + " for value expression");
    }
    case ValueExpr::Binary: {
      Rational lhs = eval_expr(e.kids[0], b, facts);
      Rational rhs = eval_expr(e.kids[1], b, facts);
      switch (e.op) {
        case '+': return lhs + rhs;
        case '-': return lhs - rhs;
        case '*': return lhs * rhs;
        case '/': return lhs / rhs;
      }
      throw ContractError("unknown operator in value expression");
    }
  }
  throw ContractError("bad value expression");
}

// Consequent instantiated as an existence pattern: $vars become match
// vars so derivation is skipped when an equivalent consequent already
// holds (this is what makes saturation idempotent).
std::vector<Fact> consequent_pattern(const InferenceRule& rule, const Bindings& b,
                                     const FactSet& facts) {
  std::vector<Fact> pattern;
  for (const auto& c : rule.consequents) {
    Fact f;
    f.pred = c.templ.pred;
    for (const auto& a : c.templ.args) {
      if (a.kind == Term::FreshVar)
        f.args.push_back(Term::match_var("$" + a.text));
      else
        f.args.push_back(instantiate_term(a, b));
    }
    if (c.value) f.value = eval_expr(*c.value, b, facts);
    pattern.push_back(std::move(f));
  }
  return pattern;
}

}  // namespace

FactSet saturate(const FactSet& facts, std::span<const InferenceRule> rules, int budget,
                 SaturationTrace* trace) {
  FactSet out = facts;
  int fresh_counter = 1;
  int derived = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : rules) {
      auto bindings = unify(rule.antecedent, out);
      for (const auto& b : bindings) {
        auto pattern = consequent_pattern(rule, b, out);
        if (!unify(pattern, out).empty()) continue;  // already satisfied
        Bindings full = b;
        for (const auto& c : rule.consequents)
          for (const auto& a : c.templ.args)
            if (a.kind == Term::FreshVar && !full.count("$" + a.text))
              full.emplace("$" + a.text, Term::constant("d" + std::to_string(fresh_counter++)));
        for (size_t ci = 0; ci < rule.consequents.size(); ++ci) {
          Fact f = instantiate_fact(rule.consequents[ci].templ, full);
          f.value = pattern[ci].value;  // value expression evaluated above
          if (out.insert(f)) {
            ++derived;
            if (trace) trace->derivations.emplace_back(rule.name, out.facts().back());
            changed = true;
          }
        }
        if (derived > budget)
          throw InferenceError("saturation exceeded the derivation budget of " +
                               std::to_string(budget) + " new facts");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Utility evaluation

Rational eval_tvqf(std::span<const Quantity> quantities) {
  std::vector<const Quantity*> related;
  for (const auto& q : quantities)
    if (q.relevance == 2) related.push_back(&q);
  if (related.empty()) throw NoSolutionError("no directly-related quantities for TVQ evaluation");
  std::stable_sort(related.begin(), related.end(), [](const Quantity* a, const Quantity* b) {
    if (a->time != b->time) return a->time < b->time;
    if (a->sentence != b->sentence) return a->sentence < b->sentence;
    return a->token < b->token;
  });
  Rational state(0);
  for (const Quantity* q : related) {
    switch (q->action) {
      case VerbClass::Stative: state = q->value; break;
      case VerbClass::Positive: state += q->value; break;
      case VerbClass::Negative: state -= q->value; break;
    }
  }
  return state;
}

Rational eval_utility(const UtilityCall& call, const FactSet& facts,
                      std::span<const Quantity> quantities) {
  if (is_arithmetic(call.type)) {
    auto a = facts.quan_value(call.first);
    auto b = facts.quan_value(call.second);
    if (!a || !b)
      throw InferenceError("operand quan fact missing: " +
                           (a ? call.second : call.first));
    switch (call.type) {
      case SolutionType::Addition: return *a + *b;
      case SolutionType::Subtraction: return *a - *b;
      case SolutionType::Multiplication: return *a * *b;
      case SolutionType::Division:
        if (b->is_zero()) throw ArithmeticError("division by zero in utility evaluation");
        return *a / *b;
      default: break;
    }
  }
  if (call.type == SolutionType::Sum) {
    if (call.function_pattern.empty()) throw ContractError("Sum call without a function pattern");
    Rational total(0);
    int matches = 0;
    for (const auto& b : unify(std::span(call.function_pattern), facts)) {
      if (!call.condition.empty() && unify(std::span(call.condition), facts, b).empty()) continue;
      Fact ground = instantiate_fact(call.function_pattern[0], b);
      for (int idx : facts.by_pred(ground.pred)) {
        const Fact& f = facts.facts()[idx];
        if (f.args == ground.args && f.value) {
          total += *f.value;
          ++matches;
          break;
        }
      }
    }
    if (matches == 0) throw NoSolutionError("Sum matched no facts");
    return total;
  }
  if (call.type == SolutionType::TvqF) return eval_tvqf(quantities);
  throw ContractError("unhandled utility type");
}

// ---------------------------------------------------------------------------
// Rule DSL

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  ValueExpr parse() {
    ValueExpr e = sum();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("junk after value expression: " + s_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  ValueExpr sum() {
    ValueExpr lhs = product();
    while (peek() == '+' || peek() == '-') {
      char op = s_[pos_++];
      ValueExpr rhs = product();
      ValueExpr node;
      node.kind = ValueExpr::Binary;
      node.op = op;
      node.kids = {std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  ValueExpr product() {
    ValueExpr lhs = factor();
    while (peek() == '*' || peek() == '/') {
      char op = s_[pos_++];
      ValueExpr rhs = factor();
      ValueExpr node;
      node.kind = ValueExpr::Binary;
      node.op = op;
      node.kids = {std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  ValueExpr factor() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("truncated value expression: " + s_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ValueExpr e = sum();
      if (peek() != ')') throw ParseError("missing ')' in value expression: " + s_);
      ++pos_;
      return e;
    }
    if (c == '?') {
      ++pos_;
      ValueExpr e;
      e.kind = ValueExpr::VarRef;
      e.var = atom();
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ValueExpr e;
      e.kind = ValueExpr::Number;
      e.number = Rational::parse(atom());
      return e;
    }
    // fact value reference: pred(args)
    std::string name = atom();
    if (peek() != '(') throw ParseError("bad value expression factor near '" + name + "'");
    size_t depth = 0;
    size_t start = pos_;
    while (pos_ < s_.size()) {
      if (s_[pos_] == '(') ++depth;
      if (s_[pos_] == ')' && --depth == 0) {
        ++pos_;
        break;
      }
      ++pos_;
    }
    ValueExpr e;
    e.kind = ValueExpr::FactValue;
    e.fact = parse_fact_text(name + s_.substr(start, pos_ - start));
    return e;
  }

  std::string atom() {
    skip_ws();
    std::string out;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#') {
        out.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    if (out.empty()) throw ParseError("expected atom in value expression: " + s_);
    return out;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

// splits "pred(a,b)=expr & pred2(c)" into consequent facts, honoring
// parentheses so '&' inside expressions is impossible by construction
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

ConsequentFact parse_consequent(const std::string& text) {
  std::string s = trim(text);
  // the value expression starts at the '=' after the argument list
  int depth = 0;
  size_t eq = std::string::npos;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '=' && depth == 0) {
      eq = i;
      break;
    }
  }
  ConsequentFact out;
  if (eq == std::string::npos) {
    out.templ = parse_fact_text(s);
  } else {
    out.templ = parse_fact_text(trim(s.substr(0, eq)));
    out.value = ExprParser(trim(s.substr(eq + 1))).parse();
  }
  return out;
}

}  // namespace

InferenceRule parse_rule(const std::string& line) {
  std::string s = trim(line);
  InferenceRule rule;
  size_t arrow = s.find("=>");
  if (arrow == std::string::npos) throw ParseError("rule needs 'antecedent => consequent': " + line);
  std::string lhs = trim(s.substr(0, arrow));
  std::string rhs = trim(s.substr(arrow + 2));
  size_t colon = lhs.find(':');
  if (colon != std::string::npos && lhs.find('(') > colon) {
    rule.name = trim(lhs.substr(0, colon));
    lhs = trim(lhs.substr(colon + 1));
  }
  rule.antecedent = parse_conjunction(lhs);
  if (rule.antecedent.empty()) throw ParseError("rule with empty antecedent: " + line);
  for (const auto& part : split_top(rhs, '&')) {
    std::string p = trim(part);
    if (!p.empty()) rule.consequents.push_back(parse_consequent(p));
  }
  if (rule.consequents.empty()) throw ParseError("rule with empty consequent: " + line);
  // every consequent match-var must be bound by the antecedent
  std::set<std::string> bound;
  for (const auto& f : rule.antecedent)
    for (const auto& a : f.args)
      if (a.kind == Term::MatchVar) bound.insert(a.text);
  for (const auto& c : rule.consequents)
    for (const auto& a : c.templ.args)
      if (a.kind == Term::MatchVar && !bound.count(a.text))
        throw ParseError("consequent variable ?" + a.text + " not bound by antecedent: " + line);
  return rule;
}

std::vector<InferenceRule> parse_rules(const std::string& text) {
  std::vector<InferenceRule> rules;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    InferenceRule r = parse_rule(t);
    if (r.name.empty()) r.name = "rule" + std::to_string(++n);
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<InferenceRule> load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rule file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str());
}

namespace {

std::string expr_to_text(const ValueExpr& e) {
  switch (e.kind) {
    case ValueExpr::Number: return e.number.str();
    case ValueExpr::VarRef: return "?" + e.var;
    case ValueExpr::FactValue: return e.fact.str();
    case ValueExpr::Binary:
      return "(" + expr_to_text(e.kids[0]) + std::string(1, e.op) + expr_to_text(e.kids[1]) + ")";
  }
  return "";
}

}  // namespace

std::string rule_to_text(const InferenceRule& rule) {
  std::string out;
  if (!rule.name.empty()) out += rule.name + ": ";
  for (size_t i = 0; i < rule.antecedent.size(); ++i) {
    if (i) out += " & ";
    out += rule.antecedent[i].str();
  }
  out += " => ";
  for (size_t i = 0; i < rule.consequents.size(); ++i) {
    if (i) out += " & ";
    out += rule.consequents[i].templ.str();
    if (rule.consequents[i].value) out += "=" + expr_to_text(*rule.consequents[i].value);
  }
  return out;
}

}  // namespace mwp
