#include "mwp/logicform.hpp"

#include <cctype>

#include "mwp/error.hpp"
#include "mwp/operands.hpp"
#include "mwp/text.hpp"

namespace mwp {

bool Term::operator==(const Term& o) const {
  if (kind != o.kind) return false;
  if (kind == Number) return number == o.number;
  return text == o.text;
}

std::string Term::str() const {
  switch (kind) {
    case Constant: return text;
    case Number: return number.str();
    case MatchVar: return "?" + text;
    case FreshVar: return "$" + text;
  }
  return text;
}

bool Fact::ground() const {
  for (const auto& a : args)
    if (a.is_var()) return false;
  return true;
}

bool Fact::operator==(const Fact& o) const {
  return pred == o.pred && args == o.args && value == o.value;
}

std::string Fact::str() const {
  std::string out = pred + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].str();
  }
  out += ")";
  if (value) out += "=" + value->str();
  return out;
}

Fact make_fact(std::string pred, std::vector<Term> args, std::optional<Rational> value) {
  Fact f;
  f.pred = std::move(pred);
  f.args = std::move(args);
  f.value = std::move(value);
  return f;
}

bool FactSet::insert(Fact f) {
  if (!f.ground()) throw ContractError("cannot store non-ground fact: " + f.str());
  std::string key = f.str();
  if (keys_.count(key)) return false;
  keys_[key] = static_cast<int>(facts_.size());
  index_[f.pred].push_back(static_cast<int>(facts_.size()));
  facts_.push_back(std::move(f));
  return true;
}

bool FactSet::contains(const Fact& f) const { return keys_.count(f.str()) > 0; }

const std::vector<int>& FactSet::by_pred(const std::string& pred) const {
  static const std::vector<int> empty;
  auto it = index_.find(pred);
  return it == index_.end() ? empty : it->second;
}

const Fact* FactSet::find_quan(const std::string& id) const {
  for (int i : by_pred("quan")) {
    const Fact& f = facts_[i];
    if (!f.args.empty() && f.args[0].kind == Term::Constant && f.args[0].text == id) return &f;
  }
  return nullptr;
}

std::optional<Rational> FactSet::quan_value(const std::string& id) const {
  const Fact* f = find_quan(id);
  if (!f || !f->value) return std::nullopt;
  return f->value;
}

bool FactSet::operator==(const FactSet& o) const {
  if (facts_.size() != o.facts_.size()) return false;
  for (const auto& f : facts_)
    if (!o.contains(f)) return false;
  return true;
}

std::string UtilityCall::str() const {
  auto conj = [](const std::vector<Fact>& fs) {
    std::string out;
    for (size_t i = 0; i < fs.size(); ++i) {
      if (i) out += "&";
      out += fs[i].str();
    }
    return out;
  };
  std::string out = "ask " + to_string(type) + "(";
  out += conj(function_pattern);
  if (!condition.empty()) out += ", " + conj(condition);
  out += ")";
  return out;
}

// ---------------------------------------------------------------------------
// Transformation

namespace {

// quan fact argument layout: money amounts swap the unit into the unit
// slot and leave '#' as the entity, e.g. quan(q4,dollar,#)=1.5.
std::pair<std::string, std::string> quan_slots(const Quantity& q) {
  if (q.money) return {"dollar", "#"};
  return {q.unit, q.entity};
}

}  // namespace

FactSet transform_body(const Extraction& ex) {
  FactSet fs;
  for (const auto& p : ex.prices)
    fs.insert(make_fact("price", {Term::constant(p.entity), Term::num(p.value)}));
  for (const auto& q : ex.quantities) {
    auto [unit, entity] = quan_slots(q);
    fs.insert(make_fact("quan", {Term::constant(q.id), Term::constant(unit), Term::constant(entity)},
                        q.value));
    if (!q.verb.empty()) fs.insert(make_fact("verb", {Term::constant(q.id), Term::constant(q.verb)}));
    for (const auto& [role, lemma] : q.role_tags)
      fs.insert(make_fact(role, {Term::constant(q.id), Term::constant(lemma)}));
  }
  for (const auto& m : ex.maps)
    fs.insert(make_fact(
        "qmap", {Term::constant(m.id), Term::constant(m.from_id), Term::constant(m.to_id)}));
  return fs;
}

UtilityCall transform_question(const Extraction& ex, SolutionType stype, const OperandConfig* operands) {
  UtilityCall call;
  call.type = stype;
  const QuestionQuantity& q0 = ex.question;

  if (is_arithmetic(stype)) {
    if (!operands) throw ContractError("arithmetic utility requires an operand configuration");
    const Quantity* a = ex.find(operands->first_id(ex));
    const Quantity* b = ex.find(operands->second_id(ex));
    if (!a || !b) throw ContractError("operand configuration references unknown quantities");
    call.first = a->id;
    call.second = b->id;
    auto [ua, ea] = quan_slots(*a);
    auto [ub, eb] = quan_slots(*b);
    call.function_pattern.push_back(
        make_fact("quan", {Term::constant(a->id), Term::constant(ua), Term::constant(ea)}));
    call.function_pattern.push_back(
        make_fact("quan", {Term::constant(b->id), Term::constant(ub), Term::constant(eb)}));
    return call;
  }

  // Sum / TVQF patterns share the ?q variable
  std::string unit = q0.money ? "dollar" : q0.unit;
  std::string entity = q0.money ? "#" : q0.entity;
  call.function_pattern.push_back(
      make_fact("quan", {Term::match_var("q"), Term::constant(unit), Term::constant(entity)}));
  if (stype == SolutionType::Sum) {
    if (!q0.verb.empty())
      call.condition.push_back(make_fact("verb", {Term::match_var("q"), Term::constant(q0.verb)}));
    auto ns = q0.role_tags.find("nsubj");
    if (ns != q0.role_tags.end() && !q0.subject_plural_pronoun)
      call.condition.push_back(make_fact("nsubj", {Term::match_var("q"), Term::constant(ns->second)}));
    auto mod = q0.role_tags.find("modifier");
    if (mod != q0.role_tags.end())
      call.condition.push_back(
          make_fact("modifier", {Term::match_var("q"), Term::constant(mod->second)}));
  } else {
    // TVQF: identify the tracked anchor/entity for the trace
    if (!q0.anchor_unknown())
      call.condition.push_back(make_fact("nsubj", {Term::match_var("q"), Term::constant(q0.anchor)}));
  }
  return call;
}

// ---------------------------------------------------------------------------
// Text format

std::string to_text(const FactSet& fs) {
  std::string out;
  for (const auto& f : fs.facts()) {
    out += f.str();
    out += "\n";
  }
  return out;
}

namespace {

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'' ||
         c == '.' || c == '-';
}

}  // namespace

Fact parse_fact_text(const std::string& text) {
  std::string s = trim(text);
  size_t open = s.find('(');
  if (open == std::string::npos || open == 0) throw ParseError("bad fact: " + text);
  size_t close = s.find(')', open);
  if (close == std::string::npos) throw ParseError("bad fact: " + text);
  Fact f;
  f.pred = trim(s.substr(0, open));
  for (const auto& raw : split_char(s.substr(open + 1, close - open - 1), ',')) {
    std::string a = trim(raw);
    if (a.empty()) throw ParseError("empty argument in fact: " + text);
    if (a[0] == '?')
      f.args.push_back(Term::match_var(a.substr(1)));
    else if (a[0] == '$')
      f.args.push_back(Term::fresh_var(a.substr(1)));
    else if (Lexicon::number_value(a) && (std::isdigit(static_cast<unsigned char>(a[0])) || a[0] == '$'))
      f.args.push_back(Term::num(Rational::parse(a)));
    else {
      for (char c : a)
        if (!atom_char(c)) throw ParseError("bad symbol '" + a + "' in fact: " + text);
      f.args.push_back(Term::constant(a));
    }
  }
  std::string rest = trim(s.substr(close + 1));
  if (!rest.empty()) {
    if (rest[0] != '=') throw ParseError("junk after fact: " + text);
    f.value = Rational::parse(trim(rest.substr(1)));
  }
  return f;
}

std::vector<Fact> parse_conjunction(const std::string& text) {
  std::vector<Fact> out;
  for (const auto& part : split_char(text, '&')) {
    std::string p = trim(part);
    if (!p.empty()) out.push_back(parse_fact_text(p));
  }
  return out;
}

FactSet factset_from_text(const std::string& text) {
  FactSet fs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("ask ", 0) == 0) continue;  // utility statements live beside facts
    for (auto& f : parse_conjunction(t)) fs.insert(std::move(f));
  }
  return fs;
}

}  // namespace mwp
