#include "term.hpp"

#include <algorithm>
#include <sstream>

namespace probterm {

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::app(Symbol sym, std::vector<Term> args) {
  if (static_cast<int>(args.size()) != sym.arity) {
    throw std::invalid_argument("symbol " + sym.name + " has arity " +
                                std::to_string(sym.arity) + ", got " +
                                std::to_string(args.size()) + " arguments");
  }
  auto node = std::make_shared<Node>();
  node->is_var = false;
  node->sym = std::move(sym);
  node->children = std::move(args);
  return Term(std::move(node));
}

const std::string& Term::var_name() const {
  if (!is_var()) throw std::logic_error("var_name() on application");
  return node_->name;
}

const Symbol& Term::root() const {
  if (is_var()) throw std::logic_error("root() on variable");
  return node_->sym;
}

const std::vector<Term>& Term::args() const {
  static const std::vector<Term> empty;
  return is_var() ? empty : node_->children;
}

int Term::size() const {
  int n = 1;
  for (const Term& c : args()) n += c.size();
  return n;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.var_name() == b.var_name();
  if (!(a.root() == b.root())) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (a.args()[i] != b.args()[i]) return false;
  }
  return true;
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_var()) {
    const Term* bound = lookup(t.var_name());
    return bound ? *bound : t;
  }
  if (map_.empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& c : t.args()) args.push_back(apply(c));
  return Term::app(t.root(), std::move(args));
}

Term subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (int step : pos) {
    if (cur->is_var() || step < 1 || step > static_cast<int>(cur->args().size())) {
      throw InvalidPosition("position " + to_string(pos) + " invalid for " +
                            to_string(t));
    }
    cur = &cur->args()[step - 1];
  }
  return *cur;
}

namespace {
Term replace_rec(const Term& t, const Position& pos, std::size_t level,
                 const Term& replacement) {
  if (level == pos.size()) return replacement;
  int step = pos[level];
  if (t.is_var() || step < 1 || step > static_cast<int>(t.args().size())) {
    throw InvalidPosition("position " + to_string(pos) + " invalid for " +
                          to_string(t));
  }
  std::vector<Term> args = t.args();
  args[step - 1] = replace_rec(args[step - 1], pos, level + 1, replacement);
  return Term::app(t.root(), std::move(args));
}
}  // namespace

Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  return replace_rec(t, pos, 0, replacement);
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& out) {
  if (pattern.is_var()) {
    if (const Term* bound = out.lookup(pattern.var_name())) {
      return *bound == subject;  // nonlinear pattern: occurrences must agree
    }
    out.bind(pattern.var_name(), subject);
    return true;
  }
  if (subject.is_var() || !(pattern.root() == subject.root())) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match_into(pattern.args()[i], subject.args()[i], out)) return false;
  }
  return true;
}

bool occurs(const std::string& var, const Term& t, const Substitution& sub) {
  if (t.is_var()) {
    if (t.var_name() == var) return true;
    if (const Term* bound = sub.lookup(t.var_name())) {
      return occurs(var, *bound, sub);
    }
    return false;
  }
  for (const Term& c : t.args()) {
    if (occurs(var, c, sub)) return true;
  }
  return false;
}

// Follows variable bindings until a non-bound variable or an application.
const Term& walk(const Term& t, const Substitution& sub) {
  const Term* cur = &t;
  while (cur->is_var()) {
    const Term* bound = sub.lookup(cur->var_name());
    if (!bound) break;
    cur = bound;
  }
  return *cur;
}

bool unify_into(const Term& s, const Term& t, Substitution& sub) {
  const Term& a = walk(s, sub);
  const Term& b = walk(t, sub);
  if (a.is_var() && b.is_var() && a.var_name() == b.var_name()) return true;
  if (a.is_var()) {
    if (occurs(a.var_name(), b, sub)) return false;
    sub.bind(a.var_name(), b);
    return true;
  }
  if (b.is_var()) {
    if (occurs(b.var_name(), a, sub)) return false;
    sub.bind(b.var_name(), a);
    return true;
  }
  if (!(a.root() == b.root())) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!unify_into(a.args()[i], b.args()[i], sub)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution out;
  if (!match_into(pattern, subject, out)) return std::nullopt;
  return out;
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution bindings;
  if (!unify_into(s, t, bindings)) return std::nullopt;
  // Resolve chains so the result is idempotent.
  Substitution resolved;
  for (const auto& [var, value] : bindings.entries()) {
    Term v = bindings.apply(value);
    Term prev = v;
    while (true) {
      Term next = bindings.apply(prev);
      if (next == prev) break;
      prev = next;
    }
    resolved.bind(var, prev);
  }
  return resolved;
}

std::strong_ordering position_compare(const Position& a, const Position& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering term_compare(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) {
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_var()) return a.var_name() <=> b.var_name();
  if (auto c = a.root().name <=> b.root().name; c != 0) return c;
  if (auto c = a.root().arity <=> b.root().arity; c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (auto c = term_compare(a.args()[i], b.args()[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {
void collect_vars_into(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var_name()) == out.end()) {
      out.push_back(t.var_name());
    }
    return;
  }
  for (const Term& c : t.args()) collect_vars_into(c, out);
}

void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (int i = 0; i < static_cast<int>(t.args().size()); ++i) {
    cur.push_back(i + 1);
    collect_positions(t.args()[i], cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::string> collect_vars(const Term& t) {
  std::vector<std::string> out;
  collect_vars_into(t, out);
  return out;
}

std::vector<Position> all_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

std::string to_string(const Term& t) {
  if (t.is_var()) return t.var_name();
  std::string s = t.root().name;
  if (!t.args().empty()) {
    s += "(";
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i > 0) s += ", ";
      s += to_string(t.args()[i]);
    }
    s += ")";
  }
  return s;
}

std::string to_string(const Position& pos) {
  std::string s = "[";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(pos[i]);
  }
  return s + "]";
}

}  // namespace probterm
