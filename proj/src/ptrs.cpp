#include "ptrs.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace probterm {

const Symbol* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

void Signature::add(const Symbol& sym) {
  auto [it, inserted] = symbols_.emplace(sym.name, sym);
  if (!inserted && it->second.arity != sym.arity) {
    throw std::invalid_argument("symbol " + sym.name + " used with arities " +
                                std::to_string(it->second.arity) + " and " +
                                std::to_string(sym.arity));
  }
}

std::vector<Symbol> Signature::with_kind(SymbolKind kind) const {
  std::vector<Symbol> out;
  for (const auto& [name, sym] : symbols_) {
    if (sym.kind == kind) out.push_back(sym);
  }
  return out;
}

bool operator==(const ProbRule& a, const ProbRule& b) {
  if (!(a.lhs == b.lhs) || a.rhs.size() != b.rhs.size()) return false;
  for (std::size_t i = 0; i < a.rhs.size(); ++i) {
    if (a.rhs.branches[i].prob != b.rhs.branches[i].prob ||
        a.rhs.branches[i].value != b.rhs.branches[i].value) {
      return false;
    }
  }
  return true;
}

bool operator==(const Ptrs& a, const Ptrs& b) {
  if (a.rules.size() != b.rules.size()) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    if (!(a.rules[i] == b.rules[i])) return false;
  }
  return true;
}

std::vector<Diagnostic> validate(const Ptrs& r) {
  std::vector<Diagnostic> out;
  for (int i = 0; i < static_cast<int>(r.rules.size()); ++i) {
    const ProbRule& rule = r.rules[i];
    if (rule.lhs.is_var()) {
      out.push_back({i, "left-hand side is a variable"});
      continue;
    }
    std::vector<std::string> lhs_vars = collect_vars(rule.lhs);
    for (const auto& branch : rule.rhs.branches) {
      for (const std::string& v : collect_vars(branch.value)) {
        if (std::find(lhs_vars.begin(), lhs_vars.end(), v) == lhs_vars.end()) {
          out.push_back({i, "right-hand side variable " + v +
                                " does not occur in the left-hand side"});
        }
      }
      if (branch.prob <= 0 || branch.prob > 1) {
        out.push_back({i, "branch probability " + rat_to_string(branch.prob) +
                              " outside (0, 1]"});
      }
    }
    if (rule.rhs.branches.empty()) {
      out.push_back({i, "empty distribution"});
    } else if (Rat total = rule.rhs.total(); total != 1) {
      out.push_back({i, "probabilities sum to " + rat_to_string(total) + " != 1"});
    }
  }
  return out;
}

namespace {

// Fixed-capacity binding buffer for the allocation-free matcher; patterns
// with more distinct variables fall back to the general matcher.
struct SmallBinds {
  std::array<std::pair<const std::string*, const Term*>, 8> slots;
  int count = 0;
  bool overflow = false;
};

bool matches_rec(const Term& p, const Term& s, SmallBinds& binds) {
  if (p.is_var()) {
    for (int i = 0; i < binds.count; ++i) {
      if (*binds.slots[i].first == p.var_name()) return *binds.slots[i].second == s;
    }
    if (binds.count == static_cast<int>(binds.slots.size())) {
      binds.overflow = true;
      return false;
    }
    binds.slots[binds.count++] = {&p.var_name(), &s};
    return true;
  }
  if (s.is_var() || !(p.root() == s.root())) return false;
  for (std::size_t i = 0; i < p.args().size(); ++i) {
    if (!matches_rec(p.args()[i], s.args()[i], binds)) return false;
  }
  return true;
}

// Returns true iff t is a normal form; appends the innermost redexes of t
// (with positions prefixed by `prefix`) to `out` when collecting.
bool scan_redexes(const Term& t, const Ptrs& r, Position& prefix,
                  std::vector<Redex>* out) {
  bool children_normal = true;
  for (int i = 0; i < static_cast<int>(t.args().size()); ++i) {
    prefix.push_back(i + 1);
    if (!scan_redexes(t.args()[i], r, prefix, out)) children_normal = false;
    prefix.pop_back();
  }
  bool root_redex = false;
  if (t.is_app()) {
    for (int ri = 0; ri < static_cast<int>(r.rules.size()); ++ri) {
      if (matches(r.rules[ri].lhs, t)) {
        root_redex = true;
        if (children_normal && out) out->push_back({prefix, ri});
        if (!out) break;
      }
    }
  }
  return children_normal && !root_redex;
}

}  // namespace

bool matches(const Term& pattern, const Term& subject) {
  SmallBinds binds;
  if (matches_rec(pattern, subject, binds)) return true;
  if (binds.overflow) return match(pattern, subject).has_value();
  return false;
}

bool is_normal_form(const Term& t, const Ptrs& r) {
  Position prefix;
  return scan_redexes(t, r, prefix, nullptr);
}

std::vector<Redex> innermost_redexes(const Term& t, const Ptrs& r) {
  std::vector<Redex> out;
  Position prefix;
  scan_redexes(t, r, prefix, &out);
  return out;
}

MultiDist<Term> rewrite_innermost(const Term& t, const Position& pos,
                                  int rule_index, const Ptrs& r) {
  if (rule_index < 0 || rule_index >= static_cast<int>(r.rules.size())) {
    throw NotARedex("rule index out of range");
  }
  const ProbRule& rule = r.rules[rule_index];
  Term redex = subterm_at(t, pos);
  auto sigma = match(rule.lhs, redex);
  if (!sigma) {
    throw NotARedex("rule lhs " + to_string(rule.lhs) + " does not match " +
                    to_string(redex));
  }
  for (const Term& arg : redex.args()) {
    if (!is_normal_form(arg, r)) {
      throw NotARedex("proper subterm " + to_string(arg) +
                      " of the redex is not a normal form");
    }
  }
  MultiDist<Term> result;
  for (const auto& branch : rule.rhs.branches) {
    result.branches.push_back({branch.prob, replace_at(t, pos, sigma->apply(branch.value))});
  }
  return result;
}

ProbRule canonical_rename(const ProbRule& rule) {
  Substitution renaming;
  int next = 1;
  for (const std::string& v : collect_vars(rule.lhs)) {
    renaming.bind(v, Term::var("x" + std::to_string(next++)));
  }
  int next_extra = 1;
  for (const auto& branch : rule.rhs.branches) {
    for (const std::string& v : collect_vars(branch.value)) {
      if (!renaming.contains(v)) {
        renaming.bind(v, Term::var("y" + std::to_string(next_extra++)));
      }
    }
  }
  ProbRule out;
  out.lhs = renaming.apply(rule.lhs);
  for (const auto& branch : rule.rhs.branches) {
    out.rhs.branches.push_back({branch.prob, renaming.apply(branch.value)});
  }
  return out;
}

std::vector<NpRule> np_variant(const Ptrs& r) {
  std::vector<NpRule> out;
  for (const ProbRule& rule : r.rules) {
    for (const auto& branch : rule.rhs.branches) {
      NpRule np{rule.lhs, branch.value};
      if (std::find(out.begin(), out.end(), np) == out.end()) out.push_back(np);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Ident, Integer, LParen, RParen, LBrace, RBrace, Comma, Colon,
              Slash, Arrow, End } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::End;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          ident += d;
          bump();
        } else {
          break;
        }
      }
      current_ = {Token::Ident, ident, current_.line, current_.column};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        num += text_[pos_];
        bump();
      }
      if (pos_ < text_.size() && text_[pos_] == '.') {
        throw ParseError(line_, col_, "decimal probabilities are not supported; use rationals like 1/2");
      }
      current_ = {Token::Integer, num, current_.line, current_.column};
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      bump();
      bump();
      current_ = {Token::Arrow, "->", current_.line, current_.column};
      return;
    }
    Token::Kind kind;
    switch (c) {
      case '(': kind = Token::LParen; break;
      case ')': kind = Token::RParen; break;
      case '{': kind = Token::LBrace; break;
      case '}': kind = Token::RBrace; break;
      case ',': kind = Token::Comma; break;
      case ':': kind = Token::Colon; break;
      case '/': kind = Token::Slash; break;
      default:
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }
    bump();
    current_ = {kind, std::string(1, c), current_.line, current_.column};
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_{};
};

// Untyped term AST; symbols get kinds only after all rules are known.
struct RawTerm {
  std::string head;
  bool has_args = false;
  std::vector<RawTerm> args;
  int line = 0, column = 0;
};

struct RawRule {
  RawTerm lhs;
  std::vector<std::pair<Rat, RawTerm>> branches;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  void run() {
    while (lex_.peek().kind != Token::End) {
      expect(Token::LParen, "'('");
      Token kw = expect(Token::Ident, "VAR or RULES");
      if (kw.text == "VAR") {
        while (lex_.peek().kind == Token::Ident) vars_.insert(lex_.take().text);
        expect(Token::RParen, "')'");
      } else if (kw.text == "RULES") {
        while (lex_.peek().kind == Token::Ident) rules_.push_back(parse_rule());
        expect(Token::RParen, "')'");
      } else {
        throw ParseError(kw.line, kw.column, "expected VAR or RULES, got " + kw.text);
      }
    }
  }

  std::set<std::string> vars_;
  std::vector<RawRule> rules_;

 private:
  RawRule parse_rule() {
    RawRule rule;
    rule.lhs = parse_raw_term();
    expect(Token::Arrow, "'->'");
    expect(Token::LBrace, "'{'");
    rule.branches.push_back(parse_branch());
    while (lex_.peek().kind == Token::Comma) {
      lex_.take();
      rule.branches.push_back(parse_branch());
    }
    expect(Token::RBrace, "'}'");
    return rule;
  }

  std::pair<Rat, RawTerm> parse_branch() {
    Token num = expect(Token::Integer, "probability");
    Rat prob(BigInt(num.text), 1);
    if (lex_.peek().kind == Token::Slash) {
      lex_.take();
      Token den = expect(Token::Integer, "denominator");
      BigInt d(den.text);
      if (d == 0) throw ParseError(den.line, den.column, "zero denominator");
      prob = Rat(BigInt(num.text), d);
    }
    expect(Token::Colon, "':'");
    return {prob, parse_raw_term()};
  }

  RawTerm parse_raw_term() {
    Token head = expect(Token::Ident, "term");
    RawTerm t;
    t.head = head.text;
    t.line = head.line;
    t.column = head.column;
    if (lex_.peek().kind == Token::LParen) {
      lex_.take();
      t.has_args = true;
      t.args.push_back(parse_raw_term());
      while (lex_.peek().kind == Token::Comma) {
        lex_.take();
        t.args.push_back(parse_raw_term());
      }
      expect(Token::RParen, "')'");
    }
    return t;
  }

  Token expect(Token::Kind kind, const std::string& what) {
    Token t = lex_.take();
    if (t.kind != kind) {
      throw ParseError(t.line, t.column, "expected " + what + ", got '" + t.text + "'");
    }
    return t;
  }

  Lexer lex_;
};

Term typed_term(const RawTerm& raw, Signature& sig) {
  if (sig.is_variable(raw.head)) {
    if (raw.has_args) {
      throw ParseError(raw.line, raw.column, "variable " + raw.head + " applied to arguments");
    }
    return Term::var(raw.head);
  }
  int arity = static_cast<int>(raw.args.size());
  const Symbol* existing = sig.find(raw.head);
  if (existing && existing->arity != arity) {
    throw ParseError(raw.line, raw.column,
                     "symbol " + raw.head + " used with arities " +
                         std::to_string(existing->arity) + " and " + std::to_string(arity));
  }
  Symbol sym = existing ? *existing : Symbol{raw.head, arity, SymbolKind::Constructor};
  std::vector<Term> args;
  args.reserve(raw.args.size());
  for (const RawTerm& a : raw.args) args.push_back(typed_term(a, sig));
  if (!existing) sig.add(sym);
  return Term::app(sym, std::move(args));
}

// Rebuilds a term so every application carries the signature's final kind.
Term retag(const Term& t, const Signature& sig) {
  if (t.is_var()) return t;
  const Symbol* sym = sig.find(t.root().name);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& c : t.args()) args.push_back(retag(c, sig));
  return Term::app(sym ? *sym : t.root(), std::move(args));
}

}  // namespace

Ptrs parse_ptrs(const std::string& text) {
  Parser parser(text);
  parser.run();

  Ptrs result;
  for (const std::string& v : parser.vars_) result.signature.add_variable(v);

  // First pass gives every symbol a consistent arity.
  std::vector<ProbRule> rules;
  for (const RawRule& raw : parser.rules_) {
    ProbRule rule;
    rule.lhs = typed_term(raw.lhs, result.signature);
    for (const auto& [prob, rhs] : raw.branches) {
      rule.rhs.branches.push_back({prob, typed_term(rhs, result.signature)});
    }
    rules.push_back(std::move(rule));
  }

  // Defined symbols are the lhs roots; everything else stays a constructor.
  std::map<std::string, Symbol> updated;
  for (const ProbRule& rule : rules) {
    if (rule.lhs.is_app()) {
      Symbol sym = rule.lhs.root();
      sym.kind = SymbolKind::Defined;
      updated.emplace(sym.name, sym);
    }
  }
  Signature final_sig;
  for (const std::string& v : result.signature.variables()) final_sig.add_variable(v);
  for (const auto& [name, sym] : result.signature.symbols()) {
    auto it = updated.find(name);
    final_sig.add(it != updated.end() ? it->second : sym);
  }
  result.signature = final_sig;

  for (ProbRule& rule : rules) {
    rule.lhs = retag(rule.lhs, result.signature);
    for (auto& branch : rule.rhs.branches) branch.value = retag(branch.value, result.signature);
    result.rules.push_back(canonical_rename(rule));
    // canonical names are part of the system's variable vocabulary
    for (const std::string& v : collect_vars(result.rules.back().lhs)) {
      result.signature.add_variable(v);
    }
  }
  return result;
}

std::string to_string(const ProbRule& rule) {
  std::string s = to_string(rule.lhs) + " -> {";
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    if (i > 0) s += ", ";
    s += rat_to_string(rule.rhs.branches[i].prob) + ": " +
         to_string(rule.rhs.branches[i].value);
  }
  return s + "}";
}

std::string serialize(const Ptrs& r) {
  std::ostringstream out;
  std::set<std::string> vars;
  for (const ProbRule& rule : r.rules) {
    for (const std::string& v : collect_vars(rule.lhs)) vars.insert(v);
    for (const auto& branch : rule.rhs.branches) {
      for (const std::string& v : collect_vars(branch.value)) vars.insert(v);
    }
  }
  out << "(VAR";
  for (const std::string& v : vars) out << " " << v;
  out << ")\n(RULES\n";
  for (const ProbRule& rule : r.rules) out << "  " << to_string(rule) << "\n";
  out << ")\n";
  return out.str();
}

Term parse_term(const std::string& text, const Ptrs& context) {
  Parser parser("(RULES " + text + " -> {1: " + text + "})");
  parser.run();
  if (parser.rules_.size() != 1) throw ParseError(1, 1, "expected a single term");

  Signature sig = context.signature;
  struct Build {
    Signature& sig;
    Term operator()(const RawTerm& raw) {
      if (sig.is_variable(raw.head)) {
        if (raw.has_args) {
          throw ParseError(raw.line, raw.column, "variable " + raw.head + " applied to arguments");
        }
        return Term::var(raw.head);
      }
      int arity = static_cast<int>(raw.args.size());
      const Symbol* existing = sig.find(raw.head);
      if (existing && existing->arity != arity) {
        throw ParseError(raw.line, raw.column, "symbol " + raw.head + " expects arity " +
                                                   std::to_string(existing->arity));
      }
      Symbol sym = existing ? *existing : Symbol{raw.head, arity, SymbolKind::Constructor};
      std::vector<Term> args;
      for (const RawTerm& a : raw.args) args.push_back((*this)(a));
      if (!existing) sig.add(sym);
      return Term::app(sym, std::move(args));
    }
  } build{sig};
  return build(parser.rules_[0].lhs);
}

}  // namespace probterm
