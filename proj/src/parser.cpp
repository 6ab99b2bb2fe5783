#include "elimkit/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "elimkit/error.hpp"
#include "elimkit/macros.hpp"

namespace elimkit {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.type = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
          t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.type = Tok::Number;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          t.text += advance();
      } else {
        t.type = Tok::Punct;
        static const char* const multi[] = {"<->", "<-", "->"};
        bool matched = false;
        for (const char* m : multi) {
          std::string_view mv(m);
          if (src_.substr(pos_, mv.size()) == mv) {
            for (std::size_t i = 0; i < mv.size(); ++i) t.text += advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          static const std::string_view single = "()[]{},;.~+-=";
          if (single.find(c) == std::string_view::npos)
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
          t.text += advance();
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_upper_ident(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

const std::set<std::string>& operator_keywords() {
  static const std::set<std::string> k = {"forg", "proj", "circ", "rename", "all", "ex"};
  return k;
}

class Parser {
 public:
  Parser(std::string_view text, Program& prog) : toks_(Lexer(text).run()), prog_(prog) {}

  void program() {
    while (!at_end()) statement();
  }

  Formula single_formula() {
    Formula f = formula(true);
    if (is_punct(".")) next();
    expect_end();
    return f;
  }

  Scope single_scope() {
    Scope s = scope();
    expect_end();
    return s;
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(idx_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token next() {
    Token t = peek();
    if (idx_ < toks_.size() - 1) ++idx_;
    return t;
  }
  bool at_end() const { return peek().type == Tok::End; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).type == Tok::Punct && peek(ahead).text == p;
  }
  bool is_ident(std::string_view s) const {
    return peek().type == Tok::Ident && peek().text == s;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }

  std::string describe(const Token& t) const {
    if (t.type == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
    next();
  }
  Token expect_ident(const char* what) {
    if (peek().type != Tok::Ident) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  void expect_end() {
    if (!at_end()) fail("unexpected " + describe(peek()));
  }

  // --- statements ----------------------------------------------------------

  void statement() {
    Token kw = expect_ident("statement keyword (let, macro, domain)");
    if (kw.text == "let") {
      Token name = expect_ident("definition name");
      if (is_upper_ident(name.text)) fail("definition names must not start with an uppercase letter", name);
      expect("=");
      Formula body = formula(true);
      expect(".");
      if (prog_.definition(name.text)) fail("duplicate definition of '" + name.text + "'", name);
      prog_.define(name.text, std::move(body));
    } else if (kw.text == "macro") {
      macro_statement();
    } else if (kw.text == "domain") {
      expect("{");
      if (!is_punct("}")) {
        for (;;) {
          Token c = next();
          if (c.type != Tok::Ident && c.type != Tok::Number) fail("expected domain constant", c);
          if (is_upper_ident(c.text)) fail("domain constants must not start with an uppercase letter", c);
          prog_.domain.push_back(c.text);
          if (is_punct(",")) {
            next();
            continue;
          }
          break;
        }
      }
      expect("}");
      expect(".");
    } else {
      fail("unknown statement '" + kw.text + "'", kw);
    }
  }

  void macro_statement() {
    Token name = expect_ident("macro name");
    if (is_upper_ident(name.text)) fail("macro names must not start with an uppercase letter", name);
    if (operator_keywords().count(name.text) || name.text == "true" || name.text == "false")
      fail("'" + name.text + "' is reserved", name);
    expect("(");
    std::vector<std::string> params;
    if (!is_punct(")")) {
      for (;;) {
        Token p = expect_ident("parameter name");
        for (const auto& existing : params)
          if (existing == p.text) fail("duplicate parameter '" + p.text + "'", p);
        params.push_back(p.text);
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect(")");
    expect("=");
    params_.clear();
    for (const auto& p : params) params_[p] = std::nullopt;
    Formula body = formula(true);
    expect(".");
    MacroDef def;
    def.name = name.text;
    def.body = body;
    for (const auto& p : params)
      def.params.push_back(MacroParam{p, params_[p].value_or(ParamKind::Formula)});
    params_.clear();
    try {
      register_macro(prog_, def);
    } catch (const DefinitionError& e) {
      fail(e.what(), name);
    }
  }

  // --- formulas ------------------------------------------------------------

  // `commas` says whether `,` may be read as conjunction at this level.
  Formula formula(bool commas) {
    Formula lhs = implication(commas);
    while (is_punct("<->")) {
      next();
      lhs = Formula::equiv(lhs, implication(commas));
    }
    return lhs;
  }

  Formula implication(bool commas) {
    Formula lhs = disjunction(commas);
    if (is_punct("->")) {
      next();
      return Formula::implies(lhs, implication(commas));
    }
    if (is_punct("<-")) {
      next();
      return Formula::implied_by(lhs, implication(commas));
    }
    return lhs;
  }

  Formula disjunction(bool commas) {
    Formula lhs = conjunction(commas);
    while (is_punct(";")) {
      next();
      lhs = Formula::disj(lhs, conjunction(commas));
    }
    return lhs;
  }

  Formula conjunction(bool commas) {
    Formula lhs = unary(commas);
    while (commas && is_punct(",")) {
      next();
      lhs = Formula::conj(lhs, unary(commas));
    }
    return lhs;
  }

  Formula unary(bool commas) {
    if (is_punct("~")) {
      next();
      return Formula::negation(unary(commas));
    }
    return primary(commas);
  }

  Formula primary(bool commas) {
    if (is_punct("(")) {
      next();
      Formula f = formula(true);
      expect(")");
      return f;
    }
    if (peek().type != Tok::Ident) fail("expected formula, found " + describe(peek()));
    Token id = next();
    const std::string& name = id.text;
    if (is_punct("(")) {
      if (operator_keywords().count(name)) return operator_call(id, commas);
      if (const MacroDef* m = prog_.macro(name)) return macro_call(id, *m, commas);
      if (is_upper_ident(name)) fail("atoms must not start with an uppercase letter", id);
      return Formula::atom(make_atom(id, term_list()));
    }
    if (name == "true") return Formula::top();
    if (name == "false") return Formula::bottom();
    if (auto it = params_.find(name); it != params_.end()) {
      use_param(id, ParamKind::Formula);
      return Formula::param(name);
    }
    if (is_upper_ident(name)) fail("unbound name '" + name + "'", id);
    if (const Formula* def = prog_.definition(name)) return *def;
    return Formula::atom(make_atom(id, {}));
  }

  Atom make_atom(const Token& id, std::vector<Term> args) {
    try {
      return Atom::from_functor(id.text, std::move(args));
    } catch (const PreconditionError& e) {
      fail(e.what(), id);
    }
  }

  void use_param(const Token& at, ParamKind kind) {
    auto& slot = params_[at.text];
    if (slot && *slot != kind)
      fail("parameter '" + at.text + "' used both as scope and as formula", at);
    slot = kind;
  }

  Formula operator_call(const Token& id, bool commas) {
    const std::string& op = id.text;
    expect("(");
    Formula out;
    if (op == "all" || op == "ex") {
      Token var = expect_ident("quantified variable");
      if (!is_upper_ident(var.text)) fail("quantified variables must start with an uppercase letter", var);
      expect(",");
      Formula body = formula(commas);
      out = op == "all" ? Formula::forall(var.text, body) : Formula::exists(var.text, body);
    } else if (op == "rename") {
      auto pairs = rename_pairs();
      expect(",");
      out = Formula::rename(std::move(pairs), formula(commas));
    } else {
      Scope s = scope();
      expect(",");
      Formula body = formula(commas);
      if (op == "forg") out = Formula::forg(s, body);
      else if (op == "proj") out = Formula::proj(s, body);
      else out = Formula::circ(s, body);
    }
    if (!is_punct(")")) fail("expected ')' closing " + op + "(...), found " + describe(peek()));
    next();
    return out;
  }

  Formula macro_call(const Token& id, const MacroDef& m, bool commas) {
    expect("(");
    std::vector<MacroArg> args;
    if (!is_punct(")")) {
      for (std::size_t i = 0;; ++i) {
        if (i >= m.arity())
          fail("macro '" + m.name + "' expects " + std::to_string(m.arity()) + " argument(s)", id);
        bool last = i + 1 == m.arity();
        if (m.params[i].kind == ParamKind::Scope)
          args.emplace_back(scope());
        else
          args.emplace_back(formula(last && commas));
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    if (args.size() != m.arity())
      fail("macro '" + m.name + "' expects " + std::to_string(m.arity()) + " argument(s), got " +
               std::to_string(args.size()),
           id);
    expect(")");
    return Formula::macro_call(m.name, std::move(args));
  }

  std::vector<RenamePair> rename_pairs() {
    expect("[");
    std::vector<RenamePair> pairs;
    if (!is_punct("]")) {
      for (;;) {
        auto from = number();
        expect("-");
        auto to = number();
        pairs.push_back(RenamePair{from, to});
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect("]");
    return pairs;
  }

  std::uint32_t number() {
    if (peek().type != Tok::Number) fail("expected group number, found " + describe(peek()));
    Token t = next();
    if (t.text.size() > 9) fail("group number too large", t);
    return static_cast<std::uint32_t>(std::stoul(t.text));
  }

  // --- terms ---------------------------------------------------------------

  std::vector<Term> term_list() {
    expect("(");
    std::vector<Term> args;
    for (;;) {
      args.push_back(term());
      if (is_punct(",")) {
        next();
        continue;
      }
      break;
    }
    expect(")");
    return args;
  }

  Term term() {
    Token t = next();
    if (t.type == Tok::Number) return Term::constant(t.text);
    if (t.type != Tok::Ident) fail("expected term, found " + describe(t), t);
    if (is_punct("(")) {
      if (is_upper_ident(t.text)) fail("function symbols must not start with an uppercase letter", t);
      return Term{t.text, term_list(), false};
    }
    return is_upper_ident(t.text) ? Term::var(t.text) : Term::constant(t.text);
  }

  // --- scopes --------------------------------------------------------------

  Scope scope() {
    if (is_punct("[")) return scope_list();
    if (peek().type != Tok::Ident) fail("expected scope, found " + describe(peek()));
    Token id = next();
    if (id.text == "ALL") return Scope::all();
    if (auto it = params_.find(id.text); it != params_.end()) {
      use_param(id, ParamKind::Scope);
      return Scope::param(id.text);
    }
    if (id.text == "complements") {
      expect("(");
      Scope s = scope();
      expect(")");
      return Scope::complements(s);
    }
    if (id.text == "union" || id.text == "minus") {
      expect("(");
      std::vector<Scope> parts{scope()};
      while (is_punct(",")) {
        next();
        parts.push_back(scope());
      }
      expect(")");
      if (id.text == "union") return Scope::set_union(std::move(parts));
      if (parts.size() != 2) fail("minus expects two scopes", id);
      return Scope::difference(parts[0], parts[1]);
    }
    fail("expected scope, found '" + id.text + "'", id);
  }

  Scope scope_list() {
    expect("[");
    std::vector<Scope> items;
    if (!is_punct("]")) {
      for (;;) {
        items.push_back(scope_item());
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect("]");
    return Scope::set_union(std::move(items));
  }

  Scope scope_item() {
    Sign sign = Sign::Both;
    if (is_punct("+") || is_punct("-")) sign = next().text == "+" ? Sign::Pos : Sign::Neg;
    if (peek().type == Tok::Number) return Scope::group(number(), sign);
    if (sign != Sign::Both && is_punct("(")) {
      next();
      auto g = number();
      expect(")");
      return Scope::group(g, sign);
    }
    Token id = expect_ident("scope item");
    if (is_upper_ident(id.text)) fail("scope items must be atoms or group numbers", id);
    std::vector<Term> args;
    if (is_punct("(")) args = term_list();
    return Scope::item(make_atom(id, std::move(args)), sign);
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
  Program& prog_;
  // Parameters of the macro body being parsed, with their inferred kind.
  std::map<std::string, std::optional<ParamKind>> params_;
};

}  // namespace

Program parse_program(std::string_view text, Program base) {
  Parser p(text, base);
  p.program();
  return base;
}

Program parse_program(std::string_view text) { return parse_program(text, builtin_program()); }

Formula parse_formula(std::string_view text, const Program& ctx) {
  Program copy = ctx;
  Parser p(text, copy);
  return p.single_formula();
}

Scope parse_scope(std::string_view text) {
  Program empty;
  Parser p(text, empty);
  return p.single_scope();
}

}  // namespace elimkit
