#include "ltlfo/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ltlfo/errors.hpp"
#include "ltlfo/interp.hpp"

namespace ltlfo {

namespace {

enum class Tok { Ident, Int, Str, Punct, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    std::size_t l = line, cl = col;
    if (c == '\n') {
      out.push_back({Tok::Newline, "\n", l, cl});
      advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        advance();
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), l, cl});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t start = i;
      advance();
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance();
      out.push_back({Tok::Int, std::string(src.substr(start, i - start)), l, cl});
    } else if (c == '"') {
      advance();
      std::string s;
      while (true) {
        if (i >= src.size() || src[i] == '\n') throw SyntaxError(l, cl, "unterminated string");
        if (src[i] == '"') break;
        if (src[i] == '\\' && i + 1 < src.size()) advance();
        s += src[i];
        advance();
      }
      advance();
      out.push_back({Tok::Str, s, l, cl});
    } else {
      static const char* two[] = {"->", "&&", "||"};
      bool matched = false;
      for (const char* t : two) {
        if (src.substr(i, 2) == t) {
          out.push_back({Tok::Punct, t, l, cl});
          advance(2);
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("(),:.;=!").find(c) == std::string_view::npos) {
        throw SyntaxError(l, cl, std::string("unexpected character '") + c + "'");
      }
      out.push_back({Tok::Punct, std::string(1, c), l, cl});
      advance();
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> r = {"sort",  "upred",  "ipred",  "fun",  "const",
                                          "policy", "builtin", "env_set", "true", "false",
                                          "forall", "exists", "X",       "G",    "F",
                                          "U",      "W"};
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Spec spec() {
    Spec out;
    bool have_policy = false;
    while (true) {
      skip_separators();
      if (at_end()) break;
      if (have_policy) fail(peek(), "declarations must precede the policy");
      const Token& kw = expect_ident("declaration keyword");
      if (kw.text == "sort") {
        sort_decl(out.signature);
      } else if (kw.text == "upred") {
        upred_decl(out.signature);
      } else if (kw.text == "ipred") {
        ipred_decl(out.signature);
      } else if (kw.text == "fun") {
        fun_decl(out.signature);
      } else if (kw.text == "const") {
        const_decl(out.signature);
      } else if (kw.text == "policy") {
        check_builtins(out.signature);
        sig_ = &out.signature;
        formula_mode_ = true;
        out.policy = formula();
        formula_mode_ = false;
        have_policy = true;
        continue;
      } else {
        fail(kw, "unknown declaration '" + kw.text + "'");
      }
      end_decl();
    }
    if (!have_policy) fail(peek(), "missing policy");
    return out;
  }

  Formula standalone(const Signature& sig) {
    sig_ = &sig;
    formula_mode_ = true;
    Formula f = formula();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  // -- token helpers ------------------------------------------------------

  const Token& peek() {
    if (formula_mode_) {
      while (toks_[pos_].kind == Tok::Newline) ++pos_;
    }
    return toks_[pos_];
  }

  const Token& take() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  bool at_end() { return peek().kind == Tok::End; }

  bool is_punct(const char* p) {
    const Token& t = peek();
    return t.kind == Tok::Punct && t.text == p;
  }

  bool is_word(const char* w) {
    const Token& t = peek();
    return t.kind == Tok::Ident && t.text == w;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(t.line, t.col, msg);
  }

  void expect_punct(const char* p) {
    if (!is_punct(p)) {
      const Token& t = peek();
      fail(t, std::string("expected '") + p + "', found '" + (t.kind == Tok::End ? "end of input" : t.text) + "'");
    }
    take();
  }

  const Token& expect_ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, std::string("expected ") + what);
    return take();
  }

  void skip_separators() {
    while (peek().kind == Tok::Newline || is_punct(";")) take();
  }

  void end_decl() {
    const Token& t = peek();
    if (t.kind == Tok::Newline || t.kind == Tok::End || is_punct(";")) return;
    fail(t, "unexpected '" + t.text + "' at end of declaration");
  }

  // -- declarations -------------------------------------------------------

  std::string symbol_name(const Signature& sig) {
    const Token& t = expect_ident("symbol name");
    if (reserved().contains(t.text)) fail(t, "'" + t.text + "' is reserved");
    if (sig.declared(t.text)) fail(t, "duplicate symbol '" + t.text + "'");
    return t.text;
  }

  std::string sort_ref(const Signature& sig) {
    const Token& t = expect_ident("sort name");
    if (!sig.sort(t.text)) throw SortError("declaration at " + std::to_string(t.line), "declared sort", t.text);
    return t.text;
  }

  std::vector<std::string> sort_list(const Signature& sig) {
    std::vector<std::string> out;
    expect_punct("(");
    if (!is_punct(")")) {
      out.push_back(sort_ref(sig));
      while (is_punct(",")) {
        take();
        out.push_back(sort_ref(sig));
      }
    }
    expect_punct(")");
    return out;
  }

  void sort_decl(Signature& sig) {
    const Token& name = expect_ident("sort name");
    Sort s{name.text, Kind::Int};
    if (is_punct("=")) {
      take();
      const Token& k = expect_ident("Int or Str");
      if (k.text != "Int" && k.text != "Str") fail(k, "sort kind must be Int or Str");
      s.kind = k.text == "Int" ? Kind::Int : Kind::Str;
    } else if (name.text == "Str") {
      s.kind = Kind::Str;
    } else if (name.text != "Int") {
      fail(name, "sort '" + name.text + "' needs a kind: sort " + name.text + " = Int|Str");
    }
    if (sig.sort(s.name)) fail(name, "duplicate sort '" + s.name + "'");
    sig.add_sort(s);
  }

  void upred_decl(Signature& sig) {
    UPredDecl p;
    p.name = symbol_name(sig);
    p.arg_sorts = sort_list(sig);
    sig.add_upred(std::move(p));
  }

  void ipred_decl(Signature& sig) {
    IPredDecl p;
    p.name = symbol_name(sig);
    p.arg_sorts = sort_list(sig);
    if (is_punct("=")) {
      take();
      const Token& how = expect_ident("builtin or env_set");
      if (how.text == "builtin") {
        p.builtin = expect_ident("builtin id").text;
      } else if (how.text == "env_set") {
        const Token& n = take();
        if (n.kind != Tok::Str && n.kind != Tok::Ident) fail(n, "expected env set name");
        p.env_set = n.text;
      } else {
        fail(how, "expected 'builtin' or 'env_set'");
      }
    } else {
      p.env_set = p.name;
    }
    sig.add_ipred(std::move(p));
  }

  void fun_decl(Signature& sig) {
    FunctionDecl f;
    f.name = symbol_name(sig);
    f.arg_sorts = sort_list(sig);
    expect_punct("->");
    f.result_sort = sort_ref(sig);
    expect_punct("=");
    const Token& b = expect_ident("builtin");
    if (b.text != "builtin") fail(b, "functions must be bound to a builtin");
    f.builtin = expect_ident("builtin id").text;
    sig.add_function(std::move(f));
  }

  void const_decl(Signature& sig) {
    FunctionDecl f;
    f.name = symbol_name(sig);
    expect_punct("->");
    f.result_sort = sort_ref(sig);
    expect_punct("=");
    const Token& v = take();
    Kind k = sig.kind(f.result_sort);
    if (v.kind == Tok::Int && k == Kind::Int) {
      f.constant = Value{std::stoll(v.text)};
    } else if (v.kind == Tok::Str && k == Kind::Str) {
      f.constant = Value{v.text};
    } else {
      throw SortError("const " + f.name, f.result_sort, v.kind == Tok::Int ? "Int literal" : "'" + v.text + "'");
    }
    sig.add_function(std::move(f));
  }

  // -- formulae -----------------------------------------------------------

  Formula formula() { return implication(); }

  Formula implication() {
    Formula lhs = disjunction();
    if (is_punct("->")) {
      take();
      return mk_implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (is_punct("||")) {
      take();
      return mk_or(lhs, disjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = until();
    if (is_punct("&&")) {
      take();
      return mk_and(lhs, conjunction());
    }
    return lhs;
  }

  Formula until() {
    Formula lhs = unary();
    if (is_word("U")) {
      take();
      return mk_until(lhs, until());
    }
    if (is_word("W")) {
      take();
      return mk_weak_until(lhs, until());
    }
    return lhs;
  }

  Formula unary() {
    if (is_punct("!")) {
      take();
      return mk_not(unary());
    }
    if (is_word("X")) {
      take();
      return mk_next(unary());
    }
    if (is_word("G")) {
      take();
      return mk_globally(unary());
    }
    if (is_word("F")) {
      take();
      return mk_eventually(unary());
    }
    if (is_word("forall") || is_word("exists")) return quantifier();
    return primary();
  }

  Formula quantifier() {
    bool universal = take().text == "forall";
    std::vector<Token> names;
    if (is_punct("(")) {
      take();
      if (!is_punct(")")) {
        names.push_back(expect_ident("variable"));
        while (is_punct(",")) {
          take();
          names.push_back(expect_ident("variable"));
        }
      }
      expect_punct(")");
    } else {
      names.push_back(expect_ident("variable"));
    }
    expect_punct(":");
    const Token& pred = expect_ident("U-operator");
    const UPredDecl* decl = sig_->upred(pred.text);
    if (!decl) {
      throw SortError("quantifier at " + pos(pred), "U-operator",
                      sig_->ipred(pred.text) ? "I-operator '" + pred.text + "'" : "'" + pred.text + "'");
    }
    if (decl->arg_sorts.size() != names.size()) {
      throw SortError("quantifier over " + pred.text + " at " + pos(pred),
                      std::to_string(decl->arg_sorts.size()) + " variables",
                      std::to_string(names.size()));
    }
    expect_punct(".");
    std::vector<Binder> binders;
    std::vector<std::pair<std::string, std::optional<std::pair<std::string, std::string>>>> saved;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string& n = names[i].text;
      if (reserved().contains(n)) fail(names[i], "'" + n + "' is reserved");
      std::string fresh = n;
      for (int k = 1; used_.contains(fresh) || sig_->declared(fresh); ++k) {
        fresh = n + "_" + std::to_string(k);
      }
      used_.insert(fresh);
      auto it = scope_.find(n);
      saved.emplace_back(n, it == scope_.end() ? std::nullopt : std::optional(it->second));
      scope_[n] = {fresh, decl->arg_sorts[i]};
      binders.push_back({fresh, decl->arg_sorts[i]});
    }
    Formula body = formula();
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      if (it->second) {
        scope_[it->first] = *it->second;
      } else {
        scope_.erase(it->first);
      }
    }
    return universal ? mk_forall(std::move(binders), pred.text, body)
                     : mk_exists(std::move(binders), pred.text, body);
  }

  Formula primary() {
    if (is_word("true")) {
      take();
      return mk_true();
    }
    if (is_word("false")) {
      take();
      return mk_false();
    }
    if (is_punct("(")) {
      take();
      Formula f = formula();
      expect_punct(")");
      return f;
    }
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, t.kind == Tok::End ? "unexpected end of formula" : "unexpected '" + t.text + "'");
    if (reserved().contains(t.text)) fail(t, "unexpected keyword '" + t.text + "'");
    take();
    const std::vector<std::string>* sorts = nullptr;
    bool upred = false;
    if (const auto* u = sig_->upred(t.text)) {
      sorts = &u->arg_sorts;
      upred = true;
    } else if (const auto* r = sig_->ipred(t.text)) {
      sorts = &r->arg_sorts;
    } else {
      fail(t, "unknown predicate '" + t.text + "'");
    }
    std::vector<Term> args = term_args(*sorts, "predicate " + t.text + " at " + pos(t));
    return upred ? mk_upred(t.text, std::move(args)) : mk_ipred(t.text, std::move(args));
  }

  std::vector<Term> term_args(const std::vector<std::string>& sorts, const std::string& site) {
    const Token& open = peek();
    expect_punct("(");
    std::vector<Term> args;
    if (!is_punct(")")) {
      args.push_back(term(sorts.size() > 0 ? &sorts[0] : nullptr, site));
      while (is_punct(",")) {
        take();
        args.push_back(term(args.size() < sorts.size() ? &sorts[args.size()] : nullptr, site));
      }
    }
    expect_punct(")");
    if (args.size() != sorts.size()) {
      throw SortError(site, std::to_string(sorts.size()) + " arguments",
                      std::to_string(args.size()) + " at " + pos(open));
    }
    return args;
  }

  void check_sort(const std::string* expected, const std::string& found, const std::string& site) {
    if (expected && *expected != found) throw SortError(site, *expected, found);
  }

  Term term(const std::string* expected, const std::string& site) {
    const Token& t = take();
    if (t.kind == Tok::Int || t.kind == Tok::Str) {
      Kind k = t.kind == Tok::Int ? Kind::Int : Kind::Str;
      if (!expected) throw SortError(site, "no further arguments", "literal " + t.text);
      if (sig_->kind(*expected) != k) throw SortError(site, *expected, to_string(k) + " literal");
      return t.kind == Tok::Int ? mk_lit(Value{std::stoll(t.text)}, *expected)
                                : mk_lit(Value{t.text}, *expected);
    }
    if (t.kind != Tok::Ident) fail(t, "expected a term");
    if (auto it = scope_.find(t.text); it != scope_.end() && !is_punct("(")) {
      check_sort(expected, it->second.second, site);
      return mk_var(it->second.first, it->second.second);
    }
    const FunctionDecl* f = sig_->function(t.text);
    if (!f) {
      if (is_punct("(")) fail(t, "unknown function '" + t.text + "'");
      throw FreeVariableError(t.text);
    }
    check_sort(expected, f->result_sort, site);
    std::vector<Term> args;
    if (is_punct("(")) {
      args = term_args(f->arg_sorts, "function " + t.text + " at " + pos(t));
    } else if (!f->arg_sorts.empty()) {
      throw SortError("function " + t.text + " at " + pos(t),
                      std::to_string(f->arg_sorts.size()) + " arguments", "0");
    }
    return mk_app(t.text, std::move(args), f->result_sort);
  }

  static std::string pos(const Token& t) {
    return std::to_string(t.line) + ":" + std::to_string(t.col);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool formula_mode_ = false;
  const Signature* sig_ = nullptr;
  // source name -> (renamed variable, sort)
  std::map<std::string, std::pair<std::string, std::string>> scope_;
  std::set<std::string> used_;
};

}  // namespace

Spec parse_spec(std::string_view text) { return Parser(text).spec(); }

Spec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text).standalone(sig);
}

}  // namespace ltlfo
