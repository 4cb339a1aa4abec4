#include <bipolar/fildsl/ast.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bipolar::fildsl {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column, std::size_t offset)
    : DomainError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line), column_(column), offset_(offset) {}

bool Call::operator==(const Call& o) const { return head == o.head && args == o.args; }

const Value* Call::find(const std::string& key) const {
  for (auto& a : args)
    if (a.key == key) return &a.value;
  return nullptr;
}

const Value& Call::at(const std::string& key) const {
  if (auto* v = find(key)) return *v;
  throw DomainError(head + "(...) needs argument '" + key + "'");
}

const Rational& Value::number() const {
  if (!is_number()) throw DomainError("expected a number, got " + print(*this));
  return std::get<Rational>(v);
}
long Value::integer() const {
  const Rational& r = number();
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw DomainError("expected an integer, got " + print(*this));
  return r.get_num().get_si();
}
const std::string& Value::name() const {
  if (!is_name()) throw DomainError("expected a name, got " + print(*this));
  return std::get<Name>(v).id;
}
const std::string& Value::string() const {
  if (!is_string()) throw DomainError("expected a string, got " + print(*this));
  return std::get<std::string>(v);
}
const std::vector<Value>& Value::list() const {
  if (!is_list()) throw DomainError("expected a list, got " + print(*this));
  return std::get<std::vector<Value>>(v);
}
const Call& Value::call() const {
  if (!is_call()) throw DomainError("expected a call, got " + print(*this));
  return std::get<Call>(v);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::P: return "P";
    case Family::N: return "N";
    case Family::B: return "B";
    case Family::T: return "T";
  }
  return "?";
}

std::string to_string(const Level& l) {
  return to_string(l.family) + (l.n == kInfinity ? std::string("inf") : std::to_string(l.n));
}

std::optional<Level> parse_level(const std::string& s) {
  if (s.size() < 2) return std::nullopt;
  Level l;
  switch (s[0]) {
    case 'P': l.family = Family::P; break;
    case 'N': l.family = Family::N; break;
    case 'B': l.family = Family::B; break;
    case 'T': l.family = Family::T; break;
    default: return std::nullopt;
  }
  std::string rest = s.substr(1);
  if (rest == "inf") {
    l.n = kInfinity;
    return l;
  }
  if (rest.size() > 4 || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  l.n = std::stoi(rest);
  return l;
}

namespace {
const std::vector<std::pair<InfectFlag, std::string>> kFlags{
    {InfectFlag::pattern_slice_on_unknot, "pattern_slice_on_unknot"},
    {InfectFlag::pattern_alexander_one, "pattern_alexander_one"},
    {InfectFlag::winding_zero, "winding_zero"},
    {InfectFlag::pattern_top_slice_on_unknot, "pattern_top_slice_on_unknot"},
};
}  // namespace

std::string to_string(InfectFlag f) {
  for (auto& [k, s] : kFlags)
    if (k == f) return s;
  return "?";
}

std::optional<InfectFlag> parse_flag(const std::string& s) {
  for (auto& [k, n] : kFlags)
    if (n == s) return k;
  return std::nullopt;
}

const std::vector<std::string>& known_facts() {
  static const std::vector<std::string> facts{
      "unknot_by_positive_crossings", "unknot_by_negative_crossings", "slice", "ribbon", "topologically_slice",
      "alexander_polynomial_one", "tau_sign", "s_sign", "epsilon_zero", "epsilon_sign", "asserted_not_in",
      "lspace_knot"};
  return facts;
}

ExprPtr KnotExpr::atom(std::string n) {
  auto e = std::make_shared<KnotExpr>();
  e->name = std::move(n);
  return e;
}
ExprPtr KnotExpr::sum(ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<KnotExpr>();
  e->op = Op::sum;
  e->kids = {std::move(a), std::move(b)};
  return e;
}
ExprPtr KnotExpr::neg(ExprPtr a) {
  auto e = std::make_shared<KnotExpr>();
  e->op = Op::neg;
  e->kids = {std::move(a)};
  return e;
}
ExprPtr KnotExpr::wh(bool positive, ExprPtr a) {
  auto e = std::make_shared<KnotExpr>();
  e->op = positive ? Op::wh_pos : Op::wh_neg;
  e->kids = {std::move(a)};
  return e;
}
ExprPtr KnotExpr::infect(std::string pattern, ExprPtr companion, long depth, std::vector<InfectFlag> flags) {
  auto e = std::make_shared<KnotExpr>();
  e->op = Op::infect;
  e->name = std::move(pattern);
  e->kids = {std::move(companion)};
  e->depth = depth;
  std::sort(flags.begin(), flags.end());
  flags.erase(std::unique(flags.begin(), flags.end()), flags.end());
  e->flags = std::move(flags);
  return e;
}
bool KnotExpr::has(InfectFlag f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

bool operator==(const KnotExpr& a, const KnotExpr& b) {
  if (a.op != b.op || a.name != b.name || a.depth != b.depth || a.flags != b.flags || a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(*a.kids[i] == *b.kids[i])) return false;
  return true;
}

const KnotDecl* Program::knot(const std::string& name) const {
  for (auto& s : statements)
    if (auto* k = std::get_if<KnotDecl>(&s); k && k->name == name) return k;
  return nullptr;
}

std::vector<const ExprDecl*> Program::views(const std::string& name) const {
  std::vector<const ExprDecl*> out;
  for (auto& s : statements)
    if (auto* e = std::get_if<ExprDecl>(&s); e && e->name == name) out.push_back(e);
  return out;
}

std::vector<const SplitDecl*> Program::splits(const std::string& name) const {
  std::vector<const SplitDecl*> out;
  for (auto& s : statements)
    if (auto* e = std::get_if<SplitDecl>(&s); e && e->subject == name) out.push_back(e);
  return out;
}

std::vector<std::string> Program::names() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto& s : statements) {
    std::string n;
    if (auto* k = std::get_if<KnotDecl>(&s)) n = k->name;
    else if (auto* e = std::get_if<ExprDecl>(&s)) n = e->name;
    else continue;
    if (seen.insert(n).second) out.push_back(n);
  }
  return out;
}

namespace {

enum class Tok { ident, wh_pos, wh_neg, number, string, punct, end };

struct Token {
  Tok kind;
  std::string text;
  Position pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Position p = pos_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::end, "", p});
        return out;
      }
      char c = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) id += take();
        if (id == "Wh" && i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
          out.push_back({take() == '+' ? Tok::wh_pos : Tok::wh_neg, id, p});
        } else {
          out.push_back({Tok::ident, id, p});
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) num += take();
        if (i_ + 1 < s_.size() && s_[i_] == '/' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
          num += take();
          while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) num += take();
        }
        out.push_back({Tok::number, num, p});
      } else if (c == '"') {
        take();
        std::string str;
        for (;;) {
          if (i_ >= s_.size() || s_[i_] == '\n') throw ParseError("unterminated string", p.line, p.column, p.offset);
          char d = take();
          if (d == '"') break;
          if (d == '\\') {
            if (i_ >= s_.size()) throw ParseError("unterminated string", p.line, p.column, p.offset);
            d = take();
          }
          str += d;
        }
        out.push_back({Tok::string, str, p});
      } else if (std::string("{}[](),:=#-@").find(c) != std::string::npos) {
        out.push_back({Tok::punct, std::string(1, take()), p});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", p.line, p.column, p.offset);
      }
    }
  }

 private:
  char take() {
    char c = s_[i_++];
    ++pos_.offset;
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        take();
      } else if (s_.compare(i_, 2, "//") == 0) {
        while (i_ < s_.size() && s_[i_] != '\n') take();
      } else {
        break;
      }
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Position pos_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(Lexer(text).run()) {}

  Program program() {
    Program prog;
    while (peek().kind != Tok::end) {
      const Token& t = peek();
      if (is_word("knot")) prog.statements.emplace_back(knot());
      else if (is_word("expr")) prog.statements.emplace_back(expr_decl());
      else if (is_word("split")) prog.statements.emplace_back(split());
      else fail(t, "expected 'knot', 'expr' or 'split'");
    }
    return prog;
  }

  ExprPtr lone_term() {
    auto e = term();
    if (peek().kind != Tok::end) fail(peek(), "trailing input after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[i_];
    if (t.kind != Tok::end) ++i_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " (found " + got + ")", t.pos.line, t.pos.column, t.pos.offset);
  }
  bool is_punct(char c, std::size_t k = 0) const { return peek(k).kind == Tok::punct && peek(k).text[0] == c; }
  bool is_word(const char* w) const { return peek().kind == Tok::ident && peek().text == w; }
  void expect(char c) {
    if (!is_punct(c)) fail(peek(), std::string("expected '") + c + "'");
    next();
  }
  void expect_word(const char* w) {
    if (!is_word(w)) fail(peek(), std::string("expected '") + w + "'");
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::ident) fail(peek(), std::string("expected ") + what);
    return next().text;
  }

  KnotDecl knot() {
    KnotDecl k;
    k.pos = next().pos;
    k.name = ident("knot name");
    expect('{');
    while (!is_punct('}')) {
      const Token& key = peek();
      std::string field = ident("field name");
      expect(':');
      if (field == "facts") {
        expect('[');
        while (!is_punct(']')) {
          k.facts.push_back(fact());
          if (!is_punct(']')) expect(',');
        }
        next();
      } else if (field == "seifert") {
        k.seifert = value();
      } else if (field == "alexander") {
        k.alexander = value();
      } else if (field == "cover") {
        k.covers.push_back(value());
      } else {
        fail(key, "unknown knot field");
      }
      if (is_punct(',')) next();
    }
    next();
    return k;
  }

  Fact fact() {
    Fact f;
    const Token& t = peek();
    f.name = ident("fact name");
    if (std::find(known_facts().begin(), known_facts().end(), f.name) == known_facts().end()) fail(t, "unknown fact");
    if (is_punct('(')) {
      next();
      while (!is_punct(')')) {
        f.args.push_back(value());
        if (!is_punct(')')) expect(',');
      }
      next();
    }
    if (is_punct('@')) {
      next();
      if (peek().kind != Tok::string) fail(peek(), "expected provenance string");
      f.provenance = next().text;
    }
    return f;
  }

  ExprDecl expr_decl() {
    ExprDecl d;
    d.pos = next().pos;
    d.name = ident("expression name");
    expect('=');
    d.expr = term();
    return d;
  }

  ExprPtr term() {
    const Token& t = peek();
    if (is_punct('#')) {
      next();
      expect('(');
      auto a = term();
      expect(',');
      auto b = term();
      expect(')');
      return KnotExpr::sum(a, b);
    }
    if (is_punct('-')) {
      next();
      if (is_punct('(')) {
        next();
        auto a = term();
        expect(')');
        return KnotExpr::neg(a);
      }
      return KnotExpr::neg(term());
    }
    if (t.kind == Tok::wh_pos || t.kind == Tok::wh_neg) {
      bool pos = next().kind == Tok::wh_pos;
      expect('(');
      auto a = term();
      expect(')');
      return KnotExpr::wh(pos, a);
    }
    if (t.kind == Tok::ident && t.text == "Infect" && is_punct('(', 1)) {
      next();
      next();
      expect_word("pattern");
      expect('=');
      std::string pattern = ident("pattern name");
      expect(',');
      expect_word("companion");
      expect('=');
      auto companion = term();
      expect(',');
      expect_word("depth");
      expect('=');
      const Token& dt = peek();
      if (dt.kind != Tok::number || dt.text.find('/') != std::string::npos) fail(dt, "expected integer depth");
      long depth = std::stol(next().text);
      std::vector<InfectFlag> flags;
      if (is_punct(',')) {
        next();
        expect_word("flags");
        expect('=');
        expect('[');
        while (!is_punct(']')) {
          const Token& ft = peek();
          auto f = parse_flag(ident("flag"));
          if (!f) fail(ft, "unknown infection flag");
          flags.push_back(*f);
          if (!is_punct(']')) expect(',');
        }
        next();
      }
      expect(')');
      bool wz = std::find(flags.begin(), flags.end(), InfectFlag::winding_zero) != flags.end();
      if (wz && depth < 1) fail(dt, "depth must be at least 1 with winding_zero");
      return KnotExpr::infect(pattern, companion, depth, flags);
    }
    if (t.kind == Tok::ident) return KnotExpr::atom(next().text);
    fail(t, "expected a knot expression");
  }

  SplitDecl split() {
    SplitDecl s;
    s.pos = next().pos;
    s.subject = ident("split subject");
    expect_word("not_in");
    const Token& lt = peek();
    auto lvl = parse_level(ident("level"));
    if (!lvl || lvl->n == kInfinity) fail(lt, "expected a finite level such as N2");
    s.target = *lvl;
    expect('{');
    bool have_cover = false;
    while (!is_punct('}')) {
      if (is_word("cover")) {
        next();
        expect(':');
        s.cover = value();
        have_cover = true;
      } else if (is_word("case")) {
        next();
        SplitCase c;
        c.label = ident("case label");
        expect(':');
        c.evidence = value();
        s.cases.push_back(std::move(c));
      } else {
        fail(peek(), "expected 'cover' or 'case'");
      }
      if (is_punct(',')) next();
    }
    next();
    if (!have_cover) throw ParseError("split needs a cover", s.pos.line, s.pos.column, s.pos.offset);
    return s;
  }

  Value value() {
    const Token& t = peek();
    if (is_punct('-') && peek(1).kind == Tok::number) {
      next();
      return Value{Rational(-number(next()))};
    }
    if (t.kind == Tok::number) return Value{number(next())};
    if (t.kind == Tok::string) return Value{next().text};
    if (is_punct('[')) {
      next();
      std::vector<Value> items;
      while (!is_punct(']')) {
        items.push_back(value());
        if (!is_punct(']')) expect(',');
      }
      next();
      return Value{std::move(items)};
    }
    if (t.kind == Tok::ident) {
      std::string id = next().text;
      if (!is_punct('(')) return Value{Name{id}};
      next();
      Call c{id, {}};
      while (!is_punct(')')) {
        Arg a;
        if (peek().kind == Tok::ident && is_punct('=', 1)) {
          a.key = next().text;
          next();
        }
        a.value = value();
        c.args.push_back(std::move(a));
        if (!is_punct(')')) expect(',');
      }
      next();
      return Value{std::move(c)};
    }
    fail(t, "expected a value");
  }

  Rational number(const Token& t) {
    auto slash = t.text.find('/');
    if (slash == std::string::npos) return Rational(Integer(t.text));
    Integer den(t.text.substr(slash + 1));
    if (den == 0) fail(t, "zero denominator");
    Rational r(Integer(t.text.substr(0, slash)), den);
    r.canonicalize();
    return r;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

[[noreturn]] void fail_at(const Position& p, const std::string& msg) { throw ParseError(msg, p.line, p.column, p.offset); }

std::string fact_sign(const Fact& f) {
  if (f.args.size() != 1 || !f.args[0].is_name()) return "";
  return f.args[0].name();
}

void validate(const Program& prog) {
  std::map<std::string, Position> knots;
  std::set<std::string> exprs;
  for (auto& s : prog.statements) {
    if (auto* k = std::get_if<KnotDecl>(&s)) {
      if (!knots.emplace(k->name, k->pos).second) fail_at(k->pos, "knot '" + k->name + "' declared twice");
    } else if (auto* e = std::get_if<ExprDecl>(&s)) {
      exprs.insert(e->name);
    }
  }
  for (auto& s : prog.statements) {
    if (auto* e = std::get_if<ExprDecl>(&s); e && knots.count(e->name))
      fail_at(e->pos, "'" + e->name + "' is both a knot and an expression");
  }
  auto known = [&](const std::string& n) { return knots.count(n) || exprs.count(n); };

  std::map<std::string, std::set<std::string>> deps;
  std::function<void(const KnotExpr&, const ExprDecl&)> check = [&](const KnotExpr& x, const ExprDecl& d) {
    if (x.op == KnotExpr::Op::atom || x.op == KnotExpr::Op::infect) {
      if (!known(x.name)) fail_at(d.pos, "unknown atom '" + x.name + "'");
      deps[d.name].insert(x.name);
    }
    for (auto& k : x.kids) check(*k, d);
  };
  for (auto& s : prog.statements) {
    if (auto* e = std::get_if<ExprDecl>(&s)) check(*e->expr, *e);
    if (auto* sp = std::get_if<SplitDecl>(&s); sp && !known(sp->subject))
      fail_at(sp->pos, "unknown atom '" + sp->subject + "'");
  }
  // Cycles among expression names.
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    if (state[n] == 2) return;
    if (state[n] == 1) fail_at(prog.views(n).front()->pos, "expression '" + n + "' refers to itself");
    state[n] = 1;
    for (auto& m : deps[n]) visit(m);
    state[n] = 2;
  };
  for (auto& n : exprs) visit(n);

  for (auto& s : prog.statements) {
    auto* k = std::get_if<KnotDecl>(&s);
    if (!k) continue;
    std::map<std::string, std::string> signs;
    for (auto& f : k->facts) {
      if (f.name == "tau_sign" || f.name == "s_sign" || f.name == "epsilon_sign") {
        std::string sg = fact_sign(f);
        if (sg != "positive" && sg != "negative" && sg != "zero")
          fail_at(k->pos, f.name + " takes one of positive, negative, zero");
        auto [it, fresh] = signs.emplace(f.name, sg);
        if (!fresh && it->second != sg) fail_at(k->pos, "contradictory facts: " + f.name + " on '" + k->name + "'");
      }
      if (f.name == "asserted_not_in") {
        if (f.args.size() != 1 || !f.args[0].is_name() || !parse_level(f.args[0].name()))
          fail_at(k->pos, "asserted_not_in takes a level such as N0");
      }
    }
    bool eps_zero = std::any_of(k->facts.begin(), k->facts.end(), [](const Fact& f) { return f.name == "epsilon_zero"; });
    if (eps_zero && signs.count("epsilon_sign") && signs["epsilon_sign"] != "zero")
      fail_at(k->pos, "contradictory facts: epsilon on '" + k->name + "'");
    bool slice = std::any_of(k->facts.begin(), k->facts.end(),
                             [](const Fact& f) { return f.name == "slice" || f.name == "ribbon"; });
    if (slice) {
      for (auto& f : k->facts)
        if (f.name == "asserted_not_in") fail_at(k->pos, "contradictory facts: slice knot asserted outside a level");
      for (auto& [n, sg] : signs)
        if (sg != "zero") fail_at(k->pos, "contradictory facts: slice knot with nonzero " + n);
    }
  }
}

// Printing

void print_value(std::ostringstream& os, const Value& v) {
  if (auto* r = std::get_if<Rational>(&v.v)) {
    os << algebra::to_string(*r);
  } else if (auto* n = std::get_if<Name>(&v.v)) {
    os << n->id;
  } else if (auto* s = std::get_if<std::string>(&v.v)) {
    os << '"';
    for (char c : *s) {
      if (c == '"' || c == '\\') os << '\\';
      os << c;
    }
    os << '"';
  } else if (auto* l = std::get_if<std::vector<Value>>(&v.v)) {
    os << '[';
    for (std::size_t i = 0; i < l->size(); ++i) {
      if (i) os << ", ";
      print_value(os, (*l)[i]);
    }
    os << ']';
  } else {
    const Call& c = std::get<Call>(v.v);
    os << c.head << '(';
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) os << ", ";
      if (!c.args[i].key.empty()) os << c.args[i].key << '=';
      print_value(os, c.args[i].value);
    }
    os << ')';
  }
}

void print_expr(std::ostringstream& os, const KnotExpr& e) {
  switch (e.op) {
    case KnotExpr::Op::atom: os << e.name; break;
    case KnotExpr::Op::sum:
      os << "#(";
      print_expr(os, *e.kids[0]);
      os << ", ";
      print_expr(os, *e.kids[1]);
      os << ')';
      break;
    case KnotExpr::Op::neg:
      os << "-(";
      print_expr(os, *e.kids[0]);
      os << ')';
      break;
    case KnotExpr::Op::wh_pos:
    case KnotExpr::Op::wh_neg:
      os << (e.op == KnotExpr::Op::wh_pos ? "Wh+(" : "Wh-(");
      print_expr(os, *e.kids[0]);
      os << ')';
      break;
    case KnotExpr::Op::infect:
      os << "Infect(pattern=" << e.name << ", companion=";
      print_expr(os, *e.kids[0]);
      os << ", depth=" << e.depth;
      if (!e.flags.empty()) {
        os << ", flags=[";
        for (std::size_t i = 0; i < e.flags.size(); ++i) os << (i ? ", " : "") << to_string(e.flags[i]);
        os << ']';
      }
      os << ')';
      break;
  }
}

}  // namespace

Program parse(const std::string& text) {
  Program p = Parser(text).program();
  validate(p);
  return p;
}

ExprPtr parse_expr(const std::string& text) { return Parser(text).lone_term(); }

std::string print(const Value& v) {
  std::ostringstream os;
  print_value(os, v);
  return os.str();
}

std::string print(const Fact& f) {
  std::ostringstream os;
  os << f.name;
  if (!f.args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      if (i) os << ", ";
      print_value(os, f.args[i]);
    }
    os << ')';
  }
  if (!f.provenance.empty()) os << " @" << print(Value{f.provenance});
  return os.str();
}

std::string print(const KnotExpr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string print(const Program& p) {
  std::ostringstream os;
  bool first = true;
  for (auto& s : p.statements) {
    if (!first) os << '\n';
    first = false;
    if (auto* k = std::get_if<KnotDecl>(&s)) {
      os << "knot " << k->name << " {\n";
      if (!k->facts.empty()) {
        os << "  facts: [";
        for (std::size_t i = 0; i < k->facts.size(); ++i) os << (i ? ", " : "") << print(k->facts[i]);
        os << "]\n";
      }
      if (k->seifert) os << "  seifert: " << print(*k->seifert) << '\n';
      if (k->alexander) os << "  alexander: " << print(*k->alexander) << '\n';
      for (auto& c : k->covers) os << "  cover: " << print(c) << '\n';
      os << "}\n";
    } else if (auto* e = std::get_if<ExprDecl>(&s)) {
      os << "expr " << e->name << " = " << print(*e->expr) << '\n';
    } else {
      auto& sp = std::get<SplitDecl>(s);
      os << "split " << sp.subject << " not_in " << to_string(sp.target) << " {\n";
      os << "  cover: " << print(sp.cover) << '\n';
      for (auto& c : sp.cases) os << "  case " << c.label << ": " << print(c.evidence) << '\n';
      os << "}\n";
    }
  }
  return os.str();
}

}  // namespace bipolar::fildsl
