#pragma once

#include <bipolar/algebra/integer.hpp>
#include <bipolar/error.hpp>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bipolar::fildsl {

using algebra::Integer;
using algebra::Rational;

// Syntax or validation failure, positioned in the source text (1-based line/column).
class ParseError : public DomainError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column, std::size_t offset);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t line_, column_, offset_;
};

struct Position {
  std::size_t line = 1, column = 1, offset = 0;
};

// Generic literal used for evidence blocks, matrices and fact arguments.
struct Value;
struct Arg;
struct Name {
  std::string id;
  bool operator==(const Name&) const = default;
};
struct Call {
  std::string head;
  std::vector<Arg> args;
  bool operator==(const Call&) const;
  const Value* find(const std::string& key) const;
  const Value& at(const std::string& key) const;
};
struct Value {
  std::variant<Rational, Name, std::string, std::vector<Value>, Call> v;
  bool operator==(const Value&) const = default;

  bool is_number() const { return std::holds_alternative<Rational>(v); }
  bool is_name() const { return std::holds_alternative<Name>(v); }
  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_list() const { return std::holds_alternative<std::vector<Value>>(v); }
  bool is_call() const { return std::holds_alternative<Call>(v); }
  // Accessors throw DomainError on kind mismatch.
  const Rational& number() const;
  long integer() const;
  const std::string& name() const;
  const std::string& string() const;
  const std::vector<Value>& list() const;
  const Call& call() const;
};
struct Arg {
  std::string key;  // empty for positional arguments
  Value value;
  bool operator==(const Arg&) const = default;
};

enum class Family { P, N, B, T };
inline constexpr int kInfinity = 1 << 30;

struct Level {
  Family family = Family::P;
  int n = 0;  // kInfinity for the intersection over all n
  bool operator==(const Level&) const = default;
};
std::string to_string(Family f);
std::string to_string(const Level& l);
std::optional<Level> parse_level(const std::string& s);

struct Fact {
  std::string name;
  std::vector<Value> args;
  std::string provenance;
  bool operator==(const Fact&) const = default;
};

enum class InfectFlag { pattern_slice_on_unknot, pattern_alexander_one, winding_zero, pattern_top_slice_on_unknot };
std::string to_string(InfectFlag f);
std::optional<InfectFlag> parse_flag(const std::string& s);

struct KnotExpr;
using ExprPtr = std::shared_ptr<const KnotExpr>;

struct KnotExpr {
  enum class Op { atom, sum, neg, wh_pos, wh_neg, infect };
  Op op = Op::atom;
  std::string name;  // atom name, or the pattern name for infection
  std::vector<ExprPtr> kids;
  long depth = 0;
  std::vector<InfectFlag> flags;  // sorted, unique

  static ExprPtr atom(std::string n);
  static ExprPtr sum(ExprPtr a, ExprPtr b);
  static ExprPtr neg(ExprPtr a);
  static ExprPtr wh(bool positive, ExprPtr a);
  static ExprPtr infect(std::string pattern, ExprPtr companion, long depth, std::vector<InfectFlag> flags);
  bool has(InfectFlag f) const;
};
bool operator==(const KnotExpr& a, const KnotExpr& b);

struct KnotDecl {
  std::string name;
  std::vector<Fact> facts;
  std::optional<Value> seifert;
  std::optional<Value> alexander;
  std::vector<Value> covers;
  Position pos;
};

struct ExprDecl {
  std::string name;
  ExprPtr expr;
  Position pos;
};

struct SplitCase {
  std::string label;
  Value evidence;
};

// A not-in claim proved by exhausting the metabolizers of a branched cover.
struct SplitDecl {
  std::string subject;
  Level target;
  Value cover;
  std::vector<SplitCase> cases;
  Position pos;
};

using Statement = std::variant<KnotDecl, ExprDecl, SplitDecl>;

struct Program {
  std::vector<Statement> statements;

  const KnotDecl* knot(const std::string& name) const;
  std::vector<const ExprDecl*> views(const std::string& name) const;
  std::vector<const SplitDecl*> splits(const std::string& name) const;
  // Knot and expression names in first-declaration order.
  std::vector<std::string> names() const;
};

// Fact names understood by the engine.
const std::vector<std::string>& known_facts();

Program parse(const std::string& text);
ExprPtr parse_expr(const std::string& text);

std::string print(const Value& v);
std::string print(const Fact& f);
std::string print(const KnotExpr& e);
std::string print(const Program& p);

}  // namespace bipolar::fildsl
