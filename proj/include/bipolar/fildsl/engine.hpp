#pragma once

#include <bipolar/fildsl/ast.hpp>
#include <bipolar/seifert/seifert.hpp>

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bipolar::fildsl {

enum class ClaimKind {
  in,
  not_in,
  slice,
  top_slice,
  alexander_one,
  not_algebraically_slice,
  fact,
  computed,
  case_closed,
  no_multiple_in,
};

struct Claim {
  std::string subject;
  ClaimKind kind = ClaimKind::fact;
  Level level;         // in, not_in, case_closed, no_multiple_in
  std::string detail;  // fact text, case metabolizer, computed quantity
  std::string text() const;
};

struct Evidence {
  std::string id;
  std::string value;
  bool operator==(const Evidence&) const = default;
};

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Claim claim;
  std::string rule;  // R1..R11, or fact / asserted / flag / view
  std::string note;
  std::vector<DerivPtr> premises;
  std::map<std::string, std::string> params;
  std::vector<Evidence> evidence;
};

struct OpenSplit {
  Level target;
  std::vector<std::string> closed;
  std::vector<std::string> unclosed;  // "<y1>: reason"
};

struct Contradiction {
  Family family;
  DerivPtr in;
  DerivPtr not_in;
};

struct Verdict {
  std::string subject;
  int max_n = 16;
  std::map<Family, DerivPtr> in;       // membership at that level and all lower ones
  std::map<Family, DerivPtr> not_in;   // non-membership at that level and all higher ones
  std::map<Family, DerivPtr> no_multiple_in;
  DerivPtr slice, top, alexander_one, not_algebraically_slice;
  std::vector<OpenSplit> open_splits;
  std::vector<Contradiction> contradictions;

  std::optional<int> in_level(Family f) const;
  std::optional<int> not_in_level(Family f) const;
  bool proven_in(const Level& l) const;
  bool proven_not_in(const Level& l) const;
  // Top-level derivations in a fixed order.
  std::vector<DerivPtr> derivations() const;
  // Same levels and flags; derivations are not compared.
  bool same_levels(const Verdict& o) const;
};

struct Options {
  int max_n = 16;
  std::uint64_t enum_bound = 1000000;
};

class Engine {
 public:
  explicit Engine(Program prog, Options opt = {});

  // Verdict for a declared knot or expression name (all views merged).
  const Verdict& verdict(const std::string& name);
  Verdict infer(const KnotExpr& e);

  const Program& program() const { return prog_; }
  const Options& options() const { return opt_; }
  // Every value produced by an obstruction module during inference.
  const std::vector<Evidence>& evidence_log() const { return log_; }

 private:
  struct TermInfo {
    Verdict v;
    std::optional<seifert::SeifertMatrix> seifert;
    std::optional<algebra::SymLaurentPoly> alexander;
  };

  const TermInfo& named(const std::string& name);
  TermInfo term(const KnotExpr& e);
  TermInfo atom(const KnotDecl& k);
  void seifert_hooks(TermInfo& t);
  void cover_hooks(TermInfo& t, const KnotDecl& k);
  void apply_split(TermInfo& t, const SplitDecl& s);
  void closure(Verdict& v);
  Evidence record(const std::string& id, const std::string& value);
  algebra::SymLaurentPoly alexander_of(const std::string& name);

  Program prog_;
  Options opt_;
  std::map<std::string, TermInfo> named_;
  std::set<std::string> active_;
  std::vector<Evidence> log_;
};

Verdict infer(const Program& prog, const KnotExpr& e, int max_n = 16);

struct ReplayResult {
  bool ok = true;
  std::string failure;  // claim text and reason of the first failing node
};

// Re-derives every node of the tree from its premises.
ReplayResult replay(const Derivation& d, const Program& prog);
// True when every cited value appears in the log.
bool evidence_consistent(const Derivation& d, const std::vector<Evidence>& log);

nlohmann::json to_json(const Derivation& d);
nlohmann::json to_json(const Verdict& v);
std::string to_text(const Verdict& v);

// Ledger for every declared name, in declaration order.
nlohmann::json report_json(Engine& eng);
std::string report_text(Engine& eng);

}  // namespace bipolar::fildsl
