#pragma once

#include <bipolar/covers/covers.hpp>
#include <bipolar/fildsl/ast.hpp>
#include <bipolar/seifert/seifert.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bipolar::cli {

using algebra::Integer;
using algebra::IntMatrix;
using algebra::Rational;
using algebra::SymLaurentPoly;

struct Cobordism {
  IntMatrix curves;
  std::vector<Integer> framings, orders;
  long characteristic = 0;  // 1-based, 0 when not given
};

// A summand of a chain terminal: d of a lens space or of surgery on an
// L-space knot, optionally with reversed orientation.
struct TerminalPart {
  std::optional<std::pair<long, long>> lens;
  std::optional<SymLaurentPoly> surgery_alexander;
  long surgery_n = 0;
  long label = 0;
  bool reversed = false;
};

struct Terminal {
  std::string name;
  std::vector<TerminalPart> parts;
};

struct Chain {
  std::vector<IntMatrix> definite;
  std::vector<Terminal> terminals;
};

struct CoverRecord {
  long q = 2;
  std::optional<covers::FramedPresentation> presentation;
  std::optional<std::pair<long, long>> lens;
  std::optional<Cobordism> cobordism;
  std::optional<Chain> chain;
};

struct KnotRecord {
  std::string name;
  std::optional<seifert::SeifertMatrix> seifert;
  std::optional<SymLaurentPoly> alexander;
  std::vector<CoverRecord> covers;
  std::optional<std::string> expr;  // printed construction, for .knots input
  std::vector<std::string> facts;
};

struct Ingested {
  std::vector<KnotRecord> records;
  std::optional<fildsl::Program> program;  // set for .knots input
};

// Dispatches on the extension: .knots is the DSL, anything else JSON.
// Syntax errors raise fildsl::ParseError or DomainError; a record whose data
// breaks a module invariant raises InvariantViolation naming the record.
Ingested ingest(const std::string& path);
Ingested ingest_json(const std::string& text);
Ingested ingest_knots(const std::string& text);

std::string read_file(const std::string& path);

IntMatrix matrix_from_json(const nlohmann::json& j);
SymLaurentPoly poly_from_json(const nlohmann::json& j);

}  // namespace bipolar::cli
