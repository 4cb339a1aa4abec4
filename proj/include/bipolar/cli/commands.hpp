#pragma once

#include <bipolar/cli/cache.hpp>
#include <bipolar/cli/records.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace bipolar::cli {

inline constexpr const char* kVersion = "0.3.1";

struct RunOptions {
  std::string format = "json";  // json | text
  int max_n = 16;
  std::uint64_t enum_bound = 1000000;
  std::string data_dir;  // bundled ledger.knots and cover_chain.json
};

// Every report is a JSON value; exact rationals are strings "a/b".
nlohmann::json sig_json(const KnotRecord& r);
nlohmann::json alex_json(const KnotRecord& r);
nlohmann::json cover_json(const KnotRecord& r, const RunOptions& opt, long seifert_q = 0);
nlohmann::json chain_json(const CoverRecord& c);
nlohmann::json lens_json(long p, long q);
nlohmann::json surgery_json(const SymLaurentPoly& delta, long n);
nlohmann::json lattice_json(const IntMatrix& form, const IntMatrix* other, long bound);
nlohmann::json cg_norm_json(const Integer& n, long d);
nlohmann::json cg_orbit_json(const SymLaurentPoly& delta, long d, const std::vector<long>& orbit);
nlohmann::json derive_json(const fildsl::Program& prog, const RunOptions& opt);
std::string derive_text(const fildsl::Program& prog, const RunOptions& opt);

// The bundled scenarios: lens table, surgery constants, the cover chain,
// the norm verdict and the DSL ledger. Sections are cached one by one.
std::string bundled_suite(const RunOptions& opt, ResultCache& cache);

// Indented key/value rendering of a report; json gives dump(2).
std::string render(const nlohmann::json& j, const std::string& format);

}  // namespace bipolar::cli
