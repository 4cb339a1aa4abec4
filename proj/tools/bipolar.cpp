#include <bipolar/cli/commands.hpp>
#include <bipolar/fildsl/engine.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace bipolar;
using namespace bipolar::cli;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failure = 1, input_error = 2, invariant = 3, bound = 4 };

std::vector<KnotRecord> select(const Ingested& in, const std::string& knot) {
  if (knot.empty()) return in.records;
  for (auto& r : in.records)
    if (r.name == knot) return {r};
  throw DomainError("no record named '" + knot + "'");
}

IntMatrix parse_matrix(const std::string& s) { return matrix_from_json(json::parse(s)); }

json per_record(const std::vector<KnotRecord>& recs, const std::function<json(const KnotRecord&)>& f) {
  json out = json::array();
  for (auto& r : recs) out.push_back(f(r));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants and filtration certificates for knot concordance"};
  app.require_subcommand(1);
  app.fallthrough();
  RunOptions opt;
  std::string cache_dir;
  bool no_cache = false;
  opt.data_dir = BIPOLAR_DATA_DIR;
  app.add_option("--max-n", opt.max_n, "Highest finite filtration level (0..16)")->capture_default_str();
  app.add_option("--enum-bound", opt.enum_bound, "Largest group order enumerated")->capture_default_str();
  app.add_option("--cache-dir", cache_dir, "Result cache directory (default $BIPOLAR_CACHE_DIR)");
  app.add_flag("--no-cache", no_cache, "Do not read or write the cache");
  app.add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--data-dir", opt.data_dir, "Directory with the bundled ledger and cover data")->capture_default_str();

  std::string file, knot, matrix_text, poly_text, other_text, orbit_text;
  long qorder = 0, p = 0, q = 0, n = 0, d = 0, cbound = 2;
  std::string number;

  auto* sig = app.add_subcommand("sig", "Levine-Tristram signature function and rho0");
  sig->add_option("file", file, "JSON or .knots input");
  sig->add_option("--knot", knot, "Only this record");
  sig->add_option("--matrix", matrix_text, "Seifert matrix as JSON");

  auto* alex = app.add_subcommand("alex", "Alexander polynomial, determinant and Arf invariant");
  alex->add_option("file", file);
  alex->add_option("--knot", knot);
  alex->add_option("--matrix", matrix_text, "Seifert matrix as JSON");
  alex->add_option("--poly", poly_text, "Coefficients a0..ag as JSON");

  auto* cover = app.add_subcommand("cover", "Branched cover homology, linking form and metabolizers");
  cover->add_option("file", file);
  cover->add_option("--knot", knot);
  cover->add_option("--q", qorder, "Also build the q-fold cover from the Seifert matrix");
  std::vector<long> lens_pq;
  cover->add_option("--lens", lens_pq, "Lens space p q")->expected(2);

  auto* dinvc = app.add_subcommand("dinv", "Correction terms");
  dinvc->require_subcommand(1);
  auto* dlens = dinvc->add_subcommand("lens", "d(L(p,q), i) for every label");
  dlens->add_option("p", p)->required();
  dlens->add_option("q", q)->required();
  auto* dsurg = dinvc->add_subcommand("surgery", "d(S^3_n(K), i) for an L-space knot");
  dsurg->add_option("n", n)->required();
  dsurg->add_option("--alexander", poly_text, "Coefficients a0..ag as JSON (default unknot)");
  auto* dchain = dinvc->add_subcommand("chain", "Negative definite cobordism chain bound");
  dchain->add_option("file", file)->required();

  auto* lat = app.add_subcommand("lattice", "Definiteness, characteristic squares, diagonalizability");
  lat->add_option("--form", matrix_text, "Symmetric integer matrix as JSON")->required();
  lat->add_option("--congruent", other_text, "Search for a congruence to this form");
  lat->add_option("--bound", cbound, "Entry bound for the congruence search")->capture_default_str();

  auto* cgn = app.add_subcommand("cg-norm", "Norm residue test in Q(zeta_d)");
  cgn->add_option("n", number, "Integer to test");
  cgn->add_option("d", d, "Prime power d");
  cgn->add_option("--alexander", poly_text, "Evaluate the orbit product of this polynomial first");
  cgn->add_option("--orbit", orbit_text, "Exponent orbit as JSON");

  auto* derive = app.add_subcommand("derive", "Filtration ledger for a .knots file");
  derive->add_option("file", file)->required();

  auto* suite = app.add_subcommand("paper-suite", "Every bundled scenario end to end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  if (cache_dir.empty())
    if (const char* env = std::getenv("BIPOLAR_CACHE_DIR")) cache_dir = env;
  ResultCache cache(no_cache ? "" : cache_dir, kVersion);

  try {
    std::string input = file.empty() ? "" : read_file(file);
    std::vector<std::string> key{std::to_string(opt.max_n), std::to_string(opt.enum_bound), opt.format, input};
    for (int i = 1; i < argc; ++i) key.push_back(argv[i]);
    auto records = [&] {
      if (!matrix_text.empty()) {
        KnotRecord r;
        r.name = "matrix";
        r.seifert = seifert::SeifertMatrix(parse_matrix(matrix_text));
        r.alexander = seifert::alexander(*r.seifert);
        return std::vector<KnotRecord>{r};
      }
      if (!poly_text.empty()) {
        KnotRecord r;
        r.name = "polynomial";
        r.alexander = poly_from_json(json::parse(poly_text));
        if (r.alexander->at_one() != 1) throw InvariantViolation("Alexander polynomial must satisfy D(1) = 1");
        return std::vector<KnotRecord>{r};
      }
      if (file.empty()) throw DomainError("no input: give a file, --matrix or --poly");
      return select(ingest(file), knot);
    };

    std::string out;
    if (suite->parsed()) {
      out = bundled_suite(opt, cache);
    } else {
      out = cache.get(key, [&]() -> std::string {
        json j;
        if (sig->parsed()) {
          j = per_record(records(), [](const KnotRecord& r) { return r.seifert ? sig_json(r) : json{{"name", r.name}}; });
        } else if (alex->parsed()) {
          j = per_record(records(), [](const KnotRecord& r) { return r.alexander ? alex_json(r) : json{{"name", r.name}}; });
        } else if (cover->parsed()) {
          if (!lens_pq.empty()) {
            KnotRecord r;
            r.name = "L(" + std::to_string(lens_pq[0]) + "," + std::to_string(lens_pq[1]) + ")";
            CoverRecord c;
            c.lens = {lens_pq[0], lens_pq[1]};
            r.covers.push_back(c);
            j = json::array({cover_json(r, opt)});
          } else {
            j = per_record(records(), [&](const KnotRecord& r) { return cover_json(r, opt, r.seifert ? qorder : 0); });
          }
        } else if (dlens->parsed()) {
          j = lens_json(p, q);
        } else if (dsurg->parsed()) {
          j = surgery_json(poly_text.empty() ? SymLaurentPoly() : poly_from_json(json::parse(poly_text)), n);
        } else if (dchain->parsed()) {
          j = json::array();
          for (auto& r : select(ingest(file), knot))
            for (auto& c : r.covers)
              if (c.chain) j.push_back({{"name", r.name}, {"chain", chain_json(c)}});
        } else if (lat->parsed()) {
          IntMatrix a = parse_matrix(matrix_text);
          std::optional<IntMatrix> b;
          if (!other_text.empty()) b = parse_matrix(other_text);
          j = lattice_json(a, b ? &*b : nullptr, cbound);
        } else if (cgn->parsed()) {
          if (!poly_text.empty()) {
            if (d == 0 && !number.empty()) d = std::stol(number);
            if (d == 0) throw DomainError("cg-norm needs d");
            auto orbit = json::parse(orbit_text.empty() ? "[1]" : orbit_text).get<std::vector<long>>();
            j = cg_orbit_json(poly_from_json(json::parse(poly_text)), d, orbit);
          } else {
            if (number.empty() || d == 0) throw DomainError("cg-norm needs n and d");
            j = cg_norm_json(Integer(number), d);
          }
        } else if (derive->parsed()) {
          auto in = ingest(file);
          fildsl::Program prog = in.program ? *in.program : fildsl::Program{};
          if (opt.format == "text") return derive_text(prog, opt);
          j = derive_json(prog, opt);
        }
        return render(j, opt.format);
      });
    }
    std::cout << out;
    for (auto& w : cache.warnings()) std::cerr << "warning: " << w << '\n';
    if (cache.enabled()) std::cerr << "cache: " << cache.hits() << " hit(s), " << cache.misses() << " miss(es)\n";
    return ok;
  } catch (const fildsl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return input_error;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return input_error;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return invariant;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded (" << e.bound() << "): " << e.what() << '\n';
    return bound;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
}
