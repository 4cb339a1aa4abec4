#include <bipolar/cli/commands.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <unistd.h>

using namespace bipolar;
using namespace bipolar::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("bipolar-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("fnv1a reference vectors") {
  // Published FNV-1a 64-bit test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("cache hits, misses, versions and corruption") {
  fs::path dir = scratch("cache");
  int calls = 0;
  auto compute = [&] {
    ++calls;
    return std::string("payload\nwith lines\n");
  };
  {
    ResultCache c(dir.string(), "1");
    REQUIRE(c.enabled());
    CHECK(c.get({"x"}, compute) == "payload\nwith lines\n");
    CHECK(c.get({"x"}, compute) == "payload\nwith lines\n");
    CHECK(c.hits() == 1);
    CHECK(c.misses() == 1);
    CHECK(c.key({"ab", "c"}) != c.key({"a", "bc"}));
  }
  CHECK(calls == 1);
  {
    ResultCache c(dir.string(), "2");
    c.get({"x"}, compute);
    CHECK(c.misses() == 1);
    CHECK(calls == 2);
  }
  // Truncate every entry: each becomes a recompute with a warning.
  for (auto& e : fs::directory_iterator(dir)) {
    std::ofstream out(e.path(), std::ios::trunc);
    out << "bipolar-cache 2 ";
  }
  {
    ResultCache c(dir.string(), "2");
    CHECK(c.get({"x"}, compute) == "payload\nwith lines\n");
    CHECK(c.misses() == 1);
    CHECK(c.warnings().size() == 1);
    ResultCache again(dir.string(), "2");
    again.get({"x"}, compute);
    CHECK(again.hits() == 1);
  }
  // A flipped payload byte fails the checksum.
  for (auto& e : fs::directory_iterator(dir)) {
    std::string text;
    {
      std::ifstream in(e.path());
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    auto pos = text.find("payload");
    if (pos == std::string::npos) continue;
    text[pos] = 'P';
    std::ofstream(e.path(), std::ios::trunc) << text;
  }
  ResultCache c3(dir.string(), "2");
  CHECK(c3.get({"x"}, compute) == "payload\nwith lines\n");
  CHECK(c3.misses() == 1);
  fs::remove_all(dir);
}

TEST_CASE("unusable cache directory disables caching") {
  fs::path file = scratch("plain");
  std::ofstream(file) << "not a directory";
  ResultCache c((file / "sub").string(), "1");
  CHECK_FALSE(c.enabled());
  CHECK(c.warnings().size() == 1);
  CHECK(c.get({"k"}, [] { return std::string("v"); }) == "v");
  fs::remove(file);

  if (::geteuid() != 0) {
    fs::path ro = scratch("ro");
    fs::create_directories(ro);
    fs::permissions(ro, fs::perms::owner_read | fs::perms::owner_exec);
    ResultCache r(ro.string(), "1");
    CHECK_FALSE(r.enabled());
    fs::permissions(ro, fs::perms::owner_all);
    fs::remove_all(ro);
  }
  ResultCache off("", "1");
  CHECK_FALSE(off.enabled());
  CHECK(off.warnings().empty());
}

TEST_CASE("ingest") {
  CHECK(ingest_json("").records.empty());
  CHECK(ingest_json("  \n").records.empty());
  CHECK(ingest_knots("").records.empty());
  auto in = ingest(BIPOLAR_DATA_DIR "/cover_chain.json");
  REQUIRE(in.records.size() == 1);
  const auto& c = in.records[0].covers.at(0);
  CHECK(c.presentation->labels == std::vector<std::string>{"x1", "x2", "y1", "y2"});
  CHECK(c.cobordism->orders.size() == 4);
  CHECK(c.chain->terminals.size() == 2);

  auto k = ingest(BIPOLAR_DATA_DIR "/ledger.knots");
  REQUIRE(k.program);
  CHECK(k.records.size() == k.program->names().size());
  bool twist = false;
  for (auto& r : k.records)
    if (r.name == "K252") {
      twist = true;
      CHECK(r.covers.at(0).lens == std::pair<long, long>{25, 2});
      CHECK(r.alexander->at_minus_one() == 25);
    }
  CHECK(twist);

  try {
    ingest_json(R"({"records": [{"name": "bad", "seifert": [[1, 0], [0, 1]]}]})");
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("'bad'") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_json("{\"records\": [}"), fildsl::ParseError);
  CHECK_THROWS_AS(ingest_json(R"({"records": [{"name": "nothing"}]})"), DomainError);
  CHECK_THROWS_AS(ingest_json(R"({"records": [{"name": "a", "alexander": [3, 1]}]})"), InvariantViolation);
}

TEST_CASE("reports are deterministic and exact") {
  RunOptions opt;
  opt.data_dir = BIPOLAR_DATA_DIR;
  ResultCache none("", kVersion);
  std::string a = bundled_suite(opt, none), b = bundled_suite(opt, none);
  CHECK(a == b);
  CHECK_FALSE(std::regex_search(a, std::regex("[0-9][eE][-+]?[0-9]")));  // no floating point anywhere
  CHECK_FALSE(std::regex_search(a, std::regex("[0-9]\\.[0-9]")));
  opt.format = "text";
  CHECK(bundled_suite(opt, none) == bundled_suite(opt, none));
  CHECK_THROWS_AS(render(nlohmann::json::object(), "xml"), DomainError);

  auto j = lens_json(7, 1);
  CHECK(j["d"][0] == "-3/2");
  CHECK(render(j, "text").find("zeros: 0") != std::string::npos);
  KnotRecord r;
  r.name = "rht";
  r.seifert = seifert::SeifertMatrix(IntMatrix{{-1, 1}, {0, -1}});
  r.alexander = seifert::alexander(*r.seifert);
  auto s = sig_json(r);
  CHECK(s["signature_at_minus_one"] == -2);
  CHECK(s["max"] == 0);
  CHECK(s["rho0"]["exact"] == "-4/3");
  auto cv = cover_json(r, opt, 2);
  CHECK(cv["covers"][0]["form"]["group"] == nlohmann::json::array({"3"}));
  CHECK(alex_json(r)["determinant"] == "3");
  CHECK(cg_norm_json(Integer(11089), 7)["status"] == "not_norm");
  CHECK_THROWS_AS(lattice_json(IntMatrix{{1, 2}, {3, 4}}, nullptr, 1), DomainError);
}
