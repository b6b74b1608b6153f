#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <unistd.h>

#include "suppvar/suites.hpp"

using namespace sv;
namespace fs = std::filesystem;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("suppvar-test-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<fs::path> cache_files(const fs::path& root) {
  std::vector<fs::path> out;
  for (auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.push_back(e.path());
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = parse(
      "# no-TPP example\n"
      "kind = function-algebra\n"
      "rank = 2\n"
      "p = 3   # small prime\n"
      "permutations = 1 0\n"
      "module = cyclic:w1\n"
      "module = simples\n"
      "degree_bound = 10\n"
      "seed = 7\n");
  CHECK(c.algebra.kind == "function-algebra");
  CHECK(c.algebra.rank == 2);
  CHECK(c.algebra.prime() == 3);
  CHECK(c.algebra.permutations == std::vector<std::vector<int>>{{1, 0}});
  CHECK(c.modules == std::vector<std::string>{"cyclic:w1", "simples"});
  CHECK(c.D == 10);
  CHECK(c.s == 4);
  CHECK(c.seed == 7);
  auto q = parse("kind = qci\nmatrix = 1 1; -1 1\ngrouplikes = extended\n");
  CHECK(q.algebra.matrix == std::vector<std::vector<long long>>{{1, 1}, {-1, 1}});
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse("colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse("just some words\n"), ConfigError);
  CHECK_THROWS_AS(parse("degree_bound = twelve\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/suppvar.cfg"), ConfigError);
}

TEST_CASE("config hash depends on content, not on paths or comments") {
  auto a = parse("kind = qci\nseed = 3\n");
  auto b = parse("# a comment\nkind = qci\n\nseed = 3\n");
  b.cache_dir = "/somewhere/else";
  b.report_path = "out.json";
  CHECK(a.hash() == b.hash());
  auto c = parse("kind = qci\nseed = 4\n");
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("reports are byte-identical across runs") {
  RunConfig cfg;
  cfg.algebra = no_tpp_spec();
  auto r1 = run_suite("no-tpp", cfg), r2 = run_suite("no-tpp", cfg);
  CHECK(r1.dump() == r2.dump());
  CHECK_FALSE(r1.failed());
  CHECK(r1.count(Status::ExpectedFail) == 1);
  auto j = r1.to_json();
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["config_hash"] == r1.config_hash);
  CHECK_FALSE(r1.to_json(false).dump().find("seconds") != std::string::npos);
  CHECK(r1.to_json(true).dump().find("seconds") != std::string::npos);
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(run_suite("nonsense", RunConfig{}), UnknownSuite);
  CHECK(suite_names().size() == 9);
}

TEST_CASE("describe reports dimensions and axioms") {
  RunConfig cfg;
  auto r = describe(cfg);
  CHECK(r.summary.find("dim 81, 9 simples") != std::string::npos);
  CHECK_FALSE(r.failed());
  cfg.algebra = truncated_polynomial_spec();
  CHECK(describe(cfg).summary.find("dim 3, 1 simple") != std::string::npos);
}

TEST_CASE("operator cache round trip and corruption") {
  TempDir tmp;
  auto spec = connected_spec();
  auto H = build_algebra(spec);
  auto V = parse_module(H, "cyclic:w1");
  OperatorCache c1(tmp.path.string());
  auto X = c1.get(spec.canonical(), "cyclic:w1", V, 8);
  CHECK(c1.misses == 1);
  auto files = cache_files(tmp.path);
  REQUIRE(files.size() == 1);
  CHECK(files[0].string().find("/v1/") != std::string::npos);
  CHECK(files[0].filename().string().find("-D8.json") != std::string::npos);

  OperatorCache c2(tmp.path.string());
  auto Y = c2.get(spec.canonical(), "cyclic:w1", V, 8);
  CHECK(c2.hits == 1);
  CHECK(Y.dims == X.dims);
  REQUIRE(Y.theta.size() == X.theta.size());
  for (size_t n = 0; n < X.theta.size(); ++n)
    for (size_t i = 0; i < X.theta[n].size(); ++i) CHECK(Y.theta[n][i].a == X.theta[n][i].a);

  // flip one character of the stored payload
  std::string text;
  {
    std::ifstream in(files[0]);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto pos = text.find("\"dims\":[1");
  REQUIRE(pos != std::string::npos);
  text[pos + 8] = '2';
  {
    std::ofstream out(files[0]);
    out << text;
  }
  OperatorCache c3(tmp.path.string());
  auto Z = c3.get(spec.canonical(), "cyclic:w1", V, 8);
  CHECK(c3.misses == 1);
  REQUIRE(c3.warnings.size() == 1);
  CHECK(c3.warnings[0].find("rebuilding") != std::string::npos);
  CHECK(Z.dims == X.dims);

  // the rebuilt entry is usable again
  OperatorCache c4(tmp.path.string());
  c4.get(spec.canonical(), "cyclic:w1", V, 8);
  CHECK(c4.hits == 1);
  CHECK(c4.warnings.empty());
}

TEST_CASE("cache root precedence") {
  CHECK(cache_root("/explicit") == "/explicit");
  ::setenv(kCacheEnv, "/from-env", 1);
  CHECK(cache_root("") == "/from-env");
  ::unsetenv(kCacheEnv);
  CHECK(cache_root("") == ".suppvar-cache");
}

TEST_CASE("cached and uncached supports agree") {
  TempDir tmp;
  OperatorCache cache(tmp.path.string());
  SupportEngine cached(connected_spec(), RunConfig{}.options(), &cache);
  SupportEngine plain(connected_spec(), RunConfig{}.options());
  for (auto m : {"k", "cyclic:w1", "random:4"}) CHECK(cached.support(m).keyset() == plain.support(m).keyset());
  SupportEngine again(connected_spec(), RunConfig{}.options(), &cache);
  auto before = cache.hits;
  again.support("cyclic:w1");
  CHECK(cache.hits == before + 1);
}
