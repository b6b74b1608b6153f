// suppvar: supports, tensor product checks and reproduction suites from the command line.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "suppvar/suites.hpp"

using namespace sv;

namespace {

struct Globals {
  std::string config, cache_dir, report;
  std::vector<std::string> sets;
  uint32_t field = 0;
  int D = -1, s = -1, ext = -1;
  long long seed = -1;
  bool timings = false;
  bool no_cache = false;
};

RunConfig make_config(const Globals& g) {
  RunConfig c = g.config.empty() ? RunConfig{} : load_config(g.config);
  for (auto& kv : g.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_config_key(c, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  if (g.field) c.algebra.p = g.field;
  if (g.D >= 0) c.D = g.D;
  if (g.s >= 0) c.s = g.s;
  if (g.ext >= 0) c.ext_degree = g.ext;
  if (g.seed >= 0) c.seed = uint64_t(g.seed);
  c.cache_dir = cache_root(g.cache_dir);
  c.report_path = g.report;
  return c;
}

int emit(const Report& r, const Globals& g, const OperatorCache* cache) {
  if (cache)
    for (auto& w : cache->warnings) std::cerr << "warning: " << w << "\n";
  auto text = r.dump(g.timings);
  if (g.report.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.report);
    if (!out) throw std::runtime_error("cannot write report " + g.report);
    out << text;
    std::cout << r.title << ": " << r.summary << "\n";
  }
  return r.failed() ? 1 : 0;
}

std::vector<std::string> module_args(const RunConfig& c, const std::vector<std::string>& pos) {
  auto m = pos;
  if (m.empty()) m = c.modules;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Support varieties and tensor product checks for finite-dimensional Hopf algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may also follow the subcommand
  Globals g;
  app.add_option("--config", g.config, "algebra/run config file (key = value)");
  app.add_option("--set", g.sets, "override a config key, key=value");
  app.add_option("--field", g.field, "prime p of the base field");
  app.add_option("--degree-bound", g.D, "Ext degree bound D (default 12)");
  app.add_option("--stability", g.s, "stability window s (default 4)");
  app.add_option("--ext-degree", g.ext, "field extension degree for points, 1 or 2 (default 2)");
  app.add_option("--cache-dir", g.cache_dir, std::string("cache root (default $") + kCacheEnv + " or .suppvar-cache)");
  app.add_flag("--no-cache", g.no_cache, "do not read or write the cache");
  app.add_option("--report", g.report, "write the report here instead of stdout");
  app.add_option("--seed", g.seed, "seed for random modules (default 1)");
  app.add_flag("--timings", g.timings, "include per-check timings (reports then differ run to run)");

  std::vector<std::string> mods;
  auto* describe_cmd = app.add_subcommand("describe", "dimensions, grouplikes, parameters, Hopf axioms");

  auto* resolve_cmd = app.add_subcommand("resolve", "minimal resolution ranks per degree");
  resolve_cmd->add_option("modules", mods, "module specs");

  auto* ext_cmd = app.add_subcommand("ext", "dim Ext^i(V, W) per degree");
  std::string W = "k";
  ext_cmd->add_option("V", mods, "module spec")->required();
  ext_cmd->add_option("--with", W, "second argument W (default k)");

  bool ideal = false;
  auto* support_cmd = app.add_subcommand("support", "support as a point set");
  support_cmd->add_option("modules", mods, "module specs");
  support_cmd->add_flag("--ideal", ideal, "also compute the annihilator ideal of Ext(V, V)");

  std::vector<std::string> pair;
  auto* tpp_cmd = app.add_subcommand("tpp-check", "supp(V (x) W) against supp V cap supp W");
  tpp_cmd->add_option("modules", pair, "two module specs V W")->expected(2)->required();

  std::string braiding = "canonical";
  auto* ctpp_cmd = app.add_subcommand("ctpp-check", "tpp-check for V with a half-braiding");
  ctpp_cmd->add_option("modules", pair, "two module specs V W")->expected(2)->required();
  ctpp_cmd->add_option("--braiding", braiding, "canonical | equivariant | trivial")
      ->check(CLI::IsMember({"canonical", "equivariant", "trivial"}));

  auto* oracle_cmd = app.add_subcommand("oracle-compare", "cohomological support against the rank variety");
  oracle_cmd->add_option("modules", mods, "module specs");

  auto* koszul_cmd = app.add_subcommand("koszul-verify", "twisted product against Ext per degree");
  koszul_cmd->add_option("modules", pair, "two module specs V W")->expected(2)->required();

  std::vector<int> type_a;
  std::vector<std::string> sequence;
  int truncation = -1;
  auto* qreg_cmd = app.add_subcommand("qregular-check", "q-regularity of a generator sequence");
  qreg_cmd->add_option("--type-a", type_a, "root vectors of type A: rank l")->expected(2);
  qreg_cmd->add_option("--sequence", sequence, "generator names in sequence order")->delimiter(',');
  qreg_cmd->add_option("--truncation", truncation, "degree truncation (default 2 * height * l)");

  std::string suite;
  auto* suite_cmd = app.add_subcommand("run-suite", "run a reproduction suite");
  suite_cmd->add_option("name", suite, "suite name or all")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = make_config(g);
    OperatorCache cache(g.no_cache ? std::string() : cfg.cache_dir);
    auto opt = cfg.options();

    if (*describe_cmd) return emit(describe(cfg), g, nullptr);

    if (*suite_cmd) {
      if (suite != "all") return emit(run_suite(suite, cfg, &cache), g, &cache);
      int rc = 0;
      for (auto& name : suite_names()) {
        auto r = run_suite(name, cfg, &cache);
        std::cout << name << ": " << r.summary << "\n";
        if (!g.report.empty()) {
          std::ofstream out(g.report + "." + name + ".json");
          out << r.dump(g.timings);
        }
        rc |= r.failed() ? 1 : 0;
      }
      for (auto& w : cache.warnings) std::cerr << "warning: " << w << "\n";
      return rc;
    }

    SupportEngine E(cfg.algebra, opt, &cache);
    auto H = E.algebra();
    Report r;
    r.title = app.get_subcommands().front()->get_name();
    r.config_hash = cfg.hash();
    r.seed = cfg.seed;
    r.params = {{"algebra", H->name},
                {"algebra_hash", algebra_hash(cfg.algebra)},
                {"field", "F_" + std::to_string(H->K.p())},
                {"degree_bound", cfg.D},
                {"stability", cfg.s},
                {"ext_degree", cfg.ext_degree}};
    Fp2 L(H->K.p());

    if (*resolve_cmd) {
      for (auto& m : module_args(cfg, mods)) {
        Stopwatch sw;
        auto Rs = minimal_resolution(*E.module(m), cfg.D);
        r.add("resolve " + m, true, {{"dim", E.module(m)->dim}, {"ranks", Rs.ranks}}, sw.seconds());
      }
    } else if (*ext_cmd) {
      for (auto& m : mods) {
        Stopwatch sw;
        auto T = ext_table(*E.module(m), *E.module(W), cfg.D, true);
        r.add("ext " + m + " | " + W, true, {{"dims", T.dims}}, sw.seconds());
      }
    } else if (*support_cmd) {
      for (auto& m : module_args(cfg, mods)) {
        Stopwatch sw;
        try {
          if (ideal) {
            auto C = cohom_support(*E.module(m), opt);
            r.add("support " + m, C.ideal_consistent,
                  {{"support", support_json(C.hopf)},
                   {"sigma_equal", C.sigma_equal},
                   {"ideal_consistent", C.ideal_consistent},
                   {"galois_stable", C.galois_stable}},
                  sw.seconds());
          } else {
            r.add("support " + m, true, support_json(E.support(m)), sw.seconds());
          }
        } catch (const SupportError& e) {
          r.add("support " + m, Status::Inconclusive, {{"error", e.what()}});
        }
      }
    } else if (*tpp_cmd) {
      auto T = E.tpp(pair[0], pair[1]);
      r.add("tpp " + pair[0] + " x " + pair[1], T.verdict == TppVerdict::Equal, tpp_json(T));
      r.summary = tpp_str(T.verdict);
    } else if (*ctpp_cmd) {
      HalfBraiding<Fp> b = braiding == "canonical"     ? canonical_half_braiding(E.module(pair[0]))
                           : braiding == "equivariant" ? equivariant_closure(*E.module(pair[0]))
                                                       : trivial_half_braiding(E.module(pair[0]));
      auto chk = check_half_braiding(b);
      ojson items = ojson::array();
      for (auto& i : chk.items) items.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
      r.add("half-braiding " + braiding + " on " + pair[0], chk.ok(), {{"items", items}});
      if (chk.ok()) {
        auto T = centralized_tpp_check(b, *E.module(pair[1]), opt, nullptr, &E.support(pair[1]));
        r.add("centralized tpp " + pair[0] + " x " + pair[1], T.verdict == TppVerdict::Equal, tpp_json(T));
        r.summary = tpp_str(T.verdict);
      } else {
        r.summary = "invalid half-braiding: " + chk.first_failure()->name;
      }
    } else if (*oracle_cmd) {
      for (auto& m : module_args(cfg, mods)) {
        const auto& S = E.support(m);
        auto O = rank_variety_oracle(*E.module(m), opt);
        r.add("oracle " + m, S.keyset() == O.keyset(),
              {{"cohomological", points_json(L, S.points)}, {"rank_variety", points_json(L, O.points)}});
      }
    } else if (*koszul_cmd) {
      auto T = verify_twtt(*E.module(pair[0]), *E.module(pair[1]), cfg.D);
      ojson rows = ojson::array();
      for (size_t i = 0; i < T.ext.size(); ++i) rows.push_back({{"degree", i}, {"twisted", T.twisted[i]}, {"ext", T.ext[i]}});
      r.add("twtt " + pair[0] + " | " + pair[1], T.ok(), {{"per_degree", rows}});
    } else if (*qreg_cmd) {
      QRegularCandidate<Fp> cand;
      int T = truncation;
      if (!type_a.empty()) {
        int rank = type_a[0], l = type_a[1];
        Fp K(g.field ? g.field : default_prime_for(l));
        if (T < 0) T = default_truncation(rank, l);
        auto [TA, info] = root_vectors_typeA(K, rank, l, T + 1);
        cand = typeA_candidate(TA, info);
      } else {
        if (cfg.algebra.kind != "qci") throw std::invalid_argument("qregular-check needs --type-a or a qci config");
        Fp K(cfg.algebra.prime());
        if (T < 0) T = 4 * cfg.algebra.l;
        cand = skew_polynomial_candidate(K, cfg.algebra.matrix, cfg.algebra.l, 3 * cfg.algebra.l + T);
      }
      if (!sequence.empty()) {
        // reorder the sequence to the given names
        if (sequence.size() != cand.names.size()) throw std::invalid_argument("sequence must list every generator once");
        auto c2 = cand;
        for (size_t t = 0; t < sequence.size(); ++t) {
          auto it = std::find(cand.names.begin(), cand.names.end(), sequence[t]);
          if (it == cand.names.end()) throw std::invalid_argument("unknown generator " + sequence[t]);
          size_t k = size_t(it - cand.names.begin());
          c2.names[t] = cand.names[k];
          c2.x[t] = cand.x[k];
          c2.chi[t] = cand.chi[k];
        }
        cand = c2;
      }
      auto R = check_q_regular(cand, T);
      ojson items = ojson::array();
      for (auto& i : R.checks.items) items.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
      r.add("q-regular " + cand.name, R.checks.ok(),
            {{"sequence", cand.names}, {"items", items}, {"violations", R.violations}, {"truncation", T}});
      r.summary = "nonzerodivisors certified only up to degree " + std::to_string(T);
    }
    if (r.summary.empty())
      r.summary = std::to_string(r.count(Status::Pass)) + " pass, " + std::to_string(r.count(Status::Fail)) + " fail, " +
                  std::to_string(r.count(Status::Inconclusive)) + " inconclusive";
    return emit(r, g, &cache);
  } catch (const UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
