// Acceptance run: one pass/fail line per criterion, exit status 1 if any fails.
// Usage: acceptance [--only N[,N...]] [--report FILE]

#include <iomanip>
#include <set>

#include "CLI11.hpp"
#include "suppvar/suites.hpp"

using namespace sv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  void absorb(const Report& r, const std::function<bool(const Record&)>& keep = nullptr) {
    for (auto& x : r.records) {
      if (keep && !keep(x)) continue;
      if (x.status == Status::Fail || x.status == Status::Inconclusive)
        require(false, r.title + ": " + x.name + " [" + status_str(x.status) + "]");
    }
  }
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

size_t count_if(const Report& r, const std::function<bool(const Record&)>& f) {
  size_t n = 0;
  for (auto& x : r.records) n += f(x);
  return n;
}

// Catalogs over every algebra in scope, with the options used for their points.
struct Catalog {
  AlgebraSpec spec;
  SupportOptions opt;
  std::vector<std::string> modules;
};

std::vector<Catalog> all_catalogs(const RunConfig& cfg) {
  std::vector<Catalog> out;
  auto opt = cfg.options();
  auto base = opt;
  base.ext_degree = 1;
  auto C = build_algebra(connected_spec());
  out.push_back({connected_spec(), opt, connected_catalog_specs(C, cfg.seed)});
  for (bool ext : {false, true}) {
    auto H = build_algebra(qci_spec(ext));
    out.push_back({qci_spec(ext), opt, qci_catalog_specs(H, cfg.seed)});
  }
  out.push_back({heisenberg_spec(), base, heisenberg_catalog_specs(cfg.seed)});
  auto B1 = build_algebra(borel_spec(1, 5));
  out.push_back({borel_spec(1, 5), opt, borel_a1_catalog_specs(B1, cfg.seed)});
  auto B2 = build_algebra(borel_spec(2, 5));
  out.push_back({borel_spec(2, 5), base, borel_a2_catalog_specs(B2)});
  out.push_back({no_tpp_spec(), opt, {"k", "free", "simples", "cyclic:w1", "cyclic:w2", "cyclic:w1*w2"}});
  return out;
}

std::string seq_str(const std::vector<size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

// ---------------- criteria ----------------

Outcome c1(const RunConfig& cfg) {
  Outcome o;
  auto r = run_suite("no-tpp", cfg);
  o.absorb(r);
  o.require(r.count(Status::ExpectedFail) == 1, "the tensor product property failure was not reproduced");
  for (auto& x : r.records)
    if (x.name == "tensor product property for V, sigma + k") {
      o.require(x.witnesses["lhs"] == ojson::array({"[1:0]", "[0:1]"}), "supp V (x) W is not {[1:0], [0:1]}");
      o.require(x.witnesses["rhs"] == ojson::array({"[1:0]"}), "supp V cap supp W is not {[1:0]}");
    }
  o.detail = r.summary;
  return o;
}

Outcome c2(const RunConfig& cfg, const Report& r) {
  Outcome o;
  auto keep = [](const Record& x) { return starts_with(x.name, "G "); };
  o.absorb(r, keep);
  auto specs = connected_catalog_specs(build_algebra(connected_spec()), cfg.seed);
  const size_t n = specs.size(), pairs = n * (n + 1) / 2;
  size_t eq = count_if(r, [](const Record& x) { return starts_with(x.name, "G tpp ") && x.status == Status::Pass; });
  o.require(eq == pairs, "only " + std::to_string(eq) + " of " + std::to_string(pairs) + " pairs equal");
  o.detail = std::to_string(n) + " modules, " + std::to_string(eq) + "/" + std::to_string(pairs) +
             " pairs equal over P^1(F_3) and P^1(F_9)";
  return o;
}

Outcome c3(const RunConfig& cfg, const Report& r) {
  Outcome o;
  o.absorb(r, [](const Record& x) {
    return starts_with(x.name, "oracle ") || starts_with(x.name, "cohomological support ");
  });
  size_t n = count_if(r, [](const Record& x) { return starts_with(x.name, "oracle ") && x.status == Status::Pass; });
  auto specs = connected_catalog_specs(build_algebra(connected_spec()), cfg.seed);
  o.require(n == specs.size(), "oracle agreement on " + std::to_string(n) + " of " + std::to_string(specs.size()));
  o.detail = std::to_string(n) + "/" + std::to_string(specs.size()) + " modules agree with the rank variety";
  return o;
}

Outcome c4(const RunConfig& cfg) {
  Outcome o;
  auto a = run_suite("qci-tpp", cfg);
  auto b = run_suite("qci-centralized", cfg);
  o.absorb(a);
  o.absorb(b);
  for (bool ext : {false, true}) {
    auto n = qci_catalog_specs(build_algebra(qci_spec(ext)), cfg.seed).size();
    o.require(n >= 15, "catalog has fewer than 15 modules");
  }
  size_t braided = count_if(b, [](const Record& x) {
    return starts_with(x.name, "canonical half-braiding ") && x.status == Status::Pass;
  });
  o.detail = "tpp: " + a.summary + "; centralized: " + b.summary + "; " + std::to_string(braided) +
             " equivariant modules";
  return o;
}

Outcome c5() {
  Outcome o;
  auto T = build_algebra(truncated_polynomial_spec());
  auto t = ext_table(trivial_module(T), trivial_module(T), 10, false);
  o.require(t.dims == std::vector<size_t>(11, 1), "k[x]/(x^3): " + seq_str(t.dims));
  auto H = build_algebra(qci_spec(false));
  auto k = trivial_module(H);
  auto q = ext_table(k, k, 8, false);
  std::vector<size_t> want;
  for (size_t i = 0; i <= 8; ++i) want.push_back(i + 1);
  o.require(q.dims == want, "QCI resolution: " + seq_str(q.dims));
  // second route: twisted product over the q-Koszul complex
  auto tw = verify_twtt(k, k, 8);
  o.require(tw.twisted == want, "QCI twisted product: " + seq_str(tw.twisted));
  // third: the same resolution over Q(zeta_3)
  Cyclotomic C(3);
  auto HC = std::make_shared<const HopfAlgebra<Cyclotomic>>(build_qci(C, 3, {{1, 1}, {-1, 1}}, false));
  auto qc = ext_table(trivial_module(HC), trivial_module(HC), 8, false);
  o.require(qc.dims == want, "QCI over Q(zeta_3): " + seq_str(qc.dims));
  auto qe = ext_table(k, simples_sum(H), 6, true);
  auto qce = ext_table(trivial_module(HC), simples_sum(HC), 6, true);
  o.require(qe.dims == qce.dims, "equivariant Ext(k, Lambda) differs between F_7 and Q(zeta_3)");
  o.detail = "k[x]/(x^3): " + seq_str(t.dims) + "; QCI: " + seq_str(q.dims) + " (resolution, twisted product, Q(zeta_3))";
  return o;
}

Outcome c6(const RunConfig& cfg) {
  Outcome o;
  auto r = run_suite("twtt", cfg);
  o.absorb(r);
  o.require(r.records.size() == 14, "expected 14 pairs, got " + std::to_string(r.records.size()));
  o.detail = r.summary + ", degrees 0.." + std::to_string(std::min(cfg.D, 10));
  return o;
}

Outcome c7(const RunConfig& cfg) {
  Outcome o;
  size_t modules = 0;
  for (auto& cat : all_catalogs(cfg)) {
    auto H = build_algebra(cat.spec);
    const auto& K = H->K;
    const int nf = H->local->num_f();
    for (auto& s : cat.modules) {
      auto M = parse_module(H, s);
      auto T = ext_table(M, M, 8, true);
      auto L1 = q_lift(*T.res, cfg.seed), L2 = q_lift(*T.res, cfg.seed + 7919);
      bool same = true, comm = true;
      for (int n = 0; n + 2 <= T.D; ++n) {
        auto a = theta_on_ext(T, L1, n), b = theta_on_ext(T, L2, n);
        for (int f = 0; f < nf; ++f) same = same && mat_equal(K, a[f], b[f]);
        if (n + 4 <= T.D) {
          auto c = theta_on_ext(T, L1, n + 2);
          for (int i = 0; i < nf; ++i)
            for (int j = i + 1; j < nf; ++j) comm = comm && mat_equal(K, matmul(K, c[i], a[j]), matmul(K, c[j], a[i]));
        }
      }
      o.require(same, H->name + " " + s + ": theta depends on the lift");
      o.require(comm, H->name + " " + s + ": theta operators do not commute");
      ++modules;
    }
  }
  o.detail = std::to_string(modules) + " catalog modules, Ext(M, M) to degree 8";
  return o;
}

Outcome c8(const RunConfig& cfg) {
  Outcome o;
  auto r = run_suite("invariance", cfg);
  o.absorb(r);
  size_t n = count_if(r, [](const Record& x) { return x.name.find("lift invariance") != std::string::npos; });
  o.require(n == 40, "expected 20 seeds per algebra, got " + std::to_string(n) + " records");
  o.detail = r.summary;
  return o;
}

Outcome c9(const RunConfig& cfg) {
  Outcome o;
  auto r = run_suite("qregular-a", cfg);
  o.absorb(r);
  o.require(r.records.size() == 11, "expected 11 checks");
  o.detail = r.summary;
  return o;
}

Outcome c10(const RunConfig& cfg) {
  Outcome o;
  auto r = run_suite("ures-nilpotent", cfg);
  o.absorb(r);
  o.require(heisenberg_catalog_specs(cfg.seed).size() >= 8, "catalog has fewer than 8 modules");
  o.detail = r.summary + " over P^2(F_3)";
  return o;
}

Outcome c11(const RunConfig& cfg) {
  Outcome o;
  auto r = run_suite("borel-a2", cfg);
  o.absorb(r);
  o.detail = r.summary;
  return o;
}

Outcome c12(const RunConfig& cfg, const Report& connected) {
  Outcome o;
  // Hopf axioms for every constructor
  std::vector<AlgebraSpec> specs{qci_spec(false), qci_spec(true), truncated_polynomial_spec(), connected_spec(),
                                 no_tpp_spec(),   heisenberg_spec(), borel_spec(1, 5),          borel_spec(2, 5)};
  auto ad = borel_spec(2, 5);
  ad.lattice = "ad";
  specs.push_back(ad);
  for (auto& s : specs) {
    auto rep = hopf_axioms_check(*build_algebra(s));
    o.require(rep.ok(), "Hopf axioms fail for " + s.canonical());
  }
  // duals, projectivity and weak inclusion over every catalog
  size_t modules = 0, pairs = 0;
  for (auto& cat : all_catalogs(cfg)) {
    SupportEngine E(cat.spec, cat.opt);
    const bool zhopf = parameters_hopf(*E.algebra());
    for (auto& s : cat.modules) {
      const auto& S = E.support(s);
      o.require(S.keyset() == E.support("dual:" + s).keyset(), E.algebra()->name + " " + s + ": supp V != supp V*");
      o.require(is_projective(*E.module(s)) == S.empty(),
                E.algebra()->name + " " + s + ": projectivity disagrees with empty support");
      ++modules;
    }
    if (!zhopf) continue;
    for (size_t i = 0; i < cat.modules.size(); ++i)
      for (size_t j = i; j < cat.modules.size(); ++j) {
        auto T = E.tpp(cat.modules[i], cat.modules[j]);
        o.require(T.weak_inclusion, E.algebra()->name + " " + cat.modules[i] + " x " + cat.modules[j] +
                                        ": supp V (x) W not inside supp V cap supp W");
        ++pairs;
      }
  }
  // byte-for-byte determinism
  for (auto name : {"no-tpp", "twtt", "qregular-a"}) {
    auto a = run_suite(name, cfg).dump(), b = run_suite(name, cfg).dump();
    o.require(a == b, std::string("report of ") + name + " differs between runs");
  }
  o.require(run_suite("connected-tpp", cfg).dump() == connected.dump(), "report of connected-tpp differs between runs");
  o.detail = std::to_string(specs.size()) + " constructors, " + std::to_string(modules) + " modules, " +
             std::to_string(pairs) + " pairs for weak inclusion, 4 reports repeated";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  std::string report;
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  app.add_option("--report", report, "write a JSON summary here");
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  std::set<int> want(only.begin(), only.end());
  auto on = [&](int n) { return want.empty() || want.count(n); };

  // seconds
  const std::map<int, double> budget{{1, 30}, {2, 600}, {4, 1200}, {9, 300}, {10, 900}, {11, 3600}};
  std::optional<Report> connected;
  double connected_secs = 0;
  auto connected_report = [&]() -> const Report& {
    if (!connected) {
      Stopwatch sw;
      connected = run_suite("connected-tpp", cfg);
      connected_secs = sw.seconds();
    }
    return *connected;
  };

  const std::vector<std::pair<int, std::string>> names{
      {1, "semidirect example fails the tensor product property"},
      {2, "connected case: tensor product property on all catalog pairs"},
      {3, "cohomological support agrees with the rank variety"},
      {4, "QCI: tensor product property and centralized version"},
      {5, "Ext dimensions over k[x]/(x^3) and the QCI"},
      {6, "twisted product computes Ext"},
      {7, "theta operators are lift independent and commute"},
      {8, "perfection depends only on the linear part"},
      {9, "type A root vectors form q-regular sequences"},
      {10, "restricted Heisenberg: tensor product property"},
      {11, "quantum Borels A1 and A2: tensor product property"},
      {12, "structural guards"}};

  ojson out = ojson::array();
  bool all = true;
  for (auto& [n, title] : names) {
    if (!on(n)) continue;
    Stopwatch sw;
    Outcome o;
    double extra = 0;
    try {
      switch (n) {
        case 1: o = c1(cfg); break;
        case 2: o = c2(cfg, connected_report()); extra = connected_secs; break;
        case 3: o = c3(cfg, connected_report()); break;
        case 4: o = c4(cfg); break;
        case 5: o = c5(); break;
        case 6: o = c6(cfg); break;
        case 7: o = c7(cfg); break;
        case 8: o = c8(cfg); break;
        case 9: o = c9(cfg); break;
        case 10: o = c10(cfg); break;
        case 11: o = c11(cfg); break;
        case 12: o = c12(cfg, connected_report()); break;
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("error: ") + e.what());
    }
    double secs = sw.seconds();
    // the shared connected-tpp run is charged to criterion 2
    double charged = n == 2 ? std::max(secs, extra) : secs;
    if (auto b = budget.find(n); b != budget.end() && charged > b->second)
      o.require(false, "runtime " + std::to_string(charged) + " s over the budget of " + std::to_string(b->second) + " s");
    all = all && o.pass;
    std::cout << "criterion " << std::setw(2) << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  ["
              << std::fixed << std::setprecision(1) << charged << " s]  " << o.detail << "\n";
    for (size_t i = 0; i < o.failures.size() && i < 20; ++i) std::cout << "    - " << o.failures[i] << "\n";
    if (o.failures.size() > 20) std::cout << "    ... " << o.failures.size() - 20 << " more\n";
    std::cout.flush();
    out.push_back({{"criterion", n}, {"title", title}, {"pass", o.pass}, {"detail", o.detail}, {"failures", o.failures}});
  }
  if (!report.empty()) {
    std::ofstream f(report);
    f << out.dump(2) << "\n";
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
