#pragma once
// Run configuration, reports and the on-disk cache of operator data.
//
// Config grammar: one `key = value` per line, `#` starts a comment.
//   kind         qci | function-algebra | heisenberg | borel
//   p            prime (default depends on kind)
//   l            root order (qci, borel)
//   matrix       rows separated by `;`, entries by spaces, e.g. `1 1; -1 1`
//   grouplikes   standard | extended (qci)
//   rank         number of coordinates (function-algebra) or type A rank (borel)
//   lattice      sc | ad (borel)
//   permutations generators of pi, `;` separated, e.g. `1 0`
//   module       module spec, repeatable (see catalog.hpp)
//   degree_bound, stability, ext_degree, seed, suite

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "catalog.hpp"
#include "json.hpp"
#include "support.hpp"

namespace sv {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;
inline constexpr uint64_t kDefaultSeed = 1;
inline constexpr const char* kCacheEnv = "SUPPVAR_CACHE_DIR";

struct RunConfig {
  AlgebraSpec algebra;
  std::vector<std::string> modules;
  int D = 12;
  int s = 4;
  int ext_degree = 2;
  uint64_t seed = kDefaultSeed;
  std::string suite;
  std::string cache_dir;    // not hashed: never changes results
  std::string report_path;  // not hashed

  SupportOptions options() const { return {D, s, ext_degree}; }

  std::string canonical() const {
    std::string c = algebra.canonical() + "|D=" + std::to_string(D) + "|s=" + std::to_string(s) +
                    "|e=" + std::to_string(ext_degree) + "|seed=" + std::to_string(seed) + "|suite=" + suite;
    for (auto& m : modules) c += "|module=" + m;
    return c;
  }
  std::string hash() const { return hex64(fnv1a(canonical())); }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::vector<long long>> parse_rows(const std::string& v) {
  std::vector<std::vector<long long>> rows;
  for (auto& r : split(v, ';')) {
    if (trim(r).empty()) continue;
    std::istringstream is(r);
    std::vector<long long> row;
    long long x;
    while (is >> x) row.push_back(x);
    if (!is.eof()) throw ConfigError("bad number in '" + r + "'");
    rows.push_back(row);
  }
  return rows;
}

inline void apply_config_key(RunConfig& c, const std::string& key, const std::string& v) {
  auto num = [&](const std::string& s) {
    try {
      size_t pos;
      long long x = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "' expects an integer, got '" + s + "'");
    }
  };
  auto& a = c.algebra;
  if (key == "kind") a.kind = v;
  else if (key == "p") a.p = uint32_t(num(v));
  else if (key == "l") a.l = int(num(v));
  else if (key == "matrix") a.matrix = parse_rows(v);
  else if (key == "grouplikes") a.grouplikes = v;
  else if (key == "rank") a.rank = int(num(v));
  else if (key == "lattice") a.lattice = v;
  else if (key == "permutations") {
    a.permutations.clear();
    for (auto& r : parse_rows(v)) a.permutations.push_back(std::vector<int>(r.begin(), r.end()));
  } else if (key == "module") c.modules.push_back(v);
  else if (key == "degree_bound") c.D = int(num(v));
  else if (key == "stability") c.s = int(num(v));
  else if (key == "ext_degree") c.ext_degree = int(num(v));
  else if (key == "seed") c.seed = uint64_t(num(v));
  else if (key == "suite") c.suite = v;
  else throw ConfigError("unknown config key '" + key + "'");
}

inline RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_config_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  return parse_config(in);
}

// ---------------- reports ----------------

enum class Status { Pass, Fail, ExpectedFail, Inconclusive };

inline const char* status_str(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::ExpectedFail: return "expected-fail";
    default: return "inconclusive";
  }
}

struct Record {
  std::string name;
  Status status = Status::Pass;
  ojson witnesses = ojson::object();
  double seconds = 0;
};

struct Report {
  std::string title;
  std::string config_hash;
  uint64_t seed = kDefaultSeed;
  ojson params = ojson::object();
  std::vector<Record> records;
  std::string summary;

  Record& add(std::string name, Status st, ojson w = ojson::object(), double secs = 0) {
    records.push_back({std::move(name), st, std::move(w), secs});
    return records.back();
  }
  Record& add(std::string name, bool pass, ojson w = ojson::object(), double secs = 0) {
    return add(std::move(name), pass ? Status::Pass : Status::Fail, std::move(w), secs);
  }
  size_t count(Status s) const {
    size_t n = 0;
    for (auto& r : records) n += r.status == s;
    return n;
  }
  // Failures that the suite did not predict; inconclusive checks count as failures.
  bool failed() const { return count(Status::Fail) + count(Status::Inconclusive) > 0; }

  // Timings are left out unless asked for, so that reports compare byte for byte.
  ojson to_json(bool timings = false) const {
    ojson j;
    j["tool"] = "suppvar";
    j["tool_version"] = kToolVersion;
    j["schema_version"] = kSchemaVersion;
    j["report"] = title;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["params"] = params;
    ojson recs = ojson::array();
    for (auto& r : records) {
      ojson x;
      x["name"] = r.name;
      x["verdict"] = status_str(r.status);
      x["witnesses"] = r.witnesses;
      if (timings) x["seconds"] = r.seconds;
      recs.push_back(x);
    }
    j["checks"] = recs;
    j["totals"] = {{"pass", count(Status::Pass)},
                   {"fail", count(Status::Fail)},
                   {"expected-fail", count(Status::ExpectedFail)},
                   {"inconclusive", count(Status::Inconclusive)}};
    j["summary"] = summary;
    return j;
  }
  std::string dump(bool timings = false) const { return to_json(timings).dump(2) + "\n"; }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }
 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// ---------------- cache ----------------

// Layout: <root>/v<schema>/<algebra hash>/ext-<module hash>-D<D>.json, holding the
// dimensions of Ext(V, Lambda) and the operator matrices, plus a hash of that payload.
inline std::string cache_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* e = std::getenv(kCacheEnv); e && *e) return e;
  return ".suppvar-cache";
}

class OperatorCache {
 public:
  // Empty root disables the disk cache.
  explicit OperatorCache(std::string root = {}) : root_(std::move(root)) {}

  std::vector<std::string> warnings;
  size_t hits = 0, misses = 0;

  ExtSimplesData get(const std::string& alg_canon, const std::string& module_spec, const FdModule<Fp>& V, int D) {
    Fp2 L(V.K().p());
    std::filesystem::path file;
    if (!root_.empty()) {
      file = std::filesystem::path(root_) / ("v" + std::to_string(kSchemaVersion)) / hex64(fnv1a(alg_canon)) /
             ("ext-" + hex64(fnv1a(module_spec)) + "-D" + std::to_string(D) + ".json");
      if (auto X = load(file, alg_canon, module_spec, D, L)) {
        ++hits;
        return *X;
      }
    }
    ++misses;
    auto X = ext_simples_data(ext_to_simples(V, D), L);
    if (!root_.empty()) store(file, alg_canon, module_spec, X);
    return X;
  }

 private:
  std::string root_;

  static ojson payload(const ExtSimplesData& X) {
    ojson p;
    p["D"] = X.D;
    p["nf"] = X.nf;
    p["dims"] = X.dims;
    ojson th = ojson::array();
    for (auto& row : X.theta) {
      ojson r = ojson::array();
      for (auto& M : row) r.push_back({{"rows", M.rows}, {"cols", M.cols}, {"a", M.a}});
      th.push_back(r);
    }
    p["theta"] = th;
    return p;
  }

  std::optional<ExtSimplesData> load(const std::filesystem::path& file, const std::string& alg, const std::string& mod,
                                     int D, const Fp2& L) {
    if (!std::filesystem::exists(file)) return std::nullopt;
    try {
      std::ifstream in(file);
      auto j = ojson::parse(in);
      if (j.at("schema_version") != kSchemaVersion || j.at("algebra") != alg || j.at("module") != mod)
        throw std::runtime_error("key mismatch");
      const auto& p = j.at("payload");
      if (j.at("payload_hash") != hex64(fnv1a(p.dump()))) throw std::runtime_error("hash mismatch");
      ExtSimplesData X;
      X.D = p.at("D");
      X.nf = p.at("nf");
      X.dims = p.at("dims").get<std::vector<size_t>>();
      if (X.D != D) throw std::runtime_error("degree mismatch");
      for (auto& r : p.at("theta")) {
        std::vector<Mat<Fp>> row;
        for (auto& m : r) {
          Mat<Fp> M;
          M.rows = m.at("rows");
          M.cols = m.at("cols");
          M.a = m.at("a").get<std::vector<uint32_t>>();
          if (M.a.size() != M.rows * M.cols) throw std::runtime_error("bad matrix");
          row.push_back(std::move(M));
        }
        X.theta.push_back(std::move(row));
      }
      X.theta2.resize(X.theta.size());
      for (size_t n = 0; n < X.theta.size(); ++n)
        for (auto& M : X.theta[n]) X.theta2[n].push_back(embed(L, M));
      return X;
    } catch (const std::exception& e) {
      warnings.push_back("cache entry " + file.string() + " unusable (" + e.what() + "), rebuilding");
      return std::nullopt;
    }
  }

  void store(const std::filesystem::path& file, const std::string& alg, const std::string& mod,
             const ExtSimplesData& X) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) {
      warnings.push_back("cache directory not writable: " + file.parent_path().string());
      return;
    }
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["algebra"] = alg;
    j["module"] = mod;
    auto p = payload(X);
    j["payload_hash"] = hex64(fnv1a(p.dump()));
    j["payload"] = p;
    auto tmp = file;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump();
    }
    std::filesystem::rename(tmp, file, ec);
  }
};

// Supports of named modules over one algebra, memoized in memory and on disk.
class SupportEngine {
 public:
  SupportEngine(AlgebraSpec spec, SupportOptions opt, OperatorCache* cache = nullptr)
      : spec_(std::move(spec)), H_(build_algebra(spec_)), opt_(opt), cache_(cache) {}

  HopfPtr algebra() const { return H_; }
  const AlgebraSpec& spec() const { return spec_; }
  const SupportOptions& options() const { return opt_; }

  ModulePtr<Fp> module(const std::string& spec) {
    auto it = modules_.find(spec);
    if (it != modules_.end()) return it->second;
    auto M = share(parse_module(H_, spec));
    modules_[spec] = M;
    return M;
  }

  const SupportSet& support(const std::string& spec) {
    auto it = supports_.find(spec);
    if (it != supports_.end()) return it->second;
    auto M = module(spec);
    auto X = cache_ ? cache_->get(spec_.canonical(), spec, *M, opt_.D)
                    : ext_simples_data(ext_to_simples(*M, opt_.D), Fp2(H_->K.p()));
    return supports_.emplace(spec, support_from_data(X, H_->K, spec, opt_)).first->second;
  }

  TppReport tpp(const std::string& a, const std::string& b) {
    const auto& sa = support(a);
    const auto& sb = support(b);
    const auto& sab = support("tensor:" + a + "|" + b);
    return tpp_from_supports(sa, sb, sab, parameters_hopf(*H_));
  }

 private:
  AlgebraSpec spec_;
  HopfPtr H_;
  SupportOptions opt_;
  OperatorCache* cache_;
  std::map<std::string, ModulePtr<Fp>> modules_;
  std::map<std::string, SupportSet> supports_;
};

inline ojson points_json(const Fp2& L, const std::vector<ProjPoint>& pts) {
  ojson a = ojson::array();
  for (auto& P : pts) a.push_back(point_str(L, P));
  return a;
}

inline ojson support_json(const SupportSet& S) {
  Fp2 L(S.p);
  ojson j;
  j["module"] = S.provenance;
  j["field"] = "F_" + std::to_string(S.p) + (S.ext_degree >= 2 ? " and F_" + std::to_string(S.p) + "^2" : "");
  j["points"] = points_json(L, S.points);
  j["enumerated"] = S.enumerated;
  j["ideal"] = S.ideal;
  j["witness_degrees"] = S.witness_degrees;
  j["ext_dims"] = S.ext_dims;
  return j;
}

inline ojson tpp_json(const TppReport& T) {
  Fp2 L(T.lhs.p);
  ojson j;
  j["V"] = T.V;
  j["W"] = T.W;
  j["lhs"] = points_json(L, T.lhs.points);
  j["rhs"] = points_json(L, T.rhs);
  j["verdict"] = tpp_str(T.verdict);
  j["weak_inclusion"] = T.weak_inclusion;
  return j;
}

}  // namespace sv
