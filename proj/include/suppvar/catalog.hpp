#pragma once
// Algebra specs, module specs and the test catalogs built from them.
//
// Module spec grammar (one module per string):
//   k                  trivial module
//   free[:LABEL]       free module of rank one on the simple LABEL
//   simple:LABEL       one-dimensional simple
//   simples            direct sum of all simples
//   cyclic:M1,M2,...   R / (M1, M2, ...), Mi monomials like x1^2*x2
//   carlson:D:C1 C2..  Carlson module of the degree D class with the given coordinates
//   random:SEED[:DIM]  seeded random quotient of a free module, dim <= DIM (default 12)
//   dual:SPEC          linear dual
//   tensor:SPEC|SPEC   tensor product

#include <cstdio>
#include <set>
#include <sstream>

#include "builders.hpp"
#include "ext.hpp"
#include "module.hpp"

namespace sv {

struct AlgebraSpec {
  std::string kind = "qci";  // qci, function-algebra, heisenberg, borel
  int l = 3;
  uint32_t p = 0;            // 0: default for the kind
  IntMat matrix{{1, 1}, {-1, 1}};
  std::string grouplikes = "standard";
  int rank = 2;
  std::string lattice = "sc";
  std::vector<std::vector<int>> permutations;

  // Canonical text, the input of the content hash. Only keys that matter for the kind.
  std::string canonical() const;
  uint32_t prime() const;
};

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Smallest prime p = 1 mod m with p >= 7.
inline uint32_t default_prime_for(int m) {
  auto is_prime = [](uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (uint32_t p = 7;; ++p)
    if (p % uint32_t(m) == 1 && is_prime(p)) return p;
}

inline uint32_t AlgebraSpec::prime() const {
  if (p) return p;
  if (kind == "qci") return default_prime_for(l);
  // simply connected grouplikes need roots of unity of order l * det(Cartan)
  if (kind == "borel") return default_prime_for(lattice == "sc" ? l * (rank + 1) : l);
  return 3;
}

inline std::string AlgebraSpec::canonical() const {
  std::ostringstream o;
  o << "kind=" << kind << ";p=" << prime();
  if (kind == "qci") {
    o << ";l=" << l << ";grouplikes=" << grouplikes << ";matrix=";
    for (auto& r : matrix) {
      for (auto x : r) o << x << ",";
      o << "/";
    }
  } else if (kind == "function-algebra") {
    o << ";rank=" << rank << ";permutations=";
    for (auto& g : permutations) {
      for (int x : g) o << x << ",";
      o << "/";
    }
  } else if (kind == "borel") {
    o << ";rank=" << rank << ";l=" << l << ";lattice=" << lattice;
  }
  return o.str();
}

inline std::string algebra_hash(const AlgebraSpec& a) { return hex64(fnv1a(a.canonical())); }

using HopfPtr = std::shared_ptr<const HopfAlgebra<Fp>>;

inline HopfPtr build_algebra(const AlgebraSpec& a) {
  Fp K(a.prime());
  if (a.kind == "qci") {
    if (a.grouplikes != "standard" && a.grouplikes != "extended")
      throw std::invalid_argument("grouplikes must be standard or extended");
    return std::make_shared<const HopfAlgebra<Fp>>(build_qci(K, a.l, a.matrix, a.grouplikes == "extended"));
  }
  if (a.kind == "function-algebra")
    return std::make_shared<const HopfAlgebra<Fp>>(build_function_algebra(K, a.rank, a.permutations));
  if (a.kind == "heisenberg") return std::make_shared<const HopfAlgebra<Fp>>(build_heisenberg(K));
  if (a.kind == "borel") return std::make_shared<const HopfAlgebra<Fp>>(build_quantum_borel(K, a.rank, a.l, a.lattice));
  throw std::invalid_argument("unknown algebra kind '" + a.kind + "'");
}

// Named algebras used by the suites.
inline AlgebraSpec truncated_polynomial_spec() {
  AlgebraSpec a;
  a.kind = "function-algebra";
  a.rank = 1;
  a.p = 3;
  return a;
}
inline AlgebraSpec connected_spec() {
  auto a = truncated_polynomial_spec();
  a.rank = 2;
  return a;
}
inline AlgebraSpec no_tpp_spec() {
  auto a = connected_spec();
  a.permutations = {{1, 0}};
  return a;
}
inline AlgebraSpec qci_spec(bool extended) {
  AlgebraSpec a;
  a.grouplikes = extended ? "extended" : "standard";
  return a;
}
inline AlgebraSpec heisenberg_spec() {
  AlgebraSpec a;
  a.kind = "heisenberg";
  a.p = 3;
  return a;
}
inline AlgebraSpec borel_spec(int rank, int l) {
  AlgebraSpec a;
  a.kind = "borel";
  a.rank = rank;
  a.l = l;
  return a;
}

// ---------------- module specs ----------------

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline Mono parse_mono(const HopfAlgebra<Fp>& H, const std::string& s) {
  const auto& names = H.local->integration().names();
  Mono m = 0;
  if (trim(s) == "1") return 0;
  for (auto& f : split(s, '*')) {
    auto t = trim(f);
    int e = 1;
    auto hat = t.find('^');
    if (hat != std::string::npos) {
      e = std::stoi(t.substr(hat + 1));
      t = t.substr(0, hat);
    }
    auto it = std::find(names.begin(), names.end(), t);
    if (it == names.end()) throw std::invalid_argument("unknown letter '" + t + "' in " + H.name);
    int i = int(it - names.begin());
    if (mexp(m, i) + e > 255) throw std::invalid_argument("exponent too large");
    m += mletter(i, e);
  }
  return m;
}

inline uint32_t parse_label(const HopfAlgebra<Fp>& H, const std::string& s) {
  long v = std::stol(s);
  if (v < 0 || uint32_t(v) >= H.nlabels) throw std::invalid_argument("label out of range: " + s);
  return uint32_t(v);
}

inline FdModule<Fp> named(FdModule<Fp> V, const std::string& spec) {
  V.provenance = spec;
  return V;
}

inline FdModule<Fp> parse_module(HopfPtr H, const std::string& spec_in) {
  const std::string spec = trim(spec_in);
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const Fp& K = H->K;
  if (head == "k") return named(trivial_module(H), spec);
  if (head == "free") return named(free_module(H, rest.empty() ? 0 : parse_label(*H, rest)), spec);
  if (head == "simple") return named(simple_module(H, parse_label(*H, rest)), spec);
  if (head == "simples") return named(simples_sum(H), spec);
  if (head == "cyclic") {
    std::vector<SVec<Fp>> rels;
    if (!trim(rest).empty())
      for (auto& m : split(rest, ',')) {
        auto v = fiber_mono(*H, parse_mono(*H, m));
        if (!v.empty()) rels.push_back(v);
      }
    return named(cyclic_quotient(H, rels), spec);
  }
  if (head == "carlson") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw std::invalid_argument("carlson spec is carlson:D:C1 C2 ...");
    int d = std::stoi(parts[0]);
    std::vector<Fp::elem> z;
    std::istringstream is(parts[1]);
    long long c;
    while (is >> c) z.push_back(K.from_int(c));
    auto Rk = minimal_resolution(trivial_module(H), d);
    auto C = carlson_module(Rk, d, z);
    if (C.degenerate) throw std::invalid_argument("zero class gives no Carlson module");
    return named(std::move(C.module), spec);
  }
  if (head == "random") {
    auto parts = split(rest, ':');
    uint64_t seed = std::stoull(parts.at(0));
    size_t md = parts.size() > 1 ? std::stoul(parts[1]) : 12;
    return named(random_module(H, seed, md), spec);
  }
  if (head == "dual") return named(dual(parse_module(H, rest)), spec);
  if (head == "tensor") {
    auto bar = rest.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("tensor spec is tensor:A|B");
    return named(tensor(parse_module(H, rest.substr(0, bar)), parse_module(H, rest.substr(bar + 1))), spec);
  }
  throw std::invalid_argument("unknown module spec '" + spec + "'");
}

// ---------------- catalogs ----------------

// Cyclic quotients by at most two monomials, one per distinct monomial ideal.
inline std::vector<std::string> monomial_quotient_specs(const HopfAlgebra<Fp>& H) {
  const auto& R = *H.local;
  std::vector<Mono> monos;
  for (size_t b = 1; b < R.dim(); ++b) monos.push_back(R.mono(b));
  auto ideal_of = [&](const std::vector<Mono>& gens) {
    std::set<size_t> s;
    for (size_t b = 0; b < R.dim(); ++b)
      for (Mono g : gens) {
        bool div = true;
        for (int i = 0; i < R.letters(); ++i)
          if (mexp(R.mono(b), i) < mexp(g, i)) div = false;
        if (div) s.insert(b);
      }
    return s;
  };
  auto name = [&](Mono m) { return R.integration().mono_str(m); };
  std::set<std::set<size_t>> seen;
  std::vector<std::string> out{"cyclic:"};
  seen.insert({});
  for (size_t i = 0; i < monos.size(); ++i)
    if (seen.insert(ideal_of({monos[i]})).second) out.push_back("cyclic:" + name(monos[i]));
  for (size_t i = 0; i < monos.size(); ++i)
    for (size_t j = i + 1; j < monos.size(); ++j)
      if (seen.insert(ideal_of({monos[i], monos[j]})).second)
        out.push_back("cyclic:" + name(monos[i]) + "," + name(monos[j]));
  return out;
}

// Carlson specs for the nonzero classes of Ext^d(k,k) up to scalar, homogeneous
// for the labels; at most `limit` of them (0 = all).
inline std::vector<std::string> carlson_specs(HopfPtr H, int d, size_t limit = 0) {
  auto Rk = minimal_resolution(trivial_module(H), d);
  const size_t r = Rk.ranks[d];
  const uint32_t p = H->K.p();
  std::vector<std::string> out;
  // enumerate vectors with first nonzero coordinate 1
  std::vector<uint32_t> v(r, 0);
  uint64_t total = 1;
  for (size_t i = 0; i < r; ++i) total *= p;
  for (uint64_t code = 1; code < total; ++code) {
    uint64_t c = code;
    for (size_t i = 0; i < r; ++i) v[i] = uint32_t(c % p), c /= p;
    size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    bool homog = true;
    for (size_t i = 0; i < r; ++i)
      if (v[i] && Rk.gen_label[d][i] != Rk.gen_label[d][lead]) homog = false;
    if (!homog) continue;
    std::string s = "carlson:" + std::to_string(d) + ":";
    for (size_t i = 0; i < r; ++i) s += (i ? " " : "") + std::to_string(v[i]);
    out.push_back(s);
    if (limit && out.size() >= limit) break;
  }
  return out;
}

inline std::vector<std::string> random_specs(uint64_t first_seed, int count, size_t max_dim = 12) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i)
    out.push_back("random:" + std::to_string(first_seed + uint64_t(i)) + ":" + std::to_string(max_dim));
  return out;
}

inline std::vector<ModulePtr<Fp>> build_catalog(HopfPtr H, const std::vector<std::string>& specs) {
  std::vector<ModulePtr<Fp>> out;
  for (auto& s : specs) out.push_back(share(parse_module(H, s)));
  return out;
}

template <class... V>
std::vector<std::string> concat(V&&... parts) {
  std::vector<std::string> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

// Exhaustive catalog for O(G_a(1)^2) at p = 3.
inline std::vector<std::string> connected_catalog_specs(HopfPtr H, uint64_t seed) {
  return concat(monomial_quotient_specs(*H), carlson_specs(H, 2), random_specs(seed, 20));
}

// The sum of all simples is too large to tensor with under extended grouplikes
// (81 simples); a single nontrivial simple takes its place there.
inline std::vector<std::string> qci_catalog_specs(HopfPtr H, uint64_t seed) {
  std::vector<std::string> base{"k", "free", H->nlabels <= 9 ? "simples" : "simple:1", "cyclic:x1", "cyclic:x2", "cyclic:x1^2",
                                "cyclic:x1*x2", "cyclic:x1,x2^2", "cyclic:x2,x1^2", "cyclic:x1^2,x2^2"};
  return concat(base, carlson_specs(H, 2, 4), random_specs(seed, 5));
}

inline std::vector<std::string> heisenberg_catalog_specs(uint64_t seed) {
  std::vector<std::string> base{"k", "free", "cyclic:x", "cyclic:y", "cyclic:z", "cyclic:x,y", "cyclic:z^2"};
  return concat(base, random_specs(seed, 4));
}

inline std::vector<std::string> borel_a1_catalog_specs(HopfPtr H, uint64_t seed) {
  std::vector<std::string> base{"k", "free", "simples", "cyclic:E12", "cyclic:E12^2", "cyclic:E12^3", "cyclic:E12^4"};
  return concat(base, carlson_specs(H, 2), random_specs(seed, 3));
}

inline std::vector<std::string> borel_a2_catalog_specs(HopfPtr H) {
  std::vector<std::string> base{"k", "cyclic:E12", "cyclic:E23"};
  return concat(base, carlson_specs(H, 2, 1));
}

}  // namespace sv
