#pragma once
// Constructors for the concrete Hopf algebra families.

#include <functional>
#include <map>
#include <set>

#include "hopf.hpp"

namespace sv {

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using IntMat = std::vector<std::vector<long long>>;

inline long long mod_pos(long long a, long long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline long long int_det(IntMat A) {
  const size_t n = A.size();
  if (n == 0) return 1;
  // fraction-free elimination (Bareiss)
  long long sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

// Inverse of A modulo m, if det A is a unit mod m.
inline std::optional<IntMat> inverse_mod(const IntMat& A, long long m) {
  const size_t n = A.size();
  long long d = mod_pos(int_det(A), m);
  if (std::gcd(d, m) != 1) return std::nullopt;
  long long dinv = 1;
  while (mod_pos(d * dinv, m) != 1) ++dinv;
  IntMat inv(n, std::vector<long long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      IntMat minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        for (size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(A[r][c]);
        minor.push_back(row);
      }
      long long cof = int_det(minor) * (((i + j) % 2) ? -1 : 1);
      inv[i][j] = mod_pos(cof * dinv, m);
    }
  return inv;
}

// Smith normal form: returns diagonal d and unimodular U with U A V = diag(d).
struct Smith {
  IntMat U, V;
  std::vector<long long> d;
};

inline Smith smith_normal_form(IntMat A) {
  const size_t n = A.size(), m = A.empty() ? 0 : A[0].size();
  IntMat U(n, std::vector<long long>(n, 0)), V(m, std::vector<long long>(m, 0));
  for (size_t i = 0; i < n; ++i) U[i][i] = 1;
  for (size_t i = 0; i < m; ++i) V[i][i] = 1;
  auto row_op = [&](size_t i, size_t j, long long c) {  // row_i += c row_j
    for (size_t k = 0; k < m; ++k) A[i][k] += c * A[j][k];
    for (size_t k = 0; k < n; ++k) U[i][k] += c * U[j][k];
  };
  auto col_op = [&](size_t i, size_t j, long long c) {  // col_i += c col_j
    for (size_t k = 0; k < n; ++k) A[k][i] += c * A[k][j];
    for (size_t k = 0; k < m; ++k) V[k][i] += c * V[k][j];
  };
  auto swap_rows = [&](size_t i, size_t j) { std::swap(A[i], A[j]); std::swap(U[i], U[j]); };
  auto swap_cols = [&](size_t i, size_t j) {
    for (size_t k = 0; k < n; ++k) std::swap(A[k][i], A[k][j]);
    for (size_t k = 0; k < m; ++k) std::swap(V[k][i], V[k][j]);
  };
  for (size_t t = 0; t < std::min(n, m); ++t) {
    for (;;) {
      // smallest nonzero entry in the remaining block
      long long best = 0;
      size_t bi = t, bj = t;
      for (size_t i = t; i < n; ++i)
        for (size_t j = t; j < m; ++j)
          if (A[i][j] != 0 && (best == 0 || std::llabs(A[i][j]) < best)) {
            best = std::llabs(A[i][j]);
            bi = i;
            bj = j;
          }
      if (best == 0) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (size_t i = t + 1; i < n; ++i) {
        long long c = A[i][t] / A[t][t];
        if (c) row_op(i, t, -c);
        if (A[i][t]) clean = false;
      }
      for (size_t j = t + 1; j < m; ++j) {
        long long c = A[t][j] / A[t][t];
        if (c) col_op(j, t, -c);
        if (A[t][j]) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (size_t i = t + 1; i < n && divides; ++i)
        for (size_t j = t + 1; j < m; ++j)
          if (A[i][j] % A[t][t]) {
            row_op(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A[t][t] < 0) {
      for (size_t k = 0; k < m; ++k) A[t][k] = -A[t][k];
      for (size_t k = 0; k < n; ++k) U[t][k] = -U[t][k];
    }
  }
  Smith s{U, V, {}};
  for (size_t t = 0; t < std::min(n, m); ++t) s.d.push_back(A[t][t]);
  return s;
}

inline void validate_qci_matrix(const IntMat& P) {
  const size_t n = P.size();
  if (n == 0) throw ConstructionError("empty parameter matrix");
  for (size_t i = 0; i < n; ++i) {
    if (P[i].size() != n) throw ConstructionError("parameter matrix must be square");
    if (P[i][i] != 1) throw ConstructionError("parameter matrix must have 1 on the diagonal");
    for (size_t j = 0; j < n; ++j)
      if (i != j && P[i][j] != -P[j][i])
        throw ConstructionError("parameter matrix must be skew-symmetric off the diagonal");
  }
}

template <class F>
NcPoly<F> nc_letter(const F& K, int x) { return {{{x}, K.one()}}; }

// Skew polynomial quantum complete intersection with standard or extended grouplikes.
template <class F>
HopfAlgebra<F> build_qci(const F& K, int l, const IntMat& P, bool extended, int cap_factor = 3) {
  validate_qci_matrix(P);
  if (l < 3 || l % 2 == 0) throw ConstructionError("q must have odd order l >= 3");
  const int n = int(P.size());
  if (n > kMaxLetters) throw ConstructionError("too many variables");
  HopfAlgebra<F> H{};
  H.K = K;
  H.l = l;
  H.q = root_of_unity(K, uint32_t(l));
  std::vector<std::string> names;
  std::vector<std::vector<int>> deg;
  for (int i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i + 1));
    std::vector<int> d(n, 0);
    d[i] = 1;
    deg.push_back(d);
  }
  auto Q = std::make_shared<PbwAlgebra<F>>(K, names, deg, std::vector<int>(n, std::min(255, cap_factor * l)));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < b; ++a)
      Q->set_rule(b, a, {{mletter(a) + mletter(b), K.pow(H.q, mod_pos(P[b][a], l))}});
  std::vector<int> gens(n);
  std::iota(gens.begin(), gens.end(), 0);
  std::vector<NcPoly<F>> defs;
  for (int i = 0; i < n; ++i) defs.push_back(nc_letter(K, i));
  H.local = std::make_shared<LocalAlgebra<F>>(Q, std::vector<int>(n, l), gens, defs, "qci");
  H.kind = HopfKind::Bosonized;
  if (!extended) {
    H.family = "qci-standard";
    H.orders.assign(n, l);
    for (int j = 0; j < n; ++j) {
      std::vector<int> d(n);
      for (int i = 0; i < n; ++i) d[i] = int(mod_pos(P[i][j], l));
      H.letter_deg.push_back(d);
      std::vector<int> k(n, 0);
      k[j] = 1;
      H.Kexp.push_back(k);
    }
    // braiding form B with B(deg x_i, -) = K_i, i.e. P^T B = 1
    IntMat Pt(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Pt[i][j] = P[j][i];
    if (auto inv = inverse_mod(Pt, l)) {
      std::vector<std::vector<int>> B(n, std::vector<int>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B[i][j] = int((*inv)[i][j]);
      H.form = B;
    }
  } else {
    H.family = "qci-extended";
    H.orders.assign(2 * n, l);
    std::vector<std::vector<int>> B(2 * n, std::vector<int>(2 * n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        B[i][j] = int(mod_pos(P[i][j], l));
        B[i][n + j] = i == j ? 0 : int(mod_pos(P[i][j], l));
      }
    H.form = B;
    for (int j = 0; j < n; ++j) {
      std::vector<int> d(2 * n, 0);
      d[j] = 1;
      H.letter_deg.push_back(d);
      H.Kexp.push_back(B[j]);
    }
  }
  H.omega.assign(H.orders.size(), H.q);
  H.name = H.family + "(n=" + std::to_string(n) + ",l=" + std::to_string(l) + ")";
  H.finalize();
  return H;
}

// O(G_a(1)^n x| pi) over F_p, pi generated by coordinate permutations.
inline HopfAlgebra<Fp> build_function_algebra(const Fp& K, int n, const std::vector<std::vector<int>>& pi_gens,
                                              int cap_factor = 3) {
  const int p = int(K.p());
  if (n < 1 || n > kMaxLetters) throw ConstructionError("unsupported number of coordinates");
  HopfAlgebra<Fp> H{};
  H.K = K;
  H.l = 1;
  H.q = K.one();
  std::vector<std::string> names;
  std::vector<std::vector<int>> deg;
  for (int i = 0; i < n; ++i) {
    names.push_back("w" + std::to_string(i + 1));
    std::vector<int> d(n, 0);
    d[i] = 1;
    deg.push_back(d);
  }
  auto Q = std::make_shared<PbwAlgebra<Fp>>(K, names, deg, std::vector<int>(n, std::min(255, cap_factor * p)));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < b; ++a) Q->set_rule(b, a, {{mletter(a) + mletter(b), K.one()}});
  std::vector<int> gens(n);
  std::iota(gens.begin(), gens.end(), 0);
  std::vector<NcPoly<Fp>> defs;
  for (int i = 0; i < n; ++i) defs.push_back(nc_letter(K, i));
  H.local = std::make_shared<LocalAlgebra<Fp>>(Q, std::vector<int>(n, p), gens, defs, "function");
  H.kind = HopfKind::GroupScheme;
  H.family = "function-algebra";
  H.ncoords = n;
  for (auto& g : pi_gens) {
    std::set<int> s(g.begin(), g.end());
    if (int(g.size()) != n || int(s.size()) != n || *s.begin() != 0 || *s.rbegin() != n - 1)
      throw ConstructionError("not a permutation of the coordinates");
  }
  H.perms = perm_closure(n, pi_gens);
  if (H.perms.size() % size_t(p) == 0)
    throw ConstructionError("p divides the order of the permutation group");
  H.perm_semidirect = H.perms.size() > 1;
  H.name = "O(Ga(1)^" + std::to_string(n) + (H.perm_semidirect ? " x| pi, |pi|=" + std::to_string(H.perms.size()) : "") + ")";
  H.finalize();
  return H;
}

// Restricted enveloping algebra of a nilpotent Lie algebra with zero p-map.
// brackets[(i,j)] = coefficients of [b_i, b_j] for i < j.
inline HopfAlgebra<Fp> build_restricted_enveloping(const Fp& K, const std::vector<std::string>& names,
                                                   const std::map<std::pair<int, int>, std::vector<long long>>& brackets,
                                                   int cap_factor = 3) {
  const int d = int(names.size());
  const int p = int(K.p());
  if (d < 1 || d > kMaxLetters) throw ConstructionError("unsupported dimension");
  auto br = [&](int i, int j) {
    std::vector<long long> v(d, 0);
    if (i == j) return v;
    bool neg = i > j;
    auto it = brackets.find({std::min(i, j), std::max(i, j)});
    if (it != brackets.end())
      for (int k = 0; k < d; ++k) v[k] = neg ? -it->second[k] : it->second[k];
    return v;
  };
  // Jacobi identity
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        std::vector<long long> s(d, 0);
        auto add = [&](int x, int y, int z) {  // [x,[y,z]]
          auto inner = br(y, z);
          for (int k = 0; k < d; ++k) {
            if (!inner[k]) continue;
            auto o = br(x, k);
            for (int t = 0; t < d; ++t) s[t] += inner[k] * o[t];
          }
        };
        add(a, b, c);
        add(b, c, a);
        add(c, a, b);
        for (auto v : s)
          if (mod_pos(v, p)) throw ConstructionError("bracket violates the Jacobi identity");
      }
  // (ad b)^p = 0 for each basis element, as required by a zero p-map
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      std::vector<long long> v(d, 0);
      v[b] = 1;
      for (int t = 0; t < p; ++t) {
        std::vector<long long> w(d, 0);
        for (int k = 0; k < d; ++k) {
          if (!mod_pos(v[k], p)) continue;
          auto o = br(a, k);
          for (int s = 0; s < d; ++s) w[s] = mod_pos(w[s] + v[k] * o[s], p);
        }
        v = w;
      }
      for (auto x : v)
        if (mod_pos(x, p)) throw ConstructionError("zero p-map is incompatible with the bracket");
    }
  // grading: elements never produced by brackets get unit degrees
  std::vector<char> produced(d, 0);
  for (auto& [ij, v] : brackets)
    for (int k = 0; k < d; ++k)
      if (mod_pos(v[k], p)) produced[k] = 1;
  std::vector<int> gens;
  for (int i = 0; i < d; ++i)
    if (!produced[i]) gens.push_back(i);
  const int m = int(gens.size());
  std::vector<std::vector<int>> deg(d);
  std::vector<NcPoly<Fp>> defs(d);
  for (int t = 0; t < m; ++t) {
    deg[gens[t]].assign(m, 0);
    deg[gens[t]][t] = 1;
    defs[gens[t]] = nc_letter(K, gens[t]);
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = 0; k < d; ++k) {
      if (!deg[k].empty()) continue;
      for (int i = 0; i < d && deg[k].empty(); ++i)
        for (int j = i + 1; j < d && deg[k].empty(); ++j) {
          if (deg[i].empty() || deg[j].empty()) continue;
          auto v = br(i, j);
          bool single = mod_pos(v[k], p) != 0;
          for (int s = 0; s < d && single; ++s)
            if (s != k && mod_pos(v[s], p)) single = false;
          if (!single) continue;
          // b_k = (b_i b_j - b_j b_i) / c
          auto ci = K.inv(K.from_int(v[k]));
          NcPoly<Fp> def;
          for (auto& [wi, ai] : defs[i])
            for (auto& [wj, aj] : defs[j]) {
              std::vector<int> w = wi;
              w.insert(w.end(), wj.begin(), wj.end());
              def.push_back({w, K.mul(ci, K.mul(ai, aj))});
              std::vector<int> w2 = wj;
              w2.insert(w2.end(), wi.begin(), wi.end());
              def.push_back({w2, K.neg(K.mul(ci, K.mul(ai, aj)))});
            }
          defs[k] = def;
          deg[k].assign(m, 0);
          for (int s = 0; s < m; ++s) deg[k][s] = deg[i][s] + deg[j][s];
          progress = true;
        }
    }
  }
  for (int k = 0; k < d; ++k)
    if (deg[k].empty()) throw ConstructionError("bracket presentation not supported: cannot express " + names[k]);
  // homogeneity of the bracket
  for (auto& [ij, v] : brackets)
    for (int k = 0; k < d; ++k)
      if (mod_pos(v[k], p)) {
        for (int s = 0; s < m; ++s)
          if (deg[ij.first][s] + deg[ij.second][s] != deg[k][s])
            throw ConstructionError("bracket is not homogeneous for the induced grading");
      }
  auto Q = std::make_shared<PbwAlgebra<Fp>>(K, names, deg, std::vector<int>(d, std::min(255, cap_factor * p)));
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < b; ++a) {
      Poly<Fp> r{{mletter(a) + mletter(b), K.one()}};
      auto v = br(b, a);
      for (int k = 0; k < d; ++k)
        if (mod_pos(v[k], p)) r.push_back({mletter(k), K.from_int(v[k])});
      Q->set_rule(b, a, r);
    }
  HopfAlgebra<Fp> H{};
  H.K = K;
  H.l = 1;
  H.q = K.one();
  H.kind = HopfKind::Bosonized;
  H.family = "restricted";
  H.local = std::make_shared<LocalAlgebra<Fp>>(Q, std::vector<int>(d, p), gens, defs, "restricted");
  H.Kexp.assign(gens.size(), std::vector<int>{});
  H.letter_deg.assign(d, std::vector<int>{});
  H.form = std::vector<std::vector<int>>{};
  H.name = "u(n), dim n = " + std::to_string(d);
  H.finalize();
  return H;
}

inline HopfAlgebra<Fp> build_heisenberg(const Fp& K, int cap_factor = 3) {
  return build_restricted_enveloping(K, {"x", "y", "z"}, {{{0, 1}, {0, 0, 1}}}, cap_factor);
}

// ---------------- type A positive parts ----------------

inline int cartan_A(int i, int j) { return i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0); }

inline int pairing_A(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) s += a[i] * cartan_A(int(i), int(j)) * b[j];
  return s;
}

template <class F>
struct TypeA {
  int rank = 0;
  int l = 0;
  typename F::elem q{};
  std::vector<std::pair<int, int>> roots;  // (i,j), 1-based, lexicographic
  std::vector<std::vector<int>> rdeg;      // in simple-root coordinates
  std::vector<int> height;
  std::vector<int> simple_letter;
  std::vector<NcPoly<F>> defs;   // root vectors as polynomials in simple letters
  std::vector<NcPoly<F>> serre;  // over letters
  std::shared_ptr<PbwAlgebra<F>> Q;
};

namespace detail {

// All words with the given letter multiplicities (letters are simple indices).
inline void words_of(std::vector<int>& mult, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  bool any = false;
  for (size_t s = 0; s < mult.size(); ++s) {
    if (!mult[s]) continue;
    any = true;
    --mult[s];
    cur.push_back(int(s));
    words_of(mult, cur, out);
    cur.pop_back();
    ++mult[s];
  }
  if (!any) out.push_back(cur);
}

}  // namespace detail

// Root vectors of U_q(n) in type A_rank with PBW rewriting rules found by
// linear algebra in the free algebra modulo the q-Serre relations.
template <class F>
TypeA<F> build_typeA(const F& K, int rank, int l, int cap, std::optional<typename F::elem> q_in = std::nullopt) {
  if (rank < 1 || rank > 3) throw ConstructionError("type A rank must be between 1 and 3");
  TypeA<F> T;
  T.rank = rank;
  T.l = l;
  T.q = q_in ? *q_in : root_of_unity(K, uint32_t(l));
  const auto q = T.q, qi = K.inv(T.q);
  for (int i = 1; i <= rank; ++i)
    for (int j = i + 1; j <= rank + 1; ++j) T.roots.push_back({i, j});
  const int N = int(T.roots.size());
  std::vector<std::string> names;
  T.simple_letter.assign(rank, -1);
  for (int r = 0; r < N; ++r) {
    auto [i, j] = T.roots[r];
    std::vector<int> d(rank, 0);
    for (int s = i - 1; s <= j - 2; ++s) d[s] = 1;
    T.rdeg.push_back(d);
    T.height.push_back(j - i);
    names.push_back("E" + std::to_string(i) + std::to_string(j));
    if (j == i + 1) T.simple_letter[i - 1] = r;
  }
  auto letter_of = [&](int i, int j) {
    for (int r = 0; r < N; ++r)
      if (T.roots[r] == std::make_pair(i, j)) return r;
    return -1;
  };
  // definitions over simple indices first
  std::vector<NcPoly<F>> defs_s(N);
  std::vector<int> by_height(N);
  std::iota(by_height.begin(), by_height.end(), 0);
  std::stable_sort(by_height.begin(), by_height.end(), [&](int a, int b) { return T.height[a] < T.height[b]; });
  for (int r : by_height) {
    auto [i, j] = T.roots[r];
    if (j == i + 1) { defs_s[r] = {{{i - 1}, K.one()}}; continue; }
    int a = letter_of(i, j - 1), b = letter_of(j - 1, j);
    auto c = K.pow(q, mod_pos(pairing_A(T.rdeg[a], T.rdeg[b]), l));
    NcPoly<F> out;
    for (auto& [wa, ca] : defs_s[a])
      for (auto& [wb, cb] : defs_s[b]) {
        auto w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.push_back({w, K.mul(ca, cb)});
        auto w2 = wb;
        w2.insert(w2.end(), wa.begin(), wa.end());
        out.push_back({w2, K.neg(K.mul(c, K.mul(ca, cb)))});
      }
    defs_s[r] = out;
  }
  // Serre relations over simple indices
  std::vector<NcPoly<F>> serre_s;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      if (std::abs(i - j) == 1) {
        serre_s.push_back({{{i, i, j}, K.one()}, {{i, j, i}, K.neg(K.add(q, qi))}, {{j, i, i}, K.one()}});
      } else if (i < j) {
        serre_s.push_back({{{i, j}, K.one()}, {{j, i}, K.neg(K.one())}});
      }
    }
  auto to_letters = [&](const NcPoly<F>& p) {
    NcPoly<F> o = p;
    for (auto& [w, c] : o)
      for (auto& x : w) x = T.simple_letter[x];
    return o;
  };
  for (auto& d : defs_s) T.defs.push_back(to_letters(d));
  for (auto& s : serre_s) T.serre.push_back(to_letters(s));

  std::vector<std::vector<int>> pdeg = T.rdeg;
  T.Q = std::make_shared<PbwAlgebra<F>>(K, names, pdeg, std::vector<int>(N, std::min(cap, 255)));

  auto poly_deg = [&](const std::vector<int>& w) {
    std::vector<int> d(rank, 0);
    for (int x : w) d[x]++;
    return d;
  };
  for (int b = 0; b < N; ++b)
    for (int a = 0; a < b; ++a) {
      std::vector<int> mu(rank);
      for (int s = 0; s < rank; ++s) mu[s] = T.rdeg[a][s] + T.rdeg[b][s];
      std::vector<std::vector<int>> W;
      std::vector<int> cur, mult = mu;
      detail::words_of(mult, cur, W);
      std::map<std::vector<int>, size_t> widx;
      for (size_t k = 0; k < W.size(); ++k) widx[W[k]] = k;
      const size_t dimW = W.size();
      auto vec_of = [&](const NcPoly<F>& p) {
        std::vector<typename F::elem> v(dimW, K.zero());
        for (auto& [w, c] : p) v[widx.at(w)] = K.add(v[widx.at(w)], c);
        return v;
      };
      Echelon<F> ideal(K, dimW);
      for (auto& s : serre_s) {
        auto sd = poly_deg(s[0].first);
        std::vector<int> rest(rank);
        bool ok = true;
        for (int t = 0; t < rank; ++t) {
          rest[t] = mu[t] - sd[t];
          if (rest[t] < 0) ok = false;
        }
        if (!ok) continue;
        std::vector<std::vector<int>> R;
        std::vector<int> c2, m2 = rest;
        detail::words_of(m2, c2, R);
        for (auto& w : R)
          for (size_t cut = 0; cut <= w.size(); ++cut) {
            NcPoly<F> prod;
            for (auto& [sw, sc] : s) {
              std::vector<int> full(w.begin(), w.begin() + cut);
              full.insert(full.end(), sw.begin(), sw.end());
              full.insert(full.end(), w.begin() + cut, w.end());
              prod.push_back({full, sc});
            }
            ideal.insert(vec_of(prod));
          }
      }
      // PBW monomials of degree mu
      std::vector<Mono> monos;
      std::function<void(int, std::vector<int>, Mono)> rec = [&](int r, std::vector<int> left, Mono m) {
        if (r == N) {
          for (int v : left)
            if (v) return;
          monos.push_back(m);
          return;
        }
        for (int e = 0;; ++e) {
          bool ok = true;
          for (int s = 0; s < rank; ++s)
            if (left[s] < 0) ok = false;
          if (!ok) break;
          rec(r + 1, left, m + mletter(r, e));
          for (int s = 0; s < rank; ++s) left[s] -= T.rdeg[r][s];
        }
      };
      rec(0, mu, 0);
      auto expand = [&](Mono m) {
        NcPoly<F> cur{{{}, K.one()}};
        for (int r = 0; r < N; ++r)
          for (int e = 0; e < mexp(m, r); ++e) {
            NcPoly<F> nxt;
            for (auto& [w, c] : cur)
              for (auto& [w2, c2] : defs_s[r]) {
                auto ww = w;
                ww.insert(ww.end(), w2.begin(), w2.end());
                nxt.push_back({ww, K.mul(c, c2)});
              }
            cur = nxt;
          }
        return cur;
      };
      Mat<F> basis(monos.size(), dimW, K.zero());
      for (size_t k = 0; k < monos.size(); ++k) {
        auto v = vec_of(expand(monos[k]));
        ideal.reduce(v.data());
        for (size_t t = 0; t < dimW; ++t) basis(k, t) = v[t];
      }
      if (sv::rank(K, basis) != monos.size() || monos.size() + ideal.dim() != dimW)
        throw ConstructionError("ordered root-vector monomials do not form a basis in degree " +
                                std::to_string(mu[0]));
      NcPoly<F> ba;
      for (auto& [w1, c1] : defs_s[b])
        for (auto& [w2, c2] : defs_s[a]) {
          auto w = w1;
          w.insert(w.end(), w2.begin(), w2.end());
          ba.push_back({w, K.mul(c1, c2)});
        }
      auto target = vec_of(ba);
      ideal.reduce(target.data());
      std::vector<typename F::elem> coef;
      if (!solve_left(K, basis, target, coef)) throw ConstructionError("commutation rule not found");
      Poly<F> rule;
      for (size_t k = 0; k < monos.size(); ++k)
        if (!K.is_zero(coef[k])) rule.push_back({monos[k], coef[k]});
      T.Q->set_rule(b, a, rule);
    }
  return T;
}

// Positive part of small quantum sl_{n+1} with sc or adjoint grouplikes.
template <class F>
HopfAlgebra<F> build_quantum_borel(const F& K, int rank, int l, const std::string& lattice, int cap_factor = 4) {
  if (l < 3 || l % 2 == 0) throw ConstructionError("q must have odd order l >= 3");
  if (lattice != "sc" && lattice != "ad")
    throw ConstructionError("lattice must be named explicitly as sc or ad");
  HopfAlgebra<F> H{};
  H.K = K;
  H.l = l;
  H.kind = HopfKind::Bosonized;
  std::vector<int> orders;
  IntMat U;
  if (lattice == "sc") {
    IntMat lC(rank, std::vector<long long>(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) lC[i][j] = l * cartan_A(i, j);
    auto S = smith_normal_form(lC);
    U = S.U;
    for (auto d : S.d) orders.push_back(int(d));
  } else {
    orders.assign(rank, l);
  }
  long long Eexp = 1;
  for (int o : orders) Eexp = std::lcm(Eexp, (long long)o);
  auto wE = root_of_unity(K, uint32_t(Eexp));
  H.q = K.pow(wE, Eexp / l);
  H.l = l;
  auto T = build_typeA(K, rank, l, cap_factor * l, std::optional<typename F::elem>(H.q));
  const int N = int(T.roots.size());
  std::vector<int> gens;
  for (int s = 0; s < rank; ++s) gens.push_back(T.simple_letter[s]);
  H.local = std::make_shared<LocalAlgebra<F>>(T.Q, std::vector<int>(N, l), gens, T.defs, "borel");
  H.extra_relations = T.serre;
  // keep only nontrivial cyclic factors
  std::vector<int> keep;
  for (size_t k = 0; k < orders.size(); ++k)
    if (orders[k] > 1) keep.push_back(int(k));
  for (int k : keep) {
    H.orders.push_back(orders[k]);
    H.omega.push_back(K.pow(wE, Eexp / orders[k]));
  }
  for (int r = 0; r < N; ++r) {
    std::vector<int> d;
    if (lattice == "sc") {
      // P-coordinates of the root, then Smith coordinates
      std::vector<long long> pc(rank, 0);
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) pc[i] += cartan_A(i, j) * T.rdeg[r][j];
      for (int k : keep) {
        long long s = 0;
        for (int i = 0; i < rank; ++i) s += U[k][i] * pc[i];
        d.push_back(int(mod_pos(s, orders[k])));
      }
    } else {
      for (int i = 0; i < rank; ++i) {
        long long s = 0;
        for (int j = 0; j < rank; ++j) s += cartan_A(i, j) * T.rdeg[r][j];
        d.push_back(int(mod_pos(s, l)));
      }
    }
    H.letter_deg.push_back(d);
  }
  for (int s = 0; s < rank; ++s) {
    std::vector<int> k;
    if (lattice == "sc") {
      // (K_alpha)_k = (o_k / l) (alpha, u_k), u_k the preimage of the k-th unit vector
      // U is unimodular: exact inverse through the adjugate
      IntMat Uinv(rank, std::vector<long long>(rank));
      long long det = int_det(U);
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
          IntMat minor;
          for (int r = 0; r < rank; ++r) {
            if (r == j) continue;
            std::vector<long long> row;
            for (int c = 0; c < rank; ++c)
              if (c != i) row.push_back(U[r][c]);
            minor.push_back(row);
          }
          Uinv[i][j] = int_det(minor) * (((i + j) % 2) ? -1 : 1) * det;  // det = +-1
        }
      for (int kk : keep) {
        long long pair = Uinv[s][kk];  // (alpha_s, u_k) = s-th P-coordinate of u_k
        k.push_back(int(mod_pos((orders[kk] / l) * pair, orders[kk])));
      }
    } else {
      k.assign(rank, 0);
      k[s] = 1;
    }
    H.Kexp.push_back(k);
  }
  H.family = lattice == "sc" ? "borel-sc" : "borel-ad";
  H.name = "u_q(b) type A" + std::to_string(rank) + " l=" + std::to_string(l) + " (" + lattice + ")";
  H.finalize();
  return H;
}

}  // namespace sv
