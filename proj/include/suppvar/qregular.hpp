#pragma once
// q-regular sequences in graded PBW algebras, checked degree by degree up to
// a truncation in total degree. Nothing beyond the truncation is claimed.

#include "builders.hpp"
#include "check.hpp"

namespace sv {

struct QRegularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
struct QRegularCandidate {
  std::shared_ptr<const PbwAlgebra<F>> A;
  std::string name;
  std::vector<std::string> names;        // of the sequence members
  std::vector<Poly<F>> x;                // x_1..x_n
  std::vector<std::vector<int>> chi;     // q^{<deg b, chi_j>}, paired with the grading of A
  typename F::elem q{};
  int l = 0;
  std::vector<int> fexp;                 // parameters f_i = (letter i)^fexp[i], for the Koszul transfer
};

template <class F>
struct QRegularReport {
  CheckReport checks;
  int truncation = 0;
  std::vector<std::string> violations;
  std::vector<size_t> checked_degrees;   // per sequence member: graded pieces checked
};

namespace detail {

inline int total_degree(const std::vector<int>& d) {
  int s = 0;
  for (int x : d) s += x;
  return s;
}

// Graded pieces of a PBW algebra up to a total degree bound.
template <class F>
struct GradedPieces {
  const PbwAlgebra<F>* A;
  int T;
  std::map<std::vector<int>, std::vector<Mono>> monos;
  std::map<std::vector<int>, std::map<Mono, size_t>> index;

  GradedPieces(const PbwAlgebra<F>& a, int t) : A(&a), T(t) {
    const int n = a.letters();
    std::vector<int> tdeg(n);
    for (int i = 0; i < n; ++i) {
      tdeg[i] = total_degree(a.degree(i));
      if (tdeg[i] <= 0) throw QRegularError("letters must have positive total degree");
    }
    std::function<void(int, int, Mono)> rec = [&](int i, int left, Mono m) {
      if (i == n) {
        auto d = a.mono_degree(m);
        index[d][m] = monos[d].size();
        monos[d].push_back(m);
        return;
      }
      for (int e = 0; e * tdeg[i] <= left && e <= a.cap(i); ++e) rec(i + 1, left - e * tdeg[i], m + mletter(i, e));
    };
    rec(0, T, 0);
  }
  size_t dim(const std::vector<int>& d) const {
    auto it = monos.find(d);
    return it == monos.end() ? 0 : it->second.size();
  }
  std::vector<typename F::elem> vec(const std::vector<int>& d, const Poly<F>& p) const {
    const F& K = A->field();
    std::vector<typename F::elem> v(dim(d), K.zero());
    const auto& idx = index.at(d);
    for (auto& [m, c] : p) {
      auto it = idx.find(m);
      if (it == idx.end()) throw QRegularError("element leaves its graded piece");
      v[it->second] = K.add(v[it->second], c);
    }
    return v;
  }
};

template <class F>
std::optional<std::vector<int>> homogeneous_degree(const PbwAlgebra<F>& A, const Poly<F>& p) {
  if (p.empty()) return std::nullopt;
  auto d = A.mono_degree(p[0].first);
  for (auto& [m, c] : p)
    if (A.mono_degree(m) != d) return std::nullopt;
  return d;
}

inline std::vector<int> add_deg(std::vector<int> a, const std::vector<int>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline std::string deg_str(const std::vector<int>& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

}  // namespace detail

// (a) homogeneity, (b) chi_j-centrality modulo (x_{j+1}..x_n) on the letters,
// and x_j a nonzerodivisor on A/(x_{j+1}..x_n) in every graded piece of total
// degree <= T - |x_j|; also whether the x generate the augmentation ideal.
template <class F>
QRegularReport<F> check_q_regular(const QRegularCandidate<F>& c, int T) {
  const auto& A = *c.A;
  const F& K = A.field();
  const int n = int(c.x.size());
  QRegularReport<F> R;
  R.truncation = T;
  R.checks.subject = c.name;
  std::vector<std::vector<int>> dx(n);
  bool homog = true;
  for (int j = 0; j < n; ++j) {
    auto d = detail::homogeneous_degree(A, c.x[j]);
    if (!d) {
      homog = false;
      R.violations.push_back(c.names[j] + " is not homogeneous");
      continue;
    }
    dx[j] = *d;
  }
  R.checks.add("homogeneous", homog);
  if (!homog) return R;
  int maxletter = 0;
  for (int b = 0; b < A.letters(); ++b) maxletter = std::max(maxletter, detail::total_degree(A.degree(b)));
  for (int j = 0; j < n; ++j)
    if (detail::total_degree(dx[j]) + maxletter > T)
      throw QRegularError("truncation " + std::to_string(T) + " too small to witness " + c.names[j]);
  detail::GradedPieces<F> G(A, T);
  auto qpow = [&](const std::vector<int>& db, const std::vector<int>& chi) {
    long long e = 0;
    for (size_t i = 0; i < db.size(); ++i) e += (long long)db[i] * chi[i];
    return K.pow(c.q, ((e % c.l) + c.l) % c.l);
  };
  // Pieces of the left ideal generated by x_from..x_{n-1}. It is two-sided once
  // those members are known to be skew central modulo their successors, which
  // the loop below establishes from the top member down.
  auto ideal_piece = [&](int from, const std::vector<int>& mu) {
    Echelon<F> E(K, G.dim(mu));
    for (int k = from; k < n; ++k) {
      std::vector<int> rest(mu.size());
      bool ok = true;
      for (size_t t = 0; t < mu.size(); ++t) {
        rest[t] = mu[t] - dx[k][t];
        if (rest[t] < 0) ok = false;
      }
      if (!ok || !G.monos.count(rest)) continue;
      for (Mono m : G.monos.at(rest)) E.insert(G.vec(mu, A.mul(Poly<F>{{m, K.one()}}, c.x[k])));
    }
    return E;
  };
  bool central = true, nzd = true;
  R.checked_degrees.assign(n, 0);
  for (int j = n - 1; j >= 0; --j) {
    // centrality against every letter
    for (int b = 0; b < A.letters(); ++b) {
      Poly<F> lb{{mletter(b), K.one()}};
      auto mu = detail::add_deg(A.degree(b), dx[j]);
      auto lhs = A.mul(lb, c.x[j]);
      auto rhs = A.mul(c.x[j], lb);
      auto cc = K.neg(qpow(A.degree(b), c.chi[j]));
      for (auto& [m, v] : rhs) lhs.push_back({m, K.mul(cc, v)});
      normalize(K, lhs);
      auto E = ideal_piece(j + 1, mu);
      if (!E.contains(G.vec(mu, lhs))) {
        central = false;
        R.violations.push_back(A.name(b) + " against " + c.names[j]);
      }
    }
    // nonzerodivisor on each graded piece
    for (auto& [mu, ms] : G.monos) {
      auto nu = detail::add_deg(mu, dx[j]);
      if (detail::total_degree(nu) > T) continue;
      auto Imu = ideal_piece(j + 1, mu);
      auto Inu = ideal_piece(j + 1, nu);
      for (Mono m : ms) {
        auto v = G.vec(mu, Poly<F>{{m, K.one()}});
        if (!Imu.insert(v)) continue;
        if (!Inu.insert(G.vec(nu, A.mul(c.x[j], Poly<F>{{m, K.one()}})))) {
          nzd = false;
          R.violations.push_back(c.names[j] + " is a zero divisor in degree " + detail::deg_str(mu));
          break;
        }
      }
      R.checked_degrees[j]++;
    }
  }
  R.checks.add("skew central modulo later members", central);
  R.checks.add("nonzerodivisors up to the truncation", nzd);
  // the whole sequence generates the augmentation ideal in each checked degree
  bool aug = true;
  for (auto& [mu, ms] : G.monos) {
    if (detail::total_degree(mu) == 0) continue;
    if (ideal_piece(0, mu).dim() != ms.size()) {
      aug = false;
      R.violations.push_back("augmentation ideal not generated in degree " + detail::deg_str(mu));
    }
  }
  R.checks.add("generates the augmentation ideal", aug);
  return R;
}

// The same identities inside K_Q = Q (x) exterior(d_1..d_m), with d_i of
// cohomological degree -1 and trivial character, computed through the product
// of K_Q on each piece Q_mu d_S: centrality against the letters and the d_i,
// and the nonzerodivisor property modulo the later members.
template <class F>
QRegularReport<F> koszul_transfer_check(const QRegularCandidate<F>& c, int T) {
  const auto& A = *c.A;
  const F& K = A.field();
  const int m = int(c.fexp.size());
  const int n = int(c.x.size());
  if (m == 0) throw QRegularError("candidate carries no deformation parameters");
  QRegularReport<F> R;
  R.truncation = T;
  R.checks.subject = c.name + " in the Koszul resolution";
  using KQ = std::map<uint32_t, Poly<F>>;
  auto kq_mul = [&](const KQ& a, const KQ& b) {
    KQ out;
    for (auto& [s, p] : a)
      for (auto& [t, r] : b) {
        if (s & t) continue;
        int inv = 0;  // transpositions sorting d_s d_t
        for (int i = 0; i < m; ++i)
          if (t >> i & 1) inv += std::popcount(s >> (i + 1));
        auto& o = out[s | t];
        for (auto& [mm, v] : A.mul(p, r)) o.push_back({mm, inv % 2 ? K.neg(v) : v});
        normalize(K, o);
      }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
  };
  auto single = [&](const KQ& a, uint32_t s) -> Poly<F> {
    for (auto& [t, p] : a)
      if (t != s && !p.empty()) throw QRegularError("product left its exterior component");
    auto it = a.find(s);
    return it == a.end() ? Poly<F>{} : it->second;
  };
  std::vector<std::vector<int>> dx;
  for (auto& x : c.x) {
    auto d = detail::homogeneous_degree(A, x);
    if (!d) throw QRegularError("sequence member is not homogeneous");
    dx.push_back(*d);
  }
  detail::GradedPieces<F> G(A, T);
  const Poly<F> one{{Mono(0), K.one()}};
  auto ideal_piece = [&](int from, const std::vector<int>& mu, uint32_t s) {
    Echelon<F> E(K, G.dim(mu));
    for (int k = from; k < n; ++k) {
      std::vector<int> rest(mu.size());
      bool ok = true;
      for (size_t t = 0; t < mu.size(); ++t) {
        rest[t] = mu[t] - dx[k][t];
        if (rest[t] < 0) ok = false;
      }
      if (!ok || !G.monos.count(rest)) continue;
      for (Mono mo : G.monos.at(rest))
        E.insert(G.vec(mu, single(kq_mul(KQ{{s, Poly<F>{{mo, K.one()}}}}, KQ{{0u, c.x[k]}}), s)));
    }
    return E;
  };
  auto qpow = [&](const std::vector<int>& db, const std::vector<int>& chi) {
    long long e = 0;
    for (size_t i = 0; i < db.size(); ++i) e += (long long)db[i] * chi[i];
    return K.pow(c.q, ((e % c.l) + c.l) % c.l);
  };
  bool trivial = true;
  for (int i = 0; i < m; ++i) {
    auto d = A.degree(i);
    for (auto& x : d) x *= c.fexp[i];
    for (auto& chi : c.chi)
      if (!K.is_zero(K.sub(qpow(d, chi), K.one()))) trivial = false;
  }
  R.checks.add("parameters have trivial character", trivial);
  bool central = true, ext = true, nzd = true;
  R.checked_degrees.assign(n, 0);
  for (int j = n - 1; j >= 0; --j) {
    const KQ xj{{0u, c.x[j]}};
    for (int b = 0; b < A.letters(); ++b) {
      const KQ lb{{0u, Poly<F>{{mletter(b), K.one()}}}};
      auto mu = detail::add_deg(A.degree(b), dx[j]);
      auto lhs = single(kq_mul(lb, xj), 0), rhs = single(kq_mul(xj, lb), 0);
      auto cc = K.neg(qpow(A.degree(b), c.chi[j]));
      for (auto& [mo, v] : rhs) lhs.push_back({mo, K.mul(cc, v)});
      normalize(K, lhs);
      if (!ideal_piece(j + 1, mu, 0).contains(G.vec(mu, lhs))) {
        central = false;
        R.violations.push_back(A.name(b) + " against " + c.names[j]);
      }
    }
    // d_i x_j = (+) x_j d_i: sign (-1)^{0 * 1}, trivial character
    for (int i = 0; i < m; ++i) {
      const KQ d{{1u << i, one}};
      auto l = kq_mul(d, xj), r = kq_mul(xj, d);
      if (l != r) {
        ext = false;
        R.violations.push_back("d" + std::to_string(i + 1) + " against " + c.names[j]);
      }
    }
    for (auto& [mu, ms] : G.monos) {
      auto nu = detail::add_deg(mu, dx[j]);
      if (detail::total_degree(nu) > T) continue;
      for (uint32_t s = 0; s < (1u << m) && nzd; ++s) {
        auto Imu = ideal_piece(j + 1, mu, s);
        auto Inu = ideal_piece(j + 1, nu, s);
        for (Mono mo : ms) {
          if (!Imu.insert(G.vec(mu, Poly<F>{{mo, K.one()}}))) continue;
          if (!Inu.insert(G.vec(nu, single(kq_mul(xj, KQ{{s, Poly<F>{{mo, K.one()}}}}), s)))) {
            nzd = false;
            R.violations.push_back(c.names[j] + " is a zero divisor in degree " + detail::deg_str(mu));
            break;
          }
        }
      }
      R.checked_degrees[j]++;
    }
  }
  R.checks.add("skew central against letters", central);
  R.checks.add("skew central against exterior generators", ext);
  R.checks.add("nonzerodivisors up to the truncation", nzd);
  return R;
}

// ---------------- type A root vectors ----------------

struct RootVectorInfo {
  std::string name;
  std::pair<int, int> ij;
  int height = 0;
  std::vector<int> chi;  // fundamental weight coordinates mod l
};

// Root vectors in lex order with chi_gamma = sum_{simple a, E_a < E_g} (a,g) w_a
// - sum_{simple b, E_g < E_b} (b,g) w_b.
template <class F>
std::pair<TypeA<F>, std::vector<RootVectorInfo>> root_vectors_typeA(const F& K, int rank, int l, int cap) {
  auto T = build_typeA(K, rank, l, cap);
  std::vector<RootVectorInfo> out;
  const int N = int(T.roots.size());
  for (int g = 0; g < N; ++g) {
    RootVectorInfo I;
    I.name = T.Q->name(g);
    I.ij = T.roots[g];
    I.height = T.height[g];
    I.chi.assign(rank, 0);
    for (int s = 0; s < rank; ++s) {
      int a = T.simple_letter[s];
      if (a == g) continue;
      int pr = pairing_A(T.rdeg[a], T.rdeg[g]);
      I.chi[s] = int(mod_pos(a < g ? pr : -pr, l));
    }
    out.push_back(I);
  }
  return {T, out};
}

// Height-compatible sequence of root vectors (stable in lex order).
template <class F>
QRegularCandidate<F> typeA_candidate(const TypeA<F>& T, const std::vector<RootVectorInfo>& info) {
  const F& K = T.Q->field();
  QRegularCandidate<F> c;
  c.A = T.Q;
  c.name = "type A" + std::to_string(T.rank) + " root vectors, l=" + std::to_string(T.l);
  c.q = T.q;
  c.l = T.l;
  std::vector<int> order(info.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return info[a].height < info[b].height; });
  for (int g : order) {
    c.names.push_back(info[g].name);
    c.x.push_back(Poly<F>{{mletter(g), K.one()}});
    // pairing with the root-lattice grading: <alpha_s, w_t> = delta_st
    c.chi.push_back(info[g].chi);
  }
  c.fexp.assign(info.size(), T.l);
  return c;
}

// Skew polynomial algebra x_i x_j = q^{a_ij} x_j x_i with the sequence (x_1..x_n).
template <class F>
QRegularCandidate<F> skew_polynomial_candidate(const F& K, const IntMat& P, int l, int cap) {
  const int n = int(P.size());
  std::vector<std::string> names;
  std::vector<std::vector<int>> deg;
  for (int i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i + 1));
    std::vector<int> d(n, 0);
    d[i] = 1;
    deg.push_back(d);
  }
  auto A = std::make_shared<PbwAlgebra<F>>(K, names, deg, std::vector<int>(n, std::min(cap, 255)));
  auto q = root_of_unity(K, uint32_t(l));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < b; ++a) A->set_rule(b, a, {{mletter(a) + mletter(b), K.pow(q, mod_pos(P[b][a], l))}});
  QRegularCandidate<F> c;
  c.A = A;
  c.name = "skew polynomial n=" + std::to_string(n) + ", l=" + std::to_string(l);
  c.q = q;
  c.l = l;
  for (int j = 0; j < n; ++j) {
    c.names.push_back(names[j]);
    c.x.push_back(Poly<F>{{mletter(j), K.one()}});
    std::vector<int> chi(n);
    for (int i = 0; i < n; ++i) chi[i] = i == j ? 0 : int(mod_pos(P[i][j], l));  // alternating part
    c.chi.push_back(chi);
  }
  c.fexp.assign(n, l);
  return c;
}

inline int default_truncation(int top_height, int l) { return 2 * top_height * l; }

}  // namespace sv
