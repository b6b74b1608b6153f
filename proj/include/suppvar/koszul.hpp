#pragma once
// q-Koszul resolutions over skew polynomial integrations, and the twisted
// product A_Z (x)^t Hom_Q(F, -) compared against Ext over the fiber.

#include <bit>

#include "ext.hpp"

namespace sv {

template <class F>
struct QKoszulComplex {
  using E = typename F::elem;
  std::shared_ptr<const HopfAlgebra<F>> H;
  int n = 0;
  std::vector<int> fexp;               // f_i = x_i^{fexp[i]}
  std::vector<std::vector<E>> q;       // x_i x_j = q[i][j] x_j x_i
  std::vector<std::vector<uint32_t>> subsets;  // per exterior degree, masks in increasing order
  std::vector<std::vector<int>> pos;   // mask -> index within its degree

  size_t rank(int r) const { return r >= 0 && r <= n ? subsets[r].size() : 0; }

  // Coefficient of removing the j-th smallest element of S (j from 1), for the
  // differential with the letter multiplied from the left: (-1)^{j+1} prod_{t<j} qq[i_j][i_t].
  E coef(uint32_t S, int j, bool transpose) const {
    const F& K = H->K;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (S >> i & 1) idx.push_back(i);
    E c = (j % 2 == 1) ? K.one() : K.neg(K.one());
    const int ij = idx[j - 1];
    for (int t = 0; t < j - 1; ++t) c = K.mul(c, transpose ? q[idx[t]][ij] : q[ij][idx[t]]);
    return c;
  }
  // Position (from 1) of element i inside S.
  static int position(uint32_t S, int i) { return std::popcount(S & ((1u << i) - 1)) + 1; }

  // q^{(e_k, chi_v)} for v = d_S.
  E twist(int k, uint32_t S) const {
    const F& K = H->K;
    E c = K.one();
    for (int i = 0; i < n; ++i)
      if ((S >> i & 1) && i != k) c = K.mul(c, q[k][i]);
    return c;
  }
};

// Throws if the integration is not skew polynomial on its letters.
template <class F>
QKoszulComplex<F> q_koszul_resolution(std::shared_ptr<const HopfAlgebra<F>> H) {
  const F& K = H->K;
  const auto& Q = H->local->integration();
  QKoszulComplex<F> C;
  C.H = H;
  C.n = Q.letters();
  C.q.assign(C.n, std::vector<typename F::elem>(C.n, K.one()));
  for (int b = 0; b < C.n; ++b)
    for (int a = 0; a < b; ++a) {
      if (!Q.has_rule(b, a)) throw std::invalid_argument("integration is not skew polynomial");
      const auto& r = Q.rule(b, a);
      if (r.size() != 1 || r[0].first != (mletter(a) + mletter(b)))
        throw std::invalid_argument("integration is not skew polynomial: " + Q.name(b) + Q.name(a));
      C.q[b][a] = r[0].second;
      C.q[a][b] = K.inv(r[0].second);
    }
  if (H->local->gens().size() != size_t(C.n)) throw std::invalid_argument("integration has derived letters");
  for (int i = 0; i < C.n; ++i) C.fexp.push_back(H->local->f_exponent(i));
  C.subsets.resize(C.n + 1);
  C.pos.assign(C.n + 1, std::vector<int>(size_t(1) << C.n, -1));
  for (uint32_t S = 0; S < (1u << C.n); ++S) {
    int r = std::popcount(S);
    C.pos[r][S] = int(C.subsets[r].size());
    C.subsets[r].push_back(S);
  }
  return C;
}

namespace detail {

// Elements of E (x) Q as (mask, polynomial) maps.
template <class F>
using EQ = std::map<uint32_t, Poly<F>>;

template <class F>
void eq_add(const F& K, EQ<F>& a, uint32_t S, Poly<F> p, const typename F::elem& c) {
  auto& t = a[S];
  for (auto& [m, v] : p) t.push_back({m, K.mul(c, v)});
  normalize(K, t);
}

template <class F>
bool eq_zero(const EQ<F>& a) {
  for (auto& [S, p] : a)
    if (!p.empty()) return false;
  return true;
}

// d_F(v (x) a) with the letter multiplied from the left onto a.
template <class F>
EQ<F> apply_dF(const QKoszulComplex<F>& C, const EQ<F>& x) {
  const F& K = C.H->K;
  const auto& Q = C.H->local->integration();
  EQ<F> out;
  for (auto& [S, a] : x) {
    int j = 0;
    for (int i = 0; i < C.n; ++i) {
      if (!(S >> i & 1)) continue;
      ++j;
      auto c = C.coef(S, j, false);
      eq_add<F>(K, out, S & ~(1u << i), Q.mul(Poly<F>{{mletter(i), K.one()}}, a), c);
    }
  }
  return out;
}

template <class F>
EQ<F> apply_left(const QKoszulComplex<F>& C, int k, const EQ<F>& x) {
  const F& K = C.H->K;
  const auto& Q = C.H->local->integration();
  EQ<F> out;
  for (auto& [S, a] : x) eq_add<F>(K, out, S, Q.mul(Poly<F>{{mletter(k), K.one()}}, a), C.twist(k, S));
  return out;
}

}  // namespace detail

template <class F>
CheckReport check_q_koszul(const QKoszulComplex<F>& C) {
  const F& K = C.H->K;
  CheckReport rep;
  rep.subject = "q-Koszul complex of " + C.H->name;
  std::string ranks;
  bool exterior = true;
  for (int r = 0; r <= C.n; ++r) {
    ranks += (r ? "," : "") + std::to_string(C.rank(r));
    if (C.rank(r) != binom(C.n, r)) exterior = false;
  }
  rep.add("exterior ranks", exterior, ranks);
  bool sq = true, bim = true, rel = true;
  for (uint32_t S = 0; S < (1u << C.n); ++S) {
    detail::EQ<F> v{{S, Poly<F>{{Mono(0), K.one()}}}};
    if (!detail::eq_zero<F>(detail::apply_dF(C, detail::apply_dF(C, v)))) sq = false;
    // d_F(b . (v (x) 1)) = b . d_F(v (x) 1)
    for (int k = 0; k < C.n; ++k) {
      auto lhs = detail::apply_dF(C, detail::apply_left(C, k, v));
      auto rhs = detail::apply_left(C, k, detail::apply_dF(C, v));
      for (auto& [T, p] : rhs) detail::eq_add<F>(K, lhs, T, p, K.neg(K.one()));
      if (!detail::eq_zero<F>(lhs)) bim = false;
    }
    // the twisted left action respects x_i x_j = q_ij x_j x_i
    for (int i = 0; i < C.n; ++i)
      for (int j = 0; j < C.n; ++j) {
        if (i == j) continue;
        auto a = detail::apply_left(C, i, detail::apply_left(C, j, v));
        auto b = detail::apply_left(C, j, detail::apply_left(C, i, v));
        for (auto& [T, p] : b) detail::eq_add<F>(K, a, T, p, K.neg(C.q[i][j]));
        if (!detail::eq_zero<F>(a)) rel = false;
      }
  }
  rep.add("d squares to zero", sq);
  rep.add("differential is a bimodule map", bim);
  rep.add("left action respects relations", rel);
  return rep;
}

// Hom_Q(F', N) for the left resolution F' (the same formula for the opposite
// algebra), with the operators y_i given by precomposition with the
// null-homotopies of multiplication by f_i.
template <class F>
struct KoszulHom {
  using E = typename F::elem;
  std::vector<size_t> dims;                // per cohomological degree r = 0..n
  std::vector<Mat<F>> delta;               // delta[r]: degree r -> r + 1
  std::vector<std::vector<Mat<F>>> y;      // y[r][i]: degree r -> r - 1
};

template <class F>
KoszulHom<F> koszul_hom(const QKoszulComplex<F>& C, const FdModule<F>& N) {
  const F& K = C.H->K;
  const int n = C.n;
  const size_t d = N.dim;
  std::vector<Mat<F>> rho;
  for (int i = 0; i < n; ++i) rho.push_back(sp_to_dense(K, N.act[i]));
  KoszulHom<F> Hm;
  for (int r = 0; r <= n; ++r) Hm.dims.push_back(C.rank(r) * d);
  // (delta phi)(e_T) = sum_j c'(T, j) rho(x_{t_j}) phi(e_{T - t_j})
  Hm.delta.resize(n + 1);
  for (int r = 0; r < n; ++r) {
    Mat<F> M(Hm.dims[r + 1], Hm.dims[r], K.zero());
    for (size_t ti = 0; ti < C.rank(r + 1); ++ti) {
      uint32_t T = C.subsets[r + 1][ti];
      int j = 0;
      for (int i = 0; i < n; ++i) {
        if (!(T >> i & 1)) continue;
        ++j;
        auto c = C.coef(T, j, true);
        size_t si = C.pos[r][T & ~(1u << i)];
        for (size_t a = 0; a < d; ++a)
          for (size_t b = 0; b < d; ++b)
            M(ti * d + a, si * d + b) = K.add(M(ti * d + a, si * d + b), K.mul(c, rho[i](a, b)));
      }
    }
    Hm.delta[r] = std::move(M);
  }
  // s_i(e_S) = x_i^{e_i - 1} e_{S+i} / c'(S+i, i) for i not in S
  Hm.y.resize(n + 1);
  for (int r = 1; r <= n; ++r)
    for (int i = 0; i < n; ++i) {
      Mat<F> M(Hm.dims[r - 1], Hm.dims[r], K.zero());
      Mat<F> P = identity(K, d);
      for (int e = 0; e + 1 < C.fexp[i]; ++e) P = matmul(K, P, rho[i]);
      for (size_t si = 0; si < C.rank(r - 1); ++si) {
        uint32_t S = C.subsets[r - 1][si];
        if (S >> i & 1) continue;
        uint32_t T = S | (1u << i);
        auto g = K.inv(C.coef(T, QKoszulComplex<F>::position(T, i), true));
        size_t ti = C.pos[r][T];
        for (size_t a = 0; a < d; ++a)
          for (size_t b = 0; b < d; ++b) M(si * d + a, ti * d + b) = K.mul(g, P(a, b));
      }
      Hm.y[r].push_back(std::move(M));
    }
  return Hm;
}

template <class F>
CheckReport check_koszul_hom(const KoszulHom<F>& Hm, const F& K) {
  CheckReport rep;
  const int n = int(Hm.dims.size()) - 1;
  auto zero = [&](const Mat<F>& M) {
    for (auto& x : M.a)
      if (!K.is_zero(x)) return false;
    return true;
  };
  auto add = [&](Mat<F> A, const Mat<F>& B) {
    for (size_t i = 0; i < A.a.size(); ++i) A.a[i] = K.add(A.a[i], B.a[i]);
    return A;
  };
  bool dd = true, yd = true, yy = true;
  for (int r = 0; r + 2 <= n; ++r)
    if (!zero(matmul(K, Hm.delta[r + 1], Hm.delta[r]))) dd = false;
  for (int r = 0; r <= n; ++r)
    for (size_t i = 0; i < (r ? Hm.y[r].size() : 0); ++i) {
      // y delta + delta y on degree r
      Mat<F> S(Hm.dims[r], Hm.dims[r], K.zero());
      if (r < n) S = add(S, matmul(K, Hm.y[r + 1][i], Hm.delta[r]));
      if (r >= 1) S = add(S, matmul(K, Hm.delta[r - 1], Hm.y[r][i]));
      if (!zero(S)) yd = false;
    }
  for (int r = 2; r <= n; ++r)
    for (size_t i = 0; i < Hm.y[r].size(); ++i)
      for (size_t j = i; j < Hm.y[r].size(); ++j) {
        auto S = matmul(K, Hm.y[r - 1][i], Hm.y[r][j]);
        if (i != j) S = add(S, matmul(K, Hm.y[r - 1][j], Hm.y[r][i]));
        if (!zero(S)) yy = false;
      }
  rep.add("hom differential squares to zero", dd);
  rep.add("operators anticommute with the differential", yd);
  rep.add("operators are exterior", yy);
  return rep;
}

// Cohomology of A_Z (x)^t M in total degrees 0..D, where A_Z = k[t_1..t_n]
// in degree 2 and M = Hom_Q(F', N) in degrees 0..n.
template <class F>
struct TwistedProduct {
  std::vector<size_t> dims;         // cohomology per total degree
  bool squares_to_zero = true;
};

template <class F>
TwistedProduct<F> twisted_product(const KoszulHom<F>& Hm, const F& K, int D) {
  const int n = int(Hm.dims.size()) - 1;
  // components of total degree t: (p, r) with 2p + r = t
  auto comps = [&](int t) {
    std::vector<std::pair<int, int>> c;
    for (int r = 0; r <= n; ++r)
      if (r <= t && (t - r) % 2 == 0) c.push_back({(t - r) / 2, r});
    return c;
  };
  std::map<std::vector<int>, size_t> dummy;
  auto mons_of = [&](int p) { return monomials(n, p); };
  auto offsets = [&](int t, std::vector<size_t>& off) {
    size_t s = 0;
    off.clear();
    for (auto [p, r] : comps(t)) {
      off.push_back(s);
      s += mons_of(p).size() * Hm.dims[r];
    }
    return s;
  };
  auto differential = [&](int t) {
    std::vector<size_t> o0, o1;
    size_t n0 = offsets(t, o0), n1 = offsets(t + 1, o1);
    Mat<F> M(n1, n0, K.zero());
    auto c0 = comps(t), c1 = comps(t + 1);
    auto find1 = [&](int p, int r) {
      for (size_t i = 0; i < c1.size(); ++i)
        if (c1[i] == std::make_pair(p, r)) return long(i);
      return -1L;
    };
    for (size_t a = 0; a < c0.size(); ++a) {
      auto [p, r] = c0[a];
      auto ms = mons_of(p);
      const size_t dr = Hm.dims[r];
      // 1 (x) delta
      if (r < n) {
        long b = find1(p, r + 1);
        const size_t dr1 = Hm.dims[r + 1];
        for (size_t m = 0; m < ms.size(); ++m)
          for (size_t i = 0; i < dr1; ++i)
            for (size_t j = 0; j < dr; ++j) M(o1[b] + m * dr1 + i, o0[a] + m * dr + j) = Hm.delta[r](i, j);
      }
      // sum_i t_i (x) y_i
      if (r >= 1) {
        long b = find1(p + 1, r - 1);
        auto ms1 = mons_of(p + 1);
        const size_t dr1 = Hm.dims[r - 1];
        for (size_t m = 0; m < ms.size(); ++m)
          for (int v = 0; v < n; ++v) {
            auto e = ms[m];
            e[v]++;
            size_t m1 = std::find(ms1.begin(), ms1.end(), e) - ms1.begin();
            const auto& Y = Hm.y[r][v];
            for (size_t i = 0; i < dr1; ++i)
              for (size_t j = 0; j < dr; ++j)
                M(o1[b] + m1 * dr1 + i, o0[a] + m * dr + j) = K.add(M(o1[b] + m1 * dr1 + i, o0[a] + m * dr + j), Y(i, j));
          }
      }
    }
    return M;
  };
  TwistedProduct<F> T;
  std::vector<Mat<F>> d;
  std::vector<size_t> sz;
  for (int t = 0; t <= D + 1; ++t) {
    std::vector<size_t> o;
    sz.push_back(offsets(t, o));
  }
  for (int t = 0; t <= D; ++t) d.push_back(differential(t));
  for (int t = 0; t + 1 <= D; ++t) {
    auto P = matmul(K, d[t + 1], d[t]);
    for (auto& x : P.a)
      if (!K.is_zero(x)) T.squares_to_zero = false;
  }
  std::vector<size_t> rk;
  for (int t = 0; t <= D; ++t) rk.push_back(d[t].rows && d[t].cols ? rank(K, d[t]) : 0);
  for (int t = 0; t <= D; ++t) T.dims.push_back(sz[t] - rk[t] - (t ? rk[t - 1] : 0));
  return T;
}

struct TwttReport {
  std::string V, W;
  std::vector<size_t> twisted, ext;
  std::vector<bool> equal;
  CheckReport checks;
  bool ok() const {
    for (bool e : equal)
      if (!e) return false;
    return checks.ok();
  }
};

// Ext_R(V, W) against the cohomology of A_Z (x)^t Hom_Q(F', W (x) V*).
template <class F>
TwttReport verify_twtt(const FdModule<F>& V, const FdModule<F>& W, int D) {
  const F& K = V.K();
  auto C = q_koszul_resolution(V.H);
  TwttReport R;
  R.V = V.provenance;
  R.W = W.provenance;
  R.checks = check_q_koszul(C);
  auto N = tensor(W, dual(V));
  auto Hm = koszul_hom(C, N);
  auto hc = check_koszul_hom(Hm, K);
  for (auto& it : hc.items) R.checks.items.push_back(it);
  auto T = twisted_product(Hm, K, D);
  R.checks.add("twisted differential squares to zero", T.squares_to_zero);
  R.twisted = T.dims;
  auto E = ext_table(V, W, D, false);
  R.ext = E.dims;
  for (int i = 0; i <= D; ++i) R.equal.push_back(R.twisted[i] == R.ext[i]);
  return R;
}

// Ext_Q(V, W) from the finite complex Hom_Q(F', W (x) V*); concentrated in degrees <= n.
template <class F>
std::vector<size_t> ext_over_integration(const FdModule<F>& V, const FdModule<F>& W) {
  const F& K = V.K();
  auto C = q_koszul_resolution(V.H);
  auto Hm = koszul_hom(C, tensor(W, dual(V)));
  const int n = C.n;
  std::vector<size_t> rk(n + 1, 0), out;
  for (int r = 0; r < n; ++r) rk[r] = rank(K, Hm.delta[r]);
  for (int r = 0; r <= n; ++r) out.push_back(Hm.dims[r] - rk[r] - (r ? rk[r - 1] : 0));
  return out;
}

}  // namespace sv
