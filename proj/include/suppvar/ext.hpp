#pragma once
// Ext tables with operator actions, Yoneda products and Carlson modules.

#include "resolution.hpp"

namespace sv {

// Solves A y = b for many right-hand sides.
template <class F>
class LinearSolver {
 public:
  using E = typename F::elem;
  LinearSolver(const F& K, const Mat<F>& A) : K_(&K), m_(A.rows), n_(A.cols) {
    Mat<F> T(m_, n_ + m_, K.zero());
    for (size_t i = 0; i < m_; ++i) {
      for (size_t j = 0; j < n_; ++j) T(i, j) = A(i, j);
      T(i, n_ + i) = K.one();
    }
    piv_ = rref(K, T, n_);
    T_ = std::move(T);
  }
  // false when b is not in the column space
  bool solve(const std::vector<E>& b, std::vector<E>& y) const {
    std::vector<E> eb(m_, K_->zero());
    for (size_t i = 0; i < m_; ++i) {
      E s = K_->zero();
      for (size_t k = 0; k < m_; ++k)
        if (!K_->is_zero(b[k])) s = K_->add(s, K_->mul(T_(i, n_ + k), b[k]));
      eb[i] = s;
    }
    for (size_t i = piv_.size(); i < m_; ++i)
      if (!K_->is_zero(eb[i])) return false;
    y.assign(n_, K_->zero());
    for (size_t i = 0; i < piv_.size(); ++i) y[piv_[i]] = eb[i];
    return true;
  }
  size_t rank() const { return piv_.size(); }

 private:
  const F* K_;
  size_t m_, n_;
  Mat<F> T_;
  std::vector<size_t> piv_;
};

// Subspace with a complement basis, giving coordinates of vectors modulo a
// subspace B in a chosen basis of Z/B.
template <class F>
struct QuotientCoords {
  using E = typename F::elem;
  size_t ambient = 0, nb = 0, nq = 0;
  Mat<F> reps;             // nq rows: representatives
  std::vector<size_t> piv; // pivot columns of [B; reps]
  Mat<F> inv;              // inverse of the pivot block

  QuotientCoords() = default;
  // Z rows span the cocycles, B rows the coboundaries (B inside Z).
  QuotientCoords(const F& K, const Mat<F>& Z, const Mat<F>& B) {
    ambient = Z.cols;
    Echelon<F> ech(K, ambient);
    std::vector<std::vector<E>> rows;
    for (size_t i = 0; i < B.rows; ++i) {
      std::vector<E> v(B.row(i), B.row(i) + ambient);
      if (ech.insert(v)) rows.push_back(v);
    }
    nb = rows.size();
    std::vector<std::vector<E>> qr;
    for (size_t i = 0; i < Z.rows; ++i) {
      std::vector<E> v(Z.row(i), Z.row(i) + ambient);
      if (ech.insert(v)) {
        rows.push_back(v);
        qr.push_back(v);
      }
    }
    nq = qr.size();
    reps = Mat<F>(nq, ambient, K.zero());
    for (size_t i = 0; i < nq; ++i)
      for (size_t j = 0; j < ambient; ++j) reps(i, j) = qr[i][j];
    const size_t s = rows.size();
    Mat<F> S(s, ambient, K.zero());
    for (size_t i = 0; i < s; ++i)
      for (size_t j = 0; j < ambient; ++j) S(i, j) = rows[i][j];
    Mat<F> R = S;
    piv = rref(K, R);
    // x S = z  =>  x S_p = z_p ; inv = S_p^{-1}
    Mat<F> A(s, 2 * s, K.zero());
    for (size_t i = 0; i < s; ++i) {
      for (size_t k = 0; k < s; ++k) A(i, k) = S(i, piv[k]);
      A(i, s + i) = K.one();
    }
    rref(K, A, s);
    inv = Mat<F>(s, s, K.zero());
    for (size_t i = 0; i < s; ++i)
      for (size_t k = 0; k < s; ++k) inv(i, k) = A(i, s + k);
  }
  // coordinates in Z/B of a cocycle z
  std::vector<E> coords(const F& K, const std::vector<E>& z) const {
    const size_t s = nb + nq;
    std::vector<E> out(nq, K.zero());
    for (size_t t = 0; t < nq; ++t) {
      E acc = K.zero();
      // x = z_p * inv ; we need x[nb + t] = sum_k z[piv[k]] * inv(k, nb+t)
      for (size_t k = 0; k < s; ++k)
        if (!K.is_zero(z[piv[k]])) acc = K.add(acc, K.mul(z[piv[k]], inv(k, nb + t)));
      out[t] = acc;
    }
    return out;
  }
};

// ---------------- Ext(V, k) with all labels, i.e. Ext_u(V, Lambda) ----------------

template <class F>
struct ExtToSimples {
  std::shared_ptr<const Resolution<F>> res;
  int D = 0;
  std::vector<size_t> dims;                       // r_n
  std::vector<std::vector<Mat<F>>> theta;         // [n][i] : Ext^n -> Ext^{n+2}
};

template <class F>
ExtToSimples<F> ext_to_simples(std::shared_ptr<const Resolution<F>> Rs) {
  ExtToSimples<F> E;
  E.res = Rs;
  E.D = Rs->D;
  E.dims = Rs->ranks;
  E.theta.resize(E.D + 1);
  for (int n = 0; n + 2 <= E.D; ++n) E.theta[n] = theta_on_ext_k(*Rs, n);
  return E;
}

template <class F>
ExtToSimples<F> ext_to_simples(const FdModule<F>& V, int D) {
  return ext_to_simples(std::make_shared<const Resolution<F>>(minimal_resolution(V, D)));
}

// ---------------- Ext(V, W) ----------------

template <class F>
struct ExtTable {
  using E = typename F::elem;
  std::shared_ptr<const Resolution<F>> res;
  FdModule<F> W;
  bool equivariant = false;  // only label-preserving cochains (Ext over u)
  int D = 0;                 // Ext computed in degrees 0..D
  std::vector<size_t> dims;
  // cochain index (generator j, basis vector w of W)
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> cidx;
  std::vector<std::vector<long>> cpos;  // [n][j*dimW + w] -> position or -1
  std::vector<QuotientCoords<F>> quot;
  std::vector<SpMat<F>> rhoW;           // action of fiber basis elements on W

  size_t cdim(int n) const { return cidx[n].size(); }
};

namespace detail {

template <class F>
SpMat<F> rho_of(const ExtTable<F>& T, const SVec<F>& e) {
  const F& K = T.W.K();
  SpMat<F> M(T.W.dim, T.W.dim);
  for (auto& [b, c] : e) M = sp_add(K, M, T.rhoW[b], c);
  return M;
}

// Matrix of phi -> (sum_i C_{ij} phi_i)_j from cochains in degree src to degree dst,
// where cols[j] lists (i, C_ij) with C_ij in R.
template <class F>
Mat<F> cochain_map(const ExtTable<F>& T, int src, int dst, const std::vector<RCol<F>>& cols) {
  const F& K = T.W.K();
  Mat<F> M(T.cdim(dst), T.cdim(src), K.zero());
  const size_t dw = T.W.dim;
  for (size_t j = 0; j < cols.size(); ++j)
    for (auto& [i, e] : cols[j]) {
      SpMat<F> rho = rho_of(T, e);
      for (uint32_t w = 0; w < dw; ++w) {
        long c = T.cpos[src][i * dw + w];
        if (c < 0) continue;
        for (auto& [w2, v] : rho.col[w]) {
          long r = T.cpos[dst][j * dw + w2];
          if (r < 0) continue;
          M(r, c) = K.add(M(r, c), v);
        }
      }
    }
  return M;
}

}  // namespace detail

// Ext^n(V, W) for n <= D (V resolved to D + 1).
template <class F>
ExtTable<F> ext_table(std::shared_ptr<const Resolution<F>> Rs, const FdModule<F>& W, bool equivariant) {
  const F& K = W.K();
  ExtTable<F> T;
  T.res = Rs;
  T.W = W;
  T.equivariant = equivariant;
  T.D = Rs->D - 1;
  const auto& H = *Rs->H;
  const size_t dR = H.local->dim();
  for (size_t b = 0; b < dR; ++b) T.rhoW.push_back(act_matrix(W, b));
  const size_t dw = W.dim;
  T.cidx.assign(Rs->D + 1, {});
  T.cpos.assign(Rs->D + 1, {});
  for (int n = 0; n <= Rs->D; ++n) {
    T.cpos[n].assign(Rs->ranks[n] * dw, -1);
    for (uint32_t j = 0; j < Rs->ranks[n]; ++j)
      for (uint32_t w = 0; w < dw; ++w) {
        if (equivariant && W.label[w] != Rs->gen_label[n][j]) continue;
        T.cpos[n][j * dw + w] = long(T.cidx[n].size());
        T.cidx[n].push_back({j, w});
      }
  }
  // coboundary delta^n : C^{n-1} -> C^n
  std::vector<Mat<F>> delta(Rs->D + 1);
  for (int n = 1; n <= Rs->D; ++n) delta[n] = detail::cochain_map(T, n - 1, n, Rs->d[n]);
  T.dims.assign(T.D + 1, 0);
  T.quot.resize(T.D + 1);
  for (int n = 0; n <= T.D; ++n) {
    Mat<F> Z = T.cdim(n + 1) ? right_kernel(K, delta[n + 1]) : identity(K, T.cdim(n));
    Mat<F> B(0, T.cdim(n), K.zero());
    if (n >= 1 && T.cdim(n - 1)) B = transpose(delta[n]);
    T.quot[n] = QuotientCoords<F>(K, Z, B);
    T.dims[n] = T.quot[n].nq;
  }
  return T;
}

template <class F>
ExtTable<F> ext_table(const FdModule<F>& V, const FdModule<F>& W, int D, bool equivariant = false) {
  auto Rs = std::make_shared<const Resolution<F>>(minimal_resolution(V, D + 1));
  return ext_table(Rs, W, equivariant);
}

// Operators theta_i on Ext^n(V, W) -> Ext^{n+2}(V, W) for a lift.
template <class F>
std::vector<Mat<F>> theta_on_ext(const ExtTable<F>& T, const LiftedResolution<F>& L, int n) {
  const F& K = T.W.K();
  const int nf = T.res->H->local->num_f();
  std::vector<Mat<F>> out;
  if (n + 2 > T.D) return out;
  auto chain = theta_chain(L, n);
  for (int f = 0; f < nf; ++f) {
    Mat<F> M = detail::cochain_map(T, n, n + 2, chain[f]);
    Mat<F> O(T.dims[n + 2], T.dims[n], K.zero());
    for (size_t c = 0; c < T.dims[n]; ++c) {
      std::vector<typename F::elem> z(T.cdim(n + 2), K.zero());
      for (size_t r = 0; r < M.rows; ++r)
        for (size_t k = 0; k < M.cols; ++k)
          if (!K.is_zero(T.quot[n].reps(c, k))) z[r] = K.add(z[r], K.mul(M(r, k), T.quot[n].reps(c, k)));
      auto co = T.quot[n + 2].coords(K, z);
      for (size_t r = 0; r < co.size(); ++r) O(r, c) = co[r];
    }
    out.push_back(O);
  }
  return out;
}

template <class F>
bool mat_equal(const F& K, const Mat<F>& A, const Mat<F>& B) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (size_t i = 0; i < A.a.size(); ++i)
    if (!K.eq(A.a[i], B.a[i])) return false;
  return true;
}

// ---------------- chain lifts and Yoneda products ----------------

// Chain map lifting zeta : P^V_m -> k (given on generators; components
// outside the label of the target generator must vanish) to maps
// P^V_{m+s} -> P^k_s, s = 0..t. Result [s][j] is a column over R.
template <class F>
std::vector<std::vector<RCol<F>>> chain_lift(const Resolution<F>& RV, const Resolution<F>& Rk, int m,
                                             const std::vector<typename F::elem>& zeta, int t) {
  const F& K = RV.K();
  const auto& R = *RV.H->local;
  const size_t dR = R.dim();
  std::vector<std::vector<RCol<F>>> out(t + 1);
  if (Rk.ranks[0] != 1) throw std::invalid_argument("target must be a cyclic module");
  for (size_t j = 0; j < RV.rank(m); ++j) {
    RCol<F> c;
    if (!K.is_zero(zeta[j])) c.push_back({0, {{0, zeta[j]}}});
    out[0].push_back(c);
  }
  for (int s = 1; s <= t; ++s) {
    if (m + s > RV.D || s > Rk.D) throw std::invalid_argument("resolution too short for the lift");
    // dense matrix of d^k_s : P_s -> P_{s-1}
    const size_t rows = Rk.ranks[s - 1] * dR, cols = Rk.ranks[s] * dR;
    Mat<F> A(rows, cols, K.zero());
    for (size_t j = 0; j < Rk.ranks[s]; ++j)
      for (auto& [i, e] : Rk.d[s][j])
        for (size_t b = 0; b < dR; ++b)
          for (auto& [u, c] : R.mul(SVec<F>{{uint32_t(b), K.one()}}, e)) A(i * dR + u, j * dR + b) = K.add(A(i * dR + u, j * dR + b), c);
    LinearSolver<F> solver(K, A);
    for (size_t j = 0; j < RV.rank(m + s); ++j) {
      std::vector<typename F::elem> rhs(rows, K.zero());
      for (auto& [i, e] : RV.d[m + s][j])
        for (auto& [k, g] : out[s - 1][i]) {
          auto pr = R.mul(e, g);
          for (auto& [u, c] : pr) rhs[k * dR + u] = K.add(rhs[k * dR + u], c);
        }
      std::vector<typename F::elem> y;
      if (!solver.solve(rhs, y)) throw std::runtime_error("chain lift failed: zeta is not a cocycle");
      RCol<F> c;
      for (size_t k = 0; k < Rk.ranks[s]; ++k) {
        SVec<F> e;
        for (size_t u = 0; u < dR; ++u)
          if (!K.is_zero(y[k * dR + u])) e.push_back({uint32_t(u), y[k * dR + u]});
        if (!e.empty()) c.push_back({uint32_t(k), e});
      }
      out[s].push_back(c);
    }
  }
  return out;
}

// Yoneda product xi . zeta in Ext^{m+t}(V, k), xi in Ext^t(k, k), zeta in Ext^m(V, k).
template <class F>
std::vector<typename F::elem> yoneda(const Resolution<F>& RV, const Resolution<F>& Rk, int m,
                                     const std::vector<typename F::elem>& zeta, int t,
                                     const std::vector<typename F::elem>& xi) {
  const F& K = RV.K();
  auto lift = chain_lift(RV, Rk, m, zeta, t);
  std::vector<typename F::elem> out(RV.rank(m + t), K.zero());
  for (size_t j = 0; j < out.size(); ++j)
    for (auto& [k, e] : lift[t][j])
      for (auto& [u, c] : e)
        if (u == 0) out[j] = K.add(out[j], K.mul(xi[k], c));
  return out;
}

// ---------------- Carlson modules ----------------

template <class F>
struct CarlsonResult {
  FdModule<F> module;
  bool degenerate = false;
};

// Kernel of the map Omega^d k -> k_lambda given by a class zeta in Ext^d(k, k)
// (coordinates in the dual basis of the generators of P_d).
template <class F>
CarlsonResult<F> carlson_module(const Resolution<F>& Rk, int d, const std::vector<typename F::elem>& zeta,
                                std::string name = {}) {
  const F& K = Rk.K();
  const auto& R = *Rk.H->local;
  const size_t dR = R.dim();
  if (d < 1 || d > Rk.D) throw std::invalid_argument("class degree outside the resolution");
  if (zeta.size() != Rk.ranks[d]) throw std::invalid_argument("class has the wrong length");
  FdModule<F> P = resolution_term(Rk, d - 1);
  auto image = [&](size_t j) {
    SVec<F> v;
    for (auto& [i, e] : Rk.d[d][j])
      for (auto& [b, c] : e) v.push_back({uint32_t(i * dR + b), c});
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
  };
  long p = -1;
  for (size_t j = 0; j < zeta.size(); ++j)
    if (!K.is_zero(zeta[j])) {
      if (p < 0) p = long(j);
      else if (Rk.gen_label[d][j] != Rk.gen_label[d][p])
        throw std::invalid_argument("class is not homogeneous for the grouplike grading");
    }
  if (name.empty()) {
    name = "L(";
    for (size_t j = 0; j < zeta.size(); ++j) name += (j ? "," : "") + K.str(zeta[j]);
    name += ")";
  }
  std::vector<SVec<F>> seeds;
  Scatter<F> sc(K, P.dim);
  for (size_t j = 0; j < zeta.size(); ++j) {
    auto g = image(j);
    for (int x : R.gens()) {
      auto y = sp_apply(K, P.act[x], g, sc);
      if (!y.empty()) seeds.push_back(y);
    }
    if (p < 0 || long(j) == p) continue;
    if (K.is_zero(zeta[j])) {
      seeds.push_back(g);
    } else {
      // e_j - (zeta_j / zeta_p) e_p
      Scatter<F> acc(K, P.dim);
      acc.axpy(g, K.one());
      acc.axpy(image(p), K.neg(K.mul(zeta[j], K.inv(zeta[p]))));
      auto v = acc.take();
      if (!v.empty()) seeds.push_back(v);
    }
  }
  CarlsonResult<F> out;
  if (p < 0) {
    out.degenerate = true;
    for (size_t j = 0; j < zeta.size(); ++j) seeds.push_back(image(j));
    out.module = submodule(P, seeds, "Omega^" + std::to_string(d) + "(k)");
  } else {
    out.module = submodule(P, seeds, name);
  }
  return out;
}

// ---------------- polynomial structure of Ext(k, k) ----------------

inline uint64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * uint64_t(n - k + i) / uint64_t(i);
  return r;
}

// Monomials of degree k in n variables, lex order.
inline std::vector<std::vector<int>> monomials(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      a[i] = left;
      out.push_back(a);
      return;
    }
    for (int e = left; e >= 0; --e) {
      a[i] = e;
      rec(i + 1, left - e);
    }
  };
  if (n > 0) rec(0, k);
  return out;
}

// Image of a vector under theta^alpha on Ext(V, k), starting in degree n.
template <class F>
std::vector<typename F::elem> apply_theta_mono(const F& K, const ExtToSimples<F>& E, int n, std::vector<typename F::elem> v,
                                               const std::vector<int>& alpha) {
  for (int i = int(alpha.size()) - 1; i >= 0; --i)
    for (int e = 0; e < alpha[i]; ++e) {
      const auto& M = E.theta[n][i];
      std::vector<typename F::elem> w(M.rows, K.zero());
      for (size_t r = 0; r < M.rows; ++r)
        for (size_t c = 0; c < M.cols; ++c)
          if (!K.is_zero(v[c])) w[r] = K.add(w[r], K.mul(M(r, c), v[c]));
      v = std::move(w);
      n += 2;
    }
  return v;
}

template <class F>
CheckReport ext_ring_polynomial_check(std::shared_ptr<const HopfAlgebra<F>> H, int D) {
  const F& K = H->K;
  CheckReport rep;
  rep.subject = "Ext(k,k) of " + H->name + " up to degree " + std::to_string(D);
  auto Rk = std::make_shared<const Resolution<F>>(minimal_resolution(trivial_module(H), D));
  auto E = ext_to_simples(Rk);
  const int n = H->local->num_f();
  // 1. polynomial image of the operators
  bool injective = true;
  std::string where;
  for (int k = 1; 2 * k <= D && injective; ++k) {
    auto mons = monomials(n, k);
    Mat<F> M(mons.size(), E.dims[2 * k], K.zero());
    for (size_t a = 0; a < mons.size(); ++a) {
      auto v = apply_theta_mono(K, E, 0, std::vector<typename F::elem>{K.one()}, mons[a]);
      for (size_t c = 0; c < v.size(); ++c) M(a, c) = v[c];
    }
    if (rank(K, M) != mons.size()) injective = false, where = "degree " + std::to_string(2 * k);
  }
  rep.add("operator monomials independent on the unit class", injective, where);
  // 2. finite over the operators, with polynomial-times-exterior Hilbert series
  bool hilbert = true;
  std::string hdet;
  for (int d = 0; d <= D; ++d) {
    uint64_t expect = 0;
    for (int j = d % 2; j <= std::min(d, n); j += 2) expect += binom(n, j) * binom((d - j) / 2 + n - 1, n - 1);
    if (E.dims[d] != expect) {
      hilbert = false;
      hdet = "dim Ext^" + std::to_string(d) + " = " + std::to_string(E.dims[d]) + ", expected " + std::to_string(expect);
      break;
    }
    size_t img = 0;
    if (d >= 2) {
      Mat<F> S(E.dims[d], n * E.dims[d - 2], K.zero());
      for (int i = 0; i < n; ++i)
        for (size_t r = 0; r < E.dims[d]; ++r)
          for (size_t c = 0; c < E.dims[d - 2]; ++c) S(r, i * E.dims[d - 2] + c) = E.theta[d - 2][i](r, c);
      img = rank(K, S);
    }
    if (E.dims[d] - img != binom(n, d)) {
      hilbert = false;
      hdet = "generators over the operators in degree " + std::to_string(d) + ": " + std::to_string(E.dims[d] - img);
      break;
    }
  }
  rep.add("Hilbert series of a polynomial ring on the operators tensor an exterior algebra", hilbert, hdet);
  // 3. generated in degrees <= 2 under Yoneda products
  bool gen2 = true;
  std::string gdet;
  const int G = std::min(D, 6);
  {
    std::vector<std::vector<std::vector<typename F::elem>>> span(G + 1);
    auto unit = [&](int deg, size_t i) {
      std::vector<typename F::elem> v(E.dims[deg], K.zero());
      v[i] = K.one();
      return v;
    };
    for (int deg = 1; deg <= std::min(2, G); ++deg)
      for (size_t i = 0; i < E.dims[deg]; ++i) span[deg].push_back(unit(deg, i));
    for (int deg = 3; deg <= G; ++deg) {
      Echelon<F> ech(K, E.dims[deg]);
      for (int t = 1; t <= 2; ++t)
        for (auto& z : span[deg - t])
          for (size_t i = 0; i < E.dims[t]; ++i) {
            auto prod = yoneda(*Rk, *Rk, deg - t, z, t, unit(t, i));
            if (ech.insert(prod)) span[deg].push_back(prod);
          }
      if (span[deg].size() != E.dims[deg]) {
        gen2 = false;
        gdet = "degree " + std::to_string(deg);
        break;
      }
    }
  }
  rep.add("generated in degrees <= 2 (checked to degree " + std::to_string(G) + ")", gen2, gdet);
  // 4. degree-one classes square to zero, so the reduced ring is the operator image
  bool nil = true;
  if (D >= 2)
    for (size_t i = 0; i < E.dims[1]; ++i) {
      std::vector<typename F::elem> z(E.dims[1], K.zero());
      z[i] = K.one();
      auto sq = yoneda(*Rk, *Rk, 1, z, 1, z);
      for (auto& c : sq)
        if (!K.is_zero(c)) nil = false;
    }
  rep.add("degree-one classes square to zero", nil);
  return rep;
}

}  // namespace sv
