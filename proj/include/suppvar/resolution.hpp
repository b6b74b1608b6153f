#pragma once
// Minimal projective resolutions over the fiber algebra R, computed one
// grading key at a time, and the cohomological operators obtained from
// squaring lifted differentials.

#include <chrono>
#include <map>
#include <random>

#include "module.hpp"

namespace sv {

struct ResolutionError : std::runtime_error {
  int last_degree;
  ResolutionError(const std::string& m, int last) : std::runtime_error(m), last_degree(last) {}
};

// Entry list of one column of a matrix over R: (row, element of R).
template <class F>
using RCol = std::vector<std::pair<uint32_t, SVec<F>>>;

template <class F>
struct Resolution {
  std::shared_ptr<const HopfAlgebra<F>> H;
  std::string provenance;
  int D = 0;
  std::vector<size_t> ranks;                            // r_0..r_D
  std::vector<std::vector<uint32_t>> gen_label;         // per degree, per generator
  std::vector<std::vector<std::vector<int>>> gen_deg;   // empty inner vectors when ungraded
  bool graded = false;
  std::vector<SVec<F>> aug;                             // P_0 generators -> V
  std::vector<std::vector<RCol<F>>> d;                  // d[n][j]: P_n -> P_{n-1}, n >= 1
  size_t module_dim = 0;

  const F& K() const { return H->K; }
  size_t dR() const { return H->local->dim(); }
  size_t rank(int n) const { return n >= 0 && n <= D ? ranks[n] : 0; }
};

namespace detail {

template <class F>
FdModule<F> free_sum(std::shared_ptr<const HopfAlgebra<F>> H, const std::vector<uint32_t>& labs,
                     const std::vector<std::vector<int>>& degs, bool graded) {
  const auto& R = *H->local;
  const size_t dR = R.dim(), r = labs.size();
  auto P = blank_module(H, r * dR, "free");
  std::vector<std::vector<int>> deg;
  for (size_t j = 0; j < r; ++j)
    for (size_t b = 0; b < dR; ++b) {
      P.label[j * dR + b] = H->kind == HopfKind::Bosonized ? H->label_add(H->basis_label(b), labs[j]) : labs[j];
      if (graded) {
        auto dd = degs[j];
        const auto& bd = R.deg(b);
        if (dd.size() == bd.size()) {
          for (size_t k = 0; k < dd.size(); ++k) dd[k] += bd[k];
        } else {
          int t = 0;
          for (int v : bd) t += v;
          dd[0] += t;
        }
        deg.push_back(dd);
      }
    }
  if (graded) P.deg = deg;
  for (int x = 0; x < R.letters(); ++x)
    for (size_t j = 0; j < r; ++j)
      for (size_t b = 0; b < dR; ++b) {
        auto c = R.left_letter(x, b);
        for (auto& [i, v] : c) i += uint32_t(j * dR);
        P.act[x].col[j * dR + b] = c;
      }
  return P;
}

template <class F>
std::vector<typename F::elem> densify(const F& K, const SVec<F>& v, const std::vector<uint32_t>& local, size_t n) {
  std::vector<typename F::elem> d(n, K.zero());
  for (auto& [i, c] : v) d[local[i]] = c;
  return d;
}

}  // namespace detail

// Free module P_n of a resolution as an FdModule.
template <class F>
FdModule<F> resolution_term(const Resolution<F>& Rs, int n) {
  return detail::free_sum(Rs.H, Rs.gen_label[n], Rs.gen_deg[n], Rs.graded);
}

// Minimal resolution of V up to homological degree D.
template <class F>
Resolution<F> minimal_resolution(const FdModule<F>& V, int D, size_t max_dim = 4'000'000) {
  const F& K = V.K();
  const auto& R = *V.H->local;
  const size_t dR = R.dim();
  Resolution<F> Rs;
  Rs.H = V.H;
  Rs.provenance = V.provenance;
  Rs.D = D;
  Rs.graded = V.deg.has_value();
  Rs.module_dim = V.dim;
  Rs.ranks.assign(D + 1, 0);
  Rs.gen_label.assign(D + 1, {});
  Rs.gen_deg.assign(D + 1, {});
  Rs.d.assign(D + 1, {});

  FdModule<F> A = V;  // ambient containing Omega
  std::vector<SVec<F>> omega;
  for (size_t i = 0; i < V.dim; ++i) omega.push_back({{uint32_t(i), K.one()}});
  Scatter<F> sc(K, 1);

  for (int n = 0; n <= D; ++n) {
    if (omega.empty()) break;
    if (A.dim > max_dim) throw ResolutionError("resolution exceeds size guard at degree " + std::to_string(n), n - 1);
    const auto keys = module_keys(A);
    // group ambient indices by key
    std::map<std::vector<int>, std::vector<uint32_t>> groups;
    for (uint32_t i = 0; i < A.dim; ++i) groups[keys[i]].push_back(i);
    std::vector<uint32_t> local(A.dim);
    for (auto& [k, idx] : groups)
      for (uint32_t t = 0; t < idx.size(); ++t) local[idx[t]] = t;
    auto key_of = [&](const SVec<F>& v) -> const std::vector<int>& { return keys[v.front().first]; };

    // radical of Omega, per key
    sc = Scatter<F>(K, A.dim);
    std::map<std::vector<int>, Echelon<F>> ech;
    auto ech_for = [&](const std::vector<int>& k) -> Echelon<F>& {
      auto it = ech.find(k);
      if (it == ech.end()) it = ech.emplace(k, Echelon<F>(K, groups[k].size())).first;
      return it->second;
    };
    for (auto& w : omega)
      for (int x : R.gens()) {
        auto y = sp_apply(K, A.act[x], w, sc);
        if (y.empty()) continue;
        auto& k = key_of(y);
        ech_for(k).insert(detail::densify(K, y, local, groups[k].size()));
      }
    // minimal generators
    std::vector<SVec<F>> gens;
    for (auto& w : omega) {
      auto& k = key_of(w);
      if (ech_for(k).insert(detail::densify(K, w, local, groups[k].size()))) gens.push_back(w);
    }
    const size_t r = gens.size();
    Rs.ranks[n] = r;
    for (auto& g : gens) {
      const auto& k = key_of(g);
      Rs.gen_label[n].push_back(uint32_t(k[0]));
      Rs.gen_deg[n].push_back(std::vector<int>(k.begin() + 1, k.end()));
    }
    if (n == 0) {
      Rs.aug = gens;
    } else {
      for (auto& g : gens) {
        RCol<F> col;
        for (auto& [i, c] : g) {
          uint32_t blk = uint32_t(i / dR), b = uint32_t(i % dR);
          if (col.empty() || col.back().first != blk) col.push_back({blk, {}});
          col.back().second.push_back({b, c});
        }
        Rs.d[n].push_back(std::move(col));
      }
    }
    if (n == D) break;
    // kernel of P_n -> A, per key
    FdModule<F> P = resolution_term(Rs, n);
    const auto pkeys = module_keys(P);
    std::map<std::vector<int>, std::vector<uint32_t>> pgroups;
    for (uint32_t i = 0; i < P.dim; ++i) pgroups[pkeys[i]].push_back(i);
    std::vector<SVec<F>> images(P.dim);
    for (size_t j = 0; j < r; ++j)
      for (size_t b = 0; b < dR; ++b) images[j * dR + b] = act_basis(A, b, gens[j], sc);
    std::vector<SVec<F>> next;
    for (auto& [k, cols] : pgroups) {
      auto git = groups.find(k);
      const size_t rows = git == groups.end() ? 0 : git->second.size();
      Mat<F> M(rows, cols.size(), K.zero());
      for (size_t c = 0; c < cols.size(); ++c)
        for (auto& [i, v] : images[cols[c]]) M(local[i], c) = v;
      Mat<F> ker = rows == 0 ? identity(K, cols.size()) : right_kernel(K, M);
      for (size_t t = 0; t < ker.rows; ++t) {
        SVec<F> v;
        for (size_t c = 0; c < cols.size(); ++c)
          if (!K.is_zero(ker(t, c))) v.push_back({cols[c], ker(t, c)});
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
        next.push_back(std::move(v));
      }
    }
    A = std::move(P);
    omega = std::move(next);
  }
  return Rs;
}

// ---------------- checks ----------------

// Product of elements of R.
template <class F>
SVec<F> rmul(const LocalAlgebra<F>& R, const SVec<F>& a, const SVec<F>& b) {
  return R.mul(a, b);
}

template <class F>
CheckReport check_resolution(const Resolution<F>& Rs, const FdModule<F>& V) {
  CheckReport rep;
  rep.subject = "resolution of " + Rs.provenance;
  const F& K = Rs.K();
  const auto& R = *Rs.H->local;
  const size_t dR = R.dim();
  // minimality: no entry has a unit term
  bool minimal = true;
  for (int n = 1; n <= Rs.D; ++n)
    for (auto& col : Rs.d[n])
      for (auto& [i, e] : col)
        for (auto& [b, c] : e)
          if (b == 0) minimal = false;
  rep.add("minimality", minimal);
  // d o d = 0, including the augmentation
  bool dd = true;
  Scatter<F> sc(K, V.dim);
  for (size_t j = 0; Rs.D >= 1 && j < Rs.ranks[1]; ++j) {
    Scatter<F> acc(K, V.dim);
    for (auto& [i, e] : Rs.d[1][j]) acc.axpy(act_elem(V, e, Rs.aug[i], sc), K.one());
    if (!acc.take().empty()) dd = false;
  }
  for (int n = 2; n <= Rs.D && dd; ++n)
    for (size_t j = 0; j < Rs.ranks[n] && dd; ++j) {
      std::map<uint32_t, std::vector<typename F::elem>> acc;
      for (auto& [i, e] : Rs.d[n][j])
        for (auto& [k, f] : Rs.d[n - 1][i]) {
          auto pr = R.mul(e, f);
          auto& slot = acc[k];
          if (slot.empty()) slot.assign(dR, K.zero());
          svec_axpy(K, slot, pr, K.one());
        }
      for (auto& [k, v] : acc)
        for (auto& c : v)
          if (!K.is_zero(c)) dd = false;
    }
  rep.add("d^2 = 0", dd);
  // exactness: dim ker d_n = rank d_{n+1}, and the augmentation is onto
  auto dense_of = [&](int n) {
    // matrix of d_n : P_n -> P_{n-1} over k
    size_t rows = Rs.ranks[n - 1] * dR, cols = Rs.ranks[n] * dR;
    Mat<F> M(rows, cols, K.zero());
    for (size_t j = 0; j < Rs.ranks[n]; ++j)
      for (auto& [i, e] : Rs.d[n][j])
        for (size_t b = 0; b < dR; ++b)
          for (auto& [t, c] : R.mul(SVec<F>{{uint32_t(b), K.one()}}, e)) M(i * dR + t, j * dR + b) = K.add(M(i * dR + t, j * dR + b), c);
    return M;
  };
  bool exact = true;
  std::string where;
  {
    Mat<F> A(V.dim, Rs.ranks[0] * dR, K.zero());
    for (size_t j = 0; j < Rs.ranks[0]; ++j)
      for (size_t b = 0; b < dR; ++b)
        for (auto& [i, c] : act_basis(V, b, Rs.aug[j], sc)) A(i, j * dR + b) = c;
    size_t ra = rank(K, A);
    if (ra != V.dim) exact = false, where = "augmentation";
    size_t prev_rank = ra;
    for (int n = 1; n <= Rs.D && exact; ++n) {
      if (Rs.ranks[n - 1] == 0) break;
      size_t rn = Rs.ranks[n] ? rank(K, dense_of(n)) : 0;
      if (rn + prev_rank != Rs.ranks[n - 1] * dR) exact = false, where = "degree " + std::to_string(n - 1);
      prev_rank = rn;
    }
  }
  rep.add("exactness", exact, where);
  return rep;
}

// ---------------- lifts and operators ----------------

// Decomposition table of products of fiber basis elements inside Q:
// lift(a) lift(b) = lift(rem) + sum_i f_i lift(theta_i) modulo (f)^2.
template <class F>
struct ProductTable {
  size_t dR = 0;
  int nf = 0;
  std::vector<SVec<F>> rem;                 // [a*dR+b]
  std::vector<std::vector<SVec<F>>> theta;  // [a*dR+b][i]
  std::vector<std::vector<std::pair<int, typename F::elem>>> eps;  // constant terms of theta

  explicit ProductTable(const LocalAlgebra<F>& R) {
    const F& K = R.field();
    dR = R.dim();
    nf = R.num_f();
    rem.resize(dR * dR);
    theta.resize(dR * dR);
    eps.resize(dR * dR);
    for (size_t a = 0; a < dR; ++a)
      for (size_t b = 0; b < dR; ++b) {
        auto p = R.integration().mul_mono_mono(R.mono(a), R.mono(b));
        R.decompose(p, rem[a * dR + b], theta[a * dR + b]);
        for (int i = 0; i < nf; ++i)
          for (auto& [t, c] : theta[a * dR + b][i])
            if (t == 0) eps[a * dR + b].push_back({i, c});
        (void)K;
      }
  }
};

template <class F>
const ProductTable<F>& product_table(const LocalAlgebra<F>& R) {
  if (!R.product_cache) R.product_cache = std::make_shared<ProductTable<F>>(R);
  return *std::static_pointer_cast<ProductTable<F>>(R.product_cache);
}

// Operators on Ext^*(V, k): theta_i : Ext^n -> Ext^{n+2} in the dual bases of
// the generators of P_n. Result [i] has r_{n+2} rows and r_n columns.
template <class F>
std::vector<Mat<F>> theta_on_ext_k(const Resolution<F>& Rs, int n) {
  const F& K = Rs.K();
  const auto& R = *Rs.H->local;
  const auto& T = product_table(R);
  const int nf = R.num_f();
  std::vector<Mat<F>> out(nf, Mat<F>(Rs.rank(n + 2), Rs.rank(n), K.zero()));
  if (n + 2 > Rs.D) return out;
  const size_t dR = R.dim();
  for (size_t j = 0; j < Rs.rank(n + 2); ++j)
    for (auto& [i, e1] : Rs.d[n + 2][j])
      for (auto& [k, e2] : Rs.d[n + 1][i])
        for (auto& [b1, c1] : e1)
          for (auto& [b2, c2] : e2)
            for (auto& [f, c] : T.eps[b1 * dR + b2]) out[f](j, k) = K.add(out[f](j, k), K.mul(K.mul(c1, c2), c));
  return out;
}

// A lift of the differentials: lift(d) + sum_i f_i lift(rho_i). The
// correction terms are drawn at random but respect labels and degrees.
template <class F>
struct LiftedResolution {
  const Resolution<F>* res = nullptr;
  uint64_t seed = 0;
  // corr[n][j] = per f: column entries (i, rho) added as f_i * rho to d_n
  std::vector<std::vector<std::vector<RCol<F>>>> corr;
};

template <class F>
LiftedResolution<F> q_lift(const Resolution<F>& Rs, uint64_t seed) {
  LiftedResolution<F> L;
  L.res = &Rs;
  L.seed = seed;
  const F& K = Rs.K();
  const auto& H = *Rs.H;
  const auto& R = *H.local;
  const int nf = R.num_f();
  L.corr.assign(Rs.D + 1, {});
  if (seed == 0) return L;  // plain normal-form lift
  std::mt19937_64 rng(seed);
  // basis elements of R grouped by label and total degree
  auto tdeg = [&](size_t b) {
    int t = 0;
    for (int v : R.deg(b)) t += v;
    return t;
  };
  for (int n = 1; n <= Rs.D; ++n) {
    L.corr[n].assign(Rs.ranks[n], std::vector<RCol<F>>(nf));
    for (size_t j = 0; j < Rs.ranks[n]; ++j)
      for (auto& [i, e] : Rs.d[n][j]) {
        if (e.empty()) continue;
        const size_t b0 = e.front().first;
        for (int f = 0; f < nf; ++f) {
          // f_i rho must have the label and degree of the entry: rho has
          // label(b0) - label(f_i), degree(b0) - degree(f_i)
          std::vector<int> fd = R.letter_degree(f);
          int fdeg = 0;
          for (int v : fd) fdeg += v * R.f_exponent(f);
          uint32_t flab = 0;
          if (H.kind == HopfKind::Bosonized) {
            std::vector<int> lv(H.orders.size());
            for (size_t k = 0; k < lv.size(); ++k) lv[k] = H.letter_deg[f][k] * R.f_exponent(f);
            flab = H.encode(lv);
          }
          SVec<F> rho;
          for (size_t b = 0; b < R.dim(); ++b) {
            bool lab_ok = H.kind != HopfKind::Bosonized ||
                          H.label_add(H.basis_label(b), flab) == H.basis_label(b0);
            if (!lab_ok || tdeg(b) + fdeg != tdeg(b0)) continue;
            if (rng() % 2) rho.push_back({uint32_t(b), K.from_int(int64_t(1 + rng() % 1000))});
          }
          if (!rho.empty()) L.corr[n][j][f].push_back({i, rho});
        }
      }
  }
  return L;
}

// Full operators theta_i : P_{n+2} -> P_n modulo (f), for a given lift.
// Result [f][j] is a column over R.
template <class F>
std::vector<std::vector<RCol<F>>> theta_chain(const LiftedResolution<F>& L, int n) {
  const auto& Rs = *L.res;
  const F& K = Rs.K();
  const auto& R = *Rs.H->local;
  const auto& T = product_table(R);
  const int nf = R.num_f();
  const size_t dR = R.dim();
  std::vector<std::vector<RCol<F>>> out(nf, std::vector<RCol<F>>(Rs.rank(n + 2)));
  if (n + 2 > Rs.D) return out;
  for (size_t j = 0; j < Rs.rank(n + 2); ++j) {
    std::vector<std::map<uint32_t, std::vector<typename F::elem>>> acc(nf);
    auto add = [&](int f, uint32_t k, const SVec<F>& v, typename F::elem c) {
      auto& slot = acc[f][k];
      if (slot.empty()) slot.assign(dR, K.zero());
      svec_axpy(K, slot, v, c);
    };
    for (auto& [i, e1] : Rs.d[n + 2][j])
      for (auto& [k, e2] : Rs.d[n + 1][i])
        for (auto& [b1, c1] : e1)
          for (auto& [b2, c2] : e2) {
            auto& th = T.theta[b1 * dR + b2];
            for (int f = 0; f < nf; ++f)
              if (!th[f].empty()) add(f, k, th[f], K.mul(c1, c2));
          }
    // corrections: rho^{n+2}_{ij} d^{n+1}_{ki} + d^{n+2}_{ij} rho^{n+1}_{ki}
    if (!L.corr.empty() && !L.corr[n + 2].empty())
      for (int f = 0; f < nf; ++f)
        for (auto& [i, rho] : L.corr[n + 2][j][f])
          for (auto& [k, e2] : Rs.d[n + 1][i]) add(f, k, R.mul(rho, e2), K.one());
    if (!L.corr.empty() && !L.corr[n + 1].empty())
      for (auto& [i, e1] : Rs.d[n + 2][j])
        for (int f = 0; f < nf; ++f)
          for (auto& [k, rho] : L.corr[n + 1][i][f]) add(f, k, R.mul(e1, rho), K.one());
    for (int f = 0; f < nf; ++f)
      for (auto& [k, v] : acc[f]) {
        auto s = to_sparse(K, v);
        if (!s.empty()) out[f][j].push_back({k, s});
      }
  }
  return out;
}

}  // namespace sv
