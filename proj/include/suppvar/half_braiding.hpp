#pragma once
// Half-braidings of a module against the one-dimensional simples.
// gamma[mu] is the matrix of V (x) L_mu -> L_mu (x) V in the bases v (x) 1, 1 (x) v.

#include "support.hpp"

namespace sv {

template <class F>
struct HalfBraiding {
  ModulePtr<F> V;
  std::string kind;               // canonical, trivial, equivariant, custom
  std::vector<SpMat<F>> gamma;    // indexed by simple label
};

template <class F>
HalfBraiding<F> trivial_half_braiding(ModulePtr<F> V) {
  HalfBraiding<F> b{V, "trivial", {}};
  for (uint32_t mu = 0; mu < V->H->nlabels; ++mu) b.gamma.push_back(sp_identity(V->K(), V->dim));
  return b;
}

// The braiding of the grouplike part: v (x) 1_mu -> q^{B(label v, mu)} 1_mu (x) v.
template <class F>
HalfBraiding<F> canonical_half_braiding(ModulePtr<F> V) {
  const auto& H = *V->H;
  if (H.kind != HopfKind::Bosonized || H.braid.empty())
    throw std::invalid_argument("no canonical braiding on the grouplikes of " + H.name);
  HalfBraiding<F> b{V, "canonical", {}};
  for (uint32_t mu = 0; mu < H.nlabels; ++mu) {
    SpMat<F> G(V->dim, V->dim);
    for (size_t i = 0; i < V->dim; ++i) G.col[i] = {{uint32_t(i), H.braid[V->label[i]][mu]}};
    b.gamma.push_back(std::move(G));
  }
  return b;
}

// E(V) = sum over labels h of L_h (x) V (x) L_{h^{-1}}; gamma_g moves block h to block g^{-1}h.
template <class F>
HalfBraiding<F> equivariant_closure(const FdModule<F>& V) {
  const auto& H = V.H;
  const uint32_t N = H->nlabels;
  std::optional<FdModule<F>> E;
  for (uint32_t h = 0; h < N; ++h) {
    auto B = tensor(tensor(simple_module(H, h), V), simple_module(H, H->label_neg(h)));
    E = E ? direct_sum(*E, B) : B;
  }
  E->provenance = "E(" + V.provenance + ")";
  HalfBraiding<F> b{share(std::move(*E)), "equivariant", {}};
  const size_t d = V.dim;
  for (uint32_t g = 0; g < N; ++g) {
    SpMat<F> G(N * d, N * d);
    for (uint32_t h = 0; h < N; ++h) {
      uint32_t t = H->label_add(H->label_neg(g), h);
      for (size_t i = 0; i < d; ++i) G.col[h * d + i] = {{uint32_t(t * d + i), V.K().one()}};
    }
    b.gamma.push_back(std::move(G));
  }
  return b;
}

template <class F>
CheckReport check_half_braiding(const HalfBraiding<F>& b) {
  const auto& V = *b.V;
  const auto& H = V.H;
  const F& K = V.K();
  CheckReport rep;
  rep.subject = V.provenance + " [" + b.kind + "]";
  const uint32_t N = H->nlabels;
  rep.add("one map per simple", b.gamma.size() == N);
  if (b.gamma.size() != N) return rep;
  bool iso = true, inter = true, lab = true, unit = true, brd = true;
  std::string where;
  for (uint32_t mu = 0; mu < N; ++mu) {
    const auto& G = b.gamma[mu];
    if (G.rows != V.dim || G.cols != V.dim || rank(K, sp_to_dense(K, G)) != V.dim) {
      iso = false;
      where = label_str(*H, mu);
      continue;
    }
    auto L = simple_module(H, mu);
    auto A = tensor(V, L), B = tensor(L, V);
    for (size_t x = 0; x < A.act.size() && inter; ++x)
      if (sp_mul(K, G, A.act[x]) != sp_mul(K, B.act[x], G)) inter = false, where = label_str(*H, mu);
    for (size_t j = 0; j < V.dim; ++j)
      for (auto& [i, v] : G.col[j])
        if (B.label[i] != A.label[j]) lab = false;
  }
  rep.add("isomorphisms", iso, where);
  rep.add("intertwiners", inter, inter ? "" : "fails against simple " + where);
  rep.add("label preserving", lab);
  if (!iso) return rep;
  unit = b.gamma[0] == sp_identity(K, V.dim);
  rep.add("unit", unit);
  // gamma_{V, L_mu (x) L_nu} = (1 (x) gamma_nu)(gamma_mu (x) 1)
  for (uint32_t mu = 0; mu < N && brd; ++mu)
    for (uint32_t nu = 0; nu < N && brd; ++nu)
      if (sp_mul(K, b.gamma[nu], b.gamma[mu]) != b.gamma[H->label_add(mu, nu)]) {
        brd = false;
        where = label_str(*H, mu) + "," + label_str(*H, nu);
      }
  rep.add("braid compatibility", brd, brd ? "" : where);
  return rep;
}

// As tpp_check, with V carrying a validated half-braiding.
inline TppReport centralized_tpp_check(const HalfBraiding<Fp>& b, const FdModule<Fp>& W, const SupportOptions& opt,
                                       const SupportSet* sV = nullptr, const SupportSet* sW = nullptr) {
  auto rep = check_half_braiding(b);
  if (!rep.ok())
    throw std::invalid_argument("invalid half-braiding on " + b.V->provenance + ": " + rep.first_failure()->name);
  return tpp_check(*b.V, W, opt, sV, sW);
}

}  // namespace sv
