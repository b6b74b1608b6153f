#pragma once
// Finite-dimensional Hopf algebras of two shapes:
//  * bosonizations u+ # kG with G finite abelian, modules = G^-graded u+-modules
//    (G^ the character group), Delta(x_i) = x_i (x) 1 + K_i (x) x_i;
//  * function algebras O(G_o x| pi) of a height one unipotent group scheme
//    G_o = G_a(1)^n extended by a finite group pi permuting coordinates.

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "local_algebra.hpp"

namespace sv {

enum class HopfKind { Bosonized, GroupScheme };

template <class F>
typename F::elem root_of_unity(const F& K, uint32_t m);

template <>
inline Fp::elem root_of_unity(const Fp& K, uint32_t m) { return K.root_of_unity(m); }

template <>
inline Cyclotomic::elem root_of_unity(const Cyclotomic& K, uint32_t m) {
  if (K.conductor() % m != 0)
    throw FieldError("Q(zeta_" + std::to_string(K.conductor()) + ") has no primitive " + std::to_string(m) +
                     "-th root of unity");
  return K.pow(K.zeta(), K.conductor() / m);
}

template <class F>
struct HopfAlgebra {
  using E = typename F::elem;

  std::string name;
  std::string family;  // qci-standard, qci-extended, borel-sc, borel-ad, restricted, function-algebra
  HopfKind kind = HopfKind::Bosonized;
  F K;
  int l = 0;  // order of q, 0 when no q is involved
  E q{};
  std::shared_ptr<const LocalAlgebra<F>> local;

  // Bosonized data. Labels (G^-degrees) and group elements share the same
  // coordinates: G^ = prod Z/orders[k], G = prod Z/orders[k] via the dual basis.
  std::vector<int> orders;
  std::vector<E> omega;                      // primitive orders[k]-th roots
  std::vector<std::vector<int>> letter_deg;  // per letter
  std::vector<std::vector<int>> Kexp;        // per generator position
  std::optional<std::vector<std::vector<int>>> form;  // q-exponents on the coordinates
  // Further defining relations of the positive part (e.g. Serre relations),
  // as polynomials in generator letters.
  std::vector<NcPoly<F>> extra_relations;

  // Group scheme data.
  int ncoords = 0;
  std::vector<std::vector<int>> perms;  // perms[0] = identity
  std::vector<std::vector<int>> gmul;
  std::vector<int> ginv;
  bool perm_semidirect = false;

  // Derived tables, filled by finalize().
  size_t nlabels = 1;
  std::vector<uint32_t> letter_label;
  std::vector<std::vector<E>> Ktab;  // [gen][label]
  std::vector<std::vector<E>> gtab;  // [k][label]
  std::vector<std::vector<E>> braid; // [a][b] = q^{B(a,b)} when a form is present

  size_t dim() const { return local->dim() * nlabels; }
  int ngens() const { return int(local->gens().size()); }

  // ---- label arithmetic ----
  std::vector<int> decode(uint32_t x) const {
    std::vector<int> v(orders.size());
    for (int k = int(orders.size()) - 1; k >= 0; --k) {
      v[k] = int(x % orders[k]);
      x /= orders[k];
    }
    return v;
  }
  uint32_t encode(const std::vector<int>& v) const {
    uint32_t x = 0;
    for (size_t k = 0; k < orders.size(); ++k) {
      int c = v[k] % orders[k];
      if (c < 0) c += orders[k];
      x = x * orders[k] + c;
    }
    return x;
  }
  uint32_t label_add(uint32_t a, uint32_t b) const {
    if (kind == HopfKind::GroupScheme) return uint32_t(gmul[a][b]);
    auto va = decode(a), vb = decode(b);
    for (size_t k = 0; k < va.size(); ++k) va[k] += vb[k];
    return encode(va);
  }
  uint32_t label_neg(uint32_t a) const {
    if (kind == HopfKind::GroupScheme) return uint32_t(ginv[a]);
    auto va = decode(a);
    for (auto& c : va) c = -c;
    return encode(va);
  }
  // Value of group element g (coordinates) on label chi.
  E pair(uint32_t g, uint32_t chi) const {
    auto vg = decode(g), vc = decode(chi);
    E r = K.one();
    for (size_t k = 0; k < orders.size(); ++k)
      r = K.mul(r, K.pow(omega[k], int64_t(vg[k]) * vc[k] % orders[k]));
    return r;
  }
  uint32_t K_element(int gen) const { return encode(Kexp[gen]); }

  // Label of a fiber basis element (bosonized).
  uint32_t basis_label(size_t b) const {
    Mono m = local->mono(b);
    std::vector<int> v(orders.size(), 0);
    for (int i = 0; i < local->letters(); ++i) {
      int e = mexp(m, i);
      for (size_t k = 0; k < orders.size(); ++k) v[k] += e * letter_deg[i][k];
    }
    return encode(v);
  }

  int perm_apply(int g, int i) const { return perms[g][i]; }

  void finalize() {
    if (kind == HopfKind::Bosonized) {
      nlabels = 1;
      for (int o : orders) nlabels *= size_t(o);
      letter_label.clear();
      for (int i = 0; i < local->letters(); ++i) letter_label.push_back(encode(letter_deg[i]));
      Ktab.assign(ngens(), std::vector<E>(nlabels));
      for (int g = 0; g < ngens(); ++g)
        for (uint32_t c = 0; c < nlabels; ++c) Ktab[g][c] = pair(K_element(g), c);
      gtab.assign(orders.size(), std::vector<E>(nlabels));
      for (size_t k = 0; k < orders.size(); ++k) {
        std::vector<int> u(orders.size(), 0);
        u[k] = 1;
        for (uint32_t c = 0; c < nlabels; ++c) gtab[k][c] = pair(encode(u), c);
      }
      braid.clear();
      if (form) {
        braid.assign(nlabels, std::vector<E>(nlabels));
        for (uint32_t a = 0; a < nlabels; ++a)
          for (uint32_t b = 0; b < nlabels; ++b) {
            auto va = decode(a), vb = decode(b);
            int64_t s = 0;
            for (size_t i = 0; i < va.size(); ++i)
              for (size_t j = 0; j < vb.size(); ++j) s += int64_t(va[i]) * (*form)[i][j] * vb[j];
            braid[a][b] = K.pow(q, ((s % l) + l) % l);
          }
      }
    } else {
      nlabels = perms.size();
      size_t G = perms.size();
      std::map<std::vector<int>, int> idx;
      for (size_t g = 0; g < G; ++g) idx[perms[g]] = int(g);
      gmul.assign(G, std::vector<int>(G));
      ginv.assign(G, 0);
      for (size_t g = 0; g < G; ++g)
        for (size_t h = 0; h < G; ++h) {
          // (g h)(i) = g(h(i))
          std::vector<int> c(ncoords);
          for (int i = 0; i < ncoords; ++i) c[i] = perms[g][perms[h][i]];
          gmul[g][h] = idx.at(c);
          if (gmul[g][h] == 0) ginv[g] = int(h);
        }
      letter_label.assign(local->letters(), 0);
    }
  }
};

// Closure of a set of permutations under composition; identity first.
inline std::vector<std::vector<int>> perm_closure(int n, const std::vector<std::vector<int>>& gens) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> out{id};
  std::map<std::vector<int>, int> seen{{id, 0}};
  for (size_t i = 0; i < out.size(); ++i)
    for (auto& g : gens) {
      if (int(g.size()) != n) throw std::invalid_argument("permutation of wrong length");
      std::vector<int> c(n);
      for (int j = 0; j < n; ++j) c[j] = g[out[i][j]];
      if (!seen.count(c)) {
        seen[c] = int(out.size());
        out.push_back(c);
      }
    }
  return out;
}

}  // namespace sv
