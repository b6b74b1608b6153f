#pragma once
// Sparse elements of H, H (x) H, H (x) H (x) H and the structure maps on them.
// A basis element of H is (b, g): b a fiber basis index, g a group label; it
// stands for b*g in the bosonized case and b*delta_g for function algebras.

#include <algorithm>
#include <unordered_map>

#include "hopf.hpp"

namespace sv {

template <class F>
using HElem = std::vector<std::pair<uint64_t, typename F::elem>>;  // sorted keys

template <class F>
class HopfOps {
 public:
  using E = typename F::elem;
  using Acc = std::unordered_map<uint64_t, E>;

  // primitive: replace Delta(x_i) by x_i (x) 1 + 1 (x) x_i (deliberately broken input)
  explicit HopfOps(const HopfAlgebra<F>& H, bool primitive = false)
      : H_(H), K_(H.K), primitive_(primitive), nl_(H.nlabels), d_(H.dim()) {}

  const HopfAlgebra<F>& algebra() const { return H_; }
  uint64_t dim() const { return d_; }
  uint64_t key(size_t b, uint32_t g) const { return uint64_t(b) * nl_ + g; }
  size_t fiber(uint64_t k) const { return size_t(k / nl_); }
  uint32_t label(uint64_t k) const { return uint32_t(k % nl_); }

  HElem<F> finish(Acc& a) const {
    HElem<F> out;
    for (auto& [k, v] : a)
      if (!K_.is_zero(v)) out.push_back({k, v});
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
    return out;
  }
  void add_to(Acc& a, uint64_t k, const E& v) const {
    auto [it, ins] = a.emplace(k, v);
    if (!ins) it->second = K_.add(it->second, v);
  }
  HElem<F> add(const HElem<F>& x, const HElem<F>& y, const E& cy) const {
    Acc a;
    for (auto& [k, v] : x) add_to(a, k, v);
    for (auto& [k, v] : y) add_to(a, k, K_.mul(cy, v));
    return finish(a);
  }
  HElem<F> scale(HElem<F> x, const E& c) const {
    for (auto& [k, v] : x) v = K_.mul(c, v);
    if (K_.is_zero(c)) x.clear();
    return x;
  }

  // ---- H ----
  void mul_basis(uint64_t k1, uint64_t k2, const E& c, Acc& out) const {
    size_t b1 = fiber(k1), b2 = fiber(k2);
    uint32_t g1 = label(k1), g2 = label(k2);
    uint32_t g;
    E coef = c;
    if (H_.kind == HopfKind::Bosonized) {
      coef = K_.mul(coef, H_.pair(g1, H_.basis_label(b2)));
      g = H_.label_add(g1, g2);
    } else {
      if (g1 != g2) return;
      g = g1;
    }
    for (auto& [b, cb] : H_.local->mul(b1, b2)) add_to(out, key(b, g), K_.mul(coef, cb));
  }
  HElem<F> mul(const HElem<F>& x, const HElem<F>& y) const {
    Acc a;
    for (auto& [k1, v1] : x)
      for (auto& [k2, v2] : y) mul_basis(k1, k2, K_.mul(v1, v2), a);
    return finish(a);
  }
  HElem<F> one() const {
    if (H_.kind == HopfKind::Bosonized) return {{key(0, 0), K_.one()}};
    HElem<F> o;
    for (uint32_t g = 0; g < nl_; ++g) o.push_back({key(0, g), K_.one()});
    return o;
  }
  // fiber basis element b times 1
  HElem<F> fiber_elem(size_t b) const {
    if (H_.kind == HopfKind::Bosonized) return {{key(b, 0), K_.one()}};
    HElem<F> o;
    for (uint32_t g = 0; g < nl_; ++g) o.push_back({key(b, g), K_.one()});
    return o;
  }
  HElem<F> group_elem(uint32_t g) const { return {{key(0, g), K_.one()}}; }
  HElem<F> letter(int x) const { return fiber_elem(H_.local->letter_index(x)); }

  // ---- H (x) H and H (x) H (x) H ----
  HElem<F> tmul(const HElem<F>& x, const HElem<F>& y) const {
    Acc a;
    for (auto& [k1, v1] : x)
      for (auto& [k2, v2] : y) {
        Acc l, r;
        mul_basis(k1 / d_, k2 / d_, K_.one(), l);
        if (l.empty()) continue;
        mul_basis(k1 % d_, k2 % d_, K_.one(), r);
        E c = K_.mul(v1, v2);
        for (auto& [a1, c1] : l) {
          if (K_.is_zero(c1)) continue;
          for (auto& [a2, c2] : r)
            if (!K_.is_zero(c2)) add_to(a, a1 * d_ + a2, K_.mul(c, K_.mul(c1, c2)));
        }
      }
    return finish(a);
  }
  HElem<F> ttmul(const HElem<F>& x, const HElem<F>& y) const {
    Acc a;
    const uint64_t d2 = d_ * d_;
    for (auto& [k1, v1] : x)
      for (auto& [k2, v2] : y) {
        Acc p0, p1, p2;
        mul_basis(k1 / d2, k2 / d2, K_.one(), p0);
        if (p0.empty()) continue;
        mul_basis((k1 / d_) % d_, (k2 / d_) % d_, K_.one(), p1);
        if (p1.empty()) continue;
        mul_basis(k1 % d_, k2 % d_, K_.one(), p2);
        E c = K_.mul(v1, v2);
        for (auto& [a0, c0] : p0)
          for (auto& [a1, c1] : p1)
            for (auto& [a2, c2] : p2)
              add_to(a, a0 * d2 + a1 * d_ + a2, K_.mul(c, K_.mul(c0, K_.mul(c1, c2))));
      }
    return finish(a);
  }
  HElem<F> tensor(const HElem<F>& x, const HElem<F>& y) const {
    Acc a;
    for (auto& [k1, v1] : x)
      for (auto& [k2, v2] : y) add_to(a, k1 * d_ + k2, K_.mul(v1, v2));
    return finish(a);
  }

  // ---- structure maps on generators ----
  HElem<F> delta_gen_letter(int gpos) const {
    const int x = H_.local->gens()[gpos];
    HElem<F> xe = letter(x);
    HElem<F> out = tensor(xe, one());
    if (H_.kind == HopfKind::Bosonized) {
      auto left = primitive_ ? one() : group_elem(H_.K_element(gpos));
      out = add(out, tensor(left, xe), K_.one());
    } else {
      // Delta(w_i) = sum_h w_{h(i)} (x) delta_h + 1 (x) w_i
      out.clear();
      for (uint32_t h = 0; h < nl_; ++h)
        out = add(out, tensor(letter(H_.local->gens()[H_.perm_apply(h, gpos)]), group_elem(h)), K_.one());
      out = add(out, tensor(one(), xe), K_.one());
    }
    return out;
  }
  HElem<F> delta_group(uint32_t g) const {
    if (H_.kind == HopfKind::Bosonized) return tensor(group_elem(g), group_elem(g));
    Acc a;
    for (uint32_t h = 0; h < nl_; ++h) add_to(a, key(0, h) * d_ + key(0, H_.gmul[H_.ginv[h]][g]), K_.one());
    return finish(a);
  }
  HElem<F> antipode_gen_letter(int gpos) const {
    const int x = H_.local->gens()[gpos];
    if (H_.kind == HopfKind::Bosonized) {
      auto kinv = primitive_ ? one() : group_elem(H_.label_neg(H_.K_element(gpos)));
      return scale(mul(kinv, letter(x)), K_.neg(K_.one()));
    }
    // S(w_i) = -sum_g delta_g w_{g^{-1}(i)}
    HElem<F> out;
    for (uint32_t g = 0; g < nl_; ++g)
      out = add(out, mul(group_elem(g), letter(H_.local->gens()[H_.perm_apply(H_.ginv[g], gpos)])),
                K_.neg(K_.one()));
    return out;
  }
  uint32_t antipode_group(uint32_t g) const { return H_.label_neg(g); }

  // ---- structure maps on basis elements, by multiplicativity ----
  const HElem<F>& delta_basis(uint64_t k) const {
    auto it = dmemo_.find(k);
    if (it != dmemo_.end()) return it->second;
    HElem<F> r = delta_fiber(fiber(k));
    uint32_t g = label(k);
    r = tmul(r, delta_group(g));
    return dmemo_.emplace(k, std::move(r)).first->second;
  }
  HElem<F> delta(const HElem<F>& x) const {
    Acc a;
    for (auto& [k, v] : x)
      for (auto& [kk, vv] : delta_basis(k)) add_to(a, kk, K_.mul(v, vv));
    return finish(a);
  }
  const HElem<F>& antipode_basis(uint64_t k) const {
    auto it = smemo_.find(k);
    if (it != smemo_.end()) return it->second;
    HElem<F> sg = group_elem(antipode_group(label(k)));
    HElem<F> r = mul(sg, antipode_fiber(fiber(k)));
    return smemo_.emplace(k, std::move(r)).first->second;
  }
  HElem<F> antipode(const HElem<F>& x) const {
    Acc a;
    for (auto& [k, v] : x)
      for (auto& [kk, vv] : antipode_basis(k)) add_to(a, kk, K_.mul(v, vv));
    return finish(a);
  }
  E counit_basis(uint64_t k) const {
    if (fiber(k) != 0) return K_.zero();
    if (H_.kind == HopfKind::GroupScheme && label(k) != 0) return K_.zero();
    return K_.one();
  }
  E counit(const HElem<F>& x) const {
    E s = K_.zero();
    for (auto& [k, v] : x) s = K_.add(s, K_.mul(v, counit_basis(k)));
    return s;
  }

  // (Delta (x) id) and (id (x) Delta) on H (x) H
  HElem<F> delta_left(const HElem<F>& t) const {
    Acc a;
    for (auto& [k, v] : t)
      for (auto& [kk, vv] : delta_basis(k / d_)) add_to(a, kk * d_ + k % d_, K_.mul(v, vv));
    return finish(a);
  }
  HElem<F> delta_right(const HElem<F>& t) const {
    Acc a;
    for (auto& [k, v] : t)
      for (auto& [kk, vv] : delta_basis(k % d_)) add_to(a, (k / d_) * d_ * d_ + kk, K_.mul(v, vv));
    return finish(a);
  }
  // (eps (x) id), (id (x) eps)
  HElem<F> counit_left(const HElem<F>& t) const {
    Acc a;
    for (auto& [k, v] : t) {
      E e = counit_basis(k / d_);
      if (!K_.is_zero(e)) add_to(a, k % d_, K_.mul(v, e));
    }
    return finish(a);
  }
  HElem<F> counit_right(const HElem<F>& t) const {
    Acc a;
    for (auto& [k, v] : t) {
      E e = counit_basis(k % d_);
      if (!K_.is_zero(e)) add_to(a, k / d_, K_.mul(v, e));
    }
    return finish(a);
  }
  // m(S (x) id), m(id (x) S)
  HElem<F> antipode_conv_left(const HElem<F>& t) const {
    Acc a;
    for (auto& [k, v] : t) {
      auto p = mul(antipode_basis(k / d_), HElem<F>{{k % d_, v}});
      for (auto& [kk, vv] : p) add_to(a, kk, vv);
    }
    return finish(a);
  }
  HElem<F> antipode_conv_right(const HElem<F>& t) const {
    Acc a;
    for (auto& [k, v] : t) {
      auto p = mul(HElem<F>{{k / d_, v}}, antipode_basis(k % d_));
      for (auto& [kk, vv] : p) add_to(a, kk, vv);
    }
    return finish(a);
  }

  // Delta of a letter: its definition evaluated on generator coproducts.
  const HElem<F>& delta_letter(int x) const {
    if (dletter_.empty()) dletter_.resize(H_.local->letters());
    auto& slot = dletter_[x];
    if (slot) return *slot;
    HElem<F> r;
    for (auto& [w, c] : H_.local->letter_def(x)) {
      HElem<F> t = tensor(one(), one());
      for (int y : w) t = tmul(t, delta_gen_letter(gen_pos(y)));
      r = add(r, t, c);
    }
    slot = r;
    return *slot;
  }
  const HElem<F>& antipode_letter(int x) const {
    if (sletter_.empty()) sletter_.resize(H_.local->letters());
    auto& slot = sletter_[x];
    if (slot) return *slot;
    HElem<F> r;
    for (auto& [w, c] : H_.local->letter_def(x)) {
      HElem<F> t = one();
      for (int y : w) t = mul(antipode_gen_letter(gen_pos(y)), t);
      r = add(r, t, c);
    }
    slot = r;
    return *slot;
  }
  int gen_pos(int letter) const {
    const auto& g = H_.local->gens();
    for (size_t i = 0; i < g.size(); ++i)
      if (g[i] == letter) return int(i);
    throw std::logic_error("letter is not a generator");
  }

 private:
  HElem<F> delta_fiber(size_t b) const {
    Mono m = H_.local->mono(b);
    HElem<F> r = tensor(one(), one());
    for (int x = 0; x < H_.local->letters(); ++x)
      for (int e = 0; e < mexp(m, x); ++e) r = tmul(r, delta_letter(x));
    return r;
  }
  HElem<F> antipode_fiber(size_t b) const {
    Mono m = H_.local->mono(b);
    HElem<F> r = one();
    for (int x = 0; x < H_.local->letters(); ++x)
      for (int e = 0; e < mexp(m, x); ++e) r = mul(antipode_letter(x), r);
    return r;
  }

  const HopfAlgebra<F>& H_;
  F K_;
  bool primitive_;
  uint64_t nl_, d_;
  mutable std::unordered_map<uint64_t, HElem<F>> dmemo_, smemo_;
  mutable std::vector<std::optional<HElem<F>>> dletter_, sletter_;
};

}  // namespace sv
