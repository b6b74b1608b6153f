#pragma once
// Algebras with an ordered-monomial (PBW) basis, presented by rewriting
// rules x_b x_a -> sum c * m for letters b > a, with a per-letter
// exponent cap. Exceeding the cap is reported, never truncated.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "field.hpp"

namespace sv {

using Mono = uint64_t;  // 8 bits of exponent per letter
constexpr int kMaxLetters = 7;

inline int mexp(Mono m, int i) { return int((m >> (8 * i)) & 0xFF); }
inline Mono mletter(int i, int e = 1) { return Mono(e) << (8 * i); }
inline int mdegree(Mono m) {
  int s = 0;
  for (int i = 0; i < kMaxLetters; ++i) s += mexp(m, i);
  return s;
}

struct DegreeOverflow : std::runtime_error {
  int letter, exponent;
  DegreeOverflow(int l, int e)
      : std::runtime_error("exponent " + std::to_string(e) + " of letter " + std::to_string(l) +
                           " exceeds the truncation bound"),
        letter(l), exponent(e) {}
};

template <class F>
using Poly = std::vector<std::pair<Mono, typename F::elem>>;

// Sort by monomial, merge equal terms, drop zeros.
template <class F>
void normalize(const F& K, Poly<F>& p) {
  std::sort(p.begin(), p.end(), [](auto& a, auto& b) { return a.first < b.first; });
  size_t w = 0;
  for (size_t i = 0; i < p.size();) {
    Mono m = p[i].first;
    auto c = p[i].second;
    size_t j = i + 1;
    for (; j < p.size() && p[j].first == m; ++j) c = K.add(c, p[j].second);
    if (!K.is_zero(c)) p[w++] = {m, c};
    i = j;
  }
  p.resize(w);
}

template <class F>
class PbwAlgebra {
 public:
  using E = typename F::elem;

  PbwAlgebra(const F& K, std::vector<std::string> names, std::vector<std::vector<int>> degrees,
             std::vector<int> caps)
      : K_(K), names_(std::move(names)), deg_(std::move(degrees)), cap_(std::move(caps)) {
    n_ = int(names_.size());
    if (n_ > kMaxLetters) throw std::invalid_argument("too many letters");
    for (int c : cap_)
      if (c > 255) throw std::invalid_argument("exponent cap above 255");
    rules_.assign(n_, std::vector<Poly<F>>(n_));
    has_rule_.assign(n_, std::vector<char>(n_, 0));
  }

  const F& field() const { return K_; }
  int letters() const { return n_; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degree(int i) const { return deg_[i]; }
  int grading_rank() const { return deg_.empty() ? 0 : int(deg_[0].size()); }
  int cap(int i) const { return cap_[i]; }

  // x_b x_a = rhs, b > a.
  void set_rule(int b, int a, Poly<F> rhs) {
    if (b <= a) throw std::invalid_argument("rule must have b > a");
    normalize(K_, rhs);
    rules_[b][a] = std::move(rhs);
    has_rule_[b][a] = 1;
    memo_.clear();
  }
  const Poly<F>& rule(int b, int a) const { return rules_[b][a]; }
  bool has_rule(int b, int a) const { return has_rule_[b][a]; }

  std::vector<int> mono_degree(Mono m) const {
    std::vector<int> d(grading_rank(), 0);
    for (int i = 0; i < n_; ++i) {
      int e = mexp(m, i);
      if (!e) continue;
      for (size_t k = 0; k < d.size(); ++k) d[k] += e * deg_[i][k];
    }
    return d;
  }

  std::string mono_str(Mono m) const {
    if (m == 0) return "1";
    std::string s;
    for (int i = 0; i < n_; ++i) {
      int e = mexp(m, i);
      if (!e) continue;
      if (!s.empty()) s += "*";
      s += names_[i];
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  std::string poly_str(const Poly<F>& p) const {
    if (p.empty()) return "0";
    std::string s;
    for (auto& [m, c] : p) {
      if (!s.empty()) s += " + ";
      s += "(" + K_.str(c) + ")" + mono_str(m);
    }
    return s;
  }

  // x_g * m
  const Poly<F>& mul_letter(int g, Mono m) const {
    uint64_t key = (m << 3) | uint64_t(g);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Poly<F> out;
    int k = -1;
    for (int i = 0; i < n_; ++i)
      if (mexp(m, i)) { k = i; break; }
    if (k < 0 || g <= k) {
      int e = mexp(m, g) + 1;
      if (e > cap_[g]) throw DegreeOverflow(g, e);
      out.push_back({m + mletter(g), K_.one()});
    } else {
      Mono rest = m - mletter(k);
      if (!has_rule_[g][k]) throw std::logic_error("missing rewriting rule " + names_[g] + names_[k]);
      for (auto& [t, c] : rules_[g][k]) {
        Poly<F> part = mul_mono_mono(t, rest);
        for (auto& [mm, cc] : part) out.push_back({mm, K_.mul(c, cc)});
      }
      normalize(K_, out);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  // t * m for monomials
  Poly<F> mul_mono_mono(Mono t, Mono m) const {
    Poly<F> cur{{m, K_.one()}};
    for (int i = n_ - 1; i >= 0; --i) {
      for (int e = mexp(t, i); e > 0; --e) {
        Poly<F> nxt;
        for (auto& [mm, c] : cur) {
          const auto& r = mul_letter(i, mm);
          for (auto& [m2, c2] : r) nxt.push_back({m2, K_.mul(c, c2)});
        }
        normalize(K_, nxt);
        cur = std::move(nxt);
      }
    }
    return cur;
  }

  Poly<F> mul(const Poly<F>& a, const Poly<F>& b) const {
    Poly<F> out;
    for (auto& [ma, ca] : a)
      for (auto& [mb, cb] : b) {
        auto p = mul_mono_mono(ma, mb);
        auto c = K_.mul(ca, cb);
        for (auto& [m, cc] : p) out.push_back({m, K_.mul(c, cc)});
      }
    normalize(K_, out);
    return out;
  }

  // Product of a word of letters, multiplied in the given association:
  // right_to_left=true builds x_{w0}(x_{w1}(...)), otherwise ((x_{w0}x_{w1})...).
  Poly<F> word(const std::vector<int>& w, bool right_to_left = true) const {
    Poly<F> cur{{0, K_.one()}};
    if (right_to_left) {
      for (int i = int(w.size()) - 1; i >= 0; --i) {
        Poly<F> nxt;
        for (auto& [m, c] : cur)
          for (auto& [m2, c2] : mul_letter(w[i], m)) nxt.push_back({m2, K_.mul(c, c2)});
        normalize(K_, nxt);
        cur = std::move(nxt);
      }
    } else {
      for (int x : w) cur = mul(cur, Poly<F>{{mletter(x), K_.one()}});
    }
    return cur;
  }

  size_t memo_size() const { return memo_.size(); }

 private:
  F K_;
  int n_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> deg_;
  std::vector<int> cap_;
  std::vector<std::vector<Poly<F>>> rules_;
  std::vector<std::vector<char>> has_rule_;
  mutable std::unordered_map<uint64_t, Poly<F>> memo_;
};

// Noncommutative polynomial in letters: list of (word, coefficient).
template <class F>
using NcPoly = std::vector<std::pair<std::vector<int>, typename F::elem>>;

template <class F>
Poly<F> evaluate(const PbwAlgebra<F>& Q, const NcPoly<F>& p) {
  const F& K = Q.field();
  Poly<F> out;
  for (auto& [w, c] : p)
    for (auto& [m, cc] : Q.word(w)) out.push_back({m, K.mul(c, cc)});
  normalize(K, out);
  return out;
}

}  // namespace sv
