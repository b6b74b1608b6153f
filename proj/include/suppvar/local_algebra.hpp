#pragma once
// The fiber R = Q/(f_1..f_n) of a truncated PBW algebra Q over central
// elements f_i = x_i^{e_i}, with its multiplication, grading, and the
// bookkeeping needed to split products in Q along the f_i.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "pbw.hpp"

namespace sv {

template <class F>
class LocalAlgebra {
 public:
  using E = typename F::elem;

  // fexp[i]: exponent e_i with f_i = x_i^{e_i}; gens: generating letters;
  // defs[i]: letter i as a noncommutative polynomial in generator letters.
  LocalAlgebra(std::shared_ptr<const PbwAlgebra<F>> Q, std::vector<int> fexp, std::vector<int> gens,
               std::vector<NcPoly<F>> defs, std::string name)
      : Q_(std::move(Q)), K_(Q_->field()), e_(std::move(fexp)), gens_(std::move(gens)),
        defs_(std::move(defs)), name_(std::move(name)) {
    const int n = Q_->letters();
    if (int(e_.size()) != n) throw std::invalid_argument("one central power per letter expected");
    stride_.assign(n, 1);
    dim_ = 1;
    for (int i = n - 1; i >= 0; --i) {
      stride_[i] = dim_;
      dim_ *= size_t(e_[i]);
    }
    mono_.resize(dim_);
    deg_.resize(dim_);
    for (size_t b = 0; b < dim_; ++b) {
      Mono m = 0;
      size_t r = b;
      for (int i = 0; i < n; ++i) {
        int a = int(r / stride_[i]);
        r %= stride_[i];
        m |= mletter(i, a);
      }
      mono_[b] = m;
      deg_[b] = Q_->mono_degree(m);
    }
    left_.assign(n, std::vector<SVec<F>>(dim_));
    for (int x = 0; x < n; ++x)
      for (size_t b = 0; b < dim_; ++b) left_[x][b] = project(Q_->mul_letter(x, mono_[b]));
    eps_theta_.resize(dim_);
  }

  const F& field() const { return K_; }
  const PbwAlgebra<F>& integration() const { return *Q_; }
  std::shared_ptr<const PbwAlgebra<F>> integration_ptr() const { return Q_; }
  const std::string& name() const { return name_; }
  size_t dim() const { return dim_; }
  int letters() const { return Q_->letters(); }
  int num_f() const { return Q_->letters(); }
  int f_exponent(int i) const { return e_[i]; }
  const std::vector<int>& gens() const { return gens_; }
  const NcPoly<F>& letter_def(int i) const { return defs_[i]; }
  Mono mono(size_t b) const { return mono_[b]; }
  const std::vector<int>& deg(size_t b) const { return deg_[b]; }
  int grading_rank() const { return Q_->grading_rank(); }
  std::vector<int> letter_degree(int x) const { return Q_->degree(x); }

  // Index of a monomial in the fiber basis, or -1 if it lies in (f).
  long index(Mono m) const {
    size_t idx = 0;
    for (int i = 0; i < letters(); ++i) {
      int a = mexp(m, i);
      if (a >= e_[i]) return -1;
      idx += size_t(a) * stride_[i];
    }
    return long(idx);
  }
  size_t letter_index(int x) const { return stride_[x]; }

  // x * b in R for a letter x.
  const SVec<F>& left_letter(int x, size_t b) const { return left_[x][b]; }

  SVec<F> project(const Poly<F>& p) const {
    SVec<F> out;
    for (auto& [m, c] : p) {
      long i = index(m);
      if (i >= 0) out.push_back({uint32_t(i), c});
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return out;
  }

  Poly<F> lift(const SVec<F>& v) const {
    Poly<F> p;
    for (auto& [i, c] : v) p.push_back({mono_[i], c});
    return p;
  }

  // Splits y in Q as y = r + sum_i f_i t_i and returns r and t_i modulo (f).
  void decompose(const Poly<F>& y, SVec<F>& rem, std::vector<SVec<F>>& theta) const {
    const int n = letters();
    theta.assign(n, {});
    rem.clear();
    for (auto& [m, c] : y) {
      long i = index(m);
      if (i >= 0) { rem.push_back({uint32_t(i), c}); continue; }
      int k = 0;
      while (mexp(m, k) < e_[k]) ++k;
      long j = index(m - mletter(k, e_[k]));
      if (j >= 0) theta[k].push_back({uint32_t(j), c});
    }
    auto srt = [](SVec<F>& s) { std::sort(s.begin(), s.end(), [](auto& a, auto& b) { return a.first < b.first; }); };
    srt(rem);
    for (auto& t : theta) srt(t);
  }

  // Product of basis elements in R.
  SVec<F> mul(size_t a, size_t b) const { return project(Q_->mul_mono_mono(mono_[a], mono_[b])); }

  SVec<F> mul(const SVec<F>& a, const SVec<F>& b) const {
    std::vector<E> acc(dim_, K_.zero());
    for (auto& [i, ci] : a)
      for (auto& [j, cj] : b) {
        auto c = K_.mul(ci, cj);
        for (auto& [m, cm] : Q_->mul_mono_mono(mono_[i], mono_[j])) {
          long k = index(m);
          if (k >= 0) acc[k] = K_.add(acc[k], K_.mul(c, cm));
        }
      }
    return to_sparse(K_, acc);
  }

  // Nonzero constant terms of the f_i-components of lift(b1)*lift(b2):
  // entries (b2, i, c) for fixed b1.
  struct EpsEntry {
    uint32_t b2;
    int f;
    E c;
  };
  const std::vector<EpsEntry>& eps_theta(size_t b1) const {
    auto& slot = eps_theta_[b1];
    if (slot) return *slot;
    std::vector<EpsEntry> out;
    const int n = letters();
    for (size_t b2 = 0; b2 < dim_; ++b2) {
      if (grading_rank() > 0) {
        // only degrees summing to some deg f_i can contribute
        bool any = false;
        for (int i = 0; i < n && !any; ++i) {
          bool ok = true;
          for (int k = 0; k < grading_rank(); ++k)
            if (deg_[b1][k] + deg_[b2][k] != e_[i] * Q_->degree(i)[k]) { ok = false; break; }
          any = ok;
        }
        if (!any) continue;
      }
      for (auto& [m, c] : Q_->mul_mono_mono(mono_[b1], mono_[b2]))
        for (int i = 0; i < n; ++i)
          if (m == mletter(i, e_[i])) out.push_back({uint32_t(b2), i, c});
    }
    slot = std::move(out);
    return *slot;
  }

  Mono f_mono(int i) const { return mletter(i, e_[i]); }
  size_t top_index() const { return dim_ - 1; }

  std::string basis_str(size_t b) const { return Q_->mono_str(mono_[b]); }

 private:
  std::shared_ptr<const PbwAlgebra<F>> Q_;
  F K_;
  std::vector<int> e_;
  std::vector<int> gens_;
  std::vector<NcPoly<F>> defs_;
  std::string name_;
  std::vector<size_t> stride_;
  size_t dim_ = 0;
  std::vector<Mono> mono_;
  std::vector<std::vector<int>> deg_;
  std::vector<std::vector<SVec<F>>> left_;
  mutable std::vector<std::optional<std::vector<EpsEntry>>> eps_theta_;

 public:
  // Lazily built derived tables (see product_table), owned by the algebra.
  mutable std::shared_ptr<void> product_cache;
};

}  // namespace sv
