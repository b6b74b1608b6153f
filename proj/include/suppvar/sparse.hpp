#pragma once
// Column-sparse matrices over an exact field.

#include <algorithm>
#include <vector>

#include "linalg.hpp"

namespace sv {

// Scatter accumulator with a touched list, so clearing costs only the support.
template <class F>
class Scatter {
 public:
  using E = typename F::elem;
  Scatter(const F& K, size_t n) : K_(&K), val_(n, K.zero()), flag_(n, 0) {}
  void add(uint32_t i, const E& v) {
    if (!flag_[i]) {
      flag_[i] = 1;
      touched_.push_back(i);
      val_[i] = v;
    } else {
      val_[i] = K_->add(val_[i], v);
    }
  }
  void axpy(const SVec<F>& s, const E& c) {
    for (auto& [i, v] : s) add(i, K_->mul(c, v));
  }
  SVec<F> take() {
    std::sort(touched_.begin(), touched_.end());
    SVec<F> out;
    out.reserve(touched_.size());
    for (auto i : touched_) {
      if (!K_->is_zero(val_[i])) out.push_back({i, val_[i]});
      flag_[i] = 0;
    }
    touched_.clear();
    return out;
  }
  size_t size() const { return val_.size(); }

 private:
  const F* K_;
  std::vector<E> val_;
  std::vector<char> flag_;
  std::vector<uint32_t> touched_;
};

template <class F>
struct SpMat {
  size_t rows = 0, cols = 0;
  std::vector<SVec<F>> col;
  SpMat() = default;
  SpMat(size_t r, size_t c) : rows(r), cols(c), col(c) {}
  size_t nnz() const {
    size_t s = 0;
    for (auto& c : col) s += c.size();
    return s;
  }
  bool zero() const {
    for (auto& c : col)
      if (!c.empty()) return false;
    return true;
  }
  bool operator==(const SpMat& o) const { return rows == o.rows && cols == o.cols && col == o.col; }
  bool operator!=(const SpMat& o) const { return !(*this == o); }
};

template <class F>
SpMat<F> sp_identity(const F& K, size_t n) {
  SpMat<F> I(n, n);
  for (size_t i = 0; i < n; ++i) I.col[i] = {{uint32_t(i), K.one()}};
  return I;
}

template <class F>
SVec<F> sp_apply(const F& K, const SpMat<F>& A, const SVec<F>& x, Scatter<F>& sc) {
  for (auto& [j, v] : x) sc.axpy(A.col[j], v);
  return sc.take();
}

template <class F>
SVec<F> sp_apply(const F& K, const SpMat<F>& A, const SVec<F>& x) {
  Scatter<F> sc(K, A.rows);
  return sp_apply(K, A, x, sc);
}

template <class F>
std::vector<typename F::elem> sp_apply_dense(const F& K, const SpMat<F>& A, const std::vector<typename F::elem>& x) {
  std::vector<typename F::elem> y(A.rows, K.zero());
  for (size_t j = 0; j < A.cols; ++j)
    if (!K.is_zero(x[j])) svec_axpy(K, y, A.col[j], x[j]);
  return y;
}

// A * B
template <class F>
SpMat<F> sp_mul(const F& K, const SpMat<F>& A, const SpMat<F>& B) {
  SpMat<F> C(A.rows, B.cols);
  Scatter<F> sc(K, A.rows);
  for (size_t j = 0; j < B.cols; ++j) C.col[j] = sp_apply(K, A, B.col[j], sc);
  return C;
}

template <class F>
SpMat<F> sp_add(const F& K, const SpMat<F>& A, const SpMat<F>& B, const typename F::elem& cb) {
  SpMat<F> C(A.rows, A.cols);
  Scatter<F> sc(K, A.rows);
  for (size_t j = 0; j < A.cols; ++j) {
    sc.axpy(A.col[j], K.one());
    sc.axpy(B.col[j], cb);
    C.col[j] = sc.take();
  }
  return C;
}

template <class F>
SpMat<F> sp_scale(const F& K, SpMat<F> A, const typename F::elem& c) {
  if (K.is_zero(c)) return SpMat<F>(A.rows, A.cols);
  for (auto& cl : A.col)
    for (auto& [i, v] : cl) v = K.mul(c, v);
  return A;
}

template <class F>
SpMat<F> sp_transpose(const SpMat<F>& A) {
  SpMat<F> T(A.cols, A.rows);
  for (size_t j = 0; j < A.cols; ++j)
    for (auto& [i, v] : A.col[j]) T.col[i].push_back({uint32_t(j), v});
  return T;
}

template <class F>
SpMat<F> sp_from_dense(const F& K, const Mat<F>& M) {
  SpMat<F> S(M.rows, M.cols);
  for (size_t i = 0; i < M.rows; ++i)
    for (size_t j = 0; j < M.cols; ++j)
      if (!K.is_zero(M(i, j))) S.col[j].push_back({uint32_t(i), M(i, j)});
  return S;
}

template <class F>
Mat<F> sp_to_dense(const F& K, const SpMat<F>& S) {
  Mat<F> M(S.rows, S.cols, K.zero());
  for (size_t j = 0; j < S.cols; ++j)
    for (auto& [i, v] : S.col[j]) M(i, j) = v;
  return M;
}

}  // namespace sv
