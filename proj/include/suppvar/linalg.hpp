#pragma once
// Dense exact linear algebra over any of the coefficient fields.
// Row vectors throughout: a matrix acts on the right of row vectors.

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "field.hpp"

namespace sv {

template <class F>
struct Mat {
  using E = typename F::elem;
  size_t rows = 0, cols = 0;
  std::vector<E> a;
  Mat() = default;
  Mat(size_t r, size_t c, const E& z) : rows(r), cols(c), a(r * c, z) {}
  E& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const E& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  E* row(size_t i) { return a.data() + i * cols; }
  const E* row(size_t i) const { return a.data() + i * cols; }
};

template <class F>
Mat<F> zeros(const F& K, size_t r, size_t c) { return Mat<F>(r, c, K.zero()); }

template <class F>
Mat<F> identity(const F& K, size_t n) {
  Mat<F> m(n, n, K.zero());
  for (size_t i = 0; i < n; ++i) m(i, i) = K.one();
  return m;
}

namespace detail {

template <uint32_t P>
inline void axpy_fixed(uint32_t* d, const uint32_t* s, uint32_t c, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = (d[i] + c * s[i]) % P;
}

inline void axpy_runtime(uint32_t* d, const uint32_t* s, uint32_t c, size_t n, uint32_t p) {
  for (size_t i = 0; i < n; ++i) d[i] = uint32_t((d[i] + uint64_t(c) * s[i]) % p);
}

// d += c*s over F_p, dispatching small primes to constant-modulus loops.
inline void fp_axpy(uint32_t p, uint32_t* d, const uint32_t* s, uint32_t c, size_t n) {
  switch (p) {
    case 3: return axpy_fixed<3>(d, s, c, n);
    case 5: return axpy_fixed<5>(d, s, c, n);
    case 7: return axpy_fixed<7>(d, s, c, n);
    case 11: return axpy_fixed<11>(d, s, c, n);
    case 13: return axpy_fixed<13>(d, s, c, n);
    case 19: return axpy_fixed<19>(d, s, c, n);
    case 31: return axpy_fixed<31>(d, s, c, n);
    case 37: return axpy_fixed<37>(d, s, c, n);
    case 43: return axpy_fixed<43>(d, s, c, n);
    default: return axpy_runtime(d, s, c, n, p);
  }
}

template <uint32_t P>
inline void scale_fixed(uint32_t* d, uint32_t c, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = (c * d[i]) % P;
}

}  // namespace detail

// d[0..n) += c * s[0..n)
template <class F>
inline void row_axpy(const F& K, typename F::elem* d, const typename F::elem* s,
                     const typename F::elem& c, size_t n) {
  if constexpr (std::is_same_v<F, Fp>) {
    detail::fp_axpy(K.p(), d, s, c, n);
  } else {
    for (size_t i = 0; i < n; ++i)
      if (!K.is_zero(s[i])) d[i] = K.add(d[i], K.mul(c, s[i]));
  }
}

template <class F>
inline void row_scale(const F& K, typename F::elem* d, const typename F::elem& c, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = K.mul(c, d[i]);
}

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<size_t> rref(const F& K, Mat<F>& M, size_t col_limit = size_t(-1)) {
  using E = typename F::elem;
  std::vector<size_t> piv;
  size_t r = 0;
  const size_t C = std::min(M.cols, col_limit);
  for (size_t c = 0; c < C && r < M.rows; ++c) {
    size_t p = r;
    while (p < M.rows && K.is_zero(M(p, c))) ++p;
    if (p == M.rows) continue;
    if (p != r)
      for (size_t j = 0; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
    E iv = K.inv(M(r, c));
    row_scale(K, M.row(r) + c, iv, M.cols - c);
    for (size_t i = 0; i < M.rows; ++i) {
      if (i == r || K.is_zero(M(i, c))) continue;
      E f = K.neg(M(i, c));
      row_axpy(K, M.row(i) + c, M.row(r) + c, f, M.cols - c);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class F>
size_t rank(const F& K, Mat<F> M) {
  using E = typename F::elem;
  size_t r = 0;
  for (size_t c = 0; c < M.cols && r < M.rows; ++c) {
    size_t p = r;
    while (p < M.rows && K.is_zero(M(p, c))) ++p;
    if (p == M.rows) continue;
    if (p != r)
      for (size_t j = c; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
    E iv = K.inv(M(r, c));
    row_scale(K, M.row(r) + c, iv, M.cols - c);
    for (size_t i = r + 1; i < M.rows; ++i) {
      if (K.is_zero(M(i, c))) continue;
      E f = K.neg(M(i, c));
      row_axpy(K, M.row(i) + c, M.row(r) + c, f, M.cols - c);
    }
    ++r;
  }
  return r;
}

template <class F>
Mat<F> transpose(const Mat<F>& M) {
  Mat<F> T(M.cols, M.rows, M.a.empty() ? typename F::elem{} : M.a[0]);
  for (size_t i = 0; i < M.rows; ++i)
    for (size_t j = 0; j < M.cols; ++j) T(j, i) = M(i, j);
  return T;
}

template <class F>
Mat<F> matmul(const F& K, const Mat<F>& A, const Mat<F>& B) {
  Mat<F> C(A.rows, B.cols, K.zero());
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      const auto& a = A(i, k);
      if (K.is_zero(a)) continue;
      row_axpy(K, C.row(i), B.row(k), a, B.cols);
    }
  return C;
}

// Basis (as rows) of {x : M x^T = 0}, i.e. the right null space.
template <class F>
Mat<F> right_kernel(const F& K, Mat<F> M) {
  auto piv = rref(K, M);
  std::vector<char> is_piv(M.cols, 0);
  for (auto c : piv) is_piv[c] = 1;
  size_t nfree = M.cols - piv.size();
  Mat<F> out(nfree, M.cols, K.zero());
  size_t k = 0;
  for (size_t f = 0; f < M.cols; ++f) {
    if (is_piv[f]) continue;
    out(k, f) = K.one();
    for (size_t i = 0; i < piv.size(); ++i)
      if (!K.is_zero(M(i, f))) out(k, piv[i]) = K.neg(M(i, f));
    ++k;
  }
  return out;
}

// Basis (as rows) of {x : x M = 0}.
template <class F>
Mat<F> left_kernel(const F& K, const Mat<F>& M) {
  if (M.rows == 0) return Mat<F>(0, 0, K.zero());
  if (M.cols == 0) return identity(K, M.rows);
  return right_kernel(K, transpose(M));
}

// Some x with x M = y, or false.
template <class F>
bool solve_left(const F& K, const Mat<F>& M, const std::vector<typename F::elem>& y,
                std::vector<typename F::elem>& x) {
  Mat<F> T(M.cols, M.rows + 1, K.zero());
  for (size_t i = 0; i < M.rows; ++i)
    for (size_t j = 0; j < M.cols; ++j) T(j, i) = M(i, j);
  for (size_t j = 0; j < M.cols; ++j) T(j, M.rows) = y[j];
  auto piv = rref(K, T, M.rows);
  for (size_t i = piv.size(); i < T.rows; ++i)
    if (!K.is_zero(T(i, M.rows))) return false;
  x.assign(M.rows, K.zero());
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = T(i, M.rows);
  return true;
}

// Incrementally built subspace with reduced pivots.
template <class F>
class Echelon {
 public:
  using E = typename F::elem;
  Echelon(const F& K, size_t n) : K_(&K), n_(n) {}
  size_t dim() const { return piv_.size(); }
  size_t ambient() const { return n_; }
  // Reduce v against the basis in place.
  void reduce(E* v) const {
    for (size_t r = 0; r < piv_.size(); ++r) {
      const E& c = v[piv_[r]];
      if (K_->is_zero(c)) continue;
      E f = K_->neg(c);
      row_axpy(*K_, v, rows_.data() + r * n_, f, n_);
    }
  }
  bool contains(std::vector<E> v) const {
    reduce(v.data());
    for (auto& x : v)
      if (!K_->is_zero(x)) return false;
    return true;
  }
  // Adds v if independent; returns whether it was added.
  bool insert(std::vector<E> v) {
    reduce(v.data());
    size_t p = 0;
    while (p < n_ && K_->is_zero(v[p])) ++p;
    if (p == n_) return false;
    E iv = K_->inv(v[p]);
    row_scale(*K_, v.data(), iv, n_);
    rows_.insert(rows_.end(), v.begin(), v.end());
    piv_.push_back(p);
    return true;
  }
  const std::vector<size_t>& pivots() const { return piv_; }
  std::vector<E> basis_row(size_t r) const {
    return std::vector<E>(rows_.begin() + r * n_, rows_.begin() + (r + 1) * n_);
  }

 private:
  const F* K_;
  size_t n_;
  std::vector<E> rows_;
  std::vector<size_t> piv_;
};

// Sparse vector: sorted (index, value) pairs with nonzero values.
template <class F>
using SVec = std::vector<std::pair<uint32_t, typename F::elem>>;

template <class F>
void svec_axpy(const F& K, std::vector<typename F::elem>& dense, const SVec<F>& s,
               const typename F::elem& c) {
  for (auto& [i, v] : s) dense[i] = K.add(dense[i], K.mul(c, v));
}

template <class F>
SVec<F> to_sparse(const F& K, const std::vector<typename F::elem>& d) {
  SVec<F> s;
  for (uint32_t i = 0; i < d.size(); ++i)
    if (!K.is_zero(d[i])) s.push_back({i, d[i]});
  return s;
}

// Lift an F_p matrix into F_{p^2}.
inline Mat<Fp2> embed(const Fp2& L, const Mat<Fp>& M) {
  Mat<Fp2> out(M.rows, M.cols, L.zero());
  for (size_t i = 0; i < M.a.size(); ++i) out.a[i] = L.embed(M.a[i]);
  return out;
}

}  // namespace sv
