#pragma once
// Exact coefficient fields: prime fields, their quadratic extensions,
// and cyclotomic number fields over the rationals.

#include <array>
#include <cstdint>
#include <gmpxx.h>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sv {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

// Smallest prime p >= lo with p = 1 mod m.
inline uint32_t smallest_prime_1_mod(uint32_t m, uint32_t lo = 7) {
  for (uint32_t p = lo;; ++p)
    if (p % m == 1 % m && is_prime(p)) return p;
}

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Fp {
 public:
  using elem = uint32_t;
  Fp() = default;
  explicit Fp(uint32_t p) : p_(p) {
    if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
  }
  uint32_t p() const { return p_; }
  uint32_t characteristic() const { return p_; }
  uint64_t order() const { return p_; }
  elem zero() const { return 0; }
  elem one() const { return 1; }
  elem add(elem a, elem b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  elem sub(elem a, elem b) const { return a >= b ? a - b : a + p_ - b; }
  elem neg(elem a) const { return a ? p_ - a : 0; }
  elem mul(elem a, elem b) const { return uint32_t(uint64_t(a) * b % p_); }
  elem pow(elem a, int64_t e) const {
    if (e < 0) return pow(inv(a), -e);
    return uint32_t(powmod(a, uint64_t(e), p_));
  }
  elem inv(elem a) const {
    if (a == 0) throw FieldError("inverse of zero");
    return pow(a, p_ - 2);
  }
  elem from_int(int64_t v) const {
    int64_t r = v % int64_t(p_);
    return elem(r < 0 ? r + p_ : r);
  }
  bool is_zero(elem a) const { return a == 0; }
  bool eq(elem a, elem b) const { return a == b; }
  std::string str(elem a) const { return std::to_string(a); }
  bool operator==(const Fp& o) const { return p_ == o.p_; }

  // Generator of the multiplicative group, smallest in the usual order.
  elem generator() const {
    if (p_ == 2) return 1;
    auto fs = prime_factors(p_ - 1);
    for (uint32_t g = 2; g < p_; ++g) {
      bool ok = true;
      for (auto f : fs)
        if (powmod(g, (p_ - 1) / f, p_) == 1) { ok = false; break; }
      if (ok) return g;
    }
    throw FieldError("no generator");
  }
  // Primitive m-th root of unity; requires m | p-1.
  elem root_of_unity(uint32_t m) const {
    if ((p_ - 1) % m != 0)
      throw FieldError("F_" + std::to_string(p_) + " has no primitive " + std::to_string(m) + "-th root of unity");
    return pow(generator(), (p_ - 1) / m);
  }

 private:
  uint32_t p_ = 2;
};

// F_{p^2} = F_p[t]/(t^2 - r) for a non-residue r (p odd).
class Fp2 {
 public:
  struct elem {
    uint32_t a = 0, b = 0;
    bool operator==(const elem&) const = default;
    bool operator<(const elem& o) const { return a != o.a ? a < o.a : b < o.b; }
  };
  Fp2() = default;
  explicit Fp2(uint32_t p) : base_(p) {
    if (p == 2) throw FieldError("quadratic extension of F_2 not supported");
    for (uint32_t r = 2; r < p; ++r)
      if (powmod(r, (p - 1) / 2, p) == p - 1) { r_ = r; break; }
  }
  const Fp& base() const { return base_; }
  uint32_t characteristic() const { return base_.p(); }
  uint64_t order() const { return uint64_t(base_.p()) * base_.p(); }
  uint32_t nonresidue() const { return r_; }
  elem zero() const { return {}; }
  elem one() const { return {1, 0}; }
  elem embed(Fp::elem x) const { return {x, 0}; }
  elem make(uint32_t a, uint32_t b) const { return {a % base_.p(), b % base_.p()}; }
  elem add(elem x, elem y) const { return {base_.add(x.a, y.a), base_.add(x.b, y.b)}; }
  elem sub(elem x, elem y) const { return {base_.sub(x.a, y.a), base_.sub(x.b, y.b)}; }
  elem neg(elem x) const { return {base_.neg(x.a), base_.neg(x.b)}; }
  elem mul(elem x, elem y) const {
    const uint64_t p = base_.p();
    uint64_t a = (uint64_t(x.a) * y.a + uint64_t(x.b) * y.b % p * r_) % p;
    uint64_t b = (uint64_t(x.a) * y.b + uint64_t(x.b) * y.a) % p;
    return {uint32_t(a), uint32_t(b)};
  }
  elem inv(elem x) const {
    auto n = base_.sub(base_.mul(x.a, x.a), base_.mul(r_, base_.mul(x.b, x.b)));
    auto ni = base_.inv(n);
    return {base_.mul(x.a, ni), base_.mul(base_.neg(x.b), ni)};
  }
  elem pow(elem x, int64_t e) const {
    if (e < 0) return pow(inv(x), -e);
    elem r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  elem frobenius(elem x) const { return {x.a, base_.neg(x.b)}; }
  elem from_int(int64_t v) const { return {base_.from_int(v), 0}; }
  bool is_zero(elem x) const { return x.a == 0 && x.b == 0; }
  bool eq(elem x, elem y) const { return x == y; }
  bool in_base(elem x) const { return x.b == 0; }
  std::string str(elem x) const {
    if (x.b == 0) return std::to_string(x.a);
    std::string s = x.a ? std::to_string(x.a) + "+" : "";
    return s + (x.b == 1 ? "" : std::to_string(x.b)) + "t";
  }
  // All elements in a fixed order: base field first.
  std::vector<elem> elements() const {
    std::vector<elem> out;
    for (uint32_t b = 0; b < base_.p(); ++b)
      for (uint32_t a = 0; a < base_.p(); ++a) out.push_back({a, b});
    return out;
  }
  bool operator==(const Fp2& o) const { return base_ == o.base_; }

 private:
  Fp base_{3};
  uint32_t r_ = 2;
};

// Q(zeta_m) with zeta a root of the m-th cyclotomic polynomial.
class Cyclotomic {
 public:
  using elem = std::vector<mpq_class>;
  Cyclotomic() : Cyclotomic(3) {}
  explicit Cyclotomic(uint32_t m) : m_(m) {
    phi_ = cyclotomic_poly(m);
    deg_ = int(phi_.size()) - 1;
  }
  uint32_t characteristic() const { return 0; }
  uint64_t order() const { return 0; }
  uint32_t conductor() const { return m_; }
  int degree() const { return deg_; }
  elem zero() const { return elem(deg_, 0); }
  elem one() const {
    elem e(deg_, 0);
    e[0] = 1;
    return e;
  }
  elem zeta() const {
    elem e(deg_, 0);
    if (deg_ == 1) e[0] = -phi_[0];
    else e[1] = 1;
    return e;
  }
  elem add(const elem& x, const elem& y) const {
    elem r(deg_);
    for (int i = 0; i < deg_; ++i) r[i] = x[i] + y[i];
    return r;
  }
  elem sub(const elem& x, const elem& y) const {
    elem r(deg_);
    for (int i = 0; i < deg_; ++i) r[i] = x[i] - y[i];
    return r;
  }
  elem neg(const elem& x) const {
    elem r(deg_);
    for (int i = 0; i < deg_; ++i) r[i] = -x[i];
    return r;
  }
  elem mul(const elem& x, const elem& y) const {
    std::vector<mpq_class> t(2 * deg_ - 1 > 0 ? 2 * deg_ - 1 : 1, 0);
    for (int i = 0; i < deg_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < deg_; ++j)
        if (y[j] != 0) t[i + j] += x[i] * y[j];
    }
    for (int k = int(t.size()) - 1; k >= deg_; --k) {
      if (t[k] == 0) continue;
      mpq_class c = t[k];
      for (int j = 0; j <= deg_; ++j) t[k - deg_ + j] -= c * phi_[j];
    }
    t.resize(deg_);
    return t;
  }
  elem pow(elem x, int64_t e) const {
    if (e < 0) return pow(inv(x), -e);
    elem r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  elem inv(const elem& x) const {
    if (is_zero(x)) throw FieldError("inverse of zero");
    // Solve x*y = 1 via the multiplication matrix.
    int n = deg_;
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1, 0));
    elem basis = zero();
    for (int j = 0; j < n; ++j) {
      elem b = zero();
      b[j] = 1;
      elem c = mul(x, b);
      for (int i = 0; i < n; ++i) M[i][j] = c[i];
    }
    M[0][n] = 1;
    for (int c = 0, r = 0; c < n; ++c) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (M[i][c] != 0) { piv = i; break; }
      if (piv < 0) throw FieldError("singular element");
      std::swap(M[r], M[piv]);
      mpq_class iv = 1 / M[r][c];
      for (int j = c; j <= n; ++j) M[r][j] *= iv;
      for (int i = 0; i < n; ++i) {
        if (i == r || M[i][c] == 0) continue;
        mpq_class f = M[i][c];
        for (int j = c; j <= n; ++j) M[i][j] -= f * M[r][j];
      }
      ++r;
    }
    elem y(n);
    for (int i = 0; i < n; ++i) y[i] = M[i][n];
    return y;
  }
  elem from_int(int64_t v) const {
    elem e = zero();
    e[0] = mpq_class(long(v));
    return e;
  }
  bool is_zero(const elem& x) const {
    for (auto& c : x)
      if (c != 0) return false;
    return true;
  }
  bool eq(const elem& x, const elem& y) const { return x == y; }
  std::string str(const elem& x) const {
    std::string s;
    for (int i = 0; i < deg_; ++i) {
      if (x[i] == 0) continue;
      if (!s.empty()) s += "+";
      s += "(" + x[i].get_str() + ")";
      if (i) s += "z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }
  bool operator==(const Cyclotomic& o) const { return m_ == o.m_; }

  static std::vector<mpq_class> cyclotomic_poly(uint32_t m) {
    // x^m - 1 divided by Phi_d for proper divisors d.
    std::vector<mpq_class> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (uint32_t d = 1; d < m; ++d) {
      if (m % d) continue;
      auto den = cyclotomic_poly(d);
      // long division by monic den
      int dn = int(den.size()) - 1;
      std::vector<mpq_class> q(num.size() - dn, 0);
      for (int k = int(num.size()) - 1; k >= dn; --k) {
        mpq_class c = num[k];
        q[k - dn] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
      }
      num = q;
    }
    return num;
  }

 private:
  uint32_t m_;
  int deg_ = 1;
  std::vector<mpq_class> phi_;
};

}  // namespace sv
