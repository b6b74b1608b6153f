#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "suppvar/catalog.hpp"
#include "suppvar/ext.hpp"

using namespace sv;

namespace {

std::string why(const CheckReport& r) {
  auto f = r.first_failure();
  return f ? f->name + " " + f->detail : "";
}

std::vector<size_t> seq(std::initializer_list<size_t> l) { return l; }

}  // namespace

TEST_CASE("Ext over k[x]/(x^3) is one-dimensional in every degree") {
  auto H = build_algebra(truncated_polynomial_spec());
  auto T = ext_table(trivial_module(H), trivial_module(H), 10, false);
  REQUIRE(T.dims.size() == 11);
  for (auto d : T.dims) CHECK(d == 1);
}

TEST_CASE("Ext(k,k) over the QCI local algebra") {
  auto H = build_algebra(qci_spec(false));
  auto k = trivial_module(H);
  auto T = ext_table(k, k, 8, false);
  for (size_t i = 0; i < T.dims.size(); ++i) CHECK(T.dims[i] == i + 1);
  // only the polynomial part of even degree is grouplike-invariant
  auto E = ext_table(k, k, 8, true);
  CHECK(E.dims == seq({1, 0, 2, 0, 3, 0, 4, 0, 5}));
}

TEST_CASE("same Ext dimensions over F_7 and over Q(zeta_3)") {
  Cyclotomic C(3);
  auto HC = std::make_shared<const HopfAlgebra<Cyclotomic>>(build_qci(C, 3, {{1, 1}, {-1, 1}}, false));
  auto HF = build_algebra(qci_spec(false));
  for (bool eq : {false, true}) {
    auto a = ext_table(trivial_module(HC), trivial_module(HC), 6, eq);
    auto b = ext_table(trivial_module(HF), trivial_module(HF), 6, eq);
    CHECK(a.dims == b.dims);
  }
  auto a = ext_table(trivial_module(HC), simples_sum(HC), 4, true);
  auto b = ext_table(trivial_module(HF), simples_sum(HF), 4, true);
  CHECK(a.dims == b.dims);
}

TEST_CASE("Ext over the elementary abelian function algebra") {
  auto H = build_algebra(connected_spec());
  auto T = ext_table(trivial_module(H), trivial_module(H), 6, false);
  // k[y1,y2] (x) Lambda(e1,e2): dim Ext^n = n + 1
  for (size_t i = 0; i < T.dims.size(); ++i) CHECK(T.dims[i] == i + 1);
}

TEST_CASE("minimal resolutions pass the exactness checks") {
  for (auto spec : {qci_spec(false), connected_spec(), heisenberg_spec(), no_tpp_spec()}) {
    auto H = build_algebra(spec);
    for (auto m : {"k", "random:2:8", "simples"}) {
      auto V = parse_module(H, m);
      auto R = minimal_resolution(V, 5);
      INFO(H->name << " " << m << ": " << why(check_resolution(R, V)));
      CHECK(check_resolution(R, V).ok());
    }
  }
}

TEST_CASE("projective modules have vanishing higher Ext") {
  auto H = build_algebra(qci_spec(false));
  auto T = ext_table(free_module(H), trivial_module(H), 4, false);
  for (size_t i = 1; i < T.dims.size(); ++i) CHECK(T.dims[i] == 0);
}

TEST_CASE("theta operators do not depend on the lift and commute") {
  auto H = build_algebra(qci_spec(false));
  const auto& K = H->K;
  for (uint64_t s = 1; s <= 3; ++s) {
    auto M = random_module(H, s, 10);
    auto T = ext_table(M, M, 6, true);
    auto L1 = q_lift(*T.res, 0), L2 = q_lift(*T.res, 777);
    for (int n = 0; n + 2 <= T.D; ++n) {
      auto a = theta_on_ext(T, L1, n), b = theta_on_ext(T, L2, n);
      for (int f = 0; f < 2; ++f) CHECK(mat_equal(K, a[f], b[f]));
      if (n + 4 <= T.D) {
        auto c = theta_on_ext(T, L1, n + 2);
        CHECK(mat_equal(K, matmul(K, c[0], a[1]), matmul(K, c[1], a[0])));
      }
    }
  }
}

TEST_CASE("Ext(k,k) is a polynomial ring on the theta classes") {
  for (auto spec : {truncated_polynomial_spec(), connected_spec(), qci_spec(false)}) {
    auto H = build_algebra(spec);
    auto r = ext_ring_polynomial_check(H, 8);
    INFO(H->name << ": " << why(r));
    CHECK(r.ok());
  }
}

TEST_CASE("Carlson modules: dimension and the zero class") {
  auto H = build_algebra(connected_spec());
  auto Rk = minimal_resolution(trivial_module(H), 4);
  auto C = carlson_module(Rk, 2, {1, 0, 0});
  CHECK_FALSE(C.degenerate);
  CHECK(validate_module(C.module).ok());
  // Omega^1 k has dim 8, Omega^2 k = ker(P_1 -> Omega^1 k) has dim 18 - 8 = 10,
  // and the Carlson module is the kernel of Omega^2 k -> k
  CHECK(C.module.dim == 9);
  auto Z = carlson_module(Rk, 2, {0, 0, 0});
  CHECK(Z.degenerate);
}

TEST_CASE("a resolution that is too large is refused") {
  auto H = build_algebra(qci_spec(false));
  CHECK_THROWS_AS(minimal_resolution(simples_sum(H), 6, 100), ResolutionError);
}
