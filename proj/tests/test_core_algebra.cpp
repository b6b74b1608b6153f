#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "suppvar/axioms.hpp"
#include "suppvar/catalog.hpp"

using namespace sv;

TEST_CASE("prime field arithmetic") {
  Fp K(7);
  CHECK(K.mul(3, 5) == 1);
  CHECK(K.inv(3) == 5);
  CHECK(K.from_int(-1) == 6);
  auto z = K.root_of_unity(3);
  CHECK(K.pow(z, 3) == 1);
  CHECK(z != 1);
}

TEST_CASE("quadratic extension: Frobenius is an involution fixing F_p") {
  Fp2 L(3);
  for (uint32_t a = 0; a < 3; ++a)
    for (uint32_t b = 0; b < 3; ++b) {
      auto x = L.make(a, b);
      CHECK(L.frobenius(L.frobenius(x)) == x);
      CHECK((L.frobenius(x) == x) == (b == 0));
      CHECK(L.frobenius(x) == L.pow(x, 3));
    }
}

TEST_CASE("cyclotomic field: zeta has order m") {
  Cyclotomic C(3);
  auto z = C.zeta();
  CHECK(!C.eq(z, C.one()));
  CHECK(C.eq(C.pow(z, 3), C.one()));
  // 1 + zeta + zeta^2 = 0
  CHECK(C.is_zero(C.add(C.add(C.one(), z), C.mul(z, z))));
}

TEST_CASE("default primes") {
  CHECK(default_prime_for(3) == 7);
  CHECK(default_prime_for(5) == 11);
  CHECK(borel_spec(1, 5).prime() == 11);
  CHECK(borel_spec(2, 5).prime() == 31);
  CHECK(qci_spec(false).prime() == 7);
}

TEST_CASE("algebra dimensions") {
  auto H = build_algebra(qci_spec(false));
  CHECK(H->local->dim() == 9);
  CHECK(H->nlabels == 9);
  auto He = build_algebra(qci_spec(true));
  CHECK(He->local->dim() * He->nlabels == 729);
  auto N = build_algebra(no_tpp_spec());
  CHECK(N->local->dim() * N->perms.size() == 18);
  CHECK(N->nlabels == 2);
  auto T = build_algebra(truncated_polynomial_spec());
  CHECK(T->local->dim() == 3);
  auto Z = build_algebra(heisenberg_spec());
  CHECK(Z->local->dim() == 27);
  auto B = build_algebra(borel_spec(2, 5));
  CHECK(B->local->dim() == 125);
}

TEST_CASE("Hopf axioms hold for every constructor") {
  std::vector<AlgebraSpec> specs{qci_spec(false),     qci_spec(true),        truncated_polynomial_spec(),
                                 connected_spec(),    no_tpp_spec(),         heisenberg_spec(),
                                 borel_spec(1, 5),    borel_spec(2, 5)};
  auto ad = borel_spec(2, 5);
  ad.lattice = "ad";
  specs.push_back(ad);
  for (auto& s : specs) {
    auto H = build_algebra(s);
    auto rep = hopf_axioms_check(*H);
    INFO(H->name << ": " << (rep.ok() ? "" : rep.first_failure()->name + " " + rep.first_failure()->detail));
    CHECK(rep.ok());
  }
}

TEST_CASE("primitive coproduct on the QCI breaks bialgebra compatibility") {
  auto H = build_algebra(qci_spec(false));
  AxiomOptions o;
  o.primitive_coproduct = true;
  auto rep = hopf_axioms_check(*H, o);
  CHECK_FALSE(rep.passed("bialgebra compatibility"));
}

TEST_CASE("QCI matrix validation") {
  Fp K(7);
  // a_12 = 1: det = 1 + 1 = 2, not divisible by 3
  CHECK_NOTHROW(build_qci(K, 3, {{1, 1}, {-1, 1}}, false));
  CHECK_THROWS(build_qci(K, 3, {{1, 1}, {1, 1}}, false));
}

TEST_CASE("Borel lattice must be named") {
  Fp K(31);
  CHECK_THROWS(build_quantum_borel(K, 2, 5, ""));
}

TEST_CASE("normal forms agree in both association orders on random words") {
  for (auto spec : {qci_spec(false), heisenberg_spec(), borel_spec(2, 5)}) {
    auto H = build_algebra(spec);
    const auto& Q = H->local->integration();
    std::mt19937_64 rng(5);
    for (int t = 0; t < 1000; ++t) {
      std::vector<int> w(1 + rng() % 6);
      for (auto& x : w) x = int(rng() % uint64_t(Q.letters()));
      REQUIRE(Q.word(w, true) == Q.word(w, false));
    }
  }
}

TEST_CASE("deformation parameters are central up to the truncation") {
  for (auto spec : {qci_spec(false), connected_spec(), heisenberg_spec(), borel_spec(2, 5)}) {
    auto H = build_algebra(spec);
    const auto& R = *H->local;
    const auto& Q = R.integration();
    const auto& K = H->K;
    for (int i = 0; i < R.num_f(); ++i) {
      Poly<Fp> f{{mletter(i, R.f_exponent(i)), K.one()}};
      for (int x = 0; x < Q.letters(); ++x) {
        Poly<Fp> y{{mletter(x), K.one()}};
        CHECK(Q.mul(f, y) == Q.mul(y, f));
      }
    }
  }
}

TEST_CASE("overflowing the truncation is an error") {
  auto H = build_algebra(truncated_polynomial_spec());
  const auto& Q = H->local->integration();
  std::vector<int> w(300, 0);
  CHECK_THROWS_AS(Q.word(w), DegreeOverflow);
}
