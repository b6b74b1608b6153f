#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "suppvar/catalog.hpp"
#include "suppvar/koszul.hpp"

using namespace sv;

namespace {

std::string why(const CheckReport& r) {
  auto f = r.first_failure();
  return f ? f->name + " " + f->detail : "";
}

std::string why(const TwttReport& r) {
  if (!r.checks.ok()) return why(r.checks);
  for (size_t i = 0; i < r.equal.size(); ++i)
    if (!r.equal[i])
      return "degree " + std::to_string(i) + ": " + std::to_string(r.twisted[i]) + " vs " + std::to_string(r.ext[i]);
  return "";
}

}  // namespace

TEST_CASE("q-Koszul complex of the QCI integration") {
  for (bool ext : {false, true}) {
    auto H = build_algebra(qci_spec(ext));
    auto C = q_koszul_resolution(H);
    CHECK(C.n == 2);
    CHECK(C.rank(0) == 1);
    CHECK(C.rank(1) == 2);
    CHECK(C.rank(2) == 1);
    CHECK(C.rank(3) == 0);
    INFO(why(check_q_koszul(C)));
    CHECK(check_q_koszul(C).ok());
  }
}

TEST_CASE("q-Koszul complex of the commutative integrations") {
  for (auto spec : {truncated_polynomial_spec(), connected_spec()}) {
    auto C = q_koszul_resolution(build_algebra(spec));
    CHECK(check_q_koszul(C).ok());
  }
}

TEST_CASE("integrations with derived letters are rejected") {
  CHECK_THROWS_AS(q_koszul_resolution(build_algebra(heisenberg_spec())), std::invalid_argument);
}

TEST_CASE("Ext over the integration is exterior") {
  auto H = build_algebra(qci_spec(false));
  auto k = trivial_module(H);
  CHECK(ext_over_integration(k, k) == std::vector<size_t>{1, 2, 1});
  auto T = build_algebra(truncated_polynomial_spec());
  CHECK(ext_over_integration(trivial_module(T), trivial_module(T)) == std::vector<size_t>{1, 1});
}

TEST_CASE("Koszul Hom operators") {
  auto H = build_algebra(qci_spec(false));
  auto C = q_koszul_resolution(H);
  auto N = tensor(random_module(H, 4, 6), dual(random_module(H, 9, 6)));
  auto Hm = koszul_hom(C, N);
  INFO(why(check_koszul_hom(Hm, H->K)));
  CHECK(check_koszul_hom(Hm, H->K).ok());
}

TEST_CASE("twisted product computes Ext over k[x]/(x^3)") {
  auto H = build_algebra(truncated_polynomial_spec());
  auto k = trivial_module(H);
  auto r = verify_twtt(k, k, 10);
  INFO(why(r));
  CHECK(r.ok());
  CHECK(r.twisted == std::vector<size_t>(11, 1));
}

TEST_CASE("twisted product computes Ext over the QCI") {
  for (bool ext : {false, true}) {
    auto H = build_algebra(qci_spec(ext));
    auto k = trivial_module(H);
    auto r = verify_twtt(k, k, 8);
    INFO(why(r));
    CHECK(r.ok());
    for (size_t i = 0; i < r.twisted.size(); ++i) CHECK(r.twisted[i] == i + 1);
    for (uint64_t s = 1; s <= 2; ++s) {
      auto r2 = verify_twtt(random_module(H, s, 6), random_module(H, s + 10, 6), 6);
      INFO(why(r2));
      CHECK(r2.ok());
    }
  }
}

TEST_CASE("twisted product over the elementary abelian function algebra") {
  auto H = build_algebra(connected_spec());
  auto r = verify_twtt(random_module(H, 2, 6), random_module(H, 3, 6), 6);
  INFO(why(r));
  CHECK(r.ok());
}
