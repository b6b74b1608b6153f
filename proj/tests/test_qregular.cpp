#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "suppvar/catalog.hpp"
#include "suppvar/qregular.hpp"

using namespace sv;

namespace {

std::string why(const CheckReport& r) {
  auto f = r.first_failure();
  return f ? f->name + " " + f->detail : "";
}

int find_root(const std::vector<RootVectorInfo>& info, int i, int j) {
  for (size_t g = 0; g < info.size(); ++g)
    if (info[g].ij == std::pair<int, int>{i, j}) return int(g);
  return -1;
}

}  // namespace

TEST_CASE("type A2 root vectors and their characters") {
  Fp K(7);
  auto [T, info] = root_vectors_typeA(K, 2, 3, 13);
  REQUIRE(info.size() == 3);
  int a = find_root(info, 1, 2), b = find_root(info, 2, 3), ab = find_root(info, 1, 3);
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  REQUIRE(ab >= 0);
  CHECK(info[ab].height == 2);
  CHECK(info[a].height == 1);
  // E_{alpha+beta} q-commutes with K_alpha by q and with K_beta by q^{-1}
  CHECK(info[ab].chi == std::vector<int>{1, 2});
}

TEST_CASE("type A3 has six root vectors ordered by height") {
  Fp K(7);
  auto [T, info] = root_vectors_typeA(K, 3, 3, 10);
  CHECK(info.size() == 6);
  auto c = typeA_candidate(T, info);
  REQUIRE(c.x.size() == 6);
  int last = 0;
  for (auto& nm : c.names) {
    for (auto& i : info)
      if (i.name == nm) {
        CHECK(i.height >= last);
        last = i.height;
      }
  }
}

TEST_CASE("skew polynomial generators form a q-regular sequence") {
  Fp K(7);
  auto c = skew_polynomial_candidate(K, {{1, 1}, {-1, 1}}, 3, 64);
  auto R = check_q_regular(c, 12);
  INFO(why(R.checks));
  CHECK(R.checks.ok());
  CHECK(R.violations.empty());
  auto X = koszul_transfer_check(c, 9);
  INFO(why(X.checks));
  CHECK(X.checks.ok());
}

TEST_CASE("A2 root vectors at l = 3 are q-regular up to the default truncation") {
  Fp K(7);
  const int T = default_truncation(2, 3);
  CHECK(T == 12);
  auto [TA, info] = root_vectors_typeA(K, 2, 3, T + 1);
  auto c = typeA_candidate(TA, info);
  auto R = check_q_regular(c, T);
  INFO(why(R.checks));
  CHECK(R.checks.ok());
  CHECK(R.truncation == T);
}

TEST_CASE("a truncation below the sequence degrees is refused") {
  Fp K(7);
  auto [TA, info] = root_vectors_typeA(K, 2, 3, 13);
  auto c = typeA_candidate(TA, info);
  CHECK_THROWS_AS(check_q_regular(c, 1), QRegularError);
}

TEST_CASE("a wrong character is detected") {
  Fp K(7);
  auto [TA, info] = root_vectors_typeA(K, 2, 3, 13);
  auto c = typeA_candidate(TA, info);
  c.chi.back()[0] = (c.chi.back()[0] + 1) % 3;
  auto R = check_q_regular(c, 12);
  CHECK_FALSE(R.checks.passed("skew central modulo later members"));
  CHECK_FALSE(R.violations.empty());
}

TEST_CASE("a sequence that misses a simple root vector does not generate the augmentation ideal") {
  Fp K(7);
  auto [TA, info] = root_vectors_typeA(K, 2, 3, 13);
  auto c = typeA_candidate(TA, info);
  // dropping E_{alpha+beta} would not matter: it lies in the ideal of the simple ones
  c.x.erase(c.x.begin());
  c.chi.erase(c.chi.begin());
  c.names.erase(c.names.begin());
  c.fexp.erase(c.fexp.begin());
  auto R = check_q_regular(c, 12);
  CHECK_FALSE(R.checks.passed("generates the augmentation ideal"));
}
