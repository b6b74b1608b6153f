#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "suppvar/catalog.hpp"
#include "suppvar/half_braiding.hpp"

using namespace sv;

namespace {

std::string why(const CheckReport& r) {
  auto f = r.first_failure();
  return f ? f->name + " " + f->detail : "";
}

}  // namespace

TEST_CASE("catalog modules are valid modules") {
  for (auto spec : {qci_spec(false), connected_spec(), no_tpp_spec(), heisenberg_spec()}) {
    auto H = build_algebra(spec);
    for (auto m : {"k", "free", "simples", "random:3", "random:4:6"}) {
      auto V = parse_module(H, m);
      INFO(H->name << " " << m << " " << why(validate_module(V)));
      CHECK(validate_module(V).ok());
    }
  }
}

TEST_CASE("tensor and dual: dimensions and validity") {
  auto H = build_algebra(qci_spec(false));
  for (uint64_t s = 1; s <= 4; ++s) {
    auto V = random_module(H, s, 8), W = random_module(H, s + 50, 8);
    auto T = tensor(V, W);
    CHECK(T.dim == V.dim * W.dim);
    CHECK(validate_module(T).ok());
    auto Vd = dual(V);
    CHECK(Vd.dim == V.dim);
    CHECK(validate_module(Vd).ok());
    CHECK(validate_module(dual(Vd)).ok());
  }
}

TEST_CASE("tensor over a group scheme with a nontrivial pi") {
  auto H = build_algebra(no_tpp_spec());
  auto V = parse_module(H, "cyclic:w1");
  auto s = simple_module(H, 1);
  CHECK(validate_module(tensor(V, s)).ok());
  CHECK(validate_module(tensor(s, V)).ok());
  CHECK(validate_module(tensor(V, dual(V))).ok());
}

TEST_CASE("simples") {
  CHECK(simples_sum(build_algebra(qci_spec(false))).dim == 9);
  CHECK(simples_sum(build_algebra(no_tpp_spec())).dim == 2);
  CHECK(simples_sum(build_algebra(truncated_polynomial_spec())).dim == 1);
}

TEST_CASE("free modules are projective, quotients by a letter are not") {
  for (auto spec : {qci_spec(false), connected_spec(), heisenberg_spec()}) {
    auto H = build_algebra(spec);
    CHECK(is_projective(free_module(H)));
    CHECK_FALSE(is_projective(trivial_module(H)));
    CHECK(is_projective(tensor(free_module(H), random_module(H, 2, 6))));
  }
}

TEST_CASE("cyclic quotients by monomials have the expected dimension") {
  auto H = build_algebra(connected_spec());
  CHECK(parse_module(H, "cyclic:").dim == 9);
  CHECK(parse_module(H, "cyclic:w1").dim == 3);
  CHECK(parse_module(H, "cyclic:w1^2").dim == 6);
  CHECK(parse_module(H, "cyclic:w1,w2").dim == 1);
  CHECK(parse_module(H, "cyclic:w1*w2").dim == 5);
  CHECK_THROWS(parse_module(H, "cyclic:q7"));
  CHECK_THROWS(parse_module(H, "wat"));
}

TEST_CASE("monomial quotient catalog has one entry per monomial ideal") {
  auto H = build_algebra(connected_spec());
  auto specs = monomial_quotient_specs(*H);
  std::set<std::string> uniq(specs.begin(), specs.end());
  CHECK(uniq.size() == specs.size());
  // proper monomial ideals of k[x,y]/(x^3,y^3) with at most two generators, zero ideal included;
  // counted by brute force over staircases in the 3x3 box
  CHECK(specs.size() == 18);
}

TEST_CASE("Carlson modules of degree two classes over F_3") {
  auto H = build_algebra(connected_spec());
  auto specs = carlson_specs(H, 2);
  CHECK(specs.size() == 13);
  for (auto& s : specs) {
    auto V = parse_module(H, s);
    CHECK(validate_module(V).ok());
    CHECK(V.dim == 9);
  }
  CHECK_THROWS(parse_module(H, "carlson:2:0 0 0"));
}

TEST_CASE("random modules are reproducible from the seed") {
  auto H = build_algebra(qci_spec(false));
  auto a = random_module(H, 11, 12), b = random_module(H, 11, 12);
  CHECK(a.dim == b.dim);
  CHECK(a.act == b.act);
  CHECK(a.label == b.label);
}

TEST_CASE("canonical half-braiding on QCI modules") {
  for (bool ext : {false, true}) {
    auto H = build_algebra(qci_spec(ext));
    for (uint64_t s = 1; s <= 3; ++s) {
      auto b = canonical_half_braiding(share(random_module(H, s, 8)));
      INFO(why(check_half_braiding(b)));
      CHECK(check_half_braiding(b).ok());
    }
    auto bad = check_half_braiding(trivial_half_braiding(share(free_module(H))));
    CHECK_FALSE(bad.passed("intertwiners"));
  }
}

TEST_CASE("half-braidings on the semidirect example") {
  auto H = build_algebra(no_tpp_spec());
  auto V = parse_module(H, "cyclic:w1");
  auto t = check_half_braiding(trivial_half_braiding(share(V)));
  CHECK_FALSE(t.ok());
  CHECK(t.first_failure()->name == "intertwiners");
  CHECK(check_half_braiding(trivial_half_braiding(share(trivial_module(H)))).ok());
  auto E = equivariant_closure(V);
  CHECK(E.V->dim == 6);
  CHECK(check_half_braiding(E).ok());
  CHECK_THROWS(canonical_half_braiding(share(V)));
}

TEST_CASE("a half-braiding with a wrong map count is rejected") {
  auto H = build_algebra(qci_spec(false));
  auto b = canonical_half_braiding(share(trivial_module(H)));
  b.gamma.pop_back();
  CHECK_FALSE(check_half_braiding(b).ok());
}
