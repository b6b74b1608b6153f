#pragma once
// Hopf axiom verification. Small algebras are checked exhaustively on the
// basis; larger ones through their presentation: every defining relation must
// be killed by Delta, S and eps, and the coalgebra axioms are checked on
// generators (which suffices since Delta is multiplicative and S is
// anti-multiplicative once the relations are respected).

#include <random>
#include <sstream>

#include "check.hpp"
#include "hopf_ops.hpp"

namespace sv {

struct HGen {
  enum Kind { Letter, Group, Delta } kind;
  int i;  // generator position, group coordinate, or group element
};

template <class F>
using HRel = std::vector<std::pair<std::vector<HGen>, typename F::elem>>;

template <class F>
struct NamedRel {
  std::string name;
  HRel<F> rel;
};

namespace detail {

template <class F>
HRel<F> hrel_from_nc(const HopfAlgebra<F>& H, const NcPoly<F>& p) {
  HRel<F> r;
  const auto& gens = H.local->gens();
  for (auto& [w, c] : p) {
    std::vector<HGen> hw;
    for (int x : w) {
      int pos = int(std::find(gens.begin(), gens.end(), x) - gens.begin());
      if (pos == int(gens.size())) throw std::logic_error("relation uses a non-generator letter");
      hw.push_back({HGen::Letter, pos});
    }
    r.push_back({hw, c});
  }
  return r;
}

template <class F>
NcPoly<F> nc_mul(const F& K, const NcPoly<F>& a, const NcPoly<F>& b) {
  NcPoly<F> o;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      auto w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      o.push_back({w, K.mul(ca, cb)});
    }
  return o;
}

template <class F>
NcPoly<F> nc_mono(const LocalAlgebra<F>& R, Mono m) {
  const F& K = R.field();
  NcPoly<F> cur{{{}, K.one()}};
  for (int x = 0; x < R.letters(); ++x)
    for (int e = 0; e < mexp(m, x); ++e) cur = nc_mul(K, cur, R.letter_def(x));
  return cur;
}

}  // namespace detail

// Defining relations of H in its generators.
template <class F>
std::vector<NamedRel<F>> defining_relations(const HopfAlgebra<F>& H) {
  const F& K = H.K;
  const auto& R = *H.local;
  const auto& Q = R.integration();
  std::vector<NamedRel<F>> out;
  for (int b = 0; b < R.letters(); ++b)
    for (int a = 0; a < b; ++a) {
      if (!Q.has_rule(b, a)) continue;
      auto p = detail::nc_mul(K, R.letter_def(b), R.letter_def(a));
      for (auto& [m, c] : Q.rule(b, a))
        for (auto& [w, cw] : detail::nc_mono(R, m)) p.push_back({w, K.neg(K.mul(c, cw))});
      out.push_back({"commutation " + Q.name(b) + Q.name(a), detail::hrel_from_nc(H, p)});
    }
  for (int i = 0; i < R.letters(); ++i)
    out.push_back({"truncation " + Q.name(i) + "^" + std::to_string(R.f_exponent(i)),
                   detail::hrel_from_nc(H, detail::nc_mono(R, R.f_mono(i)))});
  for (size_t s = 0; s < H.extra_relations.size(); ++s)
    out.push_back({"serre " + std::to_string(s), detail::hrel_from_nc(H, H.extra_relations[s])});
  const int ng = H.ngens();
  if (H.kind == HopfKind::Bosonized) {
    const int r = int(H.orders.size());
    for (int k = 0; k < r; ++k) {
      HRel<F> p{{std::vector<HGen>(H.orders[k], HGen{HGen::Group, k}), K.one()}, {{}, K.neg(K.one())}};
      out.push_back({"group order " + std::to_string(k), p});
      for (int j = k + 1; j < r; ++j)
        out.push_back({"group commute", {{{{HGen::Group, k}, {HGen::Group, j}}, K.one()},
                                          {{{HGen::Group, j}, {HGen::Group, k}}, K.neg(K.one())}}});
      for (int g = 0; g < ng; ++g) {
        std::vector<int> u(r, 0);
        u[k] = 1;
        auto w = H.pair(H.encode(u), H.letter_label[R.gens()[g]]);
        out.push_back({"group action " + std::to_string(k) + "," + std::to_string(g),
                       {{{{HGen::Group, k}, {HGen::Letter, g}}, K.one()},
                        {{{HGen::Letter, g}, {HGen::Group, k}}, K.neg(w)}}});
      }
    }
  } else {
    const int G = int(H.nlabels);
    HRel<F> sum{{{}, K.neg(K.one())}};
    for (int g = 0; g < G; ++g) {
      sum.push_back({{{HGen::Delta, g}}, K.one()});
      for (int h = 0; h < G; ++h) {
        HRel<F> p{{{{HGen::Delta, g}, {HGen::Delta, h}}, K.one()}};
        if (g == h) p.push_back({{{HGen::Delta, g}}, K.neg(K.one())});
        out.push_back({"idempotent " + std::to_string(g) + "," + std::to_string(h), p});
      }
      for (int i = 0; i < ng; ++i)
        out.push_back({"central idempotent", {{{{HGen::Delta, g}, {HGen::Letter, i}}, K.one()},
                                              {{{HGen::Letter, i}, {HGen::Delta, g}}, K.neg(K.one())}}});
    }
    out.push_back({"partition of unity", sum});
  }
  return out;
}

template <class F>
class AxiomChecker {
 public:
  using E = typename F::elem;
  AxiomChecker(const HopfAlgebra<F>& H, bool primitive) : H_(H), K_(H.K), ops_(H, primitive) {}

  HElem<F> gen_elem(const HGen& g) const {
    if (g.kind == HGen::Letter) return ops_.letter(H_.local->gens()[g.i]);
    if (g.kind == HGen::Group) {
      std::vector<int> u(H_.orders.size(), 0);
      u[g.i] = 1;
      return ops_.group_elem(H_.encode(u));
    }
    return ops_.group_elem(uint32_t(g.i));
  }
  HElem<F> gen_delta(const HGen& g) const {
    if (g.kind == HGen::Letter) return ops_.delta_gen_letter(g.i);
    auto e = gen_elem(g);
    return ops_.delta(e);
  }
  HElem<F> gen_antipode(const HGen& g) const {
    if (g.kind == HGen::Letter) return ops_.antipode_gen_letter(g.i);
    return ops_.antipode(gen_elem(g));
  }
  E gen_counit(const HGen& g) const { return ops_.counit(gen_elem(g)); }

  HElem<F> eval(const HRel<F>& r) const {
    HElem<F> out;
    for (auto& [w, c] : r) {
      HElem<F> t = ops_.one();
      for (auto& g : w) t = ops_.mul(t, gen_elem(g));
      out = ops_.add(out, t, c);
    }
    return out;
  }
  HElem<F> eval_delta(const HRel<F>& r) const {
    HElem<F> out;
    for (auto& [w, c] : r) {
      HElem<F> t = ops_.tensor(ops_.one(), ops_.one());
      for (auto& g : w) t = ops_.tmul(t, gen_delta(g));
      out = ops_.add(out, t, c);
    }
    return out;
  }
  HElem<F> eval_antipode(const HRel<F>& r) const {
    HElem<F> out;
    for (auto& [w, c] : r) {
      HElem<F> t = ops_.one();
      for (auto& g : w) t = ops_.mul(gen_antipode(g), t);
      out = ops_.add(out, t, c);
    }
    return out;
  }
  E eval_counit(const HRel<F>& r) const {
    E s = K_.zero();
    for (auto& [w, c] : r) {
      E t = c;
      for (auto& g : w) t = K_.mul(t, gen_counit(g));
      s = K_.add(s, t);
    }
    return s;
  }

  std::string basis_name(uint64_t k) const {
    std::string s = H_.local->basis_str(ops_.fiber(k));
    uint32_t g = ops_.label(k);
    if (H_.kind == HopfKind::Bosonized) {
      auto v = H_.decode(g);
      s += "*g(";
      for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      s += ")";
    } else {
      s += "*delta_" + std::to_string(g);
    }
    return s;
  }

  CheckReport presented(uint64_t seed, int samples) const {
    CheckReport rep;
    rep.subject = H_.name;
    auto rels = defining_relations(H_);
    std::string bad_rel, bad_delta, bad_s, bad_eps;
    for (auto& nr : rels) {
      if (bad_rel.empty() && !eval(nr.rel).empty()) bad_rel = nr.name;
      if (bad_delta.empty() && !eval_delta(nr.rel).empty()) bad_delta = nr.name;
      if (bad_s.empty() && !eval_antipode(nr.rel).empty()) bad_s = nr.name;
      if (bad_eps.empty() && !K_.is_zero(eval_counit(nr.rel))) bad_eps = nr.name;
    }
    rep.add("relations hold in H", bad_rel.empty(), bad_rel);
    rep.add("bialgebra compatibility", bad_delta.empty(), bad_delta.empty() ? "" : "Delta fails on " + bad_delta);
    rep.add("antipode respects relations", bad_s.empty(), bad_s);
    rep.add("counit respects relations", bad_eps.empty(), bad_eps);
    // generators
    std::vector<HGen> gens;
    for (int i = 0; i < H_.ngens(); ++i) gens.push_back({HGen::Letter, i});
    if (H_.kind == HopfKind::Bosonized)
      for (int k = 0; k < int(H_.orders.size()); ++k) gens.push_back({HGen::Group, k});
    else
      for (int g = 0; g < int(H_.nlabels); ++g) gens.push_back({HGen::Delta, g});
    std::string bc, bu, ba, bes;
    for (auto& g : gens) {
      auto x = gen_elem(g);
      auto d = gen_delta(g);
      if (bc.empty() && ops_.delta_left(d) != ops_.delta_right(d)) bc = gen_name(g);
      if (bu.empty() && (ops_.counit_left(d) != x || ops_.counit_right(d) != x)) bu = gen_name(g);
      auto unit = ops_.scale(ops_.one(), gen_counit(g));
      if (ba.empty() && (ops_.antipode_conv_left(d) != unit || ops_.antipode_conv_right(d) != unit))
        ba = gen_name(g);
      if (bes.empty() && !K_.eq(ops_.counit(gen_antipode(g)), gen_counit(g))) bes = gen_name(g);
    }
    rep.add("coassociativity", bc.empty(), bc);
    rep.add("counit", bu.empty(), bu);
    rep.add("antipode", ba.empty(), ba);
    rep.add("counit of antipode", bes.empty(), bes);
    // associativity on sampled triples (normal forms are confluent by construction)
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> pick(0, ops_.dim() - 1);
    std::string bas;
    for (int t = 0; t < samples && bas.empty(); ++t) {
      uint64_t a = pick(rng), b = pick(rng), c = pick(rng);
      HElem<F> ea{{a, K_.one()}}, eb{{b, K_.one()}}, ec{{c, K_.one()}};
      if (ops_.mul(ops_.mul(ea, eb), ec) != ops_.mul(ea, ops_.mul(eb, ec)))
        bas = basis_name(a) + ", " + basis_name(b) + ", " + basis_name(c);
    }
    rep.add("associativity (sampled)", bas.empty(), bas);
    return rep;
  }

  CheckReport exhaustive() const {
    CheckReport rep;
    rep.subject = H_.name;
    const uint64_t d = ops_.dim();
    std::string bas, bbi, bc, bu, ba, bes;
    for (uint64_t a = 0; a < d; ++a) {
      HElem<F> ea{{a, K_.one()}};
      for (uint64_t b = 0; b < d; ++b) {
        HElem<F> eb{{b, K_.one()}};
        auto ab = ops_.mul(ea, eb);
        if (bbi.empty() && ops_.delta(ab) != ops_.tmul(ops_.delta_basis(a), ops_.delta_basis(b)))
          bbi = basis_name(a) + ", " + basis_name(b);
        if (bas.empty())
          for (uint64_t c = 0; c < d && bas.empty(); ++c) {
            HElem<F> ec{{c, K_.one()}};
            if (ops_.mul(ab, ec) != ops_.mul(ea, ops_.mul(eb, ec)))
              bas = basis_name(a) + ", " + basis_name(b) + ", " + basis_name(c);
          }
      }
      const auto& da = ops_.delta_basis(a);
      if (bc.empty() && ops_.delta_left(da) != ops_.delta_right(da)) bc = basis_name(a);
      if (bu.empty() && (ops_.counit_left(da) != ea || ops_.counit_right(da) != ea)) bu = basis_name(a);
      auto unit = ops_.scale(ops_.one(), ops_.counit_basis(a));
      if (ba.empty() && (ops_.antipode_conv_left(da) != unit || ops_.antipode_conv_right(da) != unit))
        ba = basis_name(a);
      if (bes.empty() && !K_.eq(ops_.counit(ops_.antipode_basis(a)), ops_.counit_basis(a))) bes = basis_name(a);
    }
    rep.add("associativity", bas.empty(), bas);
    rep.add("bialgebra compatibility", bbi.empty(), bbi);
    rep.add("coassociativity", bc.empty(), bc);
    rep.add("counit", bu.empty(), bu);
    rep.add("antipode", ba.empty(), ba);
    rep.add("counit of antipode", bes.empty(), bes);
    return rep;
  }

  std::string gen_name(const HGen& g) const {
    if (g.kind == HGen::Letter) return H_.local->integration().name(H_.local->gens()[g.i]);
    if (g.kind == HGen::Group) return "g" + std::to_string(g.i);
    return "delta_" + std::to_string(g.i);
  }

  const HopfOps<F>& ops() const { return ops_; }

 private:
  const HopfAlgebra<F>& H_;
  F K_;
  HopfOps<F> ops_;
};

struct AxiomOptions {
  bool primitive_coproduct = false;  // deliberately broken Delta(x) = x (x) 1 + 1 (x) x
  size_t exhaustive_limit = 100;     // dims up to this are checked on all basis elements
  uint64_t seed = 1;
  int samples = 200;
};

template <class F>
CheckReport hopf_axioms_check(const HopfAlgebra<F>& H, const AxiomOptions& opt = {}) {
  AxiomChecker<F> C(H, opt.primitive_coproduct);
  CheckReport r = C.presented(opt.seed, opt.samples);
  if (H.dim() <= opt.exhaustive_limit) {
    auto ex = C.exhaustive();
    for (auto& it : ex.items) r.add(it.name + " (exhaustive)", it.pass, it.detail);
  }
  return r;
}

}  // namespace sv
