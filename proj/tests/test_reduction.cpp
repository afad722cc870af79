#include <doctest.h>

#include <map>
#include <random>
#include <tuple>

#include "bnc/cabling.hpp"
#include "bnc/pairing.hpp"
#include "bnc/reduction.hpp"
#include "gen.hpp"

using namespace bnc;

namespace {

std::map<std::tuple<Idem, int, int>, int> counts(const TypeD& t) {
  std::map<std::tuple<Idem, int, int>, int> c;
  for (const auto& g : t.gens) c[{g.idem, g.q, g.h}]++;
  return c;
}

bool is_iso(const Elem& e) {
  return e.terms().size() == 1 && e.terms()[0].kind == Kind::Id && e.terms()[0].gpow == 0;
}

// Cancels isomorphisms in random order until none is left.
TypeD random_cancel(TypeD t, std::mt19937& rng) {
  for (;;) {
    std::vector<std::pair<int, int>> isos;
    for (const auto& [ij, e] : t.diff)
      if (ij.first != ij.second && is_iso(e)) isos.push_back(ij);
    if (isos.empty()) return t;
    auto [i, j] = isos[rng() % isos.size()];
    t = cancel_one(t, i, j).t;
  }
}

std::vector<TypeD> cabled_inputs(Field f, std::mt19937& rng, int n) {
  std::vector<TypeD> out;
  for (int k = 0; k < n; ++k) {
    TypeD t = gen::piece(f, rng);
    if (t.size() <= 8) out.push_back(cable(t));
  }
  return out;
}

}  // namespace

TEST_CASE("minimal rank does not depend on cancellation order") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(31 + f.p);
    for (const TypeD& c : cabled_inputs(f, rng, 12)) {
      TypeD r = reduce(c).t;
      for (const auto& [ij, e] : r.diff) REQUIRE_FALSE(is_iso(e));
      TypeD other = random_cancel(c, rng);
      CHECK(counts(other) == counts(r));
      CHECK_FALSE(validate(other));
    }
  }
}

TEST_CASE("reduction keeps the Mor homology") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(37 + f.p);
    for (const TypeD& c : cabled_inputs(f, rng, 6)) {
      TypeD r = reduce(c).t;
      CHECK(pairing_panel(r) == pairing_panel(c));
    }
  }
}

TEST_CASE("traces replay to the same output") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(41 + f.p);
    for (const TypeD& c : cabled_inputs(f, rng, 6)) {
      Reduced r = reduce(c);
      CHECK(replay(c, r.trace) == r.t);
      CurveLikeResult cl = to_curve_like(c);
      CHECK(cl.stop_reason == "curve-like");
      CHECK(cl.report.is_curve_like);
      CHECK(counts(cl.t) == counts(r.t));
      CHECK(replay(c, cl.trace) == cl.t);
    }
  }
}

TEST_CASE("cancel_one and cleanup reject bad input") {
  Field f = Field::prime(3);
  TypeD t = q_tangle(f, 2);
  CHECK_THROWS_AS(cancel_one(t, 0, 1), DomainError);
  CHECK_THROWS_AS(cancel_one(t, 0, 7), DomainError);
  Eta bad;
  bad[{0, 0}] = Elem::one(t.gens[0].idem, Scalar(f, 1));
  CHECK_THROWS_AS(cleanup(t, bad), DomainError);
  Eta outside;
  outside[{0, 9}] = Elem(t.gens[0].idem, Idem::Dot);
  CHECK_THROWS_AS(cleanup(t, outside), DomainError);
}

TEST_CASE("curve-like report") {
  Field f = Field::prime(2);
  CHECK(curve_like_report(trefoil_31_seifert(f)).is_curve_like);
  CHECK(curve_like_report(compact_C(f)).is_curve_like);
  TypeD c = reduce(cable(trefoil_31_seifert(f))).t;
  CHECK(to_curve_like(c).report.is_curve_like);
}
