#include <doctest.h>

#include <random>

#include "bnc/builtins.hpp"
#include "bnc/io.hpp"
#include "gen.hpp"

using namespace bnc;

TEST_CASE("builtins are valid type D structures") {
  for (Field f : gen::fields()) {
    for (int n = -5; n <= 5; ++n) {
      CHECK_FALSE(validate(q_tangle(f, n)));
      CHECK_FALSE(validate(trefoil_family(f, n)));
    }
    CHECK_FALSE(validate(q_infty(f)));
    CHECK_FALSE(validate(compact_C(f, 3, 1)));
    CHECK_FALSE(validate(trefoil_31_seifert(f)));
    for (int m = 2; m <= 8; m += 2) CHECK_FALSE(validate(elbow_with_chain(f, 1, m)));
  }
}

TEST_CASE("builtin sizes") {
  Field f = Field::prime(2);
  CHECK(q_tangle(f, 0).size() == 1);
  CHECK(q_tangle(f, -4).size() == 5);
  CHECK(q_infty(f).size() == 1);
  CHECK(compact_C(f).size() == 12);
  CHECK(trefoil_family(f, 0).size() == 7);
  CHECK(trefoil_31_seifert(f).size() == 11);
  CHECK(trefoil_31_seifert(f) == trefoil_family(f, -4));
  CHECK_THROWS_AS(elbow_with_chain(f, 0, 3), DomainError);
}

TEST_CASE("validate reports each kind of violation") {
  Field f = Field::prime(3);
  Scalar one(f, 1);
  {
    TypeD t(f);
    t.add_gen("a", Idem::Dot, 0, 0);
    t.add_gen("b", Idem::Circle, 1, 0);
    t.add_arrow(0, 1, Elem::S(Idem::Dot, one));
    auto v = validate(t);
    REQUIRE(v);
    CHECK(v->kind == "homological");
  }
  {
    TypeD t(f);
    t.add_gen("a", Idem::Dot, 0, 0);
    t.add_gen("b", Idem::Circle, 0, 1);
    t.add_arrow(0, 1, Elem::S(Idem::Dot, one));
    auto v = validate(t);
    REQUIRE(v);
    CHECK(v->kind == "quantum");
  }
  {
    TypeD t(f);
    t.add_gen("a", Idem::Dot, 0, 0);
    t.add_gen("b", Idem::Circle, 1, 1);
    t.add_gen("c", Idem::Dot, 2, 2);
    t.add_arrow(0, 1, Elem::S(Idem::Dot, one));
    t.add_arrow(1, 2, Elem::S(Idem::Circle, one));
    auto v = validate(t);
    REQUIRE(v);
    CHECK(v->kind == "d-squared");
  }
  {
    TypeD t(f);
    t.add_gen("a", Idem::Dot);
    t.add_gen("a", Idem::Dot);
    auto v = validate(t);
    REQUIRE(v);
    CHECK(v->kind == "duplicate-id");
  }
}

TEST_CASE("shift and direct sum") {
  Field f = Field::rationals();
  TypeD t = trefoil_family(f, 2);
  TypeD s = shift(t, 3, -1);
  for (int i = 0; i < t.size(); ++i) {
    CHECK(s.gens[i].h == t.gens[i].h + 3);
    CHECK(s.gens[i].q == t.gens[i].q - 1);
  }
  CHECK(shift(s, -3, 1) == t);
  TypeD sum = direct_sum(gen::prefixed(t, "x."), gen::prefixed(compact_C(f), "y."));
  CHECK(sum.size() == t.size() + 12);
  CHECK(connected_components(sum).size() == 2);
  CHECK_FALSE(validate(sum));
}

TEST_CASE("JSON round trip") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(5 + f.p);
    for (int k = 0; k < 40; ++k) {
      TypeD t = gen::complex(f, rng);
      if (f.is_rational() && !t.diff.empty()) {
        // rescale one generator so fractional coefficients appear
        Scalar c(f, 2, 3);
        for (auto& [ij, e] : t.diff) {
          if (ij.first == 0) e = e.scaled(c);
          if (ij.second == 0) e = e.scaled(c.inverse());
        }
      }
      REQUIRE_FALSE(validate(t));
      std::string text = print(t);
      TypeD back = parse(text);
      REQUIRE(back == t);
      CHECK(print(back) == text);
    }
  }
}

TEST_CASE("malformed JSON is rejected") {
  const char* bad[] = {
      "not json",
      R"({"generators": []})",
      R"({"field": {"type": "Fp", "p": 4}, "generators": [], "differential": []})",
      R"({"field": {"type": "Q"}, "generators": [{"id": "a", "idem": "square", "q": 0, "h": 0}], "differential": []})",
      R"({"field": {"type": "Q"}, "generators": [{"id": "a", "idem": "dot", "q": 0, "h": 0},
          {"id": "a", "idem": "dot", "q": 0, "h": 0}], "differential": []})",
      R"({"field": {"type": "Q"}, "generators": [{"id": "a", "idem": "dot", "q": 0, "h": 0}],
          "differential": [{"from": "a", "to": "z", "label": []}]})",
      R"({"field": {"type": "Q"}, "generators": [{"id": "a", "idem": "dot", "q": 0, "h": 0},
          {"id": "b", "idem": "circle", "q": -1, "h": 1}],
          "differential": [{"from": "a", "to": "b", "label": [{"kind": "D", "gpow": 0, "coeff": "1"}]}]})",
  };
  for (const char* s : bad) CHECK_THROWS_AS(parse(s), DomainError);
}

TEST_CASE("sketch") {
  Field f = Field::prime(3);
  TypeD t = sketch(f, "a:dot b:circle c:circle a>b:S b>c:-D @a -4 -2");
  REQUIRE(t.size() == 3);
  CHECK(t.gens[1].q == -3);
  CHECK(t.gens[1].h == -1);
  CHECK(t.gens[2].q == -1);
  CHECK(*t.arrow(1, 2) == Elem::D(Idem::Circle, Scalar(f, -1)));
  CHECK_THROWS_AS(sketch(f, "a:dot b:circle a>b:S"), DomainError);
  CHECK_THROWS_AS(sketch(f, "a:dot b:circle a>b:Q @a 0 0"), DomainError);
  CHECK_THROWS_AS(sketch(f, "a:dot b:circle c:dot a>b:S b>c:S @a 0 0"), DomainError);
}
