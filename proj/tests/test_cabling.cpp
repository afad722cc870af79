#include <doctest.h>

#include <random>

#include "bnc/cabling.hpp"
#include "gen.hpp"

using namespace bnc;

TEST_CASE("grids") {
  for (Field f : gen::fields()) {
    const auto& table = OperatorTable::standard(f);
    CHECK(table.grid(Idem::Dot).size() == 13);
    CHECK(table.grid(Idem::Circle).size() == 12);
    CHECK_FALSE(validate(table.grid(Idem::Dot)));
    CHECK_FALSE(validate(table.grid(Idem::Circle)));
    CHECK(cable(q_tangle(f, 0)).size() == 13);
    CHECK(cable(q_infty(f)).size() == 12);
  }
}

TEST_CASE("cabled complexes satisfy d^2 = 0") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(43 + f.p);
    for (int k = 0; k < 20; ++k) {
      TypeD t = gen::complex(f, rng);
      TypeD c = cable(t);
      CHECK(c.size() == 13 * [&] {
        int dots = 0;
        for (const auto& g : t.gens) dots += g.idem == Idem::Dot;
        return dots;
      }() + 12 * [&] {
        int circles = 0;
        for (const auto& g : t.gens) circles += g.idem == Idem::Circle;
        return circles;
      }());
      auto v = validate(c);
      CHECK_MESSAGE(!v, (v ? v->kind + ": " + v->detail : ""));
    }
    CHECK_FALSE(self_check(OperatorTable::standard(f), 50, 3));
  }
}

TEST_CASE("cabling commutes with shifts and direct sums") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(47 + f.p);
    for (int k = 0; k < 15; ++k) {
      TypeD t = gen::piece(f, rng);
      int n = static_cast<int>(rng() % 5) - 2;
      int m = static_cast<int>(rng() % 9) - 4;
      CHECK(cable(shift(t, n, m)) == shift(cable(t), n, m));
      TypeD a = gen::prefixed(t, "a."), b = gen::prefixed(gen::piece(f, rng), "b.");
      CHECK(cable(direct_sum(a, b)) == direct_sum(cable(a), cable(b)));
    }
  }
}

TEST_CASE("a flipped table sign is caught and localized") {
  for (Field f : {Field::prime(3), Field::rationals()}) {
    OperatorTable table(f);
    bool flipped = false;
    for (const auto& [pos, block] : table.image(Label::D_circle)) {
      for (int r = 0; r < block.rows && !flipped; ++r)
        for (int s = 0; s < block.cols && !flipped; ++s)
          if (!block.m[r][s].is_zero()) {
            table.flip_sign(Label::D_circle, pos, r, s);
            flipped = true;
          }
      if (flipped) break;
    }
    REQUIRE(flipped);
    auto fault = self_check(table, 50, 3);
    REQUIRE(fault);
    CHECK(fault->label.find("D_circle") != std::string::npos);
  }
}

TEST_CASE("D_dot powers cable to valid complexes") {
  for (Field f : gen::fields()) {
    for (int k = 1; k <= 4; ++k) {
      std::string d = k == 1 ? "D" : "D^" + std::to_string(k);
      TypeD t = k == 1 ? sketch(f, "a:dot b:dot c:circle e:circle a>b:D b>c:S a>e:-S e>c:-D @a 0 0")
                       : sketch(f, "a:dot b:dot c:circle a>b:" + d + " b>c:S @a 0 0");
      auto v = validate(cable(t));
      CHECK_MESSAGE(!v, (v ? v->kind + ": " + v->detail : ""));
    }
  }
}

TEST_CASE("unsupported labels are rejected") {
  Field f = Field::prime(2);
  const auto& table = OperatorTable::standard(f);
  Scalar one(f, 1);
  CHECK_THROWS_AS(table.image(Elem::path(Idem::Circle, Idem::Circle, Face::D, 3, one)), DomainError);
}
