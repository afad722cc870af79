#include <doctest.h>

#include <random>
#include <sstream>

#include "bnc/cabling.hpp"
#include "bnc/curves.hpp"
#include "bnc/reduction.hpp"
#include "gen.hpp"

using namespace bnc;

TEST_CASE("builtins classify as themselves") {
  for (Field f : gen::fields()) {
    for (int n = -4; n <= 4; ++n) {
      Pattern p = classify_component(q_tangle(f, n));
      CHECK(p.kind == Pattern::Kind::Rational);
      CHECK(p.n == n);
      CHECK(p.dq == 0);
      CHECK(p.dh == 0);
      Pattern t = classify_component(trefoil_family(f, n));
      CHECK(t.kind == Pattern::Kind::TrefoilArc);
      CHECK(t.n == n);
      CHECK_FALSE(t.reversed);
      Pattern r = classify_component(reverse_arrows(trefoil_family(f, n)));
      CHECK(r.kind == Pattern::Kind::TrefoilArc);
      CHECK(r.reversed);
    }
    CHECK(classify_component(q_infty(f)).kind == Pattern::Kind::RationalInfinity);
    Pattern c = classify_component(compact_C(f, 6, 3));
    CHECK(c.kind == Pattern::Kind::CompactC);
    CHECK(c.dq == 6);
    CHECK(c.dh == 3);
    CHECK_FALSE(c.sign_twisted);
  }
}

TEST_CASE("matching is shift and rescaling invariant") {
  Field f = Field::prime(5);
  std::mt19937 rng(67);
  for (int k = 0; k < 30; ++k) {
    TypeD t = gen::piece(f, rng);
    TypeD s = shift(t, 1, 3);
    // rescale every generator by a random unit
    for (int v = 0; v < s.size(); ++v) {
      Scalar c = gen::scalar(f, rng);
      while ((c * Scalar(f, 1)).is_zero()) c = gen::scalar(f, rng);
      for (auto& [ij, e] : s.diff) {
        if (ij.first == v) e = e.scaled(c);
        if (ij.second == v) e = e.scaled(c.inverse());
      }
    }
    auto m = match_up_to_shift(t, s);
    REQUIRE(m);
    for (int v = 0; v < t.size(); ++v) {
      CHECK(s.gens[(*m)[v]].q == t.gens[v].q + 3);
      CHECK(s.gens[(*m)[v]].h == t.gens[v].h + 1);
    }
  }
}

TEST_CASE("sign flips around a loop are reported") {
  Field f = Field::prime(3);
  TypeD c = compact_C(f);
  auto it = c.diff.begin();
  it->second = -it->second;
  CHECK_FALSE(match_up_to_shift(compact_C(f), c));
  bool twisted = false;
  REQUIRE(match_up_to_shift(compact_C(f), c, true, &twisted));
  CHECK(twisted);
}

TEST_CASE("reverse_arrows is an involution") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(71 + f.p);
    for (int k = 0; k < 20; ++k) {
      TypeD t = gen::complex(f, rng);
      TypeD r = reverse_arrows(t);
      CHECK_FALSE(validate(r));
      CHECK(reverse_arrows(r) == t);
    }
  }
}

TEST_CASE("decomposition") {
  Field f = Field::prime(2);
  TypeD t = direct_sum(gen::prefixed(compact_C(f, -4, -2), "x."),
                       direct_sum(gen::prefixed(q_tangle(f, 2), "y."), gen::prefixed(compact_C(f), "z.")));
  auto d = decompose(t);
  CHECK(d.components.size() == 3);
  REQUIRE(d.arcs().size() == 1);
  CHECK(d.loops().size() == 2);
  CHECK(d.arcs()[0]->pattern.kind == Pattern::Kind::Rational);
  CHECK(is_theta_rational(t, 2));
  CHECK_FALSE(is_theta_rational(t, 0));
  CHECK(is_theta_rational(t, std::nullopt));
  CHECK(geography_class(t).kind == Geography::Kind::Q0Arc);
  CHECK(geography_class(trefoil_family(f, 1)).kind == Geography::Kind::TrefoilArc);
  CHECK_FALSE(is_theta_rational(trefoil_family(f, 1), std::nullopt));

  TypeD raw = cable(trefoil_family(f, 0));
  CHECK_THROWS_AS(decompose(raw), DomainError);
}

TEST_CASE("forbidden configurations") {
  Field f = Field::prime(3);
  auto kinds = [](const TypeD& t) {
    std::vector<std::string> out;
    for (const auto& h : check_forbidden_configurations(t)) out.push_back(h.kind);
    return out;
  };
  CHECK(kinds(q_tangle(f, 3)).empty());
  CHECK(kinds(trefoil_family(f, -2)).empty());
  CHECK(kinds(sketch(f, "a:circle b:circle a>b:D^2 @a 0 0")) == std::vector<std::string>{"G^nD_circle, n >= 1"});
  CHECK(kinds(sketch(f, "a:circle b:dot a>b:S^3 @a 0 0")) == std::vector<std::string>{"G^nS_circle, n >= 1"});
  CHECK(kinds(sketch(f, "a:dot b:circle a>b:S^3 @a 0 0")) == std::vector<std::string>{"G^nS_dot, n >= 1"});
  CHECK(kinds(sketch(f, "a:dot b:dot a>b:SS @a 0 0")) == std::vector<std::string>{"G^(n-1)SS_dot, n >= 1"});
  CHECK(kinds(sketch(f, "a:circle b:circle a>b:SS^2 @a 0 0")) == std::vector<std::string>{"G^nSS_circle, n >= 1"});
  CHECK(kinds(sketch(f, "a:dot b:circle c:dot a>b:S c>b:S @a 0 0")) == std::vector<std::string>{"circle-elbow"});
  // loops are exempt
  CHECK(kinds(compact_C(f)).empty());
}

TEST_CASE("leaf rule") {
  Field f = Field::prime(2);
  CHECK(leaf_rule_holds(q_tangle(f, 0)));
  CHECK_FALSE(leaf_rule_holds(q_infty(f)));
  CHECK(leaf_rule_holds(sketch(f, "a:circle b:circle c:dot a>b:D b>c:S @a 1 0")));
  CHECK_FALSE(leaf_rule_holds(sketch(f, "a:circle b:circle a>b:D @a 0 0")));
}

TEST_CASE("curve-like cables decompose into known pieces") {
  for (Field f : gen::fields()) {
    for (int n = -3; n <= 3; ++n) {
      TypeD c = to_curve_like(cable(q_tangle(f, n))).t;
      auto d = decompose(c);
      CHECK(d.arcs().size() == 1);
      for (const auto* l : d.loops()) CHECK(l->pattern.kind == Pattern::Kind::CompactC);
      CHECK(geography_class(c).kind != Geography::Kind::Other);
    }
  }
}

TEST_CASE("SVG output") {
  Field f = Field::prime(3);
  TypeD t = direct_sum(gen::prefixed(trefoil_family(f, 1), "a."), gen::prefixed(compact_C(f), "b."));
  std::ostringstream one, two;
  render_svg(t, one);
  render_svg(t, two);
  CHECK(one.str() == two.str());
  CHECK(one.str().find("<svg") != std::string::npos);
  CHECK(one.str().find("*") != std::string::npos);
  CHECK(one.str().find("</svg>") != std::string::npos);
}
