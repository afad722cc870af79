#include <doctest.h>

#include <map>
#include <random>

#include "bnc/algebra.hpp"
#include "gen.hpp"

using namespace bnc;

namespace {

// Independent model of B: words in the quiver modulo D*S = S*D = 0.
// A path is (start idempotent, face, length); identity has length 0.
struct Word {
  Idem start;
  Face face;
  uint32_t len;
  auto operator<=>(const Word&) const = default;
};

Idem end_of(const Word& w) { return w.face == Face::S && w.len % 2 ? other(w.start) : w.start; }

// w2 after w1 (w1 traversed first)
std::optional<Word> concat(const Word& w1, const Word& w2) {
  if (end_of(w1) != w2.start) return std::nullopt;
  if (w1.len == 0) return w2;
  if (w2.len == 0) return w1;
  if (w1.face != w2.face) return std::nullopt;
  return Word{w1.start, w1.face, w1.len + w2.len};
}

using Poly = std::map<Word, Scalar>;

Elem to_elem(const Poly& p, Idem s, Idem t, Field f) {
  Elem e(s, t);
  for (const auto& [w, c] : p) e += Elem::path(s, t, w.len ? w.face : Face::Id, w.len, c);
  (void)f;
  return e;
}

Poly random_poly(Field f, Idem s, Idem t, std::mt19937& rng) {
  Poly p;
  int n = rng() % 4;
  for (int i = 0; i < n; ++i) {
    Word w{s, Face::Id, 0};
    if (s != t) {
      w = {s, Face::S, 2 * static_cast<uint32_t>(rng() % 3) + 1};
    } else {
      switch (rng() % 3) {
        case 0: break;
        case 1: w = {s, Face::D, 1 + static_cast<uint32_t>(rng() % 3)}; break;
        default: w = {s, Face::S, 2 + 2 * static_cast<uint32_t>(rng() % 2)}; break;
      }
    }
    Scalar c = gen::scalar(f, rng);
    auto [it, fresh] = p.try_emplace(w, c);
    if (!fresh) it->second += c;
  }
  return p;
}

// b first, then a
Poly oracle_multiply(const Poly& a, const Poly& b, Field f) {
  Poly r;
  for (const auto& [wb, cb] : b)
    for (const auto& [wa, ca] : a)
      if (auto w = concat(wb, wa)) {
        auto [it, fresh] = r.try_emplace(*w, Scalar(f, 0));
        it->second += ca * cb;
      }
  return r;
}

}  // namespace

TEST_CASE("basis identities") {
  for (Field f : gen::fields()) {
    Scalar one(f, 1);
    for (Idem i : {Idem::Dot, Idem::Circle}) {
      Elem ss = multiply(Elem::S(other(i), one), Elem::S(i, one));
      CHECK(ss == Elem::SS(i, one));
      CHECK(Elem::SS(i, one) == Elem::G(i, one) + Elem::D(i, one));
      CHECK(multiply(Elem::D(i, one), Elem::D(i, one)) == -multiply(Elem::G(i, one), Elem::D(i, one)));
      CHECK(multiply(Elem::S(i, one), Elem::D(i, one)).is_zero());
      CHECK(multiply(Elem::D(other(i), one), Elem::S(i, one)).is_zero());
      CHECK(quantum_degree(Elem::D(i, one)) == -2);
      CHECK(quantum_degree(Elem::S(i, one)) == -1);
      CHECK(quantum_degree(Elem::G(i, one)) == -2);
    }
  }
}

TEST_CASE("multiplication agrees with the path-word model") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(7 + f.p);
    for (int k = 0; k < 3000; ++k) {
      Idem x = gen::idem(rng), y = gen::idem(rng), z = gen::idem(rng);
      Poly pb = random_poly(f, x, y, rng), pa = random_poly(f, y, z, rng);
      Elem a = to_elem(pa, y, z, f), b = to_elem(pb, x, y, f);
      REQUIRE(multiply(a, b) == to_elem(oracle_multiply(pa, pb, f), x, z, f));
    }
  }
}

TEST_CASE("path decomposition round trip") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(11 + f.p);
    for (int k = 0; k < 2000; ++k) {
      Idem s = gen::idem(rng), t = gen::idem(rng);
      Elem e = gen::elem(f, s, t, rng);
      Elem back(s, t);
      for (const auto& p : e.paths()) back += Elem::path(s, t, p.face, p.len, p.coeff);
      REQUIRE(back == e);
    }
  }
}

TEST_CASE("associativity on random triples") {
  for (Field f : gen::fields()) {
    std::mt19937 rng(23 + f.p);
    for (int k = 0; k < 10000; ++k) {
      Idem w = gen::idem(rng), x = gen::idem(rng), y = gen::idem(rng), z = gen::idem(rng);
      Elem a = gen::elem(f, w, x, rng), b = gen::elem(f, x, y, rng), c = gen::elem(f, y, z, rng);
      REQUIRE(multiply(multiply(c, b), a) == multiply(c, multiply(b, a)));
    }
  }
}

TEST_CASE("idempotent mismatch is rejected") {
  Field f = Field::prime(3);
  Scalar one(f, 1);
  CHECK_THROWS_AS(multiply(Elem::D(Idem::Dot, one), Elem::D(Idem::Circle, one)), DomainError);
  CHECK_THROWS_AS(Elem::path(Idem::Dot, Idem::Dot, Face::S, 1, one), DomainError);
}

TEST_CASE("scalars") {
  Field q = Field::rationals();
  CHECK((Scalar(q, 1, 2) + Scalar(q, 1, 3)) == Scalar(q, 5, 6));
  CHECK(Scalar(q, -2, 4).str() == "-1/2");
  Field f5 = Field::prime(5);
  CHECK((Scalar(f5, 3) * Scalar(f5, 2)).str() == "1");
  CHECK(Scalar(f5, 2).inverse() == Scalar(f5, 3));
  CHECK(Scalar::parse(q, "-3/6") == Scalar(q, -1, 2));
  CHECK_THROWS_AS(Field::prime(1), DomainError);
  CHECK_THROWS_AS(Field::prime(9), DomainError);
  CHECK_THROWS_AS(Field::parse("fp:1"), DomainError);
}
