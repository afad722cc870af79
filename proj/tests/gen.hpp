#pragma once

// Hand-rolled random generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "bnc/algebra.hpp"
#include "bnc/builtins.hpp"
#include "bnc/typed.hpp"

namespace gen {

inline std::vector<bnc::Field> fields() { return {bnc::Field::prime(2), bnc::Field::prime(3), bnc::Field::rationals()}; }

inline bnc::Scalar scalar(bnc::Field f, std::mt19937& rng, bool nonzero = true) {
  for (;;) {
    int64_t v = static_cast<int64_t>(rng() % 11) - 5;
    if (nonzero && v == 0) continue;
    if (f.is_rational() && rng() % 3 == 0) return bnc::Scalar(f, v, 1 + rng() % 4);
    return bnc::Scalar(f, v);
  }
}

inline bnc::Idem idem(std::mt19937& rng) { return rng() % 2 ? bnc::Idem::Dot : bnc::Idem::Circle; }

// random element in the canonical basis
inline bnc::Elem elem(bnc::Field f, bnc::Idem s, bnc::Idem t, std::mt19937& rng) {
  bnc::Elem e(s, t);
  int n = rng() % 4;
  for (int i = 0; i < n; ++i) {
    bnc::Kind k = s != t ? bnc::Kind::S : (rng() % 2 ? bnc::Kind::Id : bnc::Kind::D);
    e.add(k, rng() % 4, scalar(f, rng));
  }
  return e;
}

inline bnc::TypeD prefixed(bnc::TypeD t, const std::string& p) {
  for (auto& g : t.gens) g.id = p + g.id;
  return t;
}

// a random builtin, shifted
inline bnc::TypeD piece(bnc::Field f, std::mt19937& rng) {
  bnc::TypeD t;
  switch (rng() % 5) {
    case 0: t = bnc::q_tangle(f, static_cast<int>(rng() % 7) - 3); break;
    case 1: t = bnc::q_infty(f); break;
    case 2: t = bnc::compact_C(f); break;
    case 3: t = bnc::trefoil_family(f, static_cast<int>(rng() % 5) - 2); break;
    default: t = bnc::trefoil_31_seifert(f); break;
  }
  int dh = static_cast<int>(rng() % 5) - 2;
  return bnc::shift(t, dh, 2 * dh + static_cast<int>(rng() % 3) - 1);
}

// direct sum of one to three random pieces with distinct ids
inline bnc::TypeD complex(bnc::Field f, std::mt19937& rng) {
  bnc::TypeD t(f);
  int n = 1 + rng() % 3;
  for (int i = 0; i < n; ++i) t = bnc::direct_sum(t, prefixed(piece(f, rng), "p" + std::to_string(i) + "."));
  return t;
}

}  // namespace gen
