#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnc/scalar.hpp"

namespace bnc {

enum class Idem : uint8_t { Dot, Circle };

inline Idem other(Idem i) { return i == Idem::Dot ? Idem::Circle : Idem::Dot; }
const char* idem_name(Idem i);  // "dot" / "circle"
Idem parse_idem(const std::string& s);

// Canonical basis of B: G^gpow * {1, D, S}.
enum class Kind : uint8_t { Id, D, S };
const char* kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct Term {
  Kind kind;
  uint32_t gpow;
  Scalar coeff;
  bool operator==(const Term&) const = default;
};

int term_qdeg(Kind k, uint32_t gpow);

// Alternative description of an element in the basis of nonzero paths:
// 1, D^n (n >= 1), and the S-paths S^n (odd n between different idempotents,
// even n = SS^{n/2} at a single idempotent).
enum class Face : uint8_t { Id, D, S };

struct PathTerm {
  Face face;
  uint32_t len;
  Scalar coeff;
};

class Elem {
 public:
  Elem() = default;
  Elem(Idem src, Idem tgt) : src_(src), tgt_(tgt) {}

  static Elem zero(Idem src, Idem tgt) { return Elem(src, tgt); }
  static Elem mono(Idem src, Idem tgt, Kind k, uint32_t gpow, Scalar c);
  static Elem one(Idem i, Scalar c) { return mono(i, i, Kind::Id, 0, c); }
  static Elem D(Idem i, Scalar c) { return mono(i, i, Kind::D, 0, c); }
  static Elem S(Idem src, Scalar c) { return mono(src, other(src), Kind::S, 0, c); }
  static Elem SS(Idem i, Scalar c);  // G*1 + D
  static Elem G(Idem i, Scalar c) { return mono(i, i, Kind::Id, 1, c); }
  static Elem path(Idem src, Idem tgt, Face f, uint32_t len, Scalar c);

  Idem src() const { return src_; }
  Idem tgt() const { return tgt_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(Kind k, uint32_t gpow, const Scalar& c);
  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem operator+(const Elem& o) const { Elem r = *this; r += o; return r; }
  Elem operator-(const Elem& o) const { Elem r = *this; r -= o; return r; }
  Elem operator-() const;
  Elem scaled(const Scalar& c) const;

  bool operator==(const Elem& o) const = default;

  std::vector<PathTerm> paths() const;
  std::string str() const;

 private:
  void check_kind(Kind k) const;

  Idem src_ = Idem::Dot, tgt_ = Idem::Dot;
  std::vector<Term> terms_;  // sorted by (gpow, kind), no zero coefficients
};

// a∘b: b is traversed first, so b.tgt() must equal a.src().
Elem multiply(const Elem& a, const Elem& b);

// Throws DomainError tagged "inhomogeneous" or "undefined-degree".
int quantum_degree(const Elem& a);
std::optional<int> try_quantum_degree(const Elem& a);

Elem project_B0(const Elem& a);
bool is_unit_component(const Elem& a);

// A single path (curve-like label): c*D^n, c*S^n or c*SS^n.
std::optional<PathTerm> single_path(const Elem& a);

}  // namespace bnc
