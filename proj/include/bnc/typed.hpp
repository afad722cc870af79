#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnc/algebra.hpp"

namespace bnc {

struct Generator {
  std::string id;
  Idem idem = Idem::Dot;
  int q = 0;
  int h = 0;
  bool operator==(const Generator&) const = default;
};

// delta(x_i) = sum_j diff[(i,j)] (x) x_j
struct TypeD {
  Field field{};
  std::vector<Generator> gens;
  std::map<std::pair<int, int>, Elem> diff;

  TypeD() = default;
  explicit TypeD(Field f) : field(f) {}

  int size() const { return static_cast<int>(gens.size()); }
  int add_gen(std::string id, Idem idem, int q = 0, int h = 0);
  void add_arrow(int i, int j, const Elem& e);  // accumulates; zero sums are dropped
  int index_of(const std::string& id) const;    // -1 if absent
  const Elem* arrow(int i, int j) const;
  Scalar scalar(int64_t n) const { return Scalar(field, n); }

  // outgoing arrows per generator
  std::vector<std::vector<std::pair<int, const Elem*>>> out_lists() const;

  bool operator==(const TypeD&) const = default;
};

struct Violation {
  std::string kind;  // duplicate-id, idempotent, homological, quantum, inhomogeneous, d-squared
  std::string detail;
  int from = -1, to = -1;
};

std::optional<Violation> validate(const TypeD& t);
void ensure_valid(const TypeD& t, const std::string& context);  // throws DomainError

// d∘d, keyed like diff
std::map<std::pair<int, int>, Elem> d_squared(const TypeD& t);

TypeD direct_sum(const TypeD& a, const TypeD& b);
TypeD shift(const TypeD& t, int n, int m);  // h += n, q += m
TypeD restrict_D_dot_zero(const TypeD& t);
std::vector<TypeD> connected_components(const TypeD& t);
TypeD induced_subcomplex(const TypeD& t, const std::vector<int>& keep);

// Assigns gradings from one anchor generator using h_j = h_i + 1 and
// q_j = q_i - qdeg(label). Throws on contradiction or disconnected generators.
void propagate_gradings(TypeD& t, int anchor, int q, int h);

// Canonical textual description: sorted generators and arrows.
std::string describe(const TypeD& t);

}  // namespace bnc
