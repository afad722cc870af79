#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnc/typed.hpp"

namespace bnc {

// k[G]-basis element of Mor(A, B): the morphism a -> b labelled 1, D or S.
struct MorBasis {
  int a = 0, b = 0;
  Kind kind = Kind::Id;
  int q = 0, h = 0;
};

// Differential entries are homogeneous, hence a single monomial c * G^gpow.
struct GMono {
  uint32_t gpow = 0;
  Scalar c;
};

struct MorComplex {
  Field field;
  std::vector<MorBasis> basis;
  std::map<std::pair<int, int>, GMono> diff;  // (source, target) basis indices
};

// df = f∘d_A - (-1)^{h(f)} d_B∘f; throws if the result fails d^2 = 0.
MorComplex mor_complex(const TypeD& A, const TypeD& B);
bool mor_d_squared_zero(const MorComplex& m);

struct Torsion {
  int q = 0, h = 0, exponent = 1;  // k[G]/(G^exponent) generated in degree (q, h)
  auto operator<=>(const Torsion&) const = default;
};

struct GradedModule {
  std::vector<std::pair<int, int>> free;  // (q, h), sorted
  std::vector<Torsion> torsion;           // sorted

  int free_rank() const { return static_cast<int>(free.size()); }
  // ranks and torsion exponents only, gradings forgotten
  std::pair<int, std::vector<int>> type() const;
  bool same_type(const GradedModule& o) const { return type() == o.type(); }
  bool operator==(const GradedModule&) const = default;
  std::string str() const;
};

GradedModule homology_over_kG(const MorComplex& m);

// Laurent polynomial in t^{1/2}: key is twice the exponent of t.
struct LaurentPoly {
  std::map<int, int64_t> coeff;
  void add(int twice_exp, int64_t c);
  // value at t = -1 with t^{1/2} = i, as (real, imaginary)
  std::pair<int64_t, int64_t> at_minus_one() const;
  std::string str() const;
  bool operator==(const LaurentPoly&) const = default;
};

LaurentPoly euler_char_B0(const TypeD& A, const TypeD& B, int shift_m);

// Closure by Q_n, or by Q_infinity when n is empty.
int64_t determinant(const TypeD& t, std::optional<int> n);

bool is_cap_trivial(const TypeD& t);

// Q_infty, Q_0, Q_1, Q_-1, Q_2, Q_-2 paired against t
std::vector<GradedModule> pairing_panel(const TypeD& t);
std::vector<std::string> pairing_panel_names();

}  // namespace bnc
