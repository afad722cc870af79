#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bnc {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient field: p == 0 means the rationals, otherwise F_p.
struct Field {
  uint32_t p = 2;

  static Field rationals() { return Field{0}; }
  static Field prime(int64_t p);  // throws DomainError unless p is a prime < 2^31
  static Field parse(const std::string& s);  // "q", "fp:<p>"

  bool is_rational() const { return p == 0; }
  std::string name() const;
  bool operator==(const Field&) const = default;
};

// Exact scalar. Rationals are kept as reduced int64 fractions; any overflow
// is reported instead of wrapping.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Field f, int64_t n);
  Scalar(Field f, int64_t num, int64_t den);

  Field field() const { return Field{p_}; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;

  bool operator==(const Scalar& o) const { return p_ == o.p_ && num_ == o.num_ && den_ == o.den_; }
  bool operator<(const Scalar& o) const;  // arbitrary total order, for canonical sorting

  std::string str() const;  // "3", "-1/2"; F_p values print as 0..p-1
  static Scalar parse(Field f, const std::string& s);

 private:
  void normalize();
  void check_field(const Scalar& o) const;

  int64_t num_ = 0;
  int64_t den_ = 1;
  uint32_t p_ = 2;
};

}  // namespace bnc
