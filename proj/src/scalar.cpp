#include "bnc/scalar.hpp"

#include <numeric>

namespace bnc {

namespace {

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw DomainError("rational coefficient overflow");
  return static_cast<int64_t>(v);
}

int64_t mod(int64_t a, uint32_t p) {
  int64_t r = a % static_cast<int64_t>(p);
  return r < 0 ? r + p : r;
}

int64_t inv_mod(int64_t a, uint32_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    int64_t q = r / nr;
    t -= q * nt; std::swap(t, nt);
    r -= q * nr; std::swap(r, nr);
  }
  return mod(t, p);
}

}  // namespace

Field Field::prime(int64_t p) {
  if (p >= (int64_t(1) << 31) || !is_prime(p))
    throw DomainError("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  return Field{static_cast<uint32_t>(p)};
}

Field Field::parse(const std::string& s) {
  if (s == "q" || s == "Q") return rationals();
  if (s.rfind("fp:", 0) == 0) {
    size_t used = 0;
    long long p = 0;
    try {
      p = std::stoll(s.substr(3), &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != s.size() - 3) throw DomainError("bad field spec: " + s);
    return prime(p);
  }
  throw DomainError("bad field spec: " + s);
}

std::string Field::name() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }

Scalar::Scalar(Field f, int64_t n) : num_(n), den_(1), p_(f.p) { normalize(); }

Scalar::Scalar(Field f, int64_t num, int64_t den) : num_(num), den_(den), p_(f.p) {
  if (den == 0) throw DomainError("zero denominator");
  if (p_ != 0) {
    int64_t d = mod(den, p_);
    if (d == 0) throw DomainError("denominator vanishes in " + f.name());
    num_ = mod(num, p_) * inv_mod(d, p_) % p_;
    den_ = 1;
  } else {
    normalize();
  }
}

void Scalar::normalize() {
  if (p_ != 0) {
    num_ = mod(num_, p_);
    den_ = 1;
    return;
  }
  if (den_ < 0) { num_ = -num_; den_ = -den_; }
  int64_t g = std::gcd(num_, den_);
  if (g > 1) { num_ /= g; den_ /= g; }
  if (num_ == 0) den_ = 1;
}

void Scalar::check_field(const Scalar& o) const {
  if (p_ != o.p_) throw DomainError("mixing scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_field(o);
  Scalar r;
  r.p_ = p_;
  if (p_ != 0) {
    r.num_ = (num_ + o.num_) % p_;
    return r;
  }
  __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
  __int128 d = (__int128)den_ * o.den_;
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) { __int128 t = a % b; a = b; b = t; }
  if (a > 1) { n /= a; d /= a; }
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  if (r.num_ == 0) r.den_ = 1;
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = p_ != 0 ? (p_ - num_) % p_ : -num_;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_field(o);
  Scalar r;
  r.p_ = p_;
  if (p_ != 0) {
    r.num_ = num_ * o.num_ % p_;
    return r;
  }
  int64_t g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  r.num_ = narrow((__int128)(num_ / g1) * (o.num_ / g2));
  r.den_ = narrow((__int128)(den_ / g2) * (o.den_ / g1));
  if (r.num_ == 0) r.den_ = 1;
  return r;
}

Scalar Scalar::inverse() const {
  if (num_ == 0) throw DomainError("division by zero scalar");
  Scalar r = *this;
  if (p_ != 0) {
    r.num_ = inv_mod(num_, p_);
    return r;
  }
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_ < 0) { r.num_ = -r.num_; r.den_ = -r.den_; }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator<(const Scalar& o) const {
  if (p_ != o.p_) return p_ < o.p_;
  if (num_ != o.num_) return num_ < o.num_;
  return den_ < o.den_;
}

std::string Scalar::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::parse(Field f, const std::string& s) {
  auto to_int = [&](const std::string& t) {
    size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw DomainError("bad coefficient: " + s);
    return static_cast<int64_t>(v);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return Scalar(f, to_int(s));
  return Scalar(f, to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
}

}  // namespace bnc
