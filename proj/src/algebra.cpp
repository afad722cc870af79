#include "bnc/algebra.hpp"

#include <algorithm>
#include <map>

namespace bnc {

const char* idem_name(Idem i) { return i == Idem::Dot ? "dot" : "circle"; }

Idem parse_idem(const std::string& s) {
  if (s == "dot") return Idem::Dot;
  if (s == "circle") return Idem::Circle;
  throw DomainError("unknown idempotent: " + s);
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Id: return "Id";
    case Kind::D: return "D";
    default: return "S";
  }
}

Kind parse_kind(const std::string& s) {
  if (s == "Id") return Kind::Id;
  if (s == "D") return Kind::D;
  if (s == "S") return Kind::S;
  throw DomainError("unknown monomial kind: " + s);
}

int term_qdeg(Kind k, uint32_t gpow) {
  int g = -2 * static_cast<int>(gpow);
  switch (k) {
    case Kind::Id: return g;
    case Kind::D: return g - 2;
    default: return g - 1;
  }
}

static Scalar sign(Field f, uint32_t n) { return Scalar(f, n % 2 ? -1 : 1); }

Elem Elem::mono(Idem src, Idem tgt, Kind k, uint32_t gpow, Scalar c) {
  Elem e(src, tgt);
  e.add(k, gpow, c);
  return e;
}

Elem Elem::SS(Idem i, Scalar c) {
  Elem e(i, i);
  e.add(Kind::Id, 1, c);
  e.add(Kind::D, 0, c);
  return e;
}

Elem Elem::path(Idem src, Idem tgt, Face f, uint32_t len, Scalar c) {
  Elem e(src, tgt);
  Field fl = c.field();
  switch (f) {
    case Face::Id:
      if (len != 0 || src != tgt) throw DomainError("bad identity path");
      e.add(Kind::Id, 0, c);
      break;
    case Face::D:
      if (len == 0 || src != tgt) throw DomainError("bad D path");
      e.add(Kind::D, len - 1, c * sign(fl, len - 1));
      break;
    case Face::S:
      if (len == 0 || (len % 2 == 1) != (src != tgt)) throw DomainError("bad S path");
      if (len % 2 == 1) {
        e.add(Kind::S, len / 2, c);
      } else {
        e.add(Kind::Id, len / 2, c);
        e.add(Kind::D, len / 2 - 1, c);
      }
      break;
  }
  return e;
}

void Elem::check_kind(Kind k) const {
  bool loop = src_ == tgt_;
  if ((k == Kind::S) == loop)
    throw DomainError(std::string("monomial ") + kind_name(k) + " incompatible with idempotents " +
                      idem_name(src_) + "->" + idem_name(tgt_));
}

void Elem::add(Kind k, uint32_t gpow, const Scalar& c) {
  if (c.is_zero()) return;
  check_kind(k);
  auto key = [](const Term& t) { return std::make_pair(t.gpow, static_cast<int>(t.kind)); };
  auto want = std::make_pair(gpow, static_cast<int>(k));
  auto it = std::lower_bound(terms_.begin(), terms_.end(), want,
                             [&](const Term& t, const auto& w) { return key(t) < w; });
  if (it != terms_.end() && key(*it) == want) {
    it->coeff += c;
    if (it->coeff.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term{k, gpow, c});
  }
}

Elem& Elem::operator+=(const Elem& o) {
  if (o.src_ != src_ || o.tgt_ != tgt_) throw DomainError("adding elements with different idempotents");
  for (const auto& t : o.terms_) add(t.kind, t.gpow, t.coeff);
  return *this;
}

Elem& Elem::operator-=(const Elem& o) {
  if (o.src_ != src_ || o.tgt_ != tgt_) throw DomainError("adding elements with different idempotents");
  for (const auto& t : o.terms_) add(t.kind, t.gpow, -t.coeff);
  return *this;
}

Elem Elem::operator-() const {
  Elem r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Elem Elem::scaled(const Scalar& c) const {
  if (c.is_zero()) return Elem(src_, tgt_);
  Elem r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

std::vector<PathTerm> Elem::paths() const {
  std::vector<PathTerm> out;
  if (terms_.empty()) return out;
  Field f = terms_.front().coeff.field();
  if (src_ != tgt_) {
    for (const auto& t : terms_) out.push_back({Face::S, 2 * t.gpow + 1, t.coeff});
    return out;
  }
  std::map<uint32_t, Scalar> dpow, sspow;
  for (const auto& t : terms_) {
    if (t.kind == Kind::Id) {
      if (t.gpow == 0) {
        out.push_back({Face::Id, 0, t.coeff});
      } else {
        // G^m = SS^m + (-1)^m D^m
        auto& a = sspow.try_emplace(t.gpow, Scalar(f, 0)).first->second;
        a += t.coeff;
        auto& b = dpow.try_emplace(t.gpow, Scalar(f, 0)).first->second;
        b += t.coeff * sign(f, t.gpow);
      }
    } else {
      // G^m D = (-1)^m D^{m+1}
      auto& b = dpow.try_emplace(t.gpow + 1, Scalar(f, 0)).first->second;
      b += t.coeff * sign(f, t.gpow);
    }
  }
  for (auto& [n, c] : dpow)
    if (!c.is_zero()) out.push_back({Face::D, n, c});
  for (auto& [m, c] : sspow)
    if (!c.is_zero()) out.push_back({Face::S, 2 * m, c});
  return out;
}

std::string Elem::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    std::string c = t.coeff.str();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string m;
    if (t.gpow == 1) m = "G";
    if (t.gpow > 1) m = "G^" + std::to_string(t.gpow);
    if (t.kind != Kind::Id) m += (m.empty() ? "" : "*") + std::string(kind_name(t.kind));
    if (m.empty()) m = "1";
    if (c != "1") m = c + "*" + m;
    s += m;
  }
  return s;
}

Elem multiply(const Elem& a, const Elem& b) {
  if (b.tgt() != a.src())
    throw DomainError(std::string("composition error: ") + idem_name(b.tgt()) + " != " + idem_name(a.src()));
  Elem r(b.src(), a.tgt());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      uint32_t g = x.gpow + y.gpow;
      Scalar c = x.coeff * y.coeff;
      if (y.kind == Kind::Id) {
        r.add(x.kind, g, c);
      } else if (x.kind == Kind::Id) {
        r.add(y.kind, g, c);
      } else if (x.kind == Kind::D && y.kind == Kind::D) {
        r.add(Kind::D, g + 1, -c);
      } else if (x.kind == Kind::S && y.kind == Kind::S) {
        r.add(Kind::Id, g + 1, c);
        r.add(Kind::D, g, c);
      }
    }
  }
  return r;
}

std::optional<int> try_quantum_degree(const Elem& a) {
  if (a.is_zero()) return std::nullopt;
  int q = term_qdeg(a.terms()[0].kind, a.terms()[0].gpow);
  for (const auto& t : a.terms())
    if (term_qdeg(t.kind, t.gpow) != q) return std::nullopt;
  return q;
}

int quantum_degree(const Elem& a) {
  if (a.is_zero()) throw DomainError("undefined-degree: zero element");
  auto q = try_quantum_degree(a);
  if (!q) throw DomainError("inhomogeneous: " + a.str());
  return *q;
}

Elem project_B0(const Elem& a) {
  Elem r(a.src(), a.tgt());
  for (const auto& t : a.terms())
    if (t.gpow == 0) r.add(t.kind, 0, t.coeff);
  return r;
}

bool is_unit_component(const Elem& a) {
  return a.terms().size() == 1 && a.terms()[0].kind == Kind::Id && a.terms()[0].gpow == 0;
}

std::optional<PathTerm> single_path(const Elem& a) {
  auto p = a.paths();
  if (p.size() != 1) return std::nullopt;
  return p[0];
}

}  // namespace bnc
