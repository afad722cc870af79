#include "bnc/builtins.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace bnc {

namespace {

struct Builder {
  TypeD t;
  explicit Builder(Field f) : t(f) {}

  int gen(Idem i) { return t.add_gen("x" + std::to_string(t.size()), i); }

  void arrow(int a, int b, Face face, uint32_t len, int sign = 1) {
    t.add_arrow(a, b, Elem::path(t.gens[a].idem, t.gens[b].idem, face, len, Scalar(t.field, sign)));
  }

  // circles c_1 -> ... -> c_m with D adjacent to `d_end` (true: last arrow is D)
  std::vector<int> circles(int m, bool d_at_start) {
    std::vector<int> c;
    for (int i = 0; i < m; ++i) c.push_back(gen(Idem::Circle));
    for (int i = 0; i + 1 < m; ++i) {
      bool is_d = d_at_start ? (i % 2 == 0) : ((m - 2 - i) % 2 == 0);
      if (is_d)
        arrow(c[i], c[i + 1], Face::D, 1);
      else
        arrow(c[i], c[i + 1], Face::S, 2);
    }
    return c;
  }

  // dot -S-> c1 -D-> c2 -SS-> ... (m circles), returns the dot
  int arm_out(int m) {
    int d = gen(Idem::Dot);
    auto c = circles(m, true);
    if (m > 0) arrow(d, c[0], Face::S, 1);
    return d;
  }

  // c1 -> ... -D-> c_m -S-> dot, returns the dot
  int arm_in(int m) {
    auto c = circles(m, false);
    int d = gen(Idem::Dot);
    if (m > 0) arrow(c.back(), d, Face::S, 1);
    return d;
  }

  TypeD done(int anchor, int q, int h) {
    propagate_gradings(t, anchor, q, h);
    ensure_valid(t, "builtin");
    return t;
  }
};

// dot -S-> o -D-> o -SS-> ... -D-> o -S-> dot, a homogeneous chain of even length m
int bottom_chain(Builder& b, int m = 4) {
  int start = b.gen(Idem::Dot);
  auto c = b.circles(m, true);
  int end = b.gen(Idem::Dot);
  b.arrow(start, c[0], Face::S, 1);
  b.arrow(c.back(), end, Face::S, 1);
  return start;
}

}  // namespace

TypeD q_tangle(Field f, int n) {
  Builder b(f);
  if (n >= 0) {
    int d = b.arm_out(n);
    return b.done(d, -2 * n, -n);
  }
  int d = b.arm_in(-n);
  return b.done(d, -2 * n, -n);
}

TypeD q_infty(Field f) {
  Builder b(f);
  int c = b.gen(Idem::Circle);
  return b.done(c, 0, 0);
}

TypeD compact_C(Field f, int q, int h) {
  Builder b(f);
  int top = bottom_chain(b);
  int top_end = top + 5;
  int bot = bottom_chain(b);
  int bot_end = bot + 5;
  b.arrow(top, bot, Face::D, 1);
  b.arrow(top_end, bot_end, Face::D, 1);
  return b.done(top, q, h);
}

TypeD elbow_with_chain(Field f, int n, int chain) {
  if (chain < 2 || chain % 2) throw DomainError("homogeneous chain length must be even and >= 2");
  Builder b(f);
  int top = n >= 0 ? b.arm_out(n) : b.arm_in(-n);
  int elbow = bottom_chain(b, chain);
  b.arrow(elbow, top, Face::D, 1);
  return b.done(elbow, 0, 0);
}

TypeD trefoil_family(Field f, int n) { return elbow_with_chain(f, n, 4); }

TypeD trefoil_left_minimal(Field f) { return trefoil_family(f, 0); }

TypeD trefoil_31_seifert(Field f) {
  Builder b(f);
  int top = b.arm_in(4);
  int mid = bottom_chain(b);
  b.arrow(mid, top, Face::D, 1);
  return b.done(mid, 0, 0);
}

TypeD sketch(Field f, const std::string& text) {
  TypeD t(f);
  std::map<std::string, int> ids;
  std::istringstream in(text);
  std::string tok;
  struct Anchor {
    std::string id;
    int q, h;
  };
  std::vector<Anchor> anchors;
  auto bad = [&](const std::string& why) { return DomainError("sketch: " + why + " in '" + tok + "'"); };
  while (in >> tok) {
    if (tok[0] == '@') {
      Anchor a{tok.substr(1), 0, 0};
      if (!(in >> a.q >> a.h)) throw bad("anchor needs q and h");
      anchors.push_back(a);
      continue;
    }
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw bad("missing ':'");
    std::string head = tok.substr(0, colon), body = tok.substr(colon + 1);
    auto gt = head.find('>');
    if (gt == std::string::npos) {
      ids[head] = t.add_gen(head, parse_idem(body));
      continue;
    }
    auto from = ids.find(head.substr(0, gt)), to = ids.find(head.substr(gt + 1));
    if (from == ids.end() || to == ids.end()) throw bad("unknown generator");
    Scalar c(f, 1);
    if (auto star = body.find('*'); star != std::string::npos) {
      c = Scalar::parse(f, body.substr(0, star));
      body = body.substr(star + 1);
    } else if (body[0] == '-') {
      c = -c;
      body = body.substr(1);
    }
    uint32_t power = 1;
    if (auto caret = body.find('^'); caret != std::string::npos) {
      power = std::stoul(body.substr(caret + 1));
      body = body.substr(0, caret);
    }
    Idem src = t.gens[from->second].idem, tgt = t.gens[to->second].idem;
    Elem e;
    if (body == "1") e = Elem::one(src, c);
    else if (body == "D") e = Elem::path(src, tgt, Face::D, power, c);
    else if (body == "S") e = Elem::path(src, tgt, Face::S, power, c);
    else if (body == "SS") e = Elem::path(src, tgt, Face::S, 2 * power, c);
    else throw bad("unknown label");
    t.add_arrow(from->second, to->second, e);
  }
  // one anchor per connected component
  std::vector<std::vector<int>> adj(t.size());
  for (const auto& [k, e] : t.diff) {
    adj[k.first].push_back(k.second);
    adj[k.second].push_back(k.first);
  }
  std::vector<bool> seen(t.size(), false);
  for (const auto& a : anchors) {
    auto it = ids.find(a.id);
    if (it == ids.end()) throw DomainError("sketch: unknown anchor " + a.id);
    if (seen[it->second]) throw DomainError("sketch: two anchors in one component");
    std::vector<int> comp{it->second};
    seen[it->second] = true;
    for (size_t i = 0; i < comp.size(); ++i)
      for (int j : adj[comp[i]])
        if (!seen[j]) {
          seen[j] = true;
          comp.push_back(j);
        }
    std::sort(comp.begin(), comp.end());
    TypeD sub = induced_subcomplex(t, comp);
    propagate_gradings(sub, static_cast<int>(std::find(comp.begin(), comp.end(), it->second) - comp.begin()), a.q, a.h);
    for (size_t i = 0; i < comp.size(); ++i) t.gens[comp[i]] = sub.gens[i];
  }
  for (int i = 0; i < t.size(); ++i)
    if (!seen[i]) throw DomainError("sketch: generator " + t.gens[i].id + " has no anchor");
  ensure_valid(t, "sketch");
  return t;
}

TypeD mirror_rational(Field f, const std::string& name, int n) {
  if (name == "q_tangle") return q_tangle(f, -n);
  if (name == "q_infty") return q_infty(f);
  throw DomainError("mirror is only implemented for rational builtins, not " + name);
}

TypeD builtin(Field f, const std::string& name, int n, int h) {
  if (name == "q_tangle") return q_tangle(f, n);
  if (name == "q_infty") return q_infty(f);
  if (name == "compact_C") return compact_C(f, n, h);
  if (name == "trefoil_31" || name == "trefoil_31_seifert") return trefoil_31_seifert(f);
  if (name == "trefoil_left_minimal") return trefoil_left_minimal(f);
  if (name == "trefoil_family") return trefoil_family(f, n);
  throw DomainError("unknown builtin: " + name);
}

}  // namespace bnc
