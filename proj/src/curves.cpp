#include "bnc/curves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "bnc/builtins.hpp"
#include "bnc/reduction.hpp"

namespace bnc {

TypeD reverse_arrows(const TypeD& t) {
  TypeD r(t.field);
  for (const auto& g : t.gens) r.add_gen(g.id, g.idem, -g.q, -g.h);
  for (const auto& [ij, e] : t.diff) {
    Elem f(t.gens[ij.second].idem, t.gens[ij.first].idem);
    for (const auto& term : e.terms()) f.add(term.kind, term.gpow, term.coeff);
    r.add_arrow(ij.second, ij.first, f);
  }
  return r;
}

namespace {

// s with b == s*a, if any
std::optional<Scalar> ratio(const Elem& a, const Elem& b) {
  if (a.src() != b.src() || a.tgt() != b.tgt() || a.terms().size() != b.terms().size() || a.is_zero())
    return std::nullopt;
  std::optional<Scalar> s;
  for (size_t i = 0; i < a.terms().size(); ++i) {
    const auto& x = a.terms()[i];
    const auto& y = b.terms()[i];
    if (x.kind != y.kind || x.gpow != y.gpow) return std::nullopt;
    Scalar r = y.coeff / x.coeff;
    if (s && !(*s == r)) return std::nullopt;
    s = r;
  }
  return s;
}

bool same_shape(const Elem* a, const Elem* b) {
  if (!a || !b) return !a && !b;
  return ratio(*a, *b).has_value();
}

std::vector<std::vector<int>> neighbours(const TypeD& t) {
  std::vector<std::set<int>> n(t.size());
  for (const auto& [ij, e] : t.diff) {
    n[ij.first].insert(ij.second);
    n[ij.second].insert(ij.first);
  }
  std::vector<std::vector<int>> out;
  for (auto& s : n) out.emplace_back(s.begin(), s.end());
  return out;
}

std::string path_label(const Elem& e) {
  auto p = single_path(e);
  if (!p) return e.str();
  std::string body;
  switch (p->face) {
    case Face::Id: body = "1"; break;
    case Face::D: body = p->len == 1 ? "D" : "D^" + std::to_string(p->len); break;
    case Face::S:
      if (p->len == 1) body = "S";
      else if (p->len == 2) body = "SS";
      else if (p->len % 2 == 0) body = "SS^" + std::to_string(p->len / 2);
      else body = "S^" + std::to_string(p->len);
      break;
  }
  Scalar minus_one = -Scalar(p->coeff.field(), 1);
  if (p->coeff.is_one()) return body;
  if (p->coeff == minus_one) return "-" + body;
  return p->coeff.str() + "*" + body;
}

}  // namespace

std::optional<std::vector<int>> match_up_to_shift(const TypeD& pattern, const TypeD& t, bool up_to_sign,
                                                  bool* sign_twisted) {
  const int n = pattern.size();
  if (n != t.size() || pattern.diff.size() != t.diff.size()) return std::nullopt;
  if (n == 0) return std::vector<int>{};
  auto pn = neighbours(pattern);
  auto tn = neighbours(t);

  // BFS order of the pattern, each vertex after a neighbour when possible
  std::vector<int> order, parent(n, -1);
  std::vector<bool> seen(n, false);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    order.push_back(root);
    for (size_t k = order.size() - 1; k < order.size(); ++k)
      for (int w : pn[order[k]])
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = order[k];
          order.push_back(w);
        }
  }

  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  int dq = 0, dh = 0;

  auto consistent = [&](int v, int w) {
    const auto& gv = pattern.gens[v];
    const auto& gw = t.gens[w];
    if (gv.idem != gw.idem || pn[v].size() != tn[w].size()) return false;
    if (gw.q - gv.q != dq || gw.h - gv.h != dh) return false;
    if (!same_shape(pattern.arrow(v, v), t.arrow(w, w))) return false;
    for (int u : pn[v]) {
      if (map[u] < 0) continue;
      if (!same_shape(pattern.arrow(v, u), t.arrow(w, map[u]))) return false;
      if (!same_shape(pattern.arrow(u, v), t.arrow(map[u], w))) return false;
    }
    // no extra arrows from w into the already mapped part
    int mapped_p = 0, mapped_t = 0;
    for (int u : pn[v]) mapped_p += map[u] >= 0;
    for (int x : tn[w])
      for (int u = 0; u < n; ++u)
        if (map[u] == x) mapped_t++;
    return mapped_p == mapped_t;
  };

  auto scalars_ok = [&]() {
    std::vector<std::optional<Scalar>> lambda(n);
    for (int v : order) {
      if (parent[v] < 0) {
        lambda[v] = Scalar(t.field, 1);
        continue;
      }
      int u = parent[v];
      if (const Elem* a = pattern.arrow(u, v)) lambda[v] = *lambda[u] * *ratio(*a, *t.arrow(map[u], map[v]));
      else {
        // arrow v -> u: lambda_u = lambda_v * b / a
        const Elem* b = pattern.arrow(v, u);
        lambda[v] = *lambda[u] / *ratio(*b, *t.arrow(map[v], map[u]));
      }
    }
    bool twisted = false;
    for (const auto& [ij, a] : pattern.diff) {
      auto r = ratio(a, *t.arrow(map[ij.first], map[ij.second]));
      Scalar want = *lambda[ij.first] * *r;
      if (*lambda[ij.second] == want) continue;
      if (!up_to_sign || !(*lambda[ij.second] == -want)) return false;
      twisted = true;
    }
    if (sign_twisted) *sign_twisted = twisted;
    return true;
  };

  std::function<bool(size_t)> extend = [&](size_t k) -> bool {
    if (k == order.size()) return scalars_ok();
    int v = order[k];
    std::vector<int> cands;
    if (parent[v] >= 0) cands = tn[map[parent[v]]];
    else
      for (int w = 0; w < n; ++w) cands.push_back(w);
    for (int w : cands) {
      if (used[w]) continue;
      if (k == 0) {
        dq = t.gens[w].q - pattern.gens[v].q;
        dh = t.gens[w].h - pattern.gens[v].h;
      }
      if (!consistent(v, w)) continue;
      map[v] = w;
      used[w] = true;
      if (extend(k + 1)) return true;
      map[v] = -1;
      used[w] = false;
    }
    return false;
  };

  if (!extend(0)) return std::nullopt;
  return map;
}

std::string Pattern::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Rational: os << "Rational(" << n << ")"; break;
    case Kind::RationalInfinity: os << "Rational(inf)"; break;
    case Kind::CompactC: os << "CompactC" << (sign_twisted ? "(-1)" : ""); break;
    case Kind::TrefoilArc: os << "TrefoilArc(" << n << (reversed ? ", reversed" : "") << ")"; break;
    case Kind::Other: return "Other(" + text + ")";
  }
  os << " shift q" << (dq >= 0 ? "+" : "") << dq << " h" << (dh >= 0 ? "+" : "") << dh;
  return os.str();
}

Pattern classify_component(const TypeD& c) {
  Pattern p;
  auto try_match = [&](const TypeD& builtin_t) {
    auto m = match_up_to_shift(builtin_t, c, true, &p.sign_twisted);
    if (!m) return false;
    p.dq = c.gens[(*m)[0]].q - builtin_t.gens[0].q;
    p.dh = c.gens[(*m)[0]].h - builtin_t.gens[0].h;
    return true;
  };
  const int s = c.size();
  if (s == 1 && c.gens[0].idem == Idem::Circle && try_match(q_infty(c.field))) {
    p.kind = Pattern::Kind::RationalInfinity;
    return p;
  }
  for (int n : {s - 1, -(s - 1)}) {
    if (s >= 1 && try_match(q_tangle(c.field, n))) {
      p.kind = Pattern::Kind::Rational;
      p.n = n;
      return p;
    }
  }
  if (s == 12 && try_match(compact_C(c.field, 0, 0))) {
    p.kind = Pattern::Kind::CompactC;
    return p;
  }
  if (s >= 7) {
    int arm = s - 7;
    std::vector<int> ns{arm};
    if (arm) ns.push_back(-arm);
    for (int n : ns) {
      TypeD fam = trefoil_family(c.field, n);
      for (bool rev : {false, true}) {
        if (try_match(rev ? reverse_arrows(fam) : fam)) {
          p.kind = Pattern::Kind::TrefoilArc;
          p.n = n;
          p.reversed = rev;
          return p;
        }
      }
    }
  }
  p.kind = Pattern::Kind::Other;
  p.text = describe(c);
  return p;
}

std::vector<const Component*> CurveDecomposition::arcs() const {
  std::vector<const Component*> out;
  for (const auto& c : components)
    if (!c.compact) out.push_back(&c);
  return out;
}

std::vector<const Component*> CurveDecomposition::loops() const {
  std::vector<const Component*> out;
  for (const auto& c : components)
    if (c.compact) out.push_back(&c);
  return out;
}

CurveDecomposition decompose(const TypeD& t) {
  auto report = curve_like_report(t);
  if (!report.is_curve_like) throw DomainError("decompose: not curve-like: " + report.summary());
  CurveDecomposition d;
  for (auto& comp : connected_components(t)) {
    Component c;
    auto nb = neighbours(comp);
    int leaves = 0;
    bool all_two = true;
    for (const auto& v : nb) {
      leaves += v.size() <= 1;
      all_two = all_two && v.size() == 2;
    }
    c.compact = all_two && comp.size() > 0;
    if (!c.compact && comp.size() > 1 && leaves != 2)
      throw DomainError("decompose: component is neither a loop nor an arc");
    for (const auto& g : comp.gens) c.generators.push_back(g.id);
    c.pattern = classify_component(comp);
    c.t = std::move(comp);
    d.components.push_back(std::move(c));
  }
  return d;
}

std::vector<ForbiddenHit> check_forbidden_configurations(const TypeD& t) {
  std::vector<ForbiddenHit> hits;
  auto d = decompose(t);
  for (const auto* c : d.arcs()) {
    const TypeD& a = c->t;
    for (const auto& [ij, e] : a.diff) {
      std::vector<std::string> ids{a.gens[ij.first].id, a.gens[ij.second].id};
      auto p = single_path(e);
      if (!p) {
        hits.push_back({"label is not a single path", ids});
        continue;
      }
      bool from_circle = e.src() == Idem::Circle;
      std::string kind;
      if (p->face == Face::D && from_circle && p->len >= 2) kind = "G^nD_circle, n >= 1";
      if (p->face == Face::S) {
        bool odd = p->len % 2 == 1;
        if (from_circle && odd && p->len >= 3) kind = "G^nS_circle, n >= 1";
        if (from_circle && !odd && p->len >= 4) kind = "G^nSS_circle, n >= 1";
        if (!from_circle && odd && p->len >= 3) kind = "G^nS_dot, n >= 1";
        if (!from_circle && !odd) kind = "G^(n-1)SS_dot, n >= 1";
      }
      if (!kind.empty()) hits.push_back({kind, ids});
    }
    std::vector<int> in(a.size(), 0), out(a.size(), 0);
    for (const auto& [ij, e] : a.diff) {
      out[ij.first]++;
      in[ij.second]++;
    }
    for (int v = 0; v < a.size(); ++v) {
      if (a.gens[v].idem != Idem::Circle || (in[v] < 2 && out[v] < 2)) continue;
      std::vector<std::string> ids{a.gens[v].id};
      for (const auto& [ij, e] : a.diff) {
        if (ij.first == v) ids.push_back(a.gens[ij.second].id);
        if (ij.second == v) ids.push_back(a.gens[ij.first].id);
      }
      hits.push_back({"circle-elbow", ids});
    }
  }
  return hits;
}

std::string Geography::str() const {
  switch (kind) {
    case Kind::Q0Arc: return "Q0Arc";
    case Kind::TrefoilArc: return "TrefoilArc";
    default: return "Other(" + description + ")";
  }
}

Geography geography_class(const TypeD& t) {
  auto d = decompose(t);
  auto arcs = d.arcs();
  if (arcs.size() != 1)
    throw DomainError("geography: expected one non-compact component, found " + std::to_string(arcs.size()));
  const Pattern& p = arcs[0]->pattern;
  Geography g;
  g.description = p.str();
  if (p.kind == Pattern::Kind::Rational || p.kind == Pattern::Kind::RationalInfinity) g.kind = Geography::Kind::Q0Arc;
  else if (p.kind == Pattern::Kind::TrefoilArc) g.kind = Geography::Kind::TrefoilArc;
  else g.kind = Geography::Kind::Other;
  return g;
}

bool is_theta_rational(const TypeD& t, std::optional<int> framing) {
  auto d = decompose(t);
  auto arcs = d.arcs();
  if (arcs.size() != 1)
    throw DomainError("theta-rationality: expected one non-compact component, found " + std::to_string(arcs.size()));
  const Pattern& p = arcs[0]->pattern;
  return p.kind == Pattern::Kind::Rational && (!framing || p.n == *framing);
}

bool leaf_rule_holds(const TypeD& arc) {
  if (arc.size() == 1) return arc.gens[0].idem == Idem::Dot;
  auto nb = neighbours(arc);
  std::vector<int> leaves;
  for (int v = 0; v < arc.size(); ++v)
    if (nb[v].size() == 1) leaves.push_back(v);
  if (leaves.size() != 2) return false;
  auto d_attached = [&](int v) {
    int u = nb[v][0];
    const Elem* e = arc.arrow(v, u) ? arc.arrow(v, u) : arc.arrow(u, v);
    auto p = single_path(*e);
    return p && p->face == Face::D;
  };
  for (int k = 0; k < 2; ++k)
    if (d_attached(leaves[k]) && arc.gens[leaves[1 - k]].idem == Idem::Dot) return true;
  return false;
}

void render_svg(const TypeD& t, std::ostream& out) {
  auto nb = neighbours(t);
  // traverse components so neighbours along a curve sit next to each other
  std::vector<int> order;
  std::vector<bool> seen(t.size(), false);
  std::vector<int> starts;
  for (int v = 0; v < t.size(); ++v)
    if (nb[v].size() <= 1) starts.push_back(v);
  for (int v = 0; v < t.size(); ++v) starts.push_back(v);
  for (int s : starts) {
    if (seen[s]) continue;
    int cur = s;
    while (cur >= 0) {
      seen[cur] = true;
      order.push_back(cur);
      int next = -1;
      for (int w : nb[cur])
        if (!seen[w]) {
          next = w;
          break;
        }
      cur = next;
    }
  }

  const int step = 40, top = 80;
  const int x_dot = 200, x_circle = 400;
  std::map<int, std::pair<int, int>> pos;
  int slot_dot = 0, slot_circle = 0;
  for (int v : order) {
    bool dot = t.gens[v].idem == Idem::Dot;
    int& slot = dot ? slot_dot : slot_circle;
    pos[v] = {dot ? x_dot : x_circle, top + step * slot++};
  }
  int height = top * 2 + step * std::max({slot_dot, slot_circle, 1});
  int width = 600;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // parametrizing arcs
  out << "<line x1=\"" << x_dot << "\" y1=\"40\" x2=\"" << x_dot << "\" y2=\"" << height - 40
      << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  out << "<line x1=\"" << x_circle << "\" y1=\"40\" x2=\"" << x_circle << "\" y2=\"" << height - 40
      << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"" << x_dot - 4 << "\" y=\"30\">&#8226;</text><text x=\"" << x_circle - 4
      << "\" y=\"30\">&#8728;</text>\n";
  // punctures; the special one is starred
  std::vector<std::pair<int, int>> punct{{100, 40}, {500, 40}, {100, height - 40}, {500, height - 40}};
  for (size_t i = 0; i < punct.size(); ++i) {
    if (i == 0)
      out << "<text x=\"" << punct[i].first - 5 << "\" y=\"" << punct[i].second + 5 << "\" font-size=\"16\">*</text>\n";
    else
      out << "<circle cx=\"" << punct[i].first << "\" cy=\"" << punct[i].second << "\" r=\"5\" fill=\"black\"/>\n";
  }
  // arrows
  for (const auto& [ij, e] : t.diff) {
    auto [x1, y1] = pos[ij.first];
    auto [x2, y2] = pos[ij.second];
    int cx = (x1 + x2) / 2 + (x1 == x2 ? (x1 == x_dot ? -60 : 60) : 0);
    int cy = (y1 + y2) / 2 - (x1 == x2 ? 0 : 20);
    out << "<path d=\"M" << x1 << " " << y1 << " Q" << cx << " " << cy << " " << x2 << " " << y2
        << "\" fill=\"none\" stroke=\"#c60\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << (x1 + 2 * cx + x2) / 4 + 4 << "\" y=\"" << (y1 + 2 * cy + y2) / 4 - 4 << "\">"
        << path_label(e) << "</text>\n";
  }
  // leaves run off to the nearest puncture
  for (int v = 0; v < t.size(); ++v) {
    if (nb[v].size() > 1) continue;
    auto [x, y] = pos[v];
    auto near = punct;
    std::stable_sort(near.begin(), near.end(), [&](auto a, auto b) {
      auto d = [&](auto p) { return 1L * (p.first - x) * (p.first - x) + 1L * (p.second - y) * (p.second - y); };
      return d(a) < d(b);
    });
    size_t rays = nb[v].empty() ? 2 : 1;
    for (size_t r = 0; r < rays; ++r) {
      auto target = near[r];
      out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << target.first << "\" y2=\"" << target.second
          << "\" stroke=\"#c60\" stroke-width=\"1\" stroke-dasharray=\"2 2\"/>\n";
    }
  }
  for (int v = 0; v < t.size(); ++v) {
    auto [x, y] = pos[v];
    const auto& g = t.gens[v];
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"" << (g.idem == Idem::Dot ? "black" : "white")
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x + 8 << "\" y=\"" << y + 4 << "\">" << g.id << " (" << g.q << "," << g.h << ")</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace bnc
