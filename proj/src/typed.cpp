#include "bnc/typed.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "bnc/reduction.hpp"

namespace bnc {

int TypeD::add_gen(std::string id, Idem idem, int q, int h) {
  gens.push_back(Generator{std::move(id), idem, q, h});
  return size() - 1;
}

void TypeD::add_arrow(int i, int j, const Elem& e) {
  if (i < 0 || j < 0 || i >= size() || j >= size()) throw DomainError("arrow endpoint out of range");
  if (e.src() != gens[i].idem || e.tgt() != gens[j].idem)
    throw DomainError("label " + e.str() + " does not fit " + gens[i].id + " -> " + gens[j].id);
  if (e.is_zero()) return;
  auto key = std::make_pair(i, j);
  auto it = diff.find(key);
  if (it == diff.end()) {
    diff.emplace(key, e);
  } else {
    it->second += e;
    if (it->second.is_zero()) diff.erase(it);
  }
}

int TypeD::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (gens[i].id == id) return i;
  return -1;
}

const Elem* TypeD::arrow(int i, int j) const {
  auto it = diff.find({i, j});
  return it == diff.end() ? nullptr : &it->second;
}

std::vector<std::vector<std::pair<int, const Elem*>>> TypeD::out_lists() const {
  std::vector<std::vector<std::pair<int, const Elem*>>> out(gens.size());
  for (const auto& [k, e] : diff) out[k.first].push_back({k.second, &e});
  return out;
}

std::map<std::pair<int, int>, Elem> d_squared(const TypeD& t) {
  std::map<std::pair<int, int>, Elem> sq;
  auto out = t.out_lists();
  for (int i = 0; i < t.size(); ++i)
    for (auto [j, dij] : out[i])
      for (auto [k, djk] : out[j]) {
        Elem p = multiply(*djk, *dij);
        if (p.is_zero()) continue;
        auto it = sq.try_emplace({i, k}, Elem(p.src(), p.tgt())).first;
        it->second += p;
      }
  for (auto it = sq.begin(); it != sq.end();) it = it->second.is_zero() ? sq.erase(it) : std::next(it);
  return sq;
}

std::optional<Violation> validate(const TypeD& t) {
  std::set<std::string> ids;
  for (int i = 0; i < t.size(); ++i)
    if (!ids.insert(t.gens[i].id).second)
      return Violation{"duplicate-id", "generator id " + t.gens[i].id + " repeated", i, i};
  for (const auto& [k, e] : t.diff) {
    const auto& a = t.gens[k.first];
    const auto& b = t.gens[k.second];
    std::string where = a.id + " -> " + b.id;
    if (e.src() != a.idem || e.tgt() != b.idem)
      return Violation{"idempotent", "label " + e.str() + " on " + where, k.first, k.second};
    if (b.h != a.h + 1)
      return Violation{"homological", where + " has h " + std::to_string(a.h) + " -> " + std::to_string(b.h),
                       k.first, k.second};
    auto q = try_quantum_degree(e);
    if (!q) return Violation{"inhomogeneous", "label " + e.str() + " on " + where, k.first, k.second};
    if (*q + b.q - a.q != 0)
      return Violation{"quantum",
                       where + " label " + e.str() + " needs q shift " + std::to_string(a.q - *q - b.q),
                       k.first, k.second};
  }
  auto sq = d_squared(t);
  if (!sq.empty()) {
    auto& [k, e] = *sq.begin();
    return Violation{"d-squared", "d^2 from " + t.gens[k.first].id + " to " + t.gens[k.second].id + " is " + e.str(),
                     k.first, k.second};
  }
  return std::nullopt;
}

void ensure_valid(const TypeD& t, const std::string& context) {
  if (auto v = validate(t)) throw DomainError(context + ": " + v->kind + ": " + v->detail);
}

TypeD direct_sum(const TypeD& a, const TypeD& b) {
  if (!(a.field == b.field) && a.size() > 0 && b.size() > 0) throw DomainError("direct sum over different fields");
  TypeD r = a;
  if (a.size() == 0) r.field = b.field;
  int off = a.size();
  for (const auto& g : b.gens) r.gens.push_back(g);
  for (const auto& [k, e] : b.diff) r.diff.emplace(std::make_pair(k.first + off, k.second + off), e);
  return r;
}

TypeD shift(const TypeD& t, int n, int m) {
  TypeD r = t;
  for (auto& g : r.gens) {
    g.h += n;
    g.q += m;
  }
  return r;
}

TypeD restrict_D_dot_zero(const TypeD& t) {
  auto rep = curve_like_report(t);
  if (!rep.is_curve_like) throw DomainError("restrict_D_dot_zero needs a curve-like input: " + rep.summary());
  TypeD r(t.field);
  r.gens = t.gens;
  for (const auto& [k, e] : t.diff) {
    auto p = single_path(e);
    if (e.src() == Idem::Dot && e.tgt() == Idem::Dot && p && p->face == Face::D) continue;
    r.diff.emplace(k, e);
  }
  return r;
}

TypeD induced_subcomplex(const TypeD& t, const std::vector<int>& keep) {
  TypeD r(t.field);
  std::vector<int> pos(t.size(), -1);
  for (int i : keep) {
    pos[i] = r.size();
    r.gens.push_back(t.gens[i]);
  }
  for (const auto& [k, e] : t.diff)
    if (pos[k.first] >= 0 && pos[k.second] >= 0) r.diff.emplace(std::make_pair(pos[k.first], pos[k.second]), e);
  return r;
}

std::vector<TypeD> connected_components(const TypeD& t) {
  std::vector<int> parent(t.size());
  for (int i = 0; i < t.size(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [k, e] : t.diff) parent[find(k.first)] = find(k.second);
  std::map<int, std::vector<int>> groups;
  std::vector<int> order;
  for (int i = 0; i < t.size(); ++i) {
    int r = find(i);
    if (!groups.count(r)) order.push_back(r);
    groups[r].push_back(i);
  }
  std::vector<TypeD> parts;
  for (int r : order) parts.push_back(induced_subcomplex(t, groups[r]));
  return parts;
}

void propagate_gradings(TypeD& t, int anchor, int q, int h) {
  struct Edge {
    int to;
    int qdeg;
    bool forward;
  };
  std::vector<std::vector<Edge>> adj(t.size());
  for (const auto& [k, e] : t.diff) {
    int d = quantum_degree(e);
    adj[k.first].push_back({k.second, d, true});
    adj[k.second].push_back({k.first, d, false});
  }
  std::vector<bool> seen(t.size(), false);
  std::deque<int> todo{anchor};
  t.gens[anchor].q = q;
  t.gens[anchor].h = h;
  seen[anchor] = true;
  while (!todo.empty()) {
    int i = todo.front();
    todo.pop_front();
    for (const auto& e : adj[i]) {
      int qj = e.forward ? t.gens[i].q - e.qdeg : t.gens[i].q + e.qdeg;
      int hj = e.forward ? t.gens[i].h + 1 : t.gens[i].h - 1;
      if (seen[e.to]) {
        if (t.gens[e.to].q != qj || t.gens[e.to].h != hj)
          throw DomainError("grading propagation contradiction at " + t.gens[e.to].id);
        continue;
      }
      seen[e.to] = true;
      t.gens[e.to].q = qj;
      t.gens[e.to].h = hj;
      todo.push_back(e.to);
    }
  }
  for (int i = 0; i < t.size(); ++i)
    if (!seen[i]) throw DomainError("generator " + t.gens[i].id + " not reachable from the grading anchor");
}

std::string describe(const TypeD& t) {
  std::ostringstream os;
  for (const auto& g : t.gens) os << g.id << ":" << (g.idem == Idem::Dot ? "*" : "o") << "(" << g.q << "," << g.h << ") ";
  os << "|";
  for (const auto& [k, e] : t.diff) os << " " << t.gens[k.first].id << "-[" << e.str() << "]->" << t.gens[k.second].id;
  return os.str();
}

}  // namespace bnc
