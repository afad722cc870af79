#include "bnc/reduction.hpp"

#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace bnc {

std::string CurveLikeReport::summary() const {
  if (is_curve_like) return "curve-like";
  std::ostringstream os;
  os << offending_generators.size() << " generators of degree > 2";
  for (size_t i = 0; i < offending_generators.size() && i < 5; ++i) os << (i ? ", " : " (") << offending_generators[i];
  if (!offending_generators.empty()) os << ")";
  os << "; " << offending_labels.size() << " multi-term labels";
  for (size_t i = 0; i < offending_labels.size() && i < 5; ++i)
    os << (i ? ", " : " (") << offending_labels[i].first << "->" << offending_labels[i].second;
  if (!offending_labels.empty()) os << ")";
  return os.str();
}

CurveLikeReport curve_like_report(const TypeD& t) {
  CurveLikeReport r;
  std::vector<int> deg(t.size(), 0);
  for (const auto& [k, e] : t.diff) {
    deg[k.first]++;
    deg[k.second]++;
    if (!single_path(e)) r.offending_labels.push_back({t.gens[k.first].id, t.gens[k.second].id});
  }
  for (int i = 0; i < t.size(); ++i)
    if (deg[i] > 2) r.offending_generators.push_back(t.gens[i].id);
  r.is_curve_like = r.offending_generators.empty() && r.offending_labels.empty();
  return r;
}

void ReductionTrace::append(const ReductionTrace& later) {
  if (ids_before.empty() && steps.empty()) ids_before = later.ids_before;
  steps.insert(steps.end(), later.steps.begin(), later.steps.end());
  ids_after = later.ids_after;
}

namespace {

struct Work {
  Field field;
  std::vector<Generator> gens;
  std::vector<char> alive;
  std::vector<std::map<int, Elem>> out;
  std::vector<std::set<int>> in;

  explicit Work(const TypeD& t) : field(t.field), gens(t.gens), alive(t.size(), 1), out(t.size()), in(t.size()) {
    for (const auto& [k, e] : t.diff) {
      out[k.first].emplace(k.second, e);
      in[k.second].insert(k.first);
    }
  }

  int find(const std::string& id) const {
    for (int i = 0; i < (int)gens.size(); ++i)
      if (alive[i] && gens[i].id == id) return i;
    throw DomainError("trace refers to missing generator " + id);
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> r;
    for (size_t i = 0; i < gens.size(); ++i)
      if (alive[i]) r.push_back(gens[i].id);
    return r;
  }

  TypeD typed() const {
    TypeD t(field);
    std::vector<int> pos(gens.size(), -1);
    for (size_t i = 0; i < gens.size(); ++i)
      if (alive[i]) {
        pos[i] = t.size();
        t.gens.push_back(gens[i]);
      }
    for (size_t i = 0; i < gens.size(); ++i)
      if (alive[i])
        for (const auto& [j, e] : out[i]) t.diff.emplace(std::make_pair(pos[i], pos[j]), e);
    return t;
  }

  void add(int i, int j, const Elem& e) {
    if (e.is_zero()) return;
    auto it = out[i].find(j);
    if (it == out[i].end()) {
      out[i].emplace(j, e);
      in[j].insert(i);
      return;
    }
    it->second += e;
    if (it->second.is_zero()) {
      out[i].erase(it);
      in[j].erase(i);
    }
  }

  void kill(int i) {
    for (const auto& [j, e] : out[i]) in[j].erase(i);
    for (int k : in[i]) out[k].erase(i);
    out[i].clear();
    in[i].clear();
    alive[i] = 0;
  }

  void cancel(int i, int j) {
    auto it = out[i].find(j);
    if (i == j || it == out[i].end() || !is_unit_component(it->second))
      throw DomainError("cancellation-not-applicable: " + gens[i].id + " -> " + gens[j].id);
    Scalar inv = it->second.terms()[0].coeff.inverse();
    std::vector<std::pair<int, Elem>> ins, outs;
    for (int k : in[j])
      if (k != i) ins.push_back({k, out[k].at(j)});
    for (const auto& [l, e] : out[i])
      if (l != j) outs.push_back({l, e});
    for (const auto& [k, a] : ins)
      for (const auto& [l, e] : outs) add(k, l, -multiply(e, a).scaled(inv));
    kill(i);
    kill(j);
  }

  // (A∘B)_{ik} = sum_j A_jk B_ij; returns A∘B for sparse maps
  static Eta compose(const Eta& a, const Eta& b) {
    std::map<int, std::vector<std::pair<int, const Elem*>>> arows;
    for (const auto& [k, e] : a) arows[k.first].push_back({k.second, &e});
    Eta r;
    for (const auto& [k, bij] : b) {
      auto it = arows.find(k.second);
      if (it == arows.end()) continue;
      for (auto [kk, ajk] : it->second) {
        Elem p = multiply(*ajk, bij);
        if (p.is_zero()) continue;
        auto [pos, fresh] = r.try_emplace({k.first, kk}, p);
        if (!fresh) pos->second += p;
      }
    }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
  }

  // d∘η − η∘d restricted to the rows/columns touched by η
  Eta commutator(const Eta& eta) const {
    Eta r;
    auto acc = [&](int i, int j, const Elem& e) {
      if (e.is_zero()) return;
      auto [pos, fresh] = r.try_emplace({i, j}, e);
      if (!fresh) pos->second += e;
    };
    for (const auto& [k, e] : eta) {
      int u = k.first, v = k.second;
      for (const auto& [w, dvw] : out[v]) acc(u, w, multiply(dvw, e));
      for (int i : in[u]) acc(i, v, -multiply(e, out[i].at(u)));
    }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
  }

  void apply_eta(const Eta& eta, bool check) {
    if (check) {
      for (const auto& [k, e] : eta) {
        int n = static_cast<int>(gens.size());
        if (k.first < 0 || k.second < 0 || k.first >= n || k.second >= n)
          throw DomainError("cleanup-rejected: generator index out of range");
        const auto& a = gens[k.first];
        const auto& b = gens[k.second];
        if (!alive[k.first] || !alive[k.second]) throw DomainError("cleanup-rejected: dead generator");
        if (e.src() != a.idem || e.tgt() != b.idem)
          throw DomainError("cleanup-rejected: idempotents of " + e.str());
        if (e.is_zero()) continue;
        auto q = try_quantum_degree(e);
        if (a.h != b.h || !q || *q + b.q - a.q != 0)
          throw DomainError("cleanup-rejected: eta entry " + a.id + " -> " + b.id + " is not of bigrading (0,0)");
      }
      if (!compose(eta, eta).empty()) throw DomainError("cleanup-rejected: eta^2 != 0");
    }
    Eta x = commutator(eta);
    if (check && !compose(eta, x).empty()) throw DomainError("cleanup-rejected: eta(d eta - eta d) != 0");
    for (const auto& [k, e] : x) add(k.first, k.second, e);
  }
};

ReductionStep cancel_step(const Work& w, int i, int j) {
  int n = static_cast<int>(w.gens.size());
  if (i < 0 || j < 0 || i >= n || j >= n || !w.alive[i] || !w.alive[j])
    throw DomainError("cancellation-not-applicable: generator index out of range");
  ReductionStep s;
  s.kind = ReductionStep::Kind::Cancel;
  s.from = w.gens[i].id;
  s.to = w.gens[j].id;
  return s;
}

ReductionStep cleanup_step(const Work& w, const Eta& eta) {
  ReductionStep s;
  s.kind = ReductionStep::Kind::Cleanup;
  for (const auto& [k, e] : eta) s.eta.push_back({w.gens[k.first].id, w.gens[k.second].id, e});
  return s;
}

void reduce_work(Work& w, ReductionTrace& trace) {
  std::set<std::pair<int, int>> cand;
  for (size_t i = 0; i < w.gens.size(); ++i)
    if (w.alive[i]) cand.insert({w.gens[i].h, (int)i});
  while (!cand.empty()) {
    auto [h, i] = *cand.begin();
    cand.erase(cand.begin());
    if (!w.alive[i]) continue;
    int j = -1;
    for (const auto& [t, e] : w.out[i])
      if (is_unit_component(e)) {
        j = t;
        break;
      }
    if (j < 0) continue;
    std::vector<int> rows(w.in[j].begin(), w.in[j].end());
    trace.steps.push_back(cancel_step(w, i, j));
    w.cancel(i, j);
    for (int k : rows)
      if (w.alive[k]) cand.insert({w.gens[k].h, k});
  }
}

}  // namespace

Reduced cancel_one(const TypeD& t, int i, int j) {
  Work w(t);
  Reduced r;
  r.trace.ids_before = w.ids();
  r.trace.steps.push_back(cancel_step(w, i, j));
  w.cancel(i, j);
  r.trace.ids_after = w.ids();
  r.t = w.typed();
  return r;
}

Reduced cleanup(const TypeD& t, const Eta& eta) {
  Work w(t);
  Reduced r;
  r.trace.ids_before = w.ids();
  w.apply_eta(eta, true);
  r.trace.steps.push_back(cleanup_step(w, eta));
  r.trace.ids_after = w.ids();
  r.t = w.typed();
  return r;
}

Reduced reduce(const TypeD& t) {
  Work w(t);
  Reduced r;
  r.trace.ids_before = w.ids();
  reduce_work(w, r.trace);
  r.trace.ids_after = w.ids();
  r.t = w.typed();
  return r;
}

TypeD replay(const TypeD& input, const ReductionTrace& trace) {
  Work w(input);
  if (!trace.ids_before.empty() && w.ids() != trace.ids_before) throw DomainError("trace does not match input generators");
  for (const auto& s : trace.steps) {
    if (s.kind == ReductionStep::Kind::Cancel) {
      w.cancel(w.find(s.from), w.find(s.to));
    } else {
      Eta eta;
      for (const auto& e : s.eta) eta.emplace(std::make_pair(w.find(e.from), w.find(e.to)), e.label);
      w.apply_eta(eta, true);
    }
  }
  return w.typed();
}

int default_step_budget() {
  if (const char* s = std::getenv("BNC_STEP_BUDGET")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 10000;
}

// ---------------------------------------------------------------------------
// Arrow sliding towards curve-like form.
//
// Away from identity components, every label splits into at most one D-path
// and one S-path (gradings force a single length per face), and paths from
// different faces multiply to zero. Each generator therefore has a D-side and
// an S-side; curve-like means every side carries at most one path and no
// label carries two. Moves are single-entry clean-ups that use a shortest
// path on an overfull side to remove a parallel path on the same side.

namespace {

struct Comp {
  int from, to;
  Face face;
  uint32_t len;
  Scalar c;
};

struct SideMap {
  std::vector<Comp> comps;
  std::map<std::pair<int, int>, std::vector<int>> sides;  // (gen, 0=D|1=S) -> comp indices
  int doubles = 0;
};

SideMap sides_of(const Work& w) {
  SideMap m;
  for (size_t i = 0; i < w.gens.size(); ++i) {
    if (!w.alive[i]) continue;
    for (const auto& [j, e] : w.out[i]) {
      auto ps = e.paths();
      if (ps.size() > 1) m.doubles++;
      for (const auto& p : ps) {
        int side = p.face == Face::S ? 1 : 0;
        int idx = (int)m.comps.size();
        m.comps.push_back({(int)i, j, p.face, p.len, p.coeff});
        m.sides[{(int)i, side}].push_back(idx);
        m.sides[{j, side}].push_back(idx);
      }
    }
  }
  return m;
}

long potential(const SideMap& m) {
  long p = m.doubles;
  for (const auto& [k, v] : m.sides)
    if (v.size() > 1) p += (long)v.size() - 1;
  return p;
}

uint64_t mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t entry_hash(int i, int j, const Elem& e) {
  if (e.is_zero()) return 0;
  return mix(std::hash<std::string>{}(std::to_string(i) + ">" + std::to_string(j) + ":" + e.str()));
}

// Order-independent hash of the whole differential, updated per move.
uint64_t state_hash(const Work& w) {
  uint64_t h = 0;
  for (size_t i = 0; i < w.gens.size(); ++i)
    if (w.alive[i])
      for (const auto& [j, e] : w.out[i]) h += entry_hash((int)i, j, e);
  return h;
}

using Changes = std::map<std::pair<int, int>, Elem>;

// New values of the entries a clean-up touches (zero when an entry vanishes).
Changes changes_of(const Work& w, const Eta& eta) {
  Changes c;
  for (const auto& [k, x] : w.commutator(eta)) {
    auto it = w.out[k.first].find(k.second);
    c.emplace(k, it == w.out[k.first].end() ? x : it->second + x);
  }
  return c;
}

// Potential restricted to the generators touched by c, before or after applying it.
long local_potential(const Work& w, const Changes& c, bool after) {
  std::set<int> touched;
  for (const auto& [k, e] : c) {
    touched.insert(k.first);
    touched.insert(k.second);
  }
  long p = 0;
  for (const auto& [k, e] : c) {
    const Elem* cur = nullptr;
    if (after) cur = &e;
    else if (auto it = w.out[k.first].find(k.second); it != w.out[k.first].end()) cur = &it->second;
    if (cur && cur->paths().size() > 1) p++;
  }
  for (int g : touched) {
    std::map<std::pair<int, int>, const Elem*> entries;
    for (const auto& [j, e] : w.out[g]) entries[{g, j}] = &e;
    for (int k : w.in[g]) entries[{k, g}] = &w.out[k].at(g);
    if (after)
      for (const auto& [k, e] : c)
        if (k.first == g || k.second == g) entries[k] = &e;
    int count[2] = {0, 0};
    for (const auto& [k, e] : entries)
      for (const auto& path : e->paths()) count[path.face == Face::S ? 1 : 0]++;
    for (int n : count)
      if (n > 1) p += n - 1;
  }
  return p;
}

struct Move {
  uint32_t pivot_len;
  int u, v;
  Elem e;
};

std::vector<Move> candidate_moves(const Work& w, const SideMap& m) {
  std::vector<Move> moves;
  for (const auto& [key, idx] : m.sides) {
    if (idx.size() < 2) continue;
    int z = key.first;
    for (int a : idx)
      for (int b : idx) {
        if (a == b) continue;
        const Comp& p = m.comps[a];
        const Comp& o = m.comps[b];
        if (p.face != o.face || o.len < p.len) continue;
        Face f = o.len == p.len ? Face::Id : p.face;
        if (p.from == z && o.from == z && p.to != o.to) {
          // z->w1 (pivot), z->w2: eta(w1 -> w2) removes the path to w2
          int w1 = p.to, w2 = o.to;
          Elem e = Elem::path(w.gens[w1].idem, w.gens[w2].idem, f, o.len - p.len, o.c / p.c);
          moves.push_back({p.len, w1, w2, e});
        } else if (p.to == z && o.to == z && p.from != o.from) {
          // w1->z (pivot), w2->z: eta(w2 -> w1) removes the path from w2
          int w1 = p.from, w2 = o.from;
          Elem e = Elem::path(w.gens[w2].idem, w.gens[w1].idem, f, o.len - p.len, -(o.c / p.c));
          moves.push_back({p.len, w2, w1, e});
        }
      }
  }
  std::stable_sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
    return std::tie(x.pivot_len, x.u, x.v) < std::tie(y.pivot_len, y.u, y.v);
  });
  return moves;
}

}  // namespace

CurveLikeResult to_curve_like(const TypeD& input, int budget) {
  if (budget < 0) budget = default_step_budget();
  CurveLikeResult res;
  Work w(input);
  res.trace.ids_before = w.ids();
  reduce_work(w, res.trace);

  uint64_t hash = state_hash(w);
  std::unordered_set<uint64_t> seen{hash};
  res.stop_reason = "curve-like";
  while (true) {
    SideMap m = sides_of(w);
    if (potential(m) == 0) break;
    if (res.steps >= budget) {
      res.stop_reason = "budget";
      break;
    }
    auto moves = candidate_moves(w, m);
    if (moves.empty()) {
      res.stop_reason = "stuck";
      break;
    }
    uint32_t best_len = moves.front().pivot_len;
    long best_delta = 0;
    int best = -1;
    uint64_t best_hash = 0;
    for (size_t k = 0; k < moves.size() && moves[k].pivot_len == best_len; ++k) {
      Eta eta{{{moves[k].u, moves[k].v}, moves[k].e}};
      Changes c = changes_of(w, eta);
      uint64_t h = hash;
      for (const auto& [key, e] : c) {
        auto it = w.out[key.first].find(key.second);
        if (it != w.out[key.first].end()) h -= entry_hash(key.first, key.second, it->second);
        h += entry_hash(key.first, key.second, e);
      }
      if (seen.count(h)) continue;
      long delta = local_potential(w, c, true) - local_potential(w, c, false);
      if (best < 0 || delta < best_delta) {
        best = (int)k;
        best_delta = delta;
        best_hash = h;
      }
    }
    if (best < 0) {
      res.stop_reason = "cycle";
      break;
    }
    Eta eta{{{moves[best].u, moves[best].v}, moves[best].e}};
    w.apply_eta(eta, true);
    res.trace.steps.push_back(cleanup_step(w, eta));
    hash = best_hash;
    seen.insert(hash);
    res.steps++;
  }
  res.trace.ids_after = w.ids();
  res.t = w.typed();
  res.report = curve_like_report(res.t);
  if (res.stop_reason == "curve-like" && !res.report.is_curve_like) res.stop_reason = "stuck";
  return res;
}

}  // namespace bnc
