#include "bnc/pairing.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "bnc/builtins.hpp"

namespace bnc {

namespace {

using Key = std::tuple<int, int, Kind>;

void accumulate(std::map<std::pair<int, int>, GMono>& diff, int u, int v, uint32_t gpow, const Scalar& c) {
  auto [it, fresh] = diff.try_emplace({u, v}, GMono{gpow, c});
  if (fresh) return;
  if (it->second.gpow != gpow) throw DomainError("inhomogeneous Mor differential");
  it->second.c += c;
  if (it->second.c.is_zero()) diff.erase(it);
}

}  // namespace

MorComplex mor_complex(const TypeD& A, const TypeD& B) {
  if (!(A.field == B.field)) throw DomainError("mor_complex: field mismatch");
  ensure_valid(A, "mor_complex source");
  ensure_valid(B, "mor_complex target");
  MorComplex m{A.field, {}, {}};
  std::map<Key, int> index;
  for (int a = 0; a < A.size(); ++a) {
    for (int b = 0; b < B.size(); ++b) {
      const auto& ga = A.gens[a];
      const auto& gb = B.gens[b];
      std::vector<Kind> kinds = ga.idem == gb.idem ? std::vector<Kind>{Kind::Id, Kind::D} : std::vector<Kind>{Kind::S};
      for (Kind k : kinds) {
        index[{a, b, k}] = static_cast<int>(m.basis.size());
        m.basis.push_back({a, b, k, term_qdeg(k, 0) + gb.q - ga.q, gb.h - ga.h});
      }
    }
  }

  std::vector<std::vector<std::pair<int, const Elem*>>> a_in(A.size());
  for (const auto& [ij, e] : A.diff) a_in[ij.second].push_back({ij.first, &e});
  auto b_out = B.out_lists();
  Scalar one(A.field, 1);

  for (int u = 0; u < static_cast<int>(m.basis.size()); ++u) {
    const auto& f = m.basis[u];
    Elem fe = Elem::mono(A.gens[f.a].idem, B.gens[f.b].idem, f.kind, 0, one);
    // f∘d_A: a' -> a -> b
    for (const auto& [a2, e] : a_in[f.a]) {
      Elem r = multiply(fe, *e);
      for (const auto& t : r.terms()) accumulate(m.diff, u, index.at({a2, f.b, t.kind}), t.gpow, t.coeff);
    }
    // -(-1)^{h(f)} d_B∘f: a -> b -> b'
    Scalar sign = f.h % 2 == 0 ? -one : one;
    for (const auto& [b2, e] : b_out[f.b]) {
      Elem r = multiply(*e, fe);
      for (const auto& t : r.terms()) accumulate(m.diff, u, index.at({f.a, b2, t.kind}), t.gpow, t.coeff * sign);
    }
  }
  if (!mor_d_squared_zero(m)) throw DomainError("mor_complex: differential does not square to zero");
  return m;
}

bool mor_d_squared_zero(const MorComplex& m) {
  std::vector<std::vector<std::pair<int, const GMono*>>> out(m.basis.size());
  for (const auto& [uv, e] : m.diff) out[uv.first].push_back({uv.second, &e});
  for (size_t u = 0; u < m.basis.size(); ++u) {
    std::map<std::pair<int, int>, GMono> sq;
    for (const auto& [v, e1] : out[u])
      for (const auto& [w, e2] : out[v]) accumulate(sq, 0, w, e1->gpow + e2->gpow, e1->c * e2->c);
    if (!sq.empty()) return false;
  }
  return true;
}

std::pair<int, std::vector<int>> GradedModule::type() const {
  std::vector<int> ex;
  for (const auto& t : torsion) ex.push_back(t.exponent);
  std::sort(ex.begin(), ex.end());
  return {free_rank(), ex};
}

std::string GradedModule::str() const {
  auto [rank, ex] = type();
  std::ostringstream os;
  os << "k[G]^" << rank;
  std::map<int, int> counts;
  for (int e : ex) counts[e]++;
  for (const auto& [e, n] : counts) os << " + (k[G]/G^" << e << ")^" << n;
  return os.str();
}

namespace {

struct Pivot {
  int row, col;
  uint32_t a;
};

// Graded Smith form of a matrix whose entries are monomials c*G^n. The entry
// of least G-power divides its whole row and column, so elimination never
// leaves k[G] and basis changes keep every basis element's grading.
std::vector<Pivot> graded_smith(std::map<int, std::map<int, GMono>> cols) {
  std::map<int, std::set<int>> rows;
  for (const auto& [c, col] : cols)
    for (const auto& [r, e] : col) rows[r].insert(c);

  auto set_entry = [&](int r, int c, uint32_t gpow, const Scalar& delta) {
    auto& col = cols[c];
    auto [it, fresh] = col.try_emplace(r, GMono{gpow, delta});
    if (!fresh) {
      if (it->second.gpow != gpow) throw DomainError("inhomogeneous Mor differential");
      it->second.c += delta;
      if (it->second.c.is_zero()) {
        col.erase(it);
        rows[r].erase(c);
        return;
      }
    }
    rows[r].insert(c);
  };

  std::vector<Pivot> pivots;
  while (true) {
    std::optional<std::tuple<uint32_t, int, int>> best;
    for (const auto& [c, col] : cols)
      for (const auto& [r, e] : col) {
        std::tuple<uint32_t, int, int> cand{e.gpow, c, r};
        if (!best || cand < *best) best = cand;
      }
    if (!best) break;
    auto [a, pc, pr] = *best;
    GMono p = cols[pc][pr];
    std::vector<std::pair<int, GMono>> others;
    for (const auto& [r, e] : cols[pc])
      if (r != pr) others.push_back({r, e});
    std::vector<std::pair<int, GMono>> prow;
    for (int c : rows[pr]) prow.push_back({c, cols[c][pr]});
    for (const auto& [r, e] : others) {
      Scalar factor = e.c / p.c;
      uint32_t shift = e.gpow - p.gpow;
      for (const auto& [c, x] : prow) set_entry(r, c, x.gpow + shift, -(factor * x.c));
    }
    for (int c : rows[pr]) cols[c].erase(pr);
    rows.erase(pr);
    for (const auto& [r, e] : cols[pc]) rows[r].erase(pc);
    cols.erase(pc);
    pivots.push_back({pr, pc, a});
  }
  return pivots;
}

}  // namespace

GradedModule homology_over_kG(const MorComplex& m) {
  std::map<int, std::map<int, std::map<int, GMono>>> blocks;  // h -> col -> row -> entry
  for (const auto& [uv, e] : m.diff) blocks[m.basis[uv.first].h][uv.first][uv.second] = e;

  std::multiset<std::pair<int, int>> free;
  for (const auto& b : m.basis) free.insert({b.q, b.h});
  auto take = [&](int idx) {
    const auto& b = m.basis[idx];
    auto it = free.find({b.q, b.h});
    if (it == free.end()) throw DomainError("homology: grading bookkeeping failed");
    free.erase(it);
  };

  GradedModule out;
  for (auto& [h, cols] : blocks) {
    for (const auto& p : graded_smith(std::move(cols))) {
      take(p.col);
      take(p.row);
      if (p.a > 0) out.torsion.push_back({m.basis[p.row].q, m.basis[p.row].h, static_cast<int>(p.a)});
    }
  }
  out.free.assign(free.begin(), free.end());
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

void LaurentPoly::add(int twice_exp, int64_t c) {
  auto& v = coeff[twice_exp];
  v += c;
  if (v == 0) coeff.erase(twice_exp);
}

std::pair<int64_t, int64_t> LaurentPoly::at_minus_one() const {
  int64_t re = 0, im = 0;
  for (const auto& [e, c] : coeff) {
    switch (((e % 4) + 4) % 4) {
      case 0: re += c; break;
      case 1: im += c; break;
      case 2: re -= c; break;
      default: im -= c; break;
    }
  }
  return {re, im};
}

std::string LaurentPoly::str() const {
  if (coeff.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeff) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    int64_t a = c < 0 ? -c : c;
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    if (e % 2 == 0) os << "t^" << e / 2;
    else os << "t^(" << e << "/2)";
  }
  return os.str();
}

LaurentPoly euler_char_B0(const TypeD& A, const TypeD& B, int shift_m) {
  LaurentPoly p;
  for (const auto& ga : A.gens)
    for (const auto& gb : B.gens) {
      int h = gb.h - ga.h;
      int sign = h % 2 == 0 ? 1 : -1;
      if (ga.idem == gb.idem) {
        p.add(gb.q - ga.q + shift_m, sign);
        p.add(gb.q - ga.q - 2 + shift_m, sign);
      } else {
        p.add(gb.q - ga.q - 1 + shift_m, sign);
      }
    }
  return p;
}

int64_t determinant(const TypeD& t, std::optional<int> n) {
  TypeD closure = n ? q_tangle(t.field, *n) : q_infty(t.field);
  auto [re, im] = euler_char_B0(closure, t, 1).at_minus_one();
  if (re != 0 && im != 0) throw DomainError("determinant: Euler characteristic mixes quantum parities");
  return re != 0 ? (re < 0 ? -re : re) : (im < 0 ? -im : im);
}

bool is_cap_trivial(const TypeD& t) {
  auto h = homology_over_kG(mor_complex(q_infty(t.field), t));
  return h.free_rank() == 1 && h.torsion.empty();
}

std::vector<std::string> pairing_panel_names() { return {"Q_inf", "Q_0", "Q_1", "Q_-1", "Q_2", "Q_-2"}; }

std::vector<GradedModule> pairing_panel(const TypeD& t) {
  std::vector<TypeD> probes{q_infty(t.field), q_tangle(t.field, 0), q_tangle(t.field, 1),
                            q_tangle(t.field, -1), q_tangle(t.field, 2), q_tangle(t.field, -2)};
  std::vector<GradedModule> out;
  for (const auto& p : probes) out.push_back(homology_over_kG(mor_complex(p, t)));
  return out;
}

}  // namespace bnc
