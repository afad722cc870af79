#include "bnc/cabling.hpp"

#include <memory>
#include <mutex>
#include <random>

namespace bnc {

std::string Pos::str() const { return "(" + std::to_string(r) + "," + std::to_string(c) + ")"; }

bool Block::is_zero() const {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

const char* label_name(Label l) {
  switch (l) {
    case Label::S_dot: return "S_dot";
    case Label::S_circle: return "S_circle";
    case Label::D_dot: return "D_dot";
    case Label::D_circle: return "D_circle";
    case Label::SS_dot: return "SS_dot";
    default: return "SS_circle";
  }
}

namespace {

constexpr Idem kDot = Idem::Dot;
constexpr Idem kCirc = Idem::Circle;

// magenta positions: the grid objects there sit in odd parity
int parity_sign(Pos p) {
  if (p == Pos{1, 2} || p == Pos{2, 3} || p == Pos{3, 2} || p == Pos{3, 4}) return -1;
  return 1;
}

struct Alg {
  Field f;
  Scalar s(int c) const { return Scalar(f, c); }
  Elem zero(Idem a, Idem b) const { return Elem(a, b); }
  Elem one(Idem i, int c = 1) const { return Elem::one(i, s(c)); }
  Elem D(Idem i, int c = 1) const { return Elem::D(i, s(c)); }
  Elem S(Idem src, int c = 1) const { return Elem::S(src, s(c)); }
  Elem SS(Idem i, int c = 1) const { return Elem::SS(i, s(c)); }
  Elem G(Idem i, int c = 1, uint32_t n = 1) const { return Elem::mono(i, i, Kind::Id, n, s(c)); }
  Elem GD(Idem i, int c, uint32_t n) const { return Elem::mono(i, i, Kind::D, n, s(c)); }

  static Block b1(Elem a) { return Block{1, 1, {{a}}}; }
  static Block row(Elem a, Elem b) { return Block{1, 2, {{a, b}}}; }
  static Block col(Elem a, Elem b) { return Block{2, 1, {{a}, {b}}}; }
  static Block mat(Elem a, Elem b, Elem c, Elem d) { return Block{2, 2, {{a, b}, {c, d}}}; }
};

Block scaled(const Block& b, const Scalar& c) {
  Block r = b;
  for (auto& row : r.m)
    for (auto& e : row) e = e.scaled(c);
  return r;
}

void accumulate(std::map<Pos, Block>& acc, const std::map<Pos, Block>& add, const Scalar& c) {
  for (const auto& [p, b] : add) {
    Block sb = scaled(b, c);
    auto it = acc.find(p);
    if (it == acc.end()) {
      acc.emplace(p, sb);
      continue;
    }
    for (int t = 0; t < b.rows; ++t)
      for (int s = 0; s < b.cols; ++s) it->second.m[t][s] += sb.m[t][s];
  }
}

struct GridBuild {
  TypeD t;
  std::vector<Pos> order;
  std::map<Pos, std::vector<int>> cells;

  explicit GridBuild(Field f) : t(f) {}

  void cell(Pos p, Idem i, int n) {
    order.push_back(p);
    for (int s = 0; s < n; ++s) cells[p].push_back(t.add_gen("grid" + p.str() + "#" + std::to_string(s), i));
  }

  void arrow(Pos a, Pos b, const Block& m) {
    const auto& src = cells.at(a);
    const auto& tgt = cells.at(b);
    if ((int)src.size() != m.cols || (int)tgt.size() != m.rows) throw DomainError("grid block shape mismatch");
    for (int r = 0; r < m.rows; ++r)
      for (int s = 0; s < m.cols; ++s) t.add_arrow(src[s], tgt[r], m.m[r][s]);
  }
};

}  // namespace

OperatorTable::OperatorTable(Field f) : field_(f) {
  Alg A{f};
  using P = Pos;
  {
    GridBuild g(f);
    g.cell({1, 1}, kDot, 2);
    g.cell({1, 2}, kDot, 1);
    g.cell({1, 3}, kDot, 1);
    g.cell({2, 2}, kCirc, 1);
    g.cell({2, 3}, kCirc, 1);
    g.cell({2, 4}, kDot, 1);
    g.cell({3, 2}, kCirc, 2);
    g.cell({3, 3}, kCirc, 2);
    g.cell({3, 4}, kDot, 2);
    g.arrow(P{1, 1}, P{1, 2}, Alg::row(A.zero(kDot, kDot), A.one(kDot)));
    g.arrow(P{1, 1}, P{3, 2}, Alg::mat(A.S(kDot), A.zero(kDot, kCirc), A.zero(kDot, kCirc), A.S(kDot)));
    g.arrow(P{1, 2}, P{2, 2}, Alg::b1(A.S(kDot, -1)));
    g.arrow(P{1, 3}, P{2, 3}, Alg::b1(A.S(kDot)));
    g.arrow(P{1, 3}, P{3, 4}, Alg::col(A.one(kDot, -1), A.G(kDot, -1)));
    g.arrow(P{2, 2}, P{2, 3}, Alg::b1(A.D(kCirc)));
    g.arrow(P{2, 3}, P{2, 4}, Alg::b1(A.S(kCirc)));
    g.arrow(P{3, 2}, P{2, 2}, Alg::row(A.zero(kCirc, kCirc), A.one(kCirc)));
    g.arrow(P{3, 2}, P{3, 3}, Alg::mat(A.D(kCirc), A.zero(kCirc, kCirc), A.zero(kCirc, kCirc), A.D(kCirc)));
    g.arrow(P{3, 3}, P{2, 3}, Alg::row(A.zero(kCirc, kCirc), A.one(kCirc, -1)));
    g.arrow(P{3, 3}, P{3, 4}, Alg::mat(A.S(kCirc), A.zero(kCirc, kDot), A.zero(kCirc, kDot), A.S(kCirc)));
    g.arrow(P{3, 4}, P{2, 4}, Alg::row(A.D(kDot), A.one(kDot)));
    propagate_gradings(g.t, g.cells[{1, 1}][0], -4, -2);
    ensure_valid(g.t, "dot grid");
    dot_grid_ = g.t;
    dot_pos_ = g.order;
    dot_cells_ = g.cells;
  }
  {
    GridBuild g(f);
    g.cell({1, 1}, kDot, 1);
    g.cell({1, 2}, kCirc, 1);
    g.cell({1, 3}, kCirc, 1);
    g.cell({2, 2}, kCirc, 2);
    g.cell({2, 3}, kCirc, 2);
    g.cell({2, 4}, kDot, 2);
    g.cell({3, 2}, kCirc, 1);
    g.cell({3, 3}, kCirc, 1);
    g.cell({3, 4}, kDot, 1);
    g.arrow(P{1, 1}, P{1, 2}, Alg::b1(A.S(kDot)));
    g.arrow(P{1, 1}, P{3, 2}, Alg::b1(A.S(kDot)));
    g.arrow(P{1, 2}, P{1, 3}, Alg::b1(A.D(kCirc)));
    g.arrow(P{1, 2}, P{2, 2}, Alg::col(A.one(kCirc, -1), A.SS(kCirc, -1)));
    g.arrow(P{1, 3}, P{3, 4}, Alg::b1(A.S(kCirc, -1)));
    g.arrow(P{1, 3}, P{2, 3}, Alg::col(A.one(kCirc), A.SS(kCirc)));
    g.arrow(P{2, 2}, P{2, 3}, Alg::mat(A.D(kCirc), A.zero(kCirc, kCirc), A.zero(kCirc, kCirc), A.D(kCirc)));
    g.arrow(P{2, 3}, P{2, 4}, Alg::mat(A.S(kCirc), A.zero(kCirc, kDot), A.zero(kCirc, kDot), A.S(kCirc)));
    g.arrow(P{3, 2}, P{2, 2}, Alg::col(A.one(kCirc), A.G(kCirc)));
    g.arrow(P{3, 2}, P{3, 3}, Alg::b1(A.D(kCirc)));
    g.arrow(P{3, 3}, P{2, 3}, Alg::col(A.one(kCirc, -1), A.G(kCirc, -1)));
    g.arrow(P{3, 3}, P{3, 4}, Alg::b1(A.S(kCirc)));
    g.arrow(P{3, 4}, P{2, 4}, Alg::col(A.one(kDot), A.SS(kDot)));
    propagate_gradings(g.t, g.cells[{1, 1}][0], -3, -2);
    ensure_valid(g.t, "circle grid");
    circle_grid_ = g.t;
    circle_pos_ = g.order;
    circle_cells_ = g.cells;
  }

  auto zc = A.zero(kCirc, kCirc);
  auto zd = A.zero(kDot, kDot);
  tables_[Label::S_dot] = {
      {P{1, 1}, Alg::row(A.D(kDot), A.one(kDot))},
      {P{1, 2}, Alg::b1(A.S(kDot, -1))},
      {P{1, 3}, Alg::b1(A.S(kDot))},
      {P{2, 2}, Alg::col(A.one(kCirc), A.G(kCirc))},
      {P{2, 3}, Alg::col(A.one(kCirc, -1), A.G(kCirc, -1))},
      {P{2, 4}, Alg::col(A.one(kDot), A.SS(kDot))},
      {P{3, 2}, Alg::row(zc, A.one(kCirc, -1))},
      {P{3, 3}, Alg::row(zc, A.one(kCirc))},
      {P{3, 4}, Alg::row(A.D(kDot, -1), A.one(kDot, -1))},
  };
  tables_[Label::S_circle] = {
      {P{1, 1}, Alg::col(A.one(kDot), A.SS(kDot))},
      {P{1, 2}, Alg::b1(A.S(kCirc, -1))},
      {P{1, 3}, Alg::b1(A.S(kCirc))},
      {P{2, 2}, Alg::row(zc, A.one(kCirc))},
      {P{2, 3}, Alg::row(zc, A.one(kCirc, -1))},
      {P{2, 4}, Alg::row(A.D(kDot), A.one(kDot))},
      {P{3, 2}, Alg::col(A.one(kCirc, -1), A.G(kCirc, -1))},
      {P{3, 3}, Alg::col(A.one(kCirc), A.G(kCirc))},
      {P{3, 4}, Alg::col(A.one(kDot, -1), A.SS(kDot, -1))},
  };
  tables_[Label::D_dot] = image_D_dot_power(1);
  tables_[Label::D_circle] = {
      {P{1, 2}, Alg::b1(A.D(kCirc, -1))},
      {P{1, 3}, Alg::b1(A.D(kCirc))},
      {P{2, 2}, Alg::mat(A.G(kCirc, -1), A.one(kCirc), zc, zc)},
      {P{2, 3}, Alg::mat(A.G(kCirc), A.one(kCirc, -1), zc, zc)},
      {P{2, 4}, Alg::mat(A.SS(kDot, -1), A.one(kDot), zd, A.D(kDot, -1))},
  };
  tables_[Label::SS_dot] = {
      {P{1, 1}, Alg::mat(A.D(kDot), A.one(kDot), zd, A.SS(kDot))},
      {P{1, 2}, Alg::b1(A.SS(kDot, -1))},
      {P{1, 3}, Alg::b1(A.SS(kDot))},
      {P{2, 2}, Alg::b1(A.G(kCirc))},
      {P{2, 3}, Alg::b1(A.G(kCirc, -1))},
      {P{2, 4}, Alg::b1(A.SS(kDot) + A.D(kDot))},
      {P{3, 2}, Alg::mat(zc, A.one(kCirc, -1), zc, A.G(kCirc, -1))},
      {P{3, 3}, Alg::mat(zc, A.one(kCirc), zc, A.G(kCirc))},
      {P{3, 4}, Alg::mat(A.D(kDot, -1), A.one(kDot, -1), zd, A.SS(kDot, -1))},
  };
  tables_[Label::SS_circle] = {
      {P{1, 1}, Alg::b1(A.SS(kDot) + A.D(kDot))},
      {P{1, 2}, Alg::b1(A.SS(kCirc, -1))},
      {P{1, 3}, Alg::b1(A.SS(kCirc))},
      {P{2, 2}, Alg::mat(zc, A.one(kCirc), zc, A.G(kCirc))},
      {P{2, 3}, Alg::mat(zc, A.one(kCirc, -1), zc, A.G(kCirc, -1))},
      {P{2, 4}, Alg::mat(A.D(kDot), A.one(kDot), zd, A.SS(kDot))},
      {P{3, 2}, Alg::b1(A.G(kCirc, -1))},
      {P{3, 3}, Alg::b1(A.G(kCirc))},
      {P{3, 4}, Alg::b1(A.SS(kDot, -1) - A.D(kDot))},
  };
}

const OperatorTable& OperatorTable::standard(Field f) {
  static std::mutex mu;
  static std::map<uint32_t, std::unique_ptr<OperatorTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[f.p];
  if (!slot) slot = std::make_unique<OperatorTable>(f);
  return *slot;
}

const std::vector<int>& OperatorTable::cell(Idem i, Pos p) const {
  const auto& cells = i == Idem::Dot ? dot_cells_ : circle_cells_;
  return cells.at(p);
}

std::map<Pos, Block> OperatorTable::image(Label l) const { return tables_.at(l); }

std::map<Pos, Block> OperatorTable::image_D_dot_power(uint32_t k) const {
  if (k == 0) throw DomainError("D_dot^0 is not an arrow label");
  if (k == 1 && tables_.count(Label::D_dot)) return tables_.at(Label::D_dot);
  Alg A{field_};
  Scalar one(field_, 1);
  // G^{k-1} SS = G^k 1 + G^{k-1} D
  Elem g_ss = A.G(kDot, 1, k) + A.GD(kDot, 1, k - 1);
  Block F;
  if (k % 2 == 0) {
    Elem ss_plus_d = A.G(kDot, 1, k - 1) + A.GD(kDot, 2, k - 2);
    F = Alg::mat(g_ss, -ss_plus_d, A.zero(kDot, kDot), A.GD(kDot, -1, k - 1));
  } else {
    F = Alg::mat(g_ss, k == 1 ? A.one(kDot, -1) : A.G(kDot, -1, k - 1), A.zero(kDot, kDot), A.GD(kDot, 1, k - 1));
  }
  Elem dk = Elem::path(kDot, kDot, Face::D, k, one);
  Block Sk = Alg::mat(A.G(kCirc, 1, k), k == 1 ? A.one(kCirc, -1) : A.G(kCirc, -1, k - 1), A.zero(kCirc, kCirc),
                      A.zero(kCirc, kCirc));
  Scalar m1(field_, -1);
  return {
      {Pos{1, 1}, F},
      {Pos{1, 2}, Alg::b1(-dk)},
      {Pos{1, 3}, Alg::b1(dk)},
      {Pos{3, 2}, scaled(Sk, m1)},
      {Pos{3, 3}, Sk},
      {Pos{3, 4}, scaled(F, m1)},
  };
}

std::map<Pos, Block> OperatorTable::image(const Elem& z) const {
  std::map<Pos, Block> acc;
  bool dot_src = z.src() == Idem::Dot;
  auto unsupported = [&](const Term& t) {
    std::string m = std::string(kind_name(t.kind)) + (t.kind == Kind::Id ? "" : (dot_src ? "_dot" : "_circle"));
    return DomainError("unsupported-label: G^" + std::to_string(t.gpow) + "*" + m + " in " + z.str());
  };
  for (const auto& t : z.terms()) {
    switch (t.kind) {
      case Kind::Id:
        if (t.gpow == 0) {
          std::map<Pos, Block> id;
          const TypeD& g = grid(z.src());
          for (Pos p : positions(z.src())) {
            const auto& c = cell(z.src(), p);
            Block b{(int)c.size(), (int)c.size(), {}};
            b.m.assign(c.size(), std::vector<Elem>());
            for (size_t r = 0; r < c.size(); ++r)
              for (size_t s = 0; s < c.size(); ++s) {
                Idem ir = g.gens[c[r]].idem, is = g.gens[c[s]].idem;
                b.m[r].push_back(r == s ? Elem::one(ir, Scalar(field_, parity_sign(p))) : Elem(is, ir));
              }
            id.emplace(p, b);
          }
          accumulate(acc, id, t.coeff);
        } else if (t.gpow == 1) {
          // G = SS - D
          accumulate(acc, image(dot_src ? Label::SS_dot : Label::SS_circle), t.coeff);
          accumulate(acc, image(dot_src ? Label::D_dot : Label::D_circle), -t.coeff);
        } else {
          throw unsupported(t);
        }
        break;
      case Kind::S:
        if (t.gpow != 0) throw unsupported(t);
        accumulate(acc, image(dot_src ? Label::S_dot : Label::S_circle), t.coeff);
        break;
      case Kind::D:
        if (t.gpow == 0) {
          accumulate(acc, image(dot_src ? Label::D_dot : Label::D_circle), t.coeff);
        } else if (dot_src) {
          // G^m D = (-1)^m D^{m+1}
          Scalar c = t.gpow % 2 ? -t.coeff : t.coeff;
          accumulate(acc, image_D_dot_power(t.gpow + 1), c);
        } else {
          throw unsupported(t);
        }
        break;
    }
  }
  return acc;
}

void OperatorTable::flip_sign(Label l, Pos p, int t, int s) {
  auto& b = tables_.at(l).at(p);
  b.m.at(t).at(s) = -b.m.at(t).at(s);
}

TypeD cable_object(const Generator& g, const OperatorTable& table) {
  TypeD t = shift(table.grid(g.idem), g.h, g.q);
  for (auto& x : t.gens) x.id = g.id + "@" + x.id;
  return t;
}

TypeD cable(const TypeD& t, const OperatorTable& table) {
  if (!(t.field == table.field())) throw DomainError("operator table built over a different field");
  TypeD r(t.field);
  std::vector<int> base(t.size());
  for (int i = 0; i < t.size(); ++i) {
    base[i] = r.size();
    r = direct_sum(r, cable_object(t.gens[i], table));
  }
  for (const auto& [k, z] : t.diff) {
    Idem si = t.gens[k.first].idem, ti = t.gens[k.second].idem;
    for (const auto& [p, b] : table.image(z)) {
      const auto& src = table.cell(si, p);
      const auto& tgt = table.cell(ti, p);
      if ((int)src.size() != b.cols || (int)tgt.size() != b.rows)
        throw DomainError("table block at " + p.str() + " has the wrong shape");
      for (int row = 0; row < b.rows; ++row)
        for (int s = 0; s < b.cols; ++s) r.add_arrow(base[k.first] + src[s], base[k.second] + tgt[row], b.m[row][s]);
    }
  }
  return r;
}

TypeD cable(const TypeD& t) { return cable(t, OperatorTable::standard(t.field)); }

std::optional<CablingFault> self_check(const OperatorTable& table, int trials, unsigned seed) {
  Field f = table.field();
  for (Idem i : {Idem::Dot, Idem::Circle})
    if (auto v = validate(table.grid(i)))
      return CablingFault{std::string("grid ") + idem_name(i), v->kind + ": " + v->detail};

  struct Case {
    std::string name;
    Elem z;
  };
  auto one = Scalar(f, 1);
  std::vector<Case> fixed = {
      {"S_dot", Elem::S(Idem::Dot, one)},       {"S_circle", Elem::S(Idem::Circle, one)},
      {"D_dot", Elem::D(Idem::Dot, one)},       {"D_circle", Elem::D(Idem::Circle, one)},
      {"SS_dot", Elem::SS(Idem::Dot, one)},     {"SS_circle", Elem::SS(Idem::Circle, one)},
      {"D_dot^2", Elem::path(Idem::Dot, Idem::Dot, Face::D, 2, one)},
      {"D_dot^3", Elem::path(Idem::Dot, Idem::Dot, Face::D, 3, one)},
  };
  std::mt19937 rng(seed);
  std::vector<Case> cases = fixed;
  for (int k = 0; k < trials; ++k) {
    Case c = fixed[rng() % fixed.size()];
    if (c.name.rfind("D_dot^", 0) == 0) {
      uint32_t n = 2 + rng() % 4;
      c = {"D_dot^" + std::to_string(n), Elem::path(Idem::Dot, Idem::Dot, Face::D, n, one)};
    }
    int64_t lim = f.is_rational() ? 7 : std::min<int64_t>(f.p - 1, 1000);
    int64_t v = 1 + rng() % lim;
    c.z = c.z.scaled(Scalar(f, rng() % 2 && f.is_rational() ? -v : v));
    cases.push_back(c);
  }
  for (const auto& c : cases) {
    TypeD t(f);
    int x = t.add_gen("x", c.z.src(), 0, 0);
    int y = t.add_gen("y", c.z.tgt(), -quantum_degree(c.z), 1);
    t.add_arrow(x, y, c.z);
    TypeD cb = cable(t, table);
    if (auto v = validate(cb)) return CablingFault{c.name, v->kind + ": " + v->detail};
  }
  return std::nullopt;
}

}  // namespace bnc
