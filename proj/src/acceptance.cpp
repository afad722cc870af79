#include "bnc/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "bnc/builtins.hpp"
#include "bnc/curves.hpp"
#include "bnc/elbow.hpp"
#include "bnc/io.hpp"
#include "bnc/pairing.hpp"
#include "bnc/reduction.hpp"

namespace bnc {

namespace {

using Grading = std::pair<int, int>;  // (q, h)

struct Ctx {
  Field f;
  const OperatorTable* table;
  std::ostringstream out;  // detail
  bool ok = true;

  TypeD cab(const TypeD& t) const { return cable(t, *table); }

  TypeD curve(const TypeD& t) {
    auto r = to_curve_like(cab(t));
    if (r.stop_reason != "curve-like") fail("to_curve_like stopped: " + r.stop_reason);
    return r.t;
  }

  void fail(const std::string& why) {
    if (!ok) out << "; ";
    else out.str("");
    ok = false;
    out << why;
  }
  void check(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
  void note(const std::string& s) {
    if (ok) out << (out.tellp() > 0 ? "; " : "") << s;
  }
};

std::string str(const std::vector<Grading>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << "(" << v[i].first << "," << v[i].second << ")";
  os << "]";
  return os.str();
}

// Gradings of the anchor of every compact C; other loops are reported.
std::vector<Grading> loop_anchors(const CurveDecomposition& d, Ctx& c) {
  std::vector<Grading> r;
  for (const auto* l : d.loops()) {
    if (l->pattern.kind != Pattern::Kind::CompactC) c.fail("unexpected loop " + l->pattern.str());
    r.push_back({l->pattern.dq, l->pattern.dh});
  }
  std::sort(r.begin(), r.end());
  return r;
}

const Component* single_arc(const CurveDecomposition& d, Ctx& c) {
  auto arcs = d.arcs();
  if (arcs.size() != 1) {
    c.fail("expected one arc, found " + std::to_string(arcs.size()));
    return nullptr;
  }
  return arcs[0];
}

// Same labelled graph with identical gradings.
bool exact_match(const TypeD& expected, const TypeD& got, bool up_to_sign) {
  if (expected.size() != got.size()) return false;
  auto m = match_up_to_shift(expected, got, up_to_sign);
  if (!m) return false;
  const auto& a = expected.gens[0];
  const auto& b = got.gens[(*m)[0]];
  return a.q == b.q && a.h == b.h;
}

// top dot of an elbow complex: the target of its D_dot arrow
int top_dot(const TypeD& t) {
  for (const auto& [k, e] : t.diff)
    if (e.src() == Idem::Dot && e.tgt() == Idem::Dot) return k.second;
  throw DomainError("no D_dot arrow");
}

Elem random_elem(Field f, Idem s, Idem t, std::mt19937& rng) {
  Elem e(s, t);
  int n = rng() % 4;
  for (int i = 0; i < n; ++i) {
    Kind k = s != t ? Kind::S : (rng() % 2 ? Kind::Id : Kind::D);
    int64_t v = static_cast<int64_t>(rng() % 7) - 3;
    if (v == 0) v = 1;
    Scalar c = f.is_rational() && rng() % 3 == 0 ? Scalar(f, v, 2) : Scalar(f, v);
    e.add(k, rng() % 4, c);
  }
  return e;
}

// ---------------------------------------------------------------------------

void c1(Ctx& c) {
  TypeD r = reduce(c.cab(q_tangle(c.f, 0))).t;
  TypeD want = sketch(c.f, "a:dot b:circle c:circle a>b:S b>c:D @a -4 -2");
  c.check(exact_match(want, r, false), "reduce(cable(dot)) = " + describe(r));
  c.note("arc ^-4dot_-2 -S-> ^-3o_-1 -D-> ^-1o_0");
}

void c2(Ctx& c) {
  TypeD o(c.f);
  o.add_gen("x", Idem::Circle, 0, 0);
  TypeD raw = c.cab(o);
  TypeD r = reduce(raw).t;
  // after cancellation, before the clean-up along the diagonal
  TypeD mid = sketch(c.f,
                     "a:dot b:circle c:circle x:circle y:circle z:dot "
                     "a>b:S b>x:-D b>c:D c>y:D x>y:D y>z:S @a -3 -2");
  TypeD want = sketch(c.f,
                      "a:dot b:circle c:circle x:circle y:circle z:dot "
                      "a>b:S b>c:-D x>y:D y>z:S @a -3 -2 @x 0 0");
  c.check(r.size() == 6, std::to_string(r.size()) + " generators (displayed complex has 6)");
  c.check(exact_match(mid, r, false), "reduce(cable(circle)) = " + describe(r));
  TypeD cl = to_curve_like(raw).t;
  c.check(exact_match(want, cl, true), "after clean-up: " + describe(cl));
  c.note("6 generators; reduce gives the displayed pre-clean-up complex, clean-up gives "
         "^-3dot_-2 -S-> o -(-D)-> o and ^0o_0 -D-> o -S-> dot");
}

std::vector<Grading> unknot_cable_loops(int k) {
  std::vector<Grading> r;
  if (k > 0) {
    int count = k % 2 == 0 ? k / 2 : (k - 1) / 2;
    for (int i = 0; i < count; ++i) r.push_back({-2 * k - 4 + 4 * i, -k - 2 + 2 * i});
  } else {
    int count = k % 2 != 0 ? (-k - 1) / 2 : (-k - 2) / 2;
    for (int j = 0; j < count; ++j) r.push_back({-2 * k - 8 - 4 * j, -k - 5 - 2 * j});
  }
  std::sort(r.begin(), r.end());
  return r;
}

std::string unknot_cable_arc(int k) {
  if (k > 0 && k % 2 == 0) return "a:dot b:circle c:circle a>b:S b>c:D @a -4 -2";
  if (k > 0)
    return "e:dot t:dot u:circle v:circle c1:circle c2:circle c3:circle c4:circle z:dot "
           "e>t:D t>u:S u>v:D e>c1:S c1>c2:D c2>c3:SS c3>c4:D c4>z:S @e -6 -3";
  if (k % 2 != 0) return "a:circle b:circle c:dot a>b:D b>c:S @a 1 0";
  return "a:circle b:circle t:dot z:dot s:dot c1:circle c2:circle c3:circle c4:circle "
         "a>b:D b>t:S t>z:D s>c1:S c1>c2:D c2>c3:SS c3>c4:D c4>z:S @a 1 0";
}

void c3(Ctx& c) {
  for (int k : {1, 2, 3, 4, 5, 6, -1, -2, -3, -4, -5, -6}) {
    TypeD out = c.curve(q_tangle(c.f, k));
    auto d = decompose(out);
    auto loops = loop_anchors(d, c);
    auto want = unknot_cable_loops(k);
    c.check(loops == want, "k=" + std::to_string(k) + ": C anchors " + str(loops) + ", expected " + str(want));
    if (const auto* arc = single_arc(d, c))
      c.check(exact_match(sketch(c.f, unknot_cable_arc(k)), arc->t, true),
              "k=" + std::to_string(k) + ": arc " + arc->pattern.str());
  }
  c.note("k=1..6 and -1..-6 match, e.g. k=2: ^-8C_-4 + ^-4dot_-2 -S-> o -D-> o");
}

void c4(Ctx& c) {
  for (int m : {2, 4, 6, 8}) {
    TypeD t = elbow_with_chain(c.f, 0, m);
    c.check(is_cap_trivial(t), "ambient complex with chain " + std::to_string(m) + " is not cap-trivial");
    auto d = decompose(c.curve(t));
    auto loops = loop_anchors(d, c);
    std::vector<Grading> want;
    for (int i = 1; i <= m / 2; ++i) want.push_back({4 * i - 8, 2 * i - 4});
    c.check(loops == want, "chain " + std::to_string(m) + ": C anchors " + str(loops) + ", expected " + str(want));
  }
  c.note("chain from ^0dot_0 of length k gives k/2 C's at ^{4i-8}C_{2i-4}, i=1..k/2");
}

void c5(Ctx& c) {
  for (int n : {-3, -2, -1, 1, 2, 3}) {
    TypeD t = trefoil_family(c.f, n);
    const auto& top = t.gens[top_dot(t)];
    TypeD arm = q_tangle(c.f, n);
    int dot = 0;
    while (arm.gens[dot].idem != Idem::Dot) ++dot;
    arm = shift(arm, top.h - arm.gens[dot].h, top.q - arm.gens[dot].q);
    auto unknot = decompose(c.curve(arm));
    auto d = decompose(c.curve(t));

    auto want = loop_anchors(unknot, c);
    want.push_back({-4, -2});
    want.push_back({0, 0});
    std::sort(want.begin(), want.end());
    auto got = loop_anchors(d, c);
    std::string tag = "n=" + std::to_string(n) + ": ";
    c.check(got == want, tag + "C anchors " + str(got) + ", expected " + str(want));
    const auto* a = single_arc(d, c);
    const auto* b = single_arc(unknot, c);
    if (a && b) c.check(exact_match(b->t, a->t, true), tag + "arc " + a->pattern.str() + " vs unknot part " + b->pattern.str());
  }
  c.note("C(-4,-2) + C(0,0) + cable of the n-framed arm for n = +-1..3");
}

void c6(Ctx& c) {
  std::vector<std::pair<std::string, TypeD>> cases{{"trefoil_31_seifert", trefoil_31_seifert(c.f)}};
  for (int n : {-3, -2, -1, 1, 2, 3}) cases.push_back({"trefoil_family(" + std::to_string(n) + ")", trefoil_family(c.f, n)});
  for (const auto& [name, t] : cases) {
    auto r = check_elbow_splitting(t);
    c.check(r.agree.value_or(false), name + ": " + r.report);
  }
  c.note("splitting holds for trefoil_31_seifert and trefoil_family(n), n = +-1..3");
}

void c7(Ctx& c) {
  auto h = homology_over_kG(mor_complex(q_tangle(c.f, 0), trefoil_31_seifert(c.f)));
  int length = 0;
  for (const auto& t : h.torsion) length += t.exponent;
  c.check(h.free_rank() == 2 && length == 4, "H = " + h.str());
  c.note("H = " + h.str() + " (free rank 2, torsion of dimension 4)");
}

void c8(Ctx& c) {
  std::vector<std::pair<std::string, TypeD>> cases{{"dot", q_tangle(c.f, 0)}, {"trefoil_31_seifert", trefoil_31_seifert(c.f)}};
  for (int n = -3; n <= 3; ++n) cases.push_back({"trefoil_family(" + std::to_string(n) + ")", trefoil_family(c.f, n)});
  int checked = 0;
  for (const auto& [name, t] : cases) {
    c.check(is_cap_trivial(t), name + " is not cap-trivial");
    c.check(is_cap_trivial(c.curve(t)), "cable of " + name + " is not cap-trivial");
    checked += 2;
  }
  c.check(!is_cap_trivial(compact_C(c.f)), "compact_C reported cap-trivial");
  c.note(std::to_string(checked) + " complexes cap-trivial, compact_C not");
}

void c9(Ctx& c) {
  TypeD t = trefoil_31_seifert(c.f);
  auto d0 = determinant(t, 0), d1 = determinant(t, 1), dinf = determinant(t, std::nullopt);
  c.check(d0 == 0 && d1 == 1 && dinf == 1,
          "det(0)=" + std::to_string(d0) + " det(1)=" + std::to_string(d1) + " det(inf)=" + std::to_string(dinf));
  c.note("det(0)=0 det(1)=1 det(inf)=1");
}

void c10(Ctx& c) {
  auto sf = seifert_framed_builtins(c.f);
  std::set<int> common;
  for (int n = -4; n <= 4; ++n) common.insert(n);
  std::ostringstream names;
  for (const auto& [name, t] : sf) {
    TypeD r = reduce(c.cab(t)).t;
    std::set<int> zeros;
    for (int n = -4; n <= 4; ++n)
      if (determinant(r, n) == 0) zeros.insert(n);
    c.check(zeros.size() == 1, name + ": " + std::to_string(zeros.size()) + " zeros of det(cable(T), n)");
    std::set<int> both;
    std::set_intersection(common.begin(), common.end(), zeros.begin(), zeros.end(), std::inserter(both, both.end()));
    common = both;
    names << (names.tellp() > 0 ? ", " : "") << name;
  }
  c.check(sf.size() >= 2, "fewer than two Seifert-framed builtins");
  c.check(common.size() == 1, "no unique common zero");
  if (common.size() == 1)
    c.check(*common.begin() == kSlopeOffset, "slope offset " + std::to_string(*common.begin()) + ", golden " +
                                                 std::to_string(kSlopeOffset));
  c.note("c = " + std::to_string(kSlopeOffset) + " for " + names.str());
}

void c11(Ctx& c) {
  std::vector<std::pair<std::string, TypeD>> cases;
  for (int k = -6; k <= 6; ++k)
    if (k) cases.push_back({"unknot k=" + std::to_string(k), q_tangle(c.f, k)});
  for (int n = -3; n <= 3; ++n)
    if (n) cases.push_back({"trefoil n=" + std::to_string(n), trefoil_family(c.f, n)});
  int q0 = 0, tref = 0;
  for (const auto& [name, t] : cases) {
    auto g = geography_class(c.curve(t));
    c.check(g.kind != Geography::Kind::Other, name + ": " + g.str());
    (g.kind == Geography::Kind::Q0Arc ? q0 : tref)++;
  }
  c.note(std::to_string(q0) + " Q0Arc, " + std::to_string(tref) + " TrefoilArc, none Other");
}

void c12(Ctx& c) {
  for (const auto& [name, t] : seifert_framed_builtins(c.f)) {
    TypeD y = t;
    int found = 0;
    std::string arc;
    for (int j = 1; j <= 2 && !found; ++j) {
      y = c.curve(y);
      if (is_theta_rational(y, std::nullopt)) found = j;
      auto d = decompose(y);
      if (auto arcs = d.arcs(); arcs.size() == 1) arc = arcs[0]->pattern.str();
    }
    c.check(found > 0, name + ": not rational after two cablings (arc " + arc + ")");
    if (found) c.note(name + " rational after " + std::to_string(found));
  }
}

void c13(Ctx& c) {
  if (auto fault = self_check(*c.table, 20)) c.fail("d^2 in cabling: " + fault->label + ": " + fault->detail);

  std::vector<TypeD> inputs{q_tangle(c.f, 0), q_tangle(c.f, 2), q_tangle(c.f, -3), q_infty(c.f),
                            compact_C(c.f), trefoil_31_seifert(c.f), trefoil_family(c.f, 1)};
  for (const auto& t : inputs) {
    const TypeD raw = c.cab(t);
    const TypeD red = reduce(raw).t;
    const auto cl = to_curve_like(raw);
    for (const TypeD* x : {&t, &raw, &red, &cl.t})
      if (auto v = validate(*x)) c.fail(v->kind + ": " + v->detail);
    if (!c.ok) return;
    auto p0 = pairing_panel(raw), p1 = pairing_panel(red), p2 = pairing_panel(cl.t);
    c.check(p0 == p1 && p1 == p2, "pairing panel changed under reduction of cable(" + describe(t) + ")");
    for (const TypeD* x : {&t, &raw, &cl.t}) c.check(parse(print(*x)) == *x, "json round trip");
  }

  std::mt19937 rng(12345 + c.f.p);
  int triples = 10000;
  for (int i = 0; i < triples; ++i) {
    Idem w = Idem(rng() % 2), x = Idem(rng() % 2), y = Idem(rng() % 2), z = Idem(rng() % 2);
    Elem a = random_elem(c.f, w, x, rng), b = random_elem(c.f, x, y, rng), d = random_elem(c.f, y, z, rng);
    // path order: a first, then b, then d
    if (!(multiply(multiply(d, b), a) == multiply(d, multiply(b, a)))) {
      c.fail("associativity fails for " + a.str() + ", " + b.str() + ", " + d.str());
      break;
    }
  }
  c.note("d^2, homogeneity, panel invariance, " + std::to_string(triples) + " associativity triples, json round trip");
}

void c14(Ctx& c) {
  TypeD t = trefoil_31_seifert(c.f);
  auto start = std::chrono::steady_clock::now();
  auto steps = iterate_cable(t, 4, true);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<int> ranks;
  for (const auto& s : steps) {
    ranks.push_back(s.reduced);
    c.check(s.stop_reason == "curve-like", "iteration stopped: " + s.stop_reason);
  }
  std::ostringstream os;
  for (size_t i = 0; i < ranks.size(); ++i) os << (i ? " " : "") << ranks[i];
  c.check(std::is_sorted(ranks.begin(), ranks.end(), std::less_equal<int>()) &&
              std::adjacent_find(ranks.begin(), ranks.end()) == ranks.end(),
          "ranks not strictly increasing: " + os.str());
  c.check(ranks == kIteratedRanks, "ranks " + os.str() + " differ from the frozen goldens");
  c.check(secs < 600, "took " + std::to_string(secs) + " s");
  std::ostringstream t_s;
  t_s.precision(1);
  t_s << std::fixed << secs;
  c.note("ranks " + os.str() + " in " + t_s.str() + " s");
}

struct Criterion {
  const char* title;
  void (*run)(Ctx&);
  bool all_fields;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"worked example 1: cable of a dot", c1, true},
      {"worked example 2: cable of a circle", c2, true},
      {"unknot cable closed forms", c3, true},
      {"homogeneous chain law", c4, true},
      {"trefoil family", c5, true},
      {"elbow splitting", c6, true},
      {"pairing Q_0 with the trefoil", c7, true},
      {"cap-triviality", c8, true},
      {"determinants", c9, true},
      {"framing offset of cable", c10, true},
      {"geography", c11, true},
      {"theta-rationality after at most two cablings", c12, true},
      {"property suite", c13, true},
      {"rank growth under iteration", c14, false},
  };
  return list;
}

}  // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

std::string criterion_title(int id) { return criteria().at(id - 1).title; }

bool is_known_failure(int id) { return id == 12; }

std::vector<std::pair<std::string, TypeD>> seifert_framed_builtins(Field f) {
  std::vector<std::pair<std::string, TypeD>> cands{{"dot", q_tangle(f, 0)}, {"trefoil_31_seifert", trefoil_31_seifert(f)}};
  for (int n = -6; n <= 6; ++n) cands.push_back({"trefoil_family(" + std::to_string(n) + ")", trefoil_family(f, n)});
  std::vector<std::pair<std::string, TypeD>> out;
  for (auto& [name, t] : cands)
    if (determinant(t, 0) == 0 && is_cap_trivial(t)) out.push_back({name, std::move(t)});
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  struct Task {
    int id;
    Field f;
    bool ok = false;
    std::string detail;
  };
  std::vector<Task> tasks;
  for (int id = 1; id <= criterion_count(); ++id) {
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    if (criteria()[id - 1].all_fields) {
      for (Field f : opt.fields) tasks.push_back({id, f, false, {}});
    } else {
      tasks.push_back({id, opt.fields.front(), false, {}});
    }
  }

  auto work = [&](Task& task) {
    auto it = opt.tables.find(task.f.p);
    Ctx c{task.f, it != opt.tables.end() ? it->second : &OperatorTable::standard(task.f), {}, true};
    try {
      criteria()[task.id - 1].run(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    task.ok = c.ok;
    task.detail = c.out.str();
  };
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < tasks.size();) work(tasks[i]);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, opt.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<CriterionResult> results;
  for (const auto& task : tasks) {
    if (results.empty() || results.back().id != task.id) {
      CriterionResult r;
      r.id = task.id;
      r.title = criterion_title(task.id);
      r.pass = true;
      r.known_failure = is_known_failure(task.id);
      results.push_back(r);
    }
    auto& r = results.back();
    r.pass = r.pass && task.ok;
    r.detail += (r.detail.empty() ? "" : " | ") + task.f.name() + ": " + task.detail;
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : (r.known_failure ? "FAIL (known)" : "FAIL")) << "  " << r.id << ". " << r.title << "  -- "
     << r.detail;
  return os.str();
}

bool acceptance_ok(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass && !r.known_failure) return false;
  return true;
}

}  // namespace bnc
