#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "bnc/acceptance.hpp"
#include "bnc/builtins.hpp"
#include "bnc/cabling.hpp"
#include "bnc/curves.hpp"
#include "bnc/io.hpp"
#include "bnc/pairing.hpp"
#include "bnc/reduction.hpp"

using namespace bnc;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opts {
  std::string field = "fp:2";
  bool text = false;
  std::string input, input2, output, trace, replay;
  bool curve_like = false, reduce = false;
  int iterate = 0;
  std::string over = "kg";
  std::string closure;
  std::string name;
  int n = 0, q = 0, h = 0;
  int jobs = 1;
  bool inject_fault = false;
  std::vector<int> only;
};

Field field_of(const Opts& o) {
  try {
    return Field::parse(o.field);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--field: ") + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

// complex to -o or stdout
void emit_complex(const Opts& o, const TypeD& t) {
  std::string body = o.text ? describe(t) + "\n" : print(t);
  if (o.output.empty()) std::cout << body;
  else write_text(o.output, body);
}

int cmd_validate(const Opts& o) {
  TypeD t = read_file(o.input);
  auto v = validate(t);
  if (o.text) {
    std::cout << (v ? "invalid: " + v->kind + ": " + v->detail : "valid") << "\n";
  } else {
    json j{{"valid", !v}};
    if (v) j["violation"] = {{"kind", v->kind}, {"detail", v->detail}};
    emit(j);
  }
  return v ? 1 : 0;
}

int cmd_reduce(const Opts& o) {
  TypeD t = read_file(o.input);
  ensure_valid(t, "input");
  if (!o.replay.empty()) {
    std::ifstream in(o.replay);
    if (!in) throw DomainError("cannot read " + o.replay);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw DomainError(std::string("json: ") + e.what());
    }
    emit_complex(o, replay(t, trace_from_json(j, t)));
    return 0;
  }
  TypeD out;
  ReductionTrace trace;
  if (o.curve_like) {
    auto r = to_curve_like(t);
    if (!r.report.is_curve_like) std::cerr << "not curve-like (" << r.stop_reason << "): " << r.report.summary() << "\n";
    out = r.t;
    trace = r.trace;
  } else {
    auto r = reduce(t);
    out = r.t;
    trace = r.trace;
  }
  if (!o.trace.empty()) write_text(o.trace, to_json(trace, t.field).dump(2) + "\n");
  emit_complex(o, out);
  return 0;
}

int cmd_cable(const Opts& o) {
  TypeD t = read_file(o.input);
  ensure_valid(t, "input");
  if (o.iterate > 0) {
    auto steps = iterate_cable(t, o.iterate, !o.reduce);
    if (o.text) {
      std::cout << "iter  cabled  reduced  stop        seconds\n";
      for (size_t i = 0; i < steps.size(); ++i)
        std::cout << std::setw(4) << i + 1 << std::setw(8) << steps[i].cabled << std::setw(9) << steps[i].reduced << "  "
                  << std::left << std::setw(10) << steps[i].stop_reason << std::right << std::fixed
                  << std::setprecision(2) << std::setw(9) << steps[i].seconds << "\n";
    } else {
      json it = json::array();
      for (const auto& s : steps)
        it.push_back({{"cabled", s.cabled}, {"reduced", s.reduced}, {"stop", s.stop_reason}});
      emit(json{{"iterations", it}});
    }
    if (!o.output.empty()) write_text(o.output, print(t));
    return 0;
  }
  TypeD c = cable(t);
  ReductionTrace trace;
  if (o.curve_like) {
    auto r = to_curve_like(c);
    c = r.t;
    trace = r.trace;
  } else if (o.reduce) {
    auto r = reduce(c);
    c = r.t;
    trace = r.trace;
  }
  if (!o.trace.empty()) write_text(o.trace, to_json(trace, t.field).dump(2) + "\n");
  emit_complex(o, c);
  return 0;
}

int cmd_pair(const Opts& o) {
  TypeD a = read_file(o.input), b = read_file(o.input2);
  if (o.over == "kg") {
    auto h = homology_over_kG(mor_complex(a, b));
    if (!o.text) {
      emit(to_json(h));
      return 0;
    }
    std::cout << h.str() << "\n";
    std::cout << "   q    h  summand\n";
    for (const auto& [q, hh] : h.free) std::cout << std::setw(4) << q << std::setw(5) << hh << "  k[G]\n";
    for (const auto& t : h.torsion)
      std::cout << std::setw(4) << t.q << std::setw(5) << t.h << "  k[G]/G^" << t.exponent << "\n";
    return 0;
  }
  if (o.over == "b0") {
    ensure_valid(a, "first input");
    ensure_valid(b, "second input");
    auto p = euler_char_B0(a, b, 0);
    auto [re, im] = p.at_minus_one();
    if (o.text) std::cout << "chi = " << p.str() << "\nchi(-1) = " << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i\n";
    else emit(json{{"euler_characteristic", p.str()}, {"at_minus_one", {re, im}}});
    return 0;
  }
  throw UsageError("--over must be kg or b0");
}

int cmd_det(const Opts& o) {
  TypeD t = read_file(o.input);
  std::optional<int> n;
  if (o.closure != "inf") {
    try {
      size_t used = 0;
      n = std::stoi(o.closure, &used);
      if (used != o.closure.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--closure must be an integer or inf");
    }
  }
  auto d = determinant(t, n);
  if (o.text) std::cout << "det = " << d << "\n";
  else emit(json{{"det", d}});
  return 0;
}

int cmd_classify(const Opts& o) {
  TypeD t = read_file(o.input);
  ensure_valid(t, "input");
  auto d = decompose(t);
  json comps = json::array();
  for (const auto& c : d.components)
    comps.push_back({{"compact", c.compact}, {"generators", c.generators}, {"pattern", to_json(c.pattern)}});
  json j{{"components", comps}};
  j["cap_trivial"] = is_cap_trivial(t);
  json forb = json::array();
  for (const auto& hit : check_forbidden_configurations(t)) forb.push_back({{"kind", hit.kind}, {"generators", hit.generators}});
  j["forbidden"] = forb;
  auto arcs = d.arcs();
  if (arcs.size() == 1) {
    j["theta_rational"] = is_theta_rational(t, 0);
    j["rational_up_to_framing"] = is_theta_rational(t, std::nullopt);
    j["geography"] = geography_class(t).str();
    j["leaf_rule"] = leaf_rule_holds(arcs[0]->t);
  }
  if (!o.text) {
    emit(j);
    return 0;
  }
  std::cout << "component  size  pattern\n";
  for (size_t i = 0; i < d.components.size(); ++i) {
    const auto& c = d.components[i];
    std::cout << std::setw(9) << i << std::setw(6) << c.generators.size() << "  " << (c.compact ? "loop " : "arc  ")
              << c.pattern.str() << "\n";
  }
  std::cout << "cap-trivial: " << (j["cap_trivial"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << "forbidden configurations: " << forb.size() << "\n";
  if (j.contains("geography"))
    std::cout << "geography: " << j["geography"].get<std::string>()
              << "\ntheta-rational: " << (j["theta_rational"].get<bool>() ? "yes" : "no") << "\n";
  return 0;
}

int cmd_builtin(const Opts& o) {
  Field f = field_of(o);
  TypeD t = o.name == "compact_C" ? compact_C(f, o.q, o.h) : builtin(f, o.name, o.n);
  emit_complex(o, t);
  return 0;
}

int cmd_render(const Opts& o) {
  TypeD t = read_file(o.input);
  ensure_valid(t, "input");
  std::ostringstream svg;
  render_svg(t, svg);
  if (o.output.empty()) std::cout << svg.str();
  else write_text(o.output, svg.str());
  return 0;
}

// negates the first nonzero entry of the D_circle table
std::unique_ptr<OperatorTable> faulty_table(Field f) {
  auto t = std::make_unique<OperatorTable>(f);
  for (const auto& [pos, block] : t->image(Label::D_circle))
    for (int r = 0; r < block.rows; ++r)
      for (int s = 0; s < block.cols; ++s)
        if (!block.m[r][s].is_zero()) {
          t->flip_sign(Label::D_circle, pos, r, s);
          return t;
        }
  return t;
}

int cmd_selftest(const Opts& o) {
  AcceptanceOptions opt;
  opt.jobs = o.jobs;
  opt.only.insert(o.only.begin(), o.only.end());
  std::vector<std::unique_ptr<OperatorTable>> owned;
  if (o.inject_fault)
    for (Field f : opt.fields) {
      owned.push_back(faulty_table(f));
      opt.tables[f.p] = owned.back().get();
    }
  auto results = run_acceptance(opt);
  if (o.text) {
    for (const auto& r : results) std::cout << format_result(r) << "\n";
  } else {
    json a = json::array();
    for (const auto& r : results)
      a.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"known_failure", r.known_failure}, {"detail", r.detail}});
    emit(json{{"criteria", a}, {"ok", acceptance_ok(results)}});
  }
  return acceptance_ok(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  CLI::App app{"bnc: type D structures over the Bar-Natan algebra and the (2,1)-cabling operator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "coefficient field: q or fp:<p> (default fp:2)");
  app.add_flag("--text", o.text, "aligned text instead of JSON");

  auto* validate_cmd = app.add_subcommand("validate", "check gradings, idempotents and d^2 = 0");
  validate_cmd->add_option("input", o.input)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "cancel isomorphisms, optionally slide arrows to curve-like form");
  reduce_cmd->add_option("input", o.input)->required();
  reduce_cmd->add_flag("--curve-like", o.curve_like);
  reduce_cmd->add_option("-o", o.output);
  reduce_cmd->add_option("--trace", o.trace, "write the reduction trace here");
  reduce_cmd->add_option("--replay", o.replay, "apply a recorded trace instead of reducing");

  auto* cable_cmd = app.add_subcommand("cable", "apply the cabling operator");
  cable_cmd->add_option("input", o.input)->required();
  cable_cmd->add_option("--iterate", o.iterate, "apply N times and report ranks")->check(CLI::PositiveNumber);
  auto* red_flag = cable_cmd->add_flag("--reduce", o.reduce);
  cable_cmd->add_flag("--curve-like", o.curve_like)->excludes(red_flag);
  cable_cmd->add_option("-o", o.output);
  cable_cmd->add_option("--trace", o.trace);

  auto* pair_cmd = app.add_subcommand("pair", "homology of Mor(A, B)");
  pair_cmd->add_option("a", o.input)->required();
  pair_cmd->add_option("b", o.input2)->required();
  pair_cmd->add_option("--over", o.over, "kg (homology over k[G]) or b0 (Euler characteristic)")
      ->check(CLI::IsMember({"kg", "b0"}));

  auto* det_cmd = app.add_subcommand("det", "determinant of a closure");
  det_cmd->add_option("input", o.input)->required();
  det_cmd->add_option("--closure", o.closure, "n or inf")->required();

  auto* classify_cmd = app.add_subcommand("classify", "decompose a curve-like complex");
  classify_cmd->add_option("input", o.input)->required();

  auto* builtin_cmd = app.add_subcommand("builtin", "print a builtin complex");
  builtin_cmd->set_help_flag("--help");
  builtin_cmd->add_option("name", o.name)->required();
  builtin_cmd->add_option("--n", o.n, "twist");
  builtin_cmd->add_option("--q", o.q, "quantum shift (compact_C)");
  builtin_cmd->add_option("--h", o.h, "homological shift (compact_C)");
  builtin_cmd->add_option("-o", o.output);

  auto* render_cmd = app.add_subcommand("render", "schematic SVG of a curve-like complex");
  render_cmd->add_option("input", o.input)->required();
  render_cmd->add_option("-o", o.output);

  auto* selftest_cmd = app.add_subcommand("selftest", "acceptance suite over F_2, F_3 and Q");
  selftest_cmd->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--only", o.only, "criterion ids");
  selftest_cmd->add_flag("--inject-fault", o.inject_fault, "negate one entry of the D_circle table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    field_of(o);
    if (*validate_cmd) return cmd_validate(o);
    if (*reduce_cmd) return cmd_reduce(o);
    if (*cable_cmd) return cmd_cable(o);
    if (*pair_cmd) return cmd_pair(o);
    if (*det_cmd) return cmd_det(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*builtin_cmd) return cmd_builtin(o);
    if (*render_cmd) return cmd_render(o);
    if (*selftest_cmd) return cmd_selftest(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
