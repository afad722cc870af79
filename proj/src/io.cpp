#include "bnc/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace bnc {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("json: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("json: bad field '") + key + "': " + e.what());
  }
}

}  // namespace

json field_to_json(Field f) {
  if (f.is_rational()) return json{{"type", "Q"}};
  return json{{"type", "Fp"}, {"p", f.p}};
}

Field field_from_json(const json& j) {
  auto type = get<std::string>(j, "type");
  if (type == "Q") return Field::rationals();
  if (type == "Fp") return Field::prime(get<int64_t>(j, "p"));
  throw DomainError("json: unknown field type " + type);
}

json elem_to_json(const Elem& e) {
  json a = json::array();
  for (const auto& t : e.terms()) a.push_back({{"kind", kind_name(t.kind)}, {"gpow", t.gpow}, {"coeff", t.coeff.str()}});
  return a;
}

Elem elem_from_json(const json& j, Field f, Idem src, Idem tgt) {
  if (!j.is_array()) throw DomainError("json: label must be an array of terms");
  Elem e(src, tgt);
  for (const auto& t : j) {
    auto gpow = get<int64_t>(t, "gpow");
    if (gpow < 0) throw DomainError("json: negative gpow");
    e.add(parse_kind(get<std::string>(t, "kind")), static_cast<uint32_t>(gpow),
          Scalar::parse(f, get<std::string>(t, "coeff")));
  }
  return e;
}

json to_json(const TypeD& t) {
  json gens = json::array();
  for (const auto& g : t.gens) gens.push_back({{"id", g.id}, {"idem", idem_name(g.idem)}, {"q", g.q}, {"h", g.h}});
  json diff = json::array();
  for (const auto& [k, e] : t.diff)
    diff.push_back({{"from", t.gens[k.first].id}, {"to", t.gens[k.second].id}, {"label", elem_to_json(e)}});
  return json{{"field", field_to_json(t.field)}, {"generators", gens}, {"differential", diff}};
}

TypeD typed_from_json(const json& j) {
  TypeD t(field_from_json(get<json>(j, "field")));
  std::map<std::string, int> index;
  for (const auto& g : get<json>(j, "generators")) {
    auto id = get<std::string>(g, "id");
    if (index.count(id)) throw DomainError("json: duplicate generator id " + id);
    index[id] = t.add_gen(id, parse_idem(get<std::string>(g, "idem")), get<int>(g, "q"), get<int>(g, "h"));
  }
  auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw DomainError("json: arrow refers to unknown generator " + id);
    return it->second;
  };
  for (const auto& a : get<json>(j, "differential")) {
    int from = lookup(get<std::string>(a, "from"));
    int to = lookup(get<std::string>(a, "to"));
    if (t.diff.count({from, to})) throw DomainError("json: repeated arrow " + t.gens[from].id + " -> " + t.gens[to].id);
    Elem e = elem_from_json(get<json>(a, "label"), t.field, t.gens[from].idem, t.gens[to].idem);
    if (!e.is_zero()) t.diff.emplace(std::make_pair(from, to), e);
  }
  return t;
}

std::string print(const TypeD& t) { return to_json(t).dump(2) + "\n"; }

TypeD parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("json: ") + e.what());
  }
  return typed_from_json(j);
}

TypeD read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

json to_json(const ReductionTrace& tr, Field f) {
  json steps = json::array();
  for (const auto& s : tr.steps) {
    if (s.kind == ReductionStep::Kind::Cancel) {
      steps.push_back({{"kind", "cancel"}, {"from", s.from}, {"to", s.to}});
      continue;
    }
    json eta = json::array();
    for (const auto& e : s.eta) eta.push_back({{"from", e.from}, {"to", e.to}, {"label", elem_to_json(e.label)}});
    steps.push_back({{"kind", "cleanup"}, {"eta", eta}});
  }
  return json{{"field", field_to_json(f)}, {"ids_before", tr.ids_before}, {"ids_after", tr.ids_after}, {"steps", steps}};
}

ReductionTrace trace_from_json(const json& j, const TypeD& input) {
  ReductionTrace tr;
  tr.ids_before = get<std::vector<std::string>>(j, "ids_before");
  tr.ids_after = get<std::vector<std::string>>(j, "ids_after");
  auto idem_of = [&](const std::string& id) {
    int i = input.index_of(id);
    if (i < 0) throw DomainError("trace refers to unknown generator " + id);
    return input.gens[i].idem;
  };
  for (const auto& s : get<json>(j, "steps")) {
    ReductionStep step;
    auto kind = get<std::string>(s, "kind");
    if (kind == "cancel") {
      step.kind = ReductionStep::Kind::Cancel;
      step.from = get<std::string>(s, "from");
      step.to = get<std::string>(s, "to");
    } else if (kind == "cleanup") {
      step.kind = ReductionStep::Kind::Cleanup;
      for (const auto& e : get<json>(s, "eta")) {
        auto from = get<std::string>(e, "from");
        auto to = get<std::string>(e, "to");
        step.eta.push_back({from, to, elem_from_json(get<json>(e, "label"), input.field, idem_of(from), idem_of(to))});
      }
    } else {
      throw DomainError("trace: unknown step kind " + kind);
    }
    tr.steps.push_back(std::move(step));
  }
  return tr;
}

json to_json(const GradedModule& m) {
  json free = json::array();
  for (const auto& [q, h] : m.free) free.push_back({{"q", q}, {"h", h}});
  json tors = json::array();
  for (const auto& t : m.torsion) tors.push_back({{"q", t.q}, {"h", t.h}, {"exponent", t.exponent}});
  return json{{"module", m.str()}, {"free_rank", m.free_rank()}, {"free", free}, {"torsion", tors}};
}

json to_json(const Pattern& p) {
  static const char* names[] = {"Rational", "RationalInfinity", "CompactC", "TrefoilArc", "Other"};
  json j{{"kind", names[static_cast<int>(p.kind)]}, {"text", p.str()}};
  if (p.kind == Pattern::Kind::Rational || p.kind == Pattern::Kind::TrefoilArc) j["n"] = p.n;
  if (p.kind != Pattern::Kind::Other) {
    j["dq"] = p.dq;
    j["dh"] = p.dh;
  }
  if (p.reversed) j["reversed"] = true;
  if (p.sign_twisted) j["sign_twisted"] = true;
  return j;
}

}  // namespace bnc
