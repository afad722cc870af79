#pragma once

#include <string>

#include <json.hpp>

#include "bnc/curves.hpp"
#include "bnc/pairing.hpp"
#include "bnc/reduction.hpp"
#include "bnc/typed.hpp"

namespace bnc {

using json = nlohmann::ordered_json;

json field_to_json(Field f);
Field field_from_json(const json& j);

json elem_to_json(const Elem& e);
// idempotents come from the endpoints, so they are passed in
Elem elem_from_json(const json& j, Field f, Idem src, Idem tgt);

json to_json(const TypeD& t);
TypeD typed_from_json(const json& j);  // throws DomainError on malformed input

std::string print(const TypeD& t);
TypeD parse(const std::string& text);
TypeD read_file(const std::string& path);

json to_json(const ReductionTrace& tr, Field f);
// generator idempotents are needed to type the clean-up labels
ReductionTrace trace_from_json(const json& j, const TypeD& input);

json to_json(const GradedModule& m);
json to_json(const Pattern& p);

}  // namespace bnc
