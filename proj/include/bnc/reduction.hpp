#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bnc/typed.hpp"

namespace bnc {

struct CurveLikeReport {
  bool is_curve_like = true;
  std::vector<std::string> offending_generators;                   // undirected degree > 2
  std::vector<std::pair<std::string, std::string>> offending_labels;  // not a single path
  std::string summary() const;
};

CurveLikeReport curve_like_report(const TypeD& t);

// sparse B-matrix, entry (u,v) maps generator u to generator v
using Eta = std::map<std::pair<int, int>, Elem>;

struct EtaEntry {
  std::string from, to;
  Elem label;
};

struct ReductionStep {
  enum class Kind { Cancel, Cleanup } kind = Kind::Cancel;
  std::string from, to;        // cancelled pair
  std::vector<EtaEntry> eta;   // clean-up matrix
};

struct ReductionTrace {
  std::vector<std::string> ids_before, ids_after;
  std::vector<ReductionStep> steps;
  void append(const ReductionTrace& later);
};

struct Reduced {
  TypeD t;
  ReductionTrace trace;
};

Reduced cancel_one(const TypeD& t, int i, int j);
Reduced cleanup(const TypeD& t, const Eta& eta);
Reduced reduce(const TypeD& t);

// Applies the recorded steps to `input`; throws if a step no longer applies.
TypeD replay(const TypeD& input, const ReductionTrace& trace);

struct CurveLikeResult {
  TypeD t;
  CurveLikeReport report;
  ReductionTrace trace;
  int steps = 0;
  std::string stop_reason;  // "curve-like", "budget", "cycle", "stuck"
};

int default_step_budget();  // BNC_STEP_BUDGET or 10000
CurveLikeResult to_curve_like(const TypeD& t, int budget = -1);

}  // namespace bnc
