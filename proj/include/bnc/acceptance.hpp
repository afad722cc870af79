#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bnc/cabling.hpp"

namespace bnc {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  bool known_failure = false;  // fails for a documented reason; does not fail the run
  std::string detail;
};

struct AcceptanceOptions {
  std::vector<Field> fields{Field::prime(2), Field::prime(3), Field::rationals()};
  std::set<int> only;  // empty: all criteria
  int jobs = 1;
  // replaces the standard cabling table for the given field (fault injection)
  std::map<uint32_t, const OperatorTable*> tables;
};

// Frozen values found by the scans in criteria 10 and 14.
inline constexpr int kSlopeOffset = 2;
inline const std::vector<int> kIteratedRanks{45, 177, 705, 2817};

int criterion_count();
std::string criterion_title(int id);
bool is_known_failure(int id);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// one line per criterion
std::string format_result(const CriterionResult& r);
// true when every criterion passed or is a known failure
bool acceptance_ok(const std::vector<CriterionResult>& results);

// Builtins with det(T(0)) = 0 that are cap-trivial, by name.
std::vector<std::pair<std::string, TypeD>> seifert_framed_builtins(Field f);

}  // namespace bnc
