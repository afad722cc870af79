#include "bnc/elbow.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "bnc/cabling.hpp"
#include "bnc/pairing.hpp"
#include "bnc/reduction.hpp"

namespace bnc {

namespace {

std::map<std::tuple<Idem, int, int>, int> graded_counts(const TypeD& t) {
  std::map<std::tuple<Idem, int, int>, int> c;
  for (const auto& g : t.gens) c[{g.idem, g.q, g.h}]++;
  return c;
}

}  // namespace

ElbowCheck check_elbow_splitting(const TypeD& t) {
  if (!is_cap_trivial(t)) throw DomainError("check_elbow_splitting: input is not cap-trivial");
  TypeD pulled = restrict_D_dot_zero(t);
  ElbowCheck out;
  auto a = to_curve_like(cable(t));
  auto b = to_curve_like(cable(pulled));
  std::ostringstream os;
  if (!a.report.is_curve_like || !b.report.is_curve_like) {
    os << "indeterminate: cable " << a.stop_reason << ", pulled-tight cable " << b.stop_reason;
    out.report = os.str();
    return out;
  }
  bool counts = graded_counts(a.t) == graded_counts(b.t);
  auto pa = pairing_panel(a.t);
  auto pb = pairing_panel(b.t);
  auto names = pairing_panel_names();
  bool panels = true;
  for (size_t i = 0; i < pa.size(); ++i)
    if (!pa[i].same_type(pb[i])) {
      panels = false;
      os << names[i] << ": " << pa[i].str() << " vs " << pb[i].str() << "; ";
    }
  os << "ranks " << a.t.size() << "/" << b.t.size() << (counts ? ", graded counts agree" : ", graded counts differ")
     << (panels ? ", panels agree" : ", panels differ");
  out.agree = counts && panels;
  out.report = os.str();
  return out;
}

}  // namespace bnc
