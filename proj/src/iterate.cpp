#include <chrono>

#include "bnc/cabling.hpp"
#include "bnc/reduction.hpp"

namespace bnc {

std::vector<IterationStep> iterate_cable(TypeD& t, int n, bool curve_like) {
  std::vector<IterationStep> steps;
  for (int i = 0; i < n; ++i) {
    auto start = std::chrono::steady_clock::now();
    IterationStep s;
    TypeD c = cable(t);
    s.cabled = c.size();
    if (curve_like) {
      auto r = to_curve_like(c);
      s.stop_reason = r.stop_reason;
      t = std::move(r.t);
    } else {
      t = reduce(c).t;
      s.stop_reason = "reduced";
    }
    s.reduced = t.size();
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    steps.push_back(s);
  }
  return steps;
}

}  // namespace bnc
