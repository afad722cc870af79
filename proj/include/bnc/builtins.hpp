#pragma once

#include <string>

#include "bnc/typed.hpp"

namespace bnc {

// Rd(tau^n of the trivial tangle): a zigzag with |n| circle generators.
TypeD q_tangle(Field f, int n);
TypeD q_infty(Field f);
// The 12-generator compact loop, top-left dot generator at (q, h).
TypeD compact_C(Field f, int q = 0, int h = 0);
TypeD trefoil_31_seifert(Field f);
// Left-handed trefoil quotient tangle twisted n times; n = 0 is the minimal-rank framing.
TypeD trefoil_family(Field f, int n);
TypeD trefoil_left_minimal(Field f);
// trefoil_family with a homogeneous chain of `chain` circles instead of 4; elbow dot at (0,0)
TypeD elbow_with_chain(Field f, int n, int chain);

// Small complexes written out by hand, e.g.
//   "a:dot b:circle c:circle  a>b:S b>c:-D  @a -4 -2"
// Labels: optional "-" or "c*" prefix, then 1, D, D^n, S, S^n, SS or SS^m.
// Gradings are propagated from one @anchor per connected component.
TypeD sketch(Field f, const std::string& text);

// Only rational builtins have a mirror here: q_tangle(n) -> q_tangle(-n).
TypeD mirror_rational(Field f, const std::string& name, int n = 0);

// name in {q_tangle, q_infty, compact_C, trefoil_31, trefoil_31_seifert,
// trefoil_left_minimal, trefoil_family}; n is the twist (or q for compact_C), h the second shift.
TypeD builtin(Field f, const std::string& name, int n = 0, int h = 0);

}  // namespace bnc
