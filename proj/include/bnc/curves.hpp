#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bnc/typed.hpp"

namespace bnc {

// Reverses every arrow, keeping its path label; gradings are negated so the
// result stays homogeneous. This is how mirrored arc patterns are generated.
TypeD reverse_arrows(const TypeD& t);

// Isomorphism of labelled graded graphs up to an overall (q, h) shift and a
// rescaling of generators. Returns the image in t of each pattern generator.
// With up_to_sign, labels only need to agree up to sign, so a loop may carry
// monodromy -1 relative to the pattern; *sign_twisted reports whether it does.
std::optional<std::vector<int>> match_up_to_shift(const TypeD& pattern, const TypeD& t, bool up_to_sign = false,
                                                  bool* sign_twisted = nullptr);

struct Pattern {
  enum class Kind { Rational, RationalInfinity, CompactC, TrefoilArc, Other };
  Kind kind = Kind::Other;
  int n = 0;              // Rational: q_tangle(n); TrefoilArc: trefoil_family(n)
  bool reversed = false;  // TrefoilArc matched with all arrows reversed
  bool sign_twisted = false;  // a loop whose label signs differ from the pattern's
  int dq = 0, dh = 0;     // shift relative to the builtin at its default grading
  std::string text;       // Other: canonical description
  std::string str() const;
};

struct Component {
  bool compact = false;
  std::vector<std::string> generators;
  TypeD t;
  Pattern pattern;
};

struct CurveDecomposition {
  std::vector<Component> components;
  std::vector<const Component*> arcs() const;
  std::vector<const Component*> loops() const;
};

// Throws DomainError when t is not curve-like.
CurveDecomposition decompose(const TypeD& t);
Pattern classify_component(const TypeD& component);

struct ForbiddenHit {
  std::string kind;
  std::vector<std::string> generators;
};

// Checks the non-compact components for forbidden labels and circle-elbows.
std::vector<ForbiddenHit> check_forbidden_configurations(const TypeD& t);

struct Geography {
  enum class Kind { Q0Arc, TrefoilArc, Other };
  Kind kind = Kind::Other;
  std::string description;
  std::string str() const;
};

Geography geography_class(const TypeD& t);

// The unique non-compact component is Rational(framing) up to shift; with no
// framing, any Rational(n) counts.
bool is_theta_rational(const TypeD& t, std::optional<int> framing = 0);

// A non-compact component is a single dot, or one leaf hangs off a D edge and
// the other leaf is a dot.
bool leaf_rule_holds(const TypeD& arc);

void render_svg(const TypeD& t, std::ostream& out);

}  // namespace bnc
