#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bnc/typed.hpp"

namespace bnc {

// Grid position (row, column), 1-based as in the 3x4 layout.
struct Pos {
  int r, c;
  auto operator<=>(const Pos&) const = default;
  std::string str() const;
};

// Dense block between the summands at one grid position; m[t][s] maps
// source summand s to target summand t.
struct Block {
  int rows = 0, cols = 0;
  std::vector<std::vector<Elem>> m;
  bool is_zero() const;
};

enum class Label { S_dot, S_circle, D_dot, D_circle, SS_dot, SS_circle };
const char* label_name(Label l);

class OperatorTable {
 public:
  static const OperatorTable& standard(Field f);
  explicit OperatorTable(Field f);

  Field field() const { return field_; }

  // 13-generator (dot) or 12-generator (circle) grid of the generator ^0?_0.
  const TypeD& grid(Idem i) const { return i == Idem::Dot ? dot_grid_ : circle_grid_; }
  // summand indices of `pos` inside grid(i)
  const std::vector<int>& cell(Idem i, Pos p) const;
  const std::vector<Pos>& positions(Idem i) const { return i == Idem::Dot ? dot_pos_ : circle_pos_; }

  // image of one supported label, per grid position
  std::map<Pos, Block> image(Label l) const;
  std::map<Pos, Block> image_D_dot_power(uint32_t k) const;  // D_dot^k, k >= 1
  // linear combination of table images; throws on unsupported monomials
  std::map<Pos, Block> image(const Elem& z) const;

  // fault injection: negate one entry of a stored table
  void flip_sign(Label l, Pos p, int t, int s);

 private:
  Field field_;
  TypeD dot_grid_, circle_grid_;
  std::vector<Pos> dot_pos_, circle_pos_;
  std::map<Pos, std::vector<int>> dot_cells_, circle_cells_;
  std::map<Label, std::map<Pos, Block>> tables_;
};

// cable_object: the grid for one generator, shifted to its bigrading
TypeD cable_object(const Generator& g, const OperatorTable& table);
TypeD cable(const TypeD& t, const OperatorTable& table);
TypeD cable(const TypeD& t);

struct IterationStep {
  int cabled = 0;   // rank before reduction
  int reduced = 0;  // rank after reduce or to_curve_like
  std::string stop_reason;
  double seconds = 0;
};

// Applies cable n times, reducing after every application (to curve-like
// form when curve_like is set). t is replaced by the last output.
std::vector<IterationStep> iterate_cable(TypeD& t, int n, bool curve_like);

struct CablingFault {
  std::string label;
  std::string detail;
};

// Cables `trials` random two-generator complexes x -z-> y with supported z
// and checks d^2 = 0 on each; reports the first failing label and position.
std::optional<CablingFault> self_check(const OperatorTable& table, int trials = 10, unsigned seed = 1);

}  // namespace bnc
