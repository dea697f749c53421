#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cpm/dual.hpp"
#include "cpm/graph.hpp"
#include "cpm/laminar.hpp"
#include "cpm/rational.hpp"

namespace cpm {

enum class Relation { kLessEq, kEqual, kGreaterEq };

/// min c·x subject to rows, x >= 0.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, Rational>> coeffs;  // (variable, coefficient)
    Relation rel = Relation::kEqual;
    Rational rhs;
    std::string name;
  };

  std::vector<std::string> var_names;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  int add_variable(std::string name, Rational cost);
  int add_row(Row row);
  [[nodiscard]] int variable_count() const { return static_cast<int>(var_names.size()); }
  [[nodiscard]] int row_count() const { return static_cast<int>(rows.size()); }
  /// Throws std::invalid_argument on index or size mismatch.
  void validate() const;
};

struct LpResult {
  std::vector<Rational> x;
  /// One per row. Sign convention for min: >= rows nonnegative, <= rows
  /// nonpositive, equality rows free; c - yA >= 0 on every column.
  std::vector<Rational> row_duals;
  Rational objective;
  int pivots = 0;
};

struct SimplexOptions {
  /// When set, the tableau is printed after every pivot.
  std::ostream* dump = nullptr;
};

/// Two-phase dense tableau simplex with Bland's rule. Throws Infeasible or
/// Unbounded.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

/// Human-readable listing of variables and rows.
std::string to_text(const LinearProgram& lp);

/// One variable per edge, one equality row per node, one >= row per family
/// set (in fam.sorted() order).
LinearProgram build_primal(const Graph& g, std::span<const Rational> costs, const LaminarFamily& fam);

struct PrimalDual {
  FracSolution x;
  DualSolution dual;
  Rational objective;
  int pivots = 0;
};

/// Optimal basic x of P_F with the dual read off the final basis. Throws
/// NoPerfectMatching when infeasible with an empty family, Infeasible otherwise.
PrimalDual solve(const Graph& g, std::span<const Rational> costs, const LaminarFamily& fam,
                 const SimplexOptions& opts = {});

/// Dual optimum of D_F minimising Σ |Ψ(S) - Γ(S)| / |S| over singletons and
/// the sets tight for `x`. `x` must be optimal for P_F.
DualSolution solve_extremal_dual(const Graph& g, std::span<const Rational> costs,
                                 const LaminarFamily& fam, const FracSolution& x,
                                 const DualSolution& gamma, const SimplexOptions& opts = {});

/// Complementary slackness between x and the dual, exactly.
bool complementary_slackness(const Graph& g, std::span<const Rational> costs,
                             const LaminarFamily& fam, const FracSolution& x,
                             const DualSolution& dual);

}  // namespace cpm
