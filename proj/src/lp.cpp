#include "cpm/lp.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cpm/errors.hpp"

namespace cpm {

int LinearProgram::add_variable(std::string name, Rational cost) {
  var_names.push_back(std::move(name));
  objective.push_back(std::move(cost));
  return variable_count() - 1;
}

int LinearProgram::add_row(Row row) {
  rows.push_back(std::move(row));
  return row_count() - 1;
}

void LinearProgram::validate() const {
  if (objective.size() != var_names.size())
    throw std::invalid_argument("objective length differs from variable count");
  for (const auto& r : rows)
    for (const auto& [j, a] : r.coeffs)
      if (j < 0 || j >= variable_count())
        throw std::invalid_argument("row " + r.name + " references unknown variable");
}

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::ostream* dump) : dump_(dump) {
    nv_ = lp.variable_count();
    const int nr = lp.row_count();
    int n_slack = 0;
    int n_art = 0;
    for (const auto& r : lp.rows) {
      const bool neg = r.rhs.sign() < 0;
      Relation rel = r.rel;
      if (neg && rel != Relation::kEqual)
        rel = rel == Relation::kLessEq ? Relation::kGreaterEq : Relation::kLessEq;
      if (rel != Relation::kEqual) ++n_slack;
      if (rel != Relation::kLessEq) ++n_art;
    }
    art_begin_ = nv_ + n_slack;
    ncols_ = art_begin_ + n_art;
    t_.assign(nr, std::vector<mpq_class>(ncols_));
    b_.resize(nr);
    basis_.resize(nr);
    unit_.resize(nr);
    sign_.resize(nr);

    int next_slack = nv_;
    int next_art = art_begin_;
    for (int i = 0; i < nr; ++i) {
      const auto& r = lp.rows[i];
      const bool neg = r.rhs.sign() < 0;
      sign_[i] = neg ? -1 : 1;
      Relation rel = r.rel;
      if (neg && rel != Relation::kEqual)
        rel = rel == Relation::kLessEq ? Relation::kGreaterEq : Relation::kLessEq;
      for (const auto& [j, a] : r.coeffs) {
        if (neg) t_[i][j] -= a.raw();
        else t_[i][j] += a.raw();
      }
      b_[i] = neg ? mpq_class(-r.rhs.raw()) : r.rhs.raw();
      if (rel == Relation::kLessEq) {
        t_[i][next_slack] = 1;
        unit_[i] = next_slack++;
      } else {
        if (rel == Relation::kGreaterEq) t_[i][next_slack++] = -1;
        t_[i][next_art] = 1;
        unit_[i] = next_art++;
      }
      basis_[i] = unit_[i];
    }
    cost_.assign(ncols_, 0);
    for (int j = 0; j < nv_; ++j) cost_[j] = lp.objective[j].raw();
  }

  // Returns false when the phase-1 optimum is positive.
  bool phase_one() {
    std::vector<mpq_class> c1(ncols_, 0);
    for (int j = art_begin_; j < ncols_; ++j) c1[j] = 1;
    load_objective(c1);
    run(ncols_);
    if (w_ != 0) return false;
    for (int r = 0; r < rows(); ++r) {
      if (basis_[r] < art_begin_) continue;
      for (int j = 0; j < art_begin_; ++j) {
        if (sgn(t_[r][j]) != 0) {
          pivot(r, j);
          break;
        }
      }
      // A row with no non-artificial entry is redundant; its artificial stays basic at 0.
    }
    return true;
  }

  void phase_two() {
    load_objective(cost_);
    run(art_begin_);
  }

  [[nodiscard]] int rows() const { return static_cast<int>(t_.size()); }
  [[nodiscard]] int pivots() const { return pivots_; }

  void extract(LpResult& out) const {
    out.x.assign(nv_, Rational(0));
    for (int i = 0; i < rows(); ++i)
      if (basis_[i] < nv_) out.x[basis_[i]] = Rational(b_[i]);
    out.row_duals.resize(rows());
    for (int i = 0; i < rows(); ++i) {
      mpq_class y = -d_[unit_[i]];
      if (sign_[i] < 0) y = -y;
      out.row_duals[i] = Rational(y);
    }
    out.objective = Rational(w_);
    out.pivots = pivots_;
  }

 private:
  void load_objective(const std::vector<mpq_class>& c) {
    d_ = c;
    w_ = 0;
    for (int i = 0; i < rows(); ++i) {
      const mpq_class& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j < ncols_; ++j)
        if (sgn(t_[i][j]) != 0) d_[j] -= cb * t_[i][j];
      w_ += cb * b_[i];
    }
  }

  // Bland's rule over columns [0, limit).
  void run(int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (sgn(d_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      for (int i = 0; i < rows(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        const int c = cmp(b_[i] * t_[leave][enter], b_[leave] * t_[i][enter]);
        if (c < 0 || (c == 0 && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave < 0) throw Unbounded("LP is unbounded");
      pivot(leave, enter);
    }
  }

  void pivot(int r, int j) {
    ++pivots_;
    const mpq_class piv = t_[r][j];
    auto& row = t_[r];
    nz_.clear();
    for (int k = 0; k < ncols_; ++k) {
      if (sgn(row[k]) == 0) continue;
      row[k] /= piv;
      nz_.push_back(k);
    }
    b_[r] /= piv;
    mpq_class f;
    for (int i = 0; i < rows(); ++i) {
      if (i == r || sgn(t_[i][j]) == 0) continue;
      f = t_[i][j];
      auto& ti = t_[i];
      for (int k : nz_) ti[k] -= f * row[k];
      b_[i] -= f * b_[r];
    }
    if (sgn(d_[j]) != 0) {
      f = d_[j];
      for (int k : nz_) d_[k] -= f * row[k];
      w_ += f * b_[r];
    }
    basis_[r] = j;
    if (dump_) print(*dump_);
  }

  void print(std::ostream& os) const {
    os << "-- pivot " << pivots_ << " objective " << w_ << '\n';
    for (int i = 0; i < rows(); ++i) {
      os << "b" << basis_[i] << " |";
      for (int j = 0; j < ncols_; ++j) os << ' ' << t_[i][j];
      os << " | " << b_[i] << '\n';
    }
    os << "d  |";
    for (int j = 0; j < ncols_; ++j) os << ' ' << d_[j];
    os << '\n';
  }

  std::ostream* dump_;
  int nv_ = 0;
  int art_begin_ = 0;
  int ncols_ = 0;
  std::vector<std::vector<mpq_class>> t_;
  std::vector<mpq_class> b_;
  std::vector<mpq_class> d_;
  std::vector<mpq_class> cost_;
  mpq_class w_;
  std::vector<int> basis_;
  std::vector<int> unit_;
  std::vector<int> sign_;
  std::vector<int> nz_;
  int pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  lp.validate();
  Tableau tab(lp, opts.dump);
  if (!tab.phase_one()) throw Infeasible("LP is infeasible");
  tab.phase_two();
  LpResult out;
  tab.extract(out);
  return out;
}

std::string to_text(const LinearProgram& lp) {
  std::ostringstream os;
  os << "min";
  for (int j = 0; j < lp.variable_count(); ++j)
    if (!lp.objective[j].is_zero()) os << " + " << lp.objective[j] << ' ' << lp.var_names[j];
  os << '\n';
  for (const auto& r : lp.rows) {
    os << r.name << ':';
    for (const auto& [j, a] : r.coeffs) os << " + " << a << ' ' << lp.var_names[j];
    os << (r.rel == Relation::kLessEq ? " <= " : r.rel == Relation::kEqual ? " = " : " >= ") << r.rhs
       << '\n';
  }
  return os.str();
}

LinearProgram build_primal(const Graph& g, std::span<const Rational> costs, const LaminarFamily& fam) {
  LinearProgram lp;
  for (EdgeId e = 0; e < g.edge_count(); ++e) lp.add_variable("x" + std::to_string(e + 1), costs[e]);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    LinearProgram::Row row{{}, Relation::kEqual, Rational(1), "deg" + std::to_string(v + 1)};
    for (EdgeId e : g.incident(v)) row.coeffs.emplace_back(e, Rational(1));
    lp.add_row(std::move(row));
  }
  for (const auto& s : fam.sorted()) {
    LinearProgram::Row row{{}, Relation::kGreaterEq, Rational(1), "cut" + s.str()};
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (s.crosses(g.edge(e))) row.coeffs.emplace_back(e, Rational(1));
    lp.add_row(std::move(row));
  }
  return lp;
}

PrimalDual solve(const Graph& g, std::span<const Rational> costs, const LaminarFamily& fam,
                 const SimplexOptions& opts) {
  const int n = g.node_count();
  if (n == 0 || n % 2 != 0) throw NoPerfectMatching("node count " + std::to_string(n) + " is not even and positive");
  const auto lp = build_primal(g, costs, fam);
  LpResult res;
  try {
    res = solve_lp(lp, opts);
  } catch (const Infeasible&) {
    if (fam.empty()) throw NoPerfectMatching("no perfect matching: degree constraints infeasible");
    throw;
  }
  PrimalDual out{res.x, DualSolution(n), res.objective, res.pivots};
  for (NodeId v = 0; v < n; ++v) out.dual.set_node(v, res.row_duals[v]);
  const auto sets = fam.sorted();
  for (std::size_t k = 0; k < sets.size(); ++k) out.dual.set_value(sets[k], res.row_duals[n + k]);
  return out;
}

DualSolution solve_extremal_dual(const Graph& g, std::span<const Rational> costs,
                                 const LaminarFamily& fam, const FracSolution& x,
                                 const DualSolution& gamma, const SimplexOptions& opts) {
  const int n = g.node_count();
  std::vector<OddSet> tight;
  for (const auto& s : fam.sorted())
    if (cut_value(g, x, s) == Rational(1)) tight.push_back(s);

  // Ψ = Γ + p - q on every singleton and tight set; minimising Σ w (p + q)
  // yields |Ψ - Γ| at the optimum.
  LinearProgram lp;
  for (NodeId v = 0; v < n; ++v) {
    lp.add_variable("p" + std::to_string(v + 1), Rational(1));
    lp.add_variable("q" + std::to_string(v + 1), Rational(1));
  }
  for (const auto& s : tight) {
    const Rational w = rat(1, s.size());
    lp.add_variable("p" + s.str(), w);
    lp.add_variable("q" + s.str(), w);
  }
  auto p_of_set = [&](std::size_t k) { return 2 * (n + static_cast<int>(k)); };

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    LinearProgram::Row row;
    row.name = "edge" + std::to_string(e + 1);
    row.rel = x[e].is_zero() ? Relation::kLessEq : Relation::kEqual;
    Rational rhs = costs[e] - gamma.node(ed.u) - gamma.node(ed.v);
    for (NodeId w : {ed.u, ed.v}) {
      row.coeffs.emplace_back(2 * w, Rational(1));
      row.coeffs.emplace_back(2 * w + 1, Rational(-1));
    }
    for (std::size_t k = 0; k < tight.size(); ++k) {
      if (!tight[k].crosses(ed)) continue;
      row.coeffs.emplace_back(p_of_set(k), Rational(1));
      row.coeffs.emplace_back(p_of_set(k) + 1, Rational(-1));
      rhs -= gamma.set(tight[k]);
    }
    row.rhs = rhs;
    lp.add_row(std::move(row));
  }
  for (std::size_t k = 0; k < tight.size(); ++k) {
    LinearProgram::Row row{{{p_of_set(k), Rational(1)}, {p_of_set(k) + 1, Rational(-1)}},
                           Relation::kGreaterEq, -gamma.set(tight[k]), "nonneg" + tight[k].str()};
    lp.add_row(std::move(row));
  }

  const auto res = solve_lp(lp, opts);
  DualSolution psi(n);
  for (NodeId v = 0; v < n; ++v) psi.set_node(v, gamma.node(v) + res.x[2 * v] - res.x[2 * v + 1]);
  for (std::size_t k = 0; k < tight.size(); ++k)
    psi.set_value(tight[k], gamma.set(tight[k]) + res.x[p_of_set(k)] - res.x[p_of_set(k) + 1]);
  return psi;
}

bool complementary_slackness(const Graph& g, std::span<const Rational> costs,
                             const LaminarFamily& fam, const FracSolution& x,
                             const DualSolution& dual) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!x[e].is_zero() && !dual.slack(g, costs, e).is_zero()) return false;
  for (const auto& [s, v] : dual.set_values()) {
    if (!fam.contains(s)) return false;
    if (v.sign() > 0 && cut_value(g, x, s) != Rational(1)) return false;
  }
  return true;
}

}  // namespace cpm
