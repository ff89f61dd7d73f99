#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isocone/errors.hpp"
#include "isocone/opt_kernels.hpp"

namespace isocone {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;

enum class SimplexOutcome { Optimal, Unbounded, Stalled };

// Dense tableau in the form  T v = rhs, v >= 0, with an explicit basis.
// The cost row holds reduced costs of a maximization problem.
class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols)
      : a_(Matrix::Zero(rows, cols)), rhs_(Vector::Zero(rows)), basis_(rows, -1) {}

  Matrix& a() { return a_; }
  Vector& rhs() { return rhs_; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void setObjective(const Vector& cost) {
    cost_ = cost;
    reduced_ = cost;
    value_ = 0.0;
    for (Eigen::Index r = 0; r < a_.rows(); ++r) {
      const double cb = cost(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0.0) {
        reduced_ -= cb * a_.row(r).transpose();
        value_ += cb * rhs_(r);
      }
    }
  }

  double value() const { return value_; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const double p = a_(row, col);
    a_.row(row) /= p;
    rhs_(row) /= p;
    for (Eigen::Index r = 0; r < a_.rows(); ++r) {
      if (r == row) continue;
      const double f = a_(r, col);
      if (f != 0.0) {
        a_.row(r) -= f * a_.row(row);
        rhs_(r) -= f * rhs_(row);
        if (std::abs(rhs_(r)) < 1e-14) rhs_(r) = 0.0;
      }
    }
    const double f = reduced_(col);
    if (f != 0.0) {
      reduced_ -= f * a_.row(row).transpose();
      value_ += f * rhs_(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Bland's rule: lowest-index improving column, lowest-index basic variable
  // among ratio ties.
  SimplexOutcome run(Eigen::Index allowedCols, int cap) {
    for (int iter = 0; iter < cap; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowedCols; ++j) {
        if (reduced_(j) > kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return SimplexOutcome::Optimal;

      Eigen::Index leave = -1;
      double bestRatio = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < a_.rows(); ++r) {
        const double t = a_(r, enter);
        if (t <= kPivotEps) continue;
        const double ratio = rhs_(r) / t;
        const bool better = leave < 0 || ratio < bestRatio - 1e-12;
        const bool tieLower = leave >= 0 && std::abs(ratio - bestRatio) <= 1e-12 &&
                              basis_[static_cast<std::size_t>(r)] <
                                  basis_[static_cast<std::size_t>(leave)];
        if (better || tieLower) {
          bestRatio = std::min(bestRatio, ratio);
          leave = r;
        }
      }
      if (leave < 0) return SimplexOutcome::Unbounded;
      pivot(leave, enter);
    }
    return SimplexOutcome::Stalled;
  }

  void dropRow(Eigen::Index row) {
    const Eigen::Index last = a_.rows() - 1;
    if (row != last) {
      a_.row(row) = a_.row(last);
      rhs_(row) = rhs_(last);
      basis_[static_cast<std::size_t>(row)] = basis_[static_cast<std::size_t>(last)];
    }
    a_.conservativeResize(last, Eigen::NoChange);
    rhs_.conservativeResize(last);
    basis_.pop_back();
  }

 private:
  Matrix a_;
  Vector rhs_;
  std::vector<Eigen::Index> basis_;
  Vector cost_;
  Vector reduced_;
  double value_ = 0.0;
};

}  // namespace

LpOptimum lpMaximize(const Vector& objective, std::span<const LinearConstraint> constraints,
                     double box) {
  const Eigen::Index n = objective.size();
  if (n == 0) throw InvalidInput("lp: objective must be nonempty");
  if (!(box > 0.0)) throw InvalidInput("lp: box bound must be positive");
  requireFinite(objective, "lp objective");
  for (const auto& c : constraints) {
    if (c.normal.size() != n) throw DimensionMismatch("lp: constraint dimension mismatch");
    requireFinite(c.normal, "lp constraint normal");
    if (!std::isfinite(c.offset)) throw InvalidInput("lp: constraint offset not finite");
  }

  // Shift x = z - box so that z lies in [0, 2 box]; the upper bounds become rows.
  struct Row {
    Vector coef;
    double rhs;
    Sense sense;
  };
  std::vector<Row> rows;
  rows.reserve(constraints.size() + static_cast<std::size_t>(n));
  for (const auto& c : constraints) {
    rows.push_back({c.normal, c.offset + box * c.normal.sum(), c.sense});
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    rows.push_back({e, 2.0 * box, Sense::LessEqual});
  }
  Eigen::Index slackCount = 0;
  Eigen::Index artificialCount = 0;
  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      r.coef = -r.coef;
      r.rhs = -r.rhs;
      if (r.sense == Sense::LessEqual) {
        r.sense = Sense::GreaterEqual;
      } else if (r.sense == Sense::GreaterEqual) {
        r.sense = Sense::LessEqual;
      }
    }
    if (r.sense != Sense::Equal) ++slackCount;
    if (r.sense != Sense::LessEqual) ++artificialCount;
  }

  const auto m = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index realCols = n + slackCount;
  const Eigen::Index totalCols = realCols + artificialCount;
  Tableau tab(m, totalCols);
  Eigen::Index slack = n;
  Eigen::Index art = realCols;
  for (Eigen::Index r = 0; r < m; ++r) {
    const Row& row = rows[static_cast<std::size_t>(r)];
    tab.a().row(r).head(n) = row.coef.transpose();
    tab.rhs()(r) = row.rhs;
    switch (row.sense) {
      case Sense::LessEqual:
        tab.a()(r, slack) = 1.0;
        tab.basis()[static_cast<std::size_t>(r)] = slack++;
        break;
      case Sense::GreaterEqual:
        tab.a()(r, slack++) = -1.0;
        tab.a()(r, art) = 1.0;
        tab.basis()[static_cast<std::size_t>(r)] = art++;
        break;
      case Sense::Equal:
        tab.a()(r, art) = 1.0;
        tab.basis()[static_cast<std::size_t>(r)] = art++;
        break;
    }
  }

  const int cap = 200 * static_cast<int>(m + totalCols);
  LpOptimum out;

  if (artificialCount > 0) {
    Vector phase1 = Vector::Zero(totalCols);
    phase1.tail(artificialCount).setConstant(-1.0);
    tab.setObjective(phase1);
    if (tab.run(totalCols, cap) != SimplexOutcome::Optimal) {
      out.status = LpStatus::Indeterminate;
      return out;
    }
    const double scale = 1.0 + tab.rhs().cwiseAbs().maxCoeff();
    if (-tab.value() > 1e-9 * scale) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (Eigen::Index r = tab.a().rows() - 1; r >= 0; --r) {
      if (tab.basis()[static_cast<std::size_t>(r)] < realCols) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < realCols; ++j) {
        if (std::abs(tab.a()(r, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(r, col);
      } else {
        tab.dropRow(r);
      }
    }
  }

  Vector cost = Vector::Zero(totalCols);
  cost.head(n) = objective;
  tab.setObjective(cost);
  const SimplexOutcome outcome = tab.run(realCols, cap);
  if (outcome != SimplexOutcome::Optimal) {
    // Bounded by the box; any other status is numerical trouble.
    out.status = LpStatus::Indeterminate;
    return out;
  }

  Vector z = Vector::Zero(totalCols);
  for (Eigen::Index r = 0; r < tab.a().rows(); ++r) {
    z(tab.basis()[static_cast<std::size_t>(r)]) = tab.rhs()(r);
  }
  out.x = z.head(n).array() - box;
  out.value = objective.dot(out.x);
  out.status = LpStatus::Feasible;
  return out;
}

LpResult lpFeasible(std::span<const LinearConstraint> constraints, double box, double margin) {
  if (constraints.empty()) throw InvalidInput("lpFeasible: no constraints given");
  if (!(margin > 0.0)) throw InvalidInput("lpFeasible: margin must be positive");
  const Eigen::Index n = constraints.front().normal.size();

  // Variables (x, s); maximize s with every inequality loosened by s.
  std::vector<LinearConstraint> lifted;
  lifted.reserve(constraints.size() + 1);
  for (const auto& c : constraints) {
    if (c.normal.size() != n) throw DimensionMismatch("lpFeasible: constraint dimension mismatch");
    LinearConstraint l;
    l.normal = Vector::Zero(n + 1);
    l.normal.head(n) = c.normal;
    l.offset = c.offset;
    l.sense = c.sense;
    if (c.sense == Sense::LessEqual) l.normal(n) = 1.0;
    if (c.sense == Sense::GreaterEqual) l.normal(n) = -1.0;
    lifted.push_back(std::move(l));
  }
  LinearConstraint cap;
  cap.normal = Vector::Zero(n + 1);
  cap.normal(n) = 1.0;
  cap.offset = 1.0;
  lifted.push_back(cap);

  Vector objective = Vector::Zero(n + 1);
  objective(n) = 1.0;
  const LpOptimum opt = lpMaximize(objective, lifted, box);

  LpResult result;
  if (opt.status == LpStatus::Infeasible) {
    result.status = LpStatus::Infeasible;
    result.margin = -std::numeric_limits<double>::infinity();
    return result;
  }
  if (opt.status == LpStatus::Indeterminate) {
    result.status = LpStatus::Indeterminate;
    return result;
  }
  result.margin = opt.value;
  if (opt.value >= margin) {
    result.status = LpStatus::Feasible;
    result.witness = opt.x.head(n);
  } else if (opt.value <= 1e-3 * margin) {
    result.status = LpStatus::Infeasible;
  } else {
    result.status = LpStatus::Indeterminate;
  }
  return result;
}

}  // namespace isocone
