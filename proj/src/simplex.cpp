#include "bcs/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "bcs/errors.hpp"

namespace bcs {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

void LinearProgram::validate() const {
  const Index n = num_vars();
  if (eq_matrix.cols() != n && !(eq_matrix.rows() == 0))
    throw DimensionMismatch("LP: constraint matrix has " + std::to_string(eq_matrix.cols()) +
                            " columns for " + std::to_string(n) + " variables");
  if (eq_rhs.size() != eq_matrix.rows())
    throw DimensionMismatch("LP: rhs length does not match constraint rows");
  if (lower.size() != n || upper.size() != n)
    throw DimensionMismatch("LP: bound vectors do not match variable count");
  for (Index j = 0; j < n; ++j) {
    if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) > upper(j))
      throw InvalidParameter("LP: invalid bounds for variable " + std::to_string(j));
    if (lower(j) == kInfinity || upper(j) == -kInfinity)
      throw InvalidParameter("LP: empty bound interval for variable " + std::to_string(j));
  }
  if (!costs.allFinite() || !eq_matrix.allFinite() || !eq_rhs.allFinite())
    throw InvalidParameter("LP: non-finite data");
}

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Internal column j represents  original[j] = offset + sign * x_j,  0 <= x_j <= upper_j.
struct ColumnMap {
  Index original;
  double sign;
  double offset;
};

// Shifted, sign-normalized problem:  min c^T x,  A x = b (b >= 0),  0 <= x <= u.
struct StandardForm {
  DenseMatrix a;
  DenseVector b;
  DenseVector c;
  DenseVector u;
  std::vector<ColumnMap> columns;
};

StandardForm to_standard_form(const LinearProgram& lp) {
  const Index n = lp.num_vars();
  const Index m = lp.num_rows();
  std::vector<ColumnMap> columns;
  std::vector<double> uppers;
  for (Index j = 0; j < n; ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    if (std::isfinite(lo)) {
      columns.push_back({j, 1.0, lo});
      uppers.push_back(hi - lo);
    } else if (std::isfinite(hi)) {
      columns.push_back({j, -1.0, hi});
      uppers.push_back(kInfinity);
    } else {
      columns.push_back({j, 1.0, 0.0});
      uppers.push_back(kInfinity);
      columns.push_back({j, -1.0, 0.0});
      uppers.push_back(kInfinity);
    }
  }

  StandardForm sf;
  const auto total = static_cast<Index>(columns.size());
  sf.a.resize(m, total);
  sf.c.resize(total);
  sf.u = Eigen::Map<DenseVector>(uppers.data(), total);
  sf.b = lp.eq_rhs;
  for (Index k = 0; k < total; ++k) {
    const ColumnMap& col = columns[static_cast<std::size_t>(k)];
    if (m > 0) sf.a.col(k) = col.sign * lp.eq_matrix.col(col.original);
    sf.c(k) = col.sign * lp.costs(col.original);
  }
  for (Index j = 0; j < n; ++j) {
    if (m == 0) break;
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    const double offset = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    if (offset != 0.0) sf.b -= offset * lp.eq_matrix.col(j);
  }
  for (Index i = 0; i < m; ++i) {
    if (sf.b(i) < 0.0) {
      sf.b(i) = -sf.b(i);
      sf.a.row(i) = -sf.a.row(i);
    }
  }
  sf.columns = std::move(columns);
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf, const SimplexOptions& options)
      : options_(options), m_(sf.a.rows()), n_(sf.a.cols()), total_(n_ + m_) {
    t_.resize(m_, total_);
    t_.leftCols(n_) = sf.a;
    t_.rightCols(m_).setIdentity();
    beta_ = sf.b;
    upper_.resize(total_);
    upper_.head(n_) = sf.u;
    upper_.tail(m_).setConstant(kInfinity);
    basis_.resize(static_cast<std::size_t>(m_));
    row_of_.assign(static_cast<std::size_t>(total_), -1);
    for (Index i = 0; i < m_; ++i) {
      basis_[static_cast<std::size_t>(i)] = n_ + i;
      row_of_[static_cast<std::size_t>(n_ + i)] = i;
    }
    at_upper_.assign(static_cast<std::size_t>(total_), 0);
    excluded_.assign(static_cast<std::size_t>(total_), 0);
  }

  enum class PhaseResult { kOptimal, kUnbounded };

  PhaseResult run_phase(const DenseVector& costs) {
    DenseVector cb(m_);
    for (Index i = 0; i < m_; ++i) cb(i) = costs(basis_[static_cast<std::size_t>(i)]);
    reduced_ = costs;
    if (m_ > 0) reduced_.noalias() -= t_.transpose() * cb;

    int degenerate_run = 0;
    const long limit = 200L * (m_ + total_) + 10000;
    for (long iter = 0; iter < limit; ++iter) {
      const bool bland =
          options_.pricing == PricingRule::kBland || degenerate_run >= kDegenerateSwitch;
      const Index q = choose_entering(bland);
      if (q < 0) return PhaseResult::kOptimal;
      const StepOutcome step = take_step(q, bland);
      if (step == StepOutcome::kUnbounded) return PhaseResult::kUnbounded;
      degenerate_run = step == StepOutcome::kDegenerate ? degenerate_run + 1 : 0;
    }
    throw std::runtime_error("simplex: iteration limit reached");
  }

  // Sum of artificial values, i.e. the phase-one objective.
  double infeasibility() const {
    double total = 0.0;
    for (Index i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= n_) total += std::max(beta_(i), 0.0);
    return total;
  }

  // After a feasible phase one: pivot zero-level artificials out of the basis
  // where possible, pin the rest (redundant rows) at zero, and bar every
  // artificial from re-entering.
  void retire_artificials() {
    for (Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < n_) continue;
      Index best = -1;
      double best_abs = options_.pivot_tolerance;
      for (Index j = 0; j < n_; ++j) {
        if (row_of_[static_cast<std::size_t>(j)] >= 0) continue;
        const double a = std::abs(t_(r, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best >= 0) {
        const double value = at_upper_[static_cast<std::size_t>(best)] ? upper_(best) : 0.0;
        pivot(r, best, /*leaving_to_upper=*/false);
        beta_(r) = value;
      } else {
        upper_(basis_[static_cast<std::size_t>(r)]) = 0.0;
      }
    }
    for (Index j = n_; j < total_; ++j) excluded_[static_cast<std::size_t>(j)] = 1;
    active_ = n_;
  }

  // Current point in standard-form coordinates, with basic values recomputed
  // from the original data when that lowers the constraint residual.
  DenseVector point(const StandardForm& sf) const {
    DenseVector x(n_);
    for (Index j = 0; j < n_; ++j) {
      const Index r = row_of_[static_cast<std::size_t>(j)];
      x(j) = r >= 0 ? beta_(r) : (at_upper_[static_cast<std::size_t>(j)] ? upper_(j) : 0.0);
    }
    if (m_ == 0) return x;

    DenseMatrix basis_matrix = DenseMatrix::Zero(m_, m_);
    DenseVector rhs = sf.b;
    for (Index j = 0; j < n_; ++j)
      if (row_of_[static_cast<std::size_t>(j)] < 0 && x(j) != 0.0) rhs -= x(j) * sf.a.col(j);
    for (Index i = 0; i < m_; ++i) {
      const Index j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) basis_matrix.col(i) = sf.a.col(j);
      else basis_matrix(j - n_, i) = 1.0;
    }
    const DenseVector refined = basis_matrix.partialPivLu().solve(rhs);
    if (!refined.allFinite()) return clamp(x);

    DenseVector candidate = x;
    for (Index i = 0; i < m_; ++i) {
      const Index j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) candidate(j) = refined(i);
    }
    candidate = clamp(candidate);
    x = clamp(x);
    const double old_resid = (sf.a * x - sf.b).lpNorm<Eigen::Infinity>();
    const double new_resid = (sf.a * candidate - sf.b).lpNorm<Eigen::Infinity>();
    return new_resid <= old_resid ? candidate : x;
  }

  int pivots() const { return pivots_; }
  Index structural() const { return n_; }

 private:
  static constexpr int kDegenerateSwitch = 50;

  enum class StepOutcome { kProgress, kDegenerate, kUnbounded };

  DenseVector clamp(DenseVector x) const {
    for (Index j = 0; j < n_; ++j) x(j) = std::clamp(x(j), 0.0, upper_(j));
    return x;
  }

  bool eligible(Index j) const {
    if (excluded_[static_cast<std::size_t>(j)] || row_of_[static_cast<std::size_t>(j)] >= 0)
      return false;
    if (upper_(j) == 0.0) return false;  // fixed variable
    const double dj = reduced_(j);
    return at_upper_[static_cast<std::size_t>(j)] ? dj > options_.optimality_tolerance
                                                  : dj < -options_.optimality_tolerance;
  }

  Index choose_entering(bool bland) const {
    Index best = -1;
    double best_score = 0.0;
    for (Index j = 0; j < active_; ++j) {
      if (!eligible(j)) continue;
      if (bland) return j;
      const double score = std::abs(reduced_(j));
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  StepOutcome take_step(Index q, bool bland) {
    const bool from_upper = at_upper_[static_cast<std::size_t>(q)] != 0;
    const double dir = from_upper ? -1.0 : 1.0;

    // Basic values move by -dir * theta * T(:, q).
    double theta = upper_(q);  // bound flip
    Index leave = -1;
    bool leave_to_upper = false;
    double leave_alpha = 0.0;
    for (Index i = 0; i < m_; ++i) {
      const double alpha = dir * t_(i, q);
      double ratio;
      bool to_upper;
      if (alpha > options_.pivot_tolerance) {
        ratio = beta_(i) / alpha;
        to_upper = false;
      } else if (alpha < -options_.pivot_tolerance) {
        const double ub = upper_(basis_[static_cast<std::size_t>(i)]);
        if (!std::isfinite(ub)) continue;
        ratio = (ub - beta_(i)) / -alpha;
        to_upper = true;
      } else {
        continue;
      }
      ratio = std::max(ratio, 0.0);
      bool take = false;
      if (ratio < theta - kRatioTieTolerance) {
        take = true;
      } else if (ratio <= theta + kRatioTieTolerance && leave >= 0) {
        take = bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]
                     : std::abs(alpha) > std::abs(leave_alpha);
      }
      if (take) {
        theta = ratio;
        leave = i;
        leave_to_upper = to_upper;
        leave_alpha = alpha;
      }
    }
    if (!std::isfinite(theta)) return StepOutcome::kUnbounded;

    if (theta != 0.0 && m_ > 0) beta_.noalias() -= (dir * theta) * t_.col(q);
    if (leave < 0) {
      at_upper_[static_cast<std::size_t>(q)] = from_upper ? 0 : 1;
      return theta > 0.0 ? StepOutcome::kProgress : StepOutcome::kDegenerate;
    }
    const double entering_value = from_upper ? upper_(q) - theta : theta;
    pivot(leave, q, leave_to_upper);
    beta_(leave) = entering_value;
    return theta > 0.0 ? StepOutcome::kProgress : StepOutcome::kDegenerate;
  }

  void pivot(Index r, Index q, bool leaving_to_upper) {
    const Index leaving = basis_[static_cast<std::size_t>(r)];
    const double piv = t_(r, q);
    t_.row(r).head(active_) /= piv;
    t_(r, q) = 1.0;
    for (Index i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, q);
      if (f == 0.0) continue;
      t_.row(i).head(active_).noalias() -= f * t_.row(r).head(active_);
      t_(i, q) = 0.0;
    }
    if (reduced_.size() == total_) {
      const double f = reduced_(q);
      if (f != 0.0) reduced_.head(active_).noalias() -= f * t_.row(r).head(active_).transpose();
      reduced_(q) = 0.0;
    }
    basis_[static_cast<std::size_t>(r)] = q;
    row_of_[static_cast<std::size_t>(q)] = r;
    row_of_[static_cast<std::size_t>(leaving)] = -1;
    at_upper_[static_cast<std::size_t>(leaving)] = leaving_to_upper ? 1 : 0;
    at_upper_[static_cast<std::size_t>(q)] = 0;
    ++pivots_;
  }

  static constexpr double kRatioTieTolerance = 1e-12;

  SimplexOptions options_;
  Index m_;
  Index n_;
  Index total_;
  RowMajorMatrix t_;
  DenseVector beta_;
  DenseVector upper_;
  DenseVector reduced_;
  std::vector<Index> basis_;
  std::vector<Index> row_of_;
  std::vector<char> at_upper_;
  std::vector<char> excluded_;
  Index active_ = total_;  // columns still updated by pivots
  int pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  const StandardForm sf = to_standard_form(lp);
  const Index m = sf.a.rows();
  const Index n = sf.a.cols();

  Tableau tableau(sf, options);
  LpSolution out;

  if (m > 0) {
    DenseVector phase_one = DenseVector::Zero(n + m);
    phase_one.tail(m).setOnes();
    tableau.run_phase(phase_one);
    const double scale = std::max(1.0, sf.b.lpNorm<Eigen::Infinity>());
    if (tableau.infeasibility() > options.feasibility_tolerance * scale) {
      out.status = LpStatus::kInfeasible;
      out.pivots = tableau.pivots();
      return out;
    }
    tableau.retire_artificials();
  }

  DenseVector phase_two = DenseVector::Zero(n + m);
  phase_two.head(n) = sf.c;
  const auto result = tableau.run_phase(phase_two);

  const DenseVector x = tableau.point(sf);
  out.point = DenseVector::Zero(lp.num_vars());
  for (Index k = 0; k < n; ++k) {
    const ColumnMap& col = sf.columns[static_cast<std::size_t>(k)];
    out.point(col.original) += col.sign * x(k);
  }
  for (Index j = 0; j < lp.num_vars(); ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    out.point(j) += std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    // Re-impose the original bounds after the offset arithmetic.
    out.point(j) = std::clamp(out.point(j), lo, hi);
  }
  out.objective = lp.costs.dot(out.point);
  out.status = result == Tableau::PhaseResult::kOptimal ? LpStatus::kOptimal : LpStatus::kUnbounded;
  out.pivots = tableau.pivots();
  return out;
}

}  // namespace bcs
