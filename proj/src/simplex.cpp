#include "multicut/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace multicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDualTol = 1e-9;   // reduced-cost optimality tolerance
constexpr double kPivotTol = 1e-9;  // minimum magnitude to act as a blocking pivot
constexpr double kBoundTol = 1e-7;  // accepted bound violation on warm starts

class DenseLU {
 public:
  bool factor(std::vector<double> a, int m) {
    m_ = m;
    lu_ = std::move(a);
    perm_.resize(m);
    for (int k = 0; k < m; ++k) {
      int p = k;
      for (int i = k + 1; i < m; ++i)
        if (std::abs(lu_[i * m + k]) > std::abs(lu_[p * m + k])) p = i;
      if (std::abs(lu_[p * m + k]) < 1e-12) return false;
      perm_[k] = p;
      if (p != k)
        for (int j = 0; j < m; ++j) std::swap(lu_[k * m + j], lu_[p * m + j]);
      double piv = lu_[k * m + k];
      for (int i = k + 1; i < m; ++i) {
        double f = lu_[i * m + k] / piv;
        lu_[i * m + k] = f;
        if (f == 0.0) continue;
        for (int j = k + 1; j < m; ++j) lu_[i * m + j] -= f * lu_[k * m + j];
      }
    }
    return true;
  }

  // solve B x = b in place
  void ftran(std::vector<double>& x) const {
    for (int k = 0; k < m_; ++k)
      if (perm_[k] != k) std::swap(x[k], x[perm_[k]]);
    for (int i = 1; i < m_; ++i) {
      double s = x[i];
      for (int j = 0; j < i; ++j) s -= lu_[i * m_ + j] * x[j];
      x[i] = s;
    }
    for (int i = m_ - 1; i >= 0; --i) {
      double s = x[i];
      for (int j = i + 1; j < m_; ++j) s -= lu_[i * m_ + j] * x[j];
      x[i] = s / lu_[i * m_ + i];
    }
  }

  // solve B' y = c in place
  void btran(std::vector<double>& x) const {
    for (int i = 0; i < m_; ++i) {
      double s = x[i];
      for (int j = 0; j < i; ++j) s -= lu_[j * m_ + i] * x[j];
      x[i] = s / lu_[i * m_ + i];
    }
    for (int i = m_ - 1; i >= 0; --i) {
      double s = x[i];
      for (int j = i + 1; j < m_; ++j) s -= lu_[j * m_ + i] * x[j];
      x[i] = s;
    }
    for (int k = m_ - 1; k >= 0; --k)
      if (perm_[k] != k) std::swap(x[k], x[perm_[k]]);
  }

 private:
  int m_ = 0;
  std::vector<double> lu_;
  std::vector<int> perm_;
};

enum VarState : char { kBasic, kAtLower, kAtUpper };

class Simplex {
 public:
  Simplex(const LpProblem& p, const std::vector<int>* warm) : p_(p), m_(p.num_rows) {
    n_ = static_cast<int>(p.columns.size());
    ncols_ = n_ + m_;  // one artificial per row appended after the structurals
    lower_ = p.lower;
    upper_ = p.upper;
    lower_.resize(ncols_, 0.0);
    upper_.resize(ncols_, kInf);
    art_sign_.assign(m_, 1.0);
    state_.assign(ncols_, kAtLower);
    x_.assign(ncols_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (lower_[j] == -kInf)
        throw MulticutError("simplex: free variables are not supported");
      x_[j] = lower_[j];
    }
    basic_.assign(m_, -1);
    init_basis(warm);
  }

  LpSolution run() {
    LpSolution sol;
    if (m_ == 0) return solve_trivial();

    // phase 1: drive the artificial variables to zero
    double art_total = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basic_[i] >= n_) art_total += std::abs(x_[basic_[i]]);
    if (art_total > 1e-10) {
      cost_.assign(ncols_, 0.0);
      for (int j = n_; j < ncols_; ++j) cost_[j] = 1.0;
      LpStatus st = optimize();
      if (st != LpStatus::kOptimal) {
        sol.status = st == LpStatus::kUnbounded ? LpStatus::kInfeasible : st;
        return sol;
      }
      double ph1 = 0.0;
      for (int i = 0; i < m_; ++i)
        if (basic_[i] >= n_) ph1 += x_[basic_[i]];
      if (ph1 > 1e-7) {
        sol.status = LpStatus::kInfeasible;
        return sol;
      }
    }
    // pin artificials and optimize the true objective
    for (int j = n_; j < ncols_; ++j) {
      upper_[j] = 0.0;
      if (state_[j] != kBasic) x_[j] = 0.0;
    }
    cost_ = p_.cost;
    cost_.resize(ncols_, 0.0);
    LpStatus st = optimize();
    sol.status = st;
    sol.pivots = pivots_;
    if (st != LpStatus::kOptimal) return sol;

    refactor();
    recompute_basics();
    std::vector<double> y = btran_costs();
    sol.x.assign(x_.begin(), x_.begin() + n_);
    sol.y = y;
    sol.reduced_costs.resize(n_);
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) {
      sol.reduced_costs[j] = cost_[j] - dot_col(j, y);
      sol.objective += cost_[j] * sol.x[j];
    }
    sol.basis.resize(m_);
    for (int i = 0; i < m_; ++i) sol.basis[i] = basic_[i] < n_ ? basic_[i] : -1;
    return sol;
  }

 private:
  LpSolution solve_trivial() {
    LpSolution sol;
    sol.x.resize(n_);
    for (int j = 0; j < n_; ++j) {
      if (p_.cost[j] > 0.0) {
        if (lower_[j] == -kInf) {
          sol.status = LpStatus::kUnbounded;
          return sol;
        }
        sol.x[j] = lower_[j];
      } else if (p_.cost[j] < 0.0) {
        if (upper_[j] == kInf) {
          sol.status = LpStatus::kUnbounded;
          return sol;
        }
        sol.x[j] = upper_[j];
      } else {
        sol.x[j] = lower_[j] > -kInf ? lower_[j] : (upper_[j] < kInf ? upper_[j] : 0.0);
      }
      sol.objective += p_.cost[j] * sol.x[j];
    }
    sol.reduced_costs = p_.cost;
    return sol;
  }

  const std::pair<int, double>* col_begin(int j, int& count) const {
    if (j < n_) {
      count = static_cast<int>(p_.columns[j].entries.size());
      return p_.columns[j].entries.data();
    }
    art_entry_ = {j - n_, art_sign_[j - n_]};
    count = 1;
    return &art_entry_;
  }

  double dot_col(int j, const std::vector<double>& y) const {
    int cnt;
    const auto* it = col_begin(j, cnt);
    double s = 0.0;
    for (int k = 0; k < cnt; ++k) s += it[k].second * y[it[k].first];
    return s;
  }

  void init_basis(const std::vector<int>* warm) {
    bool used_warm = false;
    if (warm != nullptr && static_cast<int>(warm->size()) == m_) {
      std::vector<char> taken(n_, 0);
      bool ok = true;
      for (int j : *warm) {
        if (j == -1) continue;
        if (j < 0 || j >= n_ || taken[j]) {
          ok = false;
          break;
        }
        taken[j] = 1;
      }
      if (ok) {
        for (int i = 0; i < m_; ++i) basic_[i] = (*warm)[i] >= 0 ? (*warm)[i] : n_ + i;
        if (try_start_basis()) used_warm = true;
      }
    }
    if (!used_warm) {
      for (int i = 0; i < m_; ++i) basic_[i] = n_ + i;
      std::fill(art_sign_.begin(), art_sign_.end(), 1.0);
      for (int j = 0; j < ncols_; ++j) state_[j] = kAtLower;
      for (int j = 0; j < n_; ++j) x_[j] = lower_[j];
      if (!try_start_basis())
        throw MulticutError("simplex internal error: artificial basis singular");
    }
  }

  // Factorizes basic_, recomputes basic values, flips artificial signs to make
  // their values nonnegative, and validates structural bounds. Returns false
  // when the basis is unusable.
  bool try_start_basis() {
    for (int j = 0; j < ncols_; ++j)
      if (state_[j] == kBasic) state_[j] = kAtLower;
    for (int i = 0; i < m_; ++i) state_[basic_[i]] = kBasic;
    for (int j = 0; j < n_; ++j)
      if (state_[j] != kBasic) x_[j] = lower_[j];
    for (int j = n_; j < ncols_; ++j)
      if (state_[j] != kBasic) x_[j] = 0.0;
    if (!refactor()) return false;
    recompute_basics();
    bool flipped = false;
    for (int i = 0; i < m_; ++i) {
      int j = basic_[i];
      if (j >= n_ && x_[j] < 0.0) {
        art_sign_[j - n_] = -art_sign_[j - n_];
        flipped = true;
      }
    }
    if (flipped) {
      if (!refactor()) return false;
      recompute_basics();
    }
    for (int i = 0; i < m_; ++i) {
      int j = basic_[i];
      if (x_[j] < lower_[j] - kBoundTol || x_[j] > upper_[j] + kBoundTol) return false;
      x_[j] = std::clamp(x_[j], lower_[j], upper_[j]);
    }
    return true;
  }

  bool refactor() {
    std::vector<double> b(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      int cnt;
      const auto* it = col_begin(basic_[i], cnt);
      for (int k = 0; k < cnt; ++k) b[static_cast<size_t>(it[k].first) * m_ + i] = it[k].second;
    }
    if (!lu_.factor(std::move(b), m_)) return false;
    etas_.clear();
    return true;
  }

  void recompute_basics() {
    std::vector<double> r = p_.rhs;
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == kBasic || x_[j] == 0.0) continue;
      int cnt;
      const auto* it = col_begin(j, cnt);
      for (int k = 0; k < cnt; ++k) r[it[k].first] -= it[k].second * x_[j];
    }
    ftran(r);
    for (int i = 0; i < m_; ++i) x_[basic_[i]] = r[i];
  }

  void ftran(std::vector<double>& v) const {
    lu_.ftran(v);
    for (const Eta& e : etas_) {
      double t = v[e.row] / e.d[e.row];
      for (int i = 0; i < m_; ++i) v[i] -= e.d[i] * t;
      v[e.row] = t;
    }
  }

  void btran(std::vector<double>& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = 0.0;
      for (int i = 0; i < m_; ++i)
        if (i != it->row) s += it->d[i] * v[i];
      v[it->row] = (v[it->row] - s) / it->d[it->row];
    }
    lu_.btran(v);
  }

  std::vector<double> btran_costs() const {
    std::vector<double> y(m_);
    for (int i = 0; i < m_; ++i) y[i] = cost_[basic_[i]];
    btran(y);
    return y;
  }

  LpStatus optimize() {
    const long max_pivots = 20000L + 500L * (m_ + n_);
    const long stall_limit = 2L * (m_ + n_) + 100;
    long stall = 0;
    bool bland = false;

    while (true) {
      if (pivots_ >= max_pivots) return LpStatus::kPivotLimit;
      if (static_cast<int>(etas_.size()) >= 64) {
        if (!refactor()) throw MulticutError("simplex internal error: refactor failed");
        recompute_basics();
      }
      std::vector<double> y = btran_costs();

      int q = -1;
      double best = kDualTol;
      for (int j = 0; j < ncols_; ++j) {
        if (state_[j] == kBasic) continue;
        if (lower_[j] == upper_[j]) continue;  // fixed
        double d = cost_[j] - dot_col(j, y);
        double score = 0.0;
        if (state_[j] == kAtLower && d < -kDualTol)
          score = -d;
        else if (state_[j] == kAtUpper && d > kDualTol)
          score = d;
        else
          continue;
        if (bland) {
          q = j;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q == -1) return LpStatus::kOptimal;

      int dir = state_[q] == kAtLower ? 1 : -1;
      std::vector<double> d(m_, 0.0);
      {
        int cnt;
        const auto* it = col_begin(q, cnt);
        for (int k = 0; k < cnt; ++k) d[it[k].first] = it[k].second;
      }
      ftran(d);

      // ratio test: x_basic(t) = x_basic - dir*t*d, x_q moves dir*t from its bound
      double t_best = upper_[q] - lower_[q];  // bound-to-bound swap
      int leave_row = -1;                     // -1 marks the swap
      double leave_abs = 0.0;
      for (int i = 0; i < m_; ++i) {
        double delta = -dir * d[i];
        if (std::abs(delta) <= kPivotTol) continue;
        int bj = basic_[i];
        double limit;
        if (delta < 0.0)
          limit = (x_[bj] - lower_[bj]) / (-delta);
        else if (upper_[bj] < kInf)
          limit = (upper_[bj] - x_[bj]) / delta;
        else
          continue;
        limit = std::max(limit, 0.0);
        bool better;
        if (limit < t_best - 1e-12)
          better = true;
        else if (limit > t_best + 1e-12 || leave_row == -1)
          better = false;  // ties against the bound swap keep the swap
        else if (bland)
          better = basic_[i] < basic_[leave_row];
        else
          better = std::abs(d[i]) > leave_abs;
        if (better) {
          t_best = std::min(limit, t_best);
          leave_row = i;
          leave_abs = std::abs(d[i]);
        }
      }
      if (t_best == kInf) return LpStatus::kUnbounded;

      // apply the step
      for (int i = 0; i < m_; ++i) x_[basic_[i]] -= dir * t_best * d[i];
      x_[q] += dir * t_best;
      ++pivots_;
      stall = t_best <= 1e-12 ? stall + 1 : 0;
      if (stall > stall_limit) bland = true;
      if (t_best > 1e-12 && bland) {
        bland = false;
        stall = 0;
      }

      if (leave_row == -1) {
        state_[q] = dir > 0 ? kAtUpper : kAtLower;
        x_[q] = dir > 0 ? upper_[q] : lower_[q];
      } else {
        int vl = basic_[leave_row];
        double delta = -dir * d[leave_row];
        state_[vl] = delta < 0.0 ? kAtLower : kAtUpper;
        x_[vl] = delta < 0.0 ? lower_[vl] : upper_[vl];
        basic_[leave_row] = q;
        state_[q] = kBasic;
        etas_.push_back({leave_row, std::move(d)});
      }
    }
  }

  struct Eta {
    int row;
    std::vector<double> d;
  };

  const LpProblem& p_;
  int m_ = 0;
  int n_ = 0;
  int ncols_ = 0;
  std::vector<double> lower_, upper_, cost_, x_;
  std::vector<double> art_sign_;
  std::vector<char> state_;
  std::vector<int> basic_;
  DenseLU lu_;
  std::vector<Eta> etas_;
  long pivots_ = 0;
  mutable std::pair<int, double> art_entry_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const std::vector<int>* warm_basis) {
  const int n = static_cast<int>(problem.columns.size());
  if (static_cast<int>(problem.cost.size()) != n ||
      static_cast<int>(problem.lower.size()) != n ||
      static_cast<int>(problem.upper.size()) != n)
    throw MulticutError("lp: cost/bound arrays must match column count");
  if (static_cast<int>(problem.rhs.size()) != problem.num_rows)
    throw MulticutError("lp: rhs size must match row count");
  for (const LpColumn& col : problem.columns)
    for (auto [r, v] : col.entries) {
      (void)v;
      if (r < 0 || r >= problem.num_rows) throw MulticutError("lp: column entry row out of range");
    }
  for (int j = 0; j < n; ++j)
    if (problem.lower[j] > problem.upper[j]) throw MulticutError("lp: crossed bounds");

  Simplex solver(problem, warm_basis);
  return solver.run();
}

}  // namespace multicut
