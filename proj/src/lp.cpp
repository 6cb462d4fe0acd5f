// Copyright 2026 The pce Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pce/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

namespace pce {

void LinearProgram::add_row(std::vector<double> coefficients, RowSense sense, double b) {
  rows.push_back(std::move(coefficients));
  senses.push_back(sense);
  rhs.push_back(b);
}

namespace {

class Tableau {
 public:
  // m constraint rows plus one objective row; the last column is the rhs.
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_((m + 1) * (n + 1), 0.0), basis_(m) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double& obj(std::size_t c) { return at(m_, c); }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t pr, std::size_t pc) {
    double p = at(pr, pc);
    for (std::size_t c = 0; c <= n_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  // Loads the objective row (maximize w.x) in reduced form for the current basis.
  void set_objective(const std::vector<double>& w) {
    for (std::size_t c = 0; c <= n_; ++c) obj(c) = c < n_ ? -w[c] : 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      double wb = w[basis_[r]];
      if (wb == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) obj(c) += wb * at(r, c);
    }
  }

  // Bland's rule. `allowed` masks columns that may enter.
  LpStatus optimize(const std::vector<bool>& allowed, double eps) {
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t c = 0; c < n_; ++c) {
        if (allowed[c] && obj(c) < -eps) {
          enter = c;
          break;
        }
      }
      if (enter == n_) return LpStatus::kOptimal;
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        double a = at(r, enter);
        if (a <= eps) continue;
        double ratio = rhs(r) / a;
        if (leave == m_ || ratio < best - eps ||
            (ratio <= best + eps && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == m_) return LpStatus::kUnbounded;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    for (std::size_t rr = r; rr < m_; ++rr) {
      for (std::size_t c = 0; c <= n_; ++c) at(rr, c) = at(rr + 1, c);
      if (rr + 1 < m_) basis_[rr] = basis_[rr + 1];
    }
    --m_;
    basis_.pop_back();
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, double eps) {
  const std::size_t nx = lp.objective.size();
  const std::size_t m = lp.rows.size();

  // Normalize to rhs >= 0 and count auxiliary columns.
  std::vector<std::vector<double>> a = lp.rows;
  std::vector<RowSense> sense = lp.senses;
  std::vector<double> b = lp.rhs;
  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    a[r].resize(nx, 0.0);
    if (b[r] < 0) {
      for (double& v : a[r]) v = -v;
      b[r] = -b[r];
      if (sense[r] == RowSense::kLessEqual) sense[r] = RowSense::kGreaterEqual;
      else if (sense[r] == RowSense::kGreaterEqual) sense[r] = RowSense::kLessEqual;
    }
    if (sense[r] != RowSense::kEqual) ++n_slack;
    if (sense[r] != RowSense::kLessEqual) ++n_art;
  }
  const std::size_t n = nx + n_slack + n_art;
  const std::size_t art0 = nx + n_slack;
  Tableau t(m, n);
  std::size_t s = nx, art = art0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < nx; ++c) t.at(r, c) = a[r][c];
    t.rhs(r) = b[r];
    switch (sense[r]) {
      case RowSense::kLessEqual:
        t.at(r, s) = 1.0;
        t.basis(r) = s++;
        break;
      case RowSense::kGreaterEqual:
        t.at(r, s++) = -1.0;
        t.at(r, art) = 1.0;
        t.basis(r) = art++;
        break;
      case RowSense::kEqual:
        t.at(r, art) = 1.0;
        t.basis(r) = art++;
        break;
    }
  }

  LpResult result;
  std::vector<bool> allowed(n, true);
  if (n_art > 0) {
    std::vector<double> w(n, 0.0);
    for (std::size_t c = art0; c < n; ++c) w[c] = -1.0;
    t.set_objective(w);
    t.optimize(allowed, eps);
    double scale = 1.0;
    for (double v : b) scale = std::max(scale, std::fabs(v));
    if (t.obj(n) < -1e-9 * scale) return result;  // infeasible
    // Drive remaining artificials out of the basis.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basis(r) < art0) {
        ++r;
        continue;
      }
      std::size_t pc = art0;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::fabs(t.at(r, c)) > eps) {
          pc = c;
          break;
        }
      }
      if (pc == art0) {
        t.drop_row(r);  // redundant constraint
      } else {
        t.pivot(r, pc);
        ++r;
      }
    }
    for (std::size_t c = art0; c < n; ++c) allowed[c] = false;
  }
  std::vector<double> w(n, 0.0);
  for (std::size_t c = 0; c < nx; ++c) w[c] = lp.objective[c];
  t.set_objective(w);
  LpStatus st = t.optimize(allowed, eps);
  result.status = st;
  if (st != LpStatus::kOptimal) return result;
  result.x.assign(nx, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis(r) < nx) result.x[t.basis(r)] = std::max(0.0, t.rhs(r));
  }
  result.value = 0.0;
  for (std::size_t c = 0; c < nx; ++c) result.value += lp.objective[c] * result.x[c];
  return result;
}

}  // namespace pce
