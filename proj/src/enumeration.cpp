/*
 * Copyright 2026 The levelset Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "levelset/enumeration.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace levelset {

namespace {

using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Window helpers

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Exact comparisons of k against m^(1/d) * q.

// |q| = mant * 2^exp exactly.
void decompose(double q, cpp_int& mant, int& exp) {
  int e = 0;
  double f = std::frexp(std::fabs(q), &e);
  mant = static_cast<std::int64_t>(std::ldexp(f, 53));
  exp = e - 53;
}

// Sign of k^d - m * q^d for k > 0, q > 0.
int compare_power(std::int64_t k, std::int64_t m, unsigned d, double q) {
  cpp_int mant;
  int e = 0;
  decompose(q, mant, e);
  cpp_int lhs = boost::multiprecision::pow(cpp_int(k), d);
  cpp_int rhs = cpp_int(m) * boost::multiprecision::pow(mant, d);
  if (e >= 0) rhs <<= static_cast<unsigned>(e) * d;
  else lhs <<= static_cast<unsigned>(-e) * d;
  return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

// k <= m^(1/d) * q
bool at_most_scaled(std::int64_t k, std::int64_t m, unsigned d, double q) {
  if (q == 0.0) return k <= 0;
  if (q > 0.0) return k <= 0 || compare_power(k, m, d, q) <= 0;
  if (k >= 0) return false;
  // -k >= m^(1/d) * (-q)
  return compare_power(-k, m, d, -q) >= 0;
}

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 62;

// ---------------------------------------------------------------------------
// Parallel driver: split [lo, hi] of the outermost coordinate into contiguous
// chunks, run `scan(chunk_lo, chunk_hi, out)` for each and concatenate.

template <typename Scan>
std::vector<AmbientPoint> run_partitioned(std::int64_t lo, std::int64_t hi, unsigned threads, Scan scan) {
  std::vector<AmbientPoint> merged;
  if (lo > hi) return merged;
  const std::int64_t width = hi - lo + 1;
  const std::int64_t parts = std::max<std::int64_t>(1, std::min<std::int64_t>(threads, width));
  if (parts == 1) {
    scan(lo, hi, merged);
    return merged;
  }
  std::vector<std::vector<AmbientPoint>> results(static_cast<std::size_t>(parts));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(parts));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(parts));
  for (std::int64_t p = 0; p < parts; ++p) {
    const std::int64_t a = lo + width * p / parts;
    const std::int64_t b = lo + width * (p + 1) / parts - 1;
    workers.emplace_back([&, p, a, b] {
      try {
        scan(a, b, results[static_cast<std::size_t>(p)]);
      } catch (...) {
        errors[static_cast<std::size_t>(p)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& r : results) {
    merged.insert(merged.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  return merged;
}

void sort_unique_checked(std::vector<AmbientPoint>& points) {
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw std::logic_error("enumeration produced a duplicate point");
  }
}

std::int64_t max_abs(const IntegerBox& box) {
  std::int64_t out = 0;
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    out = std::max({out, box.lo[i] < 0 ? -box.lo[i] : box.lo[i], box.hi[i] < 0 ? -box.hi[i] : box.hi[i]});
  }
  return out;
}

void check_budget(long double candidates, long double budget, const IntegerBox& box, const char* what) {
  if (candidates > budget) {
    std::ostringstream msg;
    msg << what << ": " << static_cast<double>(candidates) << " candidate tuples exceed the budget of "
        << static_cast<double>(budget) << " (integer box volume " << static_cast<double>(box.volume()) << ")";
    throw BudgetError(msg.str());
  }
}

// ---------------------------------------------------------------------------
// Determinant, n = 2: X = [[a, b], [c, d]], a d = m + b c.

void scan_det2(std::int64_t m, const IntegerBox& box, std::int64_t a_lo, std::int64_t a_hi,
               std::vector<AmbientPoint>& out) {
  const std::int64_t d_lo = box.lo[3], d_hi = box.hi[3];
  for (std::int64_t a = a_lo; a <= a_hi; ++a) {
    for (std::int64_t b = box.lo[1]; b <= box.hi[1]; ++b) {
      for (std::int64_t c = box.lo[2]; c <= box.hi[2]; ++c) {
        const std::int64_t num = m + b * c;
        if (a != 0) {
          if (num % a != 0) continue;
          const std::int64_t d = num / a;
          if (d >= d_lo && d <= d_hi) out.push_back({a, b, c, d});
        } else if (num == 0) {
          for (std::int64_t d = d_lo; d <= d_hi; ++d) out.push_back({a, b, c, d});
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Determinant, n >= 3: fill the first n-1 rows with rank pruning, then the
// determinant is the linear form sum_j C_j x_j in the last row.

class DetBacktrack {
 public:
  DetBacktrack(int n, std::int64_t m, const IntegerBox& box, std::vector<AmbientPoint>& out)
      : n_(static_cast<std::size_t>(n)), m_(m), box_(box), out_(out), x_(n_ * n_, 0), cof_(n_, 0) {}

  void run(std::int64_t first_lo, std::int64_t first_hi) {
    for (std::int64_t v = first_lo; v <= first_hi; ++v) {
      x_[0] = v;
      fill(1);
    }
  }

 private:
  bool rows_independent(std::size_t rows) const {
    IntMatrix partial(rows, n_);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n_; ++j) partial(i, j) = x_[i * n_ + j];
    return rank(partial) == rows;
  }

  void fill(std::size_t pos) {
    const std::size_t prefix = n_ * (n_ - 1);
    if (pos % n_ == 0 && !rows_independent(pos / n_)) return;
    if (pos == prefix) {
      compute_cofactors();
      last_row(0, 0);
      return;
    }
    for (std::int64_t v = box_.lo[pos]; v <= box_.hi[pos]; ++v) {
      x_[pos] = v;
      fill(pos + 1);
    }
  }

  void compute_cofactors() {
    const std::size_t k = n_ - 1;
    IntMatrix minor(k, k);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t c = 0;
        for (std::size_t col = 0; col < n_; ++col) {
          if (col == j) continue;
          minor(i, c++) = x_[i * n_ + col];
        }
      }
      Int det = determinant(minor);
      cof_[j] = ((k + j) % 2 == 0) ? det : checked_neg(det);
    }
  }

  void last_row(std::size_t j, Int partial) {
    const std::size_t base = n_ * (n_ - 1);
    if (j + 1 == n_) {
      const std::size_t pos = base + j;
      const Int rem = checked_sub(m_, partial);
      const Int c = cof_[j];
      if (c != 0) {
        if (rem % c != 0) return;
        const Int v = rem / c;
        if (v < box_.lo[pos] || v > box_.hi[pos]) return;
        x_[pos] = static_cast<std::int64_t>(v);
        out_.push_back(x_);
      } else if (rem == 0) {
        for (std::int64_t v = box_.lo[pos]; v <= box_.hi[pos]; ++v) {
          x_[pos] = v;
          out_.push_back(x_);
        }
      }
      return;
    }
    const std::size_t pos = base + j;
    for (std::int64_t v = box_.lo[pos]; v <= box_.hi[pos]; ++v) {
      x_[pos] = v;
      last_row(j + 1, checked_add(partial, checked_mul(cof_[j], v)));
    }
  }

  std::size_t n_;
  std::int64_t m_;
  const IntegerBox& box_;
  std::vector<AmbientPoint>& out_;
  AmbientPoint x_;
  std::vector<Int> cof_;
};

// ---------------------------------------------------------------------------
// Pfaffian, n = 2. Coordinates (x12, x13, x14, x23, x24, x34) and
// Pff = -x12 x34 + x13 x24 - x14 x23, so x12 * x34 = x13 x24 - x14 x23 - m.

void scan_pff2(std::int64_t m, const IntegerBox& box, std::int64_t lo13, std::int64_t hi13,
               std::vector<AmbientPoint>& out) {
  const std::int64_t lo12 = box.lo[0], hi12 = box.hi[0];
  const std::int64_t lo34 = box.lo[5], hi34 = box.hi[5];
  const bool iterate_12 = (hi12 - lo12) <= (hi34 - lo34);
  for (std::int64_t x13 = lo13; x13 <= hi13; ++x13)
    for (std::int64_t x14 = box.lo[2]; x14 <= box.hi[2]; ++x14)
      for (std::int64_t x23 = box.lo[3]; x23 <= box.hi[3]; ++x23)
        for (std::int64_t x24 = box.lo[4]; x24 <= box.hi[4]; ++x24) {
          const std::int64_t r = x13 * x24 - x14 * x23 - m;
          if (r == 0) {
            if (lo12 <= 0 && 0 <= hi12)
              for (std::int64_t x34 = lo34; x34 <= hi34; ++x34) out.push_back({0, x13, x14, x23, x24, x34});
            if (lo34 <= 0 && 0 <= hi34)
              for (std::int64_t x12 = lo12; x12 <= hi12; ++x12)
                if (x12 != 0) out.push_back({x12, x13, x14, x23, x24, 0});
            continue;
          }
          if (iterate_12) {
            for (std::int64_t x12 = lo12; x12 <= hi12; ++x12) {
              if (x12 == 0 || r % x12 != 0) continue;
              const std::int64_t x34 = r / x12;
              if (x34 >= lo34 && x34 <= hi34) out.push_back({x12, x13, x14, x23, x24, x34});
            }
          } else {
            for (std::int64_t x34 = lo34; x34 <= hi34; ++x34) {
              if (x34 == 0 || r % x34 != 0) continue;
              const std::int64_t x12 = r / x34;
              if (x12 >= lo12 && x12 <= hi12) out.push_back({x12, x13, x14, x23, x24, x34});
            }
          }
        }
}

// ---------------------------------------------------------------------------
// Families affine in their last coordinate (Det, Pff): f = A + B * x_last.

void scan_affine_last(const PolynomialFamily& family, std::int64_t m, const IntegerBox& box,
                      std::int64_t first_lo, std::int64_t first_hi, std::vector<AmbientPoint>& out) {
  const std::size_t dim = family.dimension();
  const std::size_t last = dim - 1;
  AmbientPoint x(dim, 0);
  for (std::size_t i = 0; i < last; ++i) x[i] = box.lo[i];
  x[0] = first_lo;
  if (first_lo > first_hi) return;
  while (true) {
    x[last] = 0;
    const Int a = eval(family, x);
    x[last] = 1;
    const Int b = checked_sub(eval(family, x), a);
    const Int rem = checked_sub(m, a);
    if (b != 0) {
      if (rem % b == 0) {
        const Int v = rem / b;
        if (v >= box.lo[last] && v <= box.hi[last]) {
          x[last] = static_cast<std::int64_t>(v);
          out.push_back(x);
        }
      }
    } else if (rem == 0) {
      for (std::int64_t v = box.lo[last]; v <= box.hi[last]; ++v) {
        x[last] = v;
        out.push_back(x);
      }
    }
    // Odometer over coordinates 0..last-1 (coordinate 0 restricted to the chunk).
    std::size_t k = last;
    while (k > 0) {
      --k;
      const std::int64_t hi = (k == 0) ? first_hi : box.hi[k];
      const std::int64_t lo = (k == 0) ? first_lo : box.lo[k];
      if (x[k] < hi) {
        ++x[k];
        break;
      }
      x[k] = lo;
      if (k == 0) return;
    }
    if (last == 0) return;
  }
}

// ---------------------------------------------------------------------------
// Quadratic: iterate all coordinates but a target t with q_tt != 0, then solve
// q_tt y^2 + b y + (c - m) = 0 for integer y.

struct QuadPlan {
  std::vector<std::size_t> order;  // prefix coordinates in iteration order, then the target
  std::vector<std::int64_t> q;     // full symmetric coefficient table, q[i*N+j] = q_ij for i<=j mirrored
  std::size_t dim = 0;
  std::size_t target = 0;

  std::int64_t coeff(std::size_t i, std::size_t j) const { return q[i * dim + j]; }
};

// Choose the target coordinate: the last one if its square coefficient is
// nonzero, else the first coordinate whose square coefficient is nonzero.
bool make_quad_plan(const PolynomialFamily& family, QuadPlan& plan) {
  const std::size_t dim = family.dimension();
  plan.dim = dim;
  plan.q.assign(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      plan.q[i * dim + j] = family.quad_coeff(i, j);
      plan.q[j * dim + i] = family.quad_coeff(i, j);
    }
  std::size_t target = dim;
  if (family.quad_coeff(dim - 1, dim - 1) != 0) {
    target = dim - 1;
  } else {
    for (std::size_t j = 0; j < dim; ++j)
      if (family.quad_coeff(j, j) != 0) {
        target = j;
        break;
      }
  }
  if (target == dim) return false;
  plan.target = target;
  plan.order.clear();
  for (std::size_t j = 0; j < dim; ++j)
    if (j != target) plan.order.push_back(j);
  plan.order.push_back(target);
  return true;
}

inline std::int64_t isqrt64(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

template <typename T>
class QuadScan {
 public:
  QuadScan(const QuadPlan& plan, std::int64_t m, const IntegerBox& box, std::vector<AmbientPoint>& out)
      : plan_(plan), m_(m), box_(box), out_(out), x_(plan.dim, 0) {}

  void run(std::int64_t first_lo, std::int64_t first_hi) { level(0, first_lo, first_hi, T(0), T(0)); }

 private:
  // c: value of Q on the fixed prefix; b: coefficient of y (cross terms with the target).
  void level(std::size_t k, std::int64_t lo, std::int64_t hi, T c, T b) {
    const std::size_t idx = plan_.order[k];
    const std::size_t t = plan_.target;
    const T diag = plan_.coeff(idx, idx);
    T cross = 0;
    for (std::size_t l = 0; l < k; ++l) {
      const std::size_t j = plan_.order[l];
      cross += T(plan_.coeff(j, idx)) * T(x_[j]);
    }
    const T bt = plan_.coeff(idx, t);
    const bool innermost = (k + 2 == plan_.order.size());
    for (std::int64_t v = lo; v <= hi; ++v) {
      x_[idx] = v;
      const T tv = T(v);
      const T c2 = c + tv * (diag * tv + cross);
      const T b2 = b + bt * tv;
      if (innermost) {
        solve(c2, b2);
      } else {
        const std::size_t next = plan_.order[k + 1];
        level(k + 1, box_.lo[next], box_.hi[next], c2, b2);
      }
    }
  }

  void solve(T c, T b) {
    const std::size_t t = plan_.target;
    const T a = plan_.coeff(t, t);
    const T disc = b * b - T(4) * a * (c - T(m_));
    if (disc < 0) return;
    T root;
    if constexpr (std::is_same_v<T, std::int64_t>) {
      root = isqrt64(disc);
    } else {
      root = isqrt(disc);
    }
    if (root * root != disc) return;
    const T denom = T(2) * a;
    emit_if_integral(-b + root, denom);
    if (root != 0) emit_if_integral(-b - root, denom);
  }

  void emit_if_integral(T num, T denom) {
    if (num % denom != 0) return;
    const T y = num / denom;
    const std::size_t t = plan_.target;
    if (y < T(box_.lo[t]) || y > T(box_.hi[t])) return;
    x_[t] = static_cast<std::int64_t>(y);
    out_.push_back(x_);
  }

  const QuadPlan& plan_;
  std::int64_t m_;
  const IntegerBox& box_;
  std::vector<AmbientPoint>& out_;
  AmbientPoint x_;
};

// Bound on |b^2 - 4 a (c - m)| over the box, used to pick a safe integer width.
long double quad_discriminant_bound(const QuadPlan& plan, std::int64_t m, const IntegerBox& box) {
  const std::size_t dim = plan.dim;
  std::vector<long double> mag(dim);
  for (std::size_t i = 0; i < dim; ++i)
    mag[i] = std::max(std::fabs(static_cast<long double>(box.lo[i])), std::fabs(static_cast<long double>(box.hi[i])));
  long double qmax = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) qmax += std::fabs(static_cast<long double>(plan.coeff(i, j))) * mag[i] * mag[j];
  long double bmax = 0;
  for (std::size_t i = 0; i < dim; ++i) bmax += std::fabs(static_cast<long double>(plan.coeff(i, plan.target))) * mag[i];
  const long double a = std::fabs(static_cast<long double>(plan.coeff(plan.target, plan.target)));
  return bmax * bmax + 4 * a * (qmax + static_cast<long double>(m)) + 4 * a * a * mag[plan.target] * mag[plan.target];
}

// ---------------------------------------------------------------------------
// Quadratic forms without cross terms between two coordinate groups S and T:
// Q = Q_S(x_S) + Q_T(x_T). Tabulate Q_S over its box, then look up m - Q_T.

struct SplitPlan {
  std::vector<std::size_t> left, right;  // S and T, each increasing
};

// Connected components of the cross-term graph, merged into two groups whose
// box volumes are as balanced as possible. False when the graph is connected.
bool make_split_plan(const QuadPlan& plan, const IntegerBox& box, SplitPlan& split) {
  const std::size_t dim = plan.dim;
  std::vector<std::size_t> comp(dim, dim);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < dim; ++s) {
    if (comp[s] != dim) continue;
    comps.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = comps.size() - 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      comps.back().push_back(i);
      for (std::size_t j = 0; j < dim; ++j)
        if (j != i && plan.coeff(i, j) != 0 && comp[j] == dim) {
          comp[j] = comps.size() - 1;
          stack.push_back(j);
        }
    }
  }
  if (comps.size() < 2) return false;
  std::vector<long double> logv(comps.size(), 0.0L);
  long double total = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (auto i : comps[c]) logv[c] += std::log(static_cast<long double>(box.hi[i] - box.lo[i] + 1));
    total += logv[c];
  }
  // Few components in practice; try every nonempty proper subset.
  if (comps.size() > 16) return false;
  long double best = std::numeric_limits<long double>::infinity();
  std::uint32_t best_mask = 0;
  const std::uint32_t full = (std::uint32_t{1} << comps.size()) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    long double l = 0;
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (mask >> c & 1u) l += logv[c];
    const long double cost = std::max(l, total - l);
    if (cost < best) {
      best = cost;
      best_mask = mask;
    }
  }
  split.left.clear();
  split.right.clear();
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (auto i : comps[c]) ((best_mask >> c & 1u) ? split.left : split.right).push_back(i);
  std::sort(split.left.begin(), split.left.end());
  std::sort(split.right.begin(), split.right.end());
  return true;
}

long double group_volume(const std::vector<std::size_t>& group, const IntegerBox& box) {
  long double v = 1;
  for (auto i : group) v *= static_cast<long double>(box.hi[i] - box.lo[i] + 1);
  return v;
}

// Visits every point of the group box; the first coordinate is limited to [first_lo, first_hi].
template <typename Visit>
void for_each_in_group(const std::vector<std::size_t>& group, const IntegerBox& box, std::int64_t first_lo,
                       std::int64_t first_hi, Visit visit) {
  if (first_lo > first_hi) return;
  std::vector<std::int64_t> v(group.size());
  for (std::size_t k = 0; k < group.size(); ++k) v[k] = box.lo[group[k]];
  v[0] = first_lo;
  while (true) {
    visit(v);
    std::size_t k = group.size();
    while (true) {
      if (k == 0) return;
      --k;
      const std::int64_t lo = k == 0 ? first_lo : box.lo[group[k]];
      const std::int64_t hi = k == 0 ? first_hi : box.hi[group[k]];
      if (v[k] < hi) {
        ++v[k];
        break;
      }
      v[k] = lo;
    }
  }
}

std::int64_t group_value(const QuadPlan& plan, const std::vector<std::size_t>& group, const std::vector<std::int64_t>& v) {
  std::int64_t q = 0;
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t b = a; b < group.size(); ++b) q += plan.coeff(group[a], group[b]) * v[a] * v[b];
  return q;
}

// Bound on |Q_S| + |Q_T| + m over the box.
long double split_value_bound(const QuadPlan& plan, std::int64_t m, const IntegerBox& box) {
  long double total = static_cast<long double>(m);
  for (std::size_t i = 0; i < plan.dim; ++i) {
    const long double mi = std::max(std::fabs(static_cast<long double>(box.lo[i])), std::fabs(static_cast<long double>(box.hi[i])));
    for (std::size_t j = i; j < plan.dim; ++j) {
      const long double mj = std::max(std::fabs(static_cast<long double>(box.lo[j])), std::fabs(static_cast<long double>(box.hi[j])));
      total += std::fabs(static_cast<long double>(plan.coeff(i, j))) * mi * mj;
    }
  }
  return total;
}

std::vector<AmbientPoint> scan_quad_split(const QuadPlan& plan, const SplitPlan& split, std::int64_t m,
                                          const IntegerBox& box, unsigned threads) {
  // Table of (Q_S value, x_S), sorted by value then point.
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> table;
  for_each_in_group(split.left, box, box.lo[split.left[0]], box.hi[split.left[0]],
                    [&](const std::vector<std::int64_t>& v) { table.emplace_back(group_value(plan, split.left, v), v); });
  std::sort(table.begin(), table.end());
  const std::size_t first = split.right[0];
  return run_partitioned(box.lo[first], box.hi[first], threads,
                         [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                           AmbientPoint x(plan.dim, 0);
                           for_each_in_group(split.right, box, a, b, [&](const std::vector<std::int64_t>& v) {
                             const std::int64_t want = m - group_value(plan, split.right, v);
                             auto it = std::lower_bound(table.begin(), table.end(), want,
                                                        [](const auto& e, std::int64_t w) { return e.first < w; });
                             if (it == table.end() || it->first != want) return;
                             for (std::size_t k = 0; k < split.right.size(); ++k) x[split.right[k]] = v[k];
                             for (; it != table.end() && it->first == want; ++it) {
                               for (std::size_t k = 0; k < split.left.size(); ++k) x[split.left[k]] = it->second[k];
                               out.push_back(x);
                             }
                           });
                         });
}

// ---------------------------------------------------------------------------
// Brute force odometer over the scaled box.

void scan_brute(const PolynomialFamily& family, std::int64_t m, const IntegerBox& box, std::int64_t first_lo,
                std::int64_t first_hi, std::vector<AmbientPoint>& out) {
  const std::size_t dim = family.dimension();
  if (first_lo > first_hi) return;
  AmbientPoint x(box.lo);
  x[0] = first_lo;
  while (true) {
    if (eval(family, x) == m) out.push_back(x);
    std::size_t k = dim;
    while (true) {
      if (k == 0) return;
      --k;
      const std::int64_t hi = (k == 0) ? first_hi : box.hi[k];
      const std::int64_t lo = (k == 0) ? first_lo : box.lo[k];
      if (x[k] < hi) {
        ++x[k];
        break;
      }
      x[k] = lo;
    }
  }
}

void validate_inputs(const PolynomialFamily& family, std::int64_t m, const Window& window) {
  if (m < 1) throw ArgumentError("level m must be >= 1, got " + std::to_string(m));
  if (window.dimension() != family.dimension()) {
    std::ostringstream msg;
    msg << "window has " << window.dimension() << " axes but " << family.key() << " has dimension "
        << family.dimension();
    throw DimensionError(msg.str());
  }
}

PointSet brute_force_impl(const PolynomialFamily& family, std::int64_t m, const Window& window,
                          const IntegerBox& box, const EnumerationOptions& options, bool fallback) {
  PointSet result{family, m, window};
  result.strategy = fallback ? "bruteforce-fallback" : "bruteforce";
  result.fallback = fallback;
  if (box.empty()) return result;
  if (box.volume() > options.brute_budget) {
    std::ostringstream msg;
    msg << "brute-force enumeration: integer box volume " << static_cast<double>(box.volume())
        << " exceeds the budget of " << static_cast<double>(options.brute_budget);
    throw BudgetError(msg.str());
  }
  result.points = run_partitioned(box.lo[0], box.hi[0], options.threads,
                                  [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                                    scan_brute(family, m, box, a, b, out);
                                  });
  sort_unique_checked(result.points);
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Window

Window::Window(std::vector<std::pair<double, double>> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) throw ArgumentError("window needs at least one axis");
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    const auto [lo, hi] = bounds_[i];
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw ArgumentError("window axis " + std::to_string(i) + " has a non-finite bound");
    }
    if (!(lo < hi)) throw ArgumentError("window axis " + std::to_string(i) + " needs lo < hi");
  }
}

Window Window::cube(std::size_t dimension, double radius) {
  return Window(std::vector<std::pair<double, double>>(dimension, {-radius, radius}));
}

bool Window::contains(std::span<const double> point) const {
  if (point.size() != bounds_.size()) throw DimensionError("point and window dimensions differ");
  for (std::size_t i = 0; i < point.size(); ++i)
    if (point[i] < bounds_[i].first || point[i] > bounds_[i].second) return false;
  return true;
}

double Window::volume() const {
  double v = 1.0;
  for (const auto& [lo, hi] : bounds_) v *= hi - lo;
  return v;
}

std::string Window::canonical_text() const {
  std::string out;
  for (const auto& [lo, hi] : bounds_) {
    out += hex_double(lo);
    out += ' ';
    out += hex_double(hi);
    out += '\n';
  }
  return out;
}

std::uint64_t Window::hash() const { return fnv1a(canonical_text()); }

std::string Window::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

Window Window::parse(std::istream& in) {
  std::vector<std::pair<double, double>> bounds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string lo_text, hi_text, extra;
    if (!(fields >> lo_text >> hi_text) || (fields >> extra)) {
      throw ArgumentError("window line " + std::to_string(line_no) + ": expected 'lo hi'");
    }
    auto parse_double = [&](const std::string& text) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ArgumentError("window line " + std::to_string(line_no) + ": bad number '" + text + "'");
      }
      return v;
    };
    bounds.emplace_back(parse_double(lo_text), parse_double(hi_text));
  }
  return Window(std::move(bounds));
}

Window Window::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open window file '" + path + "'");
  return parse(in);
}

void Window::write(std::ostream& out) const {
  auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& [lo, hi] : bounds_) out << lo << ' ' << hi << '\n';
  out.precision(old);
}

// ---------------------------------------------------------------------------
// Integer boxes

bool IntegerBox::empty() const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return true;
  return lo.empty();
}

long double IntegerBox::volume() const {
  if (empty()) return 0;
  long double v = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= static_cast<long double>(hi[i] - lo[i]) + 1;
  return v;
}

long double IntegerBox::volume_without(std::size_t axis) const {
  if (empty()) return 0;
  long double v = 1;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (i != axis) v *= static_cast<long double>(hi[i] - lo[i]) + 1;
  return v;
}

std::int64_t scaled_floor(std::int64_t m, unsigned d, double q) {
  if (m < 1 || d == 0) throw ArgumentError("scaled_floor needs m >= 1 and d >= 1");
  const long double estimate = std::floor(std::pow(static_cast<long double>(m), 1.0L / d) * q);
  if (std::fabs(estimate) > static_cast<long double>(kCoordLimit)) {
    throw OverflowError("scaled window bound exceeds the 62-bit coordinate range");
  }
  auto k = static_cast<std::int64_t>(estimate);
  while (!at_most_scaled(k, m, d, q)) --k;
  while (at_most_scaled(k + 1, m, d, q)) ++k;
  return k;
}

std::int64_t scaled_ceil(std::int64_t m, unsigned d, double q) { return -scaled_floor(m, d, -q); }

IntegerBox scaled_integer_box(const PolynomialFamily& family, std::int64_t m, const Window& window) {
  if (window.dimension() != family.dimension()) throw DimensionError("window and family dimensions differ");
  IntegerBox box;
  box.lo.reserve(window.dimension());
  box.hi.reserve(window.dimension());
  for (std::size_t i = 0; i < window.dimension(); ++i) {
    box.lo.push_back(scaled_ceil(m, family.degree(), window.lo(i)));
    box.hi.push_back(scaled_floor(m, family.degree(), window.hi(i)));
  }
  return box;
}

bool projection_in_window(const PolynomialFamily& family, std::int64_t m, const Window& window,
                          std::span<const std::int64_t> x) {
  const IntegerBox box = scaled_integer_box(family, m, window);
  if (x.size() != box.lo.size()) throw DimensionError("point and window dimensions differ");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < box.lo[i] || x[i] > box.hi[i]) return false;
  return true;
}

bool PointSet::same_content(const PointSet& other) const {
  return family == other.family && m == other.m && window == other.window && version == other.version &&
         points == other.points;
}

// ---------------------------------------------------------------------------
// Entry points

PointSet enumerate_points(const PolynomialFamily& family, std::int64_t m, const Window& window,
                          const EnumerationOptions& options) {
  validate_inputs(family, m, window);
  const IntegerBox box = scaled_integer_box(family, m, window);
  PointSet result{family, m, window};
  if (box.empty()) {
    result.strategy = "empty";
    return result;
  }
  const unsigned threads = std::max(1u, options.threads);
  const std::int64_t reach = max_abs(box);

  auto affine = [&](const char* name) {
    const std::size_t last = family.dimension() - 1;
    check_budget(box.volume_without(last), options.budget, box, name);
    result.strategy = "affine-last";
    result.points = run_partitioned(box.lo[0], box.hi[0], threads,
                                    [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                                      scan_affine_last(family, m, box, a, b, out);
                                    });
  };

  switch (family.kind()) {
    case FamilyKind::Determinant: {
      if (family.n() == 2 && reach <= (std::int64_t{1} << 30) && m <= (std::int64_t{1} << 60)) {
        check_budget(box.volume_without(3), options.budget, box, "det n=2 enumeration");
        result.strategy = "det2-divisor";
        result.points = run_partitioned(box.lo[0], box.hi[0], threads,
                                        [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                                          scan_det2(m, box, a, b, out);
                                        });
      } else if (family.n() >= 3) {
        const std::size_t last = family.dimension() - 1;
        check_budget(box.volume_without(last), options.budget, box, "det backtracking enumeration");
        result.strategy = "det-backtrack";
        result.points = run_partitioned(box.lo[0], box.hi[0], threads,
                                        [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                                          DetBacktrack(family.n(), m, box, out).run(a, b);
                                        });
      } else {
        affine("det n=2 enumeration (wide box)");
      }
      break;
    }
    case FamilyKind::Pfaffian: {
      if (family.n() == 2 && reach <= (std::int64_t{1} << 30) && m <= (std::int64_t{1} << 60)) {
        const long double inner = std::min(box.hi[0] - box.lo[0], box.hi[5] - box.lo[5]) + 1.0L;
        const long double outer = box.volume() / ((box.hi[0] - box.lo[0] + 1.0L) * (box.hi[5] - box.lo[5] + 1.0L));
        check_budget(outer * inner, options.budget, box, "pff n=2 enumeration");
        result.strategy = "pff2-divisor";
        result.points = run_partitioned(box.lo[1], box.hi[1], threads,
                                        [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                                          scan_pff2(m, box, a, b, out);
                                        });
      } else {
        affine("pff enumeration");
      }
      break;
    }
    case FamilyKind::Quadratic: {
      QuadPlan plan;
      if (family.dimension() < 2 || !make_quad_plan(family, plan)) {
        return brute_force_impl(family, m, window, box, options, true);
      }
      SplitPlan split;
      if (make_split_plan(plan, box, split) && split_value_bound(plan, m, box) < 0x1.0p62L) {
        const long double cost = group_volume(split.left, box) + group_volume(split.right, box);
        if (cost < box.volume_without(plan.target)) {
          check_budget(cost, options.budget, box, "quadratic enumeration");
          result.strategy = "quad-split";
          result.points = scan_quad_split(plan, split, m, box, threads);
          break;
        }
      }
      check_budget(box.volume_without(plan.target), options.budget, box, "quadratic enumeration");
      const long double bound = quad_discriminant_bound(plan, m, box);
      const std::size_t first = plan.order[0];
      result.strategy = "quad-solve";
      if (bound < 0x1.0p62L) {
        result.points = run_partitioned(box.lo[first], box.hi[first], threads,
                                        [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                                          QuadScan<std::int64_t>(plan, m, box, out).run(a, b);
                                        });
      } else if (bound < 0x1.0p124L) {
        result.points = run_partitioned(box.lo[first], box.hi[first], threads,
                                        [&](std::int64_t a, std::int64_t b, std::vector<AmbientPoint>& out) {
                                          QuadScan<Int>(plan, m, box, out).run(a, b);
                                        });
      } else {
        throw OverflowError("quadratic enumeration would exceed 128-bit arithmetic");
      }
      break;
    }
  }
  sort_unique_checked(result.points);
  return result;
}

PointSet enumerate_bruteforce(const PolynomialFamily& family, std::int64_t m, const Window& window,
                              const EnumerationOptions& options) {
  validate_inputs(family, m, window);
  const IntegerBox box = scaled_integer_box(family, m, window);
  EnumerationOptions opts = options;
  opts.threads = std::max(1u, options.threads);
  return brute_force_impl(family, m, window, box, opts, false);
}

std::uint64_t count_points(const PolynomialFamily& family, std::int64_t m, const Window& window,
                           const EnumerationOptions& options) {
  return enumerate_points(family, m, window, options).size();
}

}  // namespace levelset
