#include "ustad/oracle/simplex.hpp"

namespace ustad {
namespace {

// Dense exact tableau. Rows 0..m-1 keep the constraint system solved for the
// basis; row m keeps reduced costs, with -objective in the rhs corner.
struct Tableau {
  int m = 0;
  int ncols = 0;  // structural + slack + artificial columns, rhs excluded
  std::vector<std::vector<Rational>> t;  // (m + 1) x (ncols + 1)
  std::vector<int> basis;                // basic column per row

  Rational& at(int r, int c) { return t[r][c]; }
  Rational& rhs(int r) { return t[r][ncols]; }

  void pivot(int prow, int pcol) {
    const Rational piv = t[prow][pcol];
    for (auto& x : t[prow]) x /= piv;
    for (int r = 0; r <= m; ++r) {
      if (r == prow) continue;
      const Rational f = t[r][pcol];
      if (f == 0) continue;
      for (int c = 0; c <= ncols; ++c) t[r][c] -= f * t[prow][c];
    }
    basis[prow] = pcol;
  }

  // Smallest-index entering rule, min-ratio with smallest basic index ties.
  // Returns false at optimality; throws nothing; sets *unbounded.
  bool step(const std::vector<bool>& allowed, bool* unbounded) {
    int enter = -1;
    for (int c = 0; c < ncols; ++c) {
      if (!allowed[c]) continue;
      if (t[m][c] < 0) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Rational best;
    for (int r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = rhs(r) / t[r][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave < 0) {
      *unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpResult lp_minimize(const std::vector<std::vector<Rational>>& A,
                     const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != n)
      throw DimensionError("lp_minimize: ragged constraint matrix");
  if (static_cast<int>(b.size()) != m)
    throw DimensionError("lp_minimize: rhs size mismatch");

  // Columns: p_0..p_{n-1}, q_0..q_{n-1} (v = p - q), s_0..s_{m-1}, artificials.
  std::vector<int> art_of_row(m, -1);
  int nart = 0;
  for (int r = 0; r < m; ++r)
    if (b[r] < 0) art_of_row[r] = nart++;
  const int scol = 2 * n;
  const int acol = 2 * n + m;

  Tableau tb;
  tb.m = m;
  tb.ncols = 2 * n + m + nart;
  tb.t.assign(m + 1, std::vector<Rational>(tb.ncols + 1, Rational(0)));
  tb.basis.assign(m, -1);

  for (int r = 0; r < m; ++r) {
    const bool neg = b[r] < 0;
    const Rational sgn = neg ? Rational(-1) : Rational(1);
    for (int j = 0; j < n; ++j) {
      tb.at(r, j) = sgn * A[r][j];
      tb.at(r, n + j) = -sgn * A[r][j];
    }
    tb.at(r, scol + r) = sgn;
    tb.rhs(r) = sgn * b[r];
    if (neg) {
      tb.at(r, acol + art_of_row[r]) = 1;
      tb.basis[r] = acol + art_of_row[r];
    } else {
      tb.basis[r] = scol + r;
    }
  }

  std::vector<bool> allowed(tb.ncols, true);

  if (nart > 0) {
    // Phase 1: price the artificial-cost row out against the initial basis.
    for (int r = 0; r < m; ++r) {
      if (art_of_row[r] < 0) continue;
      for (int cidx = 0; cidx <= tb.ncols; ++cidx)
        tb.at(m, cidx) -= tb.at(r, cidx);
      tb.at(m, acol + art_of_row[r]) += 1;
    }
    bool unbounded = false;
    while (tb.step(allowed, &unbounded)) {
    }
    if (tb.rhs(m) < 0) return {LpStatus::infeasible, Rational(0), {}};

    // Evict zero-level artificials from the basis; redundant rows pivot on
    // nothing and are harmless afterwards since their rhs is zero.
    for (int r = 0; r < m; ++r) {
      if (tb.basis[r] < acol) continue;
      for (int cidx = 0; cidx < acol; ++cidx) {
        if (tb.at(r, cidx) != 0) {
          tb.pivot(r, cidx);
          break;
        }
      }
    }
    for (int cidx = acol; cidx < tb.ncols; ++cidx) allowed[cidx] = false;
  }

  // Phase 2 cost row, rebuilt from scratch against the current basis.
  for (int cidx = 0; cidx <= tb.ncols; ++cidx) tb.at(m, cidx) = 0;
  for (int j = 0; j < n; ++j) {
    tb.at(m, j) = c[j];
    tb.at(m, n + j) = -c[j];
  }
  for (int r = 0; r < m; ++r) {
    const int bc = tb.basis[r];
    Rational cb(0);
    if (bc < n)
      cb = c[bc];
    else if (bc < 2 * n)
      cb = -c[bc - n];
    if (cb == 0) continue;
    for (int cidx = 0; cidx <= tb.ncols; ++cidx)
      tb.at(m, cidx) -= cb * tb.at(r, cidx);
  }

  bool unbounded = false;
  while (tb.step(allowed, &unbounded)) {
  }
  if (unbounded) return {LpStatus::unbounded, Rational(0), {}};

  LpResult res;
  res.status = LpStatus::optimal;
  res.value = -tb.rhs(m);
  res.point.assign(n, Rational(0));
  std::vector<Rational> col_value(tb.ncols, Rational(0));
  for (int r = 0; r < m; ++r)
    if (tb.basis[r] >= 0) col_value[tb.basis[r]] = tb.rhs(r);
  for (int j = 0; j < n; ++j) res.point[j] = col_value[j] - col_value[n + j];
  return res;
}

}  // namespace ustad
