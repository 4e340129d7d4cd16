#pragma once

// Reference implementations written directly from the definitions, sharing no code with the
// library beyond plain integer types. Slow on purpose; only for small inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace oracle {

using I = long long;

inline bool valid_sequence(const std::vector<I>& delta, I r, I g, I d, I shift = 0) {
  if (static_cast<I>(delta.size()) != g) return false;
  for (I v : delta)
    if (v < 0 || v > r) return false;
  for (I v = 0; v <= r; ++v)
    if (std::count(delta.begin(), delta.end(), v) < shift + r + g - d) return false;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const auto end = delta.begin() + static_cast<long>(i) + 1;
    const auto own = std::count(delta.begin(), end, delta[i]);
    for (I smaller = 0; smaller < delta[i]; ++smaller)
      if (std::count(delta.begin(), end, smaller) < own) return false;
  }
  return true;
}

struct Vanishing {
  // a[j][i], b[j][i] with i 0-based
  std::vector<std::vector<I>> a, b;
};

inline Vanishing vanishing(const std::vector<I>& delta, I r, I d, I shift = 0) {
  const std::size_t g = delta.size();
  Vanishing t;
  t.a.assign(static_cast<std::size_t>(r + 1), std::vector<I>(g));
  t.b = t.a;
  for (I j = 0; j <= r; ++j) {
    I a = shift + j;
    for (std::size_t i = 0; i < g; ++i) {
      const I b = delta[i] == j ? d - a : d - 1 - a;
      t.a[j][i] = a;
      t.b[j][i] = b;
      a = d - b;
    }
  }
  return t;
}

inline std::vector<std::vector<I>> multisets(I r, I m) {
  std::vector<std::vector<I>> out;
  std::vector<I> cur;
  std::function<void(I)> rec = [&](I lo) {
    if (static_cast<I>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (I v = lo; v <= r; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

struct Tensor {
  I g = 0, r = 0, m = 0, d = 0;
  std::vector<I> delta;
  std::vector<std::vector<I>> rows;
  std::vector<std::vector<I>> a, b;  // [row][i]
};

inline Tensor tensor(const std::vector<I>& delta, I r, I d, I m, I shift = 0) {
  const Vanishing v = vanishing(delta, r, d, shift);
  Tensor t;
  t.g = static_cast<I>(delta.size());
  t.r = r;
  t.m = m;
  t.d = d;
  t.delta = delta;
  t.rows = multisets(r, m);
  for (const auto& row : t.rows) {
    std::vector<I> a(delta.size(), 0), b(delta.size(), 0);
    for (I j : row)
      for (std::size_t i = 0; i < delta.size(); ++i) {
        a[i] += v.a[j][i];
        b[i] += v.b[j][i];
      }
    t.a.push_back(a);
    t.b.push_back(b);
  }
  return t;
}

/// w and w_prime hold c_2..c_g.
inline std::vector<bool> epsilon(const std::vector<I>& w_prime, const std::vector<I>& w) {
  const std::size_t g = w.size() + 1;
  std::vector<I> sums(g, 0);
  for (std::size_t i = 1; i <= g; ++i)
    for (std::size_t j = i + 1; j <= g; ++j) sums[i - 1] += w_prime[j - 2] - w[j - 2];
  const I low = *std::min_element(sums.begin(), sums.end());
  std::vector<bool> out(g);
  for (std::size_t i = 0; i < g; ++i) out[i] = sums[i] == low;
  return out;
}

/// present[row][i]
inline std::vector<std::vector<bool>> mask(const Tensor& t, const std::vector<I>& w) {
  std::vector<std::vector<bool>> out;
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    std::vector<I> w_prime(t.a[k].begin() + 1, t.a[k].end());
    out.push_back(epsilon(w_prime, w));
  }
  return out;
}

inline I mult(const std::vector<I>& row, I value) { return std::count(row.begin(), row.end(), value); }

/// Every remaining set reachable in one rule application (bit k = row k remaining).
inline std::set<std::uint32_t> successors(const Tensor& t, const std::vector<std::vector<bool>>& present,
                                          std::uint32_t remaining, bool strict_vi = true) {
  std::set<std::uint32_t> out;
  const std::size_t n_rows = t.rows.size();
  auto in = [&](std::size_t k) { return ((remaining >> k) & 1u) != 0; };
  auto shows = [&](std::size_t k, I i) { return in(k) && present[k][static_cast<std::size_t>(i)]; };
  for (I i = 0; i < t.g; ++i) {
    std::vector<std::size_t> col;
    for (std::size_t k = 0; k < n_rows; ++k)
      if (shows(k, i)) col.push_back(k);
    // II and III
    for (std::size_t k : col) {
      bool a_min = true, b_min = true;
      for (std::size_t o : col) {
        if (o == k) continue;
        if (t.a[o][i] <= t.a[k][i]) a_min = false;
        if (t.b[o][i] <= t.b[k][i]) b_min = false;
      }
      if (a_min || b_min) out.insert(remaining & ~(1u << k));
    }
    // IV
    if (!col.empty() && col.size() <= 2) {
      std::uint32_t all = remaining;
      for (std::size_t k : col) {
        out.insert(remaining & ~(1u << k));
        all &= ~(1u << k);
      }
      out.insert(all);
    }
    // V
    for (I j = 0; j <= t.r; ++j) {
      if (j == t.delta[i]) continue;
      for (I n = 0; n <= t.m; ++n) {
        bool floor_ok = true;
        std::vector<std::size_t> exact;
        for (std::size_t k : col) {
          if (mult(t.rows[k], j) < n) floor_ok = false;
          if (mult(t.rows[k], j) == n) exact.push_back(k);
        }
        if (floor_ok && exact.size() == 1) out.insert(remaining & ~(1u << exact[0]));
      }
    }
    // VI
    if (i + 1 < t.g) {
      for (std::size_t x = 0; x < n_rows; ++x)
        for (std::size_t y = x + 1; y < n_rows; ++y) {
          if (!in(x) || !in(y)) continue;
          if (strict_vi && !(shows(x, i) && shows(x, i + 1) && shows(y, i) && shows(y, i + 1))) continue;
          if (t.a[x][i] != t.a[y][i] || t.b[x][i + 1] != t.b[y][i + 1]) continue;
          bool ok = true;
          for (std::size_t o = 0; o < n_rows; ++o) {
            if (o == x || o == y) continue;
            if (shows(o, i) && t.a[o][i] <= t.a[x][i]) ok = false;
            if (shows(o, i + 1) && t.b[o][i + 1] <= t.b[x][i + 1]) ok = false;
          }
          if (!ok) continue;
          bool witness = false;
          for (I w = i; w <= i + 1; ++w) {
            const I dv = t.delta[static_cast<std::size_t>(w)];
            if (t.m - mult(t.rows[x], dv) != 2 || t.m - mult(t.rows[y], dv) != 2) continue;
            std::size_t diag = 0;
            while (!(mult(t.rows[diag], dv) == t.m)) ++diag;
            if (t.a[x][w] != t.a[diag][w] - 1) witness = true;
          }
          if (witness) out.insert(remaining & ~(1u << x) & ~(1u << y));
        }
    }
    // VII
    if (t.m == 2) {
      const I dv = t.delta[i];
      std::size_t diag = 0;
      while (!(mult(t.rows[diag], dv) == 2)) ++diag;
      for (I n = 2; i + n <= t.g; ++n) {
        bool same = true;
        for (I k = i; k < i + n; ++k) same = same && t.delta[k] == dv;
        if (!same) break;
        // the listed rows must be exactly the non-diagonal rows showing in the window
        std::set<std::size_t> rows;
        for (I k = i; k < i + n; ++k)
          for (std::size_t o = 0; o < n_rows; ++o)
            if (o != diag && shows(o, k)) rows.insert(o);
        if (static_cast<I>(rows.size()) != n) continue;
        bool ok = true;
        for (std::size_t o : rows) {
          if (!(t.rows[o][0] < dv && dv < t.rows[o][1])) ok = false;
          if (t.a[o][i] != t.a[*rows.begin()][i]) ok = false;
          for (I k = i; k < i + n; ++k)
            if (!shows(o, k)) ok = false;
        }
        if (!ok) continue;
        std::uint32_t next = remaining & ~(1u << diag);
        for (std::size_t o : rows) next &= ~(1u << o);
        out.insert(next);
      }
    }
  }
  out.erase(remaining);
  return out;
}

/// Whether the empty set is reachable from `remaining`.
inline bool expungeable(const Tensor& t, const std::vector<std::vector<bool>>& present, std::uint32_t remaining,
                        bool strict_vi = true) {
  std::unordered_map<std::uint32_t, bool> memo;
  std::function<bool(std::uint32_t)> go = [&](std::uint32_t s) {
    if (s == 0) return true;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    memo[s] = false;
    for (std::uint32_t next : successors(t, present, s, strict_vi))
      if (go(next)) return memo[s] = true;
    return false;
  };
  return go(remaining);
}

}  // namespace oracle
