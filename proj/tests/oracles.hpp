#pragma once

// Slow, independent reference implementations used as test oracles. None of
// these call into the library beyond its value types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "hurwitz/core.hpp"

namespace oracle {

using Images = std::vector<int>;  // 0-based

// p(n) by the coin-change recurrence.
inline std::uint64_t partition_count(int n) {
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
  return ways[static_cast<std::size_t>(n)];
}

// All partitions of n with parts <= cap, each as a non-increasing vector.
inline void partitions_rec(int n, int cap, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, cap); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

inline Images compose(const Images& a, const Images& b) {
  Images out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[static_cast<std::size_t>(b[x])];
  return out;
}

inline Images invert(const Images& a) {
  Images out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[static_cast<std::size_t>(a[x])] = static_cast<int>(x);
  return out;
}

inline std::vector<int> cycle_type(const Images& p) {
  std::vector<int> lens;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(p[x])) {
      seen[x] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

// Breadth-first orbit of 0.
inline bool transitive(const std::vector<Images>& gens, int d) {
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      const int y = g[static_cast<std::size_t>(queue[i])];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        queue.push_back(y);
      }
    }
  return static_cast<int>(queue.size()) == d;
}

// Every element of S_d in lexicographic order of images.
inline std::vector<Images> symmetric_group(int d) {
  std::vector<Images> out;
  Images p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// S_d split into conjugacy classes by filtering on cycle type.
inline std::map<std::vector<int>, std::vector<Images>> classes(int d) {
  std::map<std::vector<int>, std::vector<Images>> out;
  for (auto& p : symmetric_group(d)) out[cycle_type(p)].push_back(std::move(p));
  return out;
}

// d! / prod(c! l^c), computed in floating point and rounded.
inline std::uint64_t class_size_formula(const std::vector<int>& type) {
  const int d = std::accumulate(type.begin(), type.end(), 0);
  long double v = 1;
  for (int i = 2; i <= d; ++i) v *= i;
  std::map<int, int> mult;
  for (int x : type) ++mult[x];
  for (auto [len, c] : mult) {
    for (int i = 2; i <= c; ++i) v /= i;
    for (int i = 0; i < c; ++i) v /= len;
  }
  return static_cast<std::uint64_t>(v + 0.5L);
}

// Realizability of a sphere-base datum by brute force over full conjugacy
// classes: the first partition (in the given order of a smallest class) is
// fixed to one element, all middle ones range over their whole class and the
// last is forced. No pruning. Calls `found` on each realization (in the
// order the partitions were reordered to) until it returns false.
class NaiveSearch {
 public:
  explicit NaiveSearch(int d) : d_(d), classes_(classes(d)) {}

  std::uint64_t run(const std::vector<std::vector<int>>& types,
                    const std::function<bool(const std::vector<Images>&)>& found) {
    order_ = types;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](const auto& a, const auto& b) { return cls(a).size() < cls(b).size(); });
    found_ = &found;
    count_ = 0;
    stop_ = false;
    tuple_.assign(1, cls(order_[0]).front());
    if (order_.size() == 1) {
      if (is_identity(tuple_[0]) && d_ == 1) record();
      return count_;
    }
    descend(Images(tuple_[0]));
    return count_;
  }

  bool realizable(const hurwitz::BranchDatum& datum) {
    std::vector<std::vector<int>> types;
    for (const auto& p : datum.partitions()) types.push_back(p.parts());
    return run(types, [](const std::vector<Images>&) { return false; }) > 0;
  }

 private:
  const std::vector<Images>& cls(const std::vector<int>& t) { return classes_.at(t); }

  static bool is_identity(const Images& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != static_cast<int>(i)) return false;
    return true;
  }

  void record() {
    ++count_;
    if (!(*found_)(tuple_)) stop_ = true;
  }

  // prod = tau_1 ... tau_i so far.
  void descend(Images prod) {
    if (stop_) return;
    const std::size_t level = tuple_.size();
    if (level + 1 == order_.size()) {
      Images last = invert(prod);
      if (cycle_type(last) != order_.back()) return;
      std::vector<Images> gens(tuple_.begin(), tuple_.end());
      if (!transitive(gens, d_)) return;
      tuple_.push_back(std::move(last));
      record();
      tuple_.pop_back();
      return;
    }
    for (const auto& g : cls(order_[level])) {
      tuple_.push_back(g);
      descend(compose(prod, g));
      tuple_.pop_back();
      if (stop_) return;
    }
  }

  int d_;
  std::map<std::vector<int>, std::vector<Images>> classes_;
  std::vector<std::vector<int>> order_;
  std::vector<Images> tuple_;
  const std::function<bool(const std::vector<Images>&)>* found_ = nullptr;
  std::uint64_t count_ = 0;
  bool stop_ = false;
};

// Every partition of {0..d-1} into blocks of size k (as normalized block
// ids) that every generator maps blocks to blocks.
inline std::vector<std::vector<int>> block_systems(const std::vector<Images>& gens, int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> block(static_cast<std::size_t>(d), -1);
  std::vector<int> sizes;
  std::function<void(int)> assign = [&](int x) {
    if (x == d) {
      for (const auto& g : gens)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            if (block[static_cast<std::size_t>(a)] == block[static_cast<std::size_t>(b)] &&
                block[static_cast<std::size_t>(g[static_cast<std::size_t>(a)])] !=
                    block[static_cast<std::size_t>(g[static_cast<std::size_t>(b)])])
              return;
      out.push_back(block);
      return;
    }
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      if (sizes[b] == k) continue;
      ++sizes[b];
      block[static_cast<std::size_t>(x)] = static_cast<int>(b);
      assign(x + 1);
      --sizes[b];
    }
    if (static_cast<int>(sizes.size()) < d / k) {
      sizes.push_back(1);
      block[static_cast<std::size_t>(x)] = static_cast<int>(sizes.size()) - 1;
      assign(x + 1);
      sizes.pop_back();
    }
  };
  if (k > 1 && k < d && d % k == 0) assign(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct Candidate {
  int chi;
  std::vector<std::vector<int>> parts;  // sorted descending
};

// Compatible (S-cover-free) sphere-base data of degree d with n branch points:
// every n-tuple of non-trivial partitions, sorted to a multiset and
// deduplicated, whose cover Euler characteristic d(2-n) + sum m_i is even and
// at most 2.
inline std::vector<Candidate> sphere_base_data(int d, int n) {
  std::vector<std::vector<int>> pool;
  for (auto& p : partitions(d))
    if (p.front() > 1) pool.push_back(p);
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<Candidate> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<std::vector<int>> tuple;
    for (auto i : idx) tuple.push_back(pool[i]);
    std::sort(tuple.rbegin(), tuple.rend());
    if (seen.insert(tuple).second) {
      int m = 0;
      for (const auto& p : tuple) m += static_cast<int>(p.size());
      const int chi = d * (2 - n) + m;
      if (chi <= 2 && chi % 2 == 0) out.push_back({chi, tuple});
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == pool.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

// Members of the (k s_1..k s_p),(k t_1..k t_q),(h+r,1..1),(2,1..1)^(n-3)
// family with d = k h <= dmax.
inline std::vector<hurwitz::BranchDatum> transposition_family(int dmax) {
  std::vector<hurwitz::BranchDatum> out;
  for (int d = 4; d <= dmax; ++d)
    for (int k = 2; k < d; ++k) {
      if (d % k) continue;
      const int h = d / k;
      if (h < 2) continue;
      for (const auto& s : partitions(h))
        for (const auto& t : partitions(h)) {
          const int p = static_cast<int>(s.size());
          const int q = static_cast<int>(t.size());
          if (p < 2 || q < 2 || p + q < h + 2) continue;
          for (int r = 1; r < p + q - h; ++r) {
            const int n = p + q - r - h + 2;
            if (n < 3 || h + r > d) continue;
            std::vector<int> a, b;
            for (int x : s) a.push_back(k * x);
            for (int x : t) b.push_back(k * x);
            std::vector<int> hook{h + r};
            hook.insert(hook.end(), static_cast<std::size_t>(d - h - r), 1);
            std::vector<int> transp{2};
            transp.insert(transp.end(), static_cast<std::size_t>(d - 2), 1);
            std::vector<hurwitz::Partition> parts{hurwitz::Partition(a), hurwitz::Partition(b), hurwitz::Partition(hook)};
            for (int i = 3; i < n; ++i) parts.emplace_back(transp);
            out.emplace_back(hurwitz::Surface::sphere(), hurwitz::Surface::sphere(), d, parts);
          }
        }
    }
  return out;
}

}  // namespace oracle
