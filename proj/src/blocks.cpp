#include "hurwitz/blocks.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hurwitz {

BlockDecomposition::BlockDecomposition(std::vector<int> block_of) {
  const int d = static_cast<int>(block_of.size());
  std::map<int, int> rename;
  std::vector<int> sizes;
  for (int& b : block_of) {
    auto [it, fresh] = rename.try_emplace(b, static_cast<int>(sizes.size()));
    if (fresh) sizes.push_back(0);
    b = it->second;
    ++sizes[static_cast<std::size_t>(b)];
  }
  if (sizes.empty() || std::any_of(sizes.begin(), sizes.end(), [&](int s) { return s != sizes.front(); }))
    throw std::invalid_argument("blocks must all have the same size");
  order_ = sizes.front();
  if (order_ <= 1 || order_ >= d) throw std::invalid_argument("block size must satisfy 1 < k < d");
  block_of_ = std::move(block_of);
}

std::vector<std::vector<int>> BlockDecomposition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count()));
  for (int x = 0; x < degree(); ++x) out[static_cast<std::size_t>(block_of(x))].push_back(x + 1);
  return out;
}

bool BlockDecomposition::preserved_by(const Permutation& p) const {
  if (p.degree() != degree()) return false;
  std::vector<int> image(static_cast<std::size_t>(block_count()), -1);
  for (int x = 0; x < degree(); ++x) {
    int& slot = image[static_cast<std::size_t>(block_of(x))];
    if (slot == -1) slot = block_of(p[x]);
    else if (slot != block_of(p[x])) return false;
  }
  return true;
}

Permutation BlockDecomposition::induced(const Permutation& p) const {
  if (!preserved_by(p)) throw std::domain_error("permutation does not preserve the block decomposition");
  std::vector<int> image(static_cast<std::size_t>(block_count()));
  for (int x = 0; x < degree(); ++x) image[static_cast<std::size_t>(block_of(x))] = block_of(p[x]);
  return Permutation::from_images(std::move(image));
}

std::string BlockDecomposition::to_string() const {
  std::string out = "k=" + std::to_string(order_) + " blocks=";
  for (const auto& b : blocks()) {
    out += '{';
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i]);
    out += '}';
  }
  return out;
}

Partition BlockGrouping::induced() const { return Partition(periods); }

std::vector<BlockGrouping> cycle_type_block_groupings(const Partition& t, int k) {
  const int d = t.degree();
  if (k <= 1 || k >= d || d % k != 0) return {};
  std::set<BlockGrouping> found;
  std::vector<std::pair<std::vector<int>, int>> chosen;

  // Groups are built around the first remaining part; the rest of a group is
  // a sub-multiset of the parts after it.
  auto rec = [&](auto&& self, std::vector<int> rest) -> void {
    if (rest.empty()) {
      auto sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      BlockGrouping g;
      for (auto& [group, p] : sorted) {
        g.groups.push_back(group);
        g.periods.push_back(p);
      }
      found.insert(std::move(g));
      return;
    }
    const int head = rest.front();
    for (int p = 1; p <= head; ++p) {
      if (head % p != 0 || head / p > k) continue;
      std::vector<int> group{head};
      std::vector<char> taken(rest.size(), 0);
      taken[0] = 1;
      auto extend = [&](auto&& ext, std::size_t i, int sum) -> void {
        if (sum == k) {
          std::vector<int> left;
          for (std::size_t j = 0; j < rest.size(); ++j)
            if (!taken[j]) left.push_back(rest[j]);
          chosen.emplace_back(group, p);
          self(self, std::move(left));
          chosen.pop_back();
          return;
        }
        for (std::size_t j = i; j < rest.size(); ++j) {
          // Equal parts are interchangeable: take the first untaken copy only.
          if (j > i && rest[j] == rest[j - 1] && !taken[j - 1]) continue;
          if (rest[j] % p != 0 || sum + rest[j] / p > k) continue;
          taken[j] = 1;
          group.push_back(rest[j]);
          ext(ext, j + 1, sum + rest[j] / p);
          group.pop_back();
          taken[j] = 0;
        }
      };
      extend(extend, 1, head / p);
    }
  };
  rec(rec, t.parts());
  return {found.begin(), found.end()};
}

BlockGrouping grouping_of(const BlockDecomposition& bd, const Permutation& p) {
  const Permutation hat = bd.induced(p);
  std::vector<std::pair<std::vector<int>, int>> groups;
  std::vector<int> group_of_block(static_cast<std::size_t>(bd.block_count()), -1);
  for (const auto& cyc : hat.cycles()) {
    for (int b : cyc) group_of_block[static_cast<std::size_t>(b - 1)] = static_cast<int>(groups.size());
    groups.push_back({{}, static_cast<int>(cyc.size())});
  }
  for (const auto& cyc : p.cycles())
    groups[static_cast<std::size_t>(group_of_block[static_cast<std::size_t>(bd.block_of(cyc.front() - 1))])]
        .first.push_back(static_cast<int>(cyc.size()));
  for (auto& g : groups) std::sort(g.first.begin(), g.first.end(), std::greater<>());
  std::sort(groups.begin(), groups.end());
  BlockGrouping out;
  for (auto& [lengths, period] : groups) {
    out.groups.push_back(std::move(lengths));
    out.periods.push_back(period);
  }
  return out;
}

namespace {

using Mask = std::uint64_t;

// Finest system invariant under gens in which all points of `seed` share a
// block; returns the union-find roots.
std::vector<int> closure(std::span<const Permutation> gens, int d, Mask seed) {
  std::vector<int> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  std::vector<std::pair<int, int>> queue;
  int first = -1;
  for (int x = 0; x < d; ++x) {
    if (!(seed >> x & 1)) continue;
    if (first == -1) first = x;
    else queue.emplace_back(first, x);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int a = root(queue[head].first);
    const int b = root(queue[head].second);
    if (a == b) continue;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    // a and b now share a block, so their images do too.
    for (const auto& g : gens) queue.emplace_back(g[queue[head].first], g[queue[head].second]);
  }
  for (int x = 0; x < d; ++x) parent[static_cast<std::size_t>(x)] = root(x);
  return parent;
}

Mask block_of_zero(const std::vector<int>& roots) {
  Mask m = 0;
  for (std::size_t x = 0; x < roots.size(); ++x)
    if (roots[x] == roots[0]) m |= Mask{1} << x;
  return m;
}

std::vector<int> sorted_points(Mask m) {
  std::vector<int> out;
  for (int x = 0; x < 64; ++x)
    if (m >> x & 1) out.push_back(x);
  return out;
}

void check_transitive(std::span<const Permutation> gens) {
  if (gens.empty()) throw std::domain_error("block search needs at least one generator");
  const int d = gens[0].degree();
  if (d > 64) throw std::invalid_argument("block search supports degree at most 64");
  if (!is_transitive(gens, d)) throw std::domain_error("block search needs a transitive group");
}

// Every block containing point 0 of a non-trivial system.
std::vector<Mask> blocks_through_zero(std::span<const Permutation> gens) {
  const int d = gens[0].degree();
  const Mask full = d == 64 ? ~Mask{0} : (Mask{1} << d) - 1;
  std::set<Mask> seen;
  std::vector<Mask> stack{1};
  seen.insert(1);
  while (!stack.empty()) {
    const Mask b = stack.back();
    stack.pop_back();
    for (int y = 1; y < d; ++y) {
      if (b >> y & 1) continue;
      const Mask next = block_of_zero(closure(gens, d, b | Mask{1} << y));
      if (next == full || !seen.insert(next).second) continue;
      stack.push_back(next);
    }
  }
  seen.erase(1);
  return {seen.begin(), seen.end()};
}

BlockDecomposition system_from_block(std::span<const Permutation> gens, Mask block) {
  return BlockDecomposition(closure(gens, gens[0].degree(), block));
}

}  // namespace

std::optional<BlockDecomposition> find_block_decomposition(std::span<const Permutation> gens, int k) {
  check_transitive(gens);
  const int d = gens[0].degree();
  if (k <= 1 || k >= d || d % k != 0) throw std::invalid_argument("block size must be a proper divisor of d");
  std::optional<std::vector<int>> best;
  Mask best_mask = 0;
  for (Mask m : blocks_through_zero(gens)) {
    if (std::popcount(m) != k) continue;
    auto pts = sorted_points(m);
    if (!best || pts < *best) {
      best = std::move(pts);
      best_mask = m;
    }
  }
  if (!best) return std::nullopt;
  return system_from_block(gens, best_mask);
}

std::vector<BlockDecomposition> all_block_decompositions(std::span<const Permutation> gens) {
  check_transitive(gens);
  std::vector<std::pair<std::pair<int, std::vector<int>>, Mask>> keyed;
  for (Mask m : blocks_through_zero(gens)) keyed.push_back({{std::popcount(m), sorted_points(m)}, m});
  std::sort(keyed.begin(), keyed.end());
  std::vector<BlockDecomposition> out;
  for (const auto& [key, m] : keyed) out.push_back(system_from_block(gens, m));
  return out;
}

std::pair<BranchDatum, BranchDatum> factor_covering(const BranchDatum& datum, const Realization& r,
                                                    const BlockDecomposition& bd) {
  if (!datum.base().is_sphere()) throw std::domain_error("factor_covering needs the sphere as base");
  if (bd.degree() != datum.degree()) throw std::domain_error("block decomposition has the wrong degree");
  const int k = bd.order();
  std::vector<Partition> inner;
  std::vector<Partition> outer;
  for (const auto& tau : r.taus) {
    if (!bd.preserved_by(tau)) throw std::domain_error("block decomposition is not preserved by " + tau.to_string());
    const BlockGrouping g = grouping_of(bd, tau);
    for (std::size_t j = 0; j < g.groups.size(); ++j) {
      std::vector<int> parts;
      for (int x : g.groups[j]) parts.push_back(x / g.periods[j]);
      Partition p(std::move(parts));
      if (!p.is_trivial()) inner.push_back(std::move(p));
    }
    Partition q = g.induced();
    if (!q.is_trivial()) outer.push_back(std::move(q));
  }

  const int outer_degree = datum.degree() / k;
  int outer_ntil = 0;
  for (const auto& q : outer) outer_ntil += q.length();
  const int chi = outer_ntil + outer_degree * (2 - static_cast<int>(outer.size()));
  const auto middle = Surface::from_euler(true, chi);
  if (!middle) throw std::logic_error("no intermediate surface with Euler characteristic " + std::to_string(chi));
  return {BranchDatum(datum.cover(), *middle, k, std::move(inner)),
          BranchDatum(*middle, Surface::sphere(), outer_degree, std::move(outer))};
}

bool verify_filtration(const BranchDatum& datum, const Realization& r) {
  const int d = datum.degree();
  const auto& parts = datum.partitions();
  const auto even = std::count_if(parts.begin(), parts.end(), [](const Partition& p) { return p.all_divisible_by(2); });
  if (!datum.base().is_sphere() || !datum.cover().is_sphere() || d % 2 != 0 || even < 2)
    throw std::domain_error("filtration needs a sphere datum of even degree with two all-even partitions");
  if (!verify_witness(datum, r)) throw std::domain_error("realization does not realize the datum");
  if (d == 2) return true;  // the covering is its own degree-2 factor
  const BranchDatum target(Surface::sphere(), Surface::sphere(), 2, {Partition({2}), Partition({2})});
  for (const auto& bd : all_block_decompositions(r.taus)) {
    if (bd.order() != d / 2) continue;
    if (factor_covering(datum, r, bd).second == target) return true;
  }
  return false;
}

}  // namespace hurwitz
