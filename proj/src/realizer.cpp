#include "hurwitz/realizer.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace hurwitz {

std::string Realization::to_lines() const {
  std::string out;
  for (std::size_t i = 0; i < taus.size(); ++i)
    out += "tau[" + std::to_string(i + 1) + "]=" + taus[i].to_string() + "\n";
  return out;
}

std::string Realization::to_compact() const {
  std::string out;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (i) out += ';';
    out += taus[i].to_string();
  }
  return out;
}

namespace {

constexpr std::size_t kMemoCap = 4'000'000;

enum class Step { Continue, Found, Abort };

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

// Depth-first search over tau_1..tau_{n-1} in a fixed level order; the last
// generator is forced to be the inverse of the running product.
class Searcher {
 public:
  Searcher(std::vector<Partition> types, const SearchOptions& options, Shared& shared)
      : types_(std::move(types)), options_(options), shared_(shared) {
    d_ = types_.front().degree();
    n_ = static_cast<int>(types_.size());
    last_ = types_.back().parts();
    rest_.assign(static_cast<std::size_t>(n_), 0);
    for (int i = n_ - 3; i >= 0; --i)
      rest_[static_cast<std::size_t>(i)] =
          rest_[static_cast<std::size_t>(i + 1)] + d_ - types_[static_cast<std::size_t>(i + 1)].length();
    taus_.assign(static_cast<std::size_t>(n_), {});
    std::mt19937_64 rng(options_.seed);
    relabel_.resize(static_cast<std::size_t>(n_));
    for (auto& g : relabel_) {
      g.resize(static_cast<std::size_t>(d_));
      std::iota(g.begin(), g.end(), 0);
      if (options_.scramble) std::shuffle(g.begin(), g.end(), rng);
    }
    anchor_ = class_representative(types_.front());
  }

  void restrict_level(int level, ClassIterator it) {
    split_level_ = level;
    split_iter_.emplace(std::move(it));
  }

  int first_enumerated_level() const { return options_.anchor_first ? 1 : 0; }

  void on_found(std::function<bool(const std::vector<std::vector<int>>&)> visit) {
    visit_ = std::move(visit);
  }

  Step run() {
    std::vector<int> product(static_cast<std::size_t>(d_));
    std::iota(product.begin(), product.end(), 0);
    std::vector<int> parent = product;
    return descend(0, product, parent);
  }

  const std::vector<std::vector<int>>& taus() const { return taus_; }

 private:
  Step descend(int level, const std::vector<int>& product, const std::vector<int>& parent) {
    if (level == 0 && options_.anchor_first) return visit(level, anchor_.images(), product, parent, false);
    const bool relabel = options_.scramble;
    ClassIterator it = (split_iter_ && level == split_level_) ? *split_iter_
                                                              : ClassIterator(types_[static_cast<std::size_t>(level)]);
    while (it.next()) {
      const Step s = visit(level, it.images(), product, parent, relabel);
      if (s != Step::Continue) return s;
    }
    return Step::Continue;
  }

  Step visit(int level, std::span<const int> candidate, const std::vector<int>& product,
             const std::vector<int>& parent, bool relabel) {
    if (shared_.stop.load(std::memory_order_relaxed)) return Step::Abort;
    if (shared_.nodes.fetch_add(1, std::memory_order_relaxed) >= options_.budget) {
      shared_.budget_hit = true;
      shared_.stop = true;
      return Step::Abort;
    }
    const auto d = static_cast<std::size_t>(d_);
    auto& tau = taus_[static_cast<std::size_t>(level)];
    tau.resize(d);
    if (relabel) {
      const auto& g = relabel_[static_cast<std::size_t>(level)];
      for (std::size_t x = 0; x < d; ++x)
        tau[static_cast<std::size_t>(g[x])] = g[static_cast<std::size_t>(candidate[x])];
    } else {
      std::copy(candidate.begin(), candidate.end(), tau.begin());
    }

    std::vector<int> next(d);
    for (std::size_t x = 0; x < d; ++x) next[x] = product[static_cast<std::size_t>(tau[x])];
    std::vector<int> uf = parent;
    int blocks = 0;
    for (std::size_t x = 0; x < d; ++x)
      if (uf[x] == static_cast<int>(x)) ++blocks;
    for (std::size_t x = 0; x < d; ++x) {
      const int a = find_root(uf, static_cast<int>(x));
      const int b = find_root(uf, tau[x]);
      if (a != b) {
        uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        --blocks;
      }
    }

    if (level == n_ - 2) {
      if (blocks != 1 || !matches_last(next)) return Step::Continue;
      if (visit_) {
        return visit_(taus_) ? Step::Continue : Step::Abort;
      }
      return Step::Found;
    }

    const int budget_left = rest_[static_cast<std::size_t>(level)];
    if (blocks - 1 > budget_left) return Step::Continue;
    const int cycles = count_cycles(next);
    if (std::abs(cycles - static_cast<int>(last_.size())) > budget_left) return Step::Continue;

    std::string key;
    const bool memo = options_.memoize && !visit_;
    if (memo) {
      key = canonical_key(level, next, uf);
      if (dead_.count(key)) return Step::Continue;
    }
    const Step s = descend(level + 1, next, uf);
    if (s == Step::Continue && memo && dead_.size() < kMemoCap) dead_.insert(std::move(key));
    return s;
  }

  int count_cycles(const std::vector<int>& p) const {
    std::vector<char> seen(p.size(), 0);
    int cycles = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (seen[s]) continue;
      ++cycles;
      for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(p[x])) seen[x] = 1;
    }
    return cycles;
  }

  bool matches_last(const std::vector<int>& p) const {
    if (count_cycles(p) != static_cast<int>(last_.size())) return false;
    return cycle_type(p).parts() == last_;
  }

  // Multiset over orbits of the cycle type of the product restricted to the
  // orbit: a complete invariant of (product, orbit partition) under
  // simultaneous conjugation.
  std::string canonical_key(int level, const std::vector<int>& p, std::vector<int>& uf) const {
    const std::size_t d = p.size();
    std::vector<std::vector<int>> by_block(d);
    std::vector<char> seen(d, 0);
    for (std::size_t s = 0; s < d; ++s) {
      if (seen[s]) continue;
      int len = 0;
      for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(p[x])) {
        seen[x] = 1;
        ++len;
      }
      by_block[static_cast<std::size_t>(find_root(uf, static_cast<int>(s)))].push_back(len);
    }
    std::vector<std::vector<int>> blocks;
    for (auto& b : by_block) {
      if (b.empty()) continue;
      std::sort(b.begin(), b.end());
      blocks.push_back(std::move(b));
    }
    std::sort(blocks.begin(), blocks.end());
    std::string key(1, static_cast<char>(level));
    for (const auto& b : blocks) {
      for (int len : b) key += static_cast<char>(len);
      key += '\0';
    }
    return key;
  }

  std::vector<Partition> types_;
  SearchOptions options_;
  Shared& shared_;
  int d_ = 0;
  int n_ = 0;
  std::vector<int> last_;
  std::vector<int> rest_;
  std::vector<std::vector<int>> taus_;
  std::vector<std::vector<int>> relabel_;
  Permutation anchor_;
  int split_level_ = -1;
  std::optional<ClassIterator> split_iter_;
  std::unordered_set<std::string> dead_;
  std::function<bool(const std::vector<std::vector<int>>&)> visit_;
};

// Search order: smallest class first (anchored), largest class last.
std::vector<int> search_order(const BranchDatum& datum) {
  std::vector<int> order(static_cast<std::size_t>(datum.branch_points()));
  std::iota(order.begin(), order.end(), 0);
  std::vector<long double> size;
  for (const auto& p : datum.partitions()) size.push_back(class_size_estimate(p));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)];
  });
  return order;
}

// Completes the tuple with the inverse product and brings it into the
// datum's partition order by Hurwitz moves (a, b) -> (a b a^-1, a), which
// keep the product, the cycle types and the generated group.
Realization to_datum_order(const BranchDatum& datum, const std::vector<int>& order,
                           const std::vector<std::vector<int>>& chosen) {
  const int n = datum.branch_points();
  const int d = datum.degree();
  std::vector<Permutation> taus;
  Permutation product = Permutation::identity(d);
  for (int i = 0; i < n - 1; ++i) {
    taus.push_back(Permutation::from_images(chosen[static_cast<std::size_t>(i)]));
    product = compose(product, taus.back());
  }
  taus.push_back(inverse(product));
  std::vector<int> slot = order;
  for (int pass = 0; pass < n; ++pass) {
    for (int i = 0; i + 1 < n; ++i) {
      const auto a = static_cast<std::size_t>(i);
      if (slot[a] <= slot[a + 1]) continue;
      Permutation moved = conjugate(taus[a + 1], taus[a]);
      taus[a + 1] = taus[a];
      taus[a] = std::move(moved);
      std::swap(slot[a], slot[a + 1]);
    }
  }
  return Realization{d, std::move(taus)};
}

std::vector<Partition> ordered_types(const BranchDatum& datum, const std::vector<int>& order) {
  std::vector<Partition> types;
  for (int i : order) types.push_back(datum.partition(i));
  return types;
}

}  // namespace

SearchResult search(const BranchDatum& datum, const SearchOptions& options) {
  if (!datum.base().is_sphere()) throw std::domain_error("search needs the sphere as base");
  SearchResult result;
  const int n = datum.branch_points();
  if (n <= 1) return result;

  const std::vector<int> order = search_order(datum);
  const std::vector<Partition> types = ordered_types(datum, order);
  Shared shared;

  const int threads = std::max(1, options.threads);
  std::vector<Searcher> workers;
  {
    Searcher proto(types, options, shared);
    const int level = proto.first_enumerated_level();
    if (threads > 1 && level <= n - 2) {
      for (auto& it : ClassIterator(types[static_cast<std::size_t>(level)]).split(threads)) {
        workers.push_back(proto);
        workers.back().restrict_level(level, std::move(it));
      }
    } else {
      workers.push_back(std::move(proto));
    }
  }

  std::vector<Step> steps(workers.size(), Step::Continue);
  if (workers.size() == 1) {
    steps[0] = workers[0].run();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers.size(); ++w)
      pool.emplace_back([&, w] {
        steps[w] = workers[w].run();
        if (steps[w] == Step::Found) shared.stop = true;
      });
    for (auto& t : pool) t.join();
  }

  result.nodes = std::min<std::uint64_t>(shared.nodes.load(), options.budget);
  for (std::size_t w = 0; w < workers.size(); ++w) {
    if (steps[w] == Step::Found) {
      result.status = SearchStatus::Found;
      result.witness = to_datum_order(datum, order, workers[w].taus());
      return result;
    }
  }
  result.status = shared.budget_hit ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
  return result;
}

bool verify_witness(const BranchDatum& datum, const Realization& r) {
  const int d = datum.degree();
  if (r.degree != d || static_cast<int>(r.taus.size()) != datum.branch_points()) return false;
  Permutation product = Permutation::identity(d);
  std::vector<Partition> types;
  for (const auto& t : r.taus) {
    if (t.degree() != d) return false;
    product = compose(product, t);
    types.push_back(cycle_type(t));
  }
  if (!product.is_identity()) return false;
  if (!is_transitive(r.taus, d)) return false;
  std::vector<Partition> expected = datum.partitions();
  std::sort(types.begin(), types.end());
  std::sort(expected.begin(), expected.end());
  return types == expected;
}

bool enumerate_realizations(const BranchDatum& datum,
                            const std::function<bool(const Realization&)>& visit,
                            std::uint64_t limit) {
  if (!datum.base().is_sphere()) throw std::domain_error("enumeration needs the sphere as base");
  const int n = datum.branch_points();
  if (n <= 1) return true;
  const std::vector<int> order = search_order(datum);
  SearchOptions options;
  options.budget = limit;
  options.memoize = false;
  options.scramble = false;
  Shared shared;
  Searcher searcher(ordered_types(datum, order), options, shared);
  searcher.on_found([&](const std::vector<std::vector<int>>& chosen) {
    return visit(to_datum_order(datum, order, chosen));
  });
  searcher.run();
  return !shared.budget_hit;
}

std::vector<std::pair<Partition, Partition>> half_splits(const Partition& p) {
  if (p.degree() % 2 != 0) throw std::domain_error("half_splits needs an even degree");
  const int half = p.degree() / 2;
  std::vector<int> lengths;
  std::vector<int> mult;
  for (int part : p.parts()) {
    if (lengths.empty() || lengths.back() != part) {
      lengths.push_back(part);
      mult.push_back(0);
    }
    ++mult.back();
  }
  std::set<std::pair<Partition, Partition>> seen;
  std::vector<std::pair<Partition, Partition>> out;
  std::vector<int> take(lengths.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int sum) -> void {
    if (sum > half) return;
    if (i == lengths.size()) {
      if (sum != half) return;
      std::vector<int> a;
      std::vector<int> b;
      for (std::size_t j = 0; j < lengths.size(); ++j) {
        a.insert(a.end(), static_cast<std::size_t>(take[j]), lengths[j]);
        b.insert(b.end(), static_cast<std::size_t>(mult[j] - take[j]), lengths[j]);
      }
      Partition pa(std::move(a));
      Partition pb(std::move(b));
      if (pa < pb) std::swap(pa, pb);
      if (seen.emplace(pa, pb).second) out.emplace_back(pa, pb);
      return;
    }
    for (int c = 0; c <= mult[i]; ++c) {
      take[i] = c;
      self(self, i + 1, sum + c * lengths[i]);
    }
    take[i] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<BranchDatum> reduce_projective(const BranchDatum& datum) {
  if (!datum.base().is_projective_plane())
    throw std::domain_error("reduce_projective needs the projective plane as base");
  if (!datum.cover().orientable())
    throw std::domain_error("reduce_projective needs an orientable cover");
  if (datum.degree() < 4 || datum.degree() % 2 != 0)
    throw std::domain_error("reduce_projective needs an even degree of at least 4");

  std::vector<std::vector<std::pair<Partition, Partition>>> choices;
  for (const auto& p : datum.partitions()) {
    choices.push_back(half_splits(p));
    if (choices.back().empty()) return {};
  }

  std::vector<BranchDatum> out;
  std::set<std::string> seen;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    std::vector<Partition> parts;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      const auto& [a, b] = choices[i][pick[i]];
      if (!a.is_trivial()) parts.push_back(a);
      if (!b.is_trivial()) parts.push_back(b);
    }
    BranchDatum reduced(datum.cover(), Surface::sphere(), datum.degree() / 2, std::move(parts));
    if (seen.insert(reduced.to_string()).second) out.push_back(std::move(reduced));

    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace hurwitz
