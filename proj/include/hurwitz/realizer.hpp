#pragma once

// Permutation search deciding realizability of branch data over the sphere,
// and the reduction of projective-plane data with orientable cover to
// sphere data.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

/// Permutations tau_1..tau_n with tau_1 ∘ ... ∘ tau_n = id, <tau_1..tau_{n-1}>
/// transitive, and tau_i of the cycle type of the datum's i-th partition.
struct Realization {
  int degree = 0;
  std::vector<Permutation> taus;

  /// tau[i]=<cycles> lines, 1-based i.
  std::string to_lines() const;
  /// Cycle notation joined by ';'.
  std::string to_compact() const;
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct SearchOptions {
  std::uint64_t budget = 1'000'000'000ULL;  // candidate permutations tried
  /// Keep tau_1 at the class representative. When false, tau_1 also ranges
  /// over its whole class (slow; used to cross-check the anchoring).
  bool anchor_first = true;
  /// Skip partial states already known to be dead up to simultaneous
  /// conjugation.
  bool memoize = true;
  /// Relabel each level's candidate stream by a fixed pseudo-random
  /// conjugation. The stream still covers the whole class.
  bool scramble = true;
  std::uint64_t seed = 0x5eed;
  /// Worker threads splitting the first enumerated level. Witnesses are
  /// reproducible only with one thread.
  int threads = 1;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Realization> witness;
  std::uint64_t nodes = 0;
};

/// Base must be the sphere (std::domain_error otherwise). The datum is
/// assumed compatible. The witness lists tau_i in the datum's partition order.
SearchResult search(const BranchDatum& datum, const SearchOptions& options = {});

bool verify_witness(const BranchDatum& datum, const Realization& r);

/// Calls `visit` on every realization with the anchored first generator
/// (so every realization up to simultaneous conjugation appears at least
/// once) until it returns false or `limit` candidates were tried. Returns
/// false if the limit cut the enumeration short.
bool enumerate_realizations(const BranchDatum& datum,
                            const std::function<bool(const Realization&)>& visit,
                            std::uint64_t limit = UINT64_MAX);

/// Every ordered pair (first, second) of sub-multisets of p with equal sums,
/// first >= second, each pair once.
std::vector<std::pair<Partition, Partition>> half_splits(const Partition& p);

/// Base must be the projective plane and the cover orientable
/// (std::domain_error otherwise), d >= 4. Yields each sphere datum of degree
/// d/2 obtained by splitting every partition into two halves; halves equal
/// to (1,...,1) are dropped.
std::vector<BranchDatum> reduce_projective(const BranchDatum& datum);

}  // namespace hurwitz
