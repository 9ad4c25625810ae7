#pragma once

// Block systems of permutation groups and the factorization of coverings
// they induce.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/permutation.hpp"
#include "hurwitz/realizer.hpp"

namespace hurwitz {

/// Partition of {1..d} into d/k blocks of size k, 1 < k < d.
class BlockDecomposition {
 public:
  /// block_of[x] for 0-based x; throws std::invalid_argument unless the
  /// blocks all have the same size k with 1 < k < d.
  explicit BlockDecomposition(std::vector<int> block_of);

  int order() const { return order_; }
  int degree() const { return static_cast<int>(block_of_.size()); }
  int block_count() const { return degree() / order_; }
  /// Block id (0-based, numbered by smallest element) of a 0-based point.
  int block_of(int x) const { return block_of_[static_cast<std::size_t>(x)]; }
  /// Blocks as sorted 1-based point lists.
  std::vector<std::vector<int>> blocks() const;

  bool preserved_by(const Permutation& p) const;
  /// Action of p on blocks; p must preserve the decomposition.
  Permutation induced(const Permutation& p) const;

  /// k=<k> blocks={1,3}{2,4}
  std::string to_string() const;

  friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;

 private:
  std::vector<int> block_of_;
  int order_ = 0;
};

/// Grouping of the parts of a cycle type: each group D_j with a period p_j
/// dividing every element and sum(x / p_j) = k.
struct BlockGrouping {
  std::vector<std::vector<int>> groups;  // each non-increasing
  std::vector<int> periods;
  /// (p_1, ..., p_t)
  Partition induced() const;

  friend bool operator==(const BlockGrouping&, const BlockGrouping&) = default;
  friend auto operator<=>(const BlockGrouping&, const BlockGrouping&) = default;
};

/// Every such grouping of t for block size k, each once, sorted. Empty when
/// k does not divide the degree or k is not a proper divisor.
std::vector<BlockGrouping> cycle_type_block_groupings(const Partition& t, int k);

/// The grouping realized by p on a decomposition it preserves.
BlockGrouping grouping_of(const BlockDecomposition& bd, const Permutation& p);

/// Block system of order k preserved by every generator whose block
/// containing 1 is lexicographically smallest. Throws std::domain_error for
/// intransitive generators, std::invalid_argument unless k | d and 1 < k < d.
std::optional<BlockDecomposition> find_block_decomposition(std::span<const Permutation> gens, int k);

/// All non-trivial block systems of a transitive group, ordered by block
/// size and then by the block containing 1.
std::vector<BlockDecomposition> all_block_decompositions(std::span<const Permutation> gens);

/// Inner datum (cover, middle, sum t_i, k, ...) and outer datum
/// (middle, base, n, d/k, ...) with trivial partitions dropped. Needs the
/// sphere as base; throws std::domain_error if some tau_i does not preserve bd.
std::pair<BranchDatum, BranchDatum> factor_covering(const BranchDatum& datum, const Realization& r,
                                                    const BlockDecomposition& bd);

/// True iff the realization has a block system of order d/2 whose outer
/// datum is (S,S,2,2,(2),(2)) once the (1,1) partitions are dropped.
/// Throws std::domain_error unless the datum is a sphere-to-sphere datum of
/// even degree with two all-even partitions and r realizes it.
bool verify_filtration(const BranchDatum& datum, const Realization& r);

}  // namespace hurwitz
