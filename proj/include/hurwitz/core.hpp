#pragma once

// Domain types for branch data of branched coverings between closed surfaces.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A partition of a positive integer, stored with parts in non-increasing
/// order. Also serves as the cycle type of a permutation.
class Partition {
 public:
  /// Parts may be given in any order; they are sorted on construction.
  /// Throws std::invalid_argument on an empty list or a part < 1.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int degree() const { return degree_; }
  /// Number of parts (m_i for a branching point).
  int length() const { return static_cast<int>(parts_.size()); }
  int largest() const { return parts_.front(); }

  bool is_trivial() const { return largest() == 1; }
  bool is_full_cycle() const { return parts_.size() == 1; }
  bool all_divisible_by(int k) const;
  /// Multiplicity of the part `len`.
  int count(int len) const;

  /// "3,1" style.
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int degree_ = 0;
};

/// Closed surface: orientable of genus g (gT, with 0T the sphere) or
/// non-orientable of genus g >= 1 (gP).
class Surface {
 public:
  Surface(bool orientable, int genus);

  static Surface sphere() { return {true, 0}; }
  static Surface torus() { return {true, 1}; }
  static Surface projective_plane() { return {false, 1}; }
  /// Surface with the given orientability and Euler characteristic, if any.
  static std::optional<Surface> from_euler(bool orientable, int chi);
  /// `O<g>` or `N<g>`.
  static Surface parse(std::string_view text);

  bool orientable() const { return orientable_; }
  int genus() const { return genus_; }
  int euler_characteristic() const { return orientable_ ? 2 - 2 * genus_ : 2 - genus_; }
  bool is_sphere() const { return orientable_ && genus_ == 0; }
  bool is_projective_plane() const { return !orientable_ && genus_ == 1; }

  std::string to_string() const;

  friend bool operator==(const Surface&, const Surface&) = default;
  friend auto operator<=>(const Surface&, const Surface&) = default;

 private:
  bool orientable_;
  int genus_;
};

/// The tuple (cover, base, n, d, partitions). The partition list is kept in
/// canonical order (descending lexicographic), since branching points carry
/// no order.
class BranchDatum {
 public:
  /// Throws std::invalid_argument if d < 2, a partition has degree != d, or a
  /// partition is (1,...,1).
  BranchDatum(Surface cover, Surface base, int degree, std::vector<Partition> partitions);

  /// Parses `d=<int> cover=<SURF> base=<SURF> parts=[p1,p2|q1,...]`.
  static BranchDatum parse(std::string_view text);

  const Surface& cover() const { return cover_; }
  const Surface& base() const { return base_; }
  int degree() const { return degree_; }
  int branch_points() const { return static_cast<int>(partitions_.size()); }
  const std::vector<Partition>& partitions() const { return partitions_; }
  const Partition& partition(int i) const { return partitions_[static_cast<std::size_t>(i)]; }
  /// ñ = m_1 + ... + m_n.
  int total_preimages() const;

  BranchDatum with_cover(Surface cover) const { return {cover, base_, degree_, partitions_}; }

  std::string to_string() const;

  friend bool operator==(const BranchDatum&, const BranchDatum&) = default;

 private:
  Surface cover_;
  Surface base_;
  int degree_;
  std::vector<Partition> partitions_;
};

struct CompatibilityReport {
  bool compatible = true;
  std::vector<int> violated;  // condition numbers 1..5, ascending
};

/// Reports every violated compatibility condition:
///   1  chi(cover) - ñ = d (chi(base) - n)
///   2  n d - ñ even
///   3  base orientable => cover orientable
///   4  base non-orientable and d odd => cover non-orientable
///   5  base non-orientable, cover orientable => every partition refines (d/2, d/2)
CompatibilityReport check_compatibility(const BranchDatum& datum);

inline bool is_compatible(const BranchDatum& datum) { return check_compatibility(datum).compatible; }

/// All covers satisfying conditions 1, 3 and 4 for the given base data.
/// Condition 5 is not filtered here.
std::vector<Surface> infer_cover(const Surface& base, int degree,
                                 const std::vector<Partition>& partitions);

/// True iff some sub-multiset of parts sums to degree/2. Throws
/// std::domain_error for odd degree.
bool refines_two_halves(const Partition& p);

/// Every partition of n in reverse-lexicographic order: (n), (n-1,1), ...
class PartitionRange {
 public:
  explicit PartitionRange(int n);

  class iterator {
   public:
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    Partition operator*() const { return Partition(parts_); }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_ && (a.done_ || a.parts_ == b.parts_); }

   private:
    friend class PartitionRange;
    std::vector<int> parts_;
    bool done_ = true;
  };

  iterator begin() const;
  iterator end() const { return {}; }

 private:
  int n_;
};

inline PartitionRange partitions_of(int n) { return PartitionRange(n); }

}  // namespace hurwitz
