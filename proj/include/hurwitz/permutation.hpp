#pragma once

// Permutations of {1..d}. Internally 0-based; every textual form is 1-based
// cycle notation, e.g. "(1 2 3 4)(5 6)", with "()" for the identity.
//
// Composition convention: compose(a, b)(x) = a(b(x)), the right factor acts
// first.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/core.hpp"

namespace hurwitz {

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int degree);
  /// 0-based image array; throws std::invalid_argument if not a bijection.
  static Permutation from_images(std::vector<int> images);
  /// Cycles given on the 1-based ground set; unmentioned points are fixed.
  static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
  /// Cycle notation. Throws ParseError.
  static Permutation parse(std::string_view text, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  /// 0-based image.
  int operator[](int x) const { return images_[static_cast<std::size_t>(x)]; }
  std::span<const int> images() const { return images_; }

  bool is_identity() const;
  /// Disjoint cycles (1-based), each starting at its smallest point, ordered
  /// by that point. Fixed points are included as 1-cycles.
  std::vector<std::vector<int>> cycles() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}
  std::vector<int> images_;
};

Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
/// g p g^-1
Permutation conjugate(const Permutation& p, const Permutation& g);
Partition cycle_type(const Permutation& p);
Partition cycle_type(std::span<const int> images);

/// Orbit of point 0 under the generated group is everything. An empty
/// generator list is transitive only when degree == 1.
bool is_transitive(std::span<const Permutation> gens, int degree);

/// (1..t1)(t1+1..t1+t2)... with cycle lengths taken in the partition's order.
Permutation class_representative(const Partition& type);
/// d! / prod(c_l! l^c_l). Throws std::overflow_error past 64 bits.
std::uint64_t class_size(const Partition& type);
/// Floating-point class size, usable at any degree for ordering.
long double class_size_estimate(const Partition& type);

/// g with g a_i g^-1 = b_i for all i, if one exists. Both tuples must have
/// equal length and degree.
std::optional<Permutation> simultaneous_conjugator(std::span<const Permutation> a,
                                                   std::span<const Permutation> b);

/// Enumerates a conjugacy class of S_d, each element exactly once, by
/// backtracking over cycle notation: the next cycle always starts at the
/// smallest unused point. An optional restriction on the image of point 1
/// partitions the class into independently advanceable sub-ranges.
class ClassIterator {
 public:
  explicit ClassIterator(const Partition& type);
  /// Restricts to permutations p with p(0) in `first_images` (0-based).
  ClassIterator(const Partition& type, std::vector<int> first_images);

  /// Advances to the next element; false once exhausted. Call before the
  /// first access.
  bool next();
  /// 0-based images of the current element.
  std::span<const int> images() const { return images_; }
  Permutation value() const { return Permutation::from_images(images_); }

  /// Disjoint sub-ranges covering this (unstarted) iterator's range.
  std::vector<ClassIterator> split(int parts) const;

 private:
  bool is_cycle_start(int pos) const;
  bool choose(int pos, int after);
  void undo(int pos);
  bool first_image_allowed(int image) const;

  int degree_;
  std::vector<int> lengths_;    // distinct cycle lengths, ascending
  std::vector<int> remaining_;  // unused cycles per distinct length
  std::vector<int> seq_;        // cycle notation, flattened
  std::vector<int> choice_;     // length index at cycle starts, element otherwise
  std::vector<int> start_;      // position where the cycle containing pos starts
  std::vector<int> cycle_len_;
  std::vector<char> used_;
  std::vector<int> images_;
  std::vector<char> allowed_first_;  // empty = unrestricted
  bool started_ = false;
};

}  // namespace hurwitz
