#pragma once

// Layered dessins d'enfants on oriented surfaces, stored as rotation systems
// on darts, and the dictionary with tuples tau_1..tau_{n-1}.
//
// Edge e_i^(k) (edge layer i = 1..n-2, label k = 1..d) has a low dart at a
// vertex of V_i and a high dart at a vertex of V_{i+1}. The rotation sends a
// dart to the next dart counterclockwise around its vertex. Around a middle
// vertex each e_i^(k) is followed by e_{i-1}^(k).

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

struct DessinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Dessin {
 public:
  struct Vertex {
    int layer;               // 1..n-1
    int id;                  // 1-based within its layer
    std::vector<int> darts;  // counterclockwise
  };

  /// Builds the dessin from a rotation on darts (see dart()). Throws
  /// DessinError unless the rotation respects the layer structure and the
  /// underlying graph is connected.
  static Dessin from_rotation(int branch_points, int degree, std::vector<int> rotation);

  int branch_points() const { return n_; }
  int degree() const { return d_; }
  int edge_layers() const { return n_ - 2; }
  int dart_count() const { return 2 * (n_ - 2) * d_; }

  /// Dart of e_layer^(k) (1-based layer and k); high = end in V_{layer+1}.
  int dart(int layer, int k, bool high) const { return ((layer - 1) * d_ + (k - 1)) * 2 + (high ? 1 : 0); }
  int dart_layer(int dart) const { return dart / 2 / d_ + 1; }
  int dart_label(int dart) const { return dart / 2 % d_ + 1; }
  bool dart_high(int dart) const { return dart % 2 == 1; }

  std::span<const int> rotation() const { return rotation_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  /// Index into vertices() of the vertex a dart is attached to.
  int vertex_of(int dart) const { return vertex_of_[static_cast<std::size_t>(dart)]; }
  /// Each face as the cyclic sequence of darts it leaves along.
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int face_of(int dart) const { return face_of_[static_cast<std::size_t>(dart)]; }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return (n_ - 2) * d_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  /// Valences of the vertices in a layer, non-increasing.
  std::vector<int> valences(int layer) const;
  std::vector<int> face_lengths() const;

  /// vertex/edge/face lines.
  std::string to_export() const;

 private:
  int n_ = 0;
  int d_ = 0;
  std::vector<int> rotation_;
  std::vector<Vertex> vertices_;
  std::vector<int> vertex_of_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_of_;
};

/// Needs n-1 >= 2 permutations of a common degree generating a transitive
/// group (DessinError otherwise). Vertices of V_i are the cycles of tau_i;
/// the faces correspond to the cycles of tau_n = (tau_1 ... tau_{n-1})^-1
/// and have lengths 2(n-2) times their cycle lengths.
Dessin dessin_from_permutations(std::span<const Permutation> taus);

/// Reads tau_1..tau_{n-1} off the rotation after numbering E_1 from the
/// lowest V_1 vertex around each V_1 vertex in turn. Inverts
/// dessin_from_permutations up to simultaneous conjugation.
std::vector<Permutation> permutations_from_dessin(const Dessin& dessin);

/// Valences of V_1 and V_{n-1}, half valences of middle layers and face
/// lengths over 2(n-2) form the datum's partitions, and the Euler
/// characteristic gives its cover. The base must be the sphere.
bool validate_against_datum(const Dessin& dessin, const BranchDatum& datum);

/// Face colors 0/1 with the two sides of every edge differently colored.
/// Absent when some vertex has odd valence. Throws std::domain_error unless
/// the dessin lies on the sphere.
std::optional<std::vector<int>> checkerboard_coloring(const Dessin& dessin);

/// Rotation-preserving isomorphism invariant respecting layers: equal codes
/// iff the dessins are isomorphic.
std::vector<int> canonical_code(const Dessin& dessin);
inline bool isomorphic(const Dessin& a, const Dessin& b) { return canonical_code(a) == canonical_code(b); }

}  // namespace hurwitz
