#include "hurwitz/dessin.hpp"

#include <algorithm>
#include <numeric>

namespace hurwitz {

namespace {

int vertex_layer_of(const Dessin& dsn, int dart) {
  return dsn.dart_layer(dart) + (dsn.dart_high(dart) ? 1 : 0);
}

std::string edge_id(const Dessin& dsn, int dart) {
  return std::to_string(dsn.dart_layer(dart)) + "." + std::to_string(dsn.dart_label(dart));
}

}  // namespace

Dessin Dessin::from_rotation(int branch_points, int degree, std::vector<int> rotation) {
  if (branch_points < 3) throw DessinError("a dessin needs at least three branching points");
  if (degree < 1) throw DessinError("dessin degree must be positive");
  Dessin dsn;
  dsn.n_ = branch_points;
  dsn.d_ = degree;
  const int darts = dsn.dart_count();
  if (static_cast<int>(rotation.size()) != darts)
    throw DessinError("rotation has " + std::to_string(rotation.size()) + " entries, expected " +
                      std::to_string(darts));
  std::vector<char> hit(static_cast<std::size_t>(darts), 0);
  for (int y : rotation) {
    if (y < 0 || y >= darts || hit[static_cast<std::size_t>(y)]) throw DessinError("rotation is not a bijection on darts");
    hit[static_cast<std::size_t>(y)] = 1;
  }
  dsn.rotation_ = std::move(rotation);
  const auto rho = [&](int x) { return dsn.rotation_[static_cast<std::size_t>(x)]; };

  // Vertices are rotation orbits, ordered by layer and then smallest dart.
  dsn.vertex_of_.assign(static_cast<std::size_t>(darts), -1);
  std::vector<Vertex> found;
  for (int s = 0; s < darts; ++s) {
    if (dsn.vertex_of_[static_cast<std::size_t>(s)] != -1) continue;
    Vertex v{vertex_layer_of(dsn, s), 0, {}};
    int x = s;
    do {
      if (vertex_layer_of(dsn, x) != v.layer)
        throw DessinError("rotation mixes darts of different vertex layers");
      dsn.vertex_of_[static_cast<std::size_t>(x)] = static_cast<int>(found.size());
      v.darts.push_back(x);
      x = rho(x);
    } while (x != s);
    if (v.layer > 1 && v.layer < branch_points - 1) {
      for (int y : v.darts)
        if (dsn.dart_high(y) == dsn.dart_high(rho(y)))
          throw DessinError("edges of consecutive layers do not alternate around a middle vertex");
    }
    found.push_back(std::move(v));
  }
  std::vector<int> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return found[static_cast<std::size_t>(a)].layer < found[static_cast<std::size_t>(b)].layer;
  });
  std::vector<int> renumber(found.size());
  std::vector<int> next_id(static_cast<std::size_t>(branch_points), 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = std::move(found[static_cast<std::size_t>(order[i])]);
    v.id = next_id[static_cast<std::size_t>(v.layer)]++;
    renumber[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    dsn.vertices_.push_back(std::move(v));
  }
  for (int& v : dsn.vertex_of_) v = renumber[static_cast<std::size_t>(v)];

  // Connectivity of the underlying graph.
  std::vector<int> parent(dsn.vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  int components = static_cast<int>(parent.size());
  for (int x = 0; x < darts; x += 2) {
    const int a = root(dsn.vertex_of(x));
    const int b = root(dsn.vertex_of(x + 1));
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  if (components != 1) throw DessinError("disconnected dessin");

  // Faces: orbits of rho^-1 composed with the edge involution.
  std::vector<int> rho_inv(static_cast<std::size_t>(darts));
  for (int x = 0; x < darts; ++x) rho_inv[static_cast<std::size_t>(rho(x))] = x;
  dsn.face_of_.assign(static_cast<std::size_t>(darts), -1);
  for (int s = 0; s < darts; ++s) {
    if (dsn.face_of_[static_cast<std::size_t>(s)] != -1) continue;
    std::vector<int> face;
    int x = s;
    do {
      dsn.face_of_[static_cast<std::size_t>(x)] = static_cast<int>(dsn.faces_.size());
      face.push_back(x);
      x = rho_inv[static_cast<std::size_t>(x ^ 1)];
    } while (x != s);
    dsn.faces_.push_back(std::move(face));
  }
  return dsn;
}

std::vector<int> Dessin::valences(int layer) const {
  std::vector<int> out;
  for (const auto& v : vertices_)
    if (v.layer == layer) out.push_back(static_cast<int>(v.darts.size()));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<int> Dessin::face_lengths() const {
  std::vector<int> out;
  for (const auto& f : faces_) out.push_back(static_cast<int>(f.size()));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::string Dessin::to_export() const {
  std::string out;
  for (const auto& v : vertices_) {
    out += "vertex " + std::to_string(v.layer) + " " + std::to_string(v.id) + " rot=";
    for (std::size_t i = 0; i < v.darts.size(); ++i) out += (i ? "," : "") + edge_id(*this, v.darts[i]);
    out += "\n";
  }
  for (int x = 0; x < dart_count(); x += 2) {
    out += "edge " + std::to_string(dart_layer(x)) + " " + std::to_string(dart_label(x)) + " " +
           std::to_string(vertices_[static_cast<std::size_t>(vertex_of(x))].id) + " " +
           std::to_string(vertices_[static_cast<std::size_t>(vertex_of(x + 1))].id) + "\n";
  }
  for (const auto& f : faces_) {
    out += "face len=" + std::to_string(f.size()) + " edges=";
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + edge_id(*this, f[i]);
    out += "\n";
  }
  return out;
}

Dessin dessin_from_permutations(std::span<const Permutation> taus) {
  if (taus.size() < 2) throw DessinError("a dessin needs at least two permutations");
  const int d = taus[0].degree();
  for (const auto& t : taus)
    if (t.degree() != d) throw DessinError("permutations of different degrees");
  if (!is_transitive(taus, d)) throw DessinError("disconnected dessin: permutations are not transitive");

  const int n = static_cast<int>(taus.size()) + 1;
  const int layers = n - 2;
  std::vector<Permutation> inv;
  for (const auto& t : taus) inv.push_back(inverse(t));
  auto dart = [d](int layer, int k, bool high) { return ((layer - 1) * d + (k - 1)) * 2 + (high ? 1 : 0); };

  std::vector<int> rotation(static_cast<std::size_t>(2 * layers * d));
  for (int k = 1; k <= d; ++k) {
    // V_1: e_1^(k) is followed by e_1^(tau_1^-1 k).
    rotation[static_cast<std::size_t>(dart(1, k, false))] = dart(1, inv[0][k - 1] + 1, false);
    // V_i, 2 <= i <= n-2: e_i^(k), e_{i-1}^(k), e_i^(tau_i^-1 k), ...
    for (int i = 2; i <= n - 2; ++i) {
      rotation[static_cast<std::size_t>(dart(i, k, false))] = dart(i - 1, k, true);
      rotation[static_cast<std::size_t>(dart(i - 1, k, true))] =
          dart(i, inv[static_cast<std::size_t>(i - 1)][k - 1] + 1, false);
    }
    // V_{n-1}: e_{n-2}^(k) is followed by e_{n-2}^(tau_{n-1}^-1 k).
    rotation[static_cast<std::size_t>(dart(layers, k, true))] =
        dart(layers, inv[static_cast<std::size_t>(n - 2)][k - 1] + 1, true);
  }
  return Dessin::from_rotation(n, d, std::move(rotation));
}

std::vector<Permutation> permutations_from_dessin(const Dessin& dsn) {
  const int n = dsn.branch_points();
  const int d = dsn.degree();
  const int layers = n - 2;
  const auto rho = [&](int x) { return dsn.rotation()[static_cast<std::size_t>(x)]; };

  // label[layer-1][k-1]: new number of edge e_layer^(k).
  std::vector<std::vector<int>> label(static_cast<std::size_t>(layers), std::vector<int>(static_cast<std::size_t>(d), 0));
  int next = 1;
  for (const auto& v : dsn.vertices()) {
    if (v.layer != 1) continue;
    for (int x : v.darts) label[0][static_cast<std::size_t>(dsn.dart_label(x) - 1)] = next++;
  }
  if (next != d + 1) throw DessinError("malformed dessin: V_1 does not carry every edge of E_1");
  for (int i = 2; i <= layers; ++i) {
    std::vector<char> used(static_cast<std::size_t>(d) + 1, 0);
    for (int k = 1; k <= d; ++k) {
      const int y = rho(dsn.dart(i, k, false));
      if (!dsn.dart_high(y) || dsn.dart_layer(y) != i - 1)
        throw DessinError("malformed dessin: e_i is not followed by an edge of E_{i-1}");
      const int l = label[static_cast<std::size_t>(i - 2)][static_cast<std::size_t>(dsn.dart_label(y) - 1)];
      if (used[static_cast<std::size_t>(l)]) throw DessinError("malformed dessin: edge numbering is not a bijection");
      used[static_cast<std::size_t>(l)] = 1;
      label[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] = l;
    }
  }
  auto number = [&](int x) {
    return label[static_cast<std::size_t>(dsn.dart_layer(x) - 1)][static_cast<std::size_t>(dsn.dart_label(x) - 1)];
  };

  std::vector<Permutation> taus;
  for (int i = 1; i <= n - 1; ++i) {
    // The rotation reads off the inverse of tau_i.
    std::vector<int> read(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) {
      int x;
      int y;
      if (i <= layers) {
        x = dsn.dart(i, k, false);
        y = i == 1 ? rho(x) : rho(rho(x));
      } else {
        x = dsn.dart(layers, k, true);
        y = rho(x);
      }
      read[static_cast<std::size_t>(number(x) - 1)] = number(y) - 1;
    }
    try {
      taus.push_back(inverse(Permutation::from_images(std::move(read))));
    } catch (const std::invalid_argument&) {
      throw DessinError("malformed dessin: rotation does not induce a permutation");
    }
  }
  return taus;
}

bool validate_against_datum(const Dessin& dsn, const BranchDatum& datum) {
  const int n = dsn.branch_points();
  if (!datum.base().is_sphere() || datum.branch_points() != n || datum.degree() != dsn.degree()) return false;
  std::vector<std::vector<int>> derived;
  for (int layer = 1; layer <= n - 1; ++layer) {
    std::vector<int> vals = dsn.valences(layer);
    if (layer > 1 && layer < n - 1) {
      for (int& v : vals) {
        if (v % 2 != 0) return false;
        v /= 2;
      }
    }
    derived.push_back(std::move(vals));
  }
  std::vector<int> lengths = dsn.face_lengths();
  for (int& l : lengths) {
    if (l % (2 * (n - 2)) != 0) return false;
    l /= 2 * (n - 2);
  }
  derived.push_back(std::move(lengths));

  std::vector<std::vector<int>> expected;
  for (const auto& p : datum.partitions()) expected.push_back(p.parts());
  std::sort(derived.begin(), derived.end());
  std::sort(expected.begin(), expected.end());
  if (derived != expected) return false;
  const auto cover = Surface::from_euler(true, dsn.euler_characteristic());
  return cover && *cover == datum.cover();
}

std::optional<std::vector<int>> checkerboard_coloring(const Dessin& dsn) {
  if (dsn.euler_characteristic() != 2) throw std::domain_error("checkerboard coloring needs a sphere dessin");
  for (const auto& v : dsn.vertices())
    if (v.darts.size() % 2 != 0) return std::nullopt;
  std::vector<int> color(static_cast<std::size_t>(dsn.face_count()), -1);
  std::vector<int> queue{0};
  color[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int f = queue[head];
    for (int x : dsn.faces()[static_cast<std::size_t>(f)]) {
      const int g = dsn.face_of(x ^ 1);
      if (color[static_cast<std::size_t>(g)] == -1) {
        color[static_cast<std::size_t>(g)] = 1 - color[static_cast<std::size_t>(f)];
        queue.push_back(g);
      } else if (color[static_cast<std::size_t>(g)] == color[static_cast<std::size_t>(f)]) {
        return std::nullopt;
      }
    }
  }
  return color;
}

std::vector<int> canonical_code(const Dessin& dsn) {
  const int darts = dsn.dart_count();
  std::vector<int> best;
  std::vector<int> index(static_cast<std::size_t>(darts));
  for (int anchor = 0; anchor < darts; anchor += 2) {
    if (dsn.dart_layer(anchor) != 1) break;
    std::fill(index.begin(), index.end(), -1);
    std::vector<int> order{anchor};
    index[static_cast<std::size_t>(anchor)] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const int x = order[head];
      for (int y : {dsn.rotation()[static_cast<std::size_t>(x)], x ^ 1}) {
        if (index[static_cast<std::size_t>(y)] == -1) {
          index[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
          order.push_back(y);
        }
      }
    }
    std::vector<int> code{dsn.branch_points(), dsn.degree()};
    for (int x : order) {
      code.push_back(dsn.dart_layer(x) * 2 + (dsn.dart_high(x) ? 1 : 0));
      code.push_back(index[static_cast<std::size_t>(dsn.rotation()[static_cast<std::size_t>(x)])]);
    }
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

}  // namespace hurwitz
