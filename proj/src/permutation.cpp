#include "hurwitz/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hurwitz {

Permutation Permutation::identity(int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<int> images) {
  std::vector<char> seen(images.size(), 0);
  for (int y : images) {
    if (y < 0 || y >= static_cast<int>(images.size()) || seen[static_cast<std::size_t>(y)])
      throw std::invalid_argument("image array is not a bijection");
    seen[static_cast<std::size_t>(y)] = 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(static_cast<std::size_t>(degree), -1);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int x = cycle[i];
      const int y = cycle[(i + 1) % cycle.size()];
      if (x < 1 || x > degree || y < 1 || y > degree)
        throw std::invalid_argument("cycle point out of range 1.." + std::to_string(degree));
      if (images[static_cast<std::size_t>(x - 1)] != -1)
        throw std::invalid_argument("point " + std::to_string(x) + " appears twice in cycles");
      images[static_cast<std::size_t>(x - 1)] = y - 1;
    }
  }
  for (int i = 0; i < degree; ++i)
    if (images[static_cast<std::size_t>(i)] == -1) images[static_cast<std::size_t>(i)] = i;
  return from_images(std::move(images));
}

Permutation Permutation::parse(std::string_view text, int degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (i >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("unexpected character in cycle notation: " + std::string(text));
      int value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        value = value * 10 + (text[i++] - '0');
      cycle.push_back(value);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_space();
  }
  try {
    return from_cycles(degree, cycles);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if ((*this)[i] != i) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)[x]) {
      seen[static_cast<std::size_t>(x)] = 1;
      cycle.push_back(x + 1);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string Permutation::to_string() const {
  std::string out;
  for (const auto& cycle : cycles()) {
    if (cycle.size() == 1) continue;
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> images(static_cast<std::size_t>(a.degree()));
  for (int x = 0; x < a.degree(); ++x) images[static_cast<std::size_t>(x)] = a[b[x]];
  return Permutation::from_images(std::move(images));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> images(static_cast<std::size_t>(p.degree()));
  for (int x = 0; x < p.degree(); ++x) images[static_cast<std::size_t>(p[x])] = x;
  return Permutation::from_images(std::move(images));
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
  return compose(g, compose(p, inverse(g)));
}

Partition cycle_type(std::span<const int> images) {
  const std::size_t d = images.size();
  if (d == 0) throw std::invalid_argument("cycle_type of an empty permutation");
  std::vector<char> seen(d, 0);
  std::vector<int> lengths;
  for (std::size_t start = 0; start < d; ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t x = start; !seen[x]; x = static_cast<std::size_t>(images[x])) {
      seen[x] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition(std::move(lengths));
}

Partition cycle_type(const Permutation& p) { return cycle_type(p.images()); }

bool is_transitive(std::span<const Permutation> gens, int degree) {
  if (degree <= 1) return true;
  for (const auto& g : gens)
    if (g.degree() != degree) throw std::invalid_argument("is_transitive: degree mismatch");
  std::vector<char> seen(static_cast<std::size_t>(degree), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (const auto& g : gens) {
      const int y = g[x];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  return static_cast<int>(queue.size()) == degree;
}

Permutation class_representative(const Partition& type) {
  std::vector<int> images(static_cast<std::size_t>(type.degree()));
  int start = 0;
  for (int len : type.parts()) {
    for (int i = 0; i < len; ++i)
      images[static_cast<std::size_t>(start + i)] = start + (i + 1) % len;
    start += len;
  }
  return Permutation::from_images(std::move(images));
}

std::uint64_t class_size(const Partition& type) {
  // Multiply in the factorial one step at a time and divide out the
  // centralizer order as soon as divisibility allows, keeping values small.
  const int d = type.degree();
  unsigned __int128 centralizer = 1;
  for (int len = 1; len <= d; ++len) {
    const int c = type.count(len);
    for (int i = 1; i <= c; ++i) centralizer *= static_cast<unsigned>(i * len);
  }
  unsigned __int128 value = 1;
  for (int i = 2; i <= d; ++i) {
    value *= static_cast<unsigned>(i);
    if (value > (static_cast<unsigned __int128>(1) << 120)) throw std::overflow_error("class size overflow");
  }
  value /= centralizer;
  if (value > UINT64_MAX) throw std::overflow_error("class size exceeds 64 bits");
  return static_cast<std::uint64_t>(value);
}

long double class_size_estimate(const Partition& type) {
  const int d = type.degree();
  long double log_size = std::lgamma(static_cast<long double>(d) + 1);
  for (int len = 1; len <= d; ++len) {
    const int c = type.count(len);
    if (c == 0) continue;
    log_size -= std::lgamma(static_cast<long double>(c) + 1) + c * std::log(static_cast<long double>(len));
  }
  return std::exp(log_size);
}

std::optional<Permutation> simultaneous_conjugator(std::span<const Permutation> a,
                                                   std::span<const Permutation> b) {
  if (a.size() != b.size()) throw std::invalid_argument("simultaneous_conjugator: tuple size mismatch");
  if (a.empty()) return std::nullopt;
  const int d = a[0].degree();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].degree() != d || b[i].degree() != d)
      throw std::invalid_argument("simultaneous_conjugator: degree mismatch");

  // g a_i = b_i g, so g(a_i(x)) = b_i(g(x)): fixing g(0) propagates along
  // the orbit of 0. Points outside that orbit are tried recursively.
  std::vector<int> g(static_cast<std::size_t>(d), -1);
  std::vector<char> hit(static_cast<std::size_t>(d), 0);

  auto extend = [&](int x, int y, std::vector<int>& assigned) -> bool {
    std::vector<std::pair<int, int>> queue{{x, y}};
    if (g[static_cast<std::size_t>(x)] != -1) return g[static_cast<std::size_t>(x)] == y;
    if (hit[static_cast<std::size_t>(y)]) return false;
    g[static_cast<std::size_t>(x)] = y;
    hit[static_cast<std::size_t>(y)] = 1;
    assigned.push_back(x);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [u, v] = queue[head];
      for (std::size_t i = 0; i < a.size(); ++i) {
        const int uu = a[i][u];
        const int vv = b[i][v];
        if (g[static_cast<std::size_t>(uu)] == -1) {
          if (hit[static_cast<std::size_t>(vv)]) return false;
          g[static_cast<std::size_t>(uu)] = vv;
          hit[static_cast<std::size_t>(vv)] = 1;
          assigned.push_back(uu);
          queue.emplace_back(uu, vv);
        } else if (g[static_cast<std::size_t>(uu)] != vv) {
          return false;
        }
      }
    }
    return true;
  };

  auto rollback = [&](std::vector<int>& assigned) {
    for (int x : assigned) {
      hit[static_cast<std::size_t>(g[static_cast<std::size_t>(x)])] = 0;
      g[static_cast<std::size_t>(x)] = -1;
    }
    assigned.clear();
  };

  auto solve = [&](auto&& self) -> bool {
    int x = 0;
    while (x < d && g[static_cast<std::size_t>(x)] != -1) ++x;
    if (x == d) return true;
    for (int y = 0; y < d; ++y) {
      if (hit[static_cast<std::size_t>(y)]) continue;
      std::vector<int> assigned;
      if (extend(x, y, assigned) && self(self)) return true;
      rollback(assigned);
    }
    return false;
  };

  if (!solve(solve)) return std::nullopt;
  return Permutation::from_images(g);
}

// ------------------------------------------------------------ ClassIterator

ClassIterator::ClassIterator(const Partition& type) : degree_(type.degree()) {
  for (int len : type.parts()) {
    if (lengths_.empty() || lengths_.back() != len) {
      lengths_.push_back(len);
      remaining_.push_back(0);
    }
    ++remaining_.back();
  }
  std::reverse(lengths_.begin(), lengths_.end());
  std::reverse(remaining_.begin(), remaining_.end());
  const auto d = static_cast<std::size_t>(degree_);
  seq_.assign(d, -1);
  choice_.assign(d, -1);
  start_.assign(d, 0);
  cycle_len_.assign(d, 0);
  used_.assign(d, 0);
  images_.assign(d, 0);
}

ClassIterator::ClassIterator(const Partition& type, std::vector<int> first_images) : ClassIterator(type) {
  allowed_first_.assign(static_cast<std::size_t>(degree_), 0);
  for (int y : first_images) {
    if (y < 0 || y >= degree_) throw std::invalid_argument("ClassIterator: first image out of range");
    allowed_first_[static_cast<std::size_t>(y)] = 1;
  }
}

bool ClassIterator::first_image_allowed(int image) const {
  return allowed_first_.empty() || allowed_first_[static_cast<std::size_t>(image)];
}

bool ClassIterator::is_cycle_start(int pos) const {
  if (pos == 0) return true;
  const auto prev = static_cast<std::size_t>(pos - 1);
  return pos - start_[prev] == cycle_len_[prev];
}

bool ClassIterator::choose(int pos, int after) {
  const auto p = static_cast<std::size_t>(pos);
  if (is_cycle_start(pos)) {
    int elem = 0;
    while (used_[static_cast<std::size_t>(elem)]) ++elem;
    for (int li = after + 1; li < static_cast<int>(lengths_.size()); ++li) {
      if (remaining_[static_cast<std::size_t>(li)] == 0) continue;
      if (pos == 0 && lengths_[static_cast<std::size_t>(li)] == 1 && !first_image_allowed(0)) continue;
      --remaining_[static_cast<std::size_t>(li)];
      used_[static_cast<std::size_t>(elem)] = 1;
      seq_[p] = elem;
      choice_[p] = li;
      start_[p] = pos;
      cycle_len_[p] = lengths_[static_cast<std::size_t>(li)];
      return true;
    }
    return false;
  }
  for (int e = after + 1; e < degree_; ++e) {
    if (used_[static_cast<std::size_t>(e)]) continue;
    if (pos == 1 && !first_image_allowed(e)) continue;
    used_[static_cast<std::size_t>(e)] = 1;
    seq_[p] = e;
    choice_[p] = e;
    start_[p] = start_[p - 1];
    cycle_len_[p] = cycle_len_[p - 1];
    return true;
  }
  return false;
}

void ClassIterator::undo(int pos) {
  const auto p = static_cast<std::size_t>(pos);
  used_[static_cast<std::size_t>(seq_[p])] = 0;
  if (start_[p] == pos) ++remaining_[static_cast<std::size_t>(choice_[p])];
}

bool ClassIterator::next() {
  int pos;
  bool fresh;
  if (!started_) {
    started_ = true;
    pos = 0;
    fresh = true;
  } else {
    pos = degree_ - 1;
    fresh = false;
  }
  while (true) {
    if (pos < 0) return false;
    if (pos == degree_) break;
    int after = -1;
    if (!fresh) {
      after = choice_[static_cast<std::size_t>(pos)];
      undo(pos);
    }
    if (choose(pos, after)) {
      ++pos;
      fresh = true;
    } else {
      --pos;
      fresh = false;
    }
  }
  for (int p = 0; p < degree_; ++p) {
    const auto up = static_cast<std::size_t>(p);
    const int last = start_[up] + cycle_len_[up] - 1;
    const int next = p == last ? start_[up] : p + 1;
    images_[static_cast<std::size_t>(seq_[up])] = seq_[static_cast<std::size_t>(next)];
  }
  return true;
}

std::vector<ClassIterator> ClassIterator::split(int parts) const {
  if (parts < 1) throw std::invalid_argument("split needs at least one part");
  if (started_) throw std::logic_error("cannot split a started ClassIterator");
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(parts));
  int slot = 0;
  for (int y = 0; y < degree_; ++y) {
    if (!first_image_allowed(y)) continue;
    buckets[static_cast<std::size_t>(slot)].push_back(y);
    slot = (slot + 1) % parts;
  }
  std::vector<ClassIterator> out;
  out.reserve(buckets.size());
  for (auto& bucket : buckets) {
    ClassIterator it = *this;
    it.allowed_first_.assign(static_cast<std::size_t>(degree_), 0);
    for (int y : bucket) it.allowed_first_[static_cast<std::size_t>(y)] = 1;
    out.push_back(std::move(it));
  }
  return out;
}

}  // namespace hurwitz
