#include "hurwitz/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace hurwitz {

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("partition must have at least one part");
  for (int p : parts_)
    if (p < 1) throw std::invalid_argument("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  degree_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

bool Partition::all_divisible_by(int k) const {
  return std::all_of(parts_.begin(), parts_.end(), [k](int p) { return p % k == 0; });
}

int Partition::count(int len) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), len));
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

// ------------------------------------------------------------------ Surface

Surface::Surface(bool orientable, int genus) : orientable_(orientable), genus_(genus) {
  if (genus < 0) throw std::invalid_argument("surface genus must be non-negative");
  if (!orientable && genus < 1)
    throw std::invalid_argument("non-orientable surface must have genus >= 1");
}

std::optional<Surface> Surface::from_euler(bool orientable, int chi) {
  if (orientable) {
    if (chi > 2 || (2 - chi) % 2 != 0) return std::nullopt;
    return Surface(true, (2 - chi) / 2);
  }
  if (chi > 1) return std::nullopt;
  return Surface(false, 2 - chi);
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw ParseError("malformed integer for " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

}  // namespace

Surface Surface::parse(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'O' && text[0] != 'N'))
    throw ParseError("malformed surface '" + std::string(text) + "'");
  const int genus = parse_int(text.substr(1), "surface genus");
  try {
    return Surface(text[0] == 'O', genus);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string Surface::to_string() const {
  return (orientable_ ? "O" : "N") + std::to_string(genus_);
}

// -------------------------------------------------------------- BranchDatum

BranchDatum::BranchDatum(Surface cover, Surface base, int degree, std::vector<Partition> partitions)
    : cover_(cover), base_(base), degree_(degree), partitions_(std::move(partitions)) {
  if (degree_ < 2) throw std::invalid_argument("branch datum degree must be >= 2");
  for (const auto& p : partitions_) {
    if (p.degree() != degree_)
      throw std::invalid_argument("partition " + p.to_string() + " is not a partition of " +
                                  std::to_string(degree_));
    if (p.is_trivial())
      throw std::invalid_argument("trivial partition (1,...,1) is not a branching point");
  }
  std::sort(partitions_.begin(), partitions_.end(), std::greater<>());
}

int BranchDatum::total_preimages() const {
  int total = 0;
  for (const auto& p : partitions_) total += p.length();
  return total;
}

std::string BranchDatum::to_string() const {
  std::string out = "d=" + std::to_string(degree_) + " cover=" + cover_.to_string() +
                    " base=" + base_.to_string() + " parts=[";
  for (std::size_t i = 0; i < partitions_.size(); ++i) {
    if (i) out += '|';
    out += partitions_[i].to_string();
  }
  out += ']';
  return out;
}

BranchDatum BranchDatum::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.size() != 4) throw ParseError("expected 'd=.. cover=.. base=.. parts=[..]'");

  auto value_of = [&](std::size_t i, std::string_view key) -> std::string_view {
    std::string_view tok = tokens[i];
    if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
      throw ParseError("expected field '" + std::string(key) + "=' at position " + std::to_string(i + 1));
    return tok.substr(key.size() + 1);
  };

  const int degree = parse_int(value_of(0, "d"), "d");
  const Surface cover = Surface::parse(value_of(1, "cover"));
  const Surface base = Surface::parse(value_of(2, "base"));
  std::string_view parts = value_of(3, "parts");
  if (parts.size() < 2 || parts.front() != '[' || parts.back() != ']')
    throw ParseError("parts must be bracketed: '" + std::string(parts) + "'");
  parts = parts.substr(1, parts.size() - 2);

  std::vector<Partition> partitions;
  if (!parts.empty()) {
    std::size_t start = 0;
    while (true) {
      const std::size_t bar = parts.find('|', start);
      std::string_view group = parts.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
      std::vector<int> values;
      std::size_t s = 0;
      while (true) {
        const std::size_t comma = group.find(',', s);
        values.push_back(parse_int(group.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s), "part"));
        if (comma == std::string_view::npos) break;
        s = comma + 1;
      }
      try {
        partitions.emplace_back(std::move(values));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
  }
  try {
    return BranchDatum(cover, base, degree, std::move(partitions));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// ------------------------------------------------------------ Compatibility

bool refines_two_halves(const Partition& p) {
  if (p.degree() % 2 != 0) throw std::domain_error("refines_two_halves needs an even degree");
  const int half = p.degree() / 2;
  std::vector<char> reachable(static_cast<std::size_t>(half) + 1, 0);
  reachable[0] = 1;
  for (int part : p.parts())
    for (int s = half; s >= part; --s)
      if (reachable[static_cast<std::size_t>(s - part)]) reachable[static_cast<std::size_t>(s)] = 1;
  return reachable[static_cast<std::size_t>(half)] != 0;
}

CompatibilityReport check_compatibility(const BranchDatum& datum) {
  CompatibilityReport report;
  const int d = datum.degree();
  const int n = datum.branch_points();
  const int ntil = datum.total_preimages();
  const Surface& cover = datum.cover();
  const Surface& base = datum.base();

  auto violate = [&](int c) { report.violated.push_back(c); };

  if (cover.euler_characteristic() - ntil != d * (base.euler_characteristic() - n)) violate(1);
  if ((n * d - ntil) % 2 != 0) violate(2);
  if (base.orientable() && !cover.orientable()) violate(3);
  if (!base.orientable() && d % 2 != 0 && cover.orientable()) violate(4);
  if (!base.orientable() && cover.orientable()) {
    // An odd degree cannot be split into two equal halves at all.
    const bool ok = std::all_of(datum.partitions().begin(), datum.partitions().end(),
                                [d](const Partition& p) { return d % 2 == 0 && refines_two_halves(p); });
    if (!ok) violate(5);
  }
  report.compatible = report.violated.empty();
  return report;
}

std::vector<Surface> infer_cover(const Surface& base, int degree,
                                 const std::vector<Partition>& partitions) {
  const int n = static_cast<int>(partitions.size());
  int ntil = 0;
  for (const auto& p : partitions) ntil += p.length();
  const int chi = ntil + degree * (base.euler_characteristic() - n);

  std::vector<Surface> out;
  // Condition 3: orientable base forces an orientable cover.
  // Condition 4: non-orientable base with odd degree forces a non-orientable cover.
  const bool allow_orientable = base.orientable() || degree % 2 == 0;
  const bool allow_nonorientable = !base.orientable();
  if (allow_orientable)
    if (auto s = Surface::from_euler(true, chi)) out.push_back(*s);
  if (allow_nonorientable)
    if (auto s = Surface::from_euler(false, chi)) out.push_back(*s);
  return out;
}

// ----------------------------------------------------------- PartitionRange

PartitionRange::PartitionRange(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("partitions_of needs n >= 1");
}

PartitionRange::iterator PartitionRange::begin() const {
  iterator it;
  it.parts_ = {n_};
  it.done_ = false;
  return it;
}

PartitionRange::iterator& PartitionRange::iterator::operator++() {
  // Rightmost part larger than 1 is decremented; the freed mass is refilled
  // greedily with parts no larger than the decremented value.
  int ones = 0;
  while (!parts_.empty() && parts_.back() == 1) {
    parts_.pop_back();
    ++ones;
  }
  if (parts_.empty()) {
    done_ = true;
    return *this;
  }
  const int value = --parts_.back();
  int rest = ones + 1;
  while (rest >= value) {
    parts_.push_back(value);
    rest -= value;
  }
  if (rest > 0) parts_.push_back(rest);
  return *this;
}

}  // namespace hurwitz
