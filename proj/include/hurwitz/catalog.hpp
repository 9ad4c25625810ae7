#pragma once

// Enumeration of compatible data and the resumable classification catalog.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/criteria.hpp"

namespace hurwitz {

inline constexpr const char* kToolVersion = "1.0.0";

/// Every compatible datum of degree d with n_min <= n <= n_max, the given
/// base and (if set) cover, once each, ordered by n, then by the canonical
/// partition list in descending order, then by cover.
void enumerate_compatible(int d, int n_min, int n_max, const Surface& base, const std::optional<Surface>& cover,
                          const std::function<void(const BranchDatum&)>& visit);
std::vector<BranchDatum> enumerate_compatible(int d, int n_min, int n_max, const Surface& base,
                                              const std::optional<Surface>& cover = std::nullopt);

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CatalogRecord {
  BranchDatum datum;
  VerdictKind kind = VerdictKind::Unknown;
  std::string provenance;
  std::vector<std::string> tags;
  std::optional<Realization> witness;
  std::uint64_t nodes = 0;
  double wall_ms = 0;

  static CatalogRecord from_verdict(const BranchDatum& datum, const Verdict& verdict, double wall_ms);
  /// Tab-separated: datum, verdict, provenance, tags, witness, nodes, wall_ms.
  std::string to_line() const;
  /// Throws CatalogError naming line_no.
  static CatalogRecord parse_line(std::string_view line, int line_no);
};

/// Column header and version lines.
std::string catalog_header();

struct CatalogOptions {
  int d_min = 2;
  int d_max = 4;
  int n_max = 5;
  std::uint64_t budget = 1'000'000'000ULL;
  std::string path = "catalog.tsv";
  bool resume = false;
  int threads = 1;
  /// Attach witnesses to criteria-decided realizable records.
  bool witnesses = false;
  /// Classify at most this many new data and stop without a footer.
  std::optional<std::size_t> stop_after;
};

struct CatalogSummary {
  std::size_t records = 0;
  std::size_t classified = 0;  // new in this run
  std::size_t resumed = 0;
  bool complete = true;
  std::map<std::string, std::size_t> by_verdict;
  std::map<std::string, std::size_t> by_provenance;
  std::size_t exceptional = 0;
  std::size_t even_deg_covered = 0;   // exceptional records tagged Thm-even-deg
  std::size_t fixpoints_covered = 0;  // exceptional records tagged Thm-fixpoints
  std::size_t prime_exceptional = 0;

  /// `#`-prefixed footer lines.
  std::string footer() const;
};

/// Reads records of a catalog file. Throws CatalogError on a malformed line.
std::vector<CatalogRecord> read_catalog(const std::string& path);

/// Classifies every compatible sphere-based datum with d_min <= d <= d_max,
/// 1 <= n <= n_max into options.path. With resume, records already in the
/// file are kept and not reclassified.
CatalogSummary run_catalog(const CatalogOptions& options);

}  // namespace hurwitz
