#include "hurwitz/catalog.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace hurwitz {

void enumerate_compatible(int d, int n_min, int n_max, const Surface& base, const std::optional<Surface>& cover,
                          const std::function<void(const BranchDatum&)>& visit) {
  if (d < 2) throw std::invalid_argument("degree must be at least 2");
  std::vector<Partition> pool;
  for (Partition p : partitions_of(d))
    if (!p.is_trivial()) pool.push_back(std::move(p));
  const int m = static_cast<int>(pool.size());

  for (int n = std::max(n_min, 0); n <= n_max; ++n) {
    // Non-decreasing indices into the reverse-lexicographic pool give each
    // multiset once, already in descending order.
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<Partition> parts;
      parts.reserve(idx.size());
      for (int i : idx) parts.push_back(pool[static_cast<std::size_t>(i)]);
      std::vector<Surface> covers = infer_cover(base, d, parts);
      std::sort(covers.begin(), covers.end());
      for (const Surface& c : covers) {
        if (cover && c != *cover) continue;
        BranchDatum datum(c, base, d, parts);
        if (is_compatible(datum)) visit(datum);
      }
      int k = n - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - 1) --k;
      if (k < 0) break;
      const int next = idx[static_cast<std::size_t>(k)] + 1;
      for (int j = k; j < n; ++j) idx[static_cast<std::size_t>(j)] = next;
    }
  }
}

std::vector<BranchDatum> enumerate_compatible(int d, int n_min, int n_max, const Surface& base,
                                              const std::optional<Surface>& cover) {
  std::vector<BranchDatum> out;
  enumerate_compatible(d, n_min, n_max, base, cover, [&](const BranchDatum& x) { out.push_back(x); });
  return out;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

VerdictKind kind_from_string(const std::string& s) {
  for (VerdictKind k : {VerdictKind::Incompatible, VerdictKind::Realizable, VerdictKind::Exceptional, VerdictKind::Unknown})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

bool is_prime(int d) {
  if (d < 2) return false;
  for (int q = 2; q * q <= d; ++q)
    if (d % q == 0) return false;
  return true;
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::string percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * static_cast<double>(part) / static_cast<double>(whole));
  return buf;
}

bool has_tag(const CatalogRecord& r, const char* tag) {
  return std::find(r.tags.begin(), r.tags.end(), tag) != r.tags.end();
}

void tally(CatalogSummary& s, const CatalogRecord& r) {
  ++s.records;
  ++s.by_verdict[to_string(r.kind)];
  ++s.by_provenance[r.provenance];
  if (r.kind != VerdictKind::Exceptional) return;
  ++s.exceptional;
  if (has_tag(r, "Thm-even-deg")) ++s.even_deg_covered;
  if (has_tag(r, "Thm-fixpoints")) ++s.fixpoints_covered;
  if (is_prime(r.datum.degree())) ++s.prime_exceptional;
}

}  // namespace

CatalogRecord CatalogRecord::from_verdict(const BranchDatum& datum, const Verdict& verdict, double wall_ms) {
  return {datum, verdict.kind, verdict.provenance, verdict.tags, verdict.witness, verdict.nodes, wall_ms};
}

std::string CatalogRecord::to_line() const {
  std::string tag_list;
  for (std::size_t i = 0; i < tags.size(); ++i) tag_list += (i ? "," : "") + tags[i];
  if (tag_list.empty()) tag_list = "-";
  return datum.to_string() + '\t' + to_string(kind) + '\t' + (provenance.empty() ? "-" : provenance) + '\t' +
         tag_list + '\t' + (witness ? witness->to_compact() : "-") + '\t' + std::to_string(nodes) + '\t' +
         format_ms(wall_ms);
}

CatalogRecord CatalogRecord::parse_line(std::string_view line, int line_no) {
  const auto fail = [line_no](const std::string& why) -> CatalogError {
    return CatalogError("catalog line " + std::to_string(line_no) + ": " + why);
  };
  const std::vector<std::string> f = split(line, '\t');
  if (f.size() != 7) throw fail("expected 7 tab-separated fields, got " + std::to_string(f.size()));
  try {
    CatalogRecord r{BranchDatum::parse(f[0]), kind_from_string(f[1]), f[2] == "-" ? "" : f[2], {}, {}, 0, 0};
    if (r.kind != VerdictKind::Unknown && r.provenance.empty()) throw fail("missing provenance");
    if (f[3] != "-") r.tags = split(f[3], ',');
    if (f[4] != "-") {
      Realization w{r.datum.degree(), {}};
      for (const auto& cyc : split(f[4], ';')) w.taus.push_back(Permutation::parse(cyc, w.degree));
      if (!verify_witness(r.datum, w)) throw fail("witness does not realize the datum");
      r.witness = std::move(w);
    }
    std::size_t used = 0;
    r.nodes = std::stoull(f[5], &used);
    if (used != f[5].size()) throw fail("bad node count");
    r.wall_ms = std::stod(f[6], &used);
    if (used != f[6].size()) throw fail("bad wall time");
    return r;
  } catch (const CatalogError&) {
    throw;
  } catch (const std::exception& e) {
    throw fail(e.what());
  }
}

std::string catalog_header() {
  return std::string("# hurwitz catalog version ") + kToolVersion +
         "\n# datum\tverdict\tprovenance\ttags\twitness\tnodes\twall_ms\n";
}

std::string CatalogSummary::footer() const {
  std::ostringstream out;
  out << "# records " << records << '\n';
  for (const auto& [k, v] : by_verdict) out << "# verdict " << k << ' ' << v << '\n';
  for (const auto& [k, v] : by_provenance) out << "# provenance " << k << ' ' << v << '\n';
  out << "# exceptional covered by Thm-even-deg " << even_deg_covered << '/' << exceptional << " ("
      << percent(even_deg_covered, exceptional) << ")\n";
  out << "# exceptional covered by Thm-fixpoints " << fixpoints_covered << '/' << exceptional << " ("
      << percent(fixpoints_covered, exceptional) << ")\n";
  out << "# prime-degree exceptional " << prime_exceptional << '\n';
  return out.str();
}

std::vector<CatalogRecord> read_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open " + path);
  std::vector<CatalogRecord> out;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.empty() || line.front() == '#') continue;
    out.push_back(CatalogRecord::parse_line(line, line_no));
  }
  return out;
}

CatalogSummary run_catalog(const CatalogOptions& options) {
  std::vector<BranchDatum> data;
  for (int d = std::max(options.d_min, 2); d <= options.d_max; ++d)
    enumerate_compatible(d, 1, options.n_max, Surface::sphere(), std::nullopt,
                         [&](const BranchDatum& x) { data.push_back(x); });

  std::unordered_map<std::string, CatalogRecord> known;
  std::vector<CatalogRecord> extra;  // resumed records outside this run's range
  if (options.resume && std::filesystem::exists(options.path)) {
    std::set<std::string> wanted;
    for (const auto& x : data) wanted.insert(x.to_string());
    for (auto& r : read_catalog(options.path)) {
      std::string key = r.datum.to_string();
      if (known.count(key)) continue;
      if (wanted.count(key))
        known.emplace(std::move(key), std::move(r));
      else
        extra.push_back(std::move(r));
    }
  }

  CatalogSummary summary;
  summary.resumed = known.size() + extra.size();

  // Rewrite the resumed prefix atomically, then append new records.
  const std::string tmp = options.path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CatalogError("cannot write " + tmp);
    out << catalog_header();
    for (const auto& r : extra) {
      out << r.to_line() << '\n';
      tally(summary, r);
    }
    for (const auto& x : data) {
      auto it = known.find(x.to_string());
      if (it == known.end()) continue;
      out << it->second.to_line() << '\n';
      tally(summary, it->second);
    }
    if (!out) throw CatalogError("write failed on " + tmp);
  }
  std::filesystem::rename(tmp, options.path);

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (!known.count(data[i].to_string())) todo.push_back(i);
  if (options.stop_after && todo.size() > *options.stop_after) {
    todo.resize(*options.stop_after);
    summary.complete = false;
  }

  std::ofstream out(options.path, std::ios::app);
  if (!out) throw CatalogError("cannot append to " + options.path);

  ClassifyOptions co;
  co.budget = options.budget;
  co.attach_witness = options.witnesses;

  std::vector<std::optional<CatalogRecord>> slots(todo.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;

  auto worker = [&] {
    while (!abort) {
      const std::size_t i = next++;
      if (i >= todo.size()) return;
      const BranchDatum& datum = data[todo[i]];
      try {
        const auto start = std::chrono::steady_clock::now();
        Verdict v = classify(datum, co);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        CatalogRecord r = CatalogRecord::from_verdict(datum, v, ms);
        std::lock_guard lock(mu);
        slots[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        abort = true;
      }
      ready.notify_all();
    }
  };

  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);

  // The calling thread writes in canonical order; with one worker it also
  // classifies.
  if (workers == 1) worker();
  for (std::size_t i = 0; i < todo.size(); ++i) {
    std::unique_lock lock(mu);
    ready.wait(lock, [&] { return slots[i].has_value() || failure; });
    if (!slots[i]) break;
    CatalogRecord r = std::move(*slots[i]);
    slots[i].reset();
    lock.unlock();
    out << r.to_line() << '\n' << std::flush;
    tally(summary, r);
    ++summary.classified;
  }
  abort = true;
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  if (summary.complete) out << summary.footer();
  if (!out) throw CatalogError("write failed on " + options.path);
  return summary;
}

}  // namespace hurwitz
