#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hurwitz/catalog.hpp"
#include "oracles.hpp"

using namespace hurwitz;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// File contents with the trailing timing column removed from record lines.
std::string without_timing(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string out, line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() != '#') line = line.substr(0, line.rfind('\t'));
    out += line + '\n';
  }
  return out;
}

std::set<std::string> datum_strings(const std::vector<BranchDatum>& data) {
  std::set<std::string> out;
  for (const auto& x : data) out.insert(x.to_string());
  return out;
}

std::string oracle_string(int d, int chi, const std::vector<std::vector<int>>& parts) {
  std::vector<Partition> ps;
  for (const auto& p : parts) ps.emplace_back(p);
  return BranchDatum(*Surface::from_euler(true, chi), Surface::sphere(), d, ps).to_string();
}

}  // namespace

TEST_CASE("enumerate_compatible matches a brute-force generator over the sphere") {
  for (int d = 2; d <= 7; ++d)
    for (int n = 1; n <= 4; ++n) {
      const auto data = enumerate_compatible(d, n, n, Surface::sphere());
      std::set<std::string> expected, expected_s;
      for (const auto& c : oracle::sphere_base_data(d, n)) {
        expected.insert(oracle_string(d, c.chi, c.parts));
        if (c.chi == 2) expected_s.insert(oracle_string(d, c.chi, c.parts));
      }
      CHECK(datum_strings(data).size() == data.size());  // each once
      CHECK(datum_strings(data) == expected);
      CHECK(datum_strings(enumerate_compatible(d, n, n, Surface::sphere(), Surface::sphere())) == expected_s);
    }
}

TEST_CASE("enumerate_compatible examples") {
  const auto four = datum_strings(enumerate_compatible(4, 3, 3, Surface::sphere(), Surface::sphere()));
  CHECK(four.count("d=4 cover=O0 base=O0 parts=[3,1|2,2|2,2]") == 1);
  CHECK(four.count("d=4 cover=O0 base=O0 parts=[2,2|2,2|2,2]") == 1);

  const auto two = enumerate_compatible(2, 0, 8, Surface::sphere(), Surface::sphere());
  REQUIRE(two.size() == 1);
  CHECK(two[0].to_string() == "d=2 cover=O0 base=O0 parts=[2|2]");

  CHECK(enumerate_compatible(5, 4, 3, Surface::sphere()).empty());
  CHECK_THROWS_AS(enumerate_compatible(1, 0, 3, Surface::sphere()), std::invalid_argument);
}

TEST_CASE("enumerate_compatible order is canonical") {
  const auto data = enumerate_compatible(6, 1, 4, Surface::sphere());
  for (std::size_t i = 1; i < data.size(); ++i) {
    const auto& a = data[i - 1];
    const auto& b = data[i];
    const bool ordered = a.branch_points() < b.branch_points() ||
                         (a.branch_points() == b.branch_points() &&
                          (a.partitions() > b.partitions() || (a.partitions() == b.partitions() && a.cover() < b.cover())));
    CHECK_MESSAGE(ordered, a.to_string() << " before " << b.to_string());
  }
}

TEST_CASE("enumerate_compatible over the projective plane") {
  for (int d = 2; d <= 6; ++d)
    for (int n = 0; n <= 3; ++n) {
      const auto data = enumerate_compatible(d, n, n, Surface::projective_plane());
      std::set<std::string> expected;
      std::vector<std::vector<int>> pool;
      for (const auto& p : oracle::partitions(d))
        if (p.front() > 1) pool.push_back(p);
      // All n-multisets with both orientability choices of the forced
      // characteristic, filtered by the full compatibility check.
      std::function<void(std::size_t, std::vector<Partition>&)> rec = [&](std::size_t from, std::vector<Partition>& cur) {
        if (static_cast<int>(cur.size()) == n) {
          int m = 0;
          for (const auto& p : cur) m += p.length();
          const int chi = d * (1 - n) + m;
          for (bool orientable : {true, false})
            if (auto s = Surface::from_euler(orientable, chi)) {
              const BranchDatum x(*s, Surface::projective_plane(), d, cur);
              if (is_compatible(x)) expected.insert(x.to_string());
            }
          return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
          cur.emplace_back(pool[i]);
          rec(i, cur);
          cur.pop_back();
        }
      };
      std::vector<Partition> cur;
      rec(0, cur);
      CHECK(datum_strings(data) == expected);
      CHECK(datum_strings(data).size() == data.size());
    }
}

TEST_CASE("record lines roundtrip") {
  const BranchDatum datum = BranchDatum::parse("d=4 cover=O0 base=O0 parts=[4|3,1|2,1,1]");
  ClassifyOptions with;
  with.attach_witness = true;
  const CatalogRecord r = CatalogRecord::from_verdict(datum, classify(datum, with), 1.5);
  const std::string line = r.to_line();
  CHECK(std::count(line.begin(), line.end(), '\t') == 6);
  const CatalogRecord back = CatalogRecord::parse_line(line, 1);
  CHECK(back.to_line() == line);
  REQUIRE(back.witness.has_value());
  CHECK(verify_witness(datum, *back.witness));

  CHECK_THROWS_WITH_AS(CatalogRecord::parse_line("garbage", 17), doctest::Contains("line 17"), CatalogError);
  CHECK_THROWS_AS(CatalogRecord::parse_line("d=4 cover=O0 base=O0 parts=[3,1|2,2|2,2]\tMAYBE\tx\tx\t-\t0\t0", 2), CatalogError);
  CHECK_THROWS_AS(CatalogRecord::parse_line("d=4 cover=O0 base=O0 parts=[3,1|2,2|2,2]\tEXCEPTIONAL\t-\t-\t-\t0\t0", 2),
                  CatalogError);
  // A witness that does not realize the datum is refused.
  CHECK_THROWS_AS(
      CatalogRecord::parse_line("d=4 cover=O0 base=O0 parts=[4|3,1|2,1,1]\tREALIZABLE\tx\tx\t(1 2);(1 2);()\t0\t0", 3),
      CatalogError);
}

TEST_CASE("degree four catalog") {
  CatalogOptions o;
  o.d_min = 4;
  o.d_max = 4;
  o.n_max = 6;
  o.path = "cat_d4.tsv";
  const CatalogSummary s = run_catalog(o);
  CHECK(s.complete);
  std::set<std::string> exceptional;
  for (const auto& r : read_catalog(o.path)) {
    CHECK(r.kind != VerdictKind::Unknown);
    if (r.kind == VerdictKind::Exceptional) exceptional.insert(r.datum.to_string());
  }
  std::set<std::string> expected;
  for (int n = 3; n <= 6; ++n) {
    std::vector<Partition> parts(static_cast<std::size_t>(n - 1), Partition({2, 2}));
    parts.emplace_back(std::vector<int>{3, 1});
    for (const auto& c : infer_cover(Surface::sphere(), 4, parts))
      expected.insert(BranchDatum(c, Surface::sphere(), 4, parts).to_string());
  }
  CHECK(exceptional == expected);
  CHECK(s.exceptional == expected.size());
}

TEST_CASE("degree six catalog contains the (x, 6-x) examples") {
  CatalogOptions o;
  o.d_min = 5;
  o.d_max = 7;
  o.n_max = 3;
  o.path = "cat_d6.tsv";
  const CatalogSummary s = run_catalog(o);
  std::map<std::string, VerdictKind> kinds;
  for (const auto& r : read_catalog(o.path)) kinds[r.datum.to_string()] = r.kind;
  CHECK(kinds.at("d=6 cover=O0 base=O0 parts=[4,2|2,2,2|2,2,2]") == VerdictKind::Exceptional);
  CHECK(kinds.at("d=6 cover=O0 base=O0 parts=[3,3|2,2,2|2,2,2]") == VerdictKind::Realizable);
  CHECK(s.prime_exceptional == 0);
  for (const auto& [text, kind] : kinds)
    if (BranchDatum::parse(text).degree() != 6) CHECK(kind == VerdictKind::Realizable);
  const std::string file = slurp(o.path);
  CHECK(file.rfind(std::string("# hurwitz catalog version ") + kToolVersion, 0) == 0);
  CHECK(file.find("# prime-degree exceptional 0\n") != std::string::npos);
  CHECK(file.find("# verdict EXCEPTIONAL ") != std::string::npos);
}

TEST_CASE("catalog runs are deterministic, resumable and thread-independent") {
  CatalogOptions o;
  o.d_max = 6;
  o.n_max = 4;
  o.path = "cat_a.tsv";
  run_catalog(o);
  o.path = "cat_b.tsv";
  run_catalog(o);
  CHECK(without_timing("cat_a.tsv") == without_timing("cat_b.tsv"));

  o.path = "cat_threads.tsv";
  o.threads = 3;
  run_catalog(o);
  CHECK(without_timing("cat_a.tsv") == without_timing("cat_threads.tsv"));
  o.threads = 1;

  o.path = "cat_resumed.tsv";
  std::filesystem::remove(o.path);
  o.stop_after = 100;
  CatalogSummary first = run_catalog(o);
  CHECK_FALSE(first.complete);
  CHECK(first.classified == 100);
  CHECK(slurp(o.path).find("# records") == std::string::npos);
  o.resume = true;
  o.stop_after = 57;
  run_catalog(o);
  o.stop_after.reset();
  CatalogSummary last = run_catalog(o);
  CHECK(last.complete);
  CHECK(last.resumed == 157);
  CHECK(without_timing("cat_a.tsv") == without_timing("cat_resumed.tsv"));

  // Resuming a complete catalog classifies nothing and keeps the file.
  const CatalogSummary again = run_catalog(o);
  CHECK(again.classified == 0);
  CHECK(without_timing("cat_a.tsv") == without_timing("cat_resumed.tsv"));
}

TEST_CASE("corrupt resume file is refused with its line number") {
  CatalogOptions o;
  o.d_max = 3;
  o.n_max = 3;
  o.path = "cat_corrupt.tsv";
  run_catalog(o);
  {
    std::ofstream out(o.path, std::ios::app);
    out << "d=3 cover=O0 base=O0 parts=[3|3]\tREALIZABLE\n";
  }
  std::size_t lines = 0;
  {
    std::ifstream in(o.path);
    std::string line;
    while (std::getline(in, line)) ++lines;
  }
  o.resume = true;
  const std::string expected = "line " + std::to_string(lines);
  CHECK_THROWS_WITH_AS(run_catalog(o), doctest::Contains(expected.c_str()), CatalogError);
}

TEST_CASE("search-exhausted records are confirmed by the naive oracle") {
  CatalogOptions o;
  o.d_max = 8;
  o.n_max = 5;
  o.path = "cat_d8.tsv";
  run_catalog(o);
  std::map<int, oracle::NaiveSearch> naive;
  int confirmed = 0;
  for (const auto& r : read_catalog(o.path)) {
    if (r.provenance != "search-exhausted") continue;
    auto it = naive.try_emplace(r.datum.degree(), r.datum.degree()).first;
    CHECK_MESSAGE(!it->second.realizable(r.datum), r.datum.to_string());
    ++confirmed;
  }
  CHECK(confirmed > 0);
}
