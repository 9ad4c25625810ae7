// Command-line front end: compatibility checks, classification, search,
// enumeration, catalogs, dessins and block decompositions.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hurwitz/blocks.hpp"
#include "hurwitz/catalog.hpp"
#include "hurwitz/criteria.hpp"
#include "hurwitz/dessin.hpp"

using namespace hurwitz;

namespace {

enum Exit { kOk = 0, kOther = 1, kIncompatible = 2, kBudget = 3, kParse = 4 };

// The datum may arrive as one quoted argument or as its four tokens.
BranchDatum datum_from(const std::vector<std::string>& words) {
  std::string text;
  for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
  return BranchDatum::parse(text);
}

int exit_for(const Verdict& v) {
  if (v.kind == VerdictKind::Incompatible) return kIncompatible;
  if (v.kind == VerdictKind::Unknown) return kBudget;
  return kOk;
}

int cmd_check(const BranchDatum& datum, std::uint64_t budget) {
  const CompatibilityReport report = check_compatibility(datum);
  if (report.compatible) {
    std::cout << "compatible\n";
  } else {
    std::cout << "incompatible: violates condition";
    for (int c : report.violated) std::cout << ' ' << c;
    std::cout << '\n';
  }
  ClassifyOptions co;
  co.budget = budget;
  const Verdict v = classify(datum, co);
  std::cout << verdict_line(datum, v) << '\n';
  return exit_for(v);
}

int cmd_realize(const BranchDatum& datum, std::uint64_t budget, bool witness) {
  ClassifyOptions co;
  co.budget = budget;
  co.attach_witness = witness;
  const Verdict v = classify(datum, co);
  std::cout << to_string(v.kind) << " tag=" << v.provenance;
  if (v.tags.size() > 1) {
    std::cout << " also=";
    for (std::size_t i = 1; i < v.tags.size(); ++i) std::cout << (i > 1 ? "," : "") << v.tags[i];
  }
  std::cout << " nodes=" << v.nodes << '\n';
  if (witness && v.witness) std::cout << v.witness->to_lines();
  return exit_for(v);
}

// Search on a sphere datum; prints the verdict and returns the witness if any.
std::optional<Realization> find_witness(const BranchDatum& datum, std::uint64_t budget, int& code) {
  code = kOk;
  if (!is_compatible(datum)) {
    std::cout << verdict_line(datum, classify(datum)) << '\n';
    code = kIncompatible;
    return std::nullopt;
  }
  if (!datum.base().is_sphere()) {
    std::cerr << "error: this command needs the sphere as base\n";
    code = kOther;
    return std::nullopt;
  }
  SearchOptions so;
  so.budget = budget;
  SearchResult r = search(datum, so);
  if (r.status == SearchStatus::BudgetExceeded) {
    std::cout << datum.to_string() << " UNKNOWN tag=budget-exceeded nodes=" << r.nodes << '\n';
    code = kBudget;
  } else if (r.status == SearchStatus::Exhausted) {
    std::cout << datum.to_string() << " EXCEPTIONAL tag=search-exhausted nodes=" << r.nodes << '\n';
  }
  return std::move(r.witness);
}

int cmd_dessin(const BranchDatum& datum, std::uint64_t budget) {
  if (datum.branch_points() < 3) {
    std::cerr << "error: a dessin needs at least 3 branching points\n";
    return kOther;
  }
  int code = kOk;
  auto w = find_witness(datum, budget, code);
  if (!w) return code;
  std::cout << "# " << datum.to_string() << '\n' << w->to_lines();
  const std::span<const Permutation> taus(w->taus.data(), w->taus.size() - 1);
  std::cout << dessin_from_permutations(taus).to_export();
  return kOk;
}

int cmd_decompose(const BranchDatum& datum, int k, std::uint64_t budget) {
  int code = kOk;
  auto w = find_witness(datum, budget, code);
  if (!w) return code;
  std::cout << w->to_lines();
  const auto bd = find_block_decomposition(w->taus, k);
  if (!bd) {
    std::cout << "no block system of order " << k << '\n';
    return kOk;
  }
  std::cout << bd->to_string() << '\n';
  const auto [inner, outer] = factor_covering(datum, *w, *bd);
  std::cout << "inner " << inner.to_string() << '\n' << "outer " << outer.to_string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branched covering realizability toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> words;
  std::uint64_t budget = 1'000'000'000ULL;
  bool witness = false;

  auto* check = app.add_subcommand("check", "Compatibility report and verdict");
  check->add_option("datum", words, "d=<int> cover=<SURF> base=<SURF> parts=[..|..]")->required()->expected(1, 4);
  check->add_option("--budget", budget, "Search budget");

  auto* realize = app.add_subcommand("realize", "Verdict with optional witness");
  realize->add_option("datum", words)->required()->expected(1, 4);
  realize->add_option("--budget", budget, "Search budget");
  realize->add_flag("--witness", witness, "Search for and print a witness");

  int d = 0, n_min = 0, n_max = 4;
  std::string base = "O0", cover;
  auto* enumerate = app.add_subcommand("enumerate", "List compatible data");
  enumerate->add_option("--d", d)->required()->check(CLI::Range(2, 64));
  enumerate->add_option("--n-min", n_min);
  enumerate->add_option("--n-max", n_max);
  enumerate->add_option("--base", base);
  enumerate->add_option("--cover", cover);

  CatalogOptions cat;
  auto* catalog = app.add_subcommand("catalog", "Classify all sphere data into a TSV catalog");
  catalog->add_option("--d-max", cat.d_max)->required()->check(CLI::Range(2, 64));
  catalog->add_option("--d-min", cat.d_min);
  catalog->add_option("--n-max", cat.n_max);
  catalog->add_option("--budget", cat.budget);
  catalog->add_option("--out", cat.path);
  catalog->add_option("--threads", cat.threads);
  catalog->add_flag("--resume", cat.resume);
  catalog->add_flag("--witnesses", cat.witnesses, "Attach witnesses to criteria verdicts");

  auto* dessin = app.add_subcommand("dessin", "Search, then export the dessin of the witness");
  dessin->add_option("datum", words)->required()->expected(1, 4);
  dessin->add_option("--budget", budget);

  int k = 0;
  auto* decompose = app.add_subcommand("decompose", "Witness, block system and factored data");
  decompose->add_option("datum", words)->required()->expected(1, 4);
  decompose->add_option("--k", k)->required();
  decompose->add_option("--budget", budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*enumerate) {
      const Surface b = Surface::parse(base);
      std::optional<Surface> c;
      if (!cover.empty()) c = Surface::parse(cover);
      enumerate_compatible(d, n_min, n_max, b, c, [](const BranchDatum& x) { std::cout << x.to_string() << '\n'; });
      return kOk;
    }
    if (*catalog) {
      const CatalogSummary s = run_catalog(cat);
      std::cout << "wrote " << cat.path << ": " << s.classified << " classified, " << s.resumed << " resumed\n"
                << s.footer();
      return s.by_verdict.count("UNKNOWN") ? kBudget : kOk;
    }
    const BranchDatum datum = datum_from(words);
    if (*check) return cmd_check(datum, budget);
    if (*realize) return cmd_realize(datum, budget, witness);
    if (*dessin) return cmd_dessin(datum, budget);
    if (*decompose) return cmd_decompose(datum, k, budget);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
