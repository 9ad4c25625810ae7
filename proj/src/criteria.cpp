#include "hurwitz/criteria.hpp"

#include <algorithm>
#include <numeric>

namespace hurwitz {

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Incompatible: return "INCOMPATIBLE";
    case VerdictKind::Realizable: return "REALIZABLE";
    case VerdictKind::Exceptional: return "EXCEPTIONAL";
    case VerdictKind::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

bool sphere_to_sphere(const BranchDatum& datum) {
  return datum.base().is_sphere() && datum.cover().is_sphere();
}

bool all_parts_equal(const Partition& p, int value) {
  return std::all_of(p.parts().begin(), p.parts().end(), [value](int x) { return x == value; });
}

// (h, 1, ..., 1)
bool is_hook(const Partition& p, int head) {
  return p.largest() == head && p.count(1) == p.length() - 1;
}

bool is_transposition(const Partition& p) { return p.largest() == 2 && p.count(2) == 1; }

// Partition shaped as the given leading parts followed by 2s and then `ones` 1s.
bool is_shape(const Partition& p, std::vector<int> lead, int ones) {
  int rest = p.degree() - ones;
  for (int x : lead) rest -= x;
  if (rest < 0 || rest % 2 != 0) return false;
  std::vector<int> parts = std::move(lead);
  parts.insert(parts.end(), static_cast<std::size_t>(rest / 2), 2);
  parts.insert(parts.end(), static_cast<std::size_t>(ones), 1);
  return Partition(std::move(parts)) == p;
}

}  // namespace

std::optional<Verdict> thm_chi_nonpositive(const BranchDatum& datum) {
  if (datum.base().euler_characteristic() > 0) return std::nullopt;
  if (datum.base().orientable()) return Verdict::realizable("Thm-OO");
  if (!datum.cover().orientable()) return Verdict::realizable("Thm-NN");
  return Verdict::realizable("Cor-ON");
}

std::optional<Verdict> thm_projective(const BranchDatum& datum) {
  if (datum.base().is_projective_plane() && !datum.cover().orientable()) return Verdict::realizable("Thm-NP");
  return std::nullopt;
}

std::optional<Verdict> thm_full_cycle(const BranchDatum& datum) {
  for (const auto& p : datum.partitions())
    if (p.is_full_cycle()) return Verdict::realizable("Thm-full-cycle");
  return std::nullopt;
}

std::optional<Verdict> thm_eks_large(const BranchDatum& datum) {
  if (!datum.base().is_sphere()) return std::nullopt;
  const int d = datum.degree();
  const int n = datum.branch_points();
  if (d == 4) {
    const Partition p31({3, 1});
    const Partition p22({2, 2});
    const int c31 = static_cast<int>(std::count(datum.partitions().begin(), datum.partitions().end(), p31));
    const int c22 = static_cast<int>(std::count(datum.partitions().begin(), datum.partitions().end(), p22));
    if (c31 == 1 && c22 == n - 1) return Verdict::exceptional("Thm-EKS-d4");
    return Verdict::realizable("Thm-EKS-d4");
  }
  if (n * d - datum.total_preimages() >= 3 * (d - 1)) return Verdict::realizable("Thm-EKS-bound");
  return std::nullopt;
}

std::optional<Verdict> prop_eks_222(const BranchDatum& datum) {
  const int d = datum.degree();
  if (!sphere_to_sphere(datum) || datum.branch_points() != 3 || d % 2 != 0) return std::nullopt;
  for (int i = 0; i < 3; ++i) {
    const Partition& x = datum.partition(i);
    if (x.length() != 2) continue;
    if (!all_parts_equal(datum.partition((i + 1) % 3), 2) || !all_parts_equal(datum.partition((i + 2) % 3), 2))
      continue;
    if (x.largest() * 2 == d) return Verdict::realizable("Prop-EKS-222");
    return Verdict::exceptional("Prop-EKS-222");
  }
  return std::nullopt;
}

std::optional<Verdict> prop_baranski(const BranchDatum& datum) {
  if (!sphere_to_sphere(datum)) return std::nullopt;
  const int d = datum.degree();
  const int n = datum.branch_points();
  if (n >= d) return Verdict::realizable("Prop-n-ge-d");

  // reach[r][s]: some r partitions have m-sum s.
  const int max_sum = datum.total_preimages();
  std::vector<std::vector<char>> reach(static_cast<std::size_t>(n) + 1,
                                       std::vector<char>(static_cast<std::size_t>(max_sum) + 1, 0));
  reach[0][0] = 1;
  for (const auto& p : datum.partitions()) {
    const int m = p.length();
    for (int r = n; r >= 1; --r)
      for (int s = max_sum; s >= m; --s)
        if (reach[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(s - m)])
          reach[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = 1;
  }
  for (int r = 1; r <= n; ++r) {
    const int target = (r - 1) * d + 1;
    if (target <= max_sum && reach[static_cast<std::size_t>(r)][static_cast<std::size_t>(target)])
      return Verdict::realizable("Prop-long-cycles");
  }

  const bool small = std::all_of(datum.partitions().begin(), datum.partitions().end(), [d](const Partition& p) {
    return p.largest() <= 2 && 2 * (d - p.length()) * (d - p.length()) <= d;
  });
  if (small) return Verdict::realizable("Prop-small-parts");
  return std::nullopt;
}

std::optional<Verdict> prop_53(const BranchDatum& datum) {
  const int d = datum.degree();
  if (!datum.base().is_sphere() || datum.branch_points() != 3 || d < 8 || d % 2 != 0) return std::nullopt;
  const bool torus = datum.cover() == Surface::torus();
  const bool sphere = datum.cover().is_sphere();
  if (!torus && !sphere) return std::nullopt;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const Partition& third = datum.partition(3 - a - b);
      if (!all_parts_equal(datum.partition(a), 2) || !is_shape(datum.partition(b), {5, 3}, 0)) continue;
      const auto& t = third.parts();
      if (torus && third.length() == 2) {
        if (t[0] * 2 == d && t[1] * 2 == d) return Verdict::exceptional("Prop-53");
        return Verdict::realizable("Prop-53");
      }
      if (sphere && third.length() == 4) {
        const bool paired = t[0] == t[1] && t[2] == t[3] && 2 * (t[0] + t[2]) == d;
        const bool sixth = d % 6 == 0 && t[0] * 2 == d && t[1] * 6 == d && t[2] * 6 == d && t[3] * 6 == d;
        if (paired || sixth) return Verdict::exceptional("Prop-53");
        return Verdict::realizable("Prop-53");
      }
    }
  }
  return std::nullopt;
}

std::optional<Verdict> prop_23(const BranchDatum& datum) {
  const int d = datum.degree();
  if (!sphere_to_sphere(datum) || datum.branch_points() != 3 || d % 2 != 0) return std::nullopt;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const Partition& second = datum.partition(b);
      if (!all_parts_equal(datum.partition(a), 2)) continue;
      if (!is_shape(second, {3, 3}, 0) && !is_shape(second, {3}, 1)) continue;
      if (datum.partition(3 - a - b).largest() * 2 == d) return Verdict::exceptional("Prop-23");
      return Verdict::realizable("Prop-23");
    }
  }
  return std::nullopt;
}

std::optional<Verdict> thm_fixpoints(const BranchDatum& datum) {
  if (!sphere_to_sphere(datum)) return std::nullopt;
  const int d = datum.degree();
  const int n = datum.branch_points();
  for (int k = 2; k < d; ++k) {
    if (d % k != 0) continue;
    for (int i = 0; i < n; ++i) {
      if (!datum.partition(i).all_divisible_by(k)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!datum.partition(j).all_divisible_by(k)) continue;
        for (int l = 0; l < n; ++l)
          if (l != i && l != j && datum.partition(l).largest() > d / k) return Verdict::exceptional("Thm-fixpoints");
      }
    }
  }
  return std::nullopt;
}

std::optional<Verdict> thm_even_deg(const BranchDatum& datum) {
  const int d = datum.degree();
  if (!sphere_to_sphere(datum) || d % 2 != 0) return std::nullopt;
  const int n = datum.branch_points();
  for (int i = 0; i < n; ++i) {
    if (!datum.partition(i).all_divisible_by(2)) continue;
    for (int j = i + 1; j < n; ++j) {
      if (!datum.partition(j).all_divisible_by(2)) continue;
      for (int l = 0; l < n; ++l)
        if (l != i && l != j && !refines_two_halves(datum.partition(l))) return Verdict::exceptional("Thm-even-deg");
    }
  }
  return std::nullopt;
}

std::optional<Verdict> cor_mixed(const BranchDatum& datum) {
  if (!sphere_to_sphere(datum)) return std::nullopt;
  const int d = datum.degree();
  const int n = datum.branch_points();
  for (int k = 2; 2 * k < d; ++k) {
    if (d % (2 * k) != 0) continue;
    for (int a = 0; a < n; ++a) {
      if (!datum.partition(a).all_divisible_by(k)) continue;
      for (int b = 0; b < n; ++b) {
        if (b == a || !datum.partition(b).all_divisible_by(2)) continue;
        for (int c = b + 1; c < n; ++c) {
          if (c == a || !datum.partition(c).all_divisible_by(2)) continue;
          bool violated = datum.partition(b).largest() > d / k || datum.partition(c).largest() > d / k;
          for (int l = 0; l < n && !violated; ++l)
            if (l != a && l != b && l != c && datum.partition(l).largest() > d / (2 * k)) violated = true;
          if (violated) return Verdict::exceptional("Cor-mixed");
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Verdict> thm_odd_divisible(const BranchDatum& datum) {
  if (!datum.base().is_sphere() || datum.branch_points() != 3) return std::nullopt;
  int g = 0;
  for (const auto& p : datum.partitions())
    for (int x : p.parts()) g = std::gcd(g, x);
  while (g % 2 == 0) g /= 2;
  if (g >= 3) return Verdict::realizable("Thm-odd-div");
  return std::nullopt;
}

std::optional<Verdict> lemma_transpos(const BranchDatum& datum) {
  if (!sphere_to_sphere(datum)) return std::nullopt;
  const int d = datum.degree();
  const int n = datum.branch_points();
  if (n < 3) return std::nullopt;
  for (int k = 2; 2 * k <= d; ++k) {
    if (d % k != 0) continue;
    const int h = d / k;
    for (int a = 0; a < n; ++a) {
      if (!datum.partition(a).all_divisible_by(k)) continue;
      for (int b = a + 1; b < n; ++b) {
        if (!datum.partition(b).all_divisible_by(k)) continue;
        const int p = datum.partition(a).length();
        const int q = datum.partition(b).length();
        if (p < 2 || q < 2 || p + q < h + 2) continue;
        int hook = -1;
        bool ok = true;
        for (int l = 0; l < n && ok; ++l) {
          if (l == a || l == b || is_transposition(datum.partition(l))) continue;
          if (hook == -1) hook = l;
          else ok = false;
        }
        if (!ok || hook == -1) continue;
        const Partition& c = datum.partition(hook);
        const int r = c.largest() - h;
        if (r < 1 || r >= p + q - h || !is_hook(c, h + r)) continue;
        if (n == p + q - r - h + 2) return Verdict::exceptional("Lemma-transpos");
      }
    }
  }
  return std::nullopt;
}

const std::vector<NamedPredicate>& predicate_battery() {
  static const std::vector<NamedPredicate> battery = {
      {"thm_chi_nonpositive", thm_chi_nonpositive},
      {"thm_projective", thm_projective},
      {"thm_full_cycle", thm_full_cycle},
      {"thm_eks_large", thm_eks_large},
      {"prop_eks_222", prop_eks_222},
      {"prop_baranski", prop_baranski},
      {"prop_53", prop_53},
      {"prop_23", prop_23},
      {"thm_fixpoints", thm_fixpoints},
      {"thm_even_deg", thm_even_deg},
      {"cor_mixed", cor_mixed},
      {"thm_odd_divisible", thm_odd_divisible},
      {"lemma_transpos", lemma_transpos},
  };
  return battery;
}

std::vector<Verdict> fired_predicates(const BranchDatum& datum) {
  std::vector<Verdict> out;
  for (const auto& pred : predicate_battery())
    if (auto v = pred.fn(datum)) out.push_back(std::move(*v));
  return out;
}

namespace {

Verdict from_search(const BranchDatum& datum, const ClassifyOptions& options) {
  SearchOptions so;
  so.budget = options.budget;
  so.threads = options.threads;
  SearchResult r = search(datum, so);
  Verdict v;
  switch (r.status) {
    case SearchStatus::Found:
      v = Verdict::realizable("search-found");
      v.witness = std::move(r.witness);
      break;
    case SearchStatus::Exhausted: v = Verdict::exceptional("search-exhausted"); break;
    case SearchStatus::BudgetExceeded:
      v.kind = VerdictKind::Unknown;
      v.provenance = "budget-exceeded";
      v.tags = {v.provenance};
      break;
  }
  v.nodes = r.nodes;
  return v;
}

}  // namespace

Verdict classify(const BranchDatum& datum, const ClassifyOptions& options) {
  const CompatibilityReport report = check_compatibility(datum);
  if (!report.compatible) {
    Verdict v;
    v.kind = VerdictKind::Incompatible;
    v.violations = report.violated;
    v.provenance = "Cond-";
    for (std::size_t i = 0; i < report.violated.size(); ++i)
      v.provenance += (i ? "," : "") + std::to_string(report.violated[i]);
    v.tags = {v.provenance};
    return v;
  }

  const std::vector<Verdict> fired = fired_predicates(datum);
  if (!fired.empty()) {
    std::string positive;
    std::string negative;
    for (const auto& f : fired)
      (f.kind == VerdictKind::Realizable ? positive : negative) += " " + f.provenance;
    if (!positive.empty() && !negative.empty())
      throw ConsistencyFault("conflicting criteria on " + datum.to_string() + ": realizable by" + positive +
                             ", exceptional by" + negative);
    Verdict v = fired.front();
    v.tags.clear();
    for (const auto& f : fired) v.tags.push_back(f.provenance);
    if (options.attach_witness && v.kind == VerdictKind::Realizable && datum.base().is_sphere()) {
      Verdict s = from_search(datum, options);
      v.nodes = s.nodes;
      if (s.kind == VerdictKind::Exceptional)
        throw ConsistencyFault("search exhausted on " + datum.to_string() + " realizable by" + positive);
      v.witness = std::move(s.witness);
    }
    return v;
  }

  if (datum.base().is_sphere()) return from_search(datum, options);

  if (datum.base().is_projective_plane() && datum.cover().orientable()) {
    if (datum.degree() == 2 && datum.branch_points() == 0) return Verdict::realizable("orientation-cover");
    bool unknown = false;
    std::uint64_t nodes = 0;
    for (const auto& reduced : reduce_projective(datum)) {
      Verdict sub = classify(reduced, options);
      nodes += sub.nodes;
      if (sub.kind == VerdictKind::Realizable) {
        Verdict v = Verdict::realizable("Prop-ON-reduction");
        v.nodes = nodes;
        return v;
      }
      if (sub.kind == VerdictKind::Unknown) unknown = true;
    }
    Verdict v = unknown ? Verdict{VerdictKind::Unknown, "budget-exceeded", {"budget-exceeded"}, {}, {}, 0}
                        : Verdict::exceptional("Prop-ON-reduction");
    v.nodes = nodes;
    return v;
  }
  throw std::logic_error("no criterion or search path covers " + datum.to_string());
}

std::string verdict_line(const BranchDatum& datum, const Verdict& verdict) {
  std::string out = datum.to_string() + " " + to_string(verdict.kind) + " tag=" + verdict.provenance;
  if (verdict.witness) out += " witness=" + verdict.witness->to_compact();
  return out;
}

}  // namespace hurwitz
