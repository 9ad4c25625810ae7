#pragma once

// Closed-form realizability and exceptionality criteria, and the classifier
// that combines them with permutation search.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/realizer.hpp"

namespace hurwitz {

enum class VerdictKind { Incompatible, Realizable, Exceptional, Unknown };

std::string to_string(VerdictKind kind);  // INCOMPATIBLE, REALIZABLE, ...

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  /// First firing tag, or the search outcome.
  std::string provenance;
  /// Every agreeing tag, provenance first.
  std::vector<std::string> tags;
  std::vector<int> violations;  // Incompatible only
  std::optional<Realization> witness;
  std::uint64_t nodes = 0;  // search nodes spent

  static Verdict realizable(std::string tag) { return {VerdictKind::Realizable, tag, {tag}, {}, {}, 0}; }
  static Verdict exceptional(std::string tag) { return {VerdictKind::Exceptional, tag, {tag}, {}, {}, 0}; }
};

/// Both a realizability and an exceptionality criterion fired.
struct ConsistencyFault : std::logic_error {
  using std::logic_error::logic_error;
};

// Each predicate expects a compatible datum and returns a verdict when its
// hypotheses hold. Positional hypotheses are matched against every
// selection of partitions.

/// chi(base) <= 0: Thm-OO, Thm-NN or Cor-ON by orientability.
std::optional<Verdict> thm_chi_nonpositive(const BranchDatum& datum);
/// Base P, non-orientable cover: Thm-NP.
std::optional<Verdict> thm_projective(const BranchDatum& datum);
/// Some partition is (d): Thm-full-cycle.
std::optional<Verdict> thm_full_cycle(const BranchDatum& datum);
/// Base S. d != 4 and n d - ñ >= 3(d-1): Thm-EKS-bound. d = 4: exceptional
/// exactly on (2,2),...,(2,2),(3,1), realizable otherwise (Thm-EKS-d4).
std::optional<Verdict> thm_eks_large(const BranchDatum& datum);
/// (S,S,3,d) with (x,d-x),(2,..,2),(2,..,2): realizable iff x = d/2.
std::optional<Verdict> prop_eks_222(const BranchDatum& datum);
/// Cover and base S: n >= d (Prop-n-ge-d); some r partitions with
/// m-sum (r-1)d+1 (Prop-long-cycles); all parts <= 2 and every
/// m_i >= d - sqrt(d/2) (Prop-small-parts).
std::optional<Verdict> prop_baranski(const BranchDatum& datum);
/// (T or S,S,3,d>=8 even) with (2,..,2),(5,3,2,..,2) and a third partition.
std::optional<Verdict> prop_53(const BranchDatum& datum);
/// (S,S,3,d even) with (2,..,2) and (3,3,2,..,2) or (3,2,..,2,1):
/// realizable iff the largest part of the third differs from d/2.
std::optional<Verdict> prop_23(const BranchDatum& datum);
/// (S,S): two partitions with all parts divisible by k, 1<k<d, k|d, and a
/// part of another partition above d/k.
std::optional<Verdict> thm_fixpoints(const BranchDatum& datum);
/// (S,S), d even: two all-even partitions and another that does not refine
/// (d/2,d/2).
std::optional<Verdict> thm_even_deg(const BranchDatum& datum);
/// (S,S), 2k|d, 1<k<d/2: one partition divisible by k, two all-even ones,
/// and a part above d/k in the even ones or above d/2k elsewhere.
std::optional<Verdict> cor_mixed(const BranchDatum& datum);
/// Base S, n = 3, all parts share an odd divisor p >= 3.
std::optional<Verdict> thm_odd_divisible(const BranchDatum& datum);
/// (S,S,n,kh) with (ks_1..ks_p),(kt_1..kt_q),(h+r,1,..,1),(2,1,..,1)^(n-3),
/// p,q >= 2, p+q >= h+2, 1 <= r < p+q-h, n = p+q-r-h+2.
std::optional<Verdict> lemma_transpos(const BranchDatum& datum);

struct NamedPredicate {
  const char* name;
  std::optional<Verdict> (*fn)(const BranchDatum&);
};

/// All predicates in evaluation order.
const std::vector<NamedPredicate>& predicate_battery();

/// Verdicts of every predicate that fires, in battery order.
std::vector<Verdict> fired_predicates(const BranchDatum& datum);

struct ClassifyOptions {
  std::uint64_t budget = 1'000'000'000ULL;
  /// Run search after a realizability criterion fires to attach a witness
  /// (sphere base only).
  bool attach_witness = false;
  int threads = 1;
};

/// Incompatible with violations, otherwise the criteria verdict, otherwise
/// search (sphere base) or reduction (projective base with orientable
/// cover). Unknown only when the budget runs out. Throws ConsistencyFault.
Verdict classify(const BranchDatum& datum, const ClassifyOptions& options = {});

/// `<datum> <VERDICT> tag=<provenance>[ witness=<cycles;...>]`
std::string verdict_line(const BranchDatum& datum, const Verdict& verdict);

}  // namespace hurwitz
