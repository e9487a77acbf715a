#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <json.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "gsk/aec.hpp"
#include "gsk/perm_group.hpp"

namespace gsk {

using BigInt = boost::multiprecision::cpp_int;

/// Class sums of an enumerated group: structure constants
/// a(r, s, t) = #{(x, y) in C_r x C_s : xy = rep_t}, stored sparsely, plus
/// the commutator counts. Everything is obtained by direct counting.
class ClassAlgebra {
 public:
  explicit ClassAlgebra(const GroupElements& g);

  const GroupElements& elements() const noexcept { return *g_; }
  const ClassTable& table() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }

  std::uint64_t structure_constant(std::size_t r, std::size_t s, std::size_t t) const;
  /// N(g) = #{(a, b) : [a, b] = g} for g in each class.
  const std::vector<std::uint64_t>& commutator_counts() const noexcept { return commutators_; }
  bool has_element_order(std::uint64_t n) const;

  /// f * (indicator of the elements of order n), f a class function given
  /// by its value on each class.
  std::vector<BigInt> convolve_period(const std::vector<BigInt>& f, std::uint64_t n) const;
  /// f * N, N the commutator counting function.
  std::vector<BigInt> convolve_commutator(const std::vector<BigInt>& f) const;

  /// Supports of the same convolutions.
  std::vector<char> support_period(const std::vector<char>& f, std::uint64_t n) const;
  std::vector<char> support_commutator(const std::vector<char>& f) const;

 private:
  struct Entry {
    std::uint32_t r, s;
    std::uint64_t count;
  };
  struct Row {
    std::uint32_t r;
    std::uint64_t coefficient;
  };
  const std::vector<std::vector<Row>>& period_rows(std::uint64_t n) const;

  const GroupElements* g_;
  ClassTable table_;
  std::vector<std::vector<Entry>> entries_;  // indexed by t
  std::vector<std::uint64_t> commutators_;
  std::vector<std::vector<Row>> commutator_rows_;
  std::map<std::uint64_t, std::vector<std::vector<Row>>> period_rows_;
};

/// #{(x, y, z) in C_r x C_s x C_t : xyz = 1}, by scanning C_r against a
/// fixed z. Throws Error(InvalidArgument) for bad indices.
std::uint64_t class_mult_coefficient(const GroupElements& g, const ClassTable& table, std::size_t r,
                                     std::size_t s, std::size_t t);
std::uint64_t class_mult_coefficient(const ClassAlgebra& algebra, std::size_t r, std::size_t s, std::size_t t);

/// Per class: number of pairs (a, b) with [a, b] equal to a fixed member.
std::vector<std::uint64_t> commutator_distribution(const GroupElements& g, const ClassTable& table);

/// Tuples (a_1, b_1, ..., a_h, b_h, c_1, ..., c_r) with prod [a_i, b_i] prod c_j = 1
/// and |c_j| = n_j.
BigInt hom_count(const ClassAlgebra& algebra, const Signature& sig);

/// Subgroups up to conjugacy, with the Moebius function mu(H, G).
class SubgroupLattice {
 public:
  struct SubgroupClass {
    ElementSet representative;
    std::vector<Elem> generators;
    std::uint64_t order = 0;
    std::uint64_t class_size = 0;
    std::int64_t mobius = 0;
    std::vector<ElementSet> members;
  };

  static constexpr std::size_t kDefaultBound = 10000;

  /// Throws Error(GroupTooLarge) above `bound` elements or when the number
  /// of subgroups exceeds `max_subgroups`.
  explicit SubgroupLattice(const GroupElements& g, std::size_t bound = kDefaultBound,
                           std::size_t max_subgroups = 300000);

  /// Sorted by order, then by class size.
  const std::vector<SubgroupClass>& classes() const noexcept { return classes_; }
  std::size_t subgroup_count() const noexcept;

 private:
  std::vector<SubgroupClass> classes_;
};

/// Number of tuples as in hom_count that also generate G: sum over
/// subgroup classes of mu(H, G) |class| hom_count(H, sig).
BigInt epi_count(const GroupElements& g, const SubgroupLattice& lattice, const Signature& sig);

/// (a_1, b_1, ..., a_h, b_h; c_1, ..., c_r) as permutations.
struct GeneratingVector {
  std::vector<std::pair<Permutation, Permutation>> hyperbolic;
  std::vector<Permutation> elliptic;
};

struct WitnessCheck {
  bool long_relation = false;
  bool orders = false;
  bool generates = false;
  bool ok() const noexcept { return long_relation && orders && generates; }
};

/// Independent check on permutations only.
WitnessCheck verify_witness(const PermGroup& group, const Signature& sig, const GeneratingVector& v);

/// {"signature", "hyperbolic": [[a, b], ...], "elliptic": [...], "verificationHash"}
/// with permutations as image arrays.
nlohmann::json witness_to_json(const Signature& sig, const GeneratingVector& v);
/// Throws Error(ParseError) on malformed input or a hash mismatch.
std::pair<Signature, GeneratingVector> witness_from_json(const nlohmann::json& j);

/// Generating vector as element indices; hyperbolic holds a_1, b_1, a_2, b_2, ...
struct ElemVector {
  std::vector<Elem> hyperbolic;
  std::vector<Elem> elliptic;
};

enum class Verdict { Realized, Refuted, Undecided };
std::string_view to_string(Verdict v) noexcept;

struct Decision {
  Verdict verdict = Verdict::Undecided;
  /// Present for Realized unless the count was positive but the witness
  /// search ran out of budget.
  std::optional<ElemVector> witness;
  /// "cache", "extension", "search", "count", "structure" or "bounds".
  std::string method;
};

struct RealizerOptions {
  std::size_t enumeration_bound = GroupElements::kDefaultBound;
  std::size_t lattice_bound = SubgroupLattice::kDefaultBound;
  /// Node budget of the constructive search tried before counting.
  std::uint64_t quick_budget = 2000;
  /// Node budget of the search run after a positive count.
  std::uint64_t search_budget = 5'000'000;
  std::uint64_t seed = 0x5eed;
};

/// Result of the constructive search. Running out of budget is not a
/// refutation.
struct SearchOutcome {
  std::optional<ElemVector> witness;
  bool budget_exceeded = false;
  std::uint64_t nodes = 0;
};

/// Decides data of one group. Realized signatures (with witnesses) are
/// remembered and serve as parents for the extension rules: appending a
/// trivial hyperbolic pair, appending u, u^-1, and splitting an elliptic
/// element c into x y with prescribed orders.
///
/// Thread-safe: is_datum may be called concurrently.
class Realizer {
 public:
  explicit Realizer(PermGroup group, RealizerOptions options = {});

  const PermGroup& group() const noexcept { return group_; }
  const GroupElements& elements() const noexcept { return *elements_; }
  const ClassTable& classes() const noexcept { return algebra_->table(); }
  const ClassAlgebra& algebra() const noexcept { return *algebra_; }
  const RealizerOptions& options() const noexcept { return options_; }
  std::uint64_t increment() const noexcept { return increment_; }
  const AecInstance& instance() const noexcept { return instance_; }

  /// Null when the group exceeds the lattice bound.
  const SubgroupLattice* lattice() const;

  BigInt hom_count(const Signature& sig) const;
  /// Throws Error(GroupTooLarge) when no lattice is available.
  BigInt epi_count(const Signature& sig) const;

  SearchOutcome find_generating_vector(const Signature& sig, std::uint64_t budget) const;

  /// A witness obtained from an already realized signature by one extension rule.
  std::optional<ElemVector> derive(const Signature& sig) const;

  Decision is_datum(const Signature& sig);
  /// Only the cheap layers of is_datum (cache, structure, extension);
  /// Undecided otherwise. Records what it decides.
  Decision quick_decide(const Signature& sig);

  /// Forward closure of the realized set under the extension rules, up to
  /// the given reduced genus.
  void extension_closure(std::uint64_t max_reduced_genus);

  void record_realized(const Signature& sig, ElemVector witness);
  void record_refuted(const Signature& sig);
  bool is_refuted(const Signature& sig) const;
  std::optional<ElemVector> realized_witness(const Signature& sig) const;
  std::map<Signature, ElemVector> realized() const;
  std::set<Signature> refuted() const;

  /// Reduced genus (g - 1)/N_G, or nullopt when not integral.
  std::optional<std::uint64_t> reduced_genus(const Signature& sig) const;

  bool check(const Signature& sig, const ElemVector& v) const;
  GeneratingVector to_permutations(const ElemVector& v) const;
  /// Throws Error(ElementNotInGroup).
  ElemVector from_permutations(const GeneratingVector& v) const;

 private:
  std::optional<Decision> structural(const Signature& sig) const;
  void build_factorizations();

  PermGroup group_;
  RealizerOptions options_;
  std::unique_ptr<GroupElements> elements_;
  std::unique_ptr<ClassAlgebra> algebra_;
  std::uint64_t increment_ = 1;
  AecInstance instance_;
  bool cyclic_ = false;

  // factorizations_[t][(n1, n2)] = (x, y) with x y = rep_t, |x| = n1, |y| = n2.
  std::vector<std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<Elem, Elem>>> factorizations_;

  mutable std::once_flag lattice_once_;
  mutable std::unique_ptr<SubgroupLattice> lattice_;
  mutable std::mutex subalgebra_mutex_;
  mutable std::map<std::size_t, std::pair<std::unique_ptr<GroupElements>, std::unique_ptr<ClassAlgebra>>> subalgebras_;

  mutable std::shared_mutex realized_mutex_;
  std::map<Signature, ElemVector> realized_;
  std::set<Signature> refuted_;
};

}  // namespace gsk
