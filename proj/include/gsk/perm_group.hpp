#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsk/permutation.hpp"

namespace gsk {

/// One level of a stabilizer chain: the orbit of the base point under the
/// level's generators, with a transversal (transversal[j](base) == orbit[j]).
struct StabLevel {
  Point base = 0;
  std::vector<Permutation> generators;
  std::vector<Point> orbit;
  std::vector<std::int32_t> orbit_position;
  std::vector<Permutation> transversal;
  std::vector<Permutation> transversal_inverse;
};

/// A finite permutation group given by generators of a common degree.
///
/// The stabilizer chain is built once, deterministically, at construction;
/// the object is immutable afterwards and safe to share between threads.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::uint64_t order() const noexcept { return order_; }
  bool is_trivial() const noexcept { return order_ == 1; }
  bool contains(const Permutation& g) const;

  std::span<const StabLevel> chain() const noexcept { return levels_; }

 private:
  struct SiftResult {
    Permutation residue;
    std::size_t level;
  };
  SiftResult sift(Permutation g, std::size_t from_level) const;
  void extend_orbit(StabLevel& level) const;
  void build_chain();

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<StabLevel> levels_;
  std::uint64_t order_ = 1;
};

std::uint64_t element_order(const Permutation& g);
std::uint64_t group_order(const PermGroup& group);

/// Index of an element inside a GroupElements enumeration.
using Elem = std::uint32_t;

/// Full element list of a group of moderate order, with O(base^2) products.
///
/// Elements are numbered by their mixed-radix coordinates in the stabilizer
/// chain; index 0 is always the identity. Products and lookups only touch
/// base images, so they cost far less than a full composition.
class GroupElements {
 public:
  static constexpr std::size_t kDefaultBound = 200000;
  static constexpr Elem kIdentity = 0;

  /// Throws Error(GroupTooLarge) if the group order exceeds `bound`.
  explicit GroupElements(PermGroup group, std::size_t bound = kDefaultBound);

  const PermGroup& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t degree() const noexcept { return degree_; }

  std::span<const Point> images(Elem e) const noexcept {
    return {data_.data() + static_cast<std::size_t>(e) * degree_, degree_};
  }
  Permutation permutation(Elem e) const;

  std::optional<Elem> find(const Permutation& p) const;
  /// Throws Error(ElementNotInGroup).
  Elem index_of(const Permutation& p) const;

  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const noexcept { return inverse_[a]; }
  std::uint32_t order(Elem a) const noexcept { return orders_[a]; }
  Elem pow(Elem a, long long exponent) const;
  /// x * g * x^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(x, g), inverse_[x]); }
  /// a^-1 * b^-1 * a * b
  Elem commutator(Elem a, Elem b) const {
    return mul(mul(inverse_[a], inverse_[b]), mul(a, b));
  }

  /// Indices of the non-identity group generators.
  std::span<const Elem> generators() const noexcept { return generators_; }

 private:
  std::optional<Elem> index_from_base_images(std::vector<Point>& img) const;

  PermGroup group_;
  std::size_t size_ = 0;
  std::size_t degree_ = 0;
  std::vector<Point> data_;
  std::vector<Point> base_;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<std::int32_t>> positions_;
  std::vector<std::vector<Point>> transversal_inverse_;
  std::vector<Elem> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<Elem> generators_;
};

/// A set of elements of one enumerated group, as a bitset over indices.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const noexcept { return count_; }
  bool contains(Elem e) const noexcept { return (words_[e >> 6] >> (e & 63u)) & 1u; }
  /// Returns true if the element was newly inserted.
  bool insert(Elem e) noexcept {
    std::uint64_t bit = std::uint64_t{1} << (e & 63u);
    if (words_[e >> 6] & bit) return false;
    words_[e >> 6] |= bit;
    ++count_;
    return true;
  }
  bool is_subset_of(const ElementSet& other) const noexcept;
  std::vector<Elem> elements() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const ElementSet& a, const ElementSet& b) noexcept {
    return a.count_ == b.count_ && a.words_ == b.words_;
  }

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

/// Subgroup generated by `generators`.
ElementSet subgroup_closure(const GroupElements& g, std::span<const Elem> generators);

/// <H, extra>, given H as a set with its element list and generators.
ElementSet extend_subgroup(const GroupElements& g, const ElementSet& subgroup,
                           std::span<const Elem> subgroup_elements,
                           std::span<const Elem> subgroup_generators, Elem extra);

/// Elements normalizing the subgroup generated by `subgroup_generators`.
ElementSet normalizer(const GroupElements& g, const ElementSet& subgroup,
                      std::span<const Elem> subgroup_generators);

/// A small generating set of a subgroup (greedy, in index order).
std::vector<Elem> generating_subset(const GroupElements& g, const ElementSet& subgroup);

/// The subgroup as a stand-alone PermGroup of the ambient degree.
PermGroup to_perm_group(const GroupElements& g, const ElementSet& subgroup);

/// Conjugacy classes of an enumerated group.
///
/// Classes are sorted by (element order, class size, lexicographically
/// smallest member); the representative is that smallest member, so class
/// numbering does not depend on how the group was generated internally.
struct ClassTable {
  std::vector<Elem> reps;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint32_t> element_orders;
  std::vector<std::uint64_t> centralizer_orders;
  std::vector<std::uint32_t> class_of;
  /// conjugator[x] = t with t * reps[class_of[x]] * t^-1 == x
  std::vector<Elem> conjugator;
  std::vector<std::uint32_t> inverse_class;
  /// ATLAS-style names: element order followed by A, B, ... within an order.
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return reps.size(); }
  std::optional<std::size_t> find_label(const std::string& label) const;
};

ClassTable conjugacy_classes(const GroupElements& g);

/// Throws Error(ElementNotInGroup).
std::size_t class_of(const ClassTable& table, const GroupElements& g, const Permutation& x);

/// True iff the elements generate the whole group. Works above the
/// enumeration bound. Throws Error(ElementNotInGroup).
bool generates(const PermGroup& group, std::span<const Permutation> elements);

PermGroup center(const GroupElements& g);
PermGroup derived_subgroup(const GroupElements& g);
std::uint64_t exponent(const GroupElements& g);
/// Grows a p-subgroup through normalizers until it reaches the p-part of |G|.
PermGroup sylow_subgroup(const GroupElements& g, std::uint64_t p);

PermGroup center(const PermGroup& group);
PermGroup derived_subgroup(const PermGroup& group);
std::uint64_t exponent(const PermGroup& group);
PermGroup sylow_subgroup(const PermGroup& group, std::uint64_t p);

/// Set of all elements of a subgroup given as a PermGroup inside g.
ElementSet element_set(const GroupElements& g, const PermGroup& subgroup);

}  // namespace gsk
