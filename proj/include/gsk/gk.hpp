#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gsk/group_spec.hpp"
#include "gsk/perm_group.hpp"

namespace gsk {

/// Outcome of the GK-type test for a p-group of exponent p^e: kappa is the
/// set of elements of order below p^e.
struct GkReport {
  unsigned exponent_exp = 0;
  std::uint64_t kappa_size = 0;
  bool is_subgroup = false;
  bool is_index_p = false;
  bool is_gk_type = false;
};

/// Elements of order below the exponent. Throws Error(NotAPGroup).
ElementSet kappa_set(const GroupElements& p_group, std::uint64_t p);
ElementSet kappa_set(const PermGroup& p_group, std::uint64_t p);

/// The trivial group is reported as not of GK-type.
GkReport is_gk_type(const PermGroup& p_group, std::uint64_t p);

struct GenusIncrement {
  std::uint64_t value = 1;
  /// True when the factor 1/2 applies (Sylow 2-subgroup nontrivial and not
  /// of GK-type).
  bool halved = false;
};

/// Smallest positive difference between genera of surfaces acted on by G.
/// Throws Error(GroupTooLarge).
GenusIncrement genus_increment(const PermGroup& group);

/// P = kappa^0 > kappa^1 > ... > R, stopping at the first group that is not
/// of GK-type (possibly the trivial group).
std::vector<PermGroup> gk_core_chain(const PermGroup& p_group, std::uint64_t p);

/// Brute force over all pairs: x^p y^p = (xy)^p c^p for some c in the
/// derived subgroup of <x, y>. Throws Error(GroupTooLarge).
bool is_regular(const PermGroup& p_group, std::uint64_t p);

/// For a root R not of GK-type: whether exp Z(R) == exp R.
/// Throws Error(RootIsGkType).
bool tree_infinite(const PermGroup& root, std::uint64_t p);

/// Searches Z(G) minus kappa(G) for t with <t, R> = G. Returns t on success.
/// Throws Error(NotASubgroup) unless R <= G.
std::optional<Permutation> stem_criterion(const PermGroup& group, const PermGroup& root, std::uint64_t p);

/// A group with genus increment N: products of C_{p^a} x C_{p^a} over the
/// odd prime powers p^a exactly dividing N, C_{2^(a+1)} x C_{2^(a+1)} for
/// the power of 2, and a cyclic group of order 2 when N = 1.
GroupSpec group_with_increment(std::uint64_t n);

}  // namespace gsk
