#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gsk/perm_group.hpp"

namespace gsk {

/// (h; n_1, ..., n_r) with the periods kept sorted ascending.
struct Signature {
  std::uint64_t h = 0;
  std::vector<std::uint64_t> periods;

  Signature() = default;
  Signature(std::uint64_t orbit_genus, std::vector<std::uint64_t> periods);

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

/// Text form "h;n1,n2,..."; an empty period list prints as "h;".
std::string to_string(const Signature& sig);
/// Accepts periods in any order. Throws ParseError.
Signature parse_signature(std::string_view text);

/// Riemann-Hurwitz: g = |G|((h-1) + 1/2 sum(1 - 1/n_i)) + 1.
/// Throws Error(NonIntegralGenus) unless g is a non-negative integer.
std::uint64_t genus_of_signature(const Signature& sig, std::uint64_t group_order);

/// Reduced equation g~ = (|G|/N)(h-1) + sum_n a_n |G|(1-1/n)/(2N), kept in
/// integers by scaling everything with D = 2 lcm(periods) N.
struct AecInstance {
  std::uint64_t group_order = 0;
  std::uint64_t increment = 0;
  std::vector<std::uint64_t> periods;
  /// coefficient_numerators[i] / denominator == |G|(1-1/n_i)/(2N)
  std::vector<std::uint64_t> coefficient_numerators;
  std::uint64_t denominator = 0;
  std::uint64_t hyperbolic_step = 0;
};

/// Throws Error(InvalidArgument) if |G|/N is not an integer.
AecInstance make_aec_instance(std::uint64_t group_order, std::uint64_t increment,
                              std::vector<std::uint64_t> periods);
/// Periods are the orders of the non-identity elements. Throws Error(GroupTooLarge).
AecInstance aec_instance(const PermGroup& group);
AecInstance aec_instance(const GroupElements& group, std::uint64_t increment);

struct AecSolution {
  Signature signature;
  std::uint64_t reduced_genus = 0;
  /// One entry per period of the instance.
  std::vector<std::uint64_t> multiplicities;

  friend bool operator==(const AecSolution&, const AecSolution&) = default;
};

/// All non-negative solutions for one reduced genus, ordered by h and then
/// lexicographically by the multiplicity vector.
std::vector<AecSolution> enumerate_solutions(const AecInstance& inst, std::uint64_t reduced_genus);

/// Whether the reduced genus has at least one solution.
bool has_solution(const AecInstance& inst, std::uint64_t reduced_genus);

/// Largest integer not representable as a non-negative combination, or -1
/// when every non-negative integer is. Shortest paths over residues modulo
/// the smallest coefficient; when all coefficients but one share a divisor
/// d > 1 the reduction f = d f(n_1, n_2/d, ...) + n_1 (d - 1) is evaluated
/// as well and must agree. Throws Error(NonCoprime).
std::int64_t frobenius_number(const std::vector<std::uint64_t>& coeffs);
/// Only the shortest-path computation.
std::int64_t frobenius_number_dp(const std::vector<std::uint64_t>& coeffs);
/// Applies the divisor reduction while possible, then the shortest-path
/// computation on what remains.
std::int64_t frobenius_number_reduced(const std::vector<std::uint64_t>& coeffs);

/// Membership of M in the solution set of
/// M = 2^e h + sum_{i=1}^{e-1} m_i (2^(e-1) - 2^(e-1-i)), decided from the
/// binary digits of M.
bool omega_membership(unsigned e, std::uint64_t m);

/// Smallest positive M such that every M' >= M is in the set above.
std::uint64_t least_stable_solution(unsigned e);

}  // namespace gsk
