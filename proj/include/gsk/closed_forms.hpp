#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsk/aec.hpp"

namespace gsk {

enum class MaxClassKind { Dihedral, Quaternion, Semidihedral };

std::string_view to_string(MaxClassKind kind) noexcept;
/// "dihedral2:e" and friends.
std::string max_class_spec(MaxClassKind kind, unsigned e);

/// Minimum and stable upper genus of the 2-group of maximal class of order
/// 2^(e+1). Only valid for e >= 5; throws Error(OutOfRegime) below.
struct MaxClassParams {
  MaxClassKind kind = MaxClassKind::Dihedral;
  unsigned e = 0;
  std::uint64_t mu = 0;
  std::uint64_t sigma = 0;
};
MaxClassParams maximal_class_params(MaxClassKind kind, unsigned e);

/// Genus increment of PSL(2, q): q/p for odd q, q/4 for q = 2^f, f >= 2,
/// and 1 for q = 2. Throws Error(NotPrimePower).
std::uint64_t psl2_increment(std::uint64_t q);

/// d_p = min { e >= 7 : e | (p-1)/2 or e | (p+1)/2 }.
std::uint64_t psl2_dp(std::uint64_t p);

struct Psl2MinGenus {
  Signature signature;
  std::uint64_t genus = 0;
  /// Which of the five cases fired (1..5).
  int rule = 0;
  /// Other cases among (2)-(4) whose conditions also hold.
  std::vector<int> overlapping;
};
/// Case split for the minimum genus of PSL(2, p), p >= 5 prime, evaluated
/// in the listed order. Throws Error(InvalidArgument) for other p.
Psl2MinGenus psl2p_min_genus(std::uint64_t p);

/// Stable upper genus of PSL(2, p), p >= 13, for groups without bad
/// solutions: sigma = f(|G|, c_n for n in periods) - |G| + 2 with
/// c_n = |G|(n-1)/(2n).
std::uint64_t psl2p_stable_genus(std::uint64_t p);
/// Same formula from an explicit order and period set.
std::uint64_t stable_genus_from_periods(std::uint64_t order, const std::vector<std::uint64_t>& periods);

/// One compared value.
struct VerifyCell {
  std::string group;
  std::string field;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct VerifyReport {
  std::vector<VerifyCell> cells;
  /// Cells that could not be evaluated (undecided engine results).
  bool undecided = false;
  bool ok() const noexcept;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  unsigned threads = 1;
  /// Run the full spectrum for M11 instead of only the minimum genus.
  bool m11_full = false;
  std::uint64_t search_budget = 5'000'000;
};

/// scope "table3": e in [e_min, e_max] for all three kinds.
VerifyReport verify_table3(unsigned e_min, unsigned e_max, const VerifyOptions& options = {});
/// scope "table4": the listed q against the published rows.
VerifyReport verify_table4(const std::vector<std::uint64_t>& qs, const VerifyOptions& options = {});
/// scope "m11": increment and minimum genus (plus sigma and bad when m11_full).
VerifyReport verify_m11(const VerifyOptions& options = {});

struct Table4Row {
  std::uint64_t q, increment, mu, sigma, bad;
};
/// Published rows, q = 2 ... 125.
const std::vector<Table4Row>& table4_rows();

}  // namespace gsk
