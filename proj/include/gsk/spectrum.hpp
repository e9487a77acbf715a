#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsk/aec.hpp"
#include "gsk/realizability.hpp"

namespace gsk {

struct SpectrumOptions {
  /// Stop once the minimum genus is known.
  bool stop_after_min_genus = false;
  /// Overrides the automatic cap on the reduced genus (0 = automatic).
  std::uint64_t max_reduced_genus = 0;
  unsigned threads = 1;
  /// Attach a witness for every realized genus, not only the minimum.
  bool all_witnesses = false;
  /// Called after each reduced genus is settled (reduced genus, realized).
  std::function<void(std::uint64_t, bool)> progress;
};

struct BadSolution {
  std::uint64_t reduced_genus = 0;
  Signature signature;
};

struct SpectrumSummary {
  std::uint64_t group_order = 0;
  std::uint64_t increment = 1;
  std::optional<std::uint64_t> min_genus;
  std::optional<Signature> min_genus_signature;
  std::optional<std::uint64_t> stable_upper_genus;
  /// Genera 1 + N g~ in [mu, sigma) outside the spectrum.
  std::vector<std::uint64_t> gaps;
  /// Refuted solutions with mu~ <= g~ <= sigma~.
  std::vector<BadSolution> bad_solutions;
  std::uint64_t bad_solution_count = 0;
  /// Reduced genera in [mu~, sigma~] that have solutions, all of them
  /// refuted. This is the count reported in the "bad" column of the tables.
  std::uint64_t bad_genus_count = 0;
  /// Reduced genera in [mu~, sigma~] carrying at least one bad solution.
  std::uint64_t genera_with_bad_solutions = 0;
  /// Refuted solutions outside [mu~, sigma~] that were classified anyway.
  std::uint64_t refuted_outside_window = 0;
  /// Solutions left undecided; nonempty means the summary is not certified.
  std::vector<BadSolution> undecided;
  /// Last reduced genus examined.
  std::uint64_t frontier = 0;
  /// genus -> (signature, witness) for realized genera that were recorded.
  std::map<std::uint64_t, std::pair<Signature, ElemVector>> witnesses;
  bool hurwitz_bound_ok = true;

  bool certified() const noexcept { return undecided.empty() && stable_upper_genus.has_value(); }
};

/// Smallest g0 >= 1 such that g0, ..., g0 + step - 1 are all in `realized`.
std::optional<std::uint64_t> stable_window_certificate(const std::set<std::uint64_t>& realized, std::uint64_t step);

/// Upper end of the search: the largest reduced genus without AEC solution
/// (from the Frobenius number of the scaled coefficients) plus two windows.
std::uint64_t reduced_genus_cap(const AecInstance& inst);

/// Walks g~ = 1, 2, ... classifying every AEC solution that can matter for
/// (mu, sigma, gaps, bad solutions) and stops once a full window of
/// |G|/N_G consecutive reduced genera is realized.
SpectrumSummary compute_spectrum(Realizer& realizer, const SpectrumOptions& options = {});

/// Machine-readable summary; witnesses as permutation image arrays.
nlohmann::json spectrum_to_json(const SpectrumSummary& s, const Realizer& realizer, const std::string& group_name);
/// "group | N_G | mu | sigma | bad" with comma-grouped numbers; bad is
/// the per-genus count.
std::string spectrum_table_row(const SpectrumSummary& s, const std::string& group_name);
std::string spectrum_table_header();
std::string spectrum_csv_header();
std::string spectrum_csv_row(const SpectrumSummary& s, const std::string& group_name);

/// 1234567 -> "1,234,567"
std::string group_digits(std::uint64_t v);

/// On-disk record of classified signatures for one group, keyed by a hash
/// of the canonical group description.
class SpectrumCache {
 public:
  static constexpr int kVersion = 1;

  SpectrumCache(std::filesystem::path directory, std::string canonical_spec);

  std::filesystem::path file() const;
  std::string spec_hash() const;

  /// Loads realized (after re-verifying every witness) and refuted
  /// signatures into the realizer. Returns false if there is no usable file.
  bool load(Realizer& realizer) const;
  void save(const Realizer& realizer, std::uint64_t frontier) const;

 private:
  std::filesystem::path directory_;
  std::string spec_;
};

}  // namespace gsk
