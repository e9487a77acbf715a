#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gsk/error.hpp"
#include "gsk/gk.hpp"
#include "gsk/group_spec.hpp"
#include "gsk/spectrum.hpp"

using namespace gsk;

namespace {

// Realized reduced genera decided by exact counting alone: a genus is
// realized iff some AEC solution has a positive epimorphism count.
std::set<std::uint64_t> realized_by_counting(const std::string& spec, std::uint64_t max_gt) {
  Realizer r(build_group(spec));
  std::set<std::uint64_t> out;
  for (std::uint64_t gt = 1; gt <= max_gt; ++gt)
    for (const auto& sol : enumerate_solutions(r.instance(), gt))
      if (!r.epi_count(sol.signature).is_zero()) {
        out.insert(gt);
        break;
      }
  return out;
}

void check_against_counting(const std::string& spec) {
  Realizer r(build_group(spec));
  auto s = compute_spectrum(r);
  REQUIRE(s.stable_upper_genus);
  const std::uint64_t sigma_t = (*s.stable_upper_genus - 1) / s.increment;
  const std::uint64_t step = r.instance().hyperbolic_step;
  auto truth = realized_by_counting(spec, sigma_t + step - 1);
  CHECK(stable_window_certificate(truth, step) == sigma_t);
  CHECK(s.min_genus == 1 + s.increment * *truth.begin());
  std::vector<std::uint64_t> gaps;
  for (std::uint64_t gt = *truth.begin(); gt < sigma_t; ++gt)
    if (!truth.count(gt)) gaps.push_back(1 + s.increment * gt);
  CHECK(s.gaps == gaps);
  CHECK(s.undecided.empty());
}

}  // namespace

TEST_CASE("window certificate") {
  CHECK(stable_window_certificate({}, 3) == std::nullopt);
  CHECK(stable_window_certificate({1, 2, 3}, 3) == 1u);
  CHECK(stable_window_certificate({1, 3, 4, 6, 7, 8, 9}, 3) == 6u);
  CHECK(stable_window_certificate({1, 3, 4, 6, 7}, 3) == std::nullopt);
  CHECK(stable_window_certificate({5}, 1) == 5u);
  CHECK_THROWS_AS(stable_window_certificate({1}, 0), Error);
}

TEST_CASE("reduced genus cap lies past the last unsolvable reduced genus") {
  for (const char* spec : {"psl2:7", "dihedral2:4", "alt:4", "psl2:8"}) {
    GroupElements g(build_group(spec));
    auto inst = aec_instance(g, genus_increment(build_group(spec)).value);
    const auto cap = reduced_genus_cap(inst);
    const auto step = inst.hyperbolic_step;
    REQUIRE(cap > 2 * step);
    for (std::uint64_t gt = cap - 2 * step; gt <= cap + step; ++gt) CHECK(has_solution(inst, gt));
  }
  // PSL(2,7): 397 is the largest reduced genus without solution.
  GroupElements g(build_group("psl2:7"));
  auto inst = aec_instance(g, 1);
  CHECK(!has_solution(inst, 397));
  CHECK(reduced_genus_cap(inst) >= 398);
}

TEST_CASE("comma grouping") {
  CHECK(group_digits(0) == "0");
  CHECK(group_digits(999) == "999");
  CHECK(group_digits(1453) == "1,453");
  CHECK(group_digits(1234567) == "1,234,567");
}

TEST_CASE("small spectra: every genus from 2 on") {
  for (const char* spec : {"cyclic:2", "cyclic:3"}) {
    Realizer r(build_group(spec));
    auto s = compute_spectrum(r);
    CHECK(s.increment == 1);
    CHECK(s.min_genus == 2u);
    CHECK(s.stable_upper_genus == 2u);
    CHECK(s.gaps.empty());
    // Independent check: a verified generating vector for every g in [2, 200].
    Realizer fresh(build_group(spec));
    for (std::uint64_t genus = 2; genus <= 200; ++genus) {
      bool found = false;
      for (const auto& sol : enumerate_solutions(fresh.instance(), genus - 1)) {
        auto d = fresh.is_datum(sol.signature);
        if (d.verdict != Verdict::Realized) continue;
        REQUIRE(d.witness);
        CHECK(verify_witness(fresh.group(), sol.signature, fresh.to_permutations(*d.witness)).ok());
        CHECK(genus_of_signature(sol.signature, fresh.group().order()) == genus);
        found = true;
        break;
      }
      CHECK_MESSAGE(found, spec << " genus " << genus);
    }
  }
}

TEST_CASE("spectra agree with counting-only classification") {
  check_against_counting("psl2:7");
  check_against_counting("dihedral2:4");
  check_against_counting("alt:4");
  check_against_counting("sym:4");
  check_against_counting("quaternion2:4");
}

TEST_CASE("PSL(2,7) spectrum summary") {
  Realizer r(build_group("psl2:7"));
  auto s = compute_spectrum(r);
  CHECK(s.min_genus == 3u);
  REQUIRE(s.min_genus_signature);
  CHECK(to_string(*s.min_genus_signature) == "0;2,3,7");
  CHECK(s.stable_upper_genus == 399u);
  CHECK(s.hurwitz_bound_ok);
  CHECK(s.certified());
  // Every bad solution is refuted by counting and sits inside [mu~, sigma~].
  Realizer fresh(build_group("psl2:7"));
  for (const auto& b : s.bad_solutions) {
    CHECK(fresh.epi_count(b.signature).is_zero());
    CHECK(b.reduced_genus >= 2);
    CHECK(b.reduced_genus <= 398);
  }
  CHECK(s.bad_solution_count == s.bad_solutions.size());
  // The minimum genus witness verifies on permutations.
  REQUIRE(s.witnesses.count(3));
  const auto& [sig, w] = s.witnesses.at(3);
  CHECK(verify_witness(r.group(), sig, r.to_permutations(w)).ok());
  auto row = spectrum_table_row(s, "psl2:7");
  CHECK(row == "psl2:7 | 1 | 3 | 399 | " + std::to_string(s.bad_genus_count));
}

TEST_CASE("bad genera are exactly the solvable non-genera in the window") {
  Realizer r(build_group("dihedral2:4"));
  auto s = compute_spectrum(r);
  REQUIRE(s.stable_upper_genus);
  const auto& inst = r.instance();
  std::uint64_t solvable_gaps = 0;
  for (auto genus : s.gaps)
    if (has_solution(inst, (genus - 1) / inst.increment)) ++solvable_gaps;
  std::set<std::uint64_t> genera;
  for (const auto& b : s.bad_solutions) genera.insert(b.reduced_genus);
  CHECK(s.bad_genus_count == solvable_gaps);
  CHECK(s.genera_with_bad_solutions == genera.size());
}

TEST_CASE("stop after the minimum genus") {
  Realizer r(build_group("psl2:8"));
  SpectrumOptions o;
  o.stop_after_min_genus = true;
  auto s = compute_spectrum(r, o);
  CHECK(s.min_genus == 7u);
  CHECK(!s.stable_upper_genus);
  CHECK(s.frontier == 3);
}

TEST_CASE("thread count does not change the result") {
  Realizer a(build_group("psl2:8"));
  Realizer b(build_group("psl2:8"));
  SpectrumOptions o;
  o.all_witnesses = true;
  auto sa = compute_spectrum(a, o);
  o.threads = 3;
  auto sb = compute_spectrum(b, o);
  CHECK(spectrum_to_json(sa, a, "psl2:8").dump() == spectrum_to_json(sb, b, "psl2:8").dump());
}

TEST_CASE("spectrum JSON fields") {
  Realizer r(build_group("alt:4"));
  auto s = compute_spectrum(r);
  auto j = spectrum_to_json(s, r, "alt:4");
  CHECK(j["increment"] == 1);
  CHECK(j["minGenus"] == 3);
  CHECK(j["stableUpperGenus"] == 3);
  CHECK(j["gaps"].empty());
  CHECK(j.contains("badSolutionCount"));
  CHECK(j.contains("badGenusCount"));
  CHECK(j["witnesses"].contains("3"));
  auto [sig, v] = witness_from_json(j["witnesses"]["3"]);
  CHECK(verify_witness(r.group(), sig, v).ok());
  CHECK(spectrum_csv_row(s, "alt:4").rfind("\"alt:4\",12,1,3,3,", 0) == 0);
}

TEST_CASE("cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "gsk_cache_test";
  std::filesystem::remove_all(dir);
  SpectrumCache cache(dir, "psl2:7");
  std::string first;
  {
    Realizer r(build_group("psl2:7"));
    CHECK(!cache.load(r));
    auto s = compute_spectrum(r);
    cache.save(r, s.frontier);
    first = spectrum_to_json(s, r, "psl2:7").dump();
  }
  REQUIRE(std::filesystem::exists(cache.file()));
  {
    Realizer r(build_group("psl2:7"));
    CHECK(cache.load(r));
    CHECK(!r.realized().empty());
    auto s = compute_spectrum(r);
    CHECK(spectrum_to_json(s, r, "psl2:7").dump() == first);
  }
  // A different group description uses a different file.
  CHECK(SpectrumCache(dir, "psl2:8").file() != cache.file());
  // A tampered witness is rejected.
  {
    std::ifstream in(cache.file());
    auto j = nlohmann::json::parse(in);
    auto& w = j["witnesses"][0];
    w["elliptic"][0][0] = w["elliptic"][0][1];
    std::ofstream(cache.file()) << j.dump();
    Realizer r(build_group("psl2:7"));
    CHECK_THROWS_AS(cache.load(r), Error);
  }
  std::filesystem::remove_all(dir);
}
