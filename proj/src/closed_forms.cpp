#include <numeric>

#include "gsk/closed_forms.hpp"
#include "gsk/error.hpp"
#include "gsk/group_spec.hpp"
#include "gsk/spectrum.hpp"

namespace gsk {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

VerifyCell cell(std::string group, std::string field, std::uint64_t expected, std::optional<std::uint64_t> actual) {
  VerifyCell c{std::move(group), std::move(field), std::to_string(expected), actual ? std::to_string(*actual) : "-",
               actual && *actual == expected};
  return c;
}

}  // namespace

std::string_view to_string(MaxClassKind kind) noexcept {
  switch (kind) {
    case MaxClassKind::Dihedral:
      return "dihedral";
    case MaxClassKind::Quaternion:
      return "quaternion";
    case MaxClassKind::Semidihedral:
      return "semidihedral";
  }
  return "?";
}

std::string max_class_spec(MaxClassKind kind, unsigned e) {
  return std::string(to_string(kind)) + "2:" + std::to_string(e);
}

MaxClassParams maximal_class_params(MaxClassKind kind, unsigned e) {
  if (e < 5) throw Error(ErrorCode::OutOfRegime, "maximal class formulas need e >= 5, got " + std::to_string(e));
  if (e > 40) throw Error(ErrorCode::InvalidArgument, "e too large");
  const std::uint64_t t = std::uint64_t{1} << e;
  MaxClassParams out{kind, e, 0, 0};
  switch (kind) {
    case MaxClassKind::Dihedral:
      out.mu = t / 2;
      out.sigma = (e - 3) * t + 4;
      break;
    case MaxClassKind::Quaternion:
      out.mu = t / 2;
      out.sigma = (e - 3) * t + t / 2 + 3;
      break;
    case MaxClassKind::Semidihedral:
      out.mu = t / 4;
      out.sigma = (e - 3) * t + t / 4 + 3;
      break;
  }
  return out;
}

std::uint64_t psl2_increment(std::uint64_t q) {
  auto [p, f] = prime_power(q);
  std::uint64_t out = 1;
  if (p == 2) {
    for (unsigned i = 2; i < f; ++i) out *= 2;
  } else {
    for (unsigned i = 1; i < f; ++i) out *= p;
  }
  return out;
}

std::uint64_t psl2_dp(std::uint64_t p) {
  for (std::uint64_t e = 7;; ++e)
    if (((p - 1) / 2) % e == 0 || ((p + 1) / 2) % e == 0) return e;
}

Psl2MinGenus psl2p_min_genus(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "need a prime p >= 5");
  const std::uint64_t order = p * (p * p - 1) / 2;
  Psl2MinGenus out;
  if (p == 5 || p == 7 || p == 11) {
    out.signature = Signature(0, {2, 3, p});
    out.rule = 1;
  } else {
    const std::uint64_t d = psl2_dp(p);
    const bool pm1_mod5 = p % 5 == 1 || p % 5 == 4;
    const bool pm1_mod8 = p % 8 == 1 || p % 8 == 7;
    const bool c2 = pm1_mod5 && !pm1_mod8 && d >= 15;
    const bool c3 = !pm1_mod5 && pm1_mod8 && d >= 12;
    const bool c4 = pm1_mod5 && pm1_mod8 && d >= 9;
    if (c2) {
      out.signature = Signature(0, {2, 5, 5});
      out.rule = 2;
    } else if (c3) {
      out.signature = Signature(0, {3, 3, 4});
      out.rule = 3;
    } else if (c4) {
      out.signature = Signature(0, {2, 4, 5});
      out.rule = 4;
    } else {
      out.signature = Signature(0, {2, 3, d});
      out.rule = 5;
    }
    const bool fired[] = {false, false, c2, c3, c4};
    for (int r = 2; r <= 4; ++r)
      if (fired[r] && r != out.rule) out.overlapping.push_back(r);
  }
  out.genus = genus_of_signature(out.signature, order);
  return out;
}

std::uint64_t stable_genus_from_periods(std::uint64_t order, const std::vector<std::uint64_t>& periods) {
  std::vector<std::uint64_t> coeffs{order};
  for (auto n : periods) {
    if ((order * (n - 1)) % (2 * n) != 0)
      throw Error(ErrorCode::NonIntegralGenus, "coefficient for period " + std::to_string(n) + " is not integral");
    coeffs.push_back(order * (n - 1) / (2 * n));
  }
  const std::int64_t f = frobenius_number(coeffs);
  return static_cast<std::uint64_t>(f + 2) - order;
}

std::uint64_t psl2p_stable_genus(std::uint64_t p) {
  if (p < 13 || !is_prime(p)) throw Error(ErrorCode::OutOfRegime, "stable genus formula needs a prime p >= 13");
  GroupElements g(build_group("psl2:" + std::to_string(p)));
  auto inst = aec_instance(g, 1);
  return stable_genus_from_periods(g.size(), inst.periods);
}

const std::vector<Table4Row>& table4_rows() {
  static const std::vector<Table4Row> rows{
      {2, 1, 2, 2, 0},          {4, 1, 3, 63, 0},          {8, 2, 7, 1453, 0},         {16, 4, 205, 32153, 1},
      {32, 8, 1241, 517617, 0}, {64, 16, 11761, 1386081, 12}, {3, 1, 3, 3, 0},         {9, 3, 16, 505, 1},
      {27, 9, 118, 61696, 0},   {81, 27, 15499, 5371111, 6}, {5, 1, 3, 63, 0},          {25, 5, 326, 52111, 3},
      {125, 25, 11626, 9886176, 4}, {7, 1, 3, 399, 0},      {49, 7, 2451, 337359, 7},
  };
  return rows;
}

bool VerifyReport::ok() const noexcept {
  if (undecided) return false;
  for (const auto& c : cells)
    if (!c.ok) return false;
  return true;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json cells_json = nlohmann::json::array();
  for (const auto& c : cells)
    cells_json.push_back(
        {{"group", c.group}, {"field", c.field}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
  return {{"ok", ok()}, {"undecided", undecided}, {"cells", cells_json}};
}

VerifyReport verify_table3(unsigned e_min, unsigned e_max, const VerifyOptions& options) {
  VerifyReport report;
  for (unsigned e = e_min; e <= e_max; ++e)
    for (auto kind : {MaxClassKind::Dihedral, MaxClassKind::Quaternion, MaxClassKind::Semidihedral}) {
      const auto expected = maximal_class_params(kind, e);
      const std::string spec = max_class_spec(kind, e);
      RealizerOptions ropts;
      ropts.search_budget = options.search_budget;
      Realizer realizer(build_group(spec), ropts);
      SpectrumOptions sopts;
      sopts.threads = options.threads;
      auto s = compute_spectrum(realizer, sopts);
      report.undecided |= !s.undecided.empty();
      report.cells.push_back(cell(spec, "N", 1, s.increment));
      report.cells.push_back(cell(spec, "mu", expected.mu, s.min_genus));
      report.cells.push_back(cell(spec, "sigma", expected.sigma, s.stable_upper_genus));
      if (kind == MaxClassKind::Dihedral) {
        // The last gap is not a genus: every solution there has no generating vector.
        Realizer fresh(build_group(spec), ropts);
        const std::uint64_t gap_genus = (e - 3) * (std::uint64_t{1} << e) + 3;
        std::uint64_t refuted = 0, total = 0;
        for (const auto& sol : enumerate_solutions(fresh.instance(), gap_genus - 1)) {
          ++total;
          refuted += fresh.epi_count(sol.signature).is_zero();
        }
        VerifyCell c{spec, "gap " + std::to_string(gap_genus) + " refuted by count", std::to_string(total),
                     std::to_string(refuted), total > 0 && refuted == total};
        report.cells.push_back(c);
      }
    }
  return report;
}

VerifyReport verify_table4(const std::vector<std::uint64_t>& qs, const VerifyOptions& options) {
  VerifyReport report;
  for (auto q : qs) {
    const Table4Row* row = nullptr;
    for (const auto& r : table4_rows())
      if (r.q == q) row = &r;
    if (!row) throw Error(ErrorCode::InvalidArgument, "no published row for q = " + std::to_string(q));
    const std::string spec = "psl2:" + std::to_string(q);
    RealizerOptions ropts;
    ropts.search_budget = options.search_budget;
    Realizer realizer(build_group(spec), ropts);
    SpectrumOptions sopts;
    sopts.threads = options.threads;
    auto s = compute_spectrum(realizer, sopts);
    report.undecided |= !s.undecided.empty();
    report.cells.push_back(cell(spec, "N", row->increment, s.increment));
    report.cells.push_back(cell(spec, "mu", row->mu, s.min_genus));
    report.cells.push_back(cell(spec, "sigma", row->sigma, s.stable_upper_genus));
    report.cells.push_back(cell(spec, "bad", row->bad, s.bad_genus_count));
  }
  return report;
}

VerifyReport verify_m11(const VerifyOptions& options) {
  VerifyReport report;
  RealizerOptions ropts;
  ropts.search_budget = options.search_budget;
  Realizer realizer(build_group("M11"), ropts);
  SpectrumOptions sopts;
  sopts.threads = options.threads;
  sopts.stop_after_min_genus = !options.m11_full;
  auto s = compute_spectrum(realizer, sopts);
  report.undecided |= !s.undecided.empty();
  report.cells.push_back(cell("M11", "N", 3, s.increment));
  report.cells.push_back(cell("M11", "mu", 631, s.min_genus));
  const std::string sig = s.min_genus_signature ? to_string(*s.min_genus_signature) : "-";
  report.cells.push_back({"M11", "mu signature", "0;2,4,11", sig, sig == "0;2,4,11"});
  if (options.m11_full) {
    report.cells.push_back(cell("M11", "sigma", 48511, s.stable_upper_genus));
    report.cells.push_back(cell("M11", "bad", 2, s.bad_genus_count));
  }
  return report;
}

}  // namespace gsk
