#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "gsk/error.hpp"
#include "gsk/hash.hpp"
#include "gsk/spectrum.hpp"

namespace gsk {

namespace {

struct Level {
  std::uint64_t gt = 0;
  std::vector<Signature> solutions;
  std::vector<Verdict> verdicts;
  std::vector<char> classified;
  bool realized = false;
  std::optional<std::size_t> sample;  // index of the reported witness
};

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned t = 0; t < count; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Classifies every solution still open, in parallel. Solutions of one
// reduced genus never derive from each other, so the order does not matter.
void finish_level(Realizer& realizer, Level& level, unsigned threads) {
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < level.solutions.size(); ++i)
    if (!level.classified[i]) open.push_back(i);
  parallel_for(open.size(), threads, [&](std::size_t k) {
    std::size_t i = open[k];
    level.verdicts[i] = realizer.is_datum(level.solutions[i]).verdict;
    level.classified[i] = 1;
  });
  for (std::size_t i = 0; i < level.solutions.size(); ++i)
    if (level.verdicts[i] == Verdict::Realized) {
      level.realized = true;
      if (!level.sample || i < *level.sample) level.sample = i;
    }
}

// Enough work to know whether the level is realized: cheap rules on every
// solution first, then full decisions in order until one is realized.
void settle_level(Realizer& realizer, Level& level) {
  for (std::size_t i = 0; i < level.solutions.size(); ++i) {
    auto d = realizer.quick_decide(level.solutions[i]);
    if (d.verdict == Verdict::Undecided) continue;
    level.verdicts[i] = d.verdict;
    level.classified[i] = 1;
    if (d.verdict == Verdict::Realized && !level.realized) {
      level.realized = true;
      level.sample = i;
    }
  }
  if (level.realized) return;
  for (std::size_t i = 0; i < level.solutions.size(); ++i) {
    if (level.classified[i]) continue;
    level.verdicts[i] = realizer.is_datum(level.solutions[i]).verdict;
    level.classified[i] = 1;
    if (level.verdicts[i] == Verdict::Realized) {
      level.realized = true;
      level.sample = i;
      return;
    }
  }
}

}  // namespace

std::optional<std::uint64_t> stable_window_certificate(const std::set<std::uint64_t>& realized, std::uint64_t step) {
  if (step == 0) throw Error(ErrorCode::InvalidArgument, "window length must be positive");
  std::uint64_t start = 0, run = 0, prev = 0;
  for (auto g : realized) {
    if (g == 0) continue;
    if (run > 0 && g == prev + 1) {
      ++run;
    } else {
      start = g;
      run = 1;
    }
    prev = g;
    if (run == step) return start;
  }
  return std::nullopt;
}

std::uint64_t reduced_genus_cap(const AecInstance& inst) {
  const std::uint64_t step = inst.hyperbolic_step;
  // D (g~ + step) = step D h + sum a_i C_i, all terms scaled by the common divisor.
  std::vector<std::uint64_t> coeffs{step * inst.denominator};
  coeffs.insert(coeffs.end(), inst.coefficient_numerators.begin(), inst.coefficient_numerators.end());
  std::uint64_t g = 0;
  for (auto c : coeffs) g = std::gcd(g, c);
  for (auto& c : coeffs) c /= g;
  const std::int64_t f = frobenius_number_dp(coeffs);
  // Beyond g f / D - step every admissible reduced genus has a solution.
  const std::uint64_t scaled = f < 0 ? 0 : static_cast<std::uint64_t>(f) * g;
  const std::uint64_t last_hole = scaled / inst.denominator + 1;
  return (last_hole > step ? last_hole - step : 1) + 2 * step;
}

SpectrumSummary compute_spectrum(Realizer& realizer, const SpectrumOptions& options) {
  const AecInstance& inst = realizer.instance();
  const std::uint64_t step = inst.hyperbolic_step;
  const std::uint64_t cap = options.max_reduced_genus ? options.max_reduced_genus : reduced_genus_cap(inst);
  const unsigned threads = std::max(1u, options.threads);

  SpectrumSummary s;
  s.group_order = inst.group_order;
  s.increment = inst.increment;

  std::map<std::uint64_t, Level> levels;
  std::optional<std::uint64_t> mu;
  std::uint64_t run_start = 0;  // 0 while no run is open
  std::vector<std::uint64_t> deferred;  // realized levels inside the current run

  for (std::uint64_t gt = 1; gt <= cap; ++gt) {
    s.frontier = gt;
    Level& level = levels[gt];
    level.gt = gt;
    for (auto& sol : enumerate_solutions(inst, gt)) level.solutions.push_back(std::move(sol.signature));
    level.verdicts.assign(level.solutions.size(), Verdict::Undecided);
    level.classified.assign(level.solutions.size(), 0);

    settle_level(realizer, level);
    if (options.progress) options.progress(gt, level.realized);

    if (!level.realized) {
      // The run is broken, so every level in it lies below sigma~.
      for (auto d : deferred) finish_level(realizer, levels[d], threads);
      deferred.clear();
      run_start = 0;
      continue;
    }
    if (!mu) mu = gt;
    if (run_start == 0) {
      run_start = gt;
      finish_level(realizer, level, threads);
      if (options.stop_after_min_genus) break;
    } else {
      deferred.push_back(gt);
    }
    if (gt - run_start + 1 == step) {
      s.stable_upper_genus = 1 + inst.increment * run_start;
      break;
    }
  }

  if (mu) {
    const Level& first = levels.at(*mu);
    s.min_genus = 1 + inst.increment * *mu;
    for (std::size_t i = 0; i < first.solutions.size(); ++i)
      if (first.verdicts[i] == Verdict::Realized) {
        s.min_genus_signature = first.solutions[i];
        break;
      }
  }

  const std::uint64_t window_end =
      s.stable_upper_genus ? run_start : (options.stop_after_min_genus && mu ? *mu : s.frontier);
  for (const auto& [gt, level] : levels) {
    const bool inside = mu && gt >= *mu && gt <= window_end;
    bool has_bad = false;
    for (std::size_t i = 0; i < level.solutions.size(); ++i) {
      if (!level.classified[i]) continue;
      if (level.verdicts[i] == Verdict::Undecided) {
        if (gt <= window_end) s.undecided.push_back({gt, level.solutions[i]});
        continue;
      }
      if (level.verdicts[i] != Verdict::Refuted) continue;
      if (inside) {
        s.bad_solutions.push_back({gt, level.solutions[i]});
        has_bad = true;
      } else {
        ++s.refuted_outside_window;
      }
    }
    if (inside && has_bad) ++s.genera_with_bad_solutions;
    const bool all_refuted = std::all_of(level.verdicts.begin(), level.verdicts.end(),
                                         [](Verdict v) { return v == Verdict::Refuted; });
    if (inside && !level.realized && !level.solutions.empty() && all_refuted) ++s.bad_genus_count;
    if (inside && !level.realized && gt < window_end) s.gaps.push_back(1 + inst.increment * gt);
    if (level.realized) {
      const std::uint64_t genus = 1 + inst.increment * gt;
      if (inst.group_order > 84 * (genus - 1)) s.hurwitz_bound_ok = false;
      if (level.sample && (options.all_witnesses || gt == mu))
        if (auto w = realizer.realized_witness(level.solutions[*level.sample]))
          s.witnesses.emplace(genus, std::make_pair(level.solutions[*level.sample], *w));
    }
  }
  s.bad_solution_count = s.bad_solutions.size();
  return s;
}

std::string group_digits(std::uint64_t v) {
  std::string digits = std::to_string(v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

nlohmann::json spectrum_to_json(const SpectrumSummary& s, const Realizer& realizer, const std::string& group_name) {
  using nlohmann::json;
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["group"] = group_name;
  j["order"] = s.group_order;
  j["increment"] = s.increment;
  j["minGenus"] = opt(s.min_genus);
  j["minGenusSignature"] = s.min_genus_signature ? json(to_string(*s.min_genus_signature)) : json(nullptr);
  j["stableUpperGenus"] = opt(s.stable_upper_genus);
  j["gaps"] = s.gaps;
  json bad = json::array();
  for (const auto& b : s.bad_solutions)
    bad.push_back({{"genus", 1 + s.increment * b.reduced_genus}, {"signature", to_string(b.signature)}});
  j["badSolutions"] = bad;
  j["badSolutionCount"] = s.bad_solution_count;
  j["badGenusCount"] = s.bad_genus_count;
  j["generaWithBadSolutions"] = s.genera_with_bad_solutions;
  json undecided = json::array();
  for (const auto& u : s.undecided)
    undecided.push_back({{"genus", 1 + s.increment * u.reduced_genus}, {"signature", to_string(u.signature)}});
  j["undecided"] = undecided;
  j["certified"] = s.certified();
  j["hurwitzBoundHolds"] = s.hurwitz_bound_ok;
  json witnesses = json::object();
  for (const auto& [genus, w] : s.witnesses)
    witnesses[std::to_string(genus)] = witness_to_json(w.first, realizer.to_permutations(w.second));
  j["witnesses"] = witnesses;
  return j;
}

std::string spectrum_table_header() { return "group | N_G | mu | sigma | bad"; }

std::string spectrum_table_row(const SpectrumSummary& s, const std::string& group_name) {
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? group_digits(*v) : std::string("-"); };
  std::ostringstream out;
  out << group_name << " | " << group_digits(s.increment) << " | " << opt(s.min_genus) << " | "
      << opt(s.stable_upper_genus) << " | " << group_digits(s.bad_genus_count);
  return out.str();
}

std::string spectrum_csv_header() { return "group,order,increment,min_genus,stable_upper_genus,bad_genera,bad_solutions,gaps"; }

std::string spectrum_csv_row(const SpectrumSummary& s, const std::string& group_name) {
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  std::ostringstream out;
  out << '"' << group_name << "\"," << s.group_order << ',' << s.increment << ',' << opt(s.min_genus) << ','
      << opt(s.stable_upper_genus) << ',' << s.bad_genus_count << ',' << s.bad_solution_count << ','
      << s.gaps.size();
  return out.str();
}

SpectrumCache::SpectrumCache(std::filesystem::path directory, std::string canonical_spec)
    : directory_(std::move(directory)), spec_(std::move(canonical_spec)) {}

std::string SpectrumCache::spec_hash() const { return hex64(fnv1a(spec_)); }

std::filesystem::path SpectrumCache::file() const { return directory_ / (spec_hash() + ".json"); }

bool SpectrumCache::load(Realizer& realizer) const {
  std::ifstream in(file());
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  if (j.value("specHash", "") != spec_hash() || j.value("version", 0) != kVersion) return false;
  const auto& witnesses = j.at("witnesses");
  for (const auto& entry : j.at("realized")) {
    auto sig = parse_signature(entry.at("signature").get<std::string>());
    auto [wsig, vec] = witness_from_json(witnesses.at(entry.at("witnessRef").get<std::size_t>()));
    if (wsig != sig || !verify_witness(realizer.group(), sig, vec).ok())
      throw Error(ErrorCode::Io, "cached witness for " + to_string(sig) + " does not verify");
    realizer.record_realized(sig, realizer.from_permutations(vec));
  }
  for (const auto& entry : j.at("refuted")) realizer.record_refuted(parse_signature(entry.get<std::string>()));
  return true;
}

void SpectrumCache::save(const Realizer& realizer, std::uint64_t frontier) const {
  using nlohmann::json;
  json realized = json::array(), witnesses = json::array(), refuted = json::array();
  for (const auto& [sig, v] : realizer.realized()) {
    auto gt = realizer.reduced_genus(sig);
    realized.push_back({{"gtilde", gt ? json(*gt) : json(nullptr)},
                        {"signature", to_string(sig)},
                        {"witnessRef", witnesses.size()}});
    witnesses.push_back(witness_to_json(sig, realizer.to_permutations(v)));
  }
  for (const auto& sig : realizer.refuted()) refuted.push_back(to_string(sig));
  json j{{"specHash", spec_hash()}, {"version", kVersion},  {"spec", spec_},        {"frontier", frontier},
         {"realized", realized},    {"refuted", refuted},   {"witnesses", witnesses}};
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  const auto tmp = file().string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, file(), ec);
  if (ec) throw Error(ErrorCode::Io, "cannot write " + file().string() + ": " + ec.message());
}

}  // namespace gsk
