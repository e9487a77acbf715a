#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "gsk/aec.hpp"
#include "gsk/closed_forms.hpp"
#include "gsk/error.hpp"
#include "gsk/gk.hpp"
#include "gsk/group_spec.hpp"
#include "gsk/realizability.hpp"
#include "gsk/spectrum.hpp"

using namespace gsk;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUndecided = 3;

struct Config {
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 1;
  std::string format = "json";
  std::size_t enum_bound = GroupElements::kDefaultBound;
  std::size_t lattice_bound = SubgroupLattice::kDefaultBound;
  std::uint64_t budget = 5'000'000;
};

void print_error(std::string_view code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

RealizerOptions realizer_options(const Config& cfg) {
  RealizerOptions o;
  o.enumeration_bound = cfg.enum_bound;
  o.lattice_bound = cfg.lattice_bound;
  o.search_budget = cfg.budget;
  return o;
}

std::optional<SpectrumCache> open_cache(const Config& cfg, const std::string& spec) {
  if (cfg.no_cache) return std::nullopt;
  std::string dir = cfg.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("GSK_CACHE")) dir = env;
  if (dir.empty()) return std::nullopt;
  return SpectrumCache(dir, to_string(parse_group_spec(spec)));
}

std::string plain_number(std::uint64_t v, const Config& cfg) {
  return cfg.format == "table" ? group_digits(v) : std::to_string(v);
}

int report_verify(const VerifyReport& report, const Config& cfg) {
  if (cfg.format == "json") {
    std::cout << report.to_json().dump(2) << '\n';
  } else if (cfg.format == "csv") {
    std::cout << "group,field,expected,actual,ok\n";
    for (const auto& c : report.cells)
      std::cout << '"' << c.group << "\",\"" << c.field << "\"," << c.expected << ',' << c.actual << ','
                << (c.ok ? "yes" : "no") << '\n';
  } else {
    for (const auto& c : report.cells)
      std::cout << (c.ok ? "ok    " : "FAIL  ") << c.group << ' ' << c.field << ": expected " << c.expected
                << ", got " << c.actual << '\n';
  }
  if (report.undecided) {
    print_error("Undecidable", "some solutions stayed undecided");
    return kExitUndecided;
  }
  return report.ok() ? kExitOk : kExitMismatch;
}

// "5..6" or "2,3,4" or a single number.
std::vector<std::uint64_t> parse_range(const std::string& text) {
  std::vector<std::uint64_t> out;
  auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      std::uint64_t a = std::stoull(text.substr(0, dots)), b = std::stoull(text.substr(dots + 2));
      for (auto v = a; v <= b; ++v) out.push_back(v);
    } else {
      std::stringstream in(text);
      for (std::string item; std::getline(in, item, ',');) out.push_back(std::stoull(item));
    }
  } catch (const std::exception&) {
    throw ParseError(0, "bad range '" + text + "'");
  }
  if (out.empty()) throw ParseError(0, "empty range");
  return out;
}

std::size_t class_index(const ClassTable& table, const std::string& token) {
  if (auto i = table.find_label(token)) return *i;
  try {
    std::size_t pos = 0;
    auto v = std::stoull(token, &pos);
    if (pos == token.size() && v < table.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "unknown class '" + token + "'");
}

json class_table_json(const ClassTable& table) {
  json out = json::array();
  for (std::size_t i = 0; i < table.size(); ++i)
    out.push_back({{"index", i}, {"label", table.labels[i]}, {"size", table.sizes[i]}, {"order", table.element_orders[i]}});
  return out;
}

int run_spectrum(const Config& cfg, const std::string& spec, bool min_only, std::uint64_t max_gt, bool all_witnesses) {
  Realizer realizer(build_group(spec), realizer_options(cfg));
  auto cache = open_cache(cfg, spec);
  if (cache) cache->load(realizer);
  SpectrumOptions options;
  options.threads = cfg.threads;
  options.stop_after_min_genus = min_only;
  options.max_reduced_genus = max_gt;
  options.all_witnesses = all_witnesses;
  auto s = compute_spectrum(realizer, options);
  if (cache) cache->save(realizer, s.frontier);

  const std::string name = to_string(parse_group_spec(spec));
  if (cfg.format == "json") {
    auto j = spectrum_to_json(s, realizer, name);
    if (min_only) {
      j.erase("stableUpperGenus");
      j.erase("gaps");
    }
    std::cout << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    std::cout << spectrum_csv_header() << '\n' << spectrum_csv_row(s, name) << '\n';
  } else if (min_only) {
    std::cout << name << " | mu = " << (s.min_genus ? group_digits(*s.min_genus) : "-") << " | "
              << (s.min_genus_signature ? to_string(*s.min_genus_signature) : "-") << '\n';
  } else {
    std::cout << spectrum_table_header() << '\n' << spectrum_table_row(s, name) << '\n';
  }
  const bool undecided = !s.undecided.empty() || (!min_only && !s.stable_upper_genus) || (min_only && !s.min_genus);
  if (undecided) {
    print_error("Undecidable", "spectrum not certified below reduced genus " + std::to_string(s.frontier));
    return kExitUndecided;
  }
  return kExitOk;
}

int run_realize(const Config& cfg, const std::string& spec, const std::string& sig_text) {
  Realizer realizer(build_group(spec), realizer_options(cfg));
  const Signature sig = parse_signature(sig_text);
  const std::uint64_t genus = genus_of_signature(sig, realizer.group().order());
  const auto d = realizer.is_datum(sig);
  json j{{"group", to_string(parse_group_spec(spec))},
         {"signature", to_string(sig)},
         {"genus", genus},
         {"verdict", to_string(d.verdict)},
         {"method", d.method}};
  j["homCount"] = realizer.hom_count(sig).str();
  if (realizer.lattice()) j["epiCount"] = realizer.epi_count(sig).str();
  if (d.witness) j["witness"] = witness_to_json(sig, realizer.to_permutations(*d.witness));
  if (cfg.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << to_string(sig) << " genus " << plain_number(genus, cfg) << ": " << to_string(d.verdict) << " ("
              << d.method << ")\n";
  }
  return d.verdict == Verdict::Undecided ? kExitUndecided : kExitOk;
}

int run_gk(const Config& cfg, const std::string& spec) {
  PermGroup group = build_group(spec);
  GroupElements elements(group, cfg.enum_bound);
  json sylows = json::array();
  for (auto p : prime_factors(group.order())) {
    PermGroup sylow = sylow_subgroup(elements, p);
    GkReport r = is_gk_type(sylow, p);
    json entry{{"prime", p},
               {"order", sylow.order()},
               {"exponent", exponent(sylow)},
               {"kappaSize", r.kappa_size},
               {"kappaIsSubgroup", r.is_subgroup},
               {"kappaIndexP", r.is_index_p},
               {"gkType", r.is_gk_type},
               {"regular", is_regular(sylow, p)}};
    json chain = json::array();
    auto groups = gk_core_chain(sylow, p);
    for (const auto& h : groups) chain.push_back(h.order());
    entry["coreChainOrders"] = chain;
    const PermGroup& root = groups.back();
    if (!root.is_trivial()) entry["rootTreeInfinite"] = tree_infinite(root, p);
    sylows.push_back(entry);
  }
  const auto inc = genus_increment(group);
  json j{{"group", to_string(parse_group_spec(spec))},
         {"order", group.order()},
         {"increment", inc.value},
         {"halved", inc.halved},
         {"sylow", sylows}};
  if (cfg.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << j["group"].get<std::string>() << ": N_G = " << inc.value << '\n';
    for (const auto& s : sylows)
      std::cout << "  p = " << s["prime"] << ": |P| = " << s["order"] << ", exponent " << s["exponent"]
                << ", GK-type " << (s["gkType"].get<bool>() ? "yes" : "no") << ", regular "
                << (s["regular"].get<bool>() ? "yes" : "no") << ", chain " << s["coreChainOrders"].dump() << '\n';
  }
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Undecidable:
    case ErrorCode::BudgetExceeded:
      return kExitUndecided;
    case ErrorCode::Io:
      return kExitMismatch;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus spectra of finite permutation groups", "gsk"};
  app.fallthrough();
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--cache", cfg.cache_dir, "Spectrum cache directory (default: $GSK_CACHE)");
  app.add_flag("--no-cache", cfg.no_cache, "Ignore the spectrum cache");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}));
  app.add_option("--enum-bound", cfg.enum_bound, "Largest group order that is enumerated")->check(CLI::PositiveNumber);
  app.add_option("--lattice-bound", cfg.lattice_bound, "Largest order for the subgroup lattice")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "Node budget of the witness search")->check(CLI::PositiveNumber);

  std::string spec, sig_text, scope, range;
  std::vector<std::string> classes;
  std::vector<std::uint64_t> numbers;
  std::uint64_t max_gt = 0;
  bool all_witnesses = false, full = false;

  auto* spectrum = app.add_subcommand("spectrum", "Genus spectrum quadruple and bad solutions");
  spectrum->add_option("spec", spec, "Group, e.g. psl2:7")->required();
  spectrum->add_option("--max-gtilde", max_gt, "Stop at this reduced genus");
  spectrum->add_flag("--all-witnesses", all_witnesses, "Attach a witness for every realized genus");

  auto* increment = app.add_subcommand("increment", "Genus increment N_G");
  increment->add_option("spec", spec)->required();

  auto* min_genus = app.add_subcommand("min-genus", "Minimum genus with a realizing signature");
  min_genus->add_option("spec", spec)->required();

  auto* realize = app.add_subcommand("realize", "Decide whether a signature is a datum");
  realize->add_option("spec", spec)->required();
  realize->add_option("signature", sig_text, "h;n1,n2,...")->required();

  auto* classmult = app.add_subcommand("classmult", "Class multiplication coefficient c(r, s, t)");
  classmult->add_option("spec", spec)->required();
  classmult->add_option("classes", classes, "Three class indices or labels")->expected(3)->required();

  auto* frobenius = app.add_subcommand("frobenius", "Frobenius number");
  frobenius->add_option("numbers", numbers)->required()->check(CLI::PositiveNumber);

  auto* gk = app.add_subcommand("gk", "GK-type report, core chains and regularity of the Sylow subgroups");
  gk->add_option("spec", spec)->required();

  auto* verify = app.add_subcommand("verify", "Compare engine results with the published values");
  verify->add_option("scope", scope)->required()->check(CLI::IsMember({"table3", "table4", "m11"}));
  verify->add_option("--range", range, "table3: e range (5..6); table4: q list (2,3,4,5,7,8,9)");
  verify->add_flag("--full", full, "m11: also the stable upper genus and bad count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("Usage", e.what());
    return kExitUsage;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(cfg, spec, false, max_gt, all_witnesses);
    if (min_genus->parsed()) return run_spectrum(cfg, spec, true, 0, false);
    if (realize->parsed()) return run_realize(cfg, spec, sig_text);
    if (gk->parsed()) return run_gk(cfg, spec);
    if (increment->parsed()) {
      const auto inc = genus_increment(build_group(spec));
      if (cfg.format == "json")
        std::cout << json{{"group", to_string(parse_group_spec(spec))}, {"increment", inc.value}}.dump(2) << '\n';
      else
        std::cout << plain_number(inc.value, cfg) << '\n';
      return kExitOk;
    }
    if (classmult->parsed()) {
      GroupElements elements(build_group(spec), cfg.enum_bound);
      ClassAlgebra algebra(elements);
      const auto& table = algebra.table();
      std::size_t idx[3];
      for (int i = 0; i < 3; ++i) idx[i] = class_index(table, classes[i]);
      const auto c = class_mult_coefficient(algebra, idx[0], idx[1], idx[2]);
      if (cfg.format == "json")
        std::cout << json{{"group", to_string(parse_group_spec(spec))},
                          {"classes", {table.labels[idx[0]], table.labels[idx[1]], table.labels[idx[2]]}},
                          {"coefficient", c},
                          {"classTable", class_table_json(table)}}
                         .dump(2)
                  << '\n';
      else
        std::cout << plain_number(c, cfg) << '\n';
      return kExitOk;
    }
    if (frobenius->parsed()) {
      const auto f = frobenius_number(numbers);
      if (cfg.format == "json")
        std::cout << json{{"numbers", numbers}, {"frobenius", f}}.dump(2) << '\n';
      else
        std::cout << f << '\n';
      return kExitOk;
    }
    if (verify->parsed()) {
      VerifyOptions options;
      options.threads = cfg.threads;
      options.search_budget = cfg.budget;
      if (scope == "table3") {
        auto es = parse_range(range.empty() ? "5..6" : range);
        return report_verify(verify_table3(static_cast<unsigned>(es.front()), static_cast<unsigned>(es.back()), options),
                             cfg);
      }
      if (scope == "table4") return report_verify(verify_table4(parse_range(range.empty() ? "2,3,4,5,7,8,9" : range), options), cfg);
      options.m11_full = full;
      return report_verify(verify_m11(options), cfg);
    }
  } catch (const Error& e) {
    print_error(to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return kExitMismatch;
  }
  return kExitUsage;
}
