#include "gsk/aec.hpp"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "gsk/error.hpp"
#include "gsk/gk.hpp"

namespace gsk {

namespace mp = boost::multiprecision;

Signature::Signature(std::uint64_t orbit_genus, std::vector<std::uint64_t> p)
    : h(orbit_genus), periods(std::move(p)) {
  std::sort(periods.begin(), periods.end());
}

std::string to_string(const Signature& sig) {
  std::string out = std::to_string(sig.h) + ';';
  for (std::size_t i = 0; i < sig.periods.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sig.periods[i]);
  }
  return out;
}

Signature parse_signature(std::string_view text) {
  auto read_number = [&](std::size_t begin, std::size_t end) {
    if (begin == end) throw ParseError(begin, "expected a number");
    std::uint64_t v = 0;
    for (std::size_t i = begin; i < end; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError(i, "expected a digit");
      if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) throw ParseError(begin, "number too large");
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
    }
    return v;
  };
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError(text.size(), "expected ';' after the orbit genus");
  Signature sig;
  sig.h = read_number(0, semi);
  std::size_t pos = semi + 1;
  while (pos < text.size()) {
    std::size_t comma = std::min(text.find(',', pos), text.size());
    std::uint64_t n = read_number(pos, comma);
    if (n < 2) throw ParseError(pos, "periods must be at least 2");
    sig.periods.push_back(n);
    if (comma == text.size()) break;
    pos = comma + 1;
    if (pos == text.size()) throw ParseError(pos, "trailing ','");
  }
  std::sort(sig.periods.begin(), sig.periods.end());
  return sig;
}

std::uint64_t genus_of_signature(const Signature& sig, std::uint64_t group_order) {
  // 2(g - 1) = |G| (2h - 2 + sum (1 - 1/n))
  mp::cpp_rational twice(2 * static_cast<long long>(sig.h) - 2);
  for (auto n : sig.periods) twice += mp::cpp_rational(n - 1, n);
  mp::cpp_rational g = mp::cpp_rational(group_order) * twice / 2 + 1;
  if (denominator(g) != 1 || g < 0)
    throw Error(ErrorCode::NonIntegralGenus,
                "signature " + to_string(sig) + " gives no valid genus for a group of order " +
                    std::to_string(group_order));
  return numerator(g).convert_to<std::uint64_t>();
}

AecInstance make_aec_instance(std::uint64_t group_order, std::uint64_t increment,
                              std::vector<std::uint64_t> periods) {
  if (increment == 0 || group_order % increment != 0)
    throw Error(ErrorCode::InvalidArgument, "increment must divide the group order");
  std::sort(periods.begin(), periods.end());
  periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
  AecInstance inst;
  inst.group_order = group_order;
  inst.increment = increment;
  inst.hyperbolic_step = group_order / increment;
  std::uint64_t l = 1;
  for (auto n : periods) l = std::lcm(l, n);
  inst.denominator = 2 * l * increment;
  for (auto n : periods) inst.coefficient_numerators.push_back(group_order * (n - 1) * (l / n));
  inst.periods = std::move(periods);
  return inst;
}

AecInstance aec_instance(const GroupElements& g, std::uint64_t increment) {
  std::vector<std::uint64_t> periods;
  for (Elem x = 1; x < g.size(); ++x) periods.push_back(g.order(x));
  return make_aec_instance(g.size(), increment, std::move(periods));
}

AecInstance aec_instance(const PermGroup& group) {
  return aec_instance(GroupElements(group), genus_increment(group).value);
}

namespace {

// Calls visit(multiplicities) for every non-negative solution of
// sum a_i c_i == target, lexicographically; stops early when visit returns false.
bool for_each_combination(const std::vector<std::uint64_t>& c, std::uint64_t target,
                          const std::function<bool(const std::vector<std::uint64_t>&)>& visit) {
  const std::size_t k = c.size();
  if (k == 0) return target == 0 ? visit({}) : true;
  std::vector<std::uint64_t> suffix_gcd(k + 1, 0);
  for (std::size_t i = k; i-- > 0;) suffix_gcd[i] = std::gcd(suffix_gcd[i + 1], c[i]);
  std::vector<std::uint64_t> a(k, 0);
  std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t rest) {
    if (rest % suffix_gcd[i] != 0) return true;
    if (i + 1 == k) {
      a[i] = rest / c[i];
      bool go_on = visit(a);
      a[i] = 0;
      return go_on;
    }
    for (std::uint64_t m = 0; m * c[i] <= rest; ++m) {
      a[i] = m;
      if (!rec(i + 1, rest - m * c[i])) return false;
    }
    a[i] = 0;
    return true;
  };
  return rec(0, target);
}

template <class Visit>
void for_each_solution(const AecInstance& inst, std::uint64_t reduced_genus, Visit&& visit) {
  const std::uint64_t step = inst.hyperbolic_step;
  const std::uint64_t h_max = 1 + reduced_genus / step;
  using u128 = unsigned __int128;
  for (std::uint64_t h = 0; h <= h_max; ++h) {
    // sum a_i c_i == (g~ - step (h - 1)) D
    u128 lhs = static_cast<u128>(reduced_genus) + step;
    u128 used = static_cast<u128>(step) * h;
    if (used > lhs) break;
    u128 target = (lhs - used) * inst.denominator;
    if (target > std::numeric_limits<std::uint64_t>::max())
      throw Error(ErrorCode::InvalidArgument, "reduced genus too large");
    bool go_on = for_each_combination(inst.coefficient_numerators, static_cast<std::uint64_t>(target),
                                      [&](const std::vector<std::uint64_t>& a) { return visit(h, a); });
    if (!go_on) return;
  }
}

}  // namespace

std::vector<AecSolution> enumerate_solutions(const AecInstance& inst, std::uint64_t reduced_genus) {
  std::vector<AecSolution> out;
  for_each_solution(inst, reduced_genus, [&](std::uint64_t h, const std::vector<std::uint64_t>& a) {
    AecSolution s;
    s.reduced_genus = reduced_genus;
    s.multiplicities = a;
    std::vector<std::uint64_t> periods;
    for (std::size_t i = 0; i < a.size(); ++i) periods.insert(periods.end(), a[i], inst.periods[i]);
    s.signature = Signature(h, std::move(periods));
    out.push_back(std::move(s));
    return true;
  });
  return out;
}

bool has_solution(const AecInstance& inst, std::uint64_t reduced_genus) {
  bool found = false;
  for_each_solution(inst, reduced_genus, [&](std::uint64_t, const std::vector<std::uint64_t>&) {
    found = true;
    return false;
  });
  return found;
}

namespace {

std::vector<std::uint64_t> checked_coefficients(const std::vector<std::uint64_t>& coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "no coefficients");
  std::uint64_t g = 0;
  for (auto c : coeffs) {
    if (c == 0) throw Error(ErrorCode::InvalidArgument, "coefficients must be positive");
    g = std::gcd(g, c);
  }
  if (g != 1)
    throw Error(ErrorCode::NonCoprime, "coefficients share the factor " + std::to_string(g));
  return coeffs;
}

}  // namespace

std::int64_t frobenius_number_dp(const std::vector<std::uint64_t>& input) {
  auto coeffs = checked_coefficients(input);
  const std::uint64_t a = *std::min_element(coeffs.begin(), coeffs.end());
  if (a == 1) return -1;
  if (a > 50'000'000) throw Error(ErrorCode::InvalidArgument, "smallest coefficient too large");
  constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> dist(a, kInf);
  using Item = std::pair<std::uint64_t, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[0] = 0;
  queue.emplace(0, 0);
  while (!queue.empty()) {
    auto [d, r] = queue.top();
    queue.pop();
    if (d != dist[r]) continue;
    for (auto c : coeffs) {
      std::uint64_t nd = d + c, nr = (r + c) % a;
      if (nd < dist[nr]) {
        dist[nr] = nd;
        queue.emplace(nd, nr);
      }
    }
  }
  std::uint64_t worst = *std::max_element(dist.begin(), dist.end());
  return static_cast<std::int64_t>(worst) - static_cast<std::int64_t>(a);
}

std::int64_t frobenius_number_reduced(const std::vector<std::uint64_t>& input) {
  auto coeffs = checked_coefficients(input);
  for (std::size_t j = 0; j < coeffs.size() && coeffs.size() > 1; ++j) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (i != j) d = std::gcd(d, coeffs[i]);
    if (d <= 1) continue;
    std::vector<std::uint64_t> rest = {coeffs[j]};
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (i != j) rest.push_back(coeffs[i] / d);
    std::int64_t inner = frobenius_number_reduced(rest);
    // The identity needs the inner value including the -1 "all representable" case.
    return static_cast<std::int64_t>(d) * inner + static_cast<std::int64_t>(coeffs[j] * (d - 1));
  }
  return frobenius_number_dp(coeffs);
}

std::int64_t frobenius_number(const std::vector<std::uint64_t>& coeffs) {
  std::int64_t dp = frobenius_number_dp(coeffs);
  std::int64_t reduced = frobenius_number_reduced(coeffs);
  if (dp != reduced) throw std::logic_error("Frobenius number reduction disagrees with the direct computation");
  return dp;
}

bool omega_membership(unsigned e, std::uint64_t m) {
  if (e < 2 || e > 62) throw Error(ErrorCode::InvalidArgument, "e must lie in [2, 62]");
  if (m == 0) return true;
  const std::uint64_t low_mask = (std::uint64_t{1} << (e - 1)) - 1;
  std::uint64_t digit_sum = static_cast<std::uint64_t>(std::popcount(m & low_mask)) + (m >> (e - 1));
  unsigned first = (m & low_mask) ? static_cast<unsigned>(std::countr_zero(m & low_mask)) : e - 1;
  return digit_sum + first >= e - 1;
}

std::uint64_t least_stable_solution(unsigned e) {
  if (e < 2 || e > 40) throw Error(ErrorCode::InvalidArgument, "e must lie in [2, 40]");
  std::uint64_t formula = (e - 3) * (std::uint64_t{1} << (e - 1)) + 2;
  // The shortest-path check runs modulo 2^(e-2); skip it where that is too big.
  if (e > 22) return formula;
  std::vector<std::uint64_t> coeffs = {std::uint64_t{1} << e};
  for (unsigned i = 1; i + 1 <= e; ++i)
    coeffs.push_back((std::uint64_t{1} << (e - 1)) - (std::uint64_t{1} << (e - 1 - i)));
  std::int64_t f = frobenius_number(coeffs);
  auto direct = static_cast<std::uint64_t>(std::max<std::int64_t>(f + 1, 1));
  if (e < 4) return direct;
  if (formula != direct) throw std::logic_error("least stable solution formula disagrees with the direct computation");
  return formula;
}

}  // namespace gsk
