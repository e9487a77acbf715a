#include "gsk/gk.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "gsk/error.hpp"

namespace gsk {

namespace {

unsigned p_log(std::uint64_t n, std::uint64_t p) {
  unsigned k = 0;
  for (; n % p == 0; n /= p) ++k;
  return k;
}

void require_p_group(std::uint64_t order, std::uint64_t p) {
  auto primes = prime_factors(p);
  if (primes.size() != 1 || primes[0] != p)
    throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  std::uint64_t n = order;
  while (n % p == 0) n /= p;
  if (n != 1) throw Error(ErrorCode::NotAPGroup, "group of order " + std::to_string(order) +
                                                      " is not a " + std::to_string(p) + "-group");
}

// Normal closure of [x, y] inside <x, y>.
ElementSet derived_of_pair(const GroupElements& g, Elem x, Elem y) {
  std::vector<Elem> gens = {g.commutator(x, y)};
  ElementSet d = subgroup_closure(g, gens);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < gens.size() && !grew; ++i)
      for (Elem s : {x, y}) {
        Elem c = g.conj(gens[i], s);
        if (d.contains(c)) continue;
        auto elems = d.elements();
        d = extend_subgroup(g, d, elems, gens, c);
        gens.push_back(c);
        grew = true;
        break;
      }
  }
  return d;
}

}  // namespace

ElementSet kappa_set(const GroupElements& g, std::uint64_t p) {
  require_p_group(g.size(), p);
  std::uint64_t e = exponent(g);
  ElementSet kappa(g.size());
  for (Elem x = 0; x < g.size(); ++x)
    if (g.order(x) < e) kappa.insert(x);
  return kappa;
}

ElementSet kappa_set(const PermGroup& p_group, std::uint64_t p) {
  return kappa_set(GroupElements(p_group), p);
}

GkReport is_gk_type(const PermGroup& p_group, std::uint64_t p) {
  GroupElements g(p_group);
  ElementSet kappa = kappa_set(g, p);
  GkReport report;
  report.exponent_exp = p_log(exponent(g), p);
  report.kappa_size = kappa.count();
  if (kappa.count() == 0) return report;
  auto elems = kappa.elements();
  report.is_subgroup = true;
  for (Elem a : elems) {
    for (Elem b : elems)
      if (!kappa.contains(g.mul(a, b))) {
        report.is_subgroup = false;
        break;
      }
    if (!report.is_subgroup) break;
  }
  report.is_index_p = kappa.count() * p == g.size();
  report.is_gk_type = report.is_subgroup && report.is_index_p;
  return report;
}

GenusIncrement genus_increment(const PermGroup& group) {
  GroupElements g(group);
  GenusIncrement result;
  for (std::uint64_t p : prime_factors(g.size())) {
    PermGroup sylow = sylow_subgroup(g, p);
    unsigned n = p_log(g.size(), p);
    unsigned e = p_log(exponent(sylow), p);
    for (unsigned i = e; i < n; ++i) result.value *= p;
    if (p == 2 && !is_gk_type(sylow, 2).is_gk_type) result.halved = true;
  }
  if (result.halved) {
    if (result.value % 2 != 0) throw std::logic_error("genus increment is not an integer");
    result.value /= 2;
  }
  return result;
}

std::vector<PermGroup> gk_core_chain(const PermGroup& p_group, std::uint64_t p) {
  std::vector<PermGroup> chain = {p_group};
  while (true) {
    GroupElements g(chain.back());
    require_p_group(g.size(), p);
    if (!is_gk_type(chain.back(), p).is_gk_type) break;
    chain.push_back(to_perm_group(g, kappa_set(g, p)));
  }
  return chain;
}

bool is_regular(const PermGroup& p_group, std::uint64_t p) {
  GroupElements g(p_group);
  require_p_group(g.size(), p);
  const auto pp = static_cast<long long>(p);
  // p-th powers of the derived subgroup, keyed by the subgroup <x, y>.
  std::unordered_map<ElementSet, ElementSet, ElementSetHash> powers_by_subgroup;
  for (Elem x = 0; x < g.size(); ++x)
    for (Elem y = 0; y < g.size(); ++y) {
      if (g.mul(x, y) == g.mul(y, x)) continue;
      Elem xy = g.mul(x, y);
      Elem target = g.mul(g.inv(g.pow(xy, pp)), g.mul(g.pow(x, pp), g.pow(y, pp)));
      std::vector<Elem> gens = {x, y};
      ElementSet h = subgroup_closure(g, gens);
      auto it = powers_by_subgroup.find(h);
      if (it == powers_by_subgroup.end()) {
        ElementSet powers(g.size());
        for (Elem c : derived_of_pair(g, x, y).elements()) powers.insert(g.pow(c, pp));
        it = powers_by_subgroup.emplace(std::move(h), std::move(powers)).first;
      }
      if (!it->second.contains(target)) return false;
    }
  return true;
}

bool tree_infinite(const PermGroup& root, std::uint64_t p) {
  GroupElements g(root);
  require_p_group(g.size(), p);
  if (is_gk_type(root, p).is_gk_type)
    throw Error(ErrorCode::RootIsGkType, "root of a GK-tree must not be of GK-type");
  return exponent(center(g)) == exponent(g);
}

std::optional<Permutation> stem_criterion(const PermGroup& group, const PermGroup& root, std::uint64_t p) {
  for (const auto& r : root.generators())
    if (r.degree() != group.degree() || !group.contains(r))
      throw Error(ErrorCode::NotASubgroup, "root is not contained in the group");
  GroupElements g(group);
  ElementSet kappa = kappa_set(g, p);
  std::vector<Permutation> gens = root.generators();
  gens.emplace_back();
  for (Elem t = 0; t < g.size(); ++t) {
    if (kappa.contains(t)) continue;
    bool central = true;
    for (Elem s : g.generators())
      if (g.mul(t, s) != g.mul(s, t)) {
        central = false;
        break;
      }
    if (!central) continue;
    gens.back() = g.permutation(t);
    if (generates(group, gens)) return gens.back();
  }
  return std::nullopt;
}

GroupSpec group_with_increment(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "genus increment must be positive");
  if (n == 1) return GroupSpec{GroupKind::Cyclic, {2}, {}};
  GroupSpec spec{GroupKind::Product, {}, {}};
  for (std::uint64_t p : prime_factors(n)) {
    std::uint64_t q = 1;
    for (std::uint64_t m = n; m % p == 0; m /= p) q *= p;
    if (p == 2) q *= 2;
    spec.factors.push_back(GroupSpec{GroupKind::Cyclic, {q}, {}});
    spec.factors.push_back(GroupSpec{GroupKind::Cyclic, {q}, {}});
  }
  return spec;
}

}  // namespace gsk
