#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "gsk/error.hpp"
#include "gsk/realizability.hpp"

namespace gsk {

namespace {

ElementSet conjugate_set(const GroupElements& g, const std::vector<Elem>& elems, Elem x) {
  ElementSet out(g.size());
  for (Elem e : elems) out.insert(g.conj(e, x));
  return out;
}

}  // namespace

SubgroupLattice::SubgroupLattice(const GroupElements& g, std::size_t bound, std::size_t max_subgroups) {
  if (g.size() > bound)
    throw Error(ErrorCode::GroupTooLarge, "group of order " + std::to_string(g.size()) +
                                              " exceeds the subgroup lattice bound " + std::to_string(bound));
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> class_of_subgroup;
  std::size_t total = 0;

  auto add_class = [&](ElementSet k, std::vector<Elem> gens) {
    SubgroupClass cls;
    cls.order = k.count();
    cls.generators = std::move(gens);
    cls.representative = k;
    const std::size_t id = classes_.size();
    class_of_subgroup.emplace(k, id);
    cls.members.push_back(std::move(k));
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
      auto elems = cls.members[i].elements();
      for (Elem s : g.generators()) {
        ElementSet c = conjugate_set(g, elems, s);
        if (class_of_subgroup.emplace(c, id).second) cls.members.push_back(std::move(c));
      }
    }
    cls.class_size = cls.members.size();
    total += cls.class_size;
    if (total > max_subgroups)
      throw Error(ErrorCode::GroupTooLarge, "more than " + std::to_string(max_subgroups) + " subgroups");
    classes_.push_back(std::move(cls));
  };

  ElementSet trivial(g.size());
  trivial.insert(GroupElements::kIdentity);
  add_class(trivial, {});

  for (std::size_t id = 0; id < classes_.size(); ++id) {
    // Copies: add_class may reallocate classes_.
    const ElementSet h = classes_[id].representative;
    const std::vector<Elem> h_gens = classes_[id].generators;
    const std::vector<Elem> h_elems = h.elements();
    const std::vector<Elem> n_gens = generating_subset(g, normalizer(g, h, h_gens));

    // <H, x> only depends on x up to H x^k (k prime to |x|), and the class
    // of <H, x> only up to conjugating x by N(H).
    ElementSet done = h;
    std::vector<Elem> stack;
    for (Elem x = 0; x < g.size(); ++x) {
      if (done.contains(x)) continue;
      ElementSet k = extend_subgroup(g, h, h_elems, h_gens, x);
      if (!class_of_subgroup.count(k)) {
        auto gens = h_gens;
        gens.push_back(x);
        add_class(std::move(k), std::move(gens));
      }
      const std::uint32_t ord = g.order(x);
      for (std::uint32_t e = 1; e < ord; ++e) {
        if (std::gcd(e, ord) != 1) continue;
        Elem y = g.pow(x, e);
        for (Elem a : h_elems) {
          Elem z = g.mul(a, y);
          if (done.insert(z)) stack.push_back(z);
        }
      }
      while (!stack.empty()) {
        Elem z = stack.back();
        stack.pop_back();
        for (Elem s : n_gens) {
          Elem w = g.conj(z, s);
          if (done.insert(w)) stack.push_back(w);
        }
      }
    }
  }

  std::sort(classes_.begin(), classes_.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.class_size != b.class_size) return a.class_size < b.class_size;
    return a.generators < b.generators;
  });

  // mu(H) = -sum over K > H of mu(K), grouped by conjugacy class of K.
  for (std::size_t c = classes_.size(); c-- > 0;) {
    auto& cls = classes_[c];
    if (cls.order == g.size()) {
      cls.mobius = 1;
      continue;
    }
    std::int64_t sum = 0;
    for (std::size_t d = c + 1; d < classes_.size(); ++d) {
      const auto& up = classes_[d];
      if (up.mobius == 0 || up.order == cls.order || up.order % cls.order != 0) continue;
      std::int64_t containing = 0;
      for (const auto& m : up.members) containing += cls.representative.is_subset_of(m);
      sum += up.mobius * containing;
    }
    cls.mobius = -sum;
  }
}

std::size_t SubgroupLattice::subgroup_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : classes_) n += c.class_size;
  return n;
}

BigInt epi_count(const GroupElements& g, const SubgroupLattice& lattice, const Signature& sig) {
  BigInt total = 0;
  for (const auto& cls : lattice.classes()) {
    if (cls.mobius == 0) continue;
    bool has_orders = true;
    for (auto n : sig.periods) {
      bool found = false;
      for (Elem x : cls.representative.elements())
        if (g.order(x) == n) {
          found = true;
          break;
        }
      if (!found) {
        has_orders = false;
        break;
      }
    }
    if (!has_orders) continue;
    GroupElements sub(to_perm_group(g, cls.representative));
    ClassAlgebra algebra(sub);
    total += BigInt(cls.mobius) * cls.class_size * hom_count(algebra, sig);
  }
  return total;
}

}  // namespace gsk
