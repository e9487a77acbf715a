#include "gsk/perm_group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "gsk/error.hpp"

namespace gsk {

namespace {

std::uint64_t prime_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

std::string class_letters(std::size_t index) {
  std::string letters;
  ++index;
  while (index > 0) {
    --index;
    letters.insert(letters.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return letters;
}

}  // namespace

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.degree() != degree_)
      throw Error(ErrorCode::InvalidArgument, "generator degree does not match group degree");
  build_chain();
}

PermGroup::SiftResult PermGroup::sift(Permutation g, std::size_t from_level) const {
  for (std::size_t k = from_level; k < levels_.size(); ++k) {
    const StabLevel& level = levels_[k];
    std::int32_t pos = level.orbit_position[g(level.base)];
    if (pos < 0) return {std::move(g), k};
    g = level.transversal_inverse[static_cast<std::size_t>(pos)] * g;
  }
  return {std::move(g), levels_.size()};
}

void PermGroup::extend_orbit(StabLevel& level) const {
  for (std::size_t idx = 0; idx < level.orbit.size(); ++idx) {
    for (const auto& s : level.generators) {
      Point image = s(level.orbit[idx]);
      if (level.orbit_position[image] >= 0) continue;
      level.orbit_position[image] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(image);
      Permutation u = s * level.transversal[idx];
      level.transversal_inverse.push_back(u.inverse());
      level.transversal.push_back(std::move(u));
    }
  }
}

void PermGroup::build_chain() {
  auto new_level = [this](Point base) {
    StabLevel level;
    level.base = base;
    level.orbit = {base};
    level.orbit_position.assign(degree_, -1);
    level.orbit_position[base] = 0;
    level.transversal = {Permutation(degree_)};
    level.transversal_inverse = {Permutation(degree_)};
    levels_.push_back(std::move(level));
  };

  for (const auto& g : generators_) {
    if (g.is_identity()) continue;
    if (levels_.empty()) new_level(g.first_moved_point());
    levels_[0].generators.push_back(g);
  }

  // Deterministic Schreier-Sims: every Schreier generator of every level must
  // sift to the identity through the levels below it. A failing residue is
  // added to all levels it belongs to and the check restarts.
  bool changed = !levels_.empty();
  while (changed) {
    changed = false;
    for (std::size_t i = levels_.size(); i-- > 0 && !changed;) {
      extend_orbit(levels_[i]);
      const StabLevel& level = levels_[i];
      for (std::size_t j = 0; j < level.orbit.size() && !changed; ++j) {
        for (std::size_t s = 0; s < level.generators.size(); ++s) {
          const Permutation& gen = level.generators[s];
          auto pos = static_cast<std::size_t>(level.orbit_position[gen(level.orbit[j])]);
          Permutation schreier = level.transversal_inverse[pos] * gen * level.transversal[j];
          SiftResult r = sift(std::move(schreier), i + 1);
          if (r.residue.is_identity()) continue;
          if (r.level == levels_.size()) new_level(r.residue.first_moved_point());
          for (std::size_t l = i + 1; l <= r.level; ++l) levels_[l].generators.push_back(r.residue);
          changed = true;
          break;
        }
      }
    }
  }

  order_ = 1;
  for (const auto& level : levels_) order_ *= level.orbit.size();
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return sift(g, 0).residue.is_identity();
}

std::uint64_t element_order(const Permutation& g) { return g.order(); }

std::uint64_t group_order(const PermGroup& group) { return group.order(); }

// ---------------------------------------------------------------------------
// GroupElements

GroupElements::GroupElements(PermGroup group, std::size_t bound)
    : group_(std::move(group)), degree_(group_.degree()) {
  if (group_.order() > bound)
    throw Error(ErrorCode::GroupTooLarge, "group order " + std::to_string(group_.order()) +
                                              " exceeds the enumeration bound " +
                                              std::to_string(bound));
  size_ = group_.order();
  auto chain = group_.chain();
  const std::size_t m = chain.size();
  base_.resize(m);
  strides_.assign(m, 1);
  positions_.resize(m);
  transversal_inverse_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    base_[k] = chain[k].base;
    positions_[k] = chain[k].orbit_position;
    auto& flat = transversal_inverse_[k];
    flat.reserve(chain[k].orbit.size() * degree_);
    for (const auto& u : chain[k].transversal_inverse)
      flat.insert(flat.end(), u.images().begin(), u.images().end());
  }
  for (std::size_t k = m; k-- > 1;) strides_[k - 1] = strides_[k] * chain[k].orbit.size();

  // element(index) = u_0[j_0] * u_1[j_1] * ... * u_{m-1}[j_{m-1}]
  std::vector<Point> current(degree_);
  std::iota(current.begin(), current.end(), Point{0});
  std::size_t count = 1;
  for (std::size_t k = m; k-- > 0;) {
    const auto& level = chain[k];
    std::vector<Point> next(level.orbit.size() * count * degree_);
    for (std::size_t j = 0; j < level.orbit.size(); ++j) {
      auto u = level.transversal[j].images();
      for (std::size_t e = 0; e < count; ++e) {
        const Point* src = current.data() + e * degree_;
        Point* dst = next.data() + (j * count + e) * degree_;
        for (std::size_t i = 0; i < degree_; ++i) dst[i] = u[src[i]];
      }
    }
    count *= level.orbit.size();
    current = std::move(next);
  }
  data_ = std::move(current);

  inverse_.resize(size_);
  orders_.resize(size_);
  std::vector<Point> inv(degree_);
  std::vector<Point> img(m);
  std::vector<bool> seen(degree_);
  for (std::size_t e = 0; e < size_; ++e) {
    auto im = images(static_cast<Elem>(e));
    for (std::size_t i = 0; i < degree_; ++i) inv[im[i]] = static_cast<Point>(i);
    for (std::size_t k = 0; k < m; ++k) img[k] = inv[base_[k]];
    inverse_[e] = *index_from_base_images(img);

    std::fill(seen.begin(), seen.end(), false);
    std::uint64_t order = 1;
    for (std::size_t start = 0; start < degree_; ++start) {
      if (seen[start]) continue;
      std::uint64_t length = 0;
      for (Point p = static_cast<Point>(start); !seen[p]; p = im[p]) {
        seen[p] = true;
        ++length;
      }
      order = std::lcm(order, length);
    }
    orders_[e] = static_cast<std::uint32_t>(order);
  }

  for (const auto& g : group_.generators())
    if (!g.is_identity()) generators_.push_back(index_of(g));
}

std::optional<Elem> GroupElements::index_from_base_images(std::vector<Point>& img) const {
  std::size_t index = 0;
  const std::size_t m = base_.size();
  for (std::size_t k = 0; k < m; ++k) {
    std::int32_t pos = positions_[k][img[k]];
    if (pos < 0) return std::nullopt;
    index += static_cast<std::size_t>(pos) * strides_[k];
    const Point* u = transversal_inverse_[k].data() + static_cast<std::size_t>(pos) * degree_;
    for (std::size_t l = k + 1; l < m; ++l) img[l] = u[img[l]];
  }
  return static_cast<Elem>(index);
}

Permutation GroupElements::permutation(Elem e) const {
  auto im = images(e);
  return Permutation(std::vector<Point>(im.begin(), im.end()));
}

std::optional<Elem> GroupElements::find(const Permutation& p) const {
  if (p.degree() != degree_) return std::nullopt;
  std::vector<Point> img(base_.size());
  for (std::size_t k = 0; k < base_.size(); ++k) img[k] = p(base_[k]);
  auto index = index_from_base_images(img);
  if (!index) return std::nullopt;
  auto im = images(*index);
  if (!std::equal(im.begin(), im.end(), p.images().begin())) return std::nullopt;
  return index;
}

Elem GroupElements::index_of(const Permutation& p) const {
  auto index = find(p);
  if (!index) throw Error(ErrorCode::ElementNotInGroup, "permutation " + p.to_cycle_string() +
                                                            " is not an element of the group");
  return *index;
}

Elem GroupElements::mul(Elem a, Elem b) const {
  const Point* pa = data_.data() + static_cast<std::size_t>(a) * degree_;
  const Point* pb = data_.data() + static_cast<std::size_t>(b) * degree_;
  const std::size_t m = base_.size();
  Point img[64];
  std::vector<Point> heap;
  Point* buffer = img;
  if (m > 64) {
    heap.resize(m);
    buffer = heap.data();
  }
  for (std::size_t k = 0; k < m; ++k) buffer[k] = pa[pb[base_[k]]];
  std::size_t index = 0;
  for (std::size_t k = 0; k < m; ++k) {
    auto pos = static_cast<std::size_t>(positions_[k][buffer[k]]);
    index += pos * strides_[k];
    const Point* u = transversal_inverse_[k].data() + pos * degree_;
    for (std::size_t l = k + 1; l < m; ++l) buffer[l] = u[buffer[l]];
  }
  return static_cast<Elem>(index);
}

Elem GroupElements::pow(Elem a, long long exponent) const {
  Elem base = exponent < 0 ? inverse_[a] : a;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                      : static_cast<unsigned long long>(exponent);
  e %= orders_[a];
  Elem result = kIdentity;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

// ---------------------------------------------------------------------------
// ElementSet and subgroup helpers

bool ElementSet::is_subset_of(const ElementSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<Elem> ElementSet::elements() const {
  std::vector<Elem> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

ElementSet subgroup_closure(const GroupElements& g, std::span<const Elem> generators) {
  ElementSet set(g.size());
  set.insert(GroupElements::kIdentity);
  std::vector<Elem> queue = {GroupElements::kIdentity};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Elem s : generators) {
      Elem y = g.mul(queue[i], s);
      if (set.insert(y)) queue.push_back(y);
    }
  }
  return set;
}

ElementSet extend_subgroup(const GroupElements& g, const ElementSet& subgroup,
                           std::span<const Elem> subgroup_elements,
                           std::span<const Elem> subgroup_generators, Elem extra) {
  ElementSet result = subgroup;
  if (subgroup.contains(extra)) return result;
  // Left cosets tH, explored by left multiplication with the generators.
  std::vector<Elem> reps = {GroupElements::kIdentity};
  auto visit = [&](Elem s, Elem t) {
    Elem y = g.mul(s, t);
    if (result.contains(y)) return;
    for (Elem h : subgroup_elements) result.insert(g.mul(y, h));
    reps.push_back(y);
  };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    Elem t = reps[i];
    visit(extra, t);
    for (Elem s : subgroup_generators) visit(s, t);
  }
  return result;
}

ElementSet normalizer(const GroupElements& g, const ElementSet& subgroup,
                      std::span<const Elem> subgroup_generators) {
  ElementSet result(g.size());
  for (Elem x = 0; x < g.size(); ++x) {
    bool normalizes = true;
    for (Elem s : subgroup_generators) {
      if (!subgroup.contains(g.conj(s, x))) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) result.insert(x);
  }
  return result;
}

std::vector<Elem> generating_subset(const GroupElements& g, const ElementSet& subgroup) {
  std::vector<Elem> gens;
  ElementSet current = subgroup_closure(g, gens);
  std::vector<Elem> current_elements = {GroupElements::kIdentity};
  for (Elem x : subgroup.elements()) {
    if (current.count() == subgroup.count()) break;
    if (current.contains(x)) continue;
    current = extend_subgroup(g, current, current_elements, gens, x);
    gens.push_back(x);
    current_elements = current.elements();
  }
  return gens;
}

PermGroup to_perm_group(const GroupElements& g, const ElementSet& subgroup) {
  std::vector<Permutation> gens;
  for (Elem e : generating_subset(g, subgroup)) gens.push_back(g.permutation(e));
  return PermGroup(g.degree(), std::move(gens));
}

ElementSet element_set(const GroupElements& g, const PermGroup& subgroup) {
  std::vector<Elem> gens;
  for (const auto& s : subgroup.generators()) gens.push_back(g.index_of(s));
  return subgroup_closure(g, gens);
}

// ---------------------------------------------------------------------------
// Conjugacy classes

std::optional<std::size_t> ClassTable::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

ClassTable conjugacy_classes(const GroupElements& g) {
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  const std::size_t n = g.size();
  std::vector<std::uint32_t> raw_class(n, kUnset);
  std::vector<Elem> raw_conj(n, GroupElements::kIdentity);
  std::vector<Elem> raw_rep;
  std::vector<std::uint64_t> raw_size;
  std::vector<Elem> queue;
  for (Elem x = 0; x < n; ++x) {
    if (raw_class[x] != kUnset) continue;
    auto c = static_cast<std::uint32_t>(raw_rep.size());
    raw_rep.push_back(x);
    raw_class[x] = c;
    queue.assign(1, x);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Elem y = queue[i];
      for (Elem s : g.generators()) {
        Elem z = g.conj(y, s);
        if (raw_class[z] != kUnset) continue;
        raw_class[z] = c;
        raw_conj[z] = g.mul(s, raw_conj[y]);
        queue.push_back(z);
      }
    }
    raw_size.push_back(queue.size());
  }

  const std::size_t k = raw_rep.size();
  std::vector<Elem> smallest = raw_rep;
  for (Elem x = 0; x < n; ++x) {
    Elem& best = smallest[raw_class[x]];
    auto a = g.images(x), b = g.images(best);
    if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) best = x;
  }

  std::vector<std::uint32_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (g.order(raw_rep[a]) != g.order(raw_rep[b])) return g.order(raw_rep[a]) < g.order(raw_rep[b]);
    if (raw_size[a] != raw_size[b]) return raw_size[a] < raw_size[b];
    auto x = g.images(smallest[a]), y = g.images(smallest[b]);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  std::vector<std::uint32_t> new_index(k);
  for (std::uint32_t i = 0; i < k; ++i) new_index[perm[i]] = i;

  ClassTable table;
  table.reps.resize(k);
  table.sizes.resize(k);
  table.element_orders.resize(k);
  table.centralizer_orders.resize(k);
  table.labels.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint32_t old = perm[i];
    table.reps[i] = smallest[old];
    table.sizes[i] = raw_size[old];
    table.element_orders[i] = g.order(raw_rep[old]);
    table.centralizer_orders[i] = n / raw_size[old];
  }
  // Re-anchor conjugators at the new representatives.
  std::vector<Elem> rep_conj_inverse(k);
  for (std::uint32_t old = 0; old < k; ++old) rep_conj_inverse[old] = g.inv(raw_conj[smallest[old]]);
  table.class_of.resize(n);
  table.conjugator.resize(n);
  for (Elem x = 0; x < n; ++x) {
    table.class_of[x] = new_index[raw_class[x]];
    table.conjugator[x] = g.mul(raw_conj[x], rep_conj_inverse[raw_class[x]]);
  }
  table.inverse_class.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) table.inverse_class[i] = table.class_of[g.inv(table.reps[i])];

  std::size_t run = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (i > 0 && table.element_orders[i] != table.element_orders[i - 1]) run = 0;
    table.labels[i] = std::to_string(table.element_orders[i]) + class_letters(run++);
  }
  return table;
}

std::size_t class_of(const ClassTable& table, const GroupElements& g, const Permutation& x) {
  return table.class_of[g.index_of(x)];
}

// ---------------------------------------------------------------------------
// Subgroups

bool generates(const PermGroup& group, std::span<const Permutation> elements) {
  for (const auto& x : elements)
    if (!group.contains(x))
      throw Error(ErrorCode::ElementNotInGroup, "permutation " + x.to_cycle_string() +
                                                    " is not an element of the group");
  PermGroup sub(group.degree(), std::vector<Permutation>(elements.begin(), elements.end()));
  return sub.order() == group.order();
}

PermGroup center(const GroupElements& g) {
  ElementSet z(g.size());
  for (Elem x = 0; x < g.size(); ++x) {
    bool central = true;
    for (Elem s : g.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central) z.insert(x);
  }
  return to_perm_group(g, z);
}

PermGroup derived_subgroup(const GroupElements& g) {
  // Normal closure of the commutators of the generators.
  std::vector<Elem> gens;
  for (Elem a : g.generators())
    for (Elem b : g.generators()) {
      Elem c = g.commutator(a, b);
      if (c != GroupElements::kIdentity) gens.push_back(c);
    }
  ElementSet d = subgroup_closure(g, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> elems = d.elements();
    for (std::size_t i = 0; i < gens.size() && !grew; ++i) {
      for (Elem s : g.generators()) {
        Elem c = g.conj(gens[i], s);
        if (d.contains(c)) continue;
        d = extend_subgroup(g, d, elems, gens, c);
        gens.push_back(c);
        grew = true;
        break;
      }
    }
  }
  return to_perm_group(g, d);
}

std::uint64_t exponent(const GroupElements& g) {
  std::uint64_t e = 1;
  for (Elem x = 0; x < g.size(); ++x) e = std::lcm(e, std::uint64_t{g.order(x)});
  return e;
}

PermGroup sylow_subgroup(const GroupElements& g, std::uint64_t p) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "sylow_subgroup needs a prime");
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  const std::uint64_t target = prime_part(g.size(), p);
  if (target == 1) return PermGroup::trivial(g.degree());

  auto is_p_power = [p](std::uint64_t n) { return prime_part(n, p) == n; };
  Elem start = GroupElements::kIdentity;
  for (Elem x = 1; x < g.size(); ++x)
    if (is_p_power(g.order(x))) {
      start = x;
      break;
    }
  std::vector<Elem> gens = {start};
  ElementSet sub = subgroup_closure(g, gens);
  while (sub.count() < target) {
    ElementSet n = normalizer(g, sub, gens);
    bool extended = false;
    for (Elem y : n.elements()) {
      if (sub.contains(y) || !sub.contains(g.pow(y, static_cast<long long>(p)))) continue;
      sub = extend_subgroup(g, sub, sub.elements(), gens, y);
      gens.push_back(y);
      extended = true;
      break;
    }
    if (!extended) throw std::logic_error("sylow growth stalled");
  }
  return to_perm_group(g, sub);
}

PermGroup center(const PermGroup& group) { return center(GroupElements(group)); }
PermGroup derived_subgroup(const PermGroup& group) { return derived_subgroup(GroupElements(group)); }
std::uint64_t exponent(const PermGroup& group) { return exponent(GroupElements(group)); }
PermGroup sylow_subgroup(const PermGroup& group, std::uint64_t p) {
  return sylow_subgroup(GroupElements(group), p);
}

}  // namespace gsk
