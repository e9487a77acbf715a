#include <algorithm>
#include <cstdio>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "gsk/error.hpp"
#include "gsk/hash.hpp"
#include "gsk/gk.hpp"
#include "gsk/realizability.hpp"

namespace gsk {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Realized:
      return "realized";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Undecided:
      return "undecided";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Witnesses on permutations

WitnessCheck verify_witness(const PermGroup& group, const Signature& sig, const GeneratingVector& v) {
  WitnessCheck check;
  if (v.hyperbolic.size() != sig.h || v.elliptic.size() != sig.periods.size()) return check;
  std::vector<Permutation> all;
  for (const auto& [a, b] : v.hyperbolic) {
    all.push_back(a);
    all.push_back(b);
  }
  all.insert(all.end(), v.elliptic.begin(), v.elliptic.end());
  for (const auto& p : all)
    if (p.degree() != group.degree()) return check;

  Permutation product(group.degree());
  for (const auto& [a, b] : v.hyperbolic) product = product * commutator(a, b);
  for (const auto& c : v.elliptic) product = product * c;
  check.long_relation = product.is_identity();

  check.orders = true;
  for (std::size_t j = 0; j < v.elliptic.size(); ++j)
    if (v.elliptic[j].order() != sig.periods[j]) check.orders = false;

  try {
    check.generates = generates(group, all);
  } catch (const Error&) {
    check.generates = false;
  }
  return check;
}

namespace {

std::string witness_digest_text(const Signature& sig, const GeneratingVector& v) {
  std::string text = to_string(sig);
  auto add = [&](const Permutation& p) {
    text += '|';
    for (auto i : p.images()) {
      text += std::to_string(i);
      text += ',';
    }
  };
  for (const auto& [a, b] : v.hyperbolic) {
    add(a);
    add(b);
  }
  for (const auto& c : v.elliptic) add(c);
  return text;
}

Permutation permutation_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError(0, "permutation must be an array of images");
  std::vector<Point> images;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw ParseError(0, "permutation images must be non-negative integers");
    images.push_back(x.get<Point>());
  }
  return Permutation(std::move(images));
}

}  // namespace

nlohmann::json witness_to_json(const Signature& sig, const GeneratingVector& v) {
  nlohmann::json j;
  j["signature"] = to_string(sig);
  j["hyperbolic"] = nlohmann::json::array();
  for (const auto& [a, b] : v.hyperbolic)
    j["hyperbolic"].push_back({std::vector<Point>(a.images().begin(), a.images().end()),
                               std::vector<Point>(b.images().begin(), b.images().end())});
  j["elliptic"] = nlohmann::json::array();
  for (const auto& c : v.elliptic) j["elliptic"].push_back(std::vector<Point>(c.images().begin(), c.images().end()));
  j["verificationHash"] = hex64(fnv1a(witness_digest_text(sig, v)));
  return j;
}

std::pair<Signature, GeneratingVector> witness_from_json(const nlohmann::json& j) {
  try {
    Signature sig = parse_signature(j.at("signature").get<std::string>());
    GeneratingVector v;
    for (const auto& pair : j.at("hyperbolic")) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError(0, "hyperbolic entries must be pairs");
      v.hyperbolic.emplace_back(permutation_from_json(pair[0]), permutation_from_json(pair[1]));
    }
    for (const auto& c : j.at("elliptic")) v.elliptic.push_back(permutation_from_json(c));
    if (j.at("verificationHash").get<std::string>() != hex64(fnv1a(witness_digest_text(sig, v))))
      throw ParseError(0, "witness verification hash mismatch");
    return {std::move(sig), std::move(v)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed witness: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw ParseError(0, std::string("malformed witness: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Constructive search

namespace {

struct StateKey {
  std::uint32_t pos, product, subgroup, pending;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = k.pos;
    h = h * 0x9e3779b97f4a7c15ULL ^ k.product;
    h = h * 0x9e3779b97f4a7c15ULL ^ k.subgroup;
    h = h * 0x9e3779b97f4a7c15ULL ^ k.pending;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct OutOfBudget {};

template <class T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  // Own Fisher-Yates: std::shuffle differs between standard libraries.
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

/// Depth-first search over the slots a_1, b_1, ..., a_h, b_h, c_1, ..., c_r.
/// A state is (slot, partial product, subgroup generated so far); failed
/// states are remembered, and a state is entered only if the remaining
/// slots can still multiply to the inverse of the partial product.
class VectorSearch {
 public:
  VectorSearch(const ClassAlgebra& algebra, const Signature& sig, std::uint64_t budget, std::uint64_t seed)
      : g_(algebra.elements()), table_(algebra.table()), sig_(sig), budget_(budget) {
    for (std::uint64_t i = 0; i < sig.h; ++i) steps_.push_back(0);
    for (auto n : sig.periods) steps_.push_back(n);

    supports_.assign(steps_.size() + 1, std::vector<char>(table_.size(), 0));
    supports_.back()[0] = 1;
    for (std::size_t i = steps_.size(); i-- > 0;)
      supports_[i] = steps_[i] ? algebra.support_period(supports_[i + 1], steps_[i])
                               : algebra.support_commutator(supports_[i + 1]);

    std::mt19937_64 rng(seed ^ fnv1a(to_string(sig)));
    all_.resize(g_.size());
    for (Elem x = 0; x < g_.size(); ++x) all_[x] = x;
    shuffle_in_place(all_, rng);
    for (Elem x : all_) by_order_[g_.order(x)].push_back(x);
    for (std::size_t c = 0; c < table_.size(); ++c) class_reps_.push_back(table_.reps[c]);
    shuffle_in_place(class_reps_, rng);

    ElementSet trivial(g_.size());
    trivial.insert(GroupElements::kIdentity);
    intern(std::move(trivial), {});
  }

  SearchOutcome run() {
    SearchOutcome out;
    hyperbolic_.assign(2 * sig_.h, 0);
    elliptic_.assign(sig_.periods.size(), 0);
    try {
      if (visit(0, GroupElements::kIdentity, 0)) out.witness = ElemVector{hyperbolic_, elliptic_};
    } catch (const OutOfBudget&) {
      out.budget_exceeded = true;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  void tick() {
    if (++nodes_ > budget_) throw OutOfBudget{};
  }

  std::uint32_t intern(ElementSet set, std::vector<Elem> gens) {
    auto it = ids_.find(set);
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(sets_.size());
    elements_.push_back(set.elements());
    gens_.push_back(std::move(gens));
    ids_.emplace(set, id);
    sets_.push_back(std::move(set));
    return id;
  }

  std::uint32_t join(std::uint32_t h, Elem x) {
    if (sets_[h].contains(x)) return h;
    std::uint64_t key = (std::uint64_t{h} << 32) | x;
    auto it = joins_.find(key);
    if (it != joins_.end()) return it->second;
    ElementSet k = extend_subgroup(g_, sets_[h], elements_[h], gens_[h], x);
    auto gens = gens_[h];
    gens.push_back(x);
    std::uint32_t id = intern(std::move(k), std::move(gens));
    joins_.emplace(key, id);
    return id;
  }

  bool whole(std::uint32_t h) const { return sets_[h].count() == g_.size(); }

  bool feasible(std::size_t pos, Elem product) const {
    return supports_[pos][table_.class_of[g_.inv(product)]] != 0;
  }

  bool visit(std::size_t pos, Elem product, std::uint32_t h) {
    if (pos == steps_.size()) return product == GroupElements::kIdentity && whole(h);
    if (!feasible(pos, product)) return false;
    StateKey key{static_cast<std::uint32_t>(pos), product, h, 0};
    if (failed_.count(key)) return false;
    bool ok = steps_[pos] ? elliptic(pos, product, h) : hyperbolic(pos, product, h);
    if (!ok) failed_.insert(key);
    return ok;
  }

  bool elliptic(std::size_t pos, Elem product, std::uint32_t h) {
    const std::size_t j = pos - sig_.h;
    if (pos + 1 == steps_.size()) {
      tick();
      Elem c = g_.inv(product);
      if (!whole(join(h, c))) return false;
      elliptic_[j] = c;
      return true;
    }
    const auto& candidates = pos == 0 ? reps_of_order(steps_[pos]) : by_order_[steps_[pos]];
    for (Elem c : candidates) {
      tick();
      Elem next = g_.mul(product, c);
      if (!feasible(pos + 1, next)) continue;
      if (visit(pos + 1, next, join(h, c))) {
        elliptic_[j] = c;
        return true;
      }
    }
    return false;
  }

  bool hyperbolic(std::size_t pos, Elem product, std::uint32_t h) {
    const bool last = pos + 1 == steps_.size();
    const Elem need = g_.inv(product);
    const auto& first = pos == 0 ? class_reps_ : all_;
    for (Elem a : first) {
      tick();
      StateKey key{static_cast<std::uint32_t>(pos), product, h, a + 1};
      if (failed_.count(key)) continue;
      std::uint32_t ha = join(h, a);
      bool found = false;
      if (last) {
        // b^-1 a b = a * need
        Elem target = g_.mul(a, need);
        if (table_.class_of[target] != table_.class_of[a]) {
          failed_.insert(key);
          continue;
        }
        for (Elem b : all_) {
          tick();
          if (g_.conj(a, g_.inv(b)) != target) continue;
          if (whole(join(ha, b))) {
            hyperbolic_[2 * pos] = a;
            hyperbolic_[2 * pos + 1] = b;
            found = true;
            break;
          }
        }
      } else {
        for (Elem b : all_) {
          tick();
          Elem next = g_.mul(product, g_.commutator(a, b));
          if (!feasible(pos + 1, next)) continue;
          if (visit(pos + 1, next, join(ha, b))) {
            hyperbolic_[2 * pos] = a;
            hyperbolic_[2 * pos + 1] = b;
            found = true;
            break;
          }
        }
      }
      if (found) return true;
      failed_.insert(key);
    }
    return false;
  }

  const std::vector<Elem>& reps_of_order(std::uint64_t n) {
    auto it = reps_by_order_.find(n);
    if (it != reps_by_order_.end()) return it->second;
    auto& out = reps_by_order_[n];
    for (Elem r : class_reps_)
      if (g_.order(r) == n) out.push_back(r);
    return out;
  }

  const GroupElements& g_;
  const ClassTable& table_;
  const Signature& sig_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> steps_;  // 0 marks a hyperbolic pair
  std::vector<std::vector<char>> supports_;
  std::vector<Elem> all_;
  std::vector<Elem> class_reps_;
  std::unordered_map<std::uint64_t, std::vector<Elem>> by_order_;
  std::unordered_map<std::uint64_t, std::vector<Elem>> reps_by_order_;

  std::vector<ElementSet> sets_;
  std::vector<std::vector<Elem>> elements_;
  std::vector<std::vector<Elem>> gens_;
  std::unordered_map<ElementSet, std::uint32_t, ElementSetHash> ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> joins_;
  std::unordered_set<StateKey, StateKeyHash> failed_;

  std::vector<Elem> hyperbolic_;
  std::vector<Elem> elliptic_;
};

/// Reorders elliptic elements by period with Hurwitz moves
/// (c_i, c_{i+1}) -> (c_{i+1}, c_{i+1}^-1 c_i c_{i+1}); the product, the
/// orders and the generated subgroup are unchanged.
void sort_elliptic(const GroupElements& g, std::vector<Elem>& c) {
  for (std::size_t pass = 0; pass < c.size(); ++pass)
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (g.order(c[i]) > g.order(c[i + 1])) {
        Elem moved = g.conj(c[i], g.inv(c[i + 1]));
        c[i] = c[i + 1];
        c[i + 1] = moved;
      }
}

std::vector<std::uint64_t> without(std::vector<std::uint64_t> periods, std::initializer_list<std::uint64_t> drop) {
  for (auto n : drop) periods.erase(std::find(periods.begin(), periods.end(), n));
  return periods;
}

}  // namespace

// ---------------------------------------------------------------------------
// Realizer

Realizer::Realizer(PermGroup group, RealizerOptions options) : group_(std::move(group)), options_(options) {
  elements_ = std::make_unique<GroupElements>(group_, options_.enumeration_bound);
  algebra_ = std::make_unique<ClassAlgebra>(*elements_);
  increment_ = genus_increment(group_).value;
  instance_ = aec_instance(*elements_, increment_);
  for (Elem x = 0; x < elements_->size(); ++x)
    if (elements_->order(x) == elements_->size()) cyclic_ = true;
  build_factorizations();
}

void Realizer::build_factorizations() {
  const auto& g = *elements_;
  const auto& table = classes();
  factorizations_.resize(table.size());
  for (std::size_t t = 0; t < table.size(); ++t) {
    Elem z = table.reps[t];
    for (Elem x = 1; x < g.size(); ++x) {
      Elem y = g.mul(g.inv(x), z);
      if (y == GroupElements::kIdentity) continue;
      factorizations_[t].try_emplace({g.order(x), g.order(y)}, x, y);
    }
  }
}

const SubgroupLattice* Realizer::lattice() const {
  std::call_once(lattice_once_, [&] {
    if (elements_->size() > options_.lattice_bound) return;
    try {
      lattice_ = std::make_unique<SubgroupLattice>(*elements_, options_.lattice_bound);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GroupTooLarge) throw;
    }
  });
  return lattice_.get();
}

BigInt Realizer::hom_count(const Signature& sig) const { return gsk::hom_count(*algebra_, sig); }

BigInt Realizer::epi_count(const Signature& sig) const {
  const SubgroupLattice* lat = lattice();
  if (!lat) throw Error(ErrorCode::GroupTooLarge, "no subgroup lattice within the bound");
  BigInt total = 0;
  const auto& classes = lat->classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& cls = classes[i];
    if (cls.mobius == 0) continue;
    const ClassAlgebra* algebra = nullptr;
    if (cls.order == elements_->size()) {
      algebra = algebra_.get();
    } else {
      std::lock_guard lock(subalgebra_mutex_);
      auto& slot = subalgebras_[i];
      if (!slot.first) {
        slot.first = std::make_unique<GroupElements>(to_perm_group(*elements_, cls.representative));
        slot.second = std::make_unique<ClassAlgebra>(*slot.first);
      }
      algebra = slot.second.get();
    }
    total += BigInt(cls.mobius) * cls.class_size * gsk::hom_count(*algebra, sig);
  }
  return total;
}

SearchOutcome Realizer::find_generating_vector(const Signature& sig, std::uint64_t budget) const {
  for (auto n : sig.periods)
    if (!algebra_->has_element_order(n)) return {};
  if (sig.h == 0 && sig.periods.empty()) {
    SearchOutcome out;
    if (elements_->size() == 1) out.witness = ElemVector{};
    return out;
  }
  VectorSearch search(*algebra_, sig, budget, options_.seed);
  return search.run();
}

std::optional<std::uint64_t> Realizer::reduced_genus(const Signature& sig) const {
  try {
    std::uint64_t g = genus_of_signature(sig, elements_->size());
    if (g < 1 || (g - 1) % increment_ != 0) return std::nullopt;
    return (g - 1) / increment_;
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool Realizer::check(const Signature& sig, const ElemVector& v) const {
  const auto& g = *elements_;
  if (v.hyperbolic.size() != 2 * sig.h || v.elliptic.size() != sig.periods.size()) return false;
  Elem product = GroupElements::kIdentity;
  for (std::size_t i = 0; i < sig.h; ++i)
    product = g.mul(product, g.commutator(v.hyperbolic[2 * i], v.hyperbolic[2 * i + 1]));
  for (std::size_t j = 0; j < v.elliptic.size(); ++j) {
    if (g.order(v.elliptic[j]) != sig.periods[j]) return false;
    product = g.mul(product, v.elliptic[j]);
  }
  if (product != GroupElements::kIdentity) return false;
  std::vector<Elem> all = v.hyperbolic;
  all.insert(all.end(), v.elliptic.begin(), v.elliptic.end());
  return subgroup_closure(g, all).count() == g.size();
}

GeneratingVector Realizer::to_permutations(const ElemVector& v) const {
  GeneratingVector out;
  for (std::size_t i = 0; i + 1 < v.hyperbolic.size(); i += 2)
    out.hyperbolic.emplace_back(elements_->permutation(v.hyperbolic[i]), elements_->permutation(v.hyperbolic[i + 1]));
  for (Elem c : v.elliptic) out.elliptic.push_back(elements_->permutation(c));
  return out;
}

ElemVector Realizer::from_permutations(const GeneratingVector& v) const {
  ElemVector out;
  for (const auto& [a, b] : v.hyperbolic) {
    out.hyperbolic.push_back(elements_->index_of(a));
    out.hyperbolic.push_back(elements_->index_of(b));
  }
  for (const auto& c : v.elliptic) out.elliptic.push_back(elements_->index_of(c));
  return out;
}

void Realizer::record_realized(const Signature& sig, ElemVector witness) {
  std::unique_lock lock(realized_mutex_);
  realized_.insert_or_assign(sig, std::move(witness));
}

void Realizer::record_refuted(const Signature& sig) {
  std::unique_lock lock(realized_mutex_);
  refuted_.insert(sig);
}

bool Realizer::is_refuted(const Signature& sig) const {
  std::shared_lock lock(realized_mutex_);
  return refuted_.count(sig) > 0;
}

std::optional<ElemVector> Realizer::realized_witness(const Signature& sig) const {
  std::shared_lock lock(realized_mutex_);
  auto it = realized_.find(sig);
  if (it == realized_.end()) return std::nullopt;
  return it->second;
}

std::map<Signature, ElemVector> Realizer::realized() const {
  std::shared_lock lock(realized_mutex_);
  return realized_;
}

std::set<Signature> Realizer::refuted() const {
  std::shared_lock lock(realized_mutex_);
  return refuted_;
}

std::optional<ElemVector> Realizer::derive(const Signature& sig) const {
  const auto& g = *elements_;
  const auto& table = classes();

  // Appended trivial hyperbolic pair.
  if (sig.h > 0) {
    if (auto parent = realized_witness(Signature(sig.h - 1, sig.periods))) {
      parent->hyperbolic.push_back(GroupElements::kIdentity);
      parent->hyperbolic.push_back(GroupElements::kIdentity);
      return parent;
    }
  }

  // Appended u, u^-1.
  for (std::size_t i = 0; i + 1 < sig.periods.size(); ++i) {
    const auto n = sig.periods[i];
    if (sig.periods[i + 1] != n || (i > 0 && sig.periods[i - 1] == n)) continue;
    if (auto parent = realized_witness(Signature(sig.h, without(sig.periods, {n, n})))) {
      Elem u = GroupElements::kIdentity;
      for (Elem x = 1; x < g.size(); ++x)
        if (g.order(x) == n) {
          u = x;
          break;
        }
      parent->elliptic.push_back(u);
      parent->elliptic.push_back(g.inv(u));
      sort_elliptic(g, parent->elliptic);
      return parent;
    }
  }

  // c = x y split inside a parent witness.
  for (std::size_t i = 0; i < sig.periods.size(); ++i) {
    for (std::size_t j = i + 1; j < sig.periods.size(); ++j) {
      const auto n1 = sig.periods[i], n2 = sig.periods[j];
      if (i > 0 && sig.periods[i - 1] == n1) continue;
      if (j > i + 1 && sig.periods[j - 1] == n2) continue;
      auto rest = without(sig.periods, {n1, n2});
      for (auto n : instance_.periods) {
        auto periods = rest;
        periods.push_back(n);
        Signature parent_sig(sig.h, periods);
        auto parent = realized_witness(parent_sig);
        if (!parent) continue;
        for (std::size_t k = 0; k < parent->elliptic.size(); ++k) {
          Elem c = parent->elliptic[k];
          if (g.order(c) != n) continue;
          auto t = table.class_of[c];
          auto it = factorizations_[t].find({n1, n2});
          if (it == factorizations_[t].end()) continue;
          Elem tau = table.conjugator[c];
          auto& e = parent->elliptic;
          e[k] = g.conj(it->second.first, tau);
          e.insert(e.begin() + static_cast<std::ptrdiff_t>(k) + 1, g.conj(it->second.second, tau));
          sort_elliptic(g, e);
          return parent;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Decision> Realizer::structural(const Signature& sig) const {
  const auto& g = *elements_;
  for (auto n : sig.periods)
    if (!algebra_->has_element_order(n)) return Decision{Verdict::Refuted, std::nullopt, "structure"};
  if (sig.h > 0) return std::nullopt;
  const std::size_t r = sig.periods.size();
  if (r == 0) {
    if (g.size() == 1) return Decision{Verdict::Realized, ElemVector{}, "structure"};
    return Decision{Verdict::Refuted, std::nullopt, "structure"};
  }
  if (r == 1) return Decision{Verdict::Refuted, std::nullopt, "structure"};
  if (r == 2) {
    // c_2 = c_1^-1, so <c_1, c_2> is cyclic of order n_1.
    if (sig.periods[0] != sig.periods[1] || !cyclic_ || g.size() != sig.periods[0])
      return Decision{Verdict::Refuted, std::nullopt, "structure"};
    for (Elem x = 1; x < g.size(); ++x)
      if (g.order(x) == g.size()) return Decision{Verdict::Realized, ElemVector{{}, {x, g.inv(x)}}, "structure"};
  }
  return std::nullopt;
}

Decision Realizer::quick_decide(const Signature& sig) {
  if (auto w = realized_witness(sig)) return {Verdict::Realized, std::move(w), "cache"};
  if (is_refuted(sig)) return {Verdict::Refuted, std::nullopt, "cache"};
  if (auto d = structural(sig)) {
    if (d->verdict == Verdict::Realized && d->witness) record_realized(sig, *d->witness);
    if (d->verdict == Verdict::Refuted) record_refuted(sig);
    return std::move(*d);
  }
  if (auto w = derive(sig)) {
    record_realized(sig, *w);
    return {Verdict::Realized, std::move(w), "extension"};
  }
  return {Verdict::Undecided, std::nullopt, "bounds"};
}

Decision Realizer::is_datum(const Signature& sig) {
  if (auto w = realized_witness(sig)) return {Verdict::Realized, std::move(w), "cache"};
  if (is_refuted(sig)) return {Verdict::Refuted, std::nullopt, "cache"};

  auto finish = [&](Decision d) {
    if (d.verdict == Verdict::Realized && d.witness) record_realized(sig, *d.witness);
    if (d.verdict == Verdict::Refuted) record_refuted(sig);
    return d;
  };

  if (auto d = structural(sig)) return finish(std::move(*d));
  if (auto w = derive(sig)) return finish({Verdict::Realized, std::move(w), "extension"});

  auto quick = find_generating_vector(sig, options_.quick_budget);
  if (quick.witness) return finish({Verdict::Realized, std::move(quick.witness), "search"});
  // An exhausted search is not used as a refutation; only counting refutes.
  if (lattice()) {
    if (epi_count(sig).is_zero()) return finish({Verdict::Refuted, std::nullopt, "count"});
    auto full = find_generating_vector(sig, options_.search_budget);
    return finish({Verdict::Realized, std::move(full.witness), "count"});
  }
  auto full = find_generating_vector(sig, options_.search_budget);
  if (full.witness) return finish({Verdict::Realized, std::move(full.witness), "search"});
  return {Verdict::Undecided, std::nullopt, "bounds"};
}

void Realizer::extension_closure(std::uint64_t max_reduced_genus) {
  const auto& g = *elements_;
  const auto& table = classes();
  auto snapshot = realized();
  std::vector<std::pair<Signature, ElemVector>> work(snapshot.begin(), snapshot.end());
  auto offer = [&](Signature sig, ElemVector v) {
    auto gt = reduced_genus(sig);
    if (!gt || *gt > max_reduced_genus || realized_witness(sig)) return;
    sort_elliptic(g, v.elliptic);
    record_realized(sig, v);
    work.emplace_back(std::move(sig), std::move(v));
  };
  while (!work.empty()) {
    auto [sig, v] = std::move(work.back());
    work.pop_back();
    {
      ElemVector w = v;
      w.hyperbolic.push_back(GroupElements::kIdentity);
      w.hyperbolic.push_back(GroupElements::kIdentity);
      offer(Signature(sig.h + 1, sig.periods), std::move(w));
    }
    for (auto n : instance_.periods) {
      Elem u = GroupElements::kIdentity;
      for (Elem x = 1; x < g.size(); ++x)
        if (g.order(x) == n) {
          u = x;
          break;
        }
      ElemVector w = v;
      w.elliptic.push_back(u);
      w.elliptic.push_back(g.inv(u));
      auto periods = sig.periods;
      periods.push_back(n);
      periods.push_back(n);
      offer(Signature(sig.h, periods), std::move(w));
    }
    for (std::size_t k = 0; k < v.elliptic.size(); ++k) {
      Elem c = v.elliptic[k];
      Elem tau = table.conjugator[c];
      for (const auto& [orders, xy] : factorizations_[table.class_of[c]]) {
        ElemVector w = v;
        w.elliptic[k] = g.conj(xy.first, tau);
        w.elliptic.insert(w.elliptic.begin() + static_cast<std::ptrdiff_t>(k) + 1, g.conj(xy.second, tau));
        auto periods = sig.periods;
        periods.erase(periods.begin() + static_cast<std::ptrdiff_t>(k));
        periods.push_back(orders.first);
        periods.push_back(orders.second);
        offer(Signature(sig.h, periods), std::move(w));
      }
    }
  }
}

}  // namespace gsk
