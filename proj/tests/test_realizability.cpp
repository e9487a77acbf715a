#include <doctest.h>

#include <set>

#include "gsk/error.hpp"
#include "gsk/group_spec.hpp"
#include "gsk/realizability.hpp"

using namespace gsk;

namespace {

// Tuples (a_1, b_1, ..., c_1, ..., c_r) satisfying the long relation, by
// exhaustive enumeration; optionally only generating ones.
std::uint64_t brute_count(const GroupElements& g, const Signature& sig, bool generating) {
  const std::size_t slots = 2 * sig.h + sig.periods.size();
  std::vector<Elem> t(slots, 0);
  std::uint64_t count = 0;
  auto admissible = [&](std::size_t i, Elem x) {
    return i < 2 * sig.h || g.order(x) == sig.periods[i - 2 * sig.h];
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots) {
      Elem p = GroupElements::kIdentity;
      for (std::size_t k = 0; k < sig.h; ++k) p = g.mul(p, g.commutator(t[2 * k], t[2 * k + 1]));
      for (std::size_t k = 2 * sig.h; k < slots; ++k) p = g.mul(p, t[k]);
      if (p != GroupElements::kIdentity) return;
      if (generating && subgroup_closure(g, t).count() != g.size()) return;
      ++count;
      return;
    }
    for (Elem x = 0; x < g.size(); ++x)
      if (admissible(i, x)) {
        t[i] = x;
        rec(i + 1);
      }
  };
  rec(0);
  return count;
}

// All subgroups generated by at most two elements; enough for S4 and D8.
std::set<std::vector<Elem>> two_generated_subgroups(const GroupElements& g) {
  std::set<std::vector<Elem>> out;
  for (Elem a = 0; a < g.size(); ++a)
    for (Elem b = a; b < g.size(); ++b) {
      std::vector<Elem> gens = {a, b};
      out.insert(subgroup_closure(g, gens).elements());
    }
  return out;
}

std::size_t count_conjugacy_classes_of_subgroups(const GroupElements& g, const std::set<std::vector<Elem>>& subs) {
  std::set<std::vector<Elem>> seen;
  std::size_t classes = 0;
  for (const auto& h : subs) {
    if (seen.count(h)) continue;
    ++classes;
    for (Elem x = 0; x < g.size(); ++x) {
      std::vector<Elem> c;
      for (Elem e : h) c.push_back(g.conj(e, x));
      std::sort(c.begin(), c.end());
      seen.insert(c);
    }
  }
  return classes;
}

}  // namespace

TEST_CASE("class multiplication coefficients") {
  GroupElements psl(build_group("psl2:7"));
  auto t = conjugacy_classes(psl);
  auto c3 = *t.find_label("3A"), c4 = *t.find_label("4A");
  CHECK(class_mult_coefficient(psl, t, c3, c4, c4) == 672);

  GroupElements s4(build_group("sym:4"));
  auto u = conjugacy_classes(s4);
  {
    // Triples (x, y, z) with xyz = 1 counted over the whole group.
    auto r = *u.find_label("3A"), s = *u.find_label("4A");
    std::uint64_t triples = 0;
    for (Elem x = 0; x < s4.size(); ++x)
      for (Elem y = 0; y < s4.size(); ++y)
        if (u.class_of[x] == r && u.class_of[y] == s && u.class_of[s4.inv(s4.mul(x, y))] == s) ++triples;
    CHECK(class_mult_coefficient(s4, u, r, s, s) == triples);
    CHECK(triples == 24);
  }

  ClassAlgebra algebra(s4);
  for (std::size_t r = 0; r < u.size(); ++r)
    for (std::size_t s = 0; s < u.size(); ++s)
      for (std::size_t q = 0; q < u.size(); ++q) {
        auto c = class_mult_coefficient(s4, u, r, s, q);
        CHECK(c == class_mult_coefficient(algebra, r, s, q));
        CHECK(c == class_mult_coefficient(s4, u, s, q, r));
      }
  for (std::size_t c = 0; c < u.size(); ++c)
    for (std::size_t d = 0; d < u.size(); ++d)
      CHECK(class_mult_coefficient(s4, u, 0, c, d) == (u.inverse_class[c] == d ? u.sizes[c] : 0));
  CHECK_THROWS_AS(class_mult_coefficient(s4, u, 0, 0, 9), Error);
}

TEST_CASE("commutator distribution") {
  GroupElements s3(build_group("sym:3"));
  auto t = conjugacy_classes(s3);
  auto n = commutator_distribution(s3, t);
  CHECK(n[0] == 18);
  std::vector<std::uint64_t> brute(t.size(), 0);
  for (Elem a = 0; a < s3.size(); ++a)
    for (Elem b = 0; b < s3.size(); ++b) ++brute[t.class_of[s3.commutator(a, b)]];
  for (std::size_t c = 0; c < t.size(); ++c) CHECK(brute[c] == n[c] * t.sizes[c]);

  GroupElements ab(build_group("abelian:2,3"));
  auto ta = conjugacy_classes(ab);
  auto na = commutator_distribution(ab, ta);
  CHECK(na[0] == 36);
  for (std::size_t c = 1; c < ta.size(); ++c) CHECK(na[c] == 0);

  GroupElements m11(build_group("M11"));
  ClassAlgebra alg(m11);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < alg.size(); ++c) total += alg.commutator_counts()[c] * alg.table().sizes[c];
  CHECK(total == 7920ull * 7920ull);
}

TEST_CASE("hom counts against brute force") {
  for (const char* text : {"sym:3", "dihedral2:2", "quaternion2:2", "abelian:2,2"}) {
    GroupElements g(build_group(text));
    ClassAlgebra alg(g);
    for (const char* s : {"0;2,2", "0;2,2,2", "0;2,3,3", "0;2,4,4", "1;", "1;2", "0;2,2,2,2", "1;3", "0;3,3,3"}) {
      CAPTURE(text);
      CAPTURE(s);
      auto sig = parse_signature(s);
      CHECK(hom_count(alg, sig) == brute_count(g, sig, false));
    }
    CHECK(hom_count(alg, parse_signature("1;")) == alg.size() * g.size());
  }
}

TEST_CASE("hom and epi counts in PSL(2,7)") {
  GroupElements g(build_group("psl2:7"));
  ClassAlgebra alg(g);
  CHECK(hom_count(alg, parse_signature("0;7,7,7")) == 576);
  CHECK(hom_count(alg, parse_signature("0;3,3,7")) == 1008);
  SubgroupLattice lattice(g);
  CHECK(epi_count(g, lattice, parse_signature("0;7,7,7")) == 336);
  CHECK(epi_count(g, lattice, parse_signature("0;3,3,7")) == 336);
  CHECK(epi_count(g, lattice, parse_signature("0;7")) == 0);
  std::size_t order7 = 0, order21 = 0;
  for (const auto& c : lattice.classes()) {
    if (c.order == 7) order7 += c.class_size;
    if (c.order == 21) order21 += c.class_size;
  }
  CHECK(order7 == 8);
  CHECK(order21 == 8);
  CHECK(lattice.classes().size() == 15);
  CHECK(lattice.subgroup_count() == 179);
}

TEST_CASE("subgroup classes") {
  GroupElements s4(build_group("sym:4"));
  SubgroupLattice lattice(s4);
  auto subs = two_generated_subgroups(s4);
  CHECK(lattice.subgroup_count() == subs.size());
  CHECK(lattice.classes().size() == count_conjugacy_classes_of_subgroups(s4, subs));
  CHECK(lattice.classes().size() == 11);
  CHECK(SubgroupLattice(GroupElements(build_group("cyclic:7"))).classes().size() == 2);
  CHECK_THROWS_AS(SubgroupLattice(s4, 10), Error);

  // Defining identity of the Moebius function: sum over K >= H of mu(K) is 0 unless H = G.
  for (const auto& c : lattice.classes()) {
    std::int64_t sum = 0;
    for (const auto& d : lattice.classes())
      for (const auto& m : d.members)
        if (c.representative.is_subset_of(m)) sum += d.mobius;
    CHECK(sum == (c.order == 24 ? 1 : 0));
  }
}

TEST_CASE("epi counts against brute force") {
  for (const char* text : {"sym:3", "dihedral2:2", "quaternion2:2", "abelian:2,2", "cyclic:6"}) {
    GroupElements g(build_group(text));
    SubgroupLattice lattice(g);
    for (const char* s : {"0;2,2,2", "0;2,3,6", "0;2,2,3", "1;", "1;2", "0;2,2,2,2", "0;4,4,2", "0;3,6,2"}) {
      CAPTURE(text);
      CAPTURE(s);
      auto sig = parse_signature(s);
      CHECK(epi_count(g, lattice, sig) == brute_count(g, sig, true));
    }
  }
}

TEST_CASE("lattice consistency: hom = sum of class size times epi over subgroups") {
  GroupElements g(build_group("sym:4"));
  ClassAlgebra alg(g);
  SubgroupLattice lattice(g);
  for (const char* s : {"0;2,2,2", "0;2,3,4", "1;2", "0;3,3,3"}) {
    auto sig = parse_signature(s);
    BigInt sum = 0;
    for (const auto& c : lattice.classes()) {
      GroupElements sub(to_perm_group(g, c.representative));
      sum += BigInt(c.class_size) * epi_count(sub, SubgroupLattice(sub), sig);
    }
    CHECK(sum == hom_count(alg, sig));
  }
}

TEST_CASE("generating vector search") {
  Realizer psl(build_group("psl2:7"));
  auto hurwitz = parse_signature("0;2,3,7");
  auto found = psl.find_generating_vector(hurwitz, 100000);
  REQUIRE(found.witness.has_value());
  CHECK(verify_witness(psl.group(), hurwitz, psl.to_permutations(*found.witness)).ok());

  for (unsigned e = 3; e <= 5; ++e) {
    CAPTURE(e);
    Realizer d(build_group("dihedral2:" + std::to_string(e)));
    for (std::string s : {std::string("0;2,2,") + std::to_string(1u << e), std::string("0;2,2,2,2")}) {
      auto sig = parse_signature(s);
      auto w = d.find_generating_vector(sig, 100000);
      REQUIRE(w.witness.has_value());
      CHECK(verify_witness(d.group(), sig, d.to_permutations(*w.witness)).ok());
      // Reflections (order-2 elements outside the rotations <y>) come in even number.
      PermGroup rotations(d.group().degree(), {d.group().generators()[1]});
      std::size_t reflections = 0;
      for (Elem c : w.witness->elliptic)
        if (d.elements().order(c) == 2 && !rotations.contains(d.elements().permutation(c))) ++reflections;
      CHECK(reflections % 2 == 0);
    }
  }
}

TEST_CASE("search and counting agree on small groups") {
  for (const char* text : {"sym:3", "dihedral2:3", "quaternion2:3", "abelian:2,4", "sym:4", "alt:4"}) {
    Realizer r(build_group(text));
    for (std::uint64_t gt = 1; gt <= 12; ++gt)
      for (const auto& sol : enumerate_solutions(r.instance(), gt)) {
        CAPTURE(text);
        CAPTURE(to_string(sol.signature));
        auto epi = r.epi_count(sol.signature);
        auto w = r.find_generating_vector(sol.signature, 10'000'000);
        CHECK_FALSE(w.budget_exceeded);
        CHECK(w.witness.has_value() == !epi.is_zero());
        if (w.witness) CHECK(r.check(sol.signature, *w.witness));
      }
  }
}

TEST_CASE("data decisions") {
  Realizer psl(build_group("psl2:7"));
  for (const char* s : {"0;2,4,7", "0;2,7,7", "0;3,3,4", "0;3,3,7", "0;3,4,4", "0;3,4,7", "0;3,7,7", "0;4,4,4",
                        "0;4,7,7", "0;7,7,7"}) {
    CAPTURE(s);
    auto sig = parse_signature(s);
    auto d = psl.is_datum(sig);
    REQUIRE(d.verdict == Verdict::Realized);
    REQUIRE(d.witness.has_value());
    CHECK(verify_witness(psl.group(), sig, psl.to_permutations(*d.witness)).ok());
  }
  CHECK(psl.is_datum(parse_signature("0;7,7")).verdict == Verdict::Refuted);
  CHECK(psl.is_datum(parse_signature("0;5,5,5")).verdict == Verdict::Refuted);

  Realizer d5(build_group("dihedral2:5"));
  auto odd_gap = parse_signature("0;2,4,8,32,32");
  auto dd = d5.is_datum(odd_gap);
  CHECK(dd.verdict == Verdict::Refuted);
  CHECK(dd.method == "count");

  Realizer c5(build_group("cyclic:5"));
  CHECK(c5.is_datum(parse_signature("0;5,5")).verdict == Verdict::Realized);
  CHECK(Realizer(build_group("cyclic:6")).is_datum(parse_signature("0;3,3")).verdict == Verdict::Refuted);
}

TEST_CASE("extension rules") {
  Realizer psl(build_group("psl2:7"));
  auto base = parse_signature("0;2,3,7");
  REQUIRE(psl.is_datum(base).verdict == Verdict::Realized);
  auto up = psl.derive(parse_signature("1;2,3,7"));
  REQUIRE(up.has_value());
  CHECK(psl.check(parse_signature("1;2,3,7"), *up));
  auto slot = psl.derive(parse_signature("0;2,3,3,3,7"));
  REQUIRE(slot.has_value());
  CHECK(psl.check(parse_signature("0;2,3,3,3,7"), *slot));
  // Splits need a factorization of a witness element; whatever comes back must verify.
  for (const char* s : {"0;2,3,3,7", "0;2,2,3,7", "0;2,3,4,7", "0;2,3,7,7"})
    if (auto w = psl.derive(parse_signature(s))) CHECK(psl.check(parse_signature(s), *w));

  psl.extension_closure(200);
  for (const auto& [sig, w] : psl.realized()) {
    CAPTURE(to_string(sig));
    CHECK(psl.check(sig, w));
    CHECK(*psl.reduced_genus(sig) <= 200);
  }
  CHECK(psl.realized_witness(parse_signature("1;2,3,7")).has_value());

  Realizer empty(build_group("sym:3"));
  empty.extension_closure(50);
  CHECK(empty.realized().empty());

  Realizer d4(build_group("dihedral2:4"));
  REQUIRE(d4.is_datum(parse_signature("0;2,2,16")).verdict == Verdict::Realized);
  d4.extension_closure(40);
  for (std::uint64_t h = 0; h <= 2; ++h)
    for (std::size_t m = 2; m <= 6; ++m) {
      std::vector<std::uint64_t> periods(m, 2);
      periods.push_back(16);
      Signature sig(h, periods);
      if (*d4.reduced_genus(sig) <= 40) CHECK(d4.realized_witness(sig).has_value());
    }
}

TEST_CASE("witness JSON") {
  Realizer psl(build_group("psl2:7"));
  auto sig = parse_signature("1;2,3,7");
  auto d = psl.is_datum(sig);
  REQUIRE(d.witness.has_value());
  auto j = witness_to_json(sig, psl.to_permutations(*d.witness));
  auto [sig2, v2] = witness_from_json(j);
  CHECK(sig2 == sig);
  CHECK(verify_witness(psl.group(), sig2, v2).ok());
  CHECK(psl.from_permutations(v2).elliptic == d.witness->elliptic);
  j["elliptic"][0][0] = j["elliptic"][0][1].get<int>();
  CHECK_THROWS_AS(witness_from_json(j), ParseError);
  CHECK_THROWS_AS(witness_from_json(nlohmann::json::parse("{}")), ParseError);
}
