#include <algorithm>
#include <set>

#include "gsk/error.hpp"
#include "gsk/realizability.hpp"

namespace gsk {

ClassAlgebra::ClassAlgebra(const GroupElements& g) : g_(&g), table_(conjugacy_classes(g)) {
  const std::size_t k = table_.size();
  const std::size_t n = g.size();
  entries_.resize(k);
  std::vector<std::uint64_t> keys(n);
  for (std::size_t t = 0; t < k; ++t) {
    Elem z = table_.reps[t];
    for (Elem x = 0; x < n; ++x) {
      Elem y = g.mul(g.inv(x), z);
      keys[x] = (std::uint64_t{table_.class_of[x]} << 32) | table_.class_of[y];
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j < n && keys[j] == keys[i]) ++j;
      entries_[t].push_back({static_cast<std::uint32_t>(keys[i] >> 32),
                             static_cast<std::uint32_t>(keys[i] & 0xffffffffu), j - i});
      i = j;
    }
  }

  // [a, b] = g  <=>  b^-1 a b = a g, which has |C(a)| solutions b when a g ~ a.
  commutators_.assign(k, 0);
  for (std::size_t t = 0; t < k; ++t)
    for (Elem a = 0; a < n; ++a) {
      auto c = table_.class_of[a];
      if (table_.class_of[g.mul(a, table_.reps[t])] == c) commutators_[t] += table_.centralizer_orders[c];
    }

  commutator_rows_.resize(k);
  std::set<std::uint64_t> orders(table_.element_orders.begin(), table_.element_orders.end());
  for (auto order : orders) period_rows_[order].resize(k);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<std::uint64_t> comm(k, 0);
    std::map<std::uint64_t, std::vector<std::uint64_t>> per_order;
    for (const auto& e : entries_[t]) {
      comm[e.r] += e.count * commutators_[e.s];
      auto& row = per_order[table_.element_orders[e.s]];
      row.resize(k, 0);
      row[e.r] += e.count;
    }
    for (std::uint32_t r = 0; r < k; ++r)
      if (comm[r]) commutator_rows_[t].push_back({r, comm[r]});
    for (auto& [order, row] : per_order)
      for (std::uint32_t r = 0; r < k; ++r)
        if (row[r]) period_rows_[order][t].push_back({r, row[r]});
  }
}

std::uint64_t ClassAlgebra::structure_constant(std::size_t r, std::size_t s, std::size_t t) const {
  if (r >= size() || s >= size() || t >= size()) throw Error(ErrorCode::InvalidArgument, "class index out of range");
  for (const auto& e : entries_[t])
    if (e.r == r && e.s == s) return e.count;
  return 0;
}

bool ClassAlgebra::has_element_order(std::uint64_t n) const { return period_rows_.count(n) > 0; }

const std::vector<std::vector<ClassAlgebra::Row>>& ClassAlgebra::period_rows(std::uint64_t n) const {
  static const std::vector<std::vector<Row>> kEmpty;
  auto it = period_rows_.find(n);
  return it == period_rows_.end() ? kEmpty : it->second;
}

std::vector<BigInt> ClassAlgebra::convolve_period(const std::vector<BigInt>& f, std::uint64_t n) const {
  std::vector<BigInt> out(size());
  const auto& rows = period_rows(n);
  if (rows.empty()) return out;
  for (std::size_t t = 0; t < size(); ++t)
    for (const auto& row : rows[t])
      if (!f[row.r].is_zero()) out[t] += f[row.r] * row.coefficient;
  return out;
}

std::vector<BigInt> ClassAlgebra::convolve_commutator(const std::vector<BigInt>& f) const {
  std::vector<BigInt> out(size());
  for (std::size_t t = 0; t < size(); ++t)
    for (const auto& row : commutator_rows_[t])
      if (!f[row.r].is_zero()) out[t] += f[row.r] * row.coefficient;
  return out;
}

std::vector<char> ClassAlgebra::support_period(const std::vector<char>& f, std::uint64_t n) const {
  std::vector<char> out(size(), 0);
  const auto& rows = period_rows(n);
  if (rows.empty()) return out;
  for (std::size_t t = 0; t < size(); ++t)
    for (const auto& row : rows[t])
      if (f[row.r]) {
        out[t] = 1;
        break;
      }
  return out;
}

std::vector<char> ClassAlgebra::support_commutator(const std::vector<char>& f) const {
  std::vector<char> out(size(), 0);
  for (std::size_t t = 0; t < size(); ++t)
    for (const auto& row : commutator_rows_[t])
      if (f[row.r]) {
        out[t] = 1;
        break;
      }
  return out;
}

std::uint64_t class_mult_coefficient(const GroupElements& g, const ClassTable& table, std::size_t r,
                                     std::size_t s, std::size_t t) {
  if (r >= table.size() || s >= table.size() || t >= table.size())
    throw Error(ErrorCode::InvalidArgument, "class index out of range");
  Elem z_inv = g.inv(table.reps[t]);
  std::uint64_t pairs = 0;
  for (Elem x = 0; x < g.size(); ++x)
    if (table.class_of[x] == r && table.class_of[g.mul(g.inv(x), z_inv)] == s) ++pairs;
  return pairs * table.sizes[t];
}

std::uint64_t class_mult_coefficient(const ClassAlgebra& algebra, std::size_t r, std::size_t s, std::size_t t) {
  const auto& table = algebra.table();
  if (t >= table.size()) throw Error(ErrorCode::InvalidArgument, "class index out of range");
  return algebra.structure_constant(r, s, table.inverse_class[t]) * table.sizes[t];
}

std::vector<std::uint64_t> commutator_distribution(const GroupElements& g, const ClassTable& table) {
  std::vector<std::uint64_t> counts(table.size(), 0);
  for (std::size_t t = 0; t < table.size(); ++t)
    for (Elem a = 0; a < g.size(); ++a) {
      auto c = table.class_of[a];
      if (table.class_of[g.mul(a, table.reps[t])] == c) counts[t] += table.centralizer_orders[c];
    }
  return counts;
}

BigInt hom_count(const ClassAlgebra& algebra, const Signature& sig) {
  std::vector<BigInt> f(algebra.size());
  f[0] = 1;  // class 0 is the identity
  for (std::uint64_t i = 0; i < sig.h; ++i) f = algebra.convolve_commutator(f);
  for (auto n : sig.periods) {
    if (!algebra.has_element_order(n)) return 0;
    f = algebra.convolve_period(f, n);
  }
  return f[0];
}

}  // namespace gsk
