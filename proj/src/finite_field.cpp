#include "gsk/finite_field.hpp"

#include <stdexcept>

#include "gsk/error.hpp"
#include "gsk/group_spec.hpp"

namespace gsk {

FiniteField::FiniteField(std::uint64_t q) {
  auto [p, f] = prime_power(q);
  if (q > 4096) throw Error(ErrorCode::InvalidSpec, "field too large for table arithmetic");
  q_ = static_cast<std::uint32_t>(q);
  p_ = static_cast<std::uint32_t>(p);

  auto digits = [&](std::uint32_t v) {
    std::vector<std::uint32_t> d(f);
    for (unsigned i = 0; i < f; ++i, v /= p_) d[i] = v % p_;
    return d;
  };
  auto value = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t v = 0;
    for (unsigned i = f; i-- > 0;) v = v * p_ + d[i];
    return v;
  };

  add_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    auto da = digits(a);
    std::vector<std::uint32_t> dn(f);
    for (unsigned i = 0; i < f; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = value(dn);
    for (std::uint32_t b = 0; b < q_; ++b) {
      auto db = digits(b);
      std::vector<std::uint32_t> ds(f);
      for (unsigned i = 0; i < f; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[static_cast<std::size_t>(a) * q_ + b] = value(ds);
    }
  }

  // Search x^f = r(x) with x of multiplicative order q - 1.
  for (std::uint32_t r = 0; r < q_; ++r) {
    auto reduction = digits(r);
    if (reduction[0] == 0) continue;
    std::vector<std::uint32_t> cur(f, 0);
    cur[0] = 1;
    std::vector<std::uint32_t> powers = {1};
    bool primitive = true;
    for (std::uint32_t k = 1; k < q_; ++k) {
      std::uint32_t top = cur[f - 1];
      for (unsigned i = f - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      for (unsigned i = 0; i < f; ++i) cur[i] = (cur[i] + top * reduction[i]) % p_;
      std::uint32_t v = value(cur);
      if (v == 1 && k < q_ - 1) {
        primitive = false;
        break;
      }
      if (k < q_ - 1) powers.push_back(v);
      else if (v != 1) primitive = false;
    }
    if (!primitive) continue;
    exp_ = std::move(powers);
    log_.assign(q_, 0);
    for (std::uint32_t k = 0; k < exp_.size(); ++k) log_[exp_[k]] = k;
    return;
  }
  throw std::logic_error("no primitive polynomial found");
}

std::uint32_t FiniteField::mul(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "zero has no inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

}  // namespace gsk
