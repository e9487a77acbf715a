#pragma once

#include <cstdint>
#include <vector>

namespace gsk {

/// GF(q) with table arithmetic; elements are 0..q-1 (base-p digit vectors of
/// polynomials modulo a primitive polynomial, so the class 'x' generates the
/// multiplicative group).
class FiniteField {
 public:
  explicit FiniteField(std::uint64_t q);

  std::uint32_t size() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return add_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const noexcept { return neg_[a]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t primitive_element() const noexcept { return exp_.size() > 1 ? exp_[1] : 1; }
  std::uint32_t one() const noexcept { return 1; }

 private:
  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace gsk
