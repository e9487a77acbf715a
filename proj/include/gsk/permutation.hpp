#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gsk {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1}, stored as its list of images.
///
/// Products compose like functions: (p * q)(i) == p(q(i)). Every group
/// element in the library, and every witness written to disk, follows this
/// convention.
class Permutation {
 public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);

  /// Throws Error(InvalidPermutation) unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Builds from 0-based disjoint cycles; points not mentioned are fixed.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  /// Smallest moved point, or degree() for the identity.
  Point first_moved_point() const noexcept;

  Permutation inverse() const;
  Permutation pow(long long exponent) const;
  /// Order as the lcm of the cycle lengths.
  std::uint64_t order() const;

  std::string to_cycle_string() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// x * g * x^-1
Permutation conjugate(const Permutation& g, const Permutation& x);

/// a^-1 * b^-1 * a * b
Permutation commutator(const Permutation& a, const Permutation& b);

/// Moves `p` onto the points offset, ..., offset + p.degree() - 1 of a
/// permutation of degree `degree`.
Permutation shifted(const Permutation& p, std::size_t offset, std::size_t degree);

}  // namespace gsk
