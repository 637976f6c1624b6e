#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "hallmark/errors.hpp"

namespace hallmark {

// A permutation of {0, ..., degree-1}, stored as its image table.
//
// Composition is left-to-right: (p * q)[i] = q[p[i]], i.e. p acts first.
// Consequently x^(p*q) = (x^p)^q and conjugation H^g means g^-1 * H * g.
// Equality, ordering and hashing use the image table verbatim.
class Perm {
public:
  explicit Perm(unsigned degree) : img_(degree) {
    if (degree == 0) throw InvalidInput("permutation degree must be positive");
    std::iota(img_.begin(), img_.end(), 0);
  }

  explicit Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
    if (img_.empty()) throw InvalidInput("permutation degree must be positive");
    std::vector<bool> seen(img_.size(), false);
    for (std::uint16_t v : img_) {
      if (v >= img_.size() || seen[v])
        throw InvalidInput("image table is not a bijection");
      seen[v] = true;
    }
  }

  static Perm identity(unsigned degree) { return Perm(degree); }

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }

  std::uint16_t operator[](unsigned i) const { return img_[i]; }

  bool is_identity() const {
    for (unsigned i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // Apply *this first, then o.
  Perm operator*(const Perm& o) const {
    if (o.degree() != degree()) throw InvalidInput("degree mismatch in composition");
    std::vector<std::uint16_t> r(img_.size());
    for (unsigned i = 0; i < img_.size(); ++i) r[i] = o.img_[img_[i]];
    return Perm(Raw{}, std::move(r));
  }

  Perm inverse() const {
    std::vector<std::uint16_t> r(img_.size());
    for (unsigned i = 0; i < img_.size(); ++i) r[img_[i]] = static_cast<std::uint16_t>(i);
    return Perm(Raw{}, std::move(r));
  }

  // Multiplicative order: lcm of cycle lengths.
  std::uint64_t order() const {
    std::uint64_t ord = 1;
    std::vector<bool> seen(img_.size(), false);
    for (unsigned i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      unsigned j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = img_[j];
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  // Smallest point moved, or degree() if identity.
  unsigned first_moved() const {
    for (unsigned i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return i;
    return degree();
  }

  auto operator<=>(const Perm&) const = default;

  const std::vector<std::uint16_t>& images() const { return img_; }

private:
  struct Raw {};
  Perm(Raw, std::vector<std::uint16_t> images) : img_(std::move(images)) {}

  std::vector<std::uint16_t> img_;
};

// Conjugate of p by g: g^-1 * p * g.
inline Perm conjugate(const Perm& p, const Perm& g) {
  return g.inverse() * p * g;
}

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (std::uint16_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace hallmark
