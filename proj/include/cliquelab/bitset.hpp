#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cliquelab {

// Dense bit vector with set semantics. Used for both vertex sets (capacity n)
// and edge sets (capacity n(n-1)/2). All binary operations require equal
// capacity.
class Bitset {
public:
  static constexpr std::size_t npos = ~std::size_t{0};

  Bitset() = default;
  explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}
  Bitset(std::size_t nbits, std::initializer_list<std::size_t> bits) : Bitset(nbits) {
    for (auto b : bits) set(b);
  }

  std::size_t capacity() const { return nbits_; }

  bool test(std::size_t i) const {
    assert(i < nbits_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void set(std::size_t i) {
    assert(i < nbits_);
    words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
  }
  void reset(std::size_t i) {
    assert(i < nbits_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim();
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool empty() const { return none(); }

  bool operator==(const Bitset&) const = default;

  Bitset& operator|=(const Bitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // set difference
  Bitset& operator-=(const Bitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  bool subset_of(const Bitset& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  std::size_t first() const { return next_from(0); }
  std::size_t next(std::size_t after) const { return next_from(after + 1); }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::size_t b = first(); b != npos; b = next(b)) out.push_back(static_cast<int>(b));
    return out;
  }

  // Lexicographic order on the sorted element lists; a strict prefix sorts
  // first. This is the canonical order for families in files and reports.
  static bool lex_less(const Bitset& a, const Bitset& b) {
    assert(a.nbits_ == b.nbits_);
    std::size_t x = a.first(), y = b.first();
    while (x != npos && y != npos) {
      if (x != y) return x < y;
      x = a.next(x);
      y = b.next(y);
    }
    return x == npos && y != npos;
  }

private:
  std::size_t next_from(std::size_t start) const {
    if (start >= nbits_) return npos;
    std::size_t wi = start >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (start & 63));
    while (true) {
      if (w) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return npos;
      w = words_[wi];
    }
  }
  void trim() {
    if (nbits_ & 63) words_.back() &= (~std::uint64_t{0} >> (64 - (nbits_ & 63)));
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cliquelab
