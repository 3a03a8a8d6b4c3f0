#ifndef REPSPACE_NAMES_HPP
#define REPSPACE_NAMES_HPP

// Names: infinite bit streams observed through a fuel budget.
//
// Every bit of a name has an exact cost in [0, inf]. probe(n, fuel) succeeds
// iff cost(n) <= fuel, and then always returns the same bit. Costs are
// computed by fuel-independent procedures, so a probe's answer never depends
// on which probes happened before it.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace repspace {

using Fuel = std::uint64_t;
inline constexpr Fuel kInfiniteCost = std::numeric_limits<Fuel>::max();

struct Probe {
  bool bit;
  Fuel cost;
};

/// nullopt means FuelExhausted: the bit is not available within the budget.
using ProbeResult = std::optional<Probe>;

using Bits = std::vector<bool>;

class NameImpl {
 public:
  virtual ~NameImpl() = default;

  virtual ProbeResult probe(std::size_t n, Fuel fuel) const = 0;

  /// True iff some i < limit has probe(i, fuel) == 1.
  virtual bool observe(std::size_t limit, Fuel fuel) const {
    for (std::size_t i = 0; i < limit; ++i) {
      auto p = probe(i, fuel);
      if (p && p->bit) return true;
    }
    return false;
  }

  /// observe on the bits 2i + offset alone.
  virtual bool observe_half(unsigned offset, std::size_t limit, Fuel fuel) const {
    for (std::size_t i = 0; i < limit; ++i) {
      auto p = probe(2 * i + offset, fuel);
      if (p && p->bit) return true;
    }
    return false;
  }

  virtual std::string describe() const { return "name"; }
};

class Name {
 public:
  Name() = default;
  explicit Name(std::shared_ptr<const NameImpl> impl) : impl_(std::move(impl)) {}

  ProbeResult probe(std::size_t n, Fuel fuel) const { return impl_->probe(n, fuel); }

  std::optional<bool> bit(std::size_t n, Fuel fuel) const {
    auto p = impl_->probe(n, fuel);
    if (!p) return std::nullopt;
    return p->bit;
  }

  /// First `length` bits, or nullopt if any of them is unavailable at `fuel`.
  std::optional<Bits> prefix(std::size_t length, Fuel fuel) const {
    Bits out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
      auto b = bit(i, fuel);
      if (!b) return std::nullopt;
      out.push_back(*b);
    }
    return out;
  }

  bool observe(std::size_t limit, Fuel fuel) const { return impl_->observe(limit, fuel); }
  bool observe_half(unsigned offset, std::size_t limit, Fuel fuel) const {
    return impl_->observe_half(offset, limit, fuel);
  }

  std::string describe() const { return impl_ ? impl_->describe() : "<null>"; }

  template <class T>
  const T* as() const {
    return dynamic_cast<const T*>(impl_.get());
  }

  const NameImpl* get() const { return impl_.get(); }
  explicit operator bool() const { return static_cast<bool>(impl_); }

 private:
  std::shared_ptr<const NameImpl> impl_;
};

template <class T, class... Args>
Name make_name(Args&&... args) {
  return Name(std::make_shared<const T>(std::forward<Args>(args)...));
}

// ---------------------------------------------------------------------------
// Cached names: the probe cache is append-only and stores exact costs, plus
// the largest fuel at which a bit is known to be unavailable.

class CachedNameImpl : public NameImpl {
 public:
  ProbeResult probe(std::size_t n, Fuel fuel) const final {
    std::lock_guard lock(mutex_);
    if (n < cache_.size()) {
      const auto& e = cache_[n];
      if (e.known) return e.cost <= fuel ? ProbeResult(Probe{e.bit, e.cost}) : std::nullopt;
      if (e.failed_at >= fuel && e.tried) return std::nullopt;
    }
    auto r = compute(n, fuel);
    if (cache_.size() <= n) cache_.resize(n + 1);
    auto& e = cache_[n];
    if (r) {
      e.known = true;
      e.bit = r->bit;
      e.cost = r->cost;
    } else {
      e.tried = true;
      e.failed_at = std::max(e.failed_at, fuel);
    }
    return r;
  }

 protected:
  /// Must be deterministic and monotone in fuel, with exact cost on success.
  virtual ProbeResult compute(std::size_t n, Fuel fuel) const = 0;

  std::recursive_mutex& mutex() const { return mutex_; }

 private:
  struct Entry {
    bool known = false;
    bool tried = false;
    bool bit = false;
    Fuel cost = 0;
    Fuel failed_at = 0;
  };
  mutable std::recursive_mutex mutex_;
  mutable std::vector<Entry> cache_;
};

// ---------------------------------------------------------------------------
// Literal generators. Literal bits cost nothing.

/// `word` followed by `period` repeated forever. An empty period means zeros.
class PeriodicName final : public NameImpl {
 public:
  PeriodicName(Bits word, Bits period) : word_(std::move(word)), period_(std::move(period)) {
    if (period_.empty()) period_ = {false};
    first_one_ = locate_first_one();
  }

  ProbeResult probe(std::size_t n, Fuel) const override { return Probe{at(n), 0}; }

  bool observe(std::size_t limit, Fuel) const override { return first_one_ && *first_one_ < limit; }

  std::string describe() const override;

  const Bits& word() const { return word_; }
  const Bits& period() const { return period_; }

 private:
  bool at(std::size_t n) const {
    if (n < word_.size()) return word_[n];
    return period_[(n - word_.size()) % period_.size()];
  }
  std::optional<std::size_t> locate_first_one() const {
    for (std::size_t i = 0; i < word_.size() + period_.size(); ++i)
      if (at(i)) return i;
    return std::nullopt;
  }

  Bits word_;
  Bits period_;
  std::optional<std::size_t> first_one_;
};

/// A finite word whose continuation is never available (a partial name used by
/// compact search). Bits past the word have infinite cost.
class PartialWordName final : public NameImpl {
 public:
  explicit PartialWordName(Bits word) : word_(std::move(word)) {}
  ProbeResult probe(std::size_t n, Fuel) const override {
    if (n < word_.size()) return Probe{word_[n], 0};
    touched_beyond_.store(true, std::memory_order_relaxed);
    return std::nullopt;
  }
  bool observe(std::size_t limit, Fuel) const override {
    if (limit > word_.size()) touched_beyond_.store(true, std::memory_order_relaxed);
    auto end = std::min(limit, word_.size());
    for (std::size_t i = 0; i < end; ++i)
      if (word_[i]) return true;
    return false;
  }
  std::string describe() const override { return "partial word of length " + std::to_string(word_.size()); }
  const Bits& word() const { return word_; }
  /// Whether any observer asked for a bit past the word.
  bool touched_beyond() const { return touched_beyond_.load(std::memory_order_relaxed); }

 private:
  Bits word_;
  mutable std::atomic<bool> touched_beyond_{false};
};

/// A name backed by an arbitrary total bit function (external supplier).
class SupplierName final : public CachedNameImpl {
 public:
  explicit SupplierName(std::function<bool(std::size_t)> f) : f_(std::move(f)) {}
  std::string describe() const override { return "supplier"; }

 protected:
  ProbeResult compute(std::size_t n, Fuel) const override { return Probe{f_(n), 0}; }

 private:
  std::function<bool(std::size_t)> f_;
};

inline Bits bits_from_string(std::string_view s) {
  Bits out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '0') out.push_back(false);
    else if (c == '1') out.push_back(true);
    else throw std::invalid_argument("bit string may contain only 0 and 1: " + std::string(s));
  }
  return out;
}

inline std::string bits_to_string(const Bits& b) {
  std::string s;
  s.reserve(b.size());
  for (bool x : b) s.push_back(x ? '1' : '0');
  return s;
}

inline std::string PeriodicName::describe() const {
  return "word \"" + bits_to_string(word_) + "\" then periodic \"" + bits_to_string(period_) + "\"";
}

inline Name word_then_zeros(Bits word) { return make_name<PeriodicName>(std::move(word), Bits{false}); }
inline Name word_then_zeros(std::string_view word) { return word_then_zeros(bits_from_string(word)); }
inline Name periodic(Bits period) { return make_name<PeriodicName>(Bits{}, std::move(period)); }
inline Name periodic(std::string_view period) { return periodic(bits_from_string(period)); }
inline Name ultimately_periodic(Bits word, Bits period) {
  return make_name<PeriodicName>(std::move(word), std::move(period));
}
inline Name zeros() { return periodic(Bits{false}); }
inline Name ones() { return periodic(Bits{true}); }
inline Name partial_word(Bits word) { return make_name<PartialWordName>(std::move(word)); }
inline Name from_supplier(std::function<bool(std::size_t)> f) { return make_name<SupplierName>(std::move(f)); }

/// 0^n 1 0^omega.
inline Name nat_literal(std::size_t n) {
  Bits w(n + 1, false);
  w[n] = true;
  return word_then_zeros(std::move(w));
}

/// Parses `word "0110" then zeros`, `periodic "10"` or `nat 5`.
inline Name parse_name_literal(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto quoted = [&](std::string_view s, std::string_view& rest) -> std::string_view {
    s = trim(s);
    if (s.empty() || s.front() != '"') throw std::invalid_argument("expected quoted bit string");
    auto close = s.find('"', 1);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated bit string");
    rest = s.substr(close + 1);
    return s.substr(1, close - 1);
  };
  auto t = trim(text);
  if (t.starts_with("word")) {
    std::string_view rest;
    auto w = quoted(t.substr(4), rest);
    if (trim(rest) != "then zeros") throw std::invalid_argument("expected `then zeros` after word literal");
    return word_then_zeros(w);
  }
  if (t.starts_with("periodic")) {
    std::string_view rest;
    auto p = quoted(t.substr(8), rest);
    if (!trim(rest).empty()) throw std::invalid_argument("trailing text after periodic literal");
    if (p.empty()) throw std::invalid_argument("periodic literal needs a non-empty period");
    return periodic(p);
  }
  if (t.starts_with("nat")) {
    auto num = trim(t.substr(3));
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("nat literal needs a decimal number");
    return nat_literal(std::stoull(std::string(num)));
  }
  throw std::invalid_argument("unknown name literal: " + std::string(text));
}

// ---------------------------------------------------------------------------
// Pairing: strict interleaving. pair(p,q)(2n) = p(n), pair(p,q)(2n+1) = q(n).

class PairName final : public NameImpl {
 public:
  PairName(Name first, Name second) : first_(std::move(first)), second_(std::move(second)) {}
  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    return (n % 2 == 0 ? first_ : second_).probe(n / 2, fuel);
  }
  bool observe(std::size_t limit, Fuel fuel) const override {
    return first_.observe((limit + 1) / 2, fuel) || second_.observe(limit / 2, fuel);
  }
  bool observe_half(unsigned offset, std::size_t limit, Fuel fuel) const override {
    return (offset == 0 ? first_ : second_).observe(limit, fuel);
  }
  std::string describe() const override { return "<" + first_.describe() + ", " + second_.describe() + ">"; }
  const Name& first() const { return first_; }
  const Name& second() const { return second_; }

 private:
  Name first_, second_;
};

/// Every other bit of a name, starting at `offset` (0 or 1).
class HalfName final : public NameImpl {
 public:
  HalfName(Name whole, unsigned offset) : whole_(std::move(whole)), offset_(offset) {}
  ProbeResult probe(std::size_t n, Fuel fuel) const override { return whole_.probe(2 * n + offset_, fuel); }
  bool observe(std::size_t limit, Fuel fuel) const override { return whole_.observe_half(offset_, limit, fuel); }
  std::string describe() const override { return "half" + std::to_string(offset_) + "(" + whole_.describe() + ")"; }

 private:
  Name whole_;
  unsigned offset_;
};

inline Name pair(Name p, Name q) { return make_name<PairName>(std::move(p), std::move(q)); }

inline Name unpair_first(const Name& r) {
  if (auto p = r.as<PairName>()) return p->first();
  return make_name<HalfName>(r, 0u);
}
inline Name unpair_second(const Name& r) {
  if (auto p = r.as<PairName>()) return p->second();
  return make_name<HalfName>(r, 1u);
}
inline std::pair<Name, Name> unpair(const Name& r) { return {unpair_first(r), unpair_second(r)}; }

// ---------------------------------------------------------------------------
// Countable tupling via the Cantor pairing polynomial.

inline constexpr std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j) {
  return (i + j) * (i + j + 1) / 2 + j;
}

inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
  // w = floor((sqrt(8k+1) - 1) / 2), corrected for floating error.
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L);
  while (w * (w + 1) / 2 > k) --w;
  while ((w + 1) * (w + 2) / 2 <= k) ++w;
  std::uint64_t j = k - w * (w + 1) / 2;
  return {w - j, j};
}

class TupleSeqName final : public NameImpl {
 public:
  explicit TupleSeqName(std::function<Name(std::size_t)> supplier) : supplier_(std::move(supplier)) {}

  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    auto [i, j] = cantor_unpair(n);
    return component(i).probe(j, fuel);
  }

  Name component(std::size_t i) const {
    std::lock_guard lock(mutex_);
    if (components_.size() <= i) components_.resize(i + 1);
    if (!components_[i]) components_[i] = supplier_(i);
    return components_[i];
  }

  std::string describe() const override { return "tuple_seq"; }

 private:
  std::function<Name(std::size_t)> supplier_;
  mutable std::mutex mutex_;
  mutable std::vector<Name> components_;
};

class ProjectSeqName final : public NameImpl {
 public:
  ProjectSeqName(Name whole, std::size_t index) : whole_(std::move(whole)), index_(index) {}
  ProbeResult probe(std::size_t n, Fuel fuel) const override { return whole_.probe(cantor_pair(index_, n), fuel); }
  std::string describe() const override { return "project_seq(" + std::to_string(index_) + ")"; }

 private:
  Name whole_;
  std::size_t index_;
};

inline Name tuple_seq(std::function<Name(std::size_t)> supplier) {
  return make_name<TupleSeqName>(std::move(supplier));
}

inline Name project_seq(const Name& r, std::size_t i) {
  if (auto t = r.as<TupleSeqName>()) return t->component(i);
  return make_name<ProjectSeqName>(r, i);
}

// ---------------------------------------------------------------------------
// Prefixing and shifting.

/// `head` followed by `tail`.
class PrependName final : public NameImpl {
 public:
  PrependName(Bits head, Name tail) : head_(std::move(head)), tail_(std::move(tail)) {}
  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    if (n < head_.size()) return Probe{head_[n], 0};
    return tail_.probe(n - head_.size(), fuel);
  }
  bool observe(std::size_t limit, Fuel fuel) const override {
    auto end = std::min(limit, head_.size());
    for (std::size_t i = 0; i < end; ++i)
      if (head_[i]) return true;
    return limit > head_.size() && tail_.observe(limit - head_.size(), fuel);
  }
  std::string describe() const override { return "\"" + bits_to_string(head_) + "\" ++ " + tail_.describe(); }
  const Bits& head() const { return head_; }
  const Name& tail() const { return tail_; }

 private:
  Bits head_;
  Name tail_;
};

class ShiftName final : public NameImpl {
 public:
  ShiftName(Name base, std::size_t offset) : base_(std::move(base)), offset_(offset) {}
  ProbeResult probe(std::size_t n, Fuel fuel) const override { return base_.probe(n + offset_, fuel); }
  std::string describe() const override { return "shift" + std::to_string(offset_) + "(" + base_.describe() + ")"; }

 private:
  Name base_;
  std::size_t offset_;
};

inline Name prepend(Bits head, Name tail) { return make_name<PrependName>(std::move(head), std::move(tail)); }

inline Name shift(const Name& base, std::size_t offset) {
  if (offset == 0) return base;
  if (auto p = base.as<PrependName>(); p && offset <= p->head().size()) {
    if (offset == p->head().size()) return p->tail();
    return prepend(Bits(p->head().begin() + static_cast<std::ptrdiff_t>(offset), p->head().end()), p->tail());
  }
  return make_name<ShiftName>(base, offset);
}

// ---------------------------------------------------------------------------
// Scanning for a separating 1. Reading position i costs at least i + 1, so
// the scan over a zero-cost stream of zeros still terminates within fuel.

struct ScanResult {
  std::size_t index;
  Fuel cost;
};

inline std::optional<ScanResult> scan_first_one(const Name& p, Fuel fuel, std::size_t from = 0) {
  Fuel cost = 0;
  for (std::size_t i = from;; ++i) {
    if (static_cast<Fuel>(i) + 1 > fuel) return std::nullopt;
    auto b = p.probe(i, fuel);
    if (!b) return std::nullopt;
    cost = std::max({cost, b->cost, static_cast<Fuel>(i) + 1});
    if (b->bit) return ScanResult{i, cost};
  }
}

}  // namespace repspace

#endif  // REPSPACE_NAMES_HPP
