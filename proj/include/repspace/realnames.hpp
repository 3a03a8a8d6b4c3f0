#ifndef REPSPACE_REALNAMES_HPP
#define REPSPACE_REALNAMES_HPP

// Block streams over Cantor space and the rational/real codecs built on them.
//
// A block stream is a sequence of naturals v_0, v_1, ... (each >= 1), each
// written as an Elias-gamma code: z zeros followed by the z+1 binary digits
// of v. Rationals use nu(<a, b, c>) = (a - b) / (c + 1) with Cantor tripling
// cp(cp(a, b), c); a real name carries code(q_m) + 1 in block m, where
// |q_m - x| < 2^-m.

#include <deque>

#include <gmpxx.h>

#include "lazy.hpp"

namespace repspace {

// ---------------------------------------------------------------------------
// Integer and rational codes.

inline mpz_class cantor_pair_z(const mpz_class& i, const mpz_class& j) {
  mpz_class s = i + j;
  return s * (s + 1) / 2 + j;
}

inline std::pair<mpz_class, mpz_class> cantor_unpair_z(const mpz_class& k) {
  mpz_class t = 8 * k + 1, r;
  mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
  mpz_class w = (r - 1) / 2;
  mpz_class j = k - w * (w + 1) / 2;
  return {w - j, j};
}

inline mpz_class rational_code(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  mpz_class num = c.get_num(), den = c.get_den();
  mpz_class a = num > 0 ? num : mpz_class(0);
  mpz_class b = num < 0 ? mpz_class(-num) : mpz_class(0);
  return cantor_pair_z(cantor_pair_z(a, b), den - 1);
}

inline mpq_class rational_decode(const mpz_class& code) {
  auto [ab, c] = cantor_unpair_z(code);
  auto [a, b] = cantor_unpair_z(ab);
  mpq_class q(mpz_class(a - b), mpz_class(c + 1));
  q.canonicalize();
  return q;
}

inline std::size_t gamma_length(const mpz_class& v) { return 2 * mpz_sizeinbase(v.get_mpz_t(), 2) - 1; }

inline bool gamma_bit(const mpz_class& v, std::size_t j) {
  std::size_t width = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (j + 1 < width) return false;
  std::size_t k = j - (width - 1);  // 0 is the leading 1
  return mpz_tstbit(v.get_mpz_t(), width - 1 - k) != 0;
}

inline Bits gamma_bits(const mpz_class& v) {
  Bits out(gamma_length(v));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = gamma_bit(v, j);
  return out;
}

/// Nearest point of the grid 2^-p Z (ties upward).
inline mpq_class round_dyadic(const mpq_class& q, unsigned p) {
  mpq_class scaled = q;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), p);
  scaled += mpq_class(1, 2);
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpq_class out(k);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), p);
  return out;
}

inline mpq_class pow2(long e) {
  mpq_class r(1);
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  return r;
}

inline mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + std::string(text));
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Block streams.

struct Block {
  mpz_class value;
  std::size_t end;  // one past the block's last bit
  Fuel cost;        // exact: covers the block's bits and all earlier blocks
};

/// Produces block m from a fuel-bounded computation. The producer returns the
/// value with the exact cost of computing it, or nullopt when that cost
/// exceeds the fuel.
class BlockStreamName final : public NameImpl {
 public:
  using Producer = std::function<std::optional<std::pair<mpz_class, Fuel>>(std::size_t, Fuel)>;

  explicit BlockStreamName(Producer p, std::string label = "block stream")
      : producer_(std::move(p)), label_(std::move(label)) {}

  std::optional<Block> block(std::size_t m, Fuel fuel) const {
    std::lock_guard lock(mutex_);
    while (blocks_.size() <= m) {
      if (!extend(fuel)) return std::nullopt;
    }
    if (blocks_[m].cost > fuel) return std::nullopt;
    return blocks_[m];
  }

  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    std::lock_guard lock(mutex_);
    while (blocks_.empty() || blocks_.back().end <= n) {
      if (!blocks_.empty() && blocks_.back().cost > fuel) return std::nullopt;
      if (!extend(fuel)) return std::nullopt;
    }
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), n,
                               [](std::size_t pos, const Block& b) { return pos < b.end; });
    std::size_t start = it == blocks_.begin() ? 0 : std::prev(it)->end;
    if (it->cost > fuel) return std::nullopt;
    return Probe{gamma_bit(it->value, n - start), it->cost};
  }

  std::string describe() const override { return label_; }

 private:
  bool extend(Fuel fuel) const {
    if (!blocks_.empty() && blocks_.back().cost > fuel) return false;
    auto r = producer_(blocks_.size(), fuel);
    if (!r) return false;
    std::size_t start = blocks_.empty() ? 0 : blocks_.back().end;
    Fuel prev = blocks_.empty() ? 0 : blocks_.back().cost;
    std::size_t end = start + gamma_length(r->first);
    blocks_.push_back({std::move(r->first), end, std::max({prev, r->second, static_cast<Fuel>(end)})});
    return true;
  }

  Producer producer_;
  std::string label_;
  mutable std::recursive_mutex mutex_;
  mutable std::deque<Block> blocks_;
};

inline Name block_stream(BlockStreamName::Producer p, std::string label = "block stream") {
  return make_name<BlockStreamName>(std::move(p), std::move(label));
}

/// A stream repeating one block forever.
inline Name constant_block_stream(const mpz_class& v) { return periodic(gamma_bits(v)); }

/// Sequential reader of the blocks of an arbitrary name. Not synchronized;
/// owners serialize access.
class BlockDecoder {
 public:
  explicit BlockDecoder(Name n) : name_(std::move(n)) {
    source_ = name_.as<BlockStreamName>();
    if (auto p = name_.as<PeriodicName>(); p && p->word().empty()) detect_constant(p->period());
  }

  /// nullptr when block m is unavailable at `fuel`.
  const Block* block(std::size_t m, Fuel fuel) {
    if (constant_) {
      Fuel end = static_cast<Fuel>((m + 1) * constant_len_);
      if (end > fuel) return nullptr;
      scratch_ = {*constant_, static_cast<std::size_t>(end), end};
      return &scratch_;
    }
    while (cache_.size() <= m) {
      if (!cache_.empty() && cache_.back().cost > fuel) return nullptr;
      if (!extend(fuel)) return nullptr;
    }
    return cache_[m].cost <= fuel ? &cache_[m] : nullptr;
  }

  const std::optional<mpz_class>& constant() const { return constant_; }
  std::size_t constant_length() const { return constant_len_; }
  const Name& name() const { return name_; }

 private:
  void detect_constant(const Bits& period) {
    std::size_t z = 0;
    while (z < period.size() && !period[z]) ++z;
    if (z >= period.size() || period.size() != 2 * z + 1) return;
    mpz_class v = 0;
    for (std::size_t i = z; i < period.size(); ++i) v = 2 * v + (period[i] ? 1 : 0);
    constant_ = v;
    constant_len_ = period.size();
  }

  bool extend(Fuel fuel) {
    if (source_) {
      auto b = source_->block(cache_.size(), fuel);
      if (!b) return false;
      cache_.push_back(std::move(*b));
      return true;
    }
    std::size_t pos = cache_.empty() ? 0 : cache_.back().end;
    Fuel cost = cache_.empty() ? 0 : cache_.back().cost;
    auto read = [&](bool& bit) {
      if (static_cast<Fuel>(pos) + 1 > fuel) return false;
      auto p = name_.probe(pos, fuel);
      if (!p) return false;
      cost = std::max({cost, p->cost, static_cast<Fuel>(pos) + 1});
      bit = p->bit;
      ++pos;
      return true;
    };
    std::size_t z = 0;
    bool bit = false;
    for (;;) {
      if (!read(bit)) return false;
      if (bit) break;
      ++z;
    }
    mpz_class v = 1;
    for (std::size_t i = 0; i < z; ++i) {
      if (!read(bit)) return false;
      v = 2 * v + (bit ? 1 : 0);
    }
    cache_.push_back({std::move(v), pos, cost});
    return true;
  }

  Name name_;
  const BlockStreamName* source_ = nullptr;
  std::optional<mpz_class> constant_;
  std::size_t constant_len_ = 0;
  Block scratch_;
  std::deque<Block> cache_;
};

// ---------------------------------------------------------------------------
// Real names.

struct Approx {
  const mpq_class* q;
  Fuel cost;
};

/// Reads q_m from a real name; caches decoded rationals.
class RealReader {
 public:
  explicit RealReader(Name n) : dec_(std::move(n)) {
    if (dec_.constant()) constant_q_ = rational_decode(*dec_.constant() - 1);
  }

  std::optional<Approx> approx(std::size_t m, Fuel fuel) {
    auto b = dec_.block(m, fuel);
    if (!b) return std::nullopt;
    if (constant_q_) return Approx{&*constant_q_, b->cost};
    while (qs_.size() <= m) qs_.emplace_back();
    if (!qs_[m]) qs_[m] = rational_decode(b->value - 1);
    return Approx{&*qs_[m], b->cost};
  }

  const std::optional<mpq_class>& constant() const { return constant_q_; }
  std::size_t constant_length() const { return dec_.constant_length(); }

 private:
  BlockDecoder dec_;
  std::optional<mpq_class> constant_q_;
  std::deque<std::optional<mpq_class>> qs_;
};

inline Name real_const(const mpq_class& q) { return constant_block_stream(rational_code(q) + 1); }

using RealProducer = std::function<std::optional<std::pair<mpq_class, Fuel>>(std::size_t, Fuel)>;

inline Name real_source(RealProducer p, std::string label = "real") {
  return block_stream(
      [p = std::move(p)](std::size_t m, Fuel fuel) -> std::optional<std::pair<mpz_class, Fuel>> {
        auto r = p(m, fuel);
        if (!r) return std::nullopt;
        return std::pair{rational_code(r->first) + 1, r->second};
      },
      std::move(label));
}

namespace detail {

struct BinaryReal {
  std::mutex mutex;
  RealReader x, y;
  BinaryReal(Name a, Name b) : x(std::move(a)), y(std::move(b)) {}
};

}  // namespace detail

inline bool is_dyadic(const mpq_class& q) { return mpz_popcount(q.get_den_mpz_t()) == 1; }

/// x + y or x - y. A constant operand is exact, so q_m = x_m +- c. Otherwise
/// q_m = x_{m+1} +- y_{m+1} when that is dyadic, else the sum at m + 2 rounded
/// to the 2^-(m+2) grid.
inline Name real_add(Name x, Name y, bool subtract = false) {
  auto st = std::make_shared<detail::BinaryReal>(std::move(x), std::move(y));
  return real_source(
      [st, subtract](std::size_t m, Fuel fuel) -> std::optional<std::pair<mpq_class, Fuel>> {
        std::lock_guard lock(st->mutex);
        auto combine = [subtract](const mpq_class& a, const mpq_class& b) { return subtract ? mpq_class(a - b) : mpq_class(a + b); };
        const bool exact = st->x.constant() || st->y.constant();
        auto a = st->x.approx(exact ? m : m + 1, fuel);
        if (!a) return std::nullopt;
        auto b = st->y.approx(exact ? m : m + 1, fuel);
        if (!b) return std::nullopt;
        mpq_class s = combine(*a->q, *b->q);
        if (exact || is_dyadic(s)) return std::pair{s, std::max(a->cost, b->cost)};
        a = st->x.approx(m + 2, fuel);
        if (!a) return std::nullopt;
        b = st->y.approx(m + 2, fuel);
        if (!b) return std::nullopt;
        return std::pair{round_dyadic(combine(*a->q, *b->q), static_cast<unsigned>(m + 2)), std::max(a->cost, b->cost)};
      },
      subtract ? "real sub" : "real add");
}

inline Name real_sub(Name x, Name y) { return real_add(std::move(x), std::move(y), true); }

/// x * y: with 2^k >= |x_0| + |y_0| + 3, q_m = x_{m+k} * y_{m+k}. A constant
/// factor c needs only 2^k >= |c| on the other side.
inline Name real_mul(Name x, Name y) {
  auto st = std::make_shared<detail::BinaryReal>(std::move(x), std::move(y));
  return real_source(
      [st](std::size_t m, Fuel fuel) -> std::optional<std::pair<mpq_class, Fuel>> {
        std::lock_guard lock(st->mutex);
        auto a0 = st->x.approx(0, fuel);
        if (!a0) return std::nullopt;
        auto b0 = st->y.approx(0, fuel);
        if (!b0) return std::nullopt;
        mpq_class bound;
        if (st->x.constant()) bound = abs(*st->x.constant());
        else if (st->y.constant()) bound = abs(*st->y.constant());
        else bound = abs(*a0->q) + abs(*b0->q) + 3;
        std::size_t k = 0;
        while (pow2(static_cast<long>(k)) < bound) ++k;
        std::size_t j = m + k;
        auto a = st->x.approx(j, fuel);
        if (!a) return std::nullopt;
        auto b = st->y.approx(j, fuel);
        if (!b) return std::nullopt;
        Fuel cost = std::max({a0->cost, b0->cost, a->cost, b->cost});
        return std::pair{mpq_class(*a->q * *b->q), cost};
      },
      "real mul");
}

/// Semidecides x < y: stage n holds iff some m has q_m(x) and q_m(y) both
/// available at fuel n and q_m(x) + 2^-m < q_m(y) - 2^-m. A constant side
/// is exact and contributes no 2^-m. Once q_m(x) - 2^-m > q_m(y) + 2^-m the
/// names force x > y, so no later m can separate and reading stops.
inline Name real_less(Name x, Name y) {
  struct State {
    RealReader x, y;
    std::size_t next_m = 0;
    std::optional<Fuel> best;  // least cost of a separating m seen so far
    bool refuted = false;
    State(Name a, Name b) : x(std::move(a)), y(std::move(b)) {}
  };
  auto st = std::make_shared<State>(std::move(x), std::move(y));
  return stage_name(
      [st](Fuel n) -> bool {
        if (st->x.constant() && st->y.constant()) {
          const mpq_class diff = *st->y.constant() - *st->x.constant();
          if (diff <= 0) return false;
          Fuel len = std::max(st->x.constant_length(), st->y.constant_length());
          if (n < len) return false;
          Fuel m = n / len - 1;
          mpq_class scaled = diff;
          mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<unsigned long>(m));
          return scaled > 2;
        }
        if (st->best && *st->best <= n) return true;
        if (st->refuted) return false;
        const int slack = st->x.constant() || st->y.constant() ? 1 : 2;
        for (;; ++st->next_m) {
          auto a = st->x.approx(st->next_m, n);
          if (!a) return false;
          auto b = st->y.approx(st->next_m, n);
          if (!b) return false;
          mpq_class scaled = *b->q - *a->q;
          mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<unsigned long>(st->next_m));
          if (scaled < -slack && !st->best) {
            st->refuted = true;
            return false;
          }
          if (scaled > 0) {
            if (scaled > slack) {
              Fuel c = std::max(a->cost, b->cost);
              st->best = st->best ? std::min(*st->best, c) : c;
              ++st->next_m;
              return true;
            }
          }
        }
      },
      "real less");
}

/// Necessary validity condition on a real name up to index n:
/// |q_m - q_{m+1}| < 2^-m + 2^-(m+1).
inline std::optional<bool> check_real_name(const Name& x, std::size_t n, Fuel fuel) {
  RealReader r(x);
  for (std::size_t m = 0; m < n; ++m) {
    auto a = r.approx(m, fuel);
    if (!a) return std::nullopt;
    mpq_class qa = *a->q;
    auto b = r.approx(m + 1, fuel);
    if (!b) return std::nullopt;
    if (abs(qa - *b->q) >= pow2(-static_cast<long>(m)) + pow2(-static_cast<long>(m + 1))) return false;
  }
  return true;
}

/// q_n of a real name, if available.
inline std::optional<mpq_class> real_approx(const Name& x, std::size_t n, Fuel fuel) {
  RealReader r(x);
  auto a = r.approx(n, fuel);
  if (!a) return std::nullopt;
  return *a->q;
}

// ---------------------------------------------------------------------------
// One-sided reals: enumerations of rationals. Element e is 0 (skip) or
// code(q) + 1; the block carries e + 1.

using EnumProducer = std::function<std::optional<std::pair<std::optional<mpq_class>, Fuel>>(std::size_t, Fuel)>;

inline Name enumeration_source(EnumProducer p, std::string label = "enumeration") {
  return block_stream(
      [p = std::move(p)](std::size_t m, Fuel fuel) -> std::optional<std::pair<mpz_class, Fuel>> {
        auto r = p(m, fuel);
        if (!r) return std::nullopt;
        mpz_class e = r->first ? mpz_class(rational_code(*r->first) + 1) : mpz_class(0);
        return std::pair{mpz_class(e + 1), r->second};
      },
      std::move(label));
}

/// Element m of an enumeration: outer nullopt when unavailable, inner nullopt
/// for a skip.
class EnumReader {
 public:
  explicit EnumReader(Name n) : dec_(std::move(n)) {}

  std::optional<std::pair<std::optional<mpq_class>, Fuel>> element(std::size_t m, Fuel fuel) {
    auto b = dec_.block(m, fuel);
    if (!b) return std::nullopt;
    mpz_class e = b->value - 1;
    if (e == 0) return std::pair{std::optional<mpq_class>{}, b->cost};
    return std::pair{std::optional<mpq_class>{rational_decode(e - 1)}, b->cost};
  }

 private:
  BlockDecoder dec_;
};

}  // namespace repspace

#endif  // REPSPACE_REALNAMES_HPP
