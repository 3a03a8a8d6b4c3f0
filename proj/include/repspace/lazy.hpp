#ifndef REPSPACE_LAZY_HPP
#define REPSPACE_LAZY_HPP

// Name shapes shared by the realizers: divergent names, stage names (monotone
// semidecisions exposed as Sierpinski names) and lazily resolved names.

#include "names.hpp"

namespace repspace {

/// Every bit has infinite cost.
class DivergentName final : public NameImpl {
 public:
  ProbeResult probe(std::size_t, Fuel) const override { return std::nullopt; }
  bool observe(std::size_t, Fuel) const override { return false; }
  std::string describe() const override { return "divergent"; }
};

inline Name never() {
  static const Name n = make_name<DivergentName>();
  return n;
}

/// Bit n is stage(n) at cost n. `stage` must be monotone: once true, true for
/// all larger arguments.
class StageName final : public NameImpl {
 public:
  using Stage = std::function<bool(Fuel)>;
  explicit StageName(Stage stage, std::string label = "stage")
      : stage_(std::move(stage)), label_(std::move(label)) {}

  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    if (static_cast<Fuel>(n) > fuel) return std::nullopt;
    return Probe{at(n), static_cast<Fuel>(n)};
  }

  bool observe(std::size_t limit, Fuel fuel) const override {
    if (limit == 0) return false;
    return at(std::min<Fuel>(static_cast<Fuel>(limit - 1), fuel));
  }

  std::string describe() const override { return label_; }

 private:
  bool at(Fuel n) const {
    std::lock_guard lock(mutex_);
    if (true_from_ && n >= *true_from_) return true;
    if (false_upto_ && n <= *false_upto_) return false;
    bool r = stage_(n);
    if (r) true_from_ = true_from_ ? std::min(*true_from_, n) : n;
    else false_upto_ = false_upto_ ? std::max(*false_upto_, n) : n;
    return r;
  }

  Stage stage_;
  std::string label_;
  mutable std::recursive_mutex mutex_;
  mutable std::optional<Fuel> true_from_;
  mutable std::optional<Fuel> false_upto_;
};

inline Name stage_name(StageName::Stage s, std::string label = "stage") {
  return make_name<StageName>(std::move(s), std::move(label));
}

/// A name determined by a finite amount of reading: `resolve(fuel)` either
/// yields the underlying name together with the exact cost of the reading, or
/// nullopt when that cost exceeds `fuel`. Every bit costs at least the
/// resolution cost.
class LazyName final : public NameImpl {
 public:
  using Resolution = std::pair<Name, Fuel>;
  using Resolver = std::function<std::optional<Resolution>(Fuel)>;

  explicit LazyName(Resolver r, std::string label = "lazy") : resolver_(std::move(r)), label_(std::move(label)) {}

  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    auto r = resolve(fuel);
    if (!r) return std::nullopt;
    auto p = r->first.probe(n, fuel);
    if (!p) return std::nullopt;
    return Probe{p->bit, std::max(p->cost, r->second)};
  }

  bool observe(std::size_t limit, Fuel fuel) const override {
    auto r = resolve(fuel);
    return r && r->first.observe(limit, fuel);
  }

  bool observe_half(unsigned offset, std::size_t limit, Fuel fuel) const override {
    auto r = resolve(fuel);
    return r && r->first.observe_half(offset, limit, fuel);
  }

  std::string describe() const override { return label_; }

  std::optional<Resolution> resolve(Fuel fuel) const {
    std::lock_guard lock(mutex_);
    if (resolved_) return resolved_->second <= fuel ? resolved_ : std::nullopt;
    if (failed_at_ && fuel <= *failed_at_) return std::nullopt;
    auto r = resolver_(fuel);
    if (r) {
      resolved_ = r;
      if (r->second > fuel) return std::nullopt;
    } else {
      failed_at_ = failed_at_ ? std::max(*failed_at_, fuel) : fuel;
    }
    return r;
  }

 private:
  Resolver resolver_;
  std::string label_;
  mutable std::recursive_mutex mutex_;
  mutable std::optional<Resolution> resolved_;
  mutable std::optional<Fuel> failed_at_;
};

inline Name lazy_name(LazyName::Resolver r, std::string label = "lazy") {
  return make_name<LazyName>(std::move(r), std::move(label));
}

/// Decodes a natural 0^n 1 ... : the value and the exact cost of finding it.
inline std::optional<ScanResult> read_nat(const Name& x, Fuel fuel) { return scan_first_one(x, fuel); }

}  // namespace repspace

#endif  // REPSPACE_LAZY_HPP
