#pragma once

#include <cstdint>

namespace bidiag {

/// Tallies of scalar floating-point operations performed by a kernel.
struct OpCount {
  std::uint64_t adds = 0;
  std::uint64_t subs = 0;
  std::uint64_t muls = 0;
  std::uint64_t divs = 0;

  std::uint64_t total() const noexcept { return adds + subs + muls + divs; }

  OpCount& operator+=(const OpCount& o) noexcept {
    adds += o.adds;
    subs += o.subs;
    muls += o.muls;
    divs += o.divs;
    return *this;
  }
  friend bool operator==(const OpCount&, const OpCount&) = default;
};

namespace detail {
inline thread_local OpCount* active_sink = nullptr;
}

/// Routes every Counted operation on this thread into `sink` while alive.
class CountingScope {
 public:
  explicit CountingScope(OpCount& sink) noexcept : prev_(detail::active_sink) {
    detail::active_sink = &sink;
  }
  ~CountingScope() { detail::active_sink = prev_; }
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

 private:
  OpCount* prev_;
};

/// A double that reports each arithmetic operation to the thread's active
/// CountingScope. Kernels are written once as templates over the scalar
/// type; instantiating them with plain double gives uninstrumented code.
class Counted {
 public:
  constexpr Counted() = default;
  constexpr Counted(double v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  constexpr double value() const noexcept { return v_; }
  explicit constexpr operator double() const noexcept { return v_; }

  friend Counted operator+(Counted a, Counted b) {
    if (auto* s = detail::active_sink) ++s->adds;
    return Counted(a.v_ + b.v_);
  }
  friend Counted operator-(Counted a, Counted b) {
    if (auto* s = detail::active_sink) ++s->subs;
    return Counted(a.v_ - b.v_);
  }
  friend Counted operator*(Counted a, Counted b) {
    if (auto* s = detail::active_sink) ++s->muls;
    return Counted(a.v_ * b.v_);
  }
  friend Counted operator/(Counted a, Counted b) {
    if (auto* s = detail::active_sink) ++s->divs;
    return Counted(a.v_ / b.v_);
  }
  Counted& operator+=(Counted o) { return *this = *this + o; }
  Counted& operator-=(Counted o) { return *this = *this - o; }
  Counted& operator*=(Counted o) { return *this = *this * o; }
  Counted& operator/=(Counted o) { return *this = *this / o; }

  friend bool operator<(Counted a, Counted b) noexcept { return a.v_ < b.v_; }
  friend bool operator==(Counted a, Counted b) noexcept { return a.v_ == b.v_; }

 private:
  double v_ = 0.0;
};

inline double to_double(double v) noexcept { return v; }
inline double to_double(Counted v) noexcept { return v.value(); }

}  // namespace bidiag
