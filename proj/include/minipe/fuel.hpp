#pragma once

#include <cstddef>
#include <variant>

namespace minipe {

inline constexpr std::size_t kDefaultFuel = 10'000;

// Bound on nested function applications (host recursion). Exceeding it is
// reported exactly like running out of fuel.
inline constexpr std::size_t kDefaultDepthLimit = 2'000;

// Outcome marker for a run that used up its budget.
struct FuelExhausted {
  friend bool operator==(FuelExhausted, FuelExhausted) { return true; }
};

template <class T>
using OrFuelExhausted = std::variant<T, FuelExhausted>;

namespace detail {
struct OutOfFuel {};
}  // namespace detail

// Mutable budget threaded through one evaluation or specialization run.
class Fuel {
 public:
  explicit Fuel(std::size_t units = kDefaultFuel, std::size_t depthLimit = kDefaultDepthLimit)
      : remaining_(units), depthLimit_(depthLimit) {}

  // Throws detail::OutOfFuel when empty.
  void consume() {
    if (remaining_ == 0) throw detail::OutOfFuel{};
    --remaining_;
  }

  std::size_t remaining() const { return remaining_; }
  std::size_t depth() const { return depth_; }

  class Nesting {
   public:
    explicit Nesting(Fuel& fuel) : fuel_(fuel) {
      if (fuel_.depth_ >= fuel_.depthLimit_) throw detail::OutOfFuel{};
      ++fuel_.depth_;
    }
    ~Nesting() { --fuel_.depth_; }
    Nesting(const Nesting&) = delete;
    Nesting& operator=(const Nesting&) = delete;

   private:
    Fuel& fuel_;
  };

  // One unit of fuel plus one level of nesting for the returned guard's lifetime.
  [[nodiscard]] Nesting enter() {
    consume();
    return Nesting(*this);
  }

 private:
  std::size_t remaining_;
  std::size_t depthLimit_;
  std::size_t depth_ = 0;
};

}  // namespace minipe
