#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace amoebot {

class CapacityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Fixed-capacity FIFO. Tokens leave in arrival order; pushing into a full
/// channel is a protocol bug and throws.
template <class T, std::size_t N>
class BoundedFifo {
 public:
  static constexpr std::size_t capacity = N;

  bool empty() const { return size_ == 0; }
  bool full() const { return size_ == N; }
  std::size_t size() const { return size_; }

  T& front() { return items_[0]; }
  const T& front() const { return items_[0]; }
  T& operator[](std::size_t i) { return items_[i]; }
  const T& operator[](std::size_t i) const { return items_[i]; }

  void push_back(const T& value) {
    if (size_ == N) throw CapacityViolation("token channel over capacity " + std::to_string(N));
    items_[size_++] = value;
  }

  T pop_front() {
    if (size_ == 0) throw std::logic_error("pop from empty token channel");
    T out = items_[0];
    for (std::size_t i = 1; i < size_; ++i) items_[i - 1] = items_[i];
    --size_;
    return out;
  }

  void clear() { size_ = 0; }

  const T* begin() const { return items_.data(); }
  const T* end() const { return items_.data() + size_; }
  T* begin() { return items_.data(); }
  T* end() { return items_.data() + size_; }

 private:
  std::array<T, N> items_{};
  std::size_t size_ = 0;
};

/// sign(agent digit - token digit), from the agent's point of view.
enum class Comparison : std::uint8_t { none, equal, agent_greater, agent_smaller };

/// One digit of a reversed identifier travelling against the cycle.
/// `uid`, `origin` and `steps` are simulator instrumentation and are not
/// part of the protocol state.
struct DigitToken {
  int digit = 0;
  bool delimiter = false;
  bool active = false;
  Comparison highest_diff = Comparison::equal;
  bool released = false;  // a segment head has forwarded it out of its own segment

  std::uint32_t uid = 0;
  int origin = -1;
  std::int64_t steps = 0;
};

enum class IdSetupMode : std::uint8_t { assign, seek_read_back, carry_to_front, carry_to_back, returning };

/// The single token that assigns a segment's digits and then copies them
/// into reversed order by walking back and forth.
struct IdSetupToken {
  IdSetupMode mode = IdSetupMode::assign;
  int carried = -1;

  int origin = -1;        // instrumentation
  std::int64_t hops = 0;  // instrumentation
  std::int64_t start_round = 0;
};

enum class AxisResult : std::uint8_t { pending, zero, nonzero };
enum class Axis : std::uint8_t { x = 0, y = 1 };
enum class Sign : std::uint8_t { positive = 0, negative = 1 };

/// Walker of one solitude verification, carrying both axis schemes.
/// `heading` is the direction of the last hop in the owner's frame.
struct SolitudeActivation {
  bool returning = false;
  bool departed = false;
  int heading = 0;
  AxisResult x = AxisResult::pending;
  AxisResult y = AxisResult::pending;
  int end_agent_id = 0;

  std::int64_t hops = 0;  // instrumentation
  std::int64_t start_round = 0;
};

struct VectorToken {
  bool settled = false;
};

struct BoundaryIdToken {
  int k_mod5 = 0;
  bool departed = false;
};

// Tokens of the almost-sure election and the stop sweep.
struct CoinToken {
  bool heads = false;
  int epoch_mod4 = 0;
};

struct StopToken {
  bool leader_seen = false;
  bool departed = false;
};

}  // namespace amoebot
