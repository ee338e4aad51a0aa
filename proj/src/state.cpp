#include "amoebot/state.hpp"

#include <string>

namespace amoebot {

namespace {

class BitWriter {
 public:
  void put(std::uint64_t value, int width, const char* field) {
    if (width < 64 && value >> width != 0) {
      throw StateOverflow(std::string("field '") + field + "' value " + std::to_string(value) + " exceeds " +
                          std::to_string(width) + " bits");
    }
    for (int i = 0; i < width; ++i) {
      if (bit_ % 8 == 0) bytes_.push_back(0);
      if ((value >> i) & 1U) bytes_.back() = static_cast<std::uint8_t>(bytes_.back() | (1U << (bit_ % 8)));
      ++bit_;
    }
  }
  void flag(bool b, const char* field) { put(b ? 1 : 0, 1, field); }

  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_ = 0;
};

int digit_width(int radix) {
  int w = 1;
  while ((1LL << w) < radix) ++w;
  return w;
}

void put_digit(BitWriter& out, int digit, int radix, int width, const char* field) {
  if (digit >= radix) throw StateOverflow(std::string("field '") + field + "' outside radix");
  out.put(static_cast<std::uint64_t>(digit), width, field);
}

void put_channel(BitWriter& out, const SolitudeChannel& ch) {
  out.flag(ch.running, "solitude.running");
  const bool has = ch.walker.has_value();
  const SolitudeActivation w = has ? *ch.walker : SolitudeActivation{};
  out.flag(has, "walker.present");
  out.flag(w.returning, "walker.returning");
  out.flag(w.departed, "walker.departed");
  out.put(static_cast<std::uint64_t>(w.heading), 3, "walker.heading");
  out.put(static_cast<std::uint64_t>(w.x), 2, "walker.x");
  out.put(static_cast<std::uint64_t>(w.y), 2, "walker.y");
  out.put(static_cast<std::uint64_t>(w.end_agent_id), 2, "walker.end_agent_id");
  for (const auto& per_axis : ch.vectors) {
    for (const auto& fifo : per_axis) {
      out.put(fifo.size(), 2, "vector.count");
      for (std::size_t i = 0; i < fifo.capacity; ++i) out.flag(i < fifo.size() && fifo[i].settled, "vector.settled");
    }
  }
}

void put_boundary_id(BitWriter& out, const std::optional<BoundaryIdToken>& t) {
  out.flag(t.has_value(), "boundary_id.present");
  out.put(t ? static_cast<std::uint64_t>(t->k_mod5) : 0, 3, "boundary_id.k_mod5");
  out.flag(t && t->departed, "boundary_id.departed");
}

void put_coins(BitWriter& out, const BoundedFifo<CoinToken, 2>& fifo) {
  out.put(fifo.size(), 2, "coin.count");
  for (std::size_t i = 0; i < fifo.capacity; ++i) {
    const CoinToken c = i < fifo.size() ? fifo[i] : CoinToken{};
    out.flag(c.heads, "coin.heads");
    out.put(static_cast<std::uint64_t>(c.epoch_mod4), 2, "coin.epoch");
  }
}

}  // namespace

std::vector<std::uint8_t> serialize_agent_state(const AgentStatic& fixed, const AgentElectionState& el,
                                                const AlmostSureState* backup, int radix) {
  const int dw = digit_width(radix);
  BitWriter out;
  out.put(static_cast<std::uint64_t>(fixed.agent_id), 2, "agent_id");
  out.put(static_cast<std::uint64_t>(fixed.pred_port), 3, "pred_port");
  out.put(static_cast<std::uint64_t>(fixed.succ_port), 3, "succ_port");
  out.put(static_cast<std::uint64_t>(fixed.empty_seq_len), 3, "empty_seq_len");

  out.put(static_cast<std::uint64_t>(el.role), 3, "role");
  out.flag(el.digit >= 0, "digit.present");
  put_digit(out, el.digit >= 0 ? el.digit : 0, radix, dw, "digit");
  out.flag(el.reversed_digit >= 0, "reversed.present");
  put_digit(out, el.reversed_digit >= 0 ? el.reversed_digit : 0, radix, dw, "reversed_digit");
  out.flag(el.digit_read, "digit_read");
  out.flag(el.id_setup_complete, "id_setup_complete");
  out.flag(el.emitted, "emitted");
  out.flag(el.active, "active");
  out.put(static_cast<std::uint64_t>(el.comparison), 2, "comparison");
  out.flag(el.longer_seen, "longer_seen");
  out.flag(el.withdraw_after_solitude, "withdraw_after_solitude");
  out.flag(el.frozen, "frozen");

  out.flag(el.id_setup.has_value(), "id_setup.present");
  out.put(el.id_setup ? static_cast<std::uint64_t>(el.id_setup->mode) : 0, 3, "id_setup.mode");
  out.flag(el.id_setup && el.id_setup->carried >= 0, "id_setup.carried.present");
  put_digit(out, el.id_setup && el.id_setup->carried >= 0 ? el.id_setup->carried : 0, radix, dw, "id_setup.carried");

  out.put(el.comparison_fifo.size(), 2, "comparison.count");
  for (std::size_t i = 0; i < el.comparison_fifo.capacity; ++i) {
    const DigitToken t = i < el.comparison_fifo.size() ? el.comparison_fifo[i] : DigitToken{};
    put_digit(out, t.digit, radix, dw, "digit_token.digit");
    out.flag(t.delimiter, "digit_token.delimiter");
    out.flag(t.active, "digit_token.active");
    out.flag(t.released, "digit_token.released");
    out.put(static_cast<std::uint64_t>(t.highest_diff), 2, "digit_token.highest_diff");
  }
  put_channel(out, el.solitude);
  put_boundary_id(out, el.boundary_id);

  if (backup != nullptr) {
    out.put(static_cast<std::uint64_t>(backup->role), 2, "backup.role");
    out.put(static_cast<std::uint64_t>(backup->stage), 3, "backup.stage");
    out.put(static_cast<std::uint64_t>(backup->epoch_mod4), 2, "backup.epoch");
    out.flag(backup->flip_heads, "backup.flip");
    put_coins(out, backup->from_pred);
    put_coins(out, backup->from_succ);
    put_coins(out, backup->to_pred);
    put_coins(out, backup->to_succ);
    put_channel(out, backup->solitude);
    put_boundary_id(out, backup->boundary_id);
    out.flag(backup->stop.has_value(), "stop.present");
    out.flag(backup->stop && backup->stop->leader_seen, "stop.leader_seen");
    out.flag(backup->stop && backup->stop->departed, "stop.departed");
  }
  return out.take();
}

}  // namespace amoebot
