#pragma once

#include "blockrec/model.hpp"
#include "blockrec/random.hpp"

namespace blockrec {

// One entry through the cascade: erasure draw first, then (if kept) the flip
// draw.
inline Symbol pass_entry(Bit bit, const ChannelParams& ch, RandomStream& rng) {
  if (rng.bernoulli(ch.epsilon)) return Symbol::Erased;
  if (rng.bernoulli(ch.p)) bit ^= 1U;
  return static_cast<Symbol>(bit);
}

// Entries are processed in row-major order from the single stream `rng`.
ObservedMatrix transmit(const BlockConstantMatrix& x, const ChannelParams& ch, RandomStream& rng);

// Same channel applied to an explicit bit matrix; throws std::invalid_argument
// if `clean` already contains erasures.
ObservedMatrix transmit(const ObservedMatrix& clean, const ChannelParams& ch, RandomStream& rng);

}  // namespace blockrec
