#include "blockrec/channel.hpp"

#include <stdexcept>

namespace blockrec {

ObservedMatrix transmit(const BlockConstantMatrix& x, const ChannelParams& ch, RandomStream& rng) {
  ch.validate();
  ObservedMatrix y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < x.cols(); ++k) y(i, k) = pass_entry(x.entry(i, k), ch, rng);
  }
  return y;
}

ObservedMatrix transmit(const ObservedMatrix& clean, const ChannelParams& ch, RandomStream& rng) {
  ch.validate();
  if (clean.has_erasures()) {
    throw std::invalid_argument("channel input must be a fully observed bit matrix");
  }
  ObservedMatrix y(clean.rows(), clean.cols());
  for (std::size_t i = 0; i < clean.rows(); ++i) {
    for (std::size_t k = 0; k < clean.cols(); ++k) {
      y(i, k) = pass_entry(static_cast<Bit>(clean(i, k)), ch, rng);
    }
  }
  return y;
}

}  // namespace blockrec
