#include "ktgraph/random.hpp"

namespace ktg {

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

RandomStream RandomStream::derive(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  RandomStream stream(0);
  stream.engine_.seed(seq);
  return stream;
}

double RandomStream::uniform() { return unit_(engine_); }

double RandomStream::normal() { return gauss_(engine_); }

}  // namespace ktg
