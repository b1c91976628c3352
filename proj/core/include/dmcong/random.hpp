#pragma once

#include <cstdint>
#include <random>

#include "dmcong/monoid.hpp"
#include "dmcong/partition.hpp"

namespace dmcong {

  using Rng = std::mt19937_64;

  //! A random element of the family at degree n.  Not uniform: block
  //! counts are drawn first so that every rank occurs often.
  Partition random_element(Family family, std::uint32_t n, Rng& rng);

}  // namespace dmcong
