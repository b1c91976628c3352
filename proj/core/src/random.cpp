#include "dmcong/random.hpp"

#include <algorithm>
#include <numeric>

#include "dmcong/error.hpp"

namespace dmcong {

  namespace {
    std::uint32_t draw(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
      return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
    }

    Partition random_p(std::uint32_t n, Rng& rng) {
      std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
      auto const                 k = draw(rng, 1, 2 * n);
      for (auto& l : labels) {
        l = draw(rng, 0, k - 1);
      }
      return Partition::from_labels(n, std::move(labels));
    }

    // Pairs up a shuffled vertex list; `all_pairs` forces a perfect matching.
    Partition random_matching(std::uint32_t n, Rng& rng, bool all_pairs) {
      std::vector<std::uint32_t> order(2 * static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0u);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::uint32_t> labels(order.size());
      auto const                 pair_bias = draw(rng, 0, 4);
      std::uint32_t              next      = 0;
      for (std::size_t i = 0; i < order.size();) {
        bool const pair = i + 1 < order.size() && (all_pairs || draw(rng, 0, 3) < pair_bias);
        labels[order[i]] = next;
        if (pair) {
          labels[order[i + 1]] = next;
          i += 2;
        } else {
          i += 1;
        }
        ++next;
      }
      return Partition::from_labels(n, std::move(labels));
    }

    Partition random_t(std::uint32_t n, Rng& rng) {
      // Image size first, then a function onto a random subset of that size.
      auto const                 size = draw(rng, 1, n);
      std::vector<std::uint32_t> targets(n);
      std::iota(targets.begin(), targets.end(), 0u);
      std::shuffle(targets.begin(), targets.end(), rng);
      targets.resize(size);
      std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
      for (std::uint32_t j = 0; j < n; ++j) {
        labels[n + j] = n + j;
      }
      for (std::uint32_t i = 0; i < n; ++i) {
        labels[i] = n + targets[draw(rng, 0, size - 1)];
      }
      return Partition::from_labels(n, std::move(labels));
    }

    Partition random_i(std::uint32_t n, Rng& rng) {
      auto const                 size = draw(rng, 0, n);
      std::vector<std::uint32_t> dom(n);
      std::vector<std::uint32_t> img(n);
      std::iota(dom.begin(), dom.end(), 0u);
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(dom.begin(), dom.end(), rng);
      std::shuffle(img.begin(), img.end(), rng);
      std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
      std::iota(labels.begin(), labels.end(), 0u);
      for (std::uint32_t i = 0; i < size; ++i) {
        labels[n + img[i]] = labels[dom[i]];
      }
      return Partition::from_labels(n, std::move(labels));
    }
  }  // namespace

  Partition random_element(Family family, std::uint32_t n, Rng& rng) {
    if (n == 0) {
      return Partition();
    }
    switch (family) {
      case Family::P:
        return random_p(n, rng);
      case Family::PB:
        return random_matching(n, rng, false);
      case Family::B:
        return random_matching(n, rng, true);
      case Family::T:
        return random_t(n, rng);
      case Family::I:
        return random_i(n, rng);
    }
    throw InvalidArgument("random_element: unknown family");
  }

}  // namespace dmcong
