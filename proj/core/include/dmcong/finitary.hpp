#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "dmcong/cardinal.hpp"
#include "dmcong/normal_subgroup.hpp"
#include "dmcong/partition.hpp"

namespace dmcong {

  //! Behaviour of every point beyond the window.
  enum class Tail : std::uint8_t {
    //! {x, x'} for every x > w.
    identity,
    //! {x} and {x'} for every x > w.
    singleton
  };

  //! A partition of X ∪ X' (X infinite) that is trivial outside the first w
  //! points.  Kept canonical: w is as small as possible.
  class FinitaryPartition {
   public:
    FinitaryPartition(CardinalContext const& ctx, Partition core, Tail tail);

    [[nodiscard]] CardinalContext const& context() const noexcept {
      return _ctx;
    }
    [[nodiscard]] Partition const& core() const noexcept {
      return _core;
    }
    [[nodiscard]] std::uint32_t window() const noexcept {
      return _core.degree();
    }
    [[nodiscard]] Tail tail() const noexcept {
      return _tail;
    }

    //! The core extended by tail columns up to degree w >= window().
    [[nodiscard]] Partition widened(std::uint32_t w) const;

    bool operator==(FinitaryPartition const&) const = default;

   private:
    CardinalContext _ctx;
    Partition       _core;
    Tail            _tail;
  };

  //! ε_X
  FinitaryPartition fin_identity(CardinalContext const& ctx);
  //! The partition with only singleton blocks.
  FinitaryPartition fin_all_singletons(CardinalContext const& ctx);
  //! ε_{X∖F} for F = {1, ..., f}.
  FinitaryPartition fin_cofinite_identity(CardinalContext const& ctx, std::uint32_t f);
  //! ε_Y for Y = {1, ..., y}.
  FinitaryPartition fin_finite_identity(CardinalContext const& ctx, std::uint32_t y);

  FinitaryPartition compose_fin(FinitaryPartition const& a, FinitaryPartition const& b);

  struct FinStats {
    Cardinal       rank;
    PartitionStats window;
  };

  FinStats fin_stats(FinitaryPartition const& a);

  //! The quantities of a pair (α, β) that decide congruence membership and
  //! principal congruences.
  struct PairProfile {
    CardinalContext          context{aleph0};
    bool                     equal     = false;
    Cardinal                 rank_a    = Cardinal::fin(0);
    Cardinal                 rank_b    = Cardinal::fin(0);
    bool                     h_related = false;
    std::optional<CycleType> phi_type;
    Cardinal                 d_total   = Cardinal::fin(0);
    Cardinal                 d_over    = Cardinal::fin(0);
    Cardinal                 d_under   = Cardinal::fin(0);

    bool operator==(PairProfile const&) const = default;
  };

  PairProfile pair_profile(FinitaryPartition const& a, FinitaryPartition const& b);

  //! The reason a profile cannot come from a pair of partitions, if any.
  std::optional<std::string> profile_violation(PairProfile const& p);

  //! Returns `p` after checking it; throws InvalidArgument on a violation.
  PairProfile synth_profile(PairProfile const& p);

  //! The same pair with α and β exchanged.
  PairProfile swapped(PairProfile const& p);

  std::string to_string(PairProfile const& p);

  //! `<core> | tail=identity|singleton | X=aleph_m`
  std::string       to_string(FinitaryPartition const& a);
  FinitaryPartition parse_finitary(std::string_view text);
  std::ostream&     operator<<(std::ostream& os, FinitaryPartition const& a);

}  // namespace dmcong
