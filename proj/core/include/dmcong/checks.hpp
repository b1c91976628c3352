#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmcong/descriptor.hpp"
#include "dmcong/finitary.hpp"
#include "dmcong/monoid.hpp"

namespace dmcong {

  //! Outcome of one property, with the first counterexample if any.
  struct CheckResult {
    std::string   name;
    std::uint64_t cases    = 0;
    std::uint64_t failures = 0;
    std::string   counterexample;

    [[nodiscard]] bool ok() const noexcept {
      return failures == 0;
    }
  };

  using CheckReport = std::vector<CheckResult>;

  bool all_ok(CheckReport const& r);

  //! Symmetric-difference inequalities (and drank bounds for T) on random
  //! triples drawn from the family at degree n.
  CheckResult check_inequalities(Family family, std::uint32_t n, std::uint64_t samples, std::uint64_t seed);

  //! The default run: P_5, PB_6 and T_5.
  CheckReport check_inequalities(std::uint64_t samples, std::uint64_t seed);

  //! Green's relations from the closed-form predicates against principal
  //! ideals computed from the table.  `m` must have a table.
  CheckResult check_green(FiniteMonoid const& m);

  struct OrderCheckOptions {
    std::uint32_t n_max          = 4;
    std::uint64_t random_triples = 100'000;
    std::uint64_t seed           = 1;
    Flavor        flavor         = Flavor::partition_like;
  };

  //! Order, meet/join and distributivity of the descriptor lattice at |X|.
  CheckReport check_order(CardinalContext const& ctx, OrderCheckOptions const& opts = {});

  //! Partial order, glb/lub and distributivity of the reversal lattice.
  CheckReport check_reversals(CardinalContext const& ctx);

  //! Every profile that passes profile_violation with ranks in
  //! [0, n_max] ∪ [ℵ0, |X|] and differences in {0, 2, ..., d_max} ∪ [ℵ0, |X|].
  std::vector<PairProfile> profile_sweep(CardinalContext const& ctx,
                                         std::uint32_t          n_max,
                                         std::uint32_t          d_max = 8);

  //! principal_descriptor over the non-equal profiles of a sweep.
  std::vector<CongruenceDescriptor> principal_image(std::vector<PairProfile> const& sweep);

  //! For each member of `ds`, the least k <= k_max such that some k of
  //! `principals` join to it (0 for the least element); nullopt if none.
  //! Every principal must belong to `ds`.
  std::vector<std::optional<std::uint32_t>> crank_by_joins(
      std::vector<CongruenceDescriptor> const& ds,
      std::vector<CongruenceDescriptor> const& principals,
      std::uint32_t                            k_max);

  //! Principal descriptors against membership and crank, and membership
  //! against the order.
  CheckReport check_bridge(CardinalContext const& ctx, std::uint32_t n_max = 4);

  std::string format_report(std::string const& suite, CheckReport const& r);

}  // namespace dmcong
