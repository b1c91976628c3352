#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dmcong/cardinal.hpp"
#include "dmcong/finitary.hpp"
#include "dmcong/normal_subgroup.hpp"
#include "dmcong/poset.hpp"

namespace dmcong {

  //! One piece of a reversal: value `xi` on [previous bound, bound).
  struct Step {
    Cardinal xi;
    Cardinal bound;
    bool operator==(Step const&) const = default;
    std::strong_ordering operator<=>(Step const&) const = default;
  };

  //! An order-reversing map [η, |X|] → {1} ∪ [ℵ0, η], stored as steps
  //! (ξ_i, η_i) with ξ_1 > ... > ξ_k and η < η_1 < ... < η_k = |X|⁺.
  //! The empty reversal has η = |X|⁺ and no steps.
  struct Reversal {
    Cardinal          eta;
    std::vector<Step> steps;

    //! Ψ(κ) for κ ∈ [η, |X|].
    [[nodiscard]] Cardinal value_at(Cardinal const& kappa) const;
    //! |X|⁺ below η, Ψ(κ) from η on.
    [[nodiscard]] Cardinal extended(Cardinal const& kappa, CardinalContext const& ctx) const;
    [[nodiscard]] bool     empty() const noexcept {
      return steps.empty();
    }

    bool operator==(Reversal const&) const = default;
    std::strong_ordering operator<=>(Reversal const& other) const;
  };

  Reversal empty_reversal(CardinalContext const& ctx);

  //! Violations of the reversal constraints, empty if valid.
  std::vector<std::string> reversal_violations(Reversal const& r, CardinalContext const& ctx);

  bool     reversal_leq(Reversal const& a, Reversal const& b, CardinalContext const& ctx);
  Reversal reversal_meet(Reversal const& a, Reversal const& b, CardinalContext const& ctx);
  Reversal reversal_join(Reversal const& a, Reversal const& b, CardinalContext const& ctx);

  //! All reversals with η ∈ [ℵ0, |X|], plus the empty one; |X| = ℵ_m.
  std::vector<Reversal> enumerate_reversals(CardinalContext const& ctx);

  enum class Flavor : std::uint8_t { partition_like, full_transformation, symmetric_inverse };

  std::string to_string(Flavor f);
  Flavor      parse_flavor(std::string_view text);

  //! λ^N_{ζ1} ∩ ρ^N_{ζ2}, or R_N for the transformation flavours.
  struct CT1 {
    NormalSubgroup group;
    Cardinal       zeta1;
    Cardinal       zeta2;
    bool operator==(CT1 const&) const = default;
  };

  //! (λ^η_{ζ1} ∩ ρ^η_{ζ2}) ∪ μ^{η1}_{ξ1} ∪ ... ∪ μ^{ηk}_{ξk}.
  struct CT2 {
    Cardinal zeta1;
    Cardinal zeta2;
    Reversal psi;
    bool operator==(CT2 const&) const = default;
  };

  class CongruenceDescriptor {
   public:
    //! ζ values are replaced by |X|⁺ for the transformation flavours, and
    //! a CT2 with η = |X|⁺ is brought to the canonical form of ∇.
    CongruenceDescriptor(CardinalContext const& ctx, Flavor flavor, CT1 data);
    CongruenceDescriptor(CardinalContext const& ctx, Flavor flavor, CT2 data);

    [[nodiscard]] CardinalContext const& context() const noexcept {
      return _ctx;
    }
    [[nodiscard]] Flavor flavor() const noexcept {
      return _flavor;
    }
    [[nodiscard]] bool is_ct1() const noexcept {
      return std::holds_alternative<CT1>(_data);
    }
    [[nodiscard]] bool is_ct2() const noexcept {
      return std::holds_alternative<CT2>(_data);
    }
    [[nodiscard]] CT1 const& ct1() const {
      return std::get<CT1>(_data);
    }
    [[nodiscard]] CT2 const& ct2() const {
      return std::get<CT2>(_data);
    }
    [[nodiscard]] Cardinal const& zeta1() const;
    [[nodiscard]] Cardinal const& zeta2() const;
    //! q for CT1, η for CT2.
    [[nodiscard]] Cardinal eta() const;
    [[nodiscard]] bool     is_nabla() const;

    bool operator==(CongruenceDescriptor const&) const = default;
    //! A fixed total order: CT1 first, then by parameters.
    std::strong_ordering operator<=>(CongruenceDescriptor const& other) const;

   private:
    CardinalContext         _ctx;
    Flavor                  _flavor;
    std::variant<CT1, CT2>  _data;
  };

  CongruenceDescriptor delta(CardinalContext const& ctx, Flavor flavor = Flavor::partition_like);
  CongruenceDescriptor nabla(CardinalContext const& ctx, Flavor flavor = Flavor::partition_like);

  //! Every violated constraint; empty means valid.
  std::vector<std::string> validate(CongruenceDescriptor const& d);

  //! Containment σ ⊆ τ.  CT2 pairs are compared through the reversal order.
  bool leq(CongruenceDescriptor const& s, CongruenceDescriptor const& t);

  //! Containment with CT2 pairs compared through index sequences
  //! 0 <= j_1 <= ... <= j_k <= k(τ); used to cross-check leq.
  bool leq_index_form(CongruenceDescriptor const& s, CongruenceDescriptor const& t);

  CongruenceDescriptor meet(CongruenceDescriptor const& s, CongruenceDescriptor const& t);
  CongruenceDescriptor join(CongruenceDescriptor const& s, CongruenceDescriptor const& t);

  //! True iff σ is closed under the involution; PartitionLike only.
  bool is_star(CongruenceDescriptor const& d);

  struct EnumerateOptions {
    std::uint32_t n_max    = 4;
    bool          ct1      = true;
    bool          ct2      = true;
  };

  //! All valid descriptors with q <= n_max, sorted; |X| must be ℵ_m.
  std::vector<CongruenceDescriptor> enumerate_all(CardinalContext const& ctx,
                                                  Flavor                 flavor,
                                                  EnumerateOptions const& opts = {});

  //! The principal congruence generated by a pair with the given profile.
  CongruenceDescriptor principal_descriptor(PairProfile const& p);

  //! Least size of a generating set of pairs; PartitionLike only.
  Cardinal crank(CongruenceDescriptor const& d);

  //! Whether a pair with profile `p` lies in the congruence.
  bool membership(CongruenceDescriptor const& d, PairProfile const& p);

  //! `CT1[N=S_3; z1=aleph_0; z2=aleph_1]`, `CT2[z1=..; z2=..; psi=(v@t, ...)]`,
  //! `NABLA`; `DELTA` is also accepted on input.  Each step prints its
  //! value and the start of its interval.
  //! The transformation flavours omit the ζ fields.
  std::string          to_string(CongruenceDescriptor const& d);
  CongruenceDescriptor parse_descriptor(std::string_view       text,
                                        CardinalContext const& ctx,
                                        Flavor                 flavor = Flavor::partition_like);
  std::string          to_string(Reversal const& r);

  //! Hasse diagram of a descriptor set, clustered by layer (N or Ψ).
  std::string descriptors_dot(std::vector<CongruenceDescriptor> const& ds,
                              std::string const&                       name);

  //! The containment order on a list of descriptors.
  OrderMatrix order_matrix(std::vector<CongruenceDescriptor> const& ds);

}  // namespace dmcong
