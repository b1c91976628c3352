#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dmcong/congruence.hpp"
#include "dmcong/monoid.hpp"
#include "dmcong/normal_subgroup.hpp"

namespace dmcong {

  //! The parametrised congruences of the finite monoids P_n, PB_n, T_n, I_n.
  struct FiniteCongruenceSpec {
    struct Universal {
      bool operator==(Universal const&) const = default;
    };
    //! λ^N_{ζ1} ∩ ρ^N_{ζ2}, for P_n and PB_n.
    struct LambdaRho {
      NormalSubgroup group;
      std::uint64_t  zeta1;
      std::uint64_t  zeta2;
      bool operator==(LambdaRho const&) const = default;
    };
    //! R_N = R_q ∪ ν_N, for T_n and I_n.
    struct Rees {
      NormalSubgroup group;
      bool operator==(Rees const&) const = default;
    };

    MonoidFamily                               family;
    std::variant<Universal, LambdaRho, Rees>   kind;

    [[nodiscard]] std::string to_string() const;
    bool operator==(FiniteCongruenceSpec const&) const = default;
  };

  //! Empty if `spec` is valid for its family and degree, else a reason.
  std::optional<std::string> spec_violation(FiniteCongruenceSpec const& spec);

  //! The relation described by `spec`, checked to be a congruence.
  EqRel build(FiniteCongruenceSpec const& spec, FiniteMonoid const& m);

  //! Every spec allowed for the family at degree n (n >= 2).
  std::vector<FiniteCongruenceSpec> parametric_specs(MonoidFamily const& family);

  struct ParametricCongruence {
    FiniteCongruenceSpec spec;
    EqRel                relation;
  };

  //! Builds every spec and drops duplicate relations (keeping the first).
  std::vector<ParametricCongruence> enumerate_parametric(FiniteMonoid const& m);

  struct VerifyReport {
    MonoidFamily family;
    bool         match        = false;
    std::size_t  brute_count  = 0;
    std::size_t  param_count  = 0;
    //! Brute-force congruences with no parametric counterpart (lattice ids).
    std::vector<std::size_t> missing;
    //! Parametric specs whose relation is not in the lattice.
    std::vector<std::string> extra;
    //! For T and I: whether the lattice is a chain.
    std::optional<bool> chain;
    //! For P and PB: whether σ = σ* exactly when ζ1 = ζ2.
    std::optional<bool> star_ok;
    //! Lattice id to spec text.
    std::vector<std::string> labels;

    [[nodiscard]] bool ok() const noexcept {
      return match && chain.value_or(true) && star_ok.value_or(true);
    }
  };

  VerifyReport verify(FiniteMonoid const& m, CongruenceLattice const& lattice);

  //! Hasse diagram labelled by spec and clustered by q.  Rees congruences
  //! (trivial N with maximal ζ, and ∇) are boxes; Δ is a double circle.
  std::string lattice_dot(FiniteMonoid const& m, CongruenceLattice const& lattice);

}  // namespace dmcong
