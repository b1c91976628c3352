#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dmcong/monoid.hpp"
#include "dmcong/poset.hpp"

namespace dmcong {

  //! An equivalence relation on the ids 0..size-1 of a finite monoid, stored
  //! as a class map normalized so classes are numbered by least member.
  class EqRel {
   public:
    EqRel() = default;

    static EqRel from_class_map(std::vector<std::uint32_t> class_of);
    static EqRel diagonal(std::size_t size);
    static EqRel universal(std::size_t size);

    [[nodiscard]] std::size_t size() const noexcept {
      return _class.size();
    }
    [[nodiscard]] std::uint32_t num_classes() const noexcept {
      return _num_classes;
    }
    [[nodiscard]] std::uint32_t class_of(std::uint32_t i) const {
      return _class[i];
    }
    [[nodiscard]] std::vector<std::uint32_t> const& class_map() const noexcept {
      return _class;
    }
    [[nodiscard]] bool related(std::uint32_t a, std::uint32_t b) const {
      return _class[a] == _class[b];
    }
    //! Containment of relations: this ⊆ other.
    [[nodiscard]] bool subset_of(EqRel const& other) const;
    //! Classes as sorted id lists.
    [[nodiscard]] std::vector<std::vector<std::uint32_t>> classes() const;

    bool operator==(EqRel const& other) const noexcept {
      return _class == other._class;
    }
    std::strong_ordering operator<=>(EqRel const& other) const noexcept;

   private:
    std::vector<std::uint32_t> _class;
    std::uint32_t              _num_classes = 0;
  };

  struct EqRelHash {
    std::size_t operator()(EqRel const& r) const noexcept;
  };

  EqRel meet(EqRel const& a, EqRel const& b);
  //! Transitive closure of the union.
  EqRel equivalence_join(EqRel const& a, EqRel const& b);

  using IdPair = std::pair<std::uint32_t, std::uint32_t>;

  //! Least congruence containing `pairs`, by union-find saturation under
  //! left and right multiplication by `gens`.
  EqRel closure(FiniteMonoid const&               m,
                std::vector<IdPair> const&        pairs,
                std::vector<std::uint32_t> const& gens);

  //! Same, computing a generating set first.
  EqRel closure(FiniteMonoid const& m, std::vector<IdPair> const& pairs);

  //! Naive fixed point multiplying by every element; the slow reference.
  EqRel closure_naive(FiniteMonoid const& m, std::vector<IdPair> const& pairs);

  //! Compatibility with multiplication by each of `elements` on both sides.
  bool is_compatible(FiniteMonoid const&               m,
                     EqRel const&                      r,
                     std::vector<std::uint32_t> const& elements);

  //! Compatibility with every element.
  bool is_congruence(FiniteMonoid const& m, EqRel const& r);

  //! σ* : a σ* b iff a* σ b*.
  EqRel star(FiniteMonoid const& m, EqRel const& r);

  std::vector<EqRel> principal_congruences(FiniteMonoid const& m,
                                           Caps const&         caps    = {},
                                           unsigned            threads = 0);

  struct CongruenceLattice {
    //! Sorted by decreasing class count, then by class map.
    std::vector<EqRel>       congruences;
    OrderMatrix              leq;
    std::vector<Edge>        hasse;
    std::vector<bool>        principal;
    std::vector<std::vector<std::size_t>> meet_table;
    std::vector<std::vector<std::size_t>> join_table;
    std::size_t              bottom = 0;
    std::size_t              top    = 0;

    [[nodiscard]] std::size_t size() const noexcept {
      return congruences.size();
    }
    //! Index of `r`, if present.
    [[nodiscard]] std::optional<std::size_t> find(EqRel const& r) const;
  };

  //! Builds order, covers and operation tables; throws if the set is not
  //! closed under meet and join.
  CongruenceLattice make_lattice(std::vector<EqRel> congruences,
                                 std::vector<EqRel> const& principal = {});

  //! Join-closure of the principal congruences together with Δ.
  CongruenceLattice all_congruences(FiniteMonoid const& m,
                                    Caps const&         caps    = {},
                                    unsigned            threads = 0);

  struct LatticeOps {
    std::size_t meet;
    std::size_t join;
  };

  //! Meet and join computed from the class maps and looked up in `l`.
  LatticeOps lattice_ops(CongruenceLattice const& l, std::size_t i, std::size_t j);

  struct LatticeAnalysis {
    bool                     is_distributive = false;
    bool                     is_chain        = false;
    std::vector<std::size_t> atoms;
    std::vector<std::size_t> coatoms;
    std::vector<Edge>        hasse;
  };

  LatticeAnalysis analyze(CongruenceLattice const& l);

  //! Least number of pairs generating congruence `sigma` (an index into l).
  std::uint64_t crank_bruteforce(CongruenceLattice const& l,
                                 std::size_t              sigma,
                                 Caps const&              caps = {});

  enum class OutputFormat { text, jsonl, dot };

  //! One record per congruence (class count and class map), then the
  //! cover edges.
  void write_lattice(std::ostream&            os,
                     CongruenceLattice const& l,
                     MonoidFamily const&      family,
                     OutputFormat             format);

}  // namespace dmcong
