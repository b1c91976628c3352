#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmcong/normal_subgroup.hpp"

namespace dmcong {

  using Vertex = std::uint32_t;

  //! A set partition of {0, ..., n-1} (upper points) and {n, ..., 2n-1}
  //! (lower points), stored as a restricted growth string: block labels are
  //! numbered in order of least vertex.
  class Partition {
   public:
    Partition() = default;

    //! Canonicalizes an arbitrary labelling of the 2n vertices.
    static Partition from_labels(std::uint32_t n, std::vector<std::uint32_t> labels);

    [[nodiscard]] std::uint32_t degree() const noexcept {
      return _n;
    }
    [[nodiscard]] std::vector<std::uint32_t> const& labels() const noexcept {
      return _labels;
    }
    [[nodiscard]] std::uint32_t label(Vertex v) const {
      return _labels[v];
    }
    [[nodiscard]] std::uint32_t num_blocks() const noexcept {
      return _num_blocks;
    }
    //! Blocks in canonical order, vertices ascending.
    [[nodiscard]] std::vector<std::vector<Vertex>> blocks() const;

    bool operator==(Partition const& other) const noexcept {
      return _n == other._n && _labels == other._labels;
    }
    std::strong_ordering operator<=>(Partition const& other) const noexcept;

   private:
    std::uint32_t              _n = 0;
    std::uint32_t              _num_blocks = 0;
    std::vector<std::uint32_t> _labels;
  };

  //! Builds a partition; vertices not mentioned become singletons.
  Partition make_partition(std::uint32_t n,
                           std::vector<std::vector<Vertex>> const& blocks);

  //! ε_X
  Partition identity(std::uint32_t n);
  //! The partition all of whose blocks are singletons.
  Partition all_singletons(std::uint32_t n);
  //! ε_Y, for Y a list of upper points (0-based).
  Partition partial_identity(std::uint32_t n, std::vector<Vertex> const& y);

  Partition compose(Partition const& alpha, Partition const& beta);
  Partition star(Partition const& alpha);
  //! Splits every transversal into its upper and lower parts.
  Partition hat(Partition const& alpha);

  //! A set partition of {0, ..., n-1} as a restricted growth string.
  using TracePartition = std::vector<std::uint32_t>;

  struct PartitionStats {
    std::uint32_t rank = 0;
    //! dom[i] iff upper point i lies in a transversal.
    std::vector<bool> dom;
    std::vector<bool> codom;
    //! Kernel and cokernel as restricted growth strings; these are the
    //! upper and lower trace partitions.
    TracePartition ker;
    TracePartition coker;
    //! The same traces listed as blocks.
    std::vector<std::vector<Vertex>> over;
    std::vector<std::vector<Vertex>> under;
  };

  PartitionStats stats(Partition const& alpha);

  struct SymDiff {
    std::uint64_t d_total = 0;
    std::uint64_t d_over  = 0;
    std::uint64_t d_under = 0;
    bool operator==(SymDiff const&) const = default;
  };

  //! Sizes of α △ β, ᾱ △ β̄ and α̲ △ β̲, counting blocks.
  SymDiff sym_diff_counts(Partition const& alpha, Partition const& beta);

  //! |P △ Q| for trace partitions of the same set.
  std::uint64_t trace_sym_diff(TracePartition const& p, TracePartition const& q);

  struct GreenFlags {
    bool leq_r = false;
    bool leq_l = false;
    bool leq_j = false;
    bool r     = false;
    bool l     = false;
    bool j     = false;
    bool h     = false;
    bool operator==(GreenFlags const&) const = default;
  };

  GreenFlags green(Partition const& alpha, Partition const& beta);
  GreenFlags green(PartitionStats const& a, PartitionStats const& b);

  //! Cycle type of the permutation φ(α, β); throws unless α H β.
  CycleType phi_cycle_type(Partition const& alpha, Partition const& beta);

  struct RefineResult {
    bool      refines = false;
    Partition meet;
    Partition join;
  };

  RefineResult refine_lattice(Partition const& alpha, Partition const& beta);

  //! True if every block of α lies inside a block of β.
  bool refines(Partition const& alpha, Partition const& beta);

  //! dom = X and every block has at most one lower point.
  bool is_transformation(Partition const& alpha);

  //! max(|X₀α|, |X₀β|), X₀ the points where the transformations differ.
  std::uint64_t drank(Partition const& alpha, Partition const& beta);

  enum class RelationKind { rees, mu, lambda, rho, nu };

  //! One of R_ξ, μ_ζ, λ_ζ, ρ_ζ (threshold >= 1) or ν_N.
  struct BasicRelation {
    RelationKind                  kind;
    std::uint64_t                 threshold = 0;
    std::optional<NormalSubgroup> group;
  };

  bool basic_relation_member(BasicRelation const& rel,
                             Partition const&     alpha,
                             Partition const&     beta);

  //! `n; {1,4},{2,3,4',5'}`; singleton blocks are omitted.
  std::string to_string(Partition const& alpha);
  Partition   parse_partition(std::string_view text);
  std::ostream& operator<<(std::ostream& os, Partition const& alpha);

  struct PartitionHash {
    std::size_t operator()(Partition const& p) const noexcept;
  };

}  // namespace dmcong

template <>
struct std::hash<dmcong::Partition> : dmcong::PartitionHash {};
