#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dmcong/partition.hpp"

namespace dmcong {

  enum class Family : std::uint8_t { P, PB, B, T, I };

  std::string to_string(Family f);
  Family      parse_family(std::string_view text);

  struct MonoidFamily {
    Family        tag = Family::P;
    std::uint32_t n   = 0;
    bool operator==(MonoidFamily const&) const = default;
  };

  std::string to_string(MonoidFamily const& f);

  //! Resource limits shared by enumeration, table building and searches.
  struct Caps {
    std::uint64_t max_elements    = 10'000;
    std::uint64_t max_table_bytes = std::uint64_t{512} << 20;
    std::uint64_t max_search      = 5'000'000;
  };

  //! An enumerated diagram monoid with an optional multiplication table.
  class FiniteMonoid {
   public:
    using id_type = std::uint32_t;

    [[nodiscard]] MonoidFamily const& family() const noexcept {
      return _family;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _elements.size();
    }
    [[nodiscard]] Partition const& element(id_type i) const {
      return _elements.at(i);
    }
    [[nodiscard]] std::vector<Partition> const& elements() const noexcept {
      return _elements;
    }
    [[nodiscard]] std::uint32_t rank(id_type i) const {
      return _ranks.at(i);
    }
    [[nodiscard]] id_type identity() const noexcept {
      return _identity;
    }

    [[nodiscard]] std::optional<id_type> find(Partition const& p) const;
    //! Throws InvalidArgument if `p` is not an element.
    [[nodiscard]] id_type id_of(Partition const& p) const;

    [[nodiscard]] bool has_table() const noexcept {
      return !_table.empty() || _elements.empty();
    }
    //! Product via the table if built, otherwise by composing.
    [[nodiscard]] id_type product(id_type i, id_type j) const;
    [[nodiscard]] std::vector<id_type> const& table() const noexcept {
      return _table;
    }
    //! Bytes per table entry in the cache format.
    [[nodiscard]] unsigned id_width() const noexcept {
      return _elements.size() <= 0x10000 ? 2 : 4;
    }

   private:
    friend FiniteMonoid enumerate(MonoidFamily const&, Caps const&);
    friend void         build_table(FiniteMonoid&, Caps const&, unsigned);
    friend void         save_cache(FiniteMonoid const&, std::filesystem::path const&);
    friend FiniteMonoid load_cache(std::filesystem::path const&, MonoidFamily const&);

    void index_elements();

    MonoidFamily                                  _family;
    std::vector<Partition>                        _elements;
    std::vector<std::uint32_t>                    _ranks;
    std::unordered_map<Partition, id_type>        _index;
    std::vector<id_type>                          _table;
    id_type                                       _identity = 0;
  };

  //! All elements of the family in canonical order.  Throws CapExceeded if
  //! the element count would exceed `caps.max_elements`.
  FiniteMonoid enumerate(MonoidFamily const& family, Caps const& caps = {});

  //! Fills the dense multiplication table.  `threads == 0` uses the hardware
  //! concurrency.  Throws CapExceeded if the table would exceed the memory cap.
  void build_table(FiniteMonoid& m, Caps const& caps = {}, unsigned threads = 0);

  struct DClass {
    std::uint32_t              rank = 0;
    std::vector<std::uint32_t> ids;
  };

  struct Ideal {
    //! I_ξ = elements of rank < ξ.
    std::uint32_t              xi = 0;
    std::vector<std::uint32_t> ids;
  };

  struct MonoidStructure {
    std::vector<DClass> d_classes;
    std::vector<Ideal>  ideals;
  };

  MonoidStructure structure(FiniteMonoid const& m);

  //! Ids of the submonoid generated by `gens`, ascending.
  std::vector<std::uint32_t> submonoid_closure(FiniteMonoid const&              m,
                                               std::vector<std::uint32_t> const& gens);

  //! An irredundant generating set, built greedily by decreasing rank
  //! and then pruned.
  std::vector<std::uint32_t> generators(FiniteMonoid const& m);

  //! Binary cache file holding the element list and, if built, the table.
  void         save_cache(FiniteMonoid const& m, std::filesystem::path const& path);
  FiniteMonoid load_cache(std::filesystem::path const& path, MonoidFamily const& expected);

  std::filesystem::path cache_path(std::filesystem::path const& dir,
                                   MonoidFamily const&          family);

  //! Loads from `cache_dir` if a valid file exists, otherwise enumerates
  //! (and builds the table if asked) and writes the cache.  An empty
  //! `cache_dir` disables caching.
  FiniteMonoid load_or_build(MonoidFamily const&          family,
                             std::filesystem::path const& cache_dir,
                             bool                         with_table,
                             Caps const&                  caps    = {},
                             unsigned                     threads = 0);

}  // namespace dmcong
