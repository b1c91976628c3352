#include "dmcong/monoid.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>
#include <thread>

#include "dmcong/error.hpp"

namespace dmcong {

  std::string to_string(Family f) {
    switch (f) {
      case Family::P:
        return "P";
      case Family::PB:
        return "PB";
      case Family::B:
        return "B";
      case Family::T:
        return "T";
      case Family::I:
        return "I";
    }
    return "?";
  }

  Family parse_family(std::string_view text) {
    for (auto f : {Family::P, Family::PB, Family::B, Family::T, Family::I}) {
      if (text == to_string(f)) {
        return f;
      }
    }
    throw InvalidArgument("unknown monoid family '" + std::string(text)
                          + "' (expected P, PB, B, T or I)");
  }

  std::string to_string(MonoidFamily const& f) {
    return to_string(f.tag) + "_" + std::to_string(f.n);
  }

  namespace {
    struct Counter {
      std::uint64_t cap;
      std::uint64_t count = 0;
      MonoidFamily  family;
      void          bump() {
        if (++count > cap) {
          throw CapExceeded(to_string(family) + " has more than "
                            + std::to_string(cap) + " elements");
        }
      }
    };

    // Restricted growth strings of length 2n with block sizes in
    // [min_size, max_size] (max_size == 0 means unbounded).
    void rgs(std::uint32_t                     n,
             std::uint32_t                     min_size,
             std::uint32_t                     max_size,
             Counter&                          counter,
             std::vector<Partition>&           out) {
      auto const                 len = 2 * n;
      std::vector<std::uint32_t> labels(len);
      std::vector<std::uint32_t> sizes;
      std::function<void(std::uint32_t)> rec = [&](std::uint32_t v) {
        if (v == len) {
          for (auto s : sizes) {
            if (s < min_size) {
              return;
            }
          }
          counter.bump();
          out.push_back(Partition::from_labels(n, labels));
          return;
        }
        if (min_size > 1) {
          std::uint32_t deficit = 0;
          for (auto s : sizes) {
            deficit += s < min_size ? min_size - s : 0;
          }
          if (deficit > len - v) {
            return;
          }
        }
        auto const num = static_cast<std::uint32_t>(sizes.size());
        for (std::uint32_t b = 0; b <= num; ++b) {
          if (b == num) {
            sizes.push_back(0);
          }
          if (max_size == 0 || sizes[b] < max_size) {
            ++sizes[b];
            labels[v] = b;
            rec(v + 1);
            --sizes[b];
          }
          if (b == num) {
            sizes.pop_back();
          }
        }
      };
      rec(0);
    }

    void transformations(std::uint32_t n, Counter& counter, std::vector<Partition>& out) {
      std::vector<std::uint32_t> f(n, 0);
      while (true) {
        counter.bump();
        std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
        for (std::uint32_t i = 0; i < n; ++i) {
          labels[i]     = f[i];
          labels[n + i] = i;
        }
        out.push_back(Partition::from_labels(n, std::move(labels)));
        std::uint32_t i = 0;
        while (i < n && ++f[i] == n) {
          f[i++] = 0;
        }
        if (i == n) {
          break;
        }
      }
    }

    void partial_bijections(std::uint32_t n, Counter& counter, std::vector<Partition>& out) {
      // f[i] == n means undefined.
      std::vector<std::uint32_t>          f(n);
      std::vector<bool>                   used(n, false);
      std::function<void(std::uint32_t)>  rec = [&](std::uint32_t i) {
        if (i == n) {
          counter.bump();
          std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
          for (std::uint32_t j = 0; j < n; ++j) {
            labels[n + j] = j;
          }
          for (std::uint32_t k = 0; k < n; ++k) {
            labels[k] = f[k] == n ? n + k : f[k];
          }
          out.push_back(Partition::from_labels(n, std::move(labels)));
          return;
        }
        f[i] = n;
        rec(i + 1);
        for (std::uint32_t j = 0; j < n; ++j) {
          if (!used[j]) {
            used[j] = true;
            f[i]    = j;
            rec(i + 1);
            used[j] = false;
          }
        }
      };
      rec(0);
    }

    constexpr std::array<char, 8> magic = {'D', 'M', 'C', 'G', 'M', 'O', 'N', '\0'};
    constexpr std::uint32_t       cache_version = 1;

    void put_uint(std::ostream& os, std::uint64_t x, unsigned width) {
      for (unsigned k = 0; k < width; ++k) {
        os.put(static_cast<char>((x >> (8 * k)) & 0xff));
      }
    }

    std::uint64_t get_uint(std::istream& is, unsigned width) {
      std::uint64_t x = 0;
      for (unsigned k = 0; k < width; ++k) {
        auto c = is.get();
        if (c == std::char_traits<char>::eof()) {
          throw Error("cache file truncated");
        }
        x |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * k);
      }
      return x;
    }
  }  // namespace

  void FiniteMonoid::index_elements() {
    _index.clear();
    _index.reserve(_elements.size());
    _ranks.resize(_elements.size());
    for (id_type i = 0; i < _elements.size(); ++i) {
      if (!_index.emplace(_elements[i], i).second) {
        throw Error("duplicate element in monoid " + to_string(_family));
      }
      _ranks[i] = stats(_elements[i]).rank;
    }
    _identity = id_of(dmcong::identity(_family.n));
  }

  std::optional<FiniteMonoid::id_type> FiniteMonoid::find(Partition const& p) const {
    auto it = _index.find(p);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  FiniteMonoid::id_type FiniteMonoid::id_of(Partition const& p) const {
    auto id = find(p);
    if (!id) {
      throw InvalidArgument(to_string(p) + " is not an element of "
                            + to_string(_family));
    }
    return *id;
  }

  FiniteMonoid::id_type FiniteMonoid::product(id_type i, id_type j) const {
    if (!_table.empty()) {
      return _table[static_cast<std::size_t>(i) * _elements.size() + j];
    }
    return id_of(compose(element(i), element(j)));
  }

  FiniteMonoid enumerate(MonoidFamily const& family, Caps const& caps) {
    FiniteMonoid m;
    m._family = family;
    Counter counter{caps.max_elements, 0, family};
    auto const n = family.n;
    switch (family.tag) {
      case Family::P:
        rgs(n, 1, 0, counter, m._elements);
        break;
      case Family::PB:
        rgs(n, 1, 2, counter, m._elements);
        break;
      case Family::B:
        rgs(n, 2, 2, counter, m._elements);
        break;
      case Family::T:
        transformations(n, counter, m._elements);
        break;
      case Family::I:
        partial_bijections(n, counter, m._elements);
        break;
    }
    std::sort(m._elements.begin(), m._elements.end());
    m.index_elements();
    return m;
  }

  void build_table(FiniteMonoid& m, Caps const& caps, unsigned threads) {
    auto const size  = m.size();
    auto const bytes = static_cast<std::uint64_t>(size) * size * m.id_width();
    if (bytes > caps.max_table_bytes) {
      throw CapExceeded("multiplication table of " + to_string(m.family()) + " needs "
                        + std::to_string(bytes) + " bytes, cap is "
                        + std::to_string(caps.max_table_bytes));
    }
    if (threads == 0) {
      threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(size, 1)));
    std::vector<FiniteMonoid::id_type> table(size * size);
    auto work = [&](unsigned t) {
      for (std::size_t i = t; i < size; i += threads) {
        for (std::size_t j = 0; j < size; ++j) {
          auto const p = compose(m._elements[i], m._elements[j]);
          auto it      = m._index.find(p);
          if (it == m._index.end()) {
            throw Error("product leaves " + to_string(m.family()));
          }
          table[i * size + j] = it->second;
        }
      }
    };
    if (threads <= 1) {
      work(0);
    } else {
      std::vector<std::thread>        pool;
      std::vector<std::exception_ptr> errors(threads);
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            work(t);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) {
        th.join();
      }
      for (auto& e : errors) {
        if (e) {
          std::rethrow_exception(e);
        }
      }
    }
    m._table = std::move(table);
  }

  MonoidStructure structure(FiniteMonoid const& m) {
    MonoidStructure s;
    std::uint32_t   max_rank = 0;
    for (std::uint32_t i = 0; i < m.size(); ++i) {
      max_rank = std::max(max_rank, m.rank(i));
    }
    std::vector<std::vector<std::uint32_t>> by_rank(max_rank + 1);
    for (std::uint32_t i = 0; i < m.size(); ++i) {
      by_rank[m.rank(i)].push_back(i);
    }
    for (std::uint32_t r = 0; r <= max_rank; ++r) {
      if (!by_rank[r].empty()) {
        s.d_classes.push_back({r, by_rank[r]});
      }
    }
    std::vector<std::uint32_t> acc;
    for (std::uint32_t xi = 1; xi <= max_rank + 1; ++xi) {
      acc.insert(acc.end(), by_rank[xi - 1].begin(), by_rank[xi - 1].end());
      std::sort(acc.begin(), acc.end());
      s.ideals.push_back({xi, acc});
    }
    return s;
  }

  std::vector<std::uint32_t> submonoid_closure(FiniteMonoid const&               m,
                                               std::vector<std::uint32_t> const& gens) {
    std::vector<bool>          in(m.size(), false);
    std::vector<std::uint32_t> queue{m.identity()};
    in[m.identity()] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      auto x = queue[k];
      for (auto g : gens) {
        auto y = m.product(x, g);
        if (!in[y]) {
          in[y] = true;
          queue.push_back(y);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

  std::vector<std::uint32_t> generators(FiniteMonoid const& m) {
    std::vector<std::uint32_t> order(m.size());
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
      return m.rank(x) > m.rank(y);
    });
    std::vector<std::uint32_t> gens;
    std::vector<bool>          in(m.size(), false);
    in[m.identity()] = true;
    // Among the first few missing elements of the highest rank, take the
    // one whose addition generates the most.
    constexpr std::size_t pool = 64;
    for (auto it = order.begin(); it != order.end(); ++it) {
      if (in[*it]) {
        continue;
      }
      auto        best      = *it;
      std::size_t best_size = 0;
      std::size_t tried     = 0;
      for (auto jt = it; jt != order.end() && tried < pool && m.rank(*jt) == m.rank(*it); ++jt) {
        if (in[*jt]) {
          continue;
        }
        ++tried;
        gens.push_back(*jt);
        auto const size = submonoid_closure(m, gens).size();
        gens.pop_back();
        if (size > best_size) {
          best      = *jt;
          best_size = size;
        }
      }
      gens.push_back(best);
      std::fill(in.begin(), in.end(), false);
      for (auto y : submonoid_closure(m, gens)) {
        in[y] = true;
      }
    }
    if (submonoid_closure(m, gens).size() != m.size()) {
      throw Error("generator search failed for " + to_string(m.family()));
    }
    // Drop redundant generators, latest first.
    for (auto i = gens.size(); i-- > 0;) {
      auto fewer = gens;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (submonoid_closure(m, fewer).size() == m.size()) {
        gens = std::move(fewer);
      }
    }
    return gens;
  }

  std::filesystem::path cache_path(std::filesystem::path const& dir,
                                   MonoidFamily const&          family) {
    return dir / (to_string(family) + ".dmcm");
  }

  void save_cache(FiniteMonoid const& m, std::filesystem::path const& path) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) {
        throw Error("cannot write cache file " + tmp.string());
      }
      os.write(magic.data(), magic.size());
      put_uint(os, cache_version, 4);
      put_uint(os, static_cast<std::uint8_t>(m.family().tag), 1);
      put_uint(os, m.family().n, 4);
      put_uint(os, m.size(), 4);
      auto const width = m.id_width();
      put_uint(os, width, 1);
      for (auto const& p : m.elements()) {
        for (auto x : p.labels()) {
          put_uint(os, x, 2);
        }
      }
      put_uint(os, m._table.empty() ? 0 : 1, 1);
      for (auto x : m._table) {
        put_uint(os, x, width);
      }
      if (!os) {
        throw Error("error writing cache file " + tmp.string());
      }
    }
    std::filesystem::rename(tmp, path);
  }

  FiniteMonoid load_cache(std::filesystem::path const& path, MonoidFamily const& expected) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
      throw Error("cannot open cache file " + path.string());
    }
    std::array<char, 8> head{};
    is.read(head.data(), head.size());
    if (!is || head != magic) {
      throw Error("bad magic in cache file " + path.string());
    }
    if (get_uint(is, 4) != cache_version) {
      throw Error("unsupported cache version in " + path.string());
    }
    FiniteMonoid m;
    m._family.tag = static_cast<Family>(get_uint(is, 1));
    m._family.n   = static_cast<std::uint32_t>(get_uint(is, 4));
    if (!(m._family == expected)) {
      throw Error("cache file " + path.string() + " holds " + to_string(m._family));
    }
    auto const count = get_uint(is, 4);
    auto const width = static_cast<unsigned>(get_uint(is, 1));
    m._elements.reserve(count);
    auto const len = 2 * static_cast<std::size_t>(m._family.n);
    for (std::uint64_t k = 0; k < count; ++k) {
      std::vector<std::uint32_t> labels(len);
      for (auto& x : labels) {
        x = static_cast<std::uint32_t>(get_uint(is, 2));
      }
      auto p = Partition::from_labels(m._family.n, labels);
      if (p.labels() != labels) {
        throw Error("non-canonical element in cache file " + path.string());
      }
      m._elements.push_back(std::move(p));
    }
    if (!std::is_sorted(m._elements.begin(), m._elements.end())) {
      throw Error("unsorted element list in cache file " + path.string());
    }
    m.index_elements();
    if (width != m.id_width()) {
      throw Error("id width mismatch in cache file " + path.string());
    }
    if (get_uint(is, 1) == 1) {
      m._table.resize(count * count);
      for (auto& x : m._table) {
        x = static_cast<FiniteMonoid::id_type>(get_uint(is, width));
        if (x >= count) {
          throw Error("table entry out of range in " + path.string());
        }
      }
    }
    return m;
  }

  FiniteMonoid load_or_build(MonoidFamily const&          family,
                             std::filesystem::path const& cache_dir,
                             bool                         with_table,
                             Caps const&                  caps,
                             unsigned                     threads) {
    std::filesystem::path path;
    if (!cache_dir.empty()) {
      path = cache_path(cache_dir, family);
      if (std::filesystem::exists(path)) {
        try {
          auto m = load_cache(path, family);
          if (m.size() > caps.max_elements) {
            throw CapExceeded(to_string(family) + " has more than "
                              + std::to_string(caps.max_elements) + " elements");
          }
          if (!with_table || m.has_table()) {
            return m;
          }
          build_table(m, caps, threads);
          save_cache(m, path);
          return m;
        } catch (CapExceeded const&) {
          throw;
        } catch (Error const&) {
          // Unusable cache: rebuild below.
        }
      }
    }
    auto m = enumerate(family, caps);
    if (with_table) {
      build_table(m, caps, threads);
    }
    if (!path.empty()) {
      std::filesystem::create_directories(cache_dir);
      save_cache(m, path);
    }
    return m;
  }

}  // namespace dmcong
