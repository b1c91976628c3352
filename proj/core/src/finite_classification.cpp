#include "dmcong/finite_classification.hpp"

#include <algorithm>

#include "dmcong/error.hpp"
#include "dmcong/union_find.hpp"

namespace dmcong {

  std::string FiniteCongruenceSpec::to_string() const {
    if (std::holds_alternative<Universal>(kind)) {
      return "NABLA";
    }
    if (auto const* lr = std::get_if<LambdaRho>(&kind)) {
      return "LR[N=" + lr->group.to_string() + "; z1=" + std::to_string(lr->zeta1)
             + "; z2=" + std::to_string(lr->zeta2) + "]";
    }
    return "R[N=" + std::get<Rees>(kind).group.to_string() + "]";
  }

  std::optional<std::string> spec_violation(FiniteCongruenceSpec const& spec) {
    auto const n  = spec.family.n;
    auto const fa = spec.family.tag;
    if (std::holds_alternative<FiniteCongruenceSpec::Universal>(spec.kind)) {
      return std::nullopt;
    }
    if (auto const* lr = std::get_if<FiniteCongruenceSpec::LambdaRho>(&spec.kind)) {
      if (fa != Family::P && fa != Family::PB) {
        return "lambda/rho congruences are specified for P and PB only";
      }
      auto const q = lr->group.q();
      if (q > n) {
        return "q = " + std::to_string(q) + " exceeds the degree";
      }
      for (auto z : {lr->zeta1, lr->zeta2}) {
        if (z != 1 && z != 2 * std::uint64_t{n}) {
          return "zeta must be 1 or 2n";
        }
        if (q >= 3 && z != 2 * std::uint64_t{n}) {
          return "zeta must be 2n when q >= 3";
        }
      }
      return std::nullopt;
    }
    auto const& rees = std::get<FiniteCongruenceSpec::Rees>(spec.kind);
    if (fa != Family::T && fa != Family::I) {
      return "R_N congruences are specified for T and I only";
    }
    if (rees.group.q() > n) {
      return "q exceeds the degree";
    }
    return std::nullopt;
  }

  namespace {
    struct ElementData {
      std::uint32_t  rank;
      PartitionStats stats;
    };

    class Predicate {
     public:
      Predicate(FiniteCongruenceSpec const& spec, FiniteMonoid const& m) : _spec(spec), _m(m) {
        _data.reserve(m.size());
        for (auto const& p : m.elements()) {
          auto s = stats(p);
          _data.push_back({s.rank, std::move(s)});
        }
      }

      bool operator()(std::uint32_t a, std::uint32_t b) const {
        if (a == b) {
          return true;
        }
        if (std::holds_alternative<FiniteCongruenceSpec::Universal>(_spec.kind)) {
          return true;
        }
        auto const& da = _data[a];
        auto const& db = _data[b];
        NormalSubgroup const* group = nullptr;
        if (auto const* lr = std::get_if<FiniteCongruenceSpec::LambdaRho>(&_spec.kind)) {
          group = &lr->group;
          if (da.rank < group->q() && db.rank < group->q()
              && trace_sym_diff(da.stats.ker, db.stats.ker) < lr->zeta1
              && trace_sym_diff(da.stats.coker, db.stats.coker) < lr->zeta2) {
            return true;
          }
        } else {
          group = &std::get<FiniteCongruenceSpec::Rees>(_spec.kind).group;
          if (da.rank < group->q() && db.rank < group->q()) {
            return true;
          }
        }
        if (da.rank != group->q() || db.rank != group->q()) {
          return false;
        }
        if (!green(da.stats, db.stats).h) {
          return false;
        }
        return group->contains(phi_cycle_type(_m.element(a), _m.element(b)));
      }

     private:
      FiniteCongruenceSpec const& _spec;
      FiniteMonoid const&         _m;
      std::vector<ElementData>    _data;
    };
  }  // namespace

  EqRel build(FiniteCongruenceSpec const& spec, FiniteMonoid const& m) {
    if (!(spec.family == m.family())) {
      throw Mismatch("spec for " + to_string(spec.family) + " applied to "
                     + to_string(m.family()));
    }
    if (auto why = spec_violation(spec)) {
      throw InvalidArgument("invalid spec " + spec.to_string() + ": " + *why);
    }
    auto const size = static_cast<std::uint32_t>(m.size());
    if (std::holds_alternative<FiniteCongruenceSpec::Universal>(spec.kind)) {
      return EqRel::universal(size);
    }
    Predicate related(spec, m);
    UnionFind uf(size);
    for (std::uint32_t a = 0; a < size; ++a) {
      for (std::uint32_t b = a + 1; b < size; ++b) {
        if (uf.find(a) != uf.find(b) && related(a, b)) {
          uf.unite(a, b);
        }
      }
    }
    auto r = EqRel::from_class_map(uf.normalized());
    // The union-find output is the transitive closure; it must agree with
    // the predicate itself, and be compatible.
    for (auto const& cls : r.classes()) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          if (!related(cls[i], cls[j])) {
            throw Error("relation " + spec.to_string() + " on " + to_string(m.family())
                        + " is not transitive");
          }
        }
      }
    }
    if (!is_compatible(m, r, generators(m))) {
      throw Error("relation " + spec.to_string() + " on " + to_string(m.family())
                  + " is not compatible");
    }
    return r;
  }

  std::vector<FiniteCongruenceSpec> parametric_specs(MonoidFamily const& family) {
    auto const n = family.n;
    if (n < 2) {
      throw InvalidArgument("the finite classification needs n >= 2");
    }
    std::vector<FiniteCongruenceSpec> out;
    switch (family.tag) {
      case Family::P:
      case Family::PB: {
        std::uint64_t const big = 2 * std::uint64_t{n};
        for (std::uint32_t q = 1; q <= n; ++q) {
          std::vector<std::uint64_t> zetas{big};
          if (q <= 2) {
            zetas = {1, big};
          }
          for (auto const& g : normal_subgroups(q)) {
            for (auto z1 : zetas) {
              for (auto z2 : zetas) {
                out.push_back({family, FiniteCongruenceSpec::LambdaRho{g, z1, z2}});
              }
            }
          }
        }
        break;
      }
      case Family::T:
      case Family::I:
        for (std::uint32_t q = 1; q <= n; ++q) {
          for (auto const& g : normal_subgroups(q)) {
            out.push_back({family, FiniteCongruenceSpec::Rees{g}});
          }
        }
        break;
      case Family::B:
        throw InvalidArgument("no finite classification is provided for B_n");
    }
    out.push_back({family, FiniteCongruenceSpec::Universal{}});
    return out;
  }

  std::vector<ParametricCongruence> enumerate_parametric(FiniteMonoid const& m) {
    std::vector<ParametricCongruence> out;
    for (auto const& spec : parametric_specs(m.family())) {
      auto r = build(spec, m);
      auto dup = std::find_if(out.begin(), out.end(), [&](auto const& pc) {
        return pc.relation == r;
      });
      if (dup == out.end()) {
        out.push_back({spec, std::move(r)});
      }
    }
    return out;
  }

  VerifyReport verify(FiniteMonoid const& m, CongruenceLattice const& lattice) {
    VerifyReport report;
    report.family      = m.family();
    auto const param   = enumerate_parametric(m);
    report.brute_count = lattice.size();
    report.param_count = param.size();
    report.labels.assign(lattice.size(), "?");
    std::vector<bool> hit(lattice.size(), false);
    for (auto const& pc : param) {
      if (auto i = lattice.find(pc.relation)) {
        hit[*i]           = true;
        report.labels[*i] = pc.spec.to_string();
      } else {
        report.extra.push_back(pc.spec.to_string());
      }
    }
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      if (!hit[i]) {
        report.missing.push_back(i);
      }
    }
    report.match = report.missing.empty() && report.extra.empty()
                   && report.brute_count == report.param_count;
    auto const tag = m.family().tag;
    if (tag == Family::T || tag == Family::I) {
      report.chain = is_chain(lattice.leq);
    }
    if (tag == Family::P || tag == Family::PB) {
      bool ok = true;
      for (auto const& pc : param) {
        bool predicted = true;
        if (auto const* lr = std::get_if<FiniteCongruenceSpec::LambdaRho>(&pc.spec.kind)) {
          predicted = lr->zeta1 == lr->zeta2;
        }
        ok = ok && ((star(m, pc.relation) == pc.relation) == predicted);
      }
      report.star_ok = ok;
    }
    return report;
  }

  std::string lattice_dot(FiniteMonoid const& m, CongruenceLattice const& lattice) {
    std::vector<DotNode> nodes(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      nodes[i].label = "?" + std::to_string(i);
    }
    auto const big = 2 * std::uint64_t{m.family().n};
    for (auto const& pc : enumerate_parametric(m)) {
      auto const i = lattice.find(pc.relation);
      if (!i) {
        continue;
      }
      auto& node = nodes[*i];
      node.label = pc.spec.to_string();
      bool rees  = std::holds_alternative<FiniteCongruenceSpec::Universal>(pc.spec.kind);
      if (auto const* lr = std::get_if<FiniteCongruenceSpec::LambdaRho>(&pc.spec.kind)) {
        rees = lr->group.tag() == NormalSubgroup::Tag::trivial && lr->zeta1 == big
               && lr->zeta2 == big;
        node.group = "q=" + std::to_string(lr->group.q());
      } else if (auto const* r = std::get_if<FiniteCongruenceSpec::Rees>(&pc.spec.kind)) {
        rees       = r->group.tag() == NormalSubgroup::Tag::trivial;
        node.group = "q=" + std::to_string(r->group.q());
      }
      node.attributes = rees ? "shape=box" : "shape=ellipse";
    }
    nodes[lattice.bottom].attributes = "shape=doublecircle";
    return to_dot("Cong(" + to_string(m.family()) + ")", nodes, lattice.hasse);
  }

}  // namespace dmcong
