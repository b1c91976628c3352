// dmcong: enumeration, verification and symbolic queries for diagram
// monoid congruences.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmcong/checks.hpp"
#include "dmcong/congruence.hpp"
#include "dmcong/descriptor.hpp"
#include "dmcong/error.hpp"
#include "dmcong/finitary.hpp"
#include "dmcong/finite_classification.hpp"
#include "dmcong/monoid.hpp"

namespace {

  using namespace dmcong;
  using json = nlohmann::json;

  enum Exit : int { ok = 0, mismatch = 1, usage = 2, cap = 3 };

  struct RunConfig {
    Caps         caps;
    std::string  cache_dir;
    unsigned     threads = 0;
    std::uint64_t seed   = 1;
    OutputFormat format  = OutputFormat::text;
    std::uint64_t table_mb = 512;
  };

  MonoidFamily family_of(std::string const& tag, std::uint32_t n) {
    return {parse_family(tag), n};
  }

  void emit(json const& record) {
    std::cout << record.dump() << '\n';
  }

  ////////////////////////////////////////////////////////////////////////
  // monoid
  ////////////////////////////////////////////////////////////////////////

  int cmd_monoid(RunConfig const& cfg, MonoidFamily const& fam, std::string const& action) {
    bool const with_table = action == "table";
    auto const m = load_or_build(fam, cfg.cache_dir, with_table, cfg.caps, cfg.threads);
    auto const name = to_string(fam);
    if (action == "enum") {
      if (cfg.format == OutputFormat::jsonl) {
        emit({{"type", "monoid"}, {"monoid", name}, {"elements", m.size()}});
      } else {
        std::cout << m.size() << (m.size() == 1 ? " element" : " elements") << '\n';
      }
    } else if (action == "table") {
      if (cfg.format == OutputFormat::jsonl) {
        emit({{"type", "table"},
              {"monoid", name},
              {"elements", m.size()},
              {"entry_bytes", m.id_width()},
              {"products", m.table()}});
      } else {
        std::cout << name << ": " << m.size() << " x " << m.size() << " table, "
                  << m.id_width() << " bytes per entry\n";
      }
    } else {
      auto const s = structure(m);
      for (auto const& d : s.d_classes) {
        if (cfg.format == OutputFormat::jsonl) {
          emit({{"type", "d_class"}, {"monoid", name}, {"rank", d.rank}, {"size", d.ids.size()}});
        } else {
          std::cout << "rank " << d.rank << ": " << d.ids.size() << " elements\n";
        }
      }
      for (auto const& i : s.ideals) {
        if (cfg.format == OutputFormat::jsonl) {
          emit({{"type", "ideal"}, {"monoid", name}, {"xi", i.xi}, {"size", i.ids.size()}});
        } else {
          std::cout << "I_" << i.xi << ": " << i.ids.size() << " elements\n";
        }
      }
    }
    return Exit::ok;
  }

  ////////////////////////////////////////////////////////////////////////
  // cong
  ////////////////////////////////////////////////////////////////////////

  int cmd_cong(RunConfig const& cfg, MonoidFamily const& fam, std::string const& action) {
    auto const m = load_or_build(fam, cfg.cache_dir, true, cfg.caps, cfg.threads);
    auto const l = all_congruences(m, cfg.caps, cfg.threads);
    if (action == "brute") {
      write_lattice(std::cout, l, fam, cfg.format);
      return Exit::ok;
    }
    if (action == "dot") {
      std::cout << lattice_dot(m, l);
      return Exit::ok;
    }
    auto const r = verify(m, l);
    if (cfg.format == OutputFormat::jsonl) {
      json j{{"type", "verify"},
             {"monoid", to_string(fam)},
             {"match", r.match},
             {"brute", r.brute_count},
             {"parametric", r.param_count},
             {"missing", r.missing},
             {"extra", r.extra},
             {"labels", r.labels}};
      if (r.chain) {
        j["chain"] = *r.chain;
      }
      if (r.star_ok) {
        j["star"] = *r.star_ok;
      }
      emit(j);
    } else {
      std::string const verdict = r.match ? "match" : "mismatch";
      if (r.chain) {
        std::cout << (*r.chain ? "chain" : "not a chain") << " of " << r.brute_count << ": "
                  << verdict << '\n';
      } else {
        std::cout << verdict << ": " << r.brute_count << " = " << r.param_count << '\n';
      }
      if (r.star_ok) {
        std::cout << "star: " << (*r.star_ok ? "closed exactly when z1 = z2" : "mismatch")
                  << '\n';
      }
      for (auto i : r.missing) {
        std::cout << "missing: congruence " << i << '\n';
      }
      for (auto const& e : r.extra) {
        std::cout << "extra: " << e << '\n';
      }
    }
    return r.ok() ? Exit::ok : Exit::mismatch;
  }

  ////////////////////////////////////////////////////////////////////////
  // symbolic
  ////////////////////////////////////////////////////////////////////////

  struct SymbolicArgs {
    std::string              context;
    std::string              flavor;
    std::string              query;
    std::vector<std::string> args;
    std::uint32_t            n_max    = 4;
    bool                     ct2_only = false;
    bool                     ct1_only = false;
    bool                     list     = false;
  };

  void need(SymbolicArgs const& a, std::size_t k) {
    if (a.args.size() != k) {
      throw InvalidArgument("query '" + a.query + "' takes " + std::to_string(k)
                            + " argument(s), got " + std::to_string(a.args.size()));
    }
  }

  int cmd_symbolic(RunConfig const& cfg, SymbolicArgs const& a) {
    CardinalContext const ctx(parse_cardinal(a.context));
    auto const            flavor = parse_flavor(a.flavor);
    auto parse = [&](std::string const& text) { return parse_descriptor(text, ctx, flavor); };
    bool const jsonl = cfg.format == OutputFormat::jsonl;
    auto answer = [&](std::string const& value) {
      if (jsonl) {
        emit({{"type", "answer"}, {"query", a.query}, {"value", value}});
      } else {
        std::cout << value << '\n';
      }
    };

    if (a.query == "enumerate" || a.query == "dot") {
      need(a, 0);
      if (a.ct1_only && a.ct2_only) {
        throw InvalidArgument("--ct1-only and --ct2-only exclude each other");
      }
      auto const ds = enumerate_all(ctx, flavor, {a.n_max, !a.ct2_only, !a.ct1_only});
      if (a.query == "dot" || cfg.format == OutputFormat::dot) {
        std::cout << descriptors_dot(ds, "descriptors at |X| = " + to_string(ctx.x()));
      } else if (jsonl) {
        for (auto const& d : ds) {
          json j{{"type", "descriptor"},
                 {"descriptor", to_string(d)},
                 {"kind", d.is_ct1() ? "CT1" : "CT2"}};
          if (flavor == Flavor::partition_like) {
            j["crank"] = to_string(crank(d));
          }
          emit(j);
        }
      } else {
        if (a.list) {
          for (auto const& d : ds) {
            std::cout << to_string(d) << '\n';
          }
        }
        std::cout << ds.size() << '\n';
      }
    } else if (a.query == "leq") {
      need(a, 2);
      answer(leq(parse(a.args[0]), parse(a.args[1])) ? "true" : "false");
    } else if (a.query == "meet") {
      need(a, 2);
      answer(to_string(meet(parse(a.args[0]), parse(a.args[1]))));
    } else if (a.query == "join") {
      need(a, 2);
      answer(to_string(join(parse(a.args[0]), parse(a.args[1]))));
    } else if (a.query == "crank") {
      need(a, 1);
      answer(to_string(crank(parse(a.args[0]))));
    } else if (a.query == "star") {
      need(a, 1);
      answer(is_star(parse(a.args[0])) ? "true" : "false");
    } else if (a.query == "principal") {
      need(a, 2);
      auto const x = parse_finitary(a.args[0]);
      auto const y = parse_finitary(a.args[1]);
      if (!(x.context() == ctx)) {
        throw InvalidArgument("partitions live over X = " + to_string(x.context().x())
                              + ", query context is " + to_string(ctx.x()));
      }
      answer(to_string(principal_descriptor(pair_profile(x, y))));
    } else {
      throw InvalidArgument("unknown query '" + a.query + "'");
    }
    return Exit::ok;
  }

  ////////////////////////////////////////////////////////////////////////
  // check
  ////////////////////////////////////////////////////////////////////////

  struct CheckArgs {
    std::string   suite;
    std::uint64_t samples = 10'000;
    std::uint64_t triples = 100'000;
    std::uint32_t n       = 3;
  };

  int cmd_check(RunConfig const& cfg, CheckArgs const& a) {
    std::vector<std::pair<std::string, CheckReport>> out;
    bool const all = a.suite == "all";
    if (all || a.suite == "inequalities") {
      out.emplace_back("inequalities", check_inequalities(a.samples, cfg.seed));
    }
    if (all || a.suite == "green") {
      CheckReport r;
      for (auto tag : {Family::P, Family::PB}) {
        auto const m = load_or_build({tag, a.n}, cfg.cache_dir, true, cfg.caps, cfg.threads);
        r.push_back(check_green(m));
      }
      out.emplace_back("green", std::move(r));
    }
    if (all || a.suite == "order") {
      CheckReport r;
      for (std::uint32_t i : {0u, 1u}) {
        OrderCheckOptions opts;
        opts.random_triples = a.triples;
        opts.seed           = cfg.seed;
        auto part = check_order(CardinalContext(Cardinal::aleph(i)), opts);
        r.insert(r.end(), part.begin(), part.end());
        part = check_reversals(CardinalContext(Cardinal::aleph(i)));
        r.insert(r.end(), part.begin(), part.end());
      }
      out.emplace_back("order", std::move(r));
    }
    if (all || a.suite == "bridge") {
      CheckReport r;
      for (std::uint32_t i : {0u, 1u}) {
        auto part = check_bridge(CardinalContext(Cardinal::aleph(i)));
        r.insert(r.end(), part.begin(), part.end());
      }
      out.emplace_back("bridge", std::move(r));
    }
    bool good = true;
    for (auto const& [suite, report] : out) {
      good = good && all_ok(report);
      if (cfg.format == OutputFormat::jsonl) {
        for (auto const& c : report) {
          emit({{"type", "check"},
                {"suite", suite},
                {"name", c.name},
                {"cases", c.cases},
                {"failures", c.failures},
                {"counterexample", c.counterexample}});
        }
      } else {
        std::cout << format_report(suite, report);
      }
    }
    return good ? Exit::ok : Exit::mismatch;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruences of diagram monoids: finite enumeration and symbolic queries"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig   cfg;
  std::string format = "text";
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for enumeration and table caches")
      ->envname("DMCONG_CACHE_DIR");
  app.add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)")
      ->envname("DMCONG_THREADS");
  app.add_option("--seed", cfg.seed, "Seed for sampled checks")->envname("DMCONG_SEED");
  app.add_option("--cap-elements", cfg.caps.max_elements, "Largest monoid to enumerate")
      ->envname("DMCONG_CAP_ELEMENTS")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-table-mb", cfg.table_mb, "Largest multiplication table, in MiB")
      ->envname("DMCONG_CAP_TABLE_MB")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-search", cfg.caps.max_search, "Largest generating-set search")
      ->envname("DMCONG_CAP_SEARCH")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")
      ->envname("DMCONG_FORMAT")
      ->check(CLI::IsMember({"text", "jsonl", "dot"}));

  std::string   family;
  std::uint32_t n = 0;
  std::string   action;

  auto* monoid = app.add_subcommand("monoid", "Enumerate a finite diagram monoid");
  monoid->add_option("family", family, "P, PB, B, T or I")->required();
  monoid->add_option("n", n, "Degree")->required();
  monoid->add_option("action", action)
      ->required()
      ->check(CLI::IsMember({"enum", "table", "structure"}));

  auto* cong = app.add_subcommand("cong", "Brute-force and verify a congruence lattice");
  cong->add_option("family", family, "P, PB, B, T or I")->required();
  cong->add_option("n", n, "Degree")->required();
  cong->add_option("action", action)->required()->check(CLI::IsMember({"brute", "verify", "dot"}));

  SymbolicArgs sym;
  auto* symbolic = app.add_subcommand("symbolic", "Queries on congruence descriptors over |X|");
  symbolic->add_option("context", sym.context, "|X|, e.g. aleph_1")->required();
  symbolic->add_option("flavor", sym.flavor, "P, PB, T or I")->required();
  symbolic->add_option("query", sym.query)
      ->required()
      ->check(CLI::IsMember(
          {"enumerate", "leq", "meet", "join", "crank", "principal", "star", "dot"}));
  symbolic->add_option("args", sym.args, "Descriptors, or two finitary partitions");
  symbolic->add_option("--n-max", sym.n_max, "Largest CT1 q in enumerations");
  symbolic->add_flag("--ct2-only", sym.ct2_only, "Enumerate only descriptors of the second kind");
  symbolic->add_flag("--ct1-only", sym.ct1_only, "Enumerate only descriptors of the first kind");
  symbolic->add_flag("--list", sym.list, "Print each descriptor before the count");

  CheckArgs chk;
  auto* check = app.add_subcommand("check", "Seeded property suites");
  check->add_option("suite", chk.suite)
      ->required()
      ->check(CLI::IsMember({"inequalities", "order", "green", "bridge", "all"}));
  check->add_option("--samples", chk.samples, "Random triples for the inequalities");
  check->add_option("--triples", chk.triples, "Random triples for distributivity");
  check->add_option("--n", chk.n, "Degree for the Green oracle");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  cfg.caps.max_table_bytes = cfg.table_mb << 20;
  cfg.format = format == "jsonl" ? OutputFormat::jsonl
               : format == "dot" ? OutputFormat::dot
                                 : OutputFormat::text;
  try {
    if (*monoid) {
      return cmd_monoid(cfg, family_of(family, n), action);
    }
    if (*cong) {
      return cmd_cong(cfg, family_of(family, n), action);
    }
    if (*symbolic) {
      return cmd_symbolic(cfg, sym);
    }
    return cmd_check(cfg, chk);
  } catch (CapExceeded const& e) {
    std::cerr << "dmcong: cap exceeded: " << e.what() << '\n';
    return Exit::cap;
  } catch (Mismatch const& e) {
    std::cerr << "dmcong: " << e.what() << '\n';
    return Exit::usage;
  } catch (InvalidArgument const& e) {
    std::cerr << "dmcong: " << e.what() << '\n';
    return Exit::usage;
  } catch (std::exception const& e) {
    std::cerr << "dmcong: " << e.what() << '\n';
    return Exit::mismatch;
  }
}
