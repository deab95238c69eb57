#pragma once

// `fibcomp` command line.  Results go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 bad input, 2 failed verification/certification.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibcomp/analytic.hpp"
#include "fibcomp/bijection.hpp"
#include "fibcomp/core.hpp"
#include "fibcomp/counting.hpp"
#include "fibcomp/enumerate.hpp"
#include "fibcomp/genfun.hpp"
#include "fibcomp/verify.hpp"

namespace fibcomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitVerifyFailed = 2;

inline constexpr std::uint64_t kEnumerateCap = 30;

/// Either kind of class named on the command line.
struct ParsedClass {
  std::optional<CompositionClass> composition;
  std::optional<PartitionClass> partition;
  std::string name;
};

inline ParsedClass parse_class(const std::string& text) {
  ParsedClass pc;
  pc.name = text;
  if (text == "compositions:all") pc.composition = CompositionClass::all;
  else if (text == "compositions:odd-parts") pc.composition = CompositionClass::odd_parts;
  else if (text == "compositions:min-part-2") pc.composition = CompositionClass::min_part_2;
  else if (text == "compositions:distinct-parts") pc.composition = CompositionClass::distinct_parts;
  else if (text == "partitions:all") pc.partition = PartitionClass::all();
  else if (text == "partitions:odd-parts") pc.partition = PartitionClass::odd_parts();
  else if (text == "partitions:distinct-parts") pc.partition = PartitionClass::distinct_parts();
  else {
    const std::string prefix = "partitions:distinct-with-exactly-", suffix = "-parts";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + suffix.size() &&
        text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
      std::string mid = text.substr(prefix.size(), text.size() - prefix.size() - suffix.size());
      if (!mid.empty() && mid.size() <= 6 && mid.find_first_not_of("0123456789") == std::string::npos) {
        pc.partition = PartitionClass::distinct_exactly(static_cast<unsigned>(std::stoul(mid)));
      }
    }
  }
  if (!pc.composition && !pc.partition) throw DomainError("unknown class '" + text + "'");
  return pc;
}

namespace detail {

// A memo table optionally backed by a cache file in `dir`.
class CachedTable {
 public:
  CachedTable(MemoTable::Kind kind, const std::optional<std::filesystem::path>& dir) : table_(kind) {
    if (dir) {
      path_ = *dir / (MemoTable::kind_name(kind) + ".table");
      if (std::filesystem::exists(*path_)) table_ = MemoTable::load(*path_, kind);
    }
  }

  const BigCount& at(std::uint64_t n) {
    const auto before = table_.max_index();
    const auto& v = table_.at(n);
    if (path_ && table_.max_index() > before) {
      std::filesystem::create_directories(path_->parent_path());
      table_.save(*path_);
    }
    return v;
  }

 private:
  MemoTable table_;
  std::optional<std::filesystem::path> path_;
};

inline BigCount count_by_formula(const ParsedClass& pc, std::uint64_t n,
                                 const std::optional<std::filesystem::path>& cache) {
  if (pc.composition) {
    if (n < 1) throw DomainError("compositions are defined for n >= 1");
    switch (*pc.composition) {
      case CompositionClass::all: return c_count(n);
      case CompositionClass::odd_parts: return CachedTable(MemoTable::Kind::fib, cache).at(n);
      case CompositionClass::min_part_2:
        if (n < 2) throw DomainError("compositions into parts greater than one need n >= 2");
        return CachedTable(MemoTable::Kind::fib, cache).at(n - 1);
      case CompositionClass::distinct_parts: return distinct_compositions_gf(n)[n];
    }
  }
  switch (pc.partition->kind) {
    case PartitionClass::Kind::all: return CachedTable(MemoTable::Kind::p, cache).at(n);
    case PartitionClass::Kind::odd_parts:
    case PartitionClass::Kind::distinct_parts: return CachedTable(MemoTable::Kind::q, cache).at(n);
    case PartitionClass::Kind::distinct_exactly_ell: return distinct_partitions_ell_gf(pc.partition->ell, n)[n];
  }
  return 0;
}

inline nlohmann::json report_json(const SeriesEvalReport& r, const std::string& which) {
  return nlohmann::json{
      {"function", which},
      {"n", r.n},
      {"k_terms_used", r.k_terms_used},
      {"precision_bits", r.precision_bits},
      {"raw_value", r.raw_value.to_decimal()},
      {"rounded", r.rounded.get_str()},
      {"residual", r.residual.to_decimal()},
      {"stability", r.stability.to_decimal()},
      {"escalations", r.escalations},
      {"certified", r.certified},
  };
}

inline TruncatedSeries named_series(const std::string& name, std::size_t order, std::optional<std::size_t> ell) {
  if (name == "partitions") return partition_gf(order);
  if (name == "compositions") return compositions_gf(order);
  if (name == "odd-parts") return odd_parts_gf(order);
  if (name == "distinct-parts") return distinct_parts_gf(order);
  if (name == "distinct-compositions") return distinct_compositions_gf(order);
  if (name == "euler-product") return euler_product(order);
  if (name == "distinct-partitions-ell") {
    if (!ell) throw DomainError("series distinct-partitions-ell needs --ell");
    return distinct_partitions_ell_gf(*ell, order);
  }
  throw DomainError("unknown series '" + name + "'");
}

inline std::uint64_t default_verify_bound(const std::string& suite) {
  if (suite == "codec") return 12;
  if (suite == "bijection") return 14;
  if (suite == "counts") return 20;
  if (suite == "genfun") return 40;
  return 100;
}

}  // namespace detail

/// Entry point; `args[0]` is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fibcomp: compositions, partitions and Fibonacci numbers, exactly", "fibcomp"};
  app.require_subcommand(1);

  std::string cache_dir;
  unsigned threads = 1;
  app.add_option("--cache-dir", cache_dir, "Directory for memo-table cache files")->envname("FIBCOMP_CACHE_DIR");
  app.add_option("--threads", threads, "Worker threads for analytic term evaluation")->check(CLI::Range(1u, 256u));

  // count
  auto* count = app.add_subcommand("count", "Count a class of compositions or partitions of n");
  std::string count_class, count_method = "formula";
  std::uint64_t count_n = 0;
  bool count_json = false;
  count->add_option("--class", count_class, "e.g. compositions:all, partitions:odd-parts")->required();
  count->add_option("n", count_n, "The integer being decomposed")->required();
  count->add_option("--method", count_method, "formula or enumerate")->check(CLI::IsMember({"formula", "enumerate"}));
  count->add_flag("--json", count_json);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "List a class of compositions or partitions of n");
  std::string enum_class;
  std::uint64_t enum_n = 0;
  std::optional<std::uint64_t> enum_limit;
  bool enum_count = false, enum_force = false, enum_json = false;
  enumerate->add_option("--class", enum_class)->required();
  enumerate->add_option("n", enum_n)->required();
  auto* limit_opt = enumerate->add_option("--limit", enum_limit, "Stop after K items");
  enumerate->add_flag("--count", enum_count, "Print only the total")->excludes(limit_opt);
  enumerate->add_flag("--force", enum_force, "Allow n > 30");
  enumerate->add_flag("--json", enum_json);

  // map
  auto* map = app.add_subcommand("map", "Apply the odd-parts / parts>1 bijection or a codec operation");
  std::string map_fwd, map_inv, map_conj, map_bits, map_from_bits, map_graph;
  bool map_trace = false, map_json = false;
  auto* fwd_opt = map->add_option("--odd-to-gt1", map_fwd, "Composition of n into odd parts");
  auto* inv_opt = map->add_option("--gt1-to-odd", map_inv, "Composition of n+1 into parts > 1");
  auto* conj_opt = map->add_option("--conjugate", map_conj, "Conjugate a composition");
  auto* bits_opt = map->add_option("--to-bits", map_bits, "MacMahon bit sequence of a composition");
  auto* from_opt = map->add_option("--from-bits", map_from_bits, "Composition from a MacMahon bit sequence");
  auto* graph_opt = map->add_option("--graph", map_graph, "MacMahon graph of a composition");
  std::vector<CLI::Option*> map_ops{fwd_opt, inv_opt, conj_opt, bits_opt, from_opt, graph_opt};
  for (auto* a : map_ops) {
    for (auto* b : map_ops) {
      if (a != b) a->excludes(b);
    }
  }
  map->add_flag("--trace", map_trace, "Show the intermediate compositions a', b");
  map->add_flag("--json", map_json);

  // series
  auto* series = app.add_subcommand("series", "Print generating-function coefficients");
  std::string series_name;
  std::size_t series_order = 0;
  std::optional<std::size_t> series_ell;
  series->add_option("name", series_name,
                     "partitions | compositions | odd-parts | distinct-parts | distinct-compositions | "
                     "distinct-partitions-ell | euler-product")
      ->required();
  series->add_option("--order", series_order)->required();
  series->add_option("--ell", series_ell, "Number of distinct parts for distinct-partitions-ell");

  // analytic
  auto* analytic = app.add_subcommand("analytic", "Evaluate p(n) or q(n) from its convergent series");
  std::string which;
  std::uint64_t an_n = 0;
  std::optional<std::uint64_t> an_kmax;
  std::optional<long> an_bits;
  int an_escalations = SeriesOptions{}.max_escalations;
  bool an_json = false;
  analytic->add_option("function", which, "p or q")->required()->check(CLI::IsMember({"p", "q"}));
  analytic->add_option("n", an_n)->required();
  analytic->add_option("--kmax", an_kmax, "Starting truncation point");
  analytic->add_option("--bits", an_bits, "Starting working precision (>= 64)");
  analytic->add_option("--max-escalations", an_escalations, "Times K and precision may double before giving up")
      ->check(CLI::Range(0, 16));
  analytic->add_flag("--json", an_json);

  // verify
  auto* verify = app.add_subcommand("verify", "Run an invariant battery against the enumeration oracles");
  std::string suite;
  std::optional<std::uint64_t> max_n;
  verify->add_option("--suite", suite)->required()->check(
      CLI::IsMember({"codec", "bijection", "counts", "genfun", "analytic", "all"}));
  verify->add_option("--max-n", max_n);

  std::vector<std::string> storage(args);
  if (storage.empty()) storage.emplace_back("fibcomp");
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitBadInput;
  }

  std::optional<std::filesystem::path> cache;
  if (!cache_dir.empty()) cache = std::filesystem::path(cache_dir);

  try {
    if (*count) {
      auto pc = parse_class(count_class);
      BigCount total = count_method == "enumerate"
                           ? (pc.composition ? count_by_enumeration(count_n, *pc.composition)
                                             : count_by_enumeration(count_n, *pc.partition))
                           : detail::count_by_formula(pc, count_n, cache);
      if (count_json) {
        out << nlohmann::json{{"class", pc.name}, {"n", count_n}, {"method", count_method}, {"count", total.get_str()}}
                   .dump()
            << "\n";
      } else {
        out << total.get_str() << "\n";
      }
      return kExitOk;
    }

    if (*enumerate) {
      auto pc = parse_class(enum_class);
      if (enum_n > kEnumerateCap && !enum_force && !enum_limit) {
        throw DomainError("enumerate refuses n > " + std::to_string(kEnumerateCap) + " without --force or --limit");
      }
      if (enum_count) {
        BigCount total = pc.composition ? count_by_enumeration(enum_n, *pc.composition)
                                        : count_by_enumeration(enum_n, *pc.partition);
        if (enum_json) out << nlohmann::json{{"class", pc.name}, {"n", enum_n}, {"count", total.get_str()}}.dump() << "\n";
        else out << total.get_str() << "\n";
        return kExitOk;
      }
      nlohmann::json items = nlohmann::json::array();
      std::uint64_t emitted = 0;
      auto emit = [&](const std::string& text) {
        if (enum_json) items.push_back(text);
        else out << text << "\n";
        ++emitted;
      };
      auto more = [&] { return !enum_limit || emitted < *enum_limit; };
      if (pc.composition) {
        CompositionGenerator gen(enum_n, *pc.composition);
        while (more()) {
          auto c = gen.next();
          if (!c) break;
          emit(to_string(*c));
        }
      } else {
        PartitionGenerator gen(enum_n, *pc.partition);
        while (more()) {
          auto p = gen.next();
          if (!p) break;
          emit(to_string(*p));
        }
      }
      if (enum_json) out << nlohmann::json{{"class", pc.name}, {"n", enum_n}, {"items", items}}.dump() << "\n";
      return kExitOk;
    }

    if (*map) {
      if (fwd_opt->count() + inv_opt->count() + conj_opt->count() + bits_opt->count() + from_opt->count() +
              graph_opt->count() == 0) {
        throw DomainError("map needs one of --odd-to-gt1, --gt1-to-odd, --conjugate, --to-bits, --from-bits, --graph");
      }
      std::string input, output;
      std::optional<BijectionTrace> trace;
      if (fwd_opt->count()) {
        input = map_fwd;
        trace = trace_forward(parse_composition(map_fwd));
        output = to_string(trace->c);
      } else if (inv_opt->count()) {
        input = map_inv;
        auto a = gt1_to_odd(parse_composition(map_inv));
        output = to_string(a);
        if (map_trace) trace = trace_forward(a);
      } else if (conj_opt->count()) {
        input = map_conj;
        output = to_string(conjugate(parse_composition(map_conj)));
      } else if (bits_opt->count()) {
        input = map_bits;
        output = to_bitseq(parse_composition(map_bits)).to_string();
      } else if (from_opt->count()) {
        input = map_from_bits;
        output = to_string(from_bitseq(BitSeq::parse(map_from_bits)));
      } else {
        input = map_graph;
        output = render_graph(parse_composition(map_graph));
      }
      if (map_trace && !trace) throw DomainError("--trace applies to --odd-to-gt1 and --gt1-to-odd only");
      if (map_json) {
        nlohmann::json j{{"input", input}, {"output", output}};
        if (map_trace) {
          j["trace"] = {{"a", to_string(trace->a)},
                        {"a_conj", to_string(trace->a_conj)},
                        {"b", to_string(trace->b)},
                        {"c", to_string(trace->c)}};
        }
        out << j.dump() << "\n";
      } else if (map_trace) {
        out << trace->to_text();
      } else {
        out << output << "\n";
      }
      return kExitOk;
    }

    if (*series) {
      auto s = detail::named_series(series_name, series_order, series_ell);
      for (std::size_t i = 0; i <= s.order(); ++i) out << i << "\t" << s[i].get_str() << "\n";
      return kExitOk;
    }

    if (*analytic) {
      SeriesOptions opts;
      opts.kmax = an_kmax;
      if (an_bits) opts.bits = static_cast<mpfr_prec_t>(*an_bits);
      opts.max_escalations = an_escalations;
      opts.threads = threads;
      auto rep = which == "p" ? rademacher_p(an_n, opts) : hagis_q(an_n, opts);
      if (an_json) {
        out << detail::report_json(rep, which).dump() << "\n";
      } else {
        out << "function " << which << "\n"
            << "n " << rep.n << "\n"
            << "k_terms_used " << rep.k_terms_used << "\n"
            << "precision_bits " << rep.precision_bits << "\n"
            << "raw_value " << rep.raw_value.to_decimal() << "\n"
            << "rounded " << rep.rounded.get_str() << "\n"
            << "residual " << rep.residual.to_decimal() << "\n"
            << "stability " << rep.stability.to_decimal() << "\n"
            << "escalations " << rep.escalations << "\n"
            << "certified " << (rep.certified ? "true" : "false") << "\n";
      }
      if (!rep.certified) {
        err << "error: " << which << "(" << an_n << ") could not be certified\n";
        return kExitVerifyFailed;
      }
      return kExitOk;
    }

    if (*verify) {
      std::vector<std::string> suites = suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      for (const auto& s : suites) {
        auto rep = verify_suite(s, max_n.value_or(detail::default_verify_bound(s)), threads);
        rep.print(out);
        ok = ok && rep.passed();
      }
      out << (ok ? "verify: all checks passed" : "verify: FAILED") << "\n";
      return ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::runtime_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitBadInput;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace fibcomp::cli
