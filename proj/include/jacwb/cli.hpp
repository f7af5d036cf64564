#pragma once

#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jacwb/corpus.hpp"
#include "jacwb/ext.hpp"

namespace jacwb::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Default worker count: WORKBENCH_JOBS when set to a positive integer, else 1.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("WORKBENCH_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace detail {

inline std::vector<std::string> strings(std::span<const Polynomial> polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

/// Module named on the command line: k, R, coker-jac, or R/(generators).
inline FpModule parse_module(const Presentation& p, const std::string& spec) {
  if (spec == "k") return FpModule::residue_field(p);
  if (spec == "R") return FpModule::free(p);
  if (spec == "coker-jac") return FpModule::cokernel(p, jacobian_matrix(p), "coker Jac");
  if (spec.rfind("R/", 0) == 0) return FpModule::quotient_module(p, Ideal(p.ring(), parse_generators(p.ring(), spec.substr(2))));
  throw PreconditionFailed("unknown module '" + spec + "' (use k, R, coker-jac or R/(...))");
}

}  // namespace detail

/// Shared state of one invocation.
struct Context {
  std::string order = "degrevlex";
  std::size_t budget = 0;
  bool json = false;
  bool timing = false;
  unsigned jobs = default_jobs();
  std::ostream* out = nullptr;
  mutable std::string current_path;

  MonomialOrder monomial_order() const { return MonomialOrder::parse(order); }

  PresentationFile load(const std::string& path) const {
    std::string text;
    if (path == "-") {
      std::ostringstream s;
      s << std::cin.rdbuf();
      text = s.str();
    } else {
      text = read_file(path);
    }
    current_path = path;
    return parse_presentation(text, monomial_order());
  }

  /// Prints either the JSON document or the text lines.
  void emit(const std::string& command, const Json& result, const std::vector<std::string>& text) const {
    if (json) {
      Json j;
      j["schema"] = 1;
      j["command"] = command;
      j["result"] = result;
      *out << j.dump(2) << "\n";
    } else {
      for (const auto& line : text) *out << line << "\n";
    }
  }
};

/// Parses and dispatches; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  CLI::App app{"Jacobian-ideal workbench: Groebner bases, Jacobian ideals J_n, loci checks and Ext annihilators", "jacwb"};
  app.require_subcommand(1);
  app.add_option("--order", ctx.order, "monomial order: degrevlex, lex or block:<k>")->capture_default_str();
  app.add_option("--budget", ctx.budget, "critical-pair budget per Groebner computation (0 keeps the default)");
  app.add_flag("--json", ctx.json, "emit a JSON document");
  app.add_option("--jobs", ctx.jobs, "worker threads for corpus runs (default from WORKBENCH_JOBS)")
      ->check(CLI::PositiveNumber);

  int code = kExitPass;
  std::string file, file2, poly, prime_text, field_text = "Q", base = "X", module_m = "k", module_n = "k", dir;
  int r = 1, n = 0, i = 1;
  bool failures_only = false;

  auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "presentation file ('-' for stdin)")->required(); };

  auto* groebner_cmd = app.add_subcommand("groebner", "reduced Groebner basis of the relations");
  with_file(groebner_cmd);
  groebner_cmd->callback([&] {
    auto f = ctx.load(file);
    Ideal I(f.ring, f.relations);
    auto gens = I.canonical_generators();
    ctx.emit("groebner", Json{{"order", f.ring->order().name()}, {"basis", detail::strings(gens)}},
             detail::strings(gens));
  });

  auto* dim_cmd = app.add_subcommand("dim", "Krull dimension of S/I");
  with_file(dim_cmd);
  dim_cmd->callback([&] {
    auto f = ctx.load(file);
    auto d = krull_dimension(Ideal(f.ring, f.relations));
    ctx.emit("dim", d ? Json(*d) : Json("empty"), {d ? std::to_string(*d) : "empty"});
  });

  auto* edd_cmd = app.add_subcommand("edd", "equidimensional defect");
  with_file(edd_cmd);
  edd_cmd->callback([&] {
    auto p = ctx.load(file).presentation();
    auto rep = edd(p);
    ctx.emit("edd", Json{{"edd", rep.edd}, {"dim", rep.dim_r}, {"component_dims", rep.component_dims}},
             {std::to_string(rep.edd)});
  });

  auto* mp_cmd = app.add_subcommand("minprimes", "minimal primes with certification flag");
  with_file(mp_cmd);
  mp_cmd->callback([&] {
    auto f = ctx.load(file);
    auto mp = minimal_primes(Ideal(f.ring, f.relations));
    std::vector<std::string> primes;
    for (const auto& p : mp.primes) primes.push_back(p.canonical_string());
    ctx.emit("minprimes", Json{{"primes", primes}, {"certified", mp.certified}, {"method", mp.method_name()}},
             {detail::join(primes, ", "), std::string("certified: ") + (mp.certified ? "yes" : "no")});
    if (!mp.certified) code = kExitFail;
  });

  auto* jac_cmd = app.add_subcommand("jacobian", "Jacobian matrix (rows: variables, columns: relations)");
  with_file(jac_cmd);
  jac_cmd->callback([&] {
    auto f = ctx.load(file);
    auto J = jacobian_matrix(f.ring, f.relations);
    Json rows = Json::array();
    std::vector<std::string> text;
    for (std::size_t a = 0; a < J.rows(); ++a) {
      std::vector<std::string> row;
      for (std::size_t b = 0; b < J.cols(); ++b) row.push_back(J.at(a, b).to_string());
      rows.push_back(row);
      text.push_back("[" + detail::join(row, ", ") + "]");
    }
    ctx.emit("jacobian", Json{{"rows", rows}}, text);
  });

  auto* minors_cmd = app.add_subcommand("minors", "ideal of r-minors of the Jacobian matrix");
  with_file(minors_cmd);
  minors_cmd->add_option("-r", r, "minor size")->required();
  minors_cmd->callback([&] {
    auto f = ctx.load(file);
    auto gens = minors_ideal(jacobian_matrix(f.ring, f.relations), r).canonical_generators();
    ctx.emit("minors", Json{{"r", r}, {"ideal", detail::strings(gens)}},
             {Ideal::list_string(gens)});
  });

  auto* jn_cmd = app.add_subcommand("jn", "J_n as its preimage I_{n+d}(Jac) + I");
  with_file(jn_cmd);
  jn_cmd->add_option("-n", n, "index n")->required();
  jn_cmd->callback([&] {
    auto p = ctx.load(file).presentation();
    auto j = jn_ideal(p, n);
    auto gens = j.value_in_s.canonical_generators();
    ctx.emit("jn", Json{{"n", n}, {"minor_size", j.minor_size}, {"jacobian_ideal", j.is_jacobian_ideal()},
                        {"ideal", detail::strings(gens)}},
             {Ideal::list_string(gens)});
  });

  auto* contains_cmd = app.add_subcommand("contains", "ideal membership of polynomials in I");
  with_file(contains_cmd);
  contains_cmd->add_option("poly", poly, "polynomial or (generator list)")->required();
  contains_cmd->callback([&] {
    auto f = ctx.load(file);
    Ideal I(f.ring, f.relations);
    bool all = true;
    for (const auto& g : parse_generators(f.ring, poly)) all = all && I.contains(g);
    ctx.emit("contains", Json(all), {all ? "true" : "false"});
  });

  auto* radical_cmd = app.add_subcommand("radical-member", "membership in the radical of I");
  with_file(radical_cmd);
  radical_cmd->add_option("poly", poly, "polynomial or (generator list)")->required();
  radical_cmd->callback([&] {
    auto f = ctx.load(file);
    Ideal I(f.ring, f.relations);
    bool all = true;
    for (const auto& g : parse_generators(f.ring, poly)) all = all && radical_membership(g, I);
    ctx.emit("radical-member", Json(all), {all ? "true" : "false"});
  });

  auto locus_json = [](const LocusReport& rep) {
    Json j{{"sing", rep.sing ? Json(detail::strings(rep.sing->canonical_generators())) : Json(nullptr)},
           {"empty", rep.sing && rep.sing->is_unit()},
           {"provenance", rep.provenance_name()}};
    if (!rep.checks.empty()) j["checks"] = rep.checks;
    j["notes"] = rep.notes;
    return j;
  };

  auto* sing_cmd = app.add_subcommand("sing", "defining ideal of the singular locus");
  with_file(sing_cmd);
  sing_cmd->callback([&] {
    auto f = ctx.load(file);
    auto rep = singular_locus(f.presentation(), f.expect.sing);
    std::vector<std::string> text{rep.sing->is_unit() ? "empty" : rep.sing->canonical_string(),
                                  "provenance: " + rep.provenance_name()};
    for (const auto& note : rep.notes) text.push_back("note: " + note);
    ctx.emit("sing", locus_json(rep), text);
  });

  auto* check_cmd = app.add_subcommand("check", "conditions Sing ⊆ V(J_n) and Spec = V(J_{n+1})");
  with_file(check_cmd);
  check_cmd->add_option("-n", n, "index n")->required();
  check_cmd->callback([&] {
    auto f = ctx.load(file);
    auto p = f.presentation();
    auto rep = check_conditions(p, n, singular_locus(p, f.expect.sing));
    std::vector<std::string> text;
    for (const auto& [k, v] : rep.checks) text.push_back(k + " = " + (v ? "true" : "false"));
    for (const auto& note : rep.notes) text.push_back("note: " + note);
    // declared expectations turn the query into a check
    auto mismatch = [&](const std::map<int, bool>& want, const std::string& key) {
      auto it = want.find(n);
      return it != want.end() && rep.checks.at(key + "_" + std::to_string(n)) != it->second;
    };
    if (mismatch(f.expect.cond_ii, "cond_ii") || mismatch(f.expect.cond_iii, "cond_iii")) {
      code = kExitFail;
      text.push_back("mismatch with declared expectations");
    }
    ctx.emit("check", locus_json(rep), text);
  });

  auto* ext_cmd = app.add_subcommand("ext-ann", "annihilator of Ext^i(M, N)");
  with_file(ext_cmd);
  ext_cmd->add_option("-i", i, "Ext degree")->required();
  ext_cmd->add_option("-M,--left", module_m, "first module: k, R, coker-jac or R/(...)")->capture_default_str();
  ext_cmd->add_option("-N,--right", module_n, "second module")->capture_default_str();
  ext_cmd->callback([&] {
    auto p = ctx.load(file).presentation();
    auto rep = ext_annihilator(detail::parse_module(p, module_m), detail::parse_module(p, module_n), i);
    auto gens = rep.ann.canonical_generators();
    ctx.emit("ext-ann", Json{{"i", i}, {"ann", detail::strings(gens)}, {"ext_vanishes", rep.ext_vanishes}},
             {Ideal::list_string(gens)});
  });

  auto* ca_cmd = app.add_subcommand("ca-bound", "intersection of Ext^i annihilators over the default module family");
  with_file(ca_cmd);
  ca_cmd->add_option("-i", i, "Ext degree")->required();
  ca_cmd->callback([&] {
    auto p = ctx.load(file).presentation();
    auto family = default_family(p);
    auto rep = ca_upper_bound(p, i, all_pairs(family));
    auto gens = rep.ann.canonical_generators();
    std::vector<std::string> names;
    for (const auto& M : family) names.push_back(M.name);
    ctx.emit("ca-bound",
             Json{{"i", i}, {"family", names}, {"upper_bound", detail::strings(gens)}, {"caveat", ExtAnnReport::caveat}},
             {Ideal::list_string(gens), std::string("caveat: ") + ExtAnnReport::caveat});
  });

  auto* construct_cmd = app.add_subcommand("construct", "build presentations from the constructions");
  construct_cmd->require_subcommand(1);
  auto emit_presentations = [&](const std::string& name, const std::vector<std::pair<std::string, Presentation>>& ps) {
    Json j = Json::object();
    std::vector<std::string> text;
    for (const auto& [label, p] : ps) {
      std::string body = serialize_presentation(presentation_file(p));
      j[label] = body;
      if (ps.size() > 1) text.push_back("# " + label);
      std::istringstream lines(body);
      for (std::string line; std::getline(lines, line);) text.push_back(line);
    }
    ctx.emit("construct " + name, j, text);
  };

  auto* tensor_cmd = construct_cmd->add_subcommand("tensor", "tensor product over k of two presentations");
  tensor_cmd->add_option("file", file, "first presentation")->required();
  tensor_cmd->add_option("file2", file2, "second presentation")->required();
  tensor_cmd->callback([&] {
    auto t = tensor_presentation(ctx.load(file).presentation(), ctx.load(file2).presentation());
    emit_presentations("tensor", {{"tensor", t}});
  });

  auto* sq_cmd = construct_cmd->add_subcommand("square-zero", "k[X_1..X_n]/(X_1..X_n)^2");
  sq_cmd->add_option("-n", n, "number of variables")->required();
  sq_cmd->add_option("--field", field_text, "Q or GF<p>, e.g. GF101")->capture_default_str();
  sq_cmd->add_option("--base", base, "variable name stem")->capture_default_str();
  sq_cmd->callback([&] {
    CoeffField k = CoeffField::rationals();
    if (field_text.rfind("GF", 0) == 0) {
      k = CoeffField::prime(std::stoull(field_text.substr(2)));
    } else if (field_text != "Q") {
      throw PreconditionFailed("field must be Q or GF<p>");
    }
    emit_presentations("square-zero", {{"square-zero", square_zero_algebra(k, n, base)}});
  });

  auto* reduce_cmd = construct_cmd->add_subcommand("reduce-edd", "adjoin Y and multiply the low components by Y");
  with_file(reduce_cmd);
  reduce_cmd->callback([&] {
    auto p = ctx.load(file).presentation();
    emit_presentations("reduce-edd", {{"reduced", edd_reducer(p, minimal_primes(p.relations()))}});
  });

  auto* cx_cmd = construct_cmd->add_subcommand("counterexample", "rings with the same radical violating the conditions");
  with_file(cx_cmd);
  cx_cmd->add_option("--prime", prime_text, "coordinate minimal prime, e.g. \"(Y1, Y2, Y3)\"")->required();
  cx_cmd->add_option("-n", n, "index n")->required();
  cx_cmd->callback([&] {
    auto p = ctx.load(file).presentation();
    auto pair = counterexample_builder(p, Ideal(p.ring(), parse_generators(p.ring(), prime_text)), n);
    emit_presentations("counterexample", {{"violates_cond_ii", pair.violates_ii}, {"violates_cond_iii", pair.violates_iii}});
  });

  auto* corpus_cmd = app.add_subcommand("corpus", "corpus operations");
  corpus_cmd->require_subcommand(1);
  auto* corpus_run = corpus_cmd->add_subcommand("run", "run every case file in a directory");
  corpus_run->add_option("dir", dir, "directory of .pres files")->required();
  corpus_run->add_flag("--timing", ctx.timing, "add wall-clock seconds per case under \"timing\"");
  corpus_run->add_flag("--failures-only", failures_only, "text mode: list only non-passing records");
  corpus_run->callback([&] {
    auto reports = run_corpus(dir, ctx.jobs, ctx.monomial_order());
    auto s = summarize(reports);
    if (ctx.json) {
      out << corpus_json(reports, ctx.timing).dump(2) << "\n";
    } else {
      for (const auto& c : reports)
        for (const auto& rec : c.records) {
          if (failures_only && rec.status == CheckStatus::pass) continue;
          out << status_name(rec.status) << "  " << rec.case_id << "  " << rec.operation << "  " << rec.result;
          if (rec.expected && rec.status != CheckStatus::pass) out << "  (expected " << *rec.expected << ")";
          out << "\n";
        }
      out << "summary: " << reports.size() << " cases, " << s.pass << " pass, " << s.fail << " fail, " << s.skipped
          << " skipped-uncertified\n";
    }
    if (s.fail) code = s.budget_exceeded ? kExitBudget : kExitFail;
  });

  app.parse_complete_callback([&] {
    if (ctx.budget) set_default_pair_budget(ctx.budget);
    MonomialOrder::parse(ctx.order);
  });

  // --budget only applies to this invocation
  struct BudgetRestore {
    std::size_t saved = default_pair_budget();
    ~BudgetRestore() { set_default_pair_budget(saved); }
  } restore;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << (ctx.current_path.empty() ? "" : ctx.current_path + ": ") << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionFailed& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstructionInapplicable& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return code;
}

}  // namespace jacwb::cli
