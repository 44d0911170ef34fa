// Command-line front end: parse, prove, eliminate fixed points, compute
// closure ordinals and Ruitenburg numbers, run bound checks, benchmark
// families, the support game, and finite-model validity checks.
//
// Exit codes: 0 success, 1 logical failure (not derivable, not equivalent,
// a lost game, a refuted formula, a bound violation), 2 usage or input error.

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "muipc/eliminate.hpp"
#include "muipc/heyting.hpp"
#include "muipc/ordinals.hpp"
#include "muipc/prover.hpp"
#include "muipc/wordgame.hpp"

using nlohmann::json;
using namespace muipc;

namespace {

enum ExitCode { kOk = 0, kLogicalFailure = 1, kUsageError = 2 };

struct CommonOpts {
  std::string inline_input;
  std::string file;
  std::string format = "text";
  bool verify = false;
  bool simplify = false;
  bool compact = false;
  unsigned cap = 0;
  unsigned seed = 0;
  std::string var = "x";
};

void add_io_options(CLI::App* cmd, CommonOpts& o, bool with_formula = true) {
  if (with_formula)
    cmd->add_option("formula", o.inline_input, "formula in concrete syntax");
  cmd->add_option("--file", o.file, "batch mode: one input per line");
  cmd->add_option("--format", o.format, "text|json")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--seed", o.seed, "RNG seed for sampled corpora");
}

std::vector<std::string> gather_inputs(const CommonOpts& o) {
  const bool has_inline = !o.inline_input.empty();
  const bool has_file = !o.file.empty();
  if (has_inline == has_file)
    throw CLI::ValidationError("input", "provide exactly one of an inline formula or --file");
  if (has_inline) return {o.inline_input};
  std::ifstream in(o.file);
  if (!in) throw CLI::ValidationError("input", "cannot open " + o.file);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

Sequent parse_sequent(const std::string& text) {
  Sequent s;
  auto turnstile = text.find("|-");
  if (turnstile == std::string::npos) {
    s.goal = parse(text);
    return s;
  }
  std::string lhs = text.substr(0, turnstile);
  s.goal = parse(text.substr(turnstile + 2));
  std::stringstream ss(lhs);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    s.context.push_back(parse(part));
  }
  return s;
}

// Runs fn on every input, concurrently in batch mode, output in input order.
// Returns the worst per-line exit code.
int for_each_input(const std::vector<std::string>& inputs,
                   const std::function<std::pair<int, json>(const std::string&)>& fn,
                   const std::string& format,
                   const std::function<std::string(const json&)>& render_text) {
  std::vector<std::future<std::pair<int, json>>> futures;
  futures.reserve(inputs.size());
  for (const std::string& line : inputs)
    futures.push_back(std::async(inputs.size() > 1 ? std::launch::async : std::launch::deferred,
                                 fn, line));
  int worst = kOk;
  json results = json::array();
  for (auto& f : futures) {
    auto [code, report] = f.get();
    worst = std::max(worst, code);
    if (format == "json") results.push_back(report);
    else std::cout << render_text(report) << '\n';
  }
  if (format == "json")
    std::cout << (results.size() == 1 ? results[0].dump(2) : results.dump(2)) << '\n';
  return worst;
}

json ordinal_report(const OrdinalResult& r) {
  json j;
  j["value"] = r.value;
  j["cap_hit"] = r.cap_hit;
  json approx = json::array();
  for (const Formula& a : r.approximants) approx.push_back(a.to_string());
  j["approximants"] = approx;
  return j;
}

OrdinalOptions ordinal_opts(const CommonOpts& o) {
  OrdinalOptions opts;
  opts.cap = o.cap;
  opts.compact = o.compact;
  opts.verify = o.verify;  // a cap hit is a hard error only in verify mode
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic toolkit for intuitionistic fixed-point logic"};
  app.require_subcommand(1);

  CommonOpts opt;
  bool show_trace = false;
  std::string other_formula;
  std::string conjuncts_file, poset_file;
  unsigned rounds = 0, param = 1;
  std::string family;

  auto* c_eliminate = app.add_subcommand("eliminate", "rewrite mu/nu away");
  add_io_options(c_eliminate, opt);
  c_eliminate->add_flag("--verify", opt.verify, "prover-check every pipeline obligation");
  c_eliminate->add_flag("--simplify", opt.simplify, "prover-guided pruning of the result");
  c_eliminate->add_flag("--trace", show_trace, "emit the pipeline trace");

  auto* c_prove = app.add_subcommand("prove", "decide a sequent (\"g1, g2 |- goal\" or a formula)");
  add_io_options(c_prove, opt);

  auto* c_equiv = app.add_subcommand("check-equiv", "decide provable equivalence of two formulas");
  c_equiv->add_option("lhs", opt.inline_input, "first formula")->required();
  c_equiv->add_option("rhs", other_formula, "second formula")->required();
  c_equiv->add_option("--format", opt.format, "text|json");

  auto* c_norm = app.add_subcommand("normalize", "conjunction-of-disjunctive normal form");
  add_io_options(c_norm, opt);
  c_norm->add_option("--var", opt.var, "distinguished variable (default x)");

  auto* c_cl = app.add_subcommand("closure-ordinal", "least n with f^{n+1}(F) = f^n(F)");
  add_io_options(c_cl, opt);
  c_cl->add_option("--var", opt.var, "fixed-point variable (default x)");
  c_cl->add_option("--cap", opt.cap, "iteration cap (default 2*size+2)")->check(CLI::Range(1u, 1000000u));
  c_cl->add_flag("--compact", opt.compact, "prover-guided compaction of iterates");
  c_cl->add_flag("--verify", opt.verify, "treat a cap hit as a hard error");

  auto* c_rho = app.add_subcommand("ruitenburg", "least n with f^{n+2} = f^n (x kept free)");
  add_io_options(c_rho, opt);
  c_rho->add_option("--var", opt.var, "iteration variable (default x)");
  c_rho->add_option("--cap", opt.cap, "iteration cap (default 2*size+2)")->check(CLI::Range(1u, 1000000u));
  c_rho->add_flag("--compact", opt.compact, "prover-guided compaction of iterates");

  auto* c_vb = app.add_subcommand("verify-bounds", "check computed ordinals against upper bounds");
  add_io_options(c_vb, opt);
  c_vb->add_option("--var", opt.var, "fixed-point variable (default x)");
  c_vb->add_flag("--compact", opt.compact, "prover-guided compaction of iterates");

  auto* c_bench = app.add_subcommand("bench", "closure/Ruitenburg tables for built-in families");
  c_bench->add_option("--family", family, "phi_n|chain|atop")->required()
      ->check(CLI::IsMember({"phi_n", "chain", "atop"}));
  c_bench->add_option("--param", param, "largest family index")->required();
  c_bench->add_option("--format", opt.format, "text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  c_bench->add_option("--seed", opt.seed, "RNG seed (the built-in families are deterministic)");

  auto* c_game = app.add_subcommand("game", "exhaustive support game on star-formula conjunctions");
  c_game->add_option("--conjuncts", conjuncts_file, "file with one star formula per line")->required();
  c_game->add_option("--rounds", rounds, "number of rounds K")->required();
  c_game->add_option("--format", opt.format, "text|json");

  auto* c_mc = app.add_subcommand("model-check", "validity over the upset algebra of a poset");
  add_io_options(c_mc, opt);
  c_mc->add_option("--poset", poset_file, "poset file: n, then one 'i<j' or 'i j' per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  Prover& prover = Prover::global();

  try {
    if (c_eliminate->parsed()) {
      EliminationOptions eopts{opt.verify, opt.simplify};
      return for_each_input(
          gather_inputs(opt),
          [&](const std::string& line) -> std::pair<int, json> {
            auto [result, trace] = eliminate_all(parse(line), prover, eopts);
            json j{{"command", "eliminate"}, {"input", line}, {"result", result.to_string()}};
            if (opt.verify) j["verified"] = true;
            if (show_trace) j["trace"] = json::parse(trace.to_json());
            return {kOk, j};
          },
          opt.format,
          [&](const json& j) {
            std::string out = j["result"].get<std::string>();
            if (show_trace) out += "\n" + j["trace"].dump(2);
            return out;
          });
    }

    if (c_prove->parsed()) {
      return for_each_input(
          gather_inputs(opt),
          [&](const std::string& line) -> std::pair<int, json> {
            ProofOutcome out = prover.prove(parse_sequent(line));
            json j{{"command", "prove"},
                   {"input", line},
                   {"derivable", out.derivable},
                   {"nodes", out.stats.nodes},
                   {"max_depth", out.stats.max_depth}};
            return {out.derivable ? kOk : kLogicalFailure, j};
          },
          opt.format,
          [](const json& j) {
            return std::string(j["derivable"].get<bool>() ? "derivable" : "not derivable");
          });
    }

    if (c_equiv->parsed()) {
      bool eq = prover.equiv(parse(opt.inline_input), parse(other_formula));
      if (opt.format == "json")
        std::cout << json{{"command", "check-equiv"}, {"equiv", eq}}.dump(2) << '\n';
      else
        std::cout << (eq ? "equivalent" : "not equivalent") << '\n';
      return eq ? kOk : kLogicalFailure;
    }

    if (c_norm->parsed()) {
      return for_each_input(
          gather_inputs(opt),
          [&](const std::string& line) -> std::pair<int, json> {
            NormalForm nf = to_normal_form(parse(line), opt.var);
            json disjuncts = json::array();
            for (const Formula& d : nf.disjuncts) disjuncts.push_back(d.to_string());
            json j{{"command", "normalize"},
                   {"input", line},
                   {"x_free_part", nf.x_free_part.to_string()},
                   {"disjuncts", disjuncts}};
            return {kOk, j};
          },
          opt.format,
          [](const json& j) {
            std::string out = "x-free part: " + j["x_free_part"].get<std::string>();
            for (const auto& d : j["disjuncts"]) out += "\ndisjunct: " + d.get<std::string>();
            return out;
          });
    }

    if (c_cl->parsed()) {
      return for_each_input(
          gather_inputs(opt),
          [&](const std::string& line) -> std::pair<int, json> {
            OrdinalResult r = closure_ordinal(parse(line), opt.var, prover, ordinal_opts(opt));
            json j = ordinal_report(r);
            j["command"] = "closure-ordinal";
            j["input"] = line;
            return {kOk, j};
          },
          opt.format,
          [](const json& j) { return std::to_string(j["value"].get<unsigned>()); });
    }

    if (c_rho->parsed()) {
      return for_each_input(
          gather_inputs(opt),
          [&](const std::string& line) -> std::pair<int, json> {
            unsigned rho = ruitenburg_number(parse(line), opt.var, prover, ordinal_opts(opt));
            json j{{"command", "ruitenburg"}, {"input", line}, {"value", rho}};
            return {kOk, j};
          },
          opt.format,
          [](const json& j) { return std::to_string(j["value"].get<unsigned>()); });
    }

    if (c_vb->parsed()) {
      return for_each_input(
          gather_inputs(opt),
          [&](const std::string& line) -> std::pair<int, json> {
            BoundReport r = verify_bounds(parse(line), opt.var, prover, ordinal_opts(opt));
            json bounds = json::object();
            for (const auto& [name, b] : r.bounds) bounds[name] = b;
            json j{{"command", "verify-bounds"},
                   {"input", line},
                   {"cl", r.computed.value},
                   {"rho", r.rho},
                   {"bounds", bounds}};
            return {kOk, j};
          },
          opt.format,
          [](const json& j) {
            std::string out =
                "cl = " + std::to_string(j["cl"].get<unsigned>()) +
                ", rho = " + std::to_string(j["rho"].get<unsigned>());
            for (auto it = j["bounds"].begin(); it != j["bounds"].end(); ++it)
              out += "\n  bound " + it.key() + " = " + std::to_string(it.value().get<unsigned>());
            return out;
          });
    }

    if (c_bench->parsed()) {
      json rows = json::array();
      for (unsigned k = 1; k <= param; ++k) {
        auto start = std::chrono::steady_clock::now();
        json row{{"family", family}, {"param", k}};
        OrdinalOptions oo;
        oo.compact = true;
        if (family == "phi_n") {
          Formula f = family_phi_n(k);
          row["formula"] = f.to_string();
          row["cl"] = closure_ordinal(f, "x", prover, oo).value;
          row["rho"] = ruitenburg_number(f, "x", prover, oo);
          row["bounds"] = bound_disjunctive(DisjunctiveFormula(f, "x"));
        } else if (family == "chain") {
          ChainConjFixture fx = family_chain_conj(k + 1);  // k conjuncts
          row["formula"] = fx.formula.to_string();
          row["cl"] = lfp_iterate(fx.formula, "x", fx.algebra, fx.valuation).steps;
          row["rho"] = ruitenburg_number(fx.formula, "x", prover, oo);
          row["bounds"] = bound_conjunction(std::vector<unsigned>(k, 2));
        } else {
          std::vector<std::pair<Formula, Formula>> pairs;
          for (unsigned i = 1; i <= k; ++i)
            pairs.emplace_back(Formula::var("a" + std::to_string(i)),
                               Formula::var("b" + std::to_string(i)));
          Formula f = family_atop(pairs);
          row["formula"] = f.to_string();
          row["cl"] = closure_ordinal(f, "x", prover, oo).value;
          row["rho"] = ruitenburg_number(f, "x", prover, oo);
          row["bounds"] = bound_weakly_negative(f, "x");
        }
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
        row["wall_time"] = elapsed.count();
        rows.push_back(row);
      }
      if (opt.format == "json") {
        std::cout << rows.dump(2) << '\n';
      } else if (opt.format == "csv") {
        std::cout << "family,param,formula,cl,rho,bounds,wall_time\n";
        for (const auto& r : rows)
          std::cout << r["family"].get<std::string>() << ',' << r["param"] << ",\""
                    << r["formula"].get<std::string>() << "\"," << r["cl"] << ',' << r["rho"]
                    << ',' << r["bounds"] << ',' << r["wall_time"] << '\n';
      } else {
        for (const auto& r : rows)
          std::cout << r["family"].get<std::string>() << " k=" << r["param"]
                    << "  cl=" << r["cl"] << " rho=" << r["rho"] << " bounds=" << r["bounds"]
                    << "  (" << r["wall_time"] << "s)  " << r["formula"].get<std::string>()
                    << '\n';
      }
      return kOk;
    }

    if (c_game->parsed()) {
      std::ifstream in(conjuncts_file);
      if (!in) throw Error("cannot open " + conjuncts_file);
      std::vector<Formula> conjuncts;
      std::string line;
      while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) conjuncts.push_back(parse(line));
      Alphabets ab = infer_alphabets(conjuncts, "x");
      GameResult r = play_game(conjuncts, rounds, ab);
      json j{{"command", "game"},
             {"rounds", rounds},
             {"eve_wins_all", r.eve_wins_all},
             {"positions", r.positions}};
      if (r.losing_play) {
        json play = json::array();
        for (auto [i, jx] : *r.losing_play) play.push_back({i, jx});
        j["losing_play"] = play;
      }
      if (!r.eve_wins_all)
        j["note"] = "a lost play bounds only this strategy; it does not refute the "
                    "iterate inequality itself (use check-equiv for a direct check)";
      if (opt.format == "json") {
        std::cout << j.dump(2) << '\n';
      } else if (r.eve_wins_all) {
        std::cout << "eve wins all plays of length " << rounds << '\n';
      } else {
        std::cout << "eve loses; one losing play (conjunct,disjunct):";
        for (auto [i, jx] : *r.losing_play) std::cout << " (" << i << ',' << jx << ')';
        std::cout << '\n' << j["note"].get<std::string>() << '\n';
      }
      return r.eve_wins_all ? kOk : kLogicalFailure;
    }

    if (c_mc->parsed()) {
      std::ifstream pin(poset_file);
      if (!pin) throw Error("cannot open " + poset_file);
      std::stringstream buffer;
      buffer << pin.rdbuf();
      FinitePoset p = FinitePoset::parse(buffer.str());
      FiniteHeytingAlgebra h = FiniteHeytingAlgebra::upset_algebra(p);
      return for_each_input(
          gather_inputs(opt),
          [&](const std::string& line) -> std::pair<int, json> {
            Formula f = parse(line);
            const std::vector<std::string>& vars = f.free_vars();
            std::vector<int> assign(vars.size(), 0);
            json j{{"command", "model-check"}, {"input", line}, {"algebra_size", h.size()}};
            for (;;) {
              Valuation v;
              for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = assign[i];
              if (eval(f, h, v) != h.top()) {
                json cv = json::object();
                for (const auto& [name, e] : v) cv[name] = e;
                j["valid"] = false;
                j["counter_valuation"] = cv;
                return {kLogicalFailure, j};
              }
              std::size_t i = 0;
              for (; i < vars.size(); ++i) {
                if (++assign[i] < h.size()) break;
                assign[i] = 0;
              }
              if (i == vars.size()) break;
            }
            j["valid"] = true;
            return {kOk, j};
          },
          opt.format,
          [](const json& j) {
            if (j["valid"].get<bool>()) return std::string("valid");
            return "refuted: " + j["counter_valuation"].dump();
          });
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position() << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsageError;
  } catch (const PositivityError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    // failed obligations, bound violations, exceeded budgets
    std::cerr << "check failed: " << e.what() << '\n';
    return kLogicalFailure;
  }
  return kUsageError;
}
