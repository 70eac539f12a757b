// unavoid: command-line front end for the tournament embedding library.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or I/O error,
// 3 internal hard error (a reproduction dump is written next to the output).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "unavoid/dispatch.hpp"
#include "unavoid/generate.hpp"
#include "unavoid/io.hpp"
#include "unavoid/oracle.hpp"

using namespace unavoid;
using json = nlohmann::json;

namespace {

struct Options {
  std::uint64_t seed = 0;
  int cap = 8;
  int trials = 100;
  int leaves = 0;
  std::string alg = "auto";
  std::string out;
  std::string check;
  std::string suite = "all";
  bool json = false;
  int verbose = 0;
  std::vector<std::string> args;
};

struct CheckFailed {
  std::string what;
};

Options opt;

// Text goes to -o when given, else to stdout.
void emit(const std::string& text) {
  if (!opt.out.empty()) write_file(opt.out, text);
  else std::cout << text;
}

// JSON reports replace the text output, except where -o already receives a
// file in the core formats.
void emit_json(const json& j, bool may_write = true) {
  if (may_write && !opt.out.empty()) write_file(opt.out, j.dump(2) + "\n");
  else std::cout << j.dump(2) << "\n";
}

const std::string& arg(std::size_t i, const char* name) {
  if (i >= opt.args.size()) throw CLI::ValidationError(std::string("missing argument: ") + name);
  return opt.args[i];
}

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("not an integer: " + s);
}

OrientedTree load_tree(const std::string& path) { return tree_from_text(read_file(path)); }
Tournament load_tournament(const std::string& path) { return tournament_from_matrix(read_file(path)); }

int cmd_gen() {
  const std::string& kind = arg(0, "kind");
  if (kind == "tree") {
    const std::string& shape = arg(1, "shape");
    const int n = to_int(arg(2, "n"));
    std::mt19937_64 rng(opt.seed);
    OrientedTree a;
    if (shape == "random") a = opt.leaves ? random_tree_with_leaves(n, opt.leaves, rng) : random_tree(n, rng);
    else if (shape == "path") a = directed_path(n);
    else if (shape == "antipath") a = antidirected_path(n);
    else if (shape == "star") a = out_star(n);
    else throw CLI::ValidationError("unknown tree shape: " + shape);
    emit(to_text(a));
    return 0;
  }
  const int n = to_int(arg(1, "n"));
  Tournament t;
  if (kind == "paley") t = paley(n);
  else if (kind == "transitive") t = transitive(n);
  else if (kind == "random") t = random_tournament(n, opt.seed);
  else if (kind == "rotational") {
    std::vector<int> res;
    for (std::size_t i = 2; i < opt.args.size(); ++i) res.push_back(to_int(opt.args[i]));
    t = rotational(n, res);
  } else {
    throw CLI::ValidationError("unknown generator: " + kind);
  }
  emit(to_text(t));
  return 0;
}

int cmd_median() {
  auto t = load_tournament(arg(0, "tournament"));
  std::vector<int> order = opt.check.empty() ? local_median_order(t) : ordering_from_text(read_file(opt.check));
  auto v = check_m2(t, order);
  if (opt.json) {
    emit_json({{"ordering", order}, {"violations", v.size()}, {"forward_arcs", forward_arcs(t, order)}}, false);
    if (!opt.out.empty()) write_file(opt.out, ordering_to_text(order));
  } else if (opt.check.empty()) {
    emit(ordering_to_text(order));
    std::cerr << "violations: " << v.size() << "\n";
  } else {
    std::cout << "violations: " << v.size() << "\n";
    for (const auto& x : v) std::cout << "  pair (" << x.i << ", " << x.j << ")\n";
  }
  return v.empty() ? 0 : 1;
}

int cmd_bound() {
  auto a = load_tree(arg(0, "tree"));
  auto r = best_bound(a);
  json j{{"n", r.n}, {"k", r.k}, {"minimum", r.minimum}, {"algorithm", to_string(r.chosen)}};
  std::string text = "n " + std::to_string(r.n) + "\nk " + std::to_string(r.k) + "\n";
  for (auto alg : all_algorithms) {
    const auto& b = r[alg];
    j["bounds"][std::string(to_string(alg))] = b ? json(*b) : json(nullptr);
    text += std::string(to_string(alg)) + " " + (b ? std::to_string(*b) : "-") + "\n";
  }
  text += "minimum " + std::to_string(r.minimum) + " (" + std::string(to_string(r.chosen)) + ")\n";
  if (opt.json) emit_json(j);
  else emit(text);
  return 0;
}

Embedding run_named(const std::string& alg, const OrientedTree& a, const Tournament& t, std::string& used) {
  used = alg;
  if (alg == "arbo") {
    if (best_arborescence_root(a)) return embed_arborescence(a, t);
    return embed_bi_arborescence(a, t);
  }
  if (alg == "few") return embed_few_leaves(a, t);
  if (alg == "many") return embed_many_leaves(a, t);
  if (alg == "veryfew") return embed_very_few_leaves(a, t);
  if (alg == "stub") {
    if (!is_stub(a)) throw PreconditionError("tree is not a stub: " + is_stub(a).reason);
    return embed_stub(a, t, local_median_order(t), std::max(6, leaf_count(a)));
  }
  Algorithm picked;
  auto phi = embed_auto(a, t, &picked);
  used = std::string("auto:") + std::string(to_string(picked));
  return phi;
}

int cmd_embed() {
  auto a = load_tree(arg(0, "tree"));
  auto t = load_tournament(arg(1, "tournament"));
  std::string used;
  auto phi = run_named(opt.alg, a, t, used);
  // Never report success for an embedding that does not check out.
  auto bad = verify_embedding(a, t, phi);
  if (!bad.empty()) throw HardError("embedding failed verification: " + bad.front().describe(), to_text(a) + to_text(t));
  if (opt.json) {
    emit_json({{"algorithm", used}, {"image", phi.image}, {"verified", true}}, false);
    if (!opt.out.empty()) write_file(opt.out, to_text(phi));
  } else {
    emit(to_text(phi));
    if (opt.verbose) std::cerr << "algorithm " << used << ", verified\n";
  }
  return 0;
}

int cmd_verify() {
  auto a = load_tree(arg(0, "tree"));
  auto t = load_tournament(arg(1, "tournament"));
  auto phi = embedding_from_text(read_file(arg(2, "embedding")), a.size());
  std::vector<Violation> bad;
  try {
    bad = verify_embedding(a, t, phi);
  } catch (const PreconditionError& e) {
    throw CheckFailed{e.what()};
  }
  if (opt.json) {
    json v = json::array();
    for (const auto& x : bad) v.push_back(x.describe());
    emit_json({{"valid", bad.empty()}, {"violations", v}});
  } else {
    std::cout << (bad.empty() ? "valid\n" : "invalid\n");
    for (const auto& x : bad) std::cout << "  " << x.describe() << "\n";
  }
  return bad.empty() ? 0 : 1;
}

int cmd_reduce() {
  auto a = load_tree(arg(0, "tree"));
  auto red = reduce_to_stubs(a);
  const bool round_trip = isomorphic(rebuild(red), a);
  if (opt.json) {
    json comps = json::array();
    for (const auto& c : red.components) comps.push_back({{"nodes", c.tree.size()}, {"leaves", leaf_count(c.tree)}});
    emit_json({{"b", red.b}, {"a", red.a}, {"components", comps}, {"round_trip", round_trip}});
  } else {
    emit(to_text(red) + "round-trip " + (round_trip ? "ok" : "FAILED") + "\n");
  }
  return round_trip ? 0 : 1;
}

int cmd_oracle() {
  const std::string& what = arg(0, "oracle command");
  if (what == "embed") {
    auto a = load_tree(arg(1, "tree"));
    auto t = load_tournament(arg(2, "tournament"));
    auto phi = brute_force_embed(a, t);
    if (opt.json) emit_json({{"contained", phi.has_value()}, {"image", phi ? json(phi->image) : json(nullptr)}});
    else if (phi) emit(to_text(*phi));
    else std::cout << "none\n";
    return phi ? 0 : 1;
  }
  if (what == "unvd") {
    auto a = load_tree(arg(1, "tree"));
    auto u = unvd_exact(a, opt.cap);
    if (opt.json) emit_json({{"unvd", u ? json(*u) : json(nullptr)}, {"cap", opt.cap}});
    else std::cout << (u ? "unvd " + std::to_string(*u) : "exceeds cap " + std::to_string(opt.cap)) << "\n";
    return u ? 0 : 1;
  }
  if (what == "grunbaum") {
    auto g = grunbaum_checks();
    if (opt.json) {
      emit_json({{"antidirected_p3_in_c3", g.p3_in_c3},
                 {"antidirected_p5_in_regular5", g.p5_in_regular5},
                 {"antidirected_p7_in_paley7", g.p7_in_paley7},
                 {"unvd_antidirected_p3", g.unvd_p3 ? json(*g.unvd_p3) : json(nullptr)},
                 {"ok", g.ok()}});
    } else {
      auto line = [](const char* what, bool found) {
        std::cout << what << ": " << (found ? "contained (unexpected)" : "not contained") << "\n";
      };
      line("antidirected P3 in C3", g.p3_in_c3);
      line("antidirected P5 in rotational(5,{1,2})", g.p5_in_regular5);
      line("antidirected P7 in paley(7)", g.p7_in_paley7);
      std::cout << "unvd(antidirected P3) = " << (g.unvd_p3 ? std::to_string(*g.unvd_p3) : "?") << "\n";
    }
    return g.ok() ? 0 : 1;
  }
  throw CLI::ValidationError("unknown oracle command: " + what);
}

// Randomized campaigns; each trial builds its own inputs from the seed.
int cmd_stress() {
  std::mt19937_64 rng(opt.seed);
  struct Suite {
    const char* name;
    std::function<bool(std::mt19937_64&)> trial;
  };
  std::vector<Suite> suites{
      {"median",
       [](std::mt19937_64& r) {
         auto t = random_tournament(1 + static_cast<int>(r() % 120), r());
         return is_local_median_order(t, local_median_order(t));
       }},
      {"arborescence",
       [](std::mt19937_64& r) {
         const int n = 1 + static_cast<int>(r() % 30);
         std::vector<Arc> arcs;
         for (int v = 1; v < n; ++v) arcs.emplace_back(static_cast<int>(r() % v), v);
         OrientedTree a(n, arcs);
         auto t = random_tournament(n + leaf_count(a) - 1, r());
         return is_valid_embedding(a, t, embed_arborescence(a, t));
       }},
      {"few",
       [](std::mt19937_64& r) {
         auto a = random_tree(1 + static_cast<int>(r() % 30), r);
         auto t = random_tournament(few_leaves_bound(a), r());
         return is_valid_embedding(a, t, embed_few_leaves(a, t));
       }},
      {"many",
       [](std::mt19937_64& r) {
         auto a = random_tree(3 + static_cast<int>(r() % 20), r);
         if (tree_metrics(a).is_path) return true;
         auto t = random_tournament(many_leaves_bound(a), r());
         return is_valid_embedding(a, t, embed_many_leaves(a, t));
       }},
      {"auto",
       [](std::mt19937_64& r) {
         auto a = random_tree(1 + static_cast<int>(r() % 20), r);
         auto t = random_tournament(static_cast<int>(best_bound(a).minimum), r());
         return is_valid_embedding(a, t, embed_auto(a, t));
       }},
      {"oracle",
       [](std::mt19937_64& r) {
         auto a = random_tree(1 + static_cast<int>(r() % 7), r);
         auto t = random_tournament(static_cast<int>(best_bound(a).minimum), r());
         return brute_force_embed(a, t).has_value();
       }},
  };
  bool all_ok = true, matched = false;
  json report = json::array();
  std::string text;
  for (const auto& s : suites) {
    if (opt.suite != "all" && opt.suite != s.name) continue;
    matched = true;
    int pass = 0;
    for (int i = 0; i < opt.trials; ++i) pass += s.trial(rng);
    all_ok = all_ok && pass == opt.trials;
    report.push_back({{"suite", s.name}, {"passed", pass}, {"trials", opt.trials}});
    text += std::string(s.name) + " " + std::to_string(pass) + "/" + std::to_string(opt.trials) +
            (pass == opt.trials ? " pass" : " FAIL") + "\n";
  }
  if (!matched) throw CLI::ValidationError("unknown suite: " + opt.suite);
  if (opt.json) emit_json({{"seed", opt.seed}, {"suites", report}, {"ok", all_ok}});
  else emit(text);
  return all_ok ? 0 : 1;
}

std::string dump_path() { return (opt.out.empty() ? std::string("unavoid") : opt.out) + ".dump"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oriented trees in tournaments: median orders, embeddings, bounds and oracles"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json, "Print reports as JSON");
  app.add_flag("-v,--verbose", opt.verbose, "More diagnostics on stderr");
  app.add_option("--seed", opt.seed, "Random seed")->default_val(0);
  app.add_option("-o,--output", opt.out, "Write the main output to this file");

  auto* gen = app.add_subcommand("gen", "Generate a tournament (paley|transitive|random|rotational N [r...]) "
                                        "or a tree (tree random|path|antipath|star N)");
  gen->add_option("--leaves", opt.leaves, "Exact leaf count for random trees");
  auto* median = app.add_subcommand("median", "Local median order of a tournament");
  median->add_option("--check", opt.check, "Check this ordering instead of computing one");
  auto* bound = app.add_subcommand("bound", "Order bounds of every applicable algorithm");
  auto* embed = app.add_subcommand("embed", "Embed a tree into a tournament");
  embed->add_option("--alg", opt.alg, "Algorithm")
      ->check(CLI::IsMember({"arbo", "few", "many", "stub", "veryfew", "auto"}))
      ->default_val("auto");
  auto* verify = app.add_subcommand("verify", "Check an embedding");
  auto* reduce = app.add_subcommand("reduce", "Reduce a tree to stubs and rebuild it");
  auto* oracle = app.add_subcommand("oracle", "Exhaustive oracles: embed TREE T | unvd TREE | grunbaum");
  oracle->add_option("--cap", opt.cap, "Largest order for unvd")->check(CLI::Range(1, 8));
  auto* stress = app.add_subcommand("stress", "Randomized property campaigns");
  stress->add_option("--trials", opt.trials, "Trials per suite")->check(CLI::PositiveNumber);
  stress->add_option("--suite", opt.suite, "Suite name or all");
  for (auto* sc : {gen, median, bound, embed, verify, reduce, oracle, stress}) {
    sc->add_option("args", opt.args, "Positional arguments");
    sc->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*gen) return cmd_gen();
    if (*median) return cmd_median();
    if (*bound) return cmd_bound();
    if (*embed) return cmd_embed();
    if (*verify) return cmd_verify();
    if (*reduce) return cmd_reduce();
    if (*oracle) return cmd_oracle();
    if (*stress) return cmd_stress();
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what << "\n";
    return 1;
  } catch (const NoGuaranteeError& e) {
    std::cerr << "no guarantee: " << e.what() << "\n";
    return 1;
  } catch (const HardError& e) {
    const auto path = dump_path();
    try {
      write_file(path, e.dump());
    } catch (const ParseError&) {
    }
    std::cerr << "internal error: " << e.what() << "\n  dump: " << path << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
