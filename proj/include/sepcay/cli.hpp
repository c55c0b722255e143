#pragma once

// Command line surface. Every subcommand parses flags with CLI11, calls the
// library, and prints a schema-1 JSON envelope with a digest of the result;
// dot and csv formats print raw text for piping into other tools. run_cli
// is the in-process entry point shared by main() and the tests.

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepcay/fold.hpp"
#include "sepcay/geometry.hpp"
#include "sepcay/quasimorphism.hpp"
#include "sepcay/splitting.hpp"
#include "sepcay/suite.hpp"
#include "sepcay/whitehead.hpp"
#include "sepcay/word.hpp"

namespace sepcay {

inline constexpr const char* tool_version = "0.1.0";

namespace cli_detail {

using nlohmann::json;

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

// Envelope layout shared by every JSON-emitting subcommand. The digest
// covers only the result object, so reruns of the same invocation are
// byte-comparable; volatile extras (timings) ride outside the digest.
inline void emit_envelope(std::ostream& out, const std::string& command,
                          const std::map<std::string, std::string>& parameters,
                          std::uint64_t seed, const json& result,
                          const json& timings = json()) {
  json env;
  env["schema"] = 1;
  env["command"] = command;
  env["parameters"] = parameters;
  env["seed"] = seed;
  env["tool_version"] = tool_version;
  env["result"] = result;
  env["digest"] = fnv1a_hex(result.dump());
  if (!timings.is_null()) env["timings"] = timings;
  out << env.dump(2) << "\n";
}

inline void emit_error(std::ostream& out, int code, const std::string& message) {
  json env;
  env["schema"] = 1;
  env["error"] = {{"code", code}, {"message", message}};
  out << env.dump(2) << "\n";
}

inline json rational_json(const Rational& r) {
  if (r.denominator() == 1) return json(r.numerator());
  return json(std::to_string(r.numerator()) + "/" +
              std::to_string(r.denominator()));
}

inline json defect_json(const DefectBound& d) {
  json j;
  j["bound"] = rational_json(d.bound);
  j["method"] = d.method == DefectBound::Method::exhaustive
                    ? "exhaustive-to-length-" + std::to_string(d.scope)
                    : "sampled";
  j["scope"] = d.scope;
  return j;
}

inline json words_json(const std::vector<Word>& ws) {
  json arr = json::array();
  for (const Word& w : ws) arr.push_back(print_word(w));
  return arr;
}

inline json graph_json(const WhiteheadGraph& g) {
  json j;
  json verts = json::array();
  for (int key = 0; key < g.vertex_count(); ++key)
    verts.push_back(WhiteheadGraph::vertex_label(key));
  j["vertices"] = verts;
  json edges = json::array();
  for (const auto& [u, v] : g.edges())
    edges.push_back({WhiteheadGraph::vertex_label(u),
                     WhiteheadGraph::vertex_label(v)});
  j["edges"] = edges;
  j["connected"] = g.connected();
  j["has_cut_vertex"] = has_cut_vertex(g);
  return j;
}

}  // namespace cli_detail

// Runs one invocation. `args` excludes the program name. Exit codes: 0
// success, 1 internal failure or failed suite, 2 usage, 3 rejected input,
// 4 refused budget.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  using cli_detail::emit_envelope;
  using cli_detail::emit_error;
  using nlohmann::json;

  CLI::App app{"separability toolkit for free groups"};
  app.require_subcommand(1);
  int exit_code = 0;

  // Shared option storage; exactly one leaf subcommand parses per run.
  int rank = 2;
  std::string word_s, u_s, v_s, w_s, g_s, h_s, pattern_s, variant = "omega",
                                                          format = "json";
  long long r_exp = 1;
  int k_i = 1, len_i = 1, genlen = 0, radius = 0, conj_len = 3, count_i = 100,
      maxlen = 6;
  long long samples = 0;
  std::uint64_t seed = 0;
  int m_dirs = 2;
  long long range = 1, cert_samples = 100;
  std::vector<int> ks{1, 2};
  std::string suite_name;

  const auto ns = [&] { return std::to_string(rank); };

  // word: plain free group arithmetic -------------------------------------
  auto* word_cmd = app.add_subcommand("word", "free group arithmetic");
  word_cmd->require_subcommand(1);

  auto* w_reduce = word_cmd->add_subcommand("reduce", "freely reduce a word");
  w_reduce->add_option("--n", rank, "rank")->required();
  w_reduce->add_option("--word", word_s, "input word")->required();
  w_reduce->callback([&] {
    emit_envelope(out, "word reduce", {{"n", ns()}, {"word", word_s}}, 0,
                  json{{"word", print_word(parse_word(rank, word_s))}});
  });

  auto* w_mul = word_cmd->add_subcommand("mul", "multiply two words");
  w_mul->add_option("--n", rank, "rank")->required();
  w_mul->add_option("--u", u_s, "left factor")->required();
  w_mul->add_option("--v", v_s, "right factor")->required();
  w_mul->callback([&] {
    const Word p = multiply(parse_word(rank, u_s), parse_word(rank, v_s));
    emit_envelope(out, "word mul", {{"n", ns()}, {"u", u_s}, {"v", v_s}}, 0,
                  json{{"word", print_word(p)}});
  });

  auto* w_inv = word_cmd->add_subcommand("inv", "invert a word");
  w_inv->add_option("--n", rank, "rank")->required();
  w_inv->add_option("--u", u_s, "input word")->required();
  w_inv->callback([&] {
    emit_envelope(out, "word inv", {{"n", ns()}, {"u", u_s}}, 0,
                  json{{"word", print_word(invert(parse_word(rank, u_s)))}});
  });

  auto* w_pow = word_cmd->add_subcommand("pow", "raise a word to a power");
  w_pow->add_option("--n", rank, "rank")->required();
  w_pow->add_option("--u", u_s, "base word")->required();
  w_pow->add_option("--r", r_exp, "exponent")->required();
  w_pow->callback([&] {
    emit_envelope(out, "word pow",
                  {{"n", ns()}, {"u", u_s}, {"r", std::to_string(r_exp)}}, 0,
                  json{{"word", print_word(power(parse_word(rank, u_s), r_exp))}});
  });

  auto* w_cycred = word_cmd->add_subcommand("cycred", "cyclically reduce");
  w_cycred->add_option("--n", rank, "rank")->required();
  w_cycred->add_option("--word", word_s, "input word")->required();
  w_cycred->callback([&] {
    const CyclicDecomposition dec = cyclic_reduce(parse_word(rank, word_s));
    emit_envelope(out, "word cycred", {{"n", ns()}, {"word", word_s}}, 0,
                  json{{"conjugator", print_word(dec.conjugator)},
                       {"core", print_word(dec.core)}});
  });

  auto* w_class = word_cmd->add_subcommand("conjclass",
                                           "canonical conjugacy representative");
  w_class->add_option("--n", rank, "rank")->required();
  w_class->add_option("--word", word_s, "input word")->required();
  w_class->callback([&] {
    emit_envelope(
        out, "word conjclass", {{"n", ns()}, {"word", word_s}}, 0,
        json{{"canonical", print_word(canonical_conjugacy_rep(parse_word(rank, word_s)))}});
  });

  // whitehead: graphs, minimization, separability --------------------------
  auto* wh_cmd = app.add_subcommand("whitehead", "whitehead graphs and moves");
  wh_cmd->require_subcommand(1);

  auto* wh_graph = wh_cmd->add_subcommand("graph", "whitehead graph of a word");
  wh_graph->add_option("--n", rank, "rank")->required();
  wh_graph->add_option("--word", word_s, "input word")->required();
  wh_graph->add_option("--variant", variant, "omega or prime");
  wh_graph->add_option("--format", format, "json or dot");
  wh_graph->callback([&] {
    if (variant != "omega" && variant != "prime")
      throw CLI::ValidationError("--variant must be omega or prime");
    if (format != "json" && format != "dot")
      throw CLI::ValidationError("--format must be json or dot");
    const Word w = parse_word(rank, word_s);
    const WhiteheadGraph g = variant == "prime" ? omega_prime(w) : omega(w);
    if (format == "dot") {
      out << g.to_dot();
      return;
    }
    emit_envelope(out, "whitehead graph",
                  {{"n", ns()}, {"word", word_s}, {"variant", variant}}, 0,
                  cli_detail::graph_json(g));
  });

  auto* wh_cut = wh_cmd->add_subcommand("cut", "cut vertex test");
  wh_cut->add_option("--n", rank, "rank")->required();
  wh_cut->add_option("--word", word_s, "input word")->required();
  wh_cut->add_option("--variant", variant, "omega or prime");
  wh_cut->callback([&] {
    if (variant != "omega" && variant != "prime")
      throw CLI::ValidationError("--variant must be omega or prime");
    const Word w = parse_word(rank, word_s);
    emit_envelope(out, "whitehead cut",
                  {{"n", ns()}, {"word", word_s}, {"variant", variant}}, 0,
                  json{{"in_cut", variant == "prime" ? in_cut_prime(w) : in_cut(w)}});
  });

  auto* wh_min = wh_cmd->add_subcommand("minimize", "minimize cyclic length");
  wh_min->add_option("--n", rank, "rank")->required();
  wh_min->add_option("--word", word_s, "input word")->required();
  wh_min->callback([&] {
    const MinimizeResult res = whitehead_minimize(parse_word(rank, word_s));
    emit_envelope(out, "whitehead minimize", {{"n", ns()}, {"word", word_s}}, 0,
                  json{{"minimal", print_word(res.minimal)},
                       {"length", res.minimal.letters.size()},
                       {"chain_length", res.chain.size()}});
  });

  auto* wh_sep = wh_cmd->add_subcommand("separable", "separability with certificate");
  wh_sep->add_option("--n", rank, "rank")->required();
  wh_sep->add_option("--word", word_s, "input word")->required();
  wh_sep->callback([&] {
    const SeparabilityResult res = is_separable(parse_word(rank, word_s));
    json j{{"separable", res.separable}};
    if (res.certificate) {
      j["missing_generator"] = res.certificate->missing_generator;
      j["final_word"] = print_word(res.certificate->final_word);
      j["chain_length"] = res.certificate->chain.size();
    }
    emit_envelope(out, "whitehead separable", {{"n", ns()}, {"word", word_s}},
                  0, j);
  });

  auto* wh_prim = wh_cmd->add_subcommand("primitive", "primitivity test");
  wh_prim->add_option("--n", rank, "rank")->required();
  wh_prim->add_option("--word", word_s, "input word")->required();
  wh_prim->callback([&] {
    emit_envelope(out, "whitehead primitive", {{"n", ns()}, {"word", word_s}},
                  0, json{{"primitive", is_primitive(parse_word(rank, word_s))}});
  });

  auto* wh_pair = wh_cmd->add_subcommand("primpair",
                                         "factor into a primitive pair");
  wh_pair->add_option("--n", rank, "rank")->required();
  wh_pair->add_option("--word", word_s, "input word")->required();
  wh_pair->callback([&] {
    const auto [p, q] = primitive_pair_factorization(parse_word(rank, word_s));
    emit_envelope(out, "whitehead primpair", {{"n", ns()}, {"word", word_s}},
                  0, json{{"p", print_word(p)}, {"q", print_word(q)}});
  });

  // qm: counting quasimorphisms --------------------------------------------
  auto* qm_cmd = app.add_subcommand("qm", "counting quasimorphisms");
  qm_cmd->require_subcommand(1);

  auto* qm_eval = qm_cmd->add_subcommand("eval", "evaluate a counting difference");
  qm_eval->add_option("--n", rank, "rank")->required();
  qm_eval->add_option("--pattern", pattern_s, "pattern word")->required();
  qm_eval->add_option("--word", word_s, "argument word")->required();
  qm_eval->callback([&] {
    const auto q = make_counting_qm(parse_word(rank, pattern_s));
    emit_envelope(out, "qm eval",
                  {{"n", ns()}, {"pattern", pattern_s}, {"word", word_s}}, 0,
                  json{{"value", brooks_eval(q, parse_word(rank, word_s))}});
  });

  auto* qm_homog = qm_cmd->add_subcommand("homog", "exact homogenized value");
  qm_homog->add_option("--n", rank, "rank")->required();
  qm_homog->add_option("--pattern", pattern_s, "pattern word")->required();
  qm_homog->add_option("--word", word_s, "argument word")->required();
  qm_homog->callback([&] {
    const auto q = make_counting_qm(parse_word(rank, pattern_s));
    const Rational v = homogenized_eval(q, parse_word(rank, word_s)).value;
    emit_envelope(out, "qm homog",
                  {{"n", ns()}, {"pattern", pattern_s}, {"word", word_s}}, 0,
                  json{{"value", cli_detail::rational_json(v)}});
  });

  auto* qm_pk = qm_cmd->add_subcommand("pk", "pattern word p_k");
  qm_pk->add_option("--n", rank, "rank")->required();
  qm_pk->add_option("--k", k_i, "index k")->required();
  qm_pk->callback([&] {
    emit_envelope(out, "qm pk", {{"n", ns()}, {"k", std::to_string(k_i)}}, 0,
                  json{{"word", print_word(make_pk(rank, k_i))}});
  });

  auto* qm_defect = qm_cmd->add_subcommand("defect", "empirical defect bound");
  qm_defect->add_option("--n", rank, "rank")->required();
  qm_defect->add_option("--pattern", pattern_s, "pattern word")->required();
  qm_defect->add_option("--len", len_i, "max argument length")->required();
  qm_defect->add_option("--samples", samples, "sample count (0 = exhaustive)");
  qm_defect->add_option("--seed", seed, "seed for sampling");
  qm_defect->callback([&] {
    const auto q = make_counting_qm(parse_word(rank, pattern_s));
    const DefectBound d = samples > 0
                              ? defect_search_sampled(q, len_i, samples, seed)
                              : defect_search(q, len_i);
    emit_envelope(out, "qm defect",
                  {{"n", ns()},
                   {"pattern", pattern_s},
                   {"len", std::to_string(len_i)},
                   {"samples", std::to_string(samples)}},
                  seed, cli_detail::defect_json(d));
  });

  // norm: bounds on the separable word norm ---------------------------------
  auto* norm_cmd = app.add_subcommand("norm", "separable word norm bounds");
  norm_cmd->require_subcommand(1);

  auto* norm_bounds = norm_cmd->add_subcommand("bounds", "lower and upper bounds");
  norm_bounds->add_option("--n", rank, "rank")->required();
  norm_bounds->add_option("--word", word_s, "input word")->required();
  norm_bounds->add_option("--ks", ks, "witness indices")->delimiter(',');
  norm_bounds->add_option("--bfs-genlen", genlen, "also run bfs: generator length");
  norm_bounds->add_option("--bfs-radius", radius, "also run bfs: radius");
  norm_bounds->callback([&] {
    const Word g = parse_word(rank, word_s);
    const DefectBound defect = default_sep_defect(rank, ks);
    SeparabilityCache cache;
    const SepNormBounds b = sep_norm_bounds(g, ks, defect, cache);
    json j{{"lower", b.lower},
           {"upper", b.upper},
           {"witness_k", b.witness_k},
           {"factorization", cli_detail::words_json(b.factorization)},
           {"defect", cli_detail::defect_json(b.defect_used)}};
    if (genlen > 0 && radius > 0) {
      const BfsResult r = sep_norm_bfs(g, genlen, radius, cache);
      j["bfs"] = json{{"distance", r.distance ? json(*r.distance) : json()},
                      {"explored", r.explored}};
    }
    std::string ks_str;
    for (int k : ks) ks_str += (ks_str.empty() ? "" : ",") + std::to_string(k);
    emit_envelope(out, "norm bounds",
                  {{"n", ns()}, {"word", word_s}, {"ks", ks_str}}, 0, j);
  });

  auto* norm_bfs = norm_cmd->add_subcommand("bfs", "breadth-first distance oracle");
  norm_bfs->add_option("--n", rank, "rank")->required();
  norm_bfs->add_option("--word", word_s, "input word")->required();
  norm_bfs->add_option("--gen-len", genlen, "generator length")->required();
  norm_bfs->add_option("--radius", radius, "search radius")->required();
  norm_bfs->callback([&] {
    SeparabilityCache cache;
    const BfsResult r = sep_norm_bfs(parse_word(rank, word_s), genlen, radius, cache);
    emit_envelope(out, "norm bfs",
                  {{"n", ns()},
                   {"word", word_s},
                   {"gen-len", std::to_string(genlen)},
                   {"radius", std::to_string(radius)}},
                  0,
                  json{{"distance", r.distance ? json(*r.distance) : json()},
                       {"explored", r.explored}});
  });

  // flat: quasi-flat certificates -------------------------------------------
  auto* flat_cmd = app.add_subcommand("flat", "quasi-flat lattice certificates");
  flat_cmd->require_subcommand(1);

  auto* flat_certify = flat_cmd->add_subcommand("certify", "sampled certificate");
  flat_certify->add_option("--m", m_dirs, "lattice dimension")->required();
  flat_certify->add_option("--n", rank, "ambient rank");
  flat_certify->add_option("--range", range, "coordinate range")->required();
  flat_certify->add_option("--samples", cert_samples, "sample count")->required();
  flat_certify->add_option("--seed", seed, "seed");
  flat_certify->add_option("--format", format, "json or csv");
  flat_certify->callback([&] {
    if (format != "json" && format != "csv")
      throw CLI::ValidationError("--format must be json or csv");
    const FlatSpec spec = make_flat_spec(m_dirs, rank);
    const FlatCertificate cert = flat_certificate(spec, range, cert_samples, seed);
    if (format == "csv") {
      for (int j = 1; j <= spec.m; ++j) out << "i" << j << ",";
      for (int j = 1; j <= spec.m; ++j) out << "ip" << j << ",";
      out << "upper,lower\n";
      for (const FlatRow& row : cert.rows) {
        for (long long c : row.i) out << c << ",";
        for (long long c : row.iprime) out << c << ",";
        out << row.upper << "," << row.lower << "\n";
      }
      return;
    }
    json rows = json::array();
    for (const FlatRow& row : cert.rows)
      rows.push_back(json{{"i", row.i},
                          {"iprime", row.iprime},
                          {"upper", row.upper},
                          {"lower", row.lower}});
    json j{{"m", spec.m},
           {"rank", spec.rank},
           {"range", cert.range},
           {"samples", cert.samples},
           {"lipschitz_upper_verified", cert.lipschitz_upper_verified},
           {"rows_consistent", cert.rows_consistent},
           {"max_additive_error", cert.max_additive_error},
           {"lower_slope", cli_detail::rational_json(cert.lower_slope)},
           {"measured_c", cli_detail::rational_json(cert.measured_c)},
           {"defect", cli_detail::defect_json(cert.defect_used)},
           {"rows", rows}};
    emit_envelope(out, "flat certify",
                  {{"m", std::to_string(m_dirs)},
                   {"n", ns()},
                   {"range", std::to_string(range)},
                   {"samples", std::to_string(cert_samples)},
                   {"seed", std::to_string(seed)}},
                  seed, j);
  });

  // whc: distances on the conjugacy-class quotient --------------------------
  auto* whc_cmd = app.add_subcommand("whc", "conjugacy-class quotient distances");
  whc_cmd->require_subcommand(1);

  auto* whc_dist = whc_cmd->add_subcommand("dist", "lower and upper distance bounds");
  whc_dist->set_help_flag("--help", "print help");  // frees -h for the flag below
  whc_dist->add_option("--n", rank, "rank")->required();
  whc_dist->add_option("--g", g_s, "first class representative")->required();
  whc_dist->add_option("--h", h_s, "second class representative")->required();
  whc_dist->add_option("--ks", ks, "witness indices")->delimiter(',');
  whc_dist->add_option("--conj-len", conj_len, "conjugator search length");
  whc_dist->callback([&] {
    const Word g = parse_word(rank, g_s);
    const Word h = parse_word(rank, h_s);
    const DefectBound defect = default_sep_defect(rank, ks);
    emit_envelope(out, "whc dist",
                  {{"n", ns()},
                   {"g", g_s},
                   {"h", h_s},
                   {"conj-len", std::to_string(conj_len)}},
                  0,
                  json{{"lower", quotient_dist_lower(g, h, ks, defect)},
                       {"upper", quotient_dist_upper(g, h, conj_len)},
                       {"defect", cli_detail::defect_json(defect)}});
  });

  // split: one-edge free splittings ------------------------------------------
  auto* split_cmd = app.add_subcommand("split", "one-edge free splittings");
  split_cmd->require_subcommand(1);

  auto* split_project = split_cmd->add_subcommand("project", "retraction value r");
  split_project->add_option("--n", rank, "rank")->required();
  split_project->add_option("--w", w_s, "twisting element w")->required();
  split_project->callback([&] {
    const SplittingTHw T = make_splitting(rank, parse_word(rank, w_s));
    const auto ax = axis_entry_exit(T);
    json j{{"r", print_word(project_r(T))}, {"elliptic", !ax.has_value()}};
    j["entry"] = ax ? json(print_word(ax->entry.translate)) : json();
    j["exit"] = ax ? json(print_word(ax->exit.translate)) : json();
    emit_envelope(out, "split project", {{"n", ns()}, {"w", w_s}}, 0, j);
  });

  auto* split_verify = split_cmd->add_subcommand("verify-section",
                                                 "retraction recovers w on samples");
  split_verify->add_option("--n", rank, "rank")->required();
  split_verify->add_option("--count", count_i, "number of samples")->required();
  split_verify->add_option("--maxlen", maxlen, "max |w|")->required();
  split_verify->add_option("--seed", seed, "seed");
  split_verify->callback([&] {
    Rng rng(seed);
    long long failures = 0;
    for (int t = 0; t < count_i; ++t) {
      const int len = static_cast<int>(rng.in_range(0, maxlen));
      const Word w = extend_rank(random_reduced_word(rank - 1, len, rng), rank);
      if (!verify_section(rank, w)) ++failures;
    }
    emit_envelope(out, "split verify-section",
                  {{"n", ns()},
                   {"count", std::to_string(count_i)},
                   {"maxlen", std::to_string(maxlen)},
                   {"seed", std::to_string(seed)}},
                  seed,
                  json{{"checked", count_i},
                       {"failures", failures},
                       {"all_ok", failures == 0}});
  });

  // es: edge-splitting graph vertices ----------------------------------------
  auto* es_cmd = app.add_subcommand("es", "edge-splitting graph vertices");
  es_cmd->require_subcommand(1);

  auto* es_vertex_cmd = es_cmd->add_subcommand("vertex", "vertex of a splitting");
  es_vertex_cmd->add_option("--n", rank, "rank")->required();
  es_vertex_cmd->add_option("--w", w_s, "twisting element w")->required();
  es_vertex_cmd->callback([&] {
    const ESVertex v = es_vertex(rank, parse_word(rank, w_s));
    emit_envelope(out, "es vertex", {{"n", ns()}, {"w", w_s}}, 0,
                  json{{"a_basis", cli_detail::words_json(v.a_basis)},
                       {"b_basis", cli_detail::words_json(v.b_basis)}});
  });

  auto* es_neighbor = es_cmd->add_subcommand("neighbor",
                                             "common neighbor of w and u w");
  es_neighbor->add_option("--n", rank, "rank")->required();
  es_neighbor->add_option("--w", w_s, "twisting element w")->required();
  es_neighbor->add_option("--u", u_s, "separable element u")->required();
  es_neighbor->callback([&] {
    const ESVertex v =
        es_common_neighbor(rank, parse_word(rank, w_s), parse_word(rank, u_s));
    emit_envelope(out, "es neighbor", {{"n", ns()}, {"w", w_s}, {"u", u_s}}, 0,
                  json{{"a_basis", cli_detail::words_json(v.a_basis)},
                       {"b_basis", cli_detail::words_json(v.b_basis)}});
  });

  // suite: acceptance criteria ------------------------------------------------
  auto* suite_cmd = app.add_subcommand("suite", "run acceptance criteria");
  suite_cmd->add_option("name", suite_name, "criterion name or 'all'")->required();
  suite_cmd->callback([&] {
    bool known = suite_name == "all";
    for (const auto& entry : criterion_registry())
      known = known || entry.first == suite_name;
    if (!known) {
      emit_error(out, 2, "unknown suite: " + suite_name);
      exit_code = 2;
      return;
    }
    std::vector<CriterionResult> rows;
    if (suite_name == "all")
      rows = run_all_criteria();
    else
      rows.push_back(run_criterion(suite_name));
    json criteria = json::array();
    json timings = json::array();
    bool all_passed = true;
    for (const CriterionResult& r : rows) {
      criteria.push_back(json{{"id", r.id},
                              {"name", r.name},
                              {"passed", r.passed},
                              {"detail", r.detail}});
      timings.push_back(json{{"id", r.id}, {"ms", r.ms}});
      all_passed = all_passed && r.passed;
    }
    emit_envelope(out, "suite", {{"name", suite_name}}, 0,
                  json{{"criteria", criteria}, {"all_passed", all_passed}},
                  timings);
    if (!all_passed) exit_code = 1;
  });

  // ---------------------------------------------------------------------------
  std::vector<std::string> argv_store;
  argv_store.push_back("sepcay");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    return exit_code;
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(out, 2, e.what());
    return 2;
  } catch (const budget_error& e) {
    emit_error(out, 4, e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    emit_error(out, 3, e.what());
    return 3;
  } catch (const std::exception& e) {
    emit_error(out, 1, e.what());
    return 1;
  }
}

}  // namespace sepcay
