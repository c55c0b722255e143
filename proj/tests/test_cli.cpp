#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepcay/cli.hpp"

using namespace sepcay;
using nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string text;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  const int code = run_cli(args, out);
  return CliRun{code, out.str()};
}

json parse(const CliRun& r) { return json::parse(r.text); }

}  // namespace

TEST_CASE("envelope carries schema, echo, and a result digest") {
  const CliRun r = run({"word", "reduce", "--n", "2", "--word", "aabBA"});
  REQUIRE(r.code == 0);
  const json env = parse(r);
  CHECK(env.at("schema") == 1);
  CHECK(env.at("command") == "word reduce");
  CHECK(env.at("parameters") == json{{"n", "2"}, {"word", "aabBA"}});
  CHECK(env.at("seed") == 0);
  CHECK(env.at("tool_version") == "0.1.0");
  CHECK(env.at("result") == json{{"word", "a"}});
  CHECK(env.at("digest") == cli_detail::fnv1a_hex(env.at("result").dump()));
}

TEST_CASE("word arithmetic subcommands") {
  CHECK(parse(run({"word", "mul", "--n", "2", "--u", "ab", "--v", "BA"}))
            .at("result")
            .at("word") == "");
  CHECK(parse(run({"word", "inv", "--n", "2", "--u", "ab"}))
            .at("result")
            .at("word") == "BA");
  CHECK(parse(run({"word", "pow", "--n", "2", "--u", "ab", "--r", "-2"}))
            .at("result")
            .at("word") == "BABA");

  const json cyc =
      parse(run({"word", "cycred", "--n", "2", "--word", "abbA"})).at("result");
  CHECK(cyc.at("conjugator") == "a");
  CHECK(cyc.at("core") == "bb");

  CHECK(parse(run({"word", "conjclass", "--n", "2", "--word", "aba"}))
            .at("result")
            .at("canonical") == "aab");
}

TEST_CASE("repeated runs are byte identical") {
  const CliRun a = run({"norm", "bounds", "--n", "2", "--word", "aabba"});
  const CliRun b = run({"norm", "bounds", "--n", "2", "--word", "aabba"});
  CHECK(a.code == 0);
  CHECK(a.text == b.text);

  const std::vector<std::string> flat = {"flat",      "certify", "--m",   "2",
                                         "--range",   "2",       "--samples", "5",
                                         "--seed",    "3"};
  CHECK(run(flat).text == run(flat).text);
}

TEST_CASE("dot format prints raw graphviz text") {
  const CliRun r =
      run({"whitehead", "graph", "--n", "2", "--word", "aabba", "--format", "dot"});
  REQUIRE(r.code == 0);
  CHECK(r.text ==
        "graph whitehead {\n"
        "  a1;\n"
        "  A1;\n"
        "  a2;\n"
        "  A2;\n"
        "  a1 -- A1;\n"
        "  a1 -- A2;\n"
        "  A1 -- a2;\n"
        "  a2 -- A2;\n"
        "}\n");
}

TEST_CASE("csv format prints a header and one row per sample") {
  const CliRun r = run({"flat", "certify", "--m", "2", "--range", "2",
                        "--samples", "3", "--seed", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  REQUIRE(r.text.rfind("i1,i2,ip1,ip2,upper,lower\n", 0) == 0);
  long long lines = 0;
  for (char c : r.text)
    if (c == '\n') ++lines;
  CHECK(lines == 4);
}

TEST_CASE("whitehead subcommands expose the library answers") {
  CHECK(parse(run({"whitehead", "cut", "--n", "2", "--word", "abab"}))
            .at("result")
            .at("in_cut") == true);
  CHECK(parse(run({"whitehead", "cut", "--n", "2", "--word", "abAB"}))
            .at("result")
            .at("in_cut") == false);

  const json min = parse(run({"whitehead", "minimize", "--n", "2", "--word",
                              "abab"}))
                       .at("result");
  CHECK(min.at("length") == 2);

  const json sep = parse(run({"whitehead", "separable", "--n", "2", "--word",
                              "abab"}))
                       .at("result");
  CHECK(sep.at("separable") == true);
  CHECK(sep.contains("missing_generator"));
  CHECK_FALSE(parse(run({"whitehead", "separable", "--n", "2", "--word", "abAB"}))
                  .at("result")
                  .contains("missing_generator"));

  CHECK(parse(run({"whitehead", "primitive", "--n", "2", "--word", "bba"}))
            .at("result")
            .at("primitive") == true);

  const json pair = parse(run({"whitehead", "primpair", "--n", "2", "--word",
                               "aa"}))
                        .at("result");
  CHECK(pair.at("p") == "aab");
  CHECK(pair.at("q") == "B");
}

TEST_CASE("quasimorphism subcommands") {
  CHECK(parse(run({"qm", "pk", "--n", "2", "--k", "1"})).at("result").at("word") ==
        "aabba");
  CHECK(parse(run({"qm", "eval", "--n", "2", "--pattern", "aa", "--word",
                   "aaa"}))
            .at("result")
            .at("value") == 2);
  CHECK(parse(run({"qm", "homog", "--n", "2", "--pattern", "aabba", "--word",
                   "aabba"}))
            .at("result")
            .at("value") == 1);
  CHECK(parse(run({"qm", "homog", "--n", "2", "--pattern", "aabba", "--word",
                   "aaabbba"}))
            .at("result")
            .at("value") == 0);

  const json d = parse(run({"qm", "defect", "--n", "2", "--pattern", "aa",
                            "--len", "3"}))
                     .at("result");
  CHECK(d.at("bound") == 1);
  CHECK(d.at("method") == "exhaustive-to-length-3");

  const json ds = parse(run({"qm", "defect", "--n", "2", "--pattern", "aa",
                             "--len", "3", "--samples", "50", "--seed", "9"}))
                      .at("result");
  CHECK(ds.at("method") == "sampled");
  CHECK(ds.at("scope") == 50);
}

TEST_CASE("norm subcommands report the bound sandwich") {
  const json b = parse(run({"norm", "bounds", "--n", "2", "--word", "aabba"}))
                     .at("result");
  CHECK(b.at("lower") == 2);
  CHECK(b.at("upper") == 2);
  CHECK(b.at("witness_k") == 1);
  CHECK(b.at("factorization") == json::array({"aab", "ba"}));
  CHECK(b.at("defect").at("bound") == 1);
  CHECK_FALSE(b.contains("bfs"));

  const json with_bfs =
      parse(run({"norm", "bounds", "--n", "2", "--word", "aabba",
                 "--bfs-genlen", "5", "--bfs-radius", "3"}))
          .at("result");
  CHECK(with_bfs.at("bfs").at("distance") == 2);

  const json bfs = parse(run({"norm", "bfs", "--n", "2", "--word", "aabba",
                              "--gen-len", "5", "--radius", "3"}))
                       .at("result");
  CHECK(bfs.at("distance") == 2);
  CHECK(bfs.at("explored") > 0);

  // Out of radius: distance is null, not an error.
  const json miss = parse(run({"norm", "bfs", "--n", "2", "--word", "aabba",
                               "--gen-len", "5", "--radius", "1"}))
                        .at("result");
  CHECK(miss.at("distance").is_null());
}

TEST_CASE("quotient distance subcommand") {
  const json d = parse(run({"whc", "dist", "--n", "2", "--g", "aabba", "--h",
                            "", "--conj-len", "2"}))
                     .at("result");
  CHECK(d.at("lower") == 1);
  CHECK(d.at("upper") == 2);

  const json zero = parse(run({"whc", "dist", "--n", "2", "--g", "baB", "--h",
                               "a", "--conj-len", "1"}))
                        .at("result");
  CHECK(zero.at("upper") == 0);
}

TEST_CASE("splitting subcommands") {
  const json p = parse(run({"split", "project", "--n", "3", "--w", "ab"}))
                     .at("result");
  CHECK(p.at("r") == "ab");
  CHECK(p.at("elliptic") == false);
  CHECK(p.at("entry") == "");
  CHECK(p.at("exit") == "BA");

  const json e = parse(run({"split", "project", "--n", "3", "--w", ""}))
                     .at("result");
  CHECK(e.at("elliptic") == true);
  CHECK(e.at("r") == "");
  CHECK(e.at("entry").is_null());

  const json v = parse(run({"split", "verify-section", "--n", "3", "--count",
                            "25", "--maxlen", "6", "--seed", "9"}))
                     .at("result");
  CHECK(v.at("all_ok") == true);
  CHECK(v.at("checked") == 25);

  const json ev = parse(run({"es", "vertex", "--n", "3", "--w", "b"}))
                      .at("result");
  CHECK(ev.at("a_basis") == json::array({"a", "b"}));
  CHECK(ev.at("b_basis") == json::array({"bc"}));

  const json en = parse(run({"es", "neighbor", "--n", "3", "--w", "b", "--u",
                             "a"}))
                      .at("result");
  CHECK(en.at("a_basis") == json::array({"b"}));
  CHECK(en.at("b_basis") == json::array({"a", "bc"}));
}

TEST_CASE("suite subcommand runs single criteria") {
  const CliRun r = run({"suite", "whitehead-figure"});
  REQUIRE(r.code == 0);
  const json env = parse(r);
  CHECK(env.at("result").at("all_passed") == true);
  REQUIRE(env.at("result").at("criteria").size() == 1);
  CHECK(env.at("result").at("criteria")[0].at("id") == 9);

  // Timings ride outside the digest so reruns stay comparable.
  REQUIRE(env.contains("timings"));
  CHECK(env.at("timings").size() == 1);
  CHECK(env.at("digest") == cli_detail::fnv1a_hex(env.at("result").dump()));
  CHECK(parse(run({"suite", "whitehead-figure"})).at("result") ==
        env.at("result"));
}

TEST_CASE("error envelopes and exit codes") {
  const CliRun usage = run({"nosuch"});
  CHECK(usage.code == 2);
  const json uj = parse(usage);
  CHECK(uj.at("schema") == 1);
  CHECK(uj.at("error").at("code") == 2);
  CHECK(uj.at("error").at("message").is_string());

  CHECK(run({"word", "reduce", "--n", "2", "--word", "a!b"}).code == 3);
  CHECK(run({"word", "reduce", "--n", "1", "--word", "a"}).code == 3);
  CHECK(run({"whitehead", "minimize", "--n", "2", "--word", ""}).code == 3);
  CHECK(run({"qm", "defect", "--n", "2", "--pattern", "aa", "--len", "12"}).code ==
        4);
  CHECK(parse(run({"qm", "defect", "--n", "2", "--pattern", "aa", "--len",
                   "12"}))
            .at("error")
            .at("code") == 4);
  CHECK(run({"suite", "nosuch"}).code == 2);
  CHECK(run({"word", "reduce", "--word", "a"}).code == 2);  // missing --n
  CHECK(run({"whitehead", "graph", "--n", "2", "--word", "a", "--format",
             "pdf"})
            .code == 2);

  const CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.text.find("sepcay") != std::string::npos);
}
