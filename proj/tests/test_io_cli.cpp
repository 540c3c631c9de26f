#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cliquelab/commands.hpp"
#include "cliquelab/config.hpp"
#include "cliquelab/fixtures.hpp"
#include "cliquelab/generators.hpp"
#include "cliquelab/io.hpp"
#include "test_helpers.hpp"

using namespace cliquelab;

TEST_CASE("graph serialization round-trips") {
  RngStream rng(81, 0);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = sample_er_graph(3 + static_cast<int>(rng.below(8)), 0.4, rng);
    CHECK(read_graph(write_graph(g)) == g);
  }

  // readers accept 1-based labels
  Graph expected(4);
  expected.add_edge(0, 1);
  expected.add_edge(2, 3);
  CHECK(read_graph("graph v1\nn=4\nbase=1\n1 2\n3 4\n") == expected);
  CHECK_THROWS_AS(read_graph("graph v1\nn=4\n0 4\n"), std::invalid_argument);
}

TEST_CASE("restriction serialization round-trips") {
  RngStream rng(82, 0);
  Bitset full(edge_count(6));
  full.set_all();
  for (int trial = 0; trial < 20; ++trial) {
    Restriction rho = sample_restriction(full, 0.5, rng);
    int n = 0;
    Restriction back = read_restriction(write_restriction(rho, 6), &n);
    CHECK(n == 6);
    CHECK(back == rho);
  }
}

TEST_CASE("circuit serialization round-trips") {
  RngStream rng(83, 0);
  for (int trial = 0; trial < 20; ++trial) {
    MonotoneCircuit f = random_circuit(5, 2, 3, 3, rng);
    MonotoneCircuit back = read_circuit(write_circuit(f));
    CHECK(back.n == f.n);
    testing::for_each_graph(5, [&](const Bitset& u) { CHECK(evaluate(back, u) == evaluate(f, u)); });
  }
}

TEST_CASE("flat form serialization round-trips, constants included") {
  RngStream rng(84, 0);
  for (int trial = 0; trial < 20; ++trial) {
    FlatCNF cnf = random_cnf(5, 4, 3, rng);
    FlatDNF dnf = random_dnf(5, 4, 3, rng);
    CHECK(read_cnf(write_cnf(cnf)).clauses == cnf.clauses);
    CHECK(read_dnf(write_dnf(dnf)).monomials == dnf.monomials);
  }
  FlatDNF top(5);
  top.monomials.push_back(Bitset(edge_count(5)));
  CHECK(read_dnf(write_dnf(top)).is_const_true());
  CHECK(read_cnf(write_cnf(FlatCNF(5))).is_const_true());
}

TEST_CASE("readers reject malformed inputs") {
  CHECK_THROWS_AS(read_graph(""), std::invalid_argument);
  CHECK_THROWS_AS(read_graph("graph v2\nn=3\n"), std::invalid_argument);
  CHECK_THROWS_AS(read_graph("graph v1\n0 1\n"), std::invalid_argument);  // edge before n=
  CHECK_THROWS_AS(read_restriction("restriction v1\nn=3\n0 1 x\n"), std::invalid_argument);
  CHECK_THROWS_AS(read_circuit("circuit v1\nn=3\ngate 0 nand 1 2\noutput 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_circuit("circuit v1\nn=3\ngate 0 input 0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(read_circuit("circuit v1\nn=3\ngate 0 and 0\noutput 0\n"),
                  std::invalid_argument);  // child does not precede gate
  CHECK_THROWS_AS(read_cnf("cnf v1\nn=3\nmonomial 0 1\n"), std::invalid_argument);
}

TEST_CASE("clique family serialization") {
  CliqueFamily fam(5, 3);
  fam.insert(vertex_set(5, {0, 2, 4}));
  fam.insert(vertex_set(5, {0, 1, 2}));
  CliqueFamily back = read_clique_family(write_clique_family(fam));
  CHECK(back == fam);
}

TEST_CASE("tree dump formats") {
  TreeBuildResult res =
      build_trees(fixtures::figure_formula(), all_star_restriction_full(5), 2, TreeMode::TOnly);
  const std::string dump = write_tree(res.tree);
  CHECK(dump.find("tree v1") == 0);
  CHECK(dump.find("A={0,1}") != std::string::npos);
  const std::string dot = write_tree_dot(res.tree);
  CHECK(dot.find("digraph tree") == 0);
}

TEST_CASE("config validation and round-trip") {
  ParsedArgs ok = parse_config({"verify-lemma4"});
  CHECK(ok.errors.empty());
  CHECK(ok.config.command == "verify-lemma4");
  CHECK(ok.config.trials == 10000);  // documented default budget
  CHECK(ok.config.budget_nodes > 0);

  ParsedArgs bad = parse_config({"verify-lemma4", "--p", "1.5"});
  REQUIRE(!bad.errors.empty());
  CHECK(bad.errors[0].find("p:") != std::string::npos);

  ParsedArgs unknown = parse_config({"frobnicate"});
  CHECK((!unknown.errors.empty() || unknown.show_help));

  // file round-trip is the identity
  ExperimentConfig c = ok.config;
  c.n = 7;
  c.seed = 99;
  ExperimentConfig back = config_from_json(config_json(c));
  CHECK(back == c);

  // --config loads the file, explicit flags override it
  const std::string path =
      (std::filesystem::temp_directory_path() / "cliquelab_config.json").string();
  spit_file(path, config_json(c));
  ParsedArgs from_file = parse_config({"verify-lemma4", "--config", path, "--seed", "123"});
  REQUIRE(from_file.errors.empty());
  CHECK(from_file.config.n == 7);
  CHECK(from_file.config.seed == 123);
  std::filesystem::remove(path);
}

TEST_CASE("execute writes deterministic reports") {
  const std::string dir_a = std::filesystem::temp_directory_path() / "cliquelab_test_a";
  const std::string dir_b = std::filesystem::temp_directory_path() / "cliquelab_test_b";
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);

  ParsedArgs parsed = parse_config({"enumerate-maximal", "--n", "3", "--k", "3", "--seed", "7"});
  REQUIRE(parsed.errors.empty());

  std::ostringstream out_a, out_b, err;
  ExperimentConfig ca = parsed.config;
  ca.out = dir_a;
  CHECK(execute(ca, out_a, err) == 0);
  ExperimentConfig cb = parsed.config;
  cb.out = dir_b;
  CHECK(execute(cb, out_b, err) == 0);

  CHECK(out_a.str() == out_b.str());
  CHECK(slurp_file(dir_a + "/report.json") == slurp_file(dir_b + "/report.json"));
  CHECK(slurp_file(dir_a + "/summary.csv") == slurp_file(dir_b + "/summary.csv"));
  // the bundled example: three maximal triangle-free graphs on [3]
  const std::string family = slurp_file(dir_a + "/maximal_n3_k3.txt");
  CHECK(family == "graphfamily v1\nn=3 k=3\n0-1 0-2\n0-1 1-2\n0-2 1-2\n");

  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("claim7 and z-oracle emit their artifacts") {
  const std::string dir = (std::filesystem::temp_directory_path() / "cliquelab_artifacts").string();
  std::filesystem::remove_all(dir);

  ParsedArgs claim7 = parse_config({"verify-claim7", "--instances", "2", "--out", dir});
  REQUIRE(claim7.errors.empty());
  RunReport rep = cmd_verify_claim7(claim7.config);
  CHECK(rep.all_pass());
  const std::string dump = slurp_file(dir + "/figure_tree.txt");
  CHECK(dump.find("tree v1") == 0);
  CHECK(slurp_file(dir + "/figure_tree.dot").find("digraph") == 0);

  ParsedArgs zcfg = parse_config({"verify-z-oracle", "--instances", "2", "--out", dir});
  REQUIRE(zcfg.errors.empty());
  cmd_verify_z_oracle(zcfg.config);
  CliqueFamily z = read_clique_family(slurp_file(dir + "/figure_z.txt"));
  CHECK(z.size() == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run-pipeline accepts a circuit file") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "cliquelab_circuit.txt").string();
  spit_file(path, write_circuit(fixtures::toy_circuit(0)));
  ParsedArgs parsed = parse_config({"run-pipeline", "--circuit", path, "--seed", "5"});
  REQUIRE(parsed.errors.empty());
  RunReport rep = cmd_run_pipeline(parsed.config);
  CHECK(rep.all_pass());
  CHECK(rep.values.at("completed") == "1");
  std::filesystem::remove(path);
}

TEST_CASE("exit status contract") {
  // 0: all pass
  RunReport pass_rep;
  pass_rep.checks.push_back(check_pass("x"));
  CHECK(report_exit_status(pass_rep) == 0);
  // 1: any failure
  RunReport fail_rep;
  fail_rep.checks.push_back(check_pass("x"));
  fail_rep.checks.push_back(check_fail("y", "1", "0"));
  CHECK(report_exit_status(fail_rep) == 1);
  // 3: budget exhaustion surfaces as skipped
  ParsedArgs parsed = parse_config({"verify-claim7", "--budget-nodes", "2", "--instances", "0"});
  REQUIRE(parsed.errors.empty());
  std::ostringstream out, err;
  CHECK(execute(parsed.config, out, err) == 3);
  CHECK(out.str().find("SKIP") != std::string::npos);
}

TEST_CASE("run_command dispatches every known command") {
  for (const auto& name : known_commands()) {
    ParsedArgs parsed = parse_config({name});
    CHECK(parsed.errors.empty());
  }
  ExperimentConfig c;
  c.command = "nope";
  CHECK_THROWS_AS(run_command(c), std::invalid_argument);
}
