#include "doctest.h"

#include <fstream>
#include <sstream>

#include "brnr/cli.hpp"
#include "brnr/json_io.hpp"

using namespace brnr;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("compute: demarche example") {
  auto r = run_cli({"compute", "--group", R"({"kind":"demarche","l":3,"m":1})", "--galois",
                    R"({"mode":"fq","q":4,"action":"trivial"})"});
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j.at("brnral").at("invariants") == nlohmann::json::array({3}));
  CHECK(j.at("mode") == "fq");
}

TEST_CASE("compute: characteristic dividing the order is an input error") {
  auto r = run_cli({"compute", "--group", R"({"kind":"demarche","l":3,"m":1})", "--galois",
                    R"({"mode":"fq","q":3,"action":"trivial"})"});
  CHECK(r.code == 2);
  CHECK(r.err.find("characteristic divides group order") != std::string::npos);
}

TEST_CASE("compute: abelian groups give the trivial Brauer group") {
  auto r = run_cli({"compute", "--group", R"({"kind":"abelian","invariants":[2,4]})",
                    "--galois", R"({"mode":"fq","q":5,"action":"trivial"})"});
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j.at("brnral").at("invariants").empty());
}

TEST_CASE("compute: named corpus groups and --oracle") {
  auto r = run_cli({"compute", "--group", "demarche", "--galois",
                    R"({"mode":"fq","q":4})", "--oracle", "--witnesses"});
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j.at("certificates").at("oracle").at("agreement") == true);
  CHECK(j.at("witnesses").at("gder_order") == 3);
  CHECK(j.at("witnesses").at("gab").at("invariants") == nlohmann::json::array({3, 9, 9}));
}

TEST_CASE("compute: local and real modes") {
  auto local = run_cli({"compute", "--group", "demarche", "--galois",
                        R"({"mode":"local_unramified","q":4})"});
  CHECK(local.code == 0);
  auto j = parse_json(local.out);
  CHECK(j.at("brnral").at("invariants") == nlohmann::json::array({3}));
  CHECK(j.at("certificates").at("relevable").size() == 2);

  auto real = run_cli({"compute", "--group", "s3", "--galois", R"({"mode":"real"})"});
  CHECK(real.code == 0);
  CHECK(parse_json(real.out).at("certificates").at("real_orthogonality") == true);
}

TEST_CASE("compute: char0 mode with explicit data") {
  // gamma = Z/3, trivial action, cyclo 4 mod 9 on demarche(3,1)
  std::string galois = R"({"mode":"char0","gamma":{"kind":"abelian","invariants":[3]},)"
                       R"("action":{"0":"trivial","1":"trivial","2":"trivial"},)"
                       R"("cyclo":{"0":1,"1":4,"2":7}})";
  auto r = run_cli({"compute", "--group", "demarche", "--galois", galois});
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j.at("brnral").at("invariants") == nlohmann::json::array({3}));
  CHECK(j.at("sha1cyc").at("invariants").empty());
}

TEST_CASE("h1 command") {
  auto r = run_cli({"h1", "--group", "s3", "--galois", R"({"mode":"real"})"});
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j.at("h1").at("invariants") == nlohmann::json::array({2}));

  // trivial Galois group
  std::string galois = R"({"mode":"char0","gamma":{"kind":"abelian","invariants":[]},)"
                       R"("action":{"0":"trivial"},"cyclo":{"0":1}})";
  auto r2 = run_cli({"h1", "--group", "s3", "--galois", galois});
  CHECK(r2.code == 0);
  CHECK(parse_json(r2.out).at("h1").at("invariants").empty());
}

TEST_CASE("malformed JSON reports line and column with exit 2") {
  auto r = run_cli({"compute", "--group", "{\"kind\":\n \"demarche\",, }", "--galois",
                    R"({"mode":"fq","q":4})"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("column") != std::string::npos);
}

TEST_CASE("resource caps exit with code 4") {
  auto r = run_cli({"compute", "--cap", "100", "--group",
                    R"({"kind":"demarche","l":3,"m":1})", "--galois",
                    R"({"mode":"fq","q":4})"});
  CHECK(r.code == 4);
}

TEST_CASE("verify: default corpus passes; byte-identical across thread counts") {
  auto r1 = run_cli({"--threads", "1", "verify"});
  CHECK(r1.code == 0);
  auto r8 = run_cli({"--threads", "8", "verify"});
  CHECK(r8.code == 0);
  CHECK(r1.out == r8.out);
  auto j = parse_json(r1.out);
  CHECK(j.at("agreement") == true);
}

TEST_CASE("verify: corpus file") {
  std::string path = "/tmp/brnr_corpus_test.json";
  {
    std::ofstream f(path);
    f << R"({"fq":[{"id":"k1","group":{"kind":"abelian","invariants":[5]},"q":2}],)"
      << R"("char0":[{"id":"k2","group":{"kind":"named","name":"s3"},"gamma_order":2,"cyclo":5}]})";
  }
  auto r = run_cli({"verify", "--corpus", path});
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j.at("cases") == 3);  // one fq check + two char0 checks
}

TEST_CASE("demarche sugar and --json output") {
  std::string path = "/tmp/brnr_demarche_out.json";
  auto r = run_cli({"demarche", "--l", "3", "--m", "1", "--q", "4", "--json", path});
  CHECK(r.code == 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(parse_json(ss.str()).at("brnral").at("invariants") == nlohmann::json::array({3}));
}

TEST_CASE("compute is deterministic across thread counts") {
  std::vector<std::string> base = {"compute", "--group", "demarche", "--galois",
                                   R"({"mode":"fq","q":4})", "--witnesses", "--oracle"};
  std::vector<std::string> t1 = base, t8 = base;
  t1.insert(t1.begin(), {"--threads", "1"});
  t8.insert(t8.begin(), {"--threads", "8"});
  auto r1 = run_cli(t1);
  auto r8 = run_cli(t8);
  CHECK(r1.code == 0);
  CHECK(r1.out == r8.out);
}
