#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wallsun/cli.hpp"
#include "wallsun/report.hpp"

using namespace wallsun;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path =
      (std::filesystem::temp_directory_path() / ("wallsun_test_" + name)).string();
  std::ofstream(path) << text;
  return path;
}

template <class T>
void check_round_trip(const T& value) {
  const Json j = value;
  CHECK(j.get<T>() == value);
  CHECK(Json::parse(report::emit(j)).get<T>() == value);
}

}  // namespace

TEST_CASE("wss search: table rows and exit code") {
  const auto r = run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "100"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("13          28            28") != std::string::npos);
  CHECK(r.out.find("31          30            30") != std::string::npos);
  CHECK(r.out.find("2 WSS primes") != std::string::npos);

  const Json j = run_json({"wss", "search", "--a", "2", "--b", "1", "--pmax", "100"});
  CHECK(j["schema_version"] == "1");
  CHECK(j["command"] == "wss search");
  CHECK(j["inputs"] == Json{{"a", 2}, {"b", 1}, {"pmax", 100}});
  const auto hits = j["results"]["hits"].get<std::vector<WssCertificate>>();
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].p == 13);
  CHECK(hits[0].pi_p2 == 28);
  CHECK(hits[1].p == 31);
  CHECK(hits[1].pi_p2 == 30);
}

TEST_CASE("wss search: Fibonacci has no rows below 10^5") {
  const Json j = run_json({"wss", "search", "--a", "1", "--b", "1", "--pmax", "100000"});
  CHECK(j["results"]["hits"].empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"wss", "search", "--a", "2", "--b", "0", "--pmax", "10"}).code == cli::kUsage);
  CHECK(run({"wss", "search", "--a", "2", "--b", "1"}).code == cli::kUsage);
  CHECK(run({"wss", "search", "--a", "2", "--b", "x", "--pmax", "10"}).code == cli::kUsage);
  CHECK(run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "-4"}).code == cli::kUsage);
  CHECK(run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "10", "--format", "xml"}).code ==
        cli::kUsage);
  CHECK(run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "10", "--jobs", "0"}).code ==
        cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"wss"}).code == cli::kUsage);
  CHECK(run({"period", "--a", "1", "--b", "2", "--m", "4"}).code == cli::kUsage);
  CHECK(run({"period", "--a", "1", "--b", "1", "--m", "1"}).code == cli::kUsage);
  CHECK(run({"mono", "check", "--a", "4", "--b", "1", "--s", "2"}).code == cli::kUsage);
  CHECK(run({"mono", "trinomial", "--N", "3", "--M", "3", "--A", "1", "--B", "1"}).code ==
        cli::kUsage);
  CHECK(run({"mono", "trinomial", "--N", "3", "--M", "1", "--A", "0", "--B", "1"}).code ==
        cli::kUsage);
  const auto r = run({"wss", "search", "--a", "2", "--b", "0", "--pmax", "10"});
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("help exits with 0") {
  const auto r = run({"--help"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("Subcommands") != std::string::npos);
}

TEST_CASE("table1: all rows pass, a smaller bound fails with 1") {
  const auto r = run({"table1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("8/8 PASS") != std::string::npos);
  CHECK(r.out.find("(27,22)   [13,84]") != std::string::npos);
  CHECK(r.out.find("(25,7)    [5,8]") != std::string::npos);

  const Json j = run_json({"table1"});
  const auto rows = j["results"]["rows"].get<std::vector<report::Table1Row>>();
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) CHECK(row.pass);

  const auto small = run({"table1", "--pmax", "50"});
  CHECK(small.code == cli::kCheckFailure);
  CHECK(small.out.find("6/8 PASS") != std::string::npos);
}

TEST_CASE("period") {
  const auto r = run({"period", "--a", "5", "--b", "2", "--m", "49"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("pi(49) = 336") != std::string::npos);
  const auto pr = run_json({"period", "--a", "5", "--b", "2", "--m", "7"})["results"].get<PeriodResult>();
  CHECK(pr.pi == 48);
  CHECK(pr.method == PeriodMethod::MatrixOrder);
  CHECK(run_json({"period", "--a", "1", "--b", "1", "--m", "10"})["results"]["pi"] == 60);
}

TEST_CASE("mono check") {
  const auto r = run({"mono", "check", "--a", "2", "--b", "1", "--s", "13", "--n", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("13        no") != std::string::npos);
  CHECK(r.out.find("monogenic: no") != std::string::npos);
  CHECK(r.out.find("agreement: true") != std::string::npos);

  const Json j = run_json({"mono", "check", "--a", "1", "--b", "1", "--s", "2", "--n", "2"});
  CHECK(j["results"]["report"]["monogenic"] == true);
  CHECK(j["results"]["report"]["poly"]["N"] == 8);
  CHECK(j["results"]["agreement"] == true);
  CHECK(j["results"]["prediction"] == true);

  // delta_31 = +1 for (2,1): outside the hypotheses, still exit 0
  const Json out = run_json({"mono", "check", "--a", "2", "--b", "1", "--s", "31"});
  CHECK(out["results"]["prediction"].is_null());
  CHECK(out["results"]["hypotheses"]["overall"] == false);

  const auto csv = run({"mono", "check", "--a", "1", "--b", "1", "--s", "2", "--format", "csv",
                        "--dedekind-check"});
  CHECK(csv.out == "p,index_coprime,decided_by\n2,true,JKS4\n5,true,JKS5\n");
}

TEST_CASE("mono trinomial") {
  const Json j = run_json({"mono", "trinomial", "--N", "4", "--M", "2", "--A", "-1", "--B", "-1"});
  CHECK(j["results"]["report"]["monogenic"] == true);
  CHECK(j["results"]["report"]["irreducibility_source"] == "AssumedByCaller");
  CHECK(j["results"]["irreducibility_certificate"].is_number());
  const Json t = run_json({"mono", "trinomial", "--N", "26", "--M", "13", "--A", "-2", "--B", "-1",
                           "--dedekind-check"});
  CHECK(t["results"]["report"]["monogenic"] == false);
}

TEST_CASE("resource failures exit with 3") {
  // B is a product of two 26-digit primes.
  const auto r = run({"mono", "trinomial", "--N", "3", "--M", "1", "--A", "1", "--B",
                      "300000000000000000000001060000000000000000000000871"});
  CHECK(r.code == cli::kResource);
  CHECK(r.err.find("resource limit") != std::string::npos);
}

TEST_CASE("cross-validate") {
  const auto r = run({"cross-validate", "--a", "1", "--b", "1", "--s", "3", "--n-max", "2"});
  CHECK(r.code == cli::kOk);
  const auto cv = run_json({"cross-validate", "--a", "1", "--b", "1", "--s", "2", "--n-max", "3"})
                      ["results"].get<mono::CrossValidation>();
  CHECK(cv.agreement);
  CHECK(cv.n_independent);
  CHECK(cv.rows.size() == 3);
  const auto ce = run_json({"cross-validate", "--a", "2", "--b", "1", "--s", "13", "--n-max", "1"})
                      ["results"].get<mono::CrossValidation>();
  CHECK(ce.agreement);
  REQUIRE(ce.prediction.has_value());
  CHECK_FALSE(*ce.prediction);
}

TEST_CASE("JSON output is byte-identical across runs and worker counts") {
  const std::vector<std::vector<std::string>> commands = {
      {"wss", "search", "--a", "23", "--b", "11", "--pmax", "3000", "--format", "json"},
      {"table1", "--format", "json"},
      {"mono", "check", "--a", "3", "--b", "3", "--s", "6", "--n", "1", "--format", "json"},
      {"cross-validate", "--a", "1", "--b", "1", "--s", "2", "--n-max", "2", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    const auto first = run(cmd);
    CHECK(first.code == 0);
    CHECK(run(cmd).out == first.out);
    auto one = cmd, many = cmd;
    one.insert(one.end(), {"--jobs", "1"});
    many.insert(many.end(), {"--jobs", "7"});
    CHECK(run(one).out == first.out);
    CHECK(run(many).out == first.out);
  }
}

TEST_CASE("--timing fills timing_ms") {
  const Json j = run_json({"table1", "--timing"});
  CHECK(j["timing_ms"].get<double>() > 0.0);
  CHECK(run_json({"table1"})["timing_ms"].get<double>() == 0.0);
}

TEST_CASE("CSV header matches JSON field names") {
  const auto csv = run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "40", "--format", "csv"});
  CHECK(csv.out ==
        "p,pi_p,pi_p2,is_wss,path,usub_condition\n"
        "13,28,28,true,GeneralPeriodCompare,true\n"
        "31,30,30,true,GeneralPeriodCompare,true\n");
  const Json j = run_json({"wss", "search", "--a", "2", "--b", "1", "--pmax", "40"});
  for (const auto& [key, value] : j["results"]["hits"][0].items()) {
    CHECK(csv.out.find(key) != std::string::npos);
  }
}

TEST_CASE("config file supplies defaults, command line wins") {
  const auto path = write_temp("cfg", "# search defaults\na = 2\nb=1\npmax = 40\n--format = json\n");
  const auto r = run({"wss", "search", "--config", path});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["results"]["hits"].size() == 2);
  const auto narrowed = run({"wss", "search", "--config", path, "--pmax", "20"});
  CHECK(Json::parse(narrowed.out)["results"]["hits"].size() == 1);
  // keys other commands take are ignored, unknown keys are not
  const auto per = run({"period", "--config", path, "--m", "13"});
  REQUIRE(per.code == 0);
  CHECK(Json::parse(per.out)["results"]["pi"] == 28);
  CHECK(run({"table1", "--config", write_temp("bad", "colour = blue\n")}).code == cli::kUsage);
  CHECK(run({"table1", "--config", write_temp("syntax", "pmax 100\n")}).code == cli::kUsage);
  CHECK(run({"table1", "--config", "does/not/exist.cfg"}).code == cli::kUsage);
}

TEST_CASE("WALLSUN_JOBS is honored and validated") {
  setenv("WALLSUN_JOBS", "3", 1);
  CHECK(run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "100"}).code == 0);
  setenv("WALLSUN_JOBS", "many", 1);
  CHECK(run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "100"}).code == cli::kUsage);
  CHECK(run({"wss", "search", "--a", "2", "--b", "1", "--pmax", "100", "--jobs", "2"}).code == 0);
  unsetenv("WALLSUN_JOBS");
}

TEST_CASE("JSON round trips for every payload type") {
  check_round_trip(is_wss(LucasParams::make(5, 2), 7));
  check_round_trip(search_wss(LucasParams::make(23, 11), 100));
  check_round_trip(period_prime_squared(LucasParams::make(1, 1), 5));
  check_round_trip(mono::TrinomialSpec::make(26, 13, -2, -1));
  // coefficients beyond 64 bits travel as strings
  const auto huge = mono::TrinomialSpec::make(7, 3, Big("-123456789012345678901234567890"),
                                              Big("98765432109876543210"));
  check_round_trip(huge);
  CHECK(Json(huge)["A"].is_string());
  CHECK(Json(huge)["N"] == 7);
  check_round_trip(mono::is_monogenic_Fn(
      mono::PowerCompositionalSpec::make(LucasParams::make(3, 3), 2, 1)));
  check_round_trip(mono::theorem_hypotheses(LucasParams::make(2, 1), 31));
  check_round_trip(mono::cross_validate(LucasParams::make(1, 1), 3, 2));
  check_round_trip(mono::cross_validate(LucasParams::make(2, 1), 31, 1));
  report::Table1Row row{2, 1, {{13, 28}, {31, 30}}, {{13, 28}}, false};
  check_round_trip(row);
  CHECK_THROWS_AS(report::big_from_json(Json("12x")), InvalidArgument);
  CHECK_THROWS_AS(report::big_from_json(Json(1.5)), InvalidArgument);
  const Json bad_method = Json::parse(R"({"modulus": 7, "pi": 8, "method": "Guess"})");
  CHECK_THROWS_AS(bad_method.get<PeriodResult>(), InvalidArgument);
}

TEST_CASE("emit_csv quotes only when needed") {
  CHECK(report::emit_csv({"x", "y"}, {{"1", "a,b"}, {"say \"hi\"", ""}}) ==
        "x,y\n1,\"a,b\"\n\"say \"\"hi\"\"\",\n");
}
