#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stringci/cli.hpp"
#include "stringci/errors.hpp"
#include "stringci/report.hpp"

using namespace stringci;
using namespace stringci::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("stringci_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const std::string kString5 = "n=[5];D=[[2],[1],[1]]";
const std::string kQuintic = "n=[4];D=[[5]]";

}  // namespace

TEST_CASE("instance parsing") {
  const auto a = parse_inline("n=[7,4];D=[[2,1],[1,-2],[1,0],[1,0],[1,0]]");
  CHECK(a.ci.n() == std::vector<int>{7, 4});
  CHECK(a.ci.t() == 5);
  CHECK(parse_inline("n=2").ci.complex_dim() == 2);
  CHECK(parse_inline(" n = [3] ; D = [[2]] ").ci.degrees() == std::vector<std::vector<long>>{{2}});

  const auto b = parse_instance_json(R"({"n": [4], "D": [[5]], "label": "quintic"})");
  CHECK(b.label == "quintic");
  CHECK(b.ci.degrees()[0][0] == 5);

  CHECK_THROWS_AS(parse_inline("n=[4];D=[[5]"), InvalidInstanceError);
  CHECK_THROWS_AS(parse_inline("D=[[5]]"), InvalidInstanceError);
  CHECK_THROWS_AS(parse_inline("n=[4];E=[[5]]"), InvalidInstanceError);
  CHECK_THROWS_AS(parse_instance_json(R"({"n": [4], "D": [[5.5]]})"), InvalidInstanceError);
  CHECK_THROWS_AS(parse_instance_json(R"({"n": [4], "extra": 1})"), InvalidInstanceError);
  CHECK_THROWS_AS(parse_instance_json(R"([1, 2])"), InvalidInstanceError);
  CHECK_THROWS_AS(load_instance_file("/nonexistent/file.json"), InvalidInstanceError);
}

TEST_CASE("complex numbers") {
  CHECK(parse_complex("0.1") == std::complex<double>(0.1, 0));
  CHECK(parse_complex("0.1+0.05i") == std::complex<double>(0.1, 0.05));
  CHECK(parse_complex("-0.2i") == std::complex<double>(0, -0.2));
  CHECK(parse_complex("1e-1-2e-2i") == std::complex<double>(0.1, -0.02));
  CHECK_THROWS_AS(parse_complex("abc"), InvalidInstanceError);
  CHECK_THROWS_AS(parse_complex("0.1+"), InvalidInstanceError);
}

TEST_CASE("thread count from the environment") {
  setenv("STRINGCI_THREADS", "3", 1);
  CHECK(default_threads() == 3);
  unsetenv("STRINGCI_THREADS");
  CHECK(default_threads() >= 1);
}

TEST_CASE("genus command") {
  const auto quintic = run_cli({"genus", "--inline", kQuintic});
  CHECK(quintic.code == kOk);
  CHECK(quintic.out.find("euler: -200") != std::string::npos);
  CHECK(quintic.out.find("string: false") != std::string::npos);

  const auto s5 = run_cli({"genus", "--inline", kString5, "--genus", "witten"});
  CHECK(s5.code == kOk);
  CHECK(s5.out.find("string: true") != std::string::npos);
  CHECK(s5.out.find("q^16  0") != std::string::npos);
  CHECK(s5.out.find("\n  q^18") == std::string::npos);
  CHECK(s5.out.find("witten: 0 + O(q^18)") != std::string::npos);

  const auto zero = run_cli({"genus", "--inline", "n=[4];D=[[1],[0]]"});
  CHECK(zero.code == kInputError);
  CHECK(zero.err.find("degenerate divisor: zero row p=") != std::string::npos);

  const auto file = temp_file("cp2.json", R"({"n": [2], "label": "CP2"})");
  const auto cp2 = run_cli({"genus", file, "--format", "csv", "--genus", "ahat", "--genus", "lgenus"});
  CHECK(cp2.code == kOk);
  CHECK(cp2.out == "kind,q_power,value\nahat,0,-1/8\nlgenus,0,1\n");

  CHECK(run_cli({"genus", "--inline", "n=[4", "--q-order", "2"}).code == kInputError);
  CHECK(run_cli({"genus"}).code == kInputError);
  CHECK(run_cli({"genus", "--inline", kQuintic, "--genus", "bogus"}).code == kInputError);
  CHECK(run_cli({"genus", "--inline", kQuintic, "--y-order", "1"}).code == kPreconditionError);
  CHECK(run_cli({"frobnicate"}).code == kInputError);
}

TEST_CASE("check-string command") {
  CHECK(run_cli({"check-string", "--inline", kString5}).code == kOk);
  CHECK(run_cli({"check-string", "--inline", kQuintic}).code == kFalse);
  CHECK(run_cli({"check-string", "--inline", "n=[3];D=[[2]]"}).code == kOk);
  CHECK(run_cli({"check-string", "--inline", "n=[2];D=[[1]]"}).code == kPreconditionError);
  const auto json = run_cli({"check-string", "--inline", kString5, "--format", "json"});
  const auto j = Json::parse(json.out);
  CHECK(j["string"]["is_string"] == true);
  CHECK(j["string"]["matrix_criterion_ok"] == true);
}

TEST_CASE("search and verify commands") {
  const auto s = run_cli({"search", "--s", "1", "--t-max", "3", "--n", "5"});
  CHECK(s.code == kOk);
  CHECK(s.out == "n=(5) D=[(2),(1),(1)]\n1 matrices\n");

  const auto v = run_cli({"verify", "--s", "1", "--t-max", "4", "--n-max", "12", "--q-order", "6", "--threads", "2"});
  CHECK(v.code == kOk);
  CHECK(v.out.find(" 0 failures") != std::string::npos);

  const auto empty = run_cli({"verify", "--s", "1", "--t-max", "1", "--n", "2"});
  CHECK(empty.code == kOk);
  CHECK(empty.out.find("0 instances") != std::string::npos);

  CHECK(run_cli({"search", "--s", "0", "--t-max", "2", "--n-max", "3"}).code == kInputError);
  CHECK(run_cli({"search", "--s", "2", "--t-max", "2", "--n", "3"}).code == kInputError);
  CHECK(run_cli({"verify", "--s", "1", "--t-max", "2"}).code == kInputError);
}

TEST_CASE("oracle command") {
  const auto cp2 = run_cli({"oracle", "--inline", "n=[2]", "--genus", "ahat", "--oracle-q", "0"});
  CHECK(cp2.code == kOk);
  CHECK(cp2.out.find("relative error") != std::string::npos);

  const auto s5 = run_cli({"oracle", "--inline", kString5, "--format", "json"});
  CHECK(s5.code == kOk);
  CHECK(Json::parse(s5.out)["error_kind"] == "absolute");

  const auto far = run_cli({"oracle", "--inline", "n=[2]", "--radius", "10"});
  CHECK(far.code == kConvergenceError);
  CHECK(!far.err.empty());

  // a tolerance below the attainable accuracy reports disagreement
  CHECK(run_cli({"oracle", "--inline", "n=[5];D=[[6]]", "--oracle-q", "0.3", "--tolerance", "1e-14"}).code == kFalse);
  CHECK(run_cli({"oracle", "--inline", "n=[2]", "--oracle-q", "2"}).code == kPreconditionError);
  CHECK(run_cli({"oracle", "--inline", "n=[2]", "--oracle-q", "x"}).code == kInputError);
  CHECK(run_cli({"oracle", "--inline", "n=[2]", "--tolerance", "-1"}).code == kInputError);
}

TEST_CASE("structured output round-trips byte for byte") {
  const std::vector<std::vector<std::string>> commands = {
      {"genus", "--inline", "n=[7,4];D=[[2,1],[1,-2],[1,0],[1,0],[1,0]]", "--format", "json", "--q-order", "3"},
      {"genus", "--inline", "n=[2]", "--format", "json"},
      {"check-string", "--inline", kQuintic, "--format", "json"},
      {"search", "--s", "2", "--t-max", "5", "--n-max", "7", "--format", "json"},
      {"verify", "--s", "1", "--t-max", "3", "--n-max", "8", "--q-order", "3", "--format", "json"},
      {"oracle", "--inline", "n=[2]", "--format", "json"},
  };
  for (const auto& args : commands) {
    CAPTURE(args[0]);
    const auto r = run_cli(args);
    CHECK((r.code == kOk || r.code == kFalse));
    CHECK(dump(Json::parse(r.out)) == r.out);
  }
  const auto j = Json::parse(run_cli(commands[1]).out);
  CHECK(j["genera"][0]["coefficients"][0] == "-1/8");
}
