#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = parad::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("parad_cli_" + name)).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kExample = "a & b, a -> c, b -> ~c";

}  // namespace

TEST_CASE("worked example verdicts and exit codes") {
  auto c = run({"paradeduce", "--premises", kExample, "--goal", "c"});
  CHECK(c.code == parad::cli::kYes);
  CHECK(has_line(c.out, "verdict: yes"));
  CHECK(has_line(c.out, "witness_verified: true"));
  CHECK(run({"paradeduce", "--premises", kExample, "--goal", "~c"}).code == parad::cli::kYes);
  auto both = run({"paradeduce", "--premises", kExample, "--goal", "c & ~c"});
  CHECK(both.code == parad::cli::kNo);
  CHECK(has_line(both.out, "verdict: no"));
  CHECK(run({"entails", "--premises", kExample, "--goal", "c & ~c"}).code == parad::cli::kYes);
  CHECK(run({"para-entails", "--premises", kExample, "--goal", "c & ~c"}).code == parad::cli::kNo);
  CHECK(run({"weak", "--premises", kExample, "--goal", "c"}).code == parad::cli::kYes);
  CHECK(run({"strong", "--premises", kExample, "--goal", "c"}).code == parad::cli::kNo);
  CHECK(run({"consistent", "--premises", kExample}).code == parad::cli::kNo);
  CHECK(run({"consistent", "--premises", "a & b, a -> c"}).code == parad::cli::kYes);
}

TEST_CASE("subset listings") {
  auto s = run({"subsets", "--premises", kExample, "--format", "records"});
  CHECK(s.code == 0);
  CHECK(has_line(s.out, "count=7"));
  CHECK(has_line(s.out, "subsets=2: a -> c, a & b"));
  auto m = run({"mcs", "--premises", kExample});
  CHECK(m.code == 0);
  CHECK(m.out.find("b -> ~c, a & b") != std::string::npos);
}

TEST_CASE("toy preset commands") {
  CHECK(run({"consistent", "--preset", "toy", "--premises", "p, ~p"}).code == parad::cli::kNo);
  CHECK(run({"deduce", "--preset", "toy", "--goal", "q"}).code == parad::cli::kYes);
  CHECK(run({"deduce", "--preset", "toy", "--goal", "p"}).code == parad::cli::kNo);
  auto cn = run({"cn", "--preset", "toy", "--premises", "p, ~p"});
  CHECK(cn.code == 0);
  auto cnp = run({"cn-para", "--preset", "toy", "--premises", "p, ~p"});
  CHECK(cnp.code == 0);
  CHECK(cnp.out.size() < cn.out.size() + 64);
  CHECK(run({"metatheory", "--preset", "toy", "--samples", "50"}).code == 0);
  CHECK(run({"check-adequacy", "--preset", "toy"}).code == 0);
}

TEST_CASE("witness files round-trip through the verifiers") {
  const std::string ded = temp_path("ded.txt");
  const std::string para = temp_path("para.txt");
  REQUIRE(run({"deduce", "--premises", "a & b, a -> c", "--goal", "c", "--witness-out", ded}).code ==
          0);
  CHECK(run({"verify-deduction", "--premises", "a & b, a -> c", "--witness", ded}).code == 0);
  CHECK(run({"verify-deduction", "--premises", "a & b", "--witness", ded}).code == parad::cli::kNo);

  REQUIRE(run({"paradeduce", "--preset", "toy", "--premises", "p, ~p, ~~q", "--goal", "~~p",
               "--witness-out", para})
              .code == 0);
  CHECK(run({"verify-paradeduction", "--preset", "toy", "--premises", "p, ~p, ~~q", "--witness",
             para})
            .code == 0);
  // Widen the last support to the whole premise set: no longer consistent.
  std::string text = read_file(para);
  const auto open = text.rfind("\n", text.size() - 2);
  const std::string last = text.substr(open + 1);
  const auto sb = last.find('['), se = last.find(']');
  std::string bad = text.substr(0, open + 1) + last.substr(0, sb) + "[p, ~p, ~~q]" +
                    last.substr(se + 1);
  std::ofstream(para) << bad;
  CHECK(run({"verify-paradeduction", "--preset", "toy", "--premises", "p, ~p, ~~q", "--witness",
             para})
            .code == parad::cli::kNo);
  fs::remove(ded);
  fs::remove(para);
}

TEST_CASE("structures and systems written by the tool load back") {
  const std::string val = temp_path("toy.val");
  const std::string sys = temp_path("toy.sys");
  REQUIRE(run({"build-adequate", "--preset", "toy", "--output", val}).code == 0);
  CHECK(run({"check-adequacy", "--preset", "toy", "--valuations", val}).code == 0);
  CHECK(run({"check-adequacy", "--preset", "toy", "--valuations",
             support::data_path("toy_broken.val")})
            .code == parad::cli::kUsage);
  auto ex = run({"export-system", "--preset", "toy"});
  REQUIRE(ex.code == 0);
  std::ofstream(sys) << ex.out;
  CHECK(run({"deduce", "--system", sys, "--goal", "q"}).code == 0);
  CHECK(run({"para-entails", "--system", sys, "--valuations", val, "--premises", "p, ~p",
             "--goal", "q"})
            .code == 0);
  fs::remove(val);
  fs::remove(sys);
}

TEST_CASE("unknown verdicts") {
  const std::string small = support::data_path("classical_small.sys");
  auto r = run({"deduce", "--system", small, "--premises", "q", "--goal", "p", "--budget", "300"});
  CHECK(r.code == parad::cli::kUnknown);
  CHECK(has_line(r.out, "verdict: unknown"));
  CHECK(run({"mcs", "--system", small, "--premises", "p, q"}).code == parad::cli::kUnknown);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == parad::cli::kUsage);
  CHECK(run({"bogus"}).code == parad::cli::kUsage);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"deduce", "--preset", "nope", "--goal", "c"}).code == parad::cli::kUsage);
  auto bad = run({"deduce", "--goal", "c ->"});
  CHECK(bad.code == parad::cli::kUsage);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"deduce"}).code == parad::cli::kUsage);
  CHECK(run({"deduce", "--goal", "c", "--format", "xml"}).code == parad::cli::kUsage);
  CHECK(run({"deduce", "--system", "/nonexistent.sys", "--goal", "c"}).code ==
        parad::cli::kUsage);
  CHECK(run({"verify-deduction", "--goal", "c"}).code == parad::cli::kUsage);
}
