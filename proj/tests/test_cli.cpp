#include <doctest.h>

#include <charconv>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using foliation::cli::run_cli;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kSmallGrid{"--grid", "t=0.5:2:2,re=0.5:2:2,im=-0.5:0.5:2"};

std::vector<std::string> with_grid(std::vector<std::string> args) {
  args.insert(args.end(), kSmallGrid.begin(), kSmallGrid.end());
  return args;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"verify", "--family", "noninv", "--b", "z^2 + i", "--kappa", "1"}).code == 0);
  CHECK(run({"verify", "--family", "f0", "--C", "1", "--kappa", "-1"}).code == 0);
  CHECK(run({"verify", "--family", "liouville", "--c", "exp(z)", "--kappa", "1"}).code == 0);
  CHECK(run({"classify", "--b", "z^2 + i", "--kappa", "1"}).code == 0);
  CHECK(run({"resolving", "--phi", "xi*theta", "--kappa", "1", "--samples", "50", "--seed", "3"}).code == 0);
  CHECK(run({"resolving", "--phi", "2", "--kappa", "1", "--perturb", "tau:+0.1"}).code == 1);
  CHECK(run({"symmetry", "--check", "algebra", "--a", "z^2", "--b-gen", "exp(z)"}).code == 0);
  CHECK(run({"orbit", "--phi", "2*z", "--family", "noninv", "--b", "z^2 + i", "--kappa", "1"}).code == 0);

  Run bad = run({"verify", "--family", "noninv", "--b", "z^(", "--kappa", "1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("ParseError at position 3") != std::string::npos);
  CHECK(run({"verify", "--family", "noninv", "--kappa", "1"}).code == 2);
  CHECK(run({"verify", "--family", "unknown", "--kappa", "1"}).code == 2);
  CHECK(run({"verify", "--family", "f0", "--kappa", "2"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"orbit", "--phi", "1", "--family", "noninv", "--b", "z^2 + i", "--kappa", "1"}).code == 2);
}

TEST_CASE("verify report contents") {
  Run r = run({"verify", "--family", "noninv", "--b", "z^2 + i", "--kappa", "1"});
  json j = json::parse(r.out);
  CHECK(j["schema"] == foliation::cli::kSchema);
  CHECK(j["command"] == "verify");
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["records"].size() >= 48);
  CHECK(j["summary"]["max_residuals"]["pde"].get<double>() < 1e-9);
}

TEST_CASE("classify verdicts") {
  json a = json::parse(run({"classify", "--b", "exp(z) + 2*i", "--kappa", "1"}).out);
  CHECK(a["summary"]["verdict"]["kind"] == "ConformallyNonInvariant");
  json b = json::parse(run({"classify", "--b", "0.5", "--kappa", "1"}).out);
  CHECK(b["summary"]["verdict"]["kind"] == "InvariantCaseMatched");
}

TEST_CASE("identical seeds give identical output") {
  auto args = std::vector<std::string>{"resolving", "--phi", "exp(-xi)", "--kappa", "-1", "--samples", "30",
                                       "--seed", "11"};
  Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  args[8] = "12";
  CHECK(run(args).out != a.out);

  auto v = with_grid({"verify", "--family", "noninv", "--b", "1/(z + 2) + i", "--kappa", "1"});
  CHECK(run(v).out == run(v).out);
}

TEST_CASE("csv and json carry the same numbers") {
  auto base = with_grid({"verify", "--family", "noninv", "--b", "exp(z) + 2*i", "--kappa", "1"});
  json j = json::parse(run(base).out);
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  Run c = run(csv_args);
  REQUIRE(c.code == 0);

  std::map<std::string, double> from_json;
  for (const auto& rec : j["records"]) {
    std::ostringstream key;
    for (const auto& [name, v] : rec["point"].items()) key << name << '=' << v.dump() << ';';
    for (const auto& [kind, v] : rec["residuals"].items()) from_json[key.str() + kind] = v.get<double>();
  }

  std::istringstream lines(c.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "p1_name,p1,p2_name,p2,p3_name,p3,kind,value,tol");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> f(1);
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
      const char ch = line[k];
      if (quoted && ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        f.back() += '"';
        ++k;
      } else if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        f.emplace_back();
      } else {
        f.back() += ch;
      }
    }
    REQUIRE(f.size() == 9);
    std::ostringstream key;
    for (int i = 0; i < 3; ++i) {
      double v = 0.0;
      std::from_chars(f[2 * i + 1].data(), f[2 * i + 1].data() + f[2 * i + 1].size(), v);
      key << f[2 * i] << '=' << json(v).dump() << ';';
    }
    double value = 0.0;
    std::from_chars(f[7].data(), f[7].data() + f[7].size(), value);
    auto it = from_json.find(key.str() + f[6]);
    REQUIRE_MESSAGE(it != from_json.end(), key.str(), f[6]);
    CHECK(it->second == value);
    ++rows;
  }
  CHECK(rows == from_json.size());
}
