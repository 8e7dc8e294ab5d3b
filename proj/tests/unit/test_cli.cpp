#include <doctest.h>

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using momdens::cli::run;

namespace {

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result
invoke(const std::vector<std::string>& args)
{
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return { code, out.str(), err.str() };
}

fs::path
scratch(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / "momdens_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::vector<std::string>
lines(const std::string& text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

} // namespace

TEST_CASE("figure1 schema and determinism")
{
  const auto a = invoke({ "figure1", "--seed", "42" });
  REQUIRE(a.code == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == "x,f_true,f_star,f_jones");
  CHECK(rows[1].rfind("0.025000000000000001,", 0) == 0);
  CHECK(rows[200].rfind("5,", 0) == 0);
  CHECK(invoke({ "figure1", "--seed", "42" }).out == a.out);
  CHECK(invoke({ "figure1", "--seed", "43" }).out != a.out);
}

TEST_CASE("figure2 schema")
{
  const auto a = invoke({ "figure2" });
  REQUIRE(a.code == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == "x,S_true,S_alpha,S_jones");
  CHECK(rows[200].rfind("10,", 0) == 0);
}

TEST_CASE("missing scenario is a configuration error and writes nothing")
{
  const fs::path out = scratch("missing.csv");
  const auto r = invoke({ "estimate", "--output", out.string() });
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("\"error\":\"config\"") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  const auto u = invoke({ "estimate", "--scenario", "nonexistent" });
  CHECK(u.code == 2);
}

TEST_CASE("parse errors exit with 2")
{
  CHECK(invoke({}).code == 2);
  CHECK(invoke({ "frobnicate" }).code == 2);
  CHECK(invoke({ "estimate", "--grid-count", "many" }).code == 2);
  CHECK(invoke({ "estimate", "--scenario", "lb-exp2", "--grid-min", "0" }).code == 2);
  CHECK(invoke({ "estimate", "--scenario", "lb-exp2", "--alpha", "weird:3" }).code == 2);
  CHECK(invoke({ "mse", "--scenario", "excess-gamma22", "--n", "100", "--x", "1" }).code == 2);
}

TEST_CASE("help goes to stdout")
{
  const auto r = invoke({ "--help" });
  CHECK(r.code == 0);
  CHECK(r.out.find("figure1") != std::string::npos);
}

TEST_CASE("estimate from a data file")
{
  const fs::path data = scratch("data.txt");
  {
    std::ofstream f(data);
    f << "# length-biased observations\n0.8\n1.2 # trailing comment\n\n0.5\n2.0\n";
  }
  const auto r = invoke({ "estimate", "--data", data.string(), "--weight", "0.5", "--alpha",
                          "fixed:8", "--grid-min", "0.5", "--grid-max", "1.5", "--grid-count",
                          "3" });
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "x,alpha,estimate");
  CHECK(rows[2].rfind("1,8,", 0) == 0);

  {
    std::ofstream f(data);
    f << "0.8\n-1\n";
  }
  CHECK(invoke({ "estimate", "--data", data.string() }).code == 2);
  {
    std::ofstream f(data);
    f << "0.8 0.9\n";
  }
  CHECK(invoke({ "estimate", "--data", data.string() }).code == 2);
}

TEST_CASE("survival estimate with baseline and clamping")
{
  const auto r = invoke({ "survival", "--scenario", "excess-gamma22", "--n", "400", "--baseline",
                          "jones", "--clamp-survival", "--grid-count", "20", "--grid-max", "10" });
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows[0] == "x,alpha,estimate,truth,jones");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream cells(rows[i]);
    std::string cell;
    std::vector<double> v;
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
    CHECK(v[2] >= 0.0);
    CHECK(v[2] <= 1.0);
    CHECK(v[4] <= 1.0);
  }
}

TEST_CASE("config file with flag override")
{
  const fs::path cfg = scratch("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"scenario": "lb-exp2", "n": [200], "alpha": "fixed:5", "grid-count": 4})";
  }
  const auto a = invoke({ "estimate", "--config", cfg.string() });
  REQUIRE(a.code == 0);
  CHECK(lines(a.out).size() == 5);
  CHECK(lines(a.out)[1].find(",5,") != std::string::npos);
  const auto b = invoke({ "estimate", "--config", cfg.string(), "--alpha", "fixed:7" });
  REQUIRE(b.code == 0);
  CHECK(lines(b.out)[1].find(",7,") != std::string::npos);
  {
    std::ofstream f(cfg);
    f << R"({"colour": "blue"})";
  }
  CHECK(invoke({ "estimate", "--config", cfg.string() }).code == 2);
  {
    std::ofstream f(cfg);
    f << "{ not json";
  }
  CHECK(invoke({ "estimate", "--config", cfg.string() }).code == 2);
}

TEST_CASE("output directory from the environment")
{
  const fs::path dir = scratch("envdir");
  fs::create_directories(dir);
  setenv("MOMDENS_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = invoke({ "figure2" });
  unsetenv("MOMDENS_OUTPUT_DIR");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(fs::exists(dir / "figure2.csv"));
  fs::remove_all(dir);
}

TEST_CASE("mse, rate, normality and compare commands")
{
  const auto m = invoke({ "mse", "--scenario", "lb-exp2", "--n", "100,400", "--x", "1",
                          "--replicates", "20" });
  REQUIRE(m.code == 0);
  CHECK(lines(m.out).size() == 3);
  CHECK(lines(m.out)[0] == "n,x,smoothing,truth,mean,bias,variance,mse,se_bias,se_mse");

  const auto r = invoke({ "rate", "--scenario", "lb-exp2", "--n", "100,200,400", "--x", "1",
                          "--replicates", "20" });
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# rate-fit x=1 slope=") != std::string::npos);
  CHECK(invoke({ "rate", "--scenario", "lb-exp2", "--n", "100,200", "--x", "1" }).code == 2);

  const auto nrm = invoke({ "normality", "--scenario", "excess-gamma22", "--estimator",
                            "survival", "--n", "300", "--x", "2", "--replicates", "100" });
  REQUIRE(nrm.code == 0);
  CHECK(lines(nrm.out)[0].rfind("n,x,alpha,center,scale,ks_distance", 0) == 0);
  CHECK(invoke({ "normality", "--scenario", "lb-exp2", "--n", "300", "--x", "1",
                 "--replicates", "50" })
          .code == 2);

  const auto c = invoke({ "compare", "--scenario", "lb-exp2", "--grid-count", "10" });
  REQUIRE(c.code == 0);
  CHECK(c.out.find("# ise moment=") != std::string::npos);
}
