#include "cusp/report.hpp"

#include "cusp/errors.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sys/wait.h>
#include <unistd.h>

using namespace cusp;

namespace {

RunConfig resolve_config(int p, int q, int k, const std::string& h = "1") {
  RunConfig c;
  c.command = Command::Resolve;
  c.p = p;
  c.q = q;
  c.k = k;
  c.h = h;
  return c;
}

bool has_warning(const Report& r, const std::string& code) {
  for (const auto& w : r.warnings) {
    if (w.code == code) return true;
  }
  return false;
}

struct ToolOutput {
  std::string out;
  int status = -1;
};

ToolOutput run_tool(const std::string& args) {
  ToolOutput t;
  const std::string cmd = std::string(CUSP_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return t;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) t.out.append(buf.data(), n);
  const int rc = pclose(pipe);
  t.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return t;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cusp_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Command, Names) {
  for (Command c : {Command::Resolve, Command::Separatrix, Command::Topology, Command::CheckTrace,
                    Command::ClassifyLinear}) {
    EXPECT_EQ(command_from_name(command_name(c)), c);
  }
  EXPECT_EQ(command_name(Command::CheckTrace), "check-trace");
  EXPECT_THROW(command_from_name("blowup"), ContractViolation);
}

TEST(Config, FromJsonAndValidate) {
  const auto c = config_from_json(nlohmann::json{{"command", "resolve"}, {"p", 4}, {"q", 3}, {"k", 1}, {"h", "1+u"}});
  EXPECT_EQ(c.p, 4);
  EXPECT_EQ(c.q, 3);
  EXPECT_EQ(c.h, "1+u");
  EXPECT_EQ(c.truncation, 16);
  EXPECT_NO_THROW(c.validate());

  auto low = c;
  low.truncation = 7;
  EXPECT_THROW(low.validate(), ContractViolation);
  RunConfig missing;
  missing.command = Command::Resolve;
  EXPECT_THROW(missing.validate(), ContractViolation);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), ContractViolation);

  const auto m = config_from_json(nlohmann::json{{"command", "classify-linear"}, {"matrix", {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}}});
  EXPECT_EQ(nlohmann::json::parse(m.matrix).size(), 3u);
}

TEST(Config, FileParseErrorPosition) {
  const auto path = temp_file("bad.json");
  {
    std::ofstream f(path);
    f << "{\n  \"p\": 2,\n  \"q\": ,\n}\n";
  }
  try {
    load_config_file(path.string());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  std::filesystem::remove(path);
}

TEST(Run, ResolveReduced) {
  const auto r = run(resolve_config(2, 2, 2)).report;
  EXPECT_EQ(r.schema, kReportSchema);
  EXPECT_EQ(r.status, "REDUCED");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.divisor_graph["nodes"].size(), 2u);
  EXPECT_EQ(r.stages.size(), 2u);
  for (const auto& st : r.stages) EXPECT_TRUE(st["integrable"].get<bool>());
  EXPECT_TRUE(has_warning(r, "M''-COMPONENT"));
  EXPECT_TRUE(has_warning(r, "FORMAL-TO-ORDER-16"));
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run(resolve_config(2, 2, 1, "5")).report.exit_code, kExitExcluded);
  EXPECT_EQ(run(resolve_config(2, 2, 1, "5")).report.status, "EXCLUDED-TRACE");
  EXPECT_EQ(run(resolve_config(2, 2, 1, "4")).report.exit_code, kExitExcluded);
  EXPECT_EQ(run(resolve_config(2, 2, 1, "3")).report.exit_code, kExitOk);
  EXPECT_EQ(run(resolve_config(2, 2, 1, "u")).report.exit_code, kExitUsage);
  EXPECT_EQ(run(resolve_config(2, 2, 1, "1+")).report.status, "ERROR");

  RunConfig t;
  t.command = Command::CheckTrace;
  t.h0 = "7/2";
  EXPECT_EQ(run(t).report.exit_code, kExitOk);
  t.h0 = "-4";
  EXPECT_EQ(run(t).report.exit_code, kExitExcluded);
}

TEST(Run, SwapWarning) {
  const auto r = run(resolve_config(3, 2, 1)).report;
  EXPECT_TRUE(has_warning(r, "SWAPPED-XY"));
  EXPECT_EQ(r.exit_code, kExitOk);
}

TEST(Run, CaseTwoWarnings) {
  const auto r = run(resolve_config(2, 3, 1)).report;
  EXPECT_TRUE(has_warning(r, "CASE2-AS-BEFORE"));
  EXPECT_TRUE(has_warning(r, "CASE2-SEPARATRIX-ON-D''"));
  EXPECT_EQ(r.presentations["relation"]["text"], "<α, β | α^3 = β^2>");
}

TEST(Run, Separatrix) {
  RunConfig c;
  c.command = Command::Separatrix;
  c.d = 3;
  c.k = 2;
  const auto r = run(c).report;
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.separatrix["r"], 3);
  c.h = "0";
  const auto r0 = run(c).report;
  EXPECT_EQ(r0.separatrix["b"], "u^3");
  EXPECT_FALSE(has_warning(r0, "FORMAL-TO-ORDER-16"));
}

TEST(Run, ClassifyLinear) {
  RunConfig c;
  c.command = Command::ClassifyLinear;
  c.matrix = "[[0,1,0],[0,0,0],[0,0,0]]";
  const auto r = run(c).report;
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.linear["verdict"], "Kupka");
  EXPECT_EQ(r.linear["rank"], 1);
}

TEST(Report, JsonRoundTripAndDeterminism) {
  const auto a = run(resolve_config(4, 3, 1, "1+u")).report;
  const auto b = run(resolve_config(4, 3, 1, "1+u")).report;
  EXPECT_EQ(serialize(a), serialize(b));
  const Report back = nlohmann::json::parse(serialize(a)).get<Report>();
  EXPECT_EQ(back, a);
  EXPECT_EQ(serialize(back), serialize(a));
  EXPECT_EQ(serialize(a).back(), '\n');
}

TEST(Tool, ResolveMatchesLibrary) {
  const auto t = run_tool("resolve --p 2 --q 3 --k 1 --h 1");
  EXPECT_EQ(t.status, 0);
  EXPECT_EQ(t.out, serialize(run(resolve_config(2, 3, 1)).report));
}

TEST(Tool, ExitCodesAndFiles) {
  EXPECT_EQ(run_tool("check-trace --h0 5").status, 2);
  EXPECT_EQ(run_tool("check-trace --h0 1").status, 0);
  EXPECT_EQ(run_tool("resolve --p 2 --q 2 --k 1 --h u").status, 1);
  EXPECT_NE(run_tool("bogus").status, 0);

  const auto cfg = temp_file("cfg.json");
  const auto out = temp_file("out.json");
  const auto dot = temp_file("out.dot");
  {
    std::ofstream f(cfg);
    f << R"({"p": 3, "q": 3, "k": 2, "h": "1+u"})";
  }
  const auto t = run_tool("--config " + cfg.string() + " topology --out " + out.string() + " --dot " + dot.string());
  EXPECT_EQ(t.status, 0);
  std::ifstream o(out);
  const auto j = nlohmann::json::parse(o);
  EXPECT_EQ(j["command"], "topology");
  EXPECT_EQ(j["divisor_graph"]["distinguished"], "P");
  std::ifstream d(dot);
  std::string first;
  std::getline(d, first);
  EXPECT_EQ(first.rfind("graph divisor", 0), 0u);
  for (const auto& p : {cfg, out, dot}) std::filesystem::remove(p);
}
