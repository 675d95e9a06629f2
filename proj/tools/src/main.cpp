#include "cusp/errors.hpp"
#include "cusp/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact resolution of cuspidal foliation germs in three variables"};
  // --h is the series h(u); help is long-form only.
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags given on the command line override it");

  cusp::RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help");
    sub->add_option("--truncation", cfg.truncation, "truncation order N (at least 8)");
    sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  };
  auto add_germ = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "exponent of x");
    sub->add_option("--q", cfg.q, "exponent of y");
    sub->add_option("--k", cfg.k, "exponent of u in front of h");
    sub->add_option("--h", cfg.h, "unit series h(u), e.g. \"1 + u\"");
    sub->add_option("--dot", cfg.dot, "write the divisor graph in DOT format");
  };

  CLI::App* resolve = app.add_subcommand("resolve", "resolve the germ and report the divisor and its singular points");
  add_germ(resolve);
  add_common(resolve);
  resolve->add_flag("--all-charts", cfg.all_charts, "also report the strict transform in every chart");

  CLI::App* topology = app.add_subcommand("topology", "divisor graph, presentations and holonomy constraints");
  add_germ(topology);
  add_common(topology);

  CLI::App* sep = app.add_subcommand("separatrix", "formal separatrix W = z^2 + a z + b and its normal form");
  sep->add_option("--d", cfg.d, "d = gcd(p, q)");
  sep->add_option("--k", cfg.k, "exponent of u in front of h");
  sep->add_option("--h", cfg.h, "unit series h(u)");
  sep->add_option("--p", cfg.p, "optional p, for the normalization map");
  sep->add_option("--q", cfg.q, "optional q, for the normalization map");
  add_common(sep);

  CLI::App* trace = app.add_subcommand("check-trace", "decide whether h(0) lies in the excluded set");
  trace->add_option("--h0", cfg.h0, "h(0) as a Q(i) constant, e.g. \"7/2\"");
  add_common(trace);

  CLI::App* lin = app.add_subcommand("classify-linear", "classify an integrable linear 1-form sum c_ij x_j dx_i");
  lin->add_option("--matrix", cfg.matrix, "JSON array of rows, entries integers or strings like \"1/2\"");
  add_common(lin);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cusp::kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = cusp::command_from_name(sub->get_name());
  if (!config_path.empty()) {
    // Command-line values win over the file.
    try {
      cusp::RunConfig file = cusp::load_config_file(config_path, cfg);
      auto* sub = app.get_subcommands().front();
      auto given = [&](const std::string& flag) {
        const CLI::Option* o = sub->get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
      };
      if (!given("--p")) cfg.p = file.p;
      if (!given("--q")) cfg.q = file.q;
      if (!given("--k")) cfg.k = file.k;
      if (!given("--d")) cfg.d = file.d;
      if (!given("--h")) cfg.h = file.h;
      if (!given("--h0")) cfg.h0 = file.h0;
      if (!given("--matrix")) cfg.matrix = file.matrix;
      if (!given("--truncation")) cfg.truncation = file.truncation;
      if (!given("--all-charts")) cfg.all_charts = file.all_charts;
      if (!given("--out")) cfg.out = file.out;
      if (!given("--dot")) cfg.dot = file.dot;
    } catch (const cusp::Error& e) {
      std::cerr << "cusp-resolve: " << e.what() << "\n";
      return cusp::kExitUsage;
    }
  }

  const cusp::RunResult res = cusp::run(cfg);
  const std::string text = cusp::serialize(res.report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else if (!write_file(cfg.out, text)) {
    std::cerr << "cusp-resolve: cannot write " << cfg.out << "\n";
    return cusp::kExitUsage;
  }
  if (!cfg.dot.empty() && !res.dot.empty() && !write_file(cfg.dot, res.dot)) {
    std::cerr << "cusp-resolve: cannot write " << cfg.dot << "\n";
    return cusp::kExitUsage;
  }
  if (!res.report.error.empty()) std::cerr << "cusp-resolve: " << res.report.error << "\n";
  return res.report.exit_code;
}
