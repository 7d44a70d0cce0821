#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cmdir/report.hpp"

int main(int argc, char** argv) {
  cmdir::RunConfig cfg;
  CLI::App app{"CM elliptic directions for primes p = 3 mod 4"};
  app.require_subcommand(1, 1);
  long long p = 0, order = 0;
  std::size_t terms = cfg.terms;
  long prec = cfg.prec;
  for (const char* name : {"chars", "qexp", "gross", "period", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--p", p, "prime p = 3 mod 4, p > 3")->required()->envname("CMTOOL_P");
    sub->add_option("--order", order, "nebentypus order d, d | (p-1)/2")->envname("CMTOOL_ORDER");
    sub->add_option("--terms", terms, "number of q-expansion coefficients")->envname("CMTOOL_TERMS");
    sub->add_option("--prec", prec, "working precision in bits")->envname("CMTOOL_PREC");
    sub->add_option("--format", cfg.format, "json or csv")->envname("CMTOOL_FORMAT");
    sub->add_option("--out", cfg.output_path, "output file (default stdout)")->envname("CMTOOL_OUT");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.p = p;
  if (app.get_subcommands().front()->count("--order") || std::getenv("CMTOOL_ORDER")) cfg.order = order;
  cfg.terms = terms;
  cfg.prec = prec;

  try {
    auto doc = cmdir::run_command(cfg);
    std::string text = cfg.format == "csv" ? cmdir::to_csv(doc) : doc.dump(2) + "\n";
    if (cfg.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.output_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot open " << cfg.output_path << "\n";
        return 1;
      }
      f << text;
    }
  } catch (const cmdir::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
