#include "heisenrep/suites.hpp"

#include <iostream>

int main(int argc, char** argv) {
  heisenrep::SuiteConfig cfg;
  cfg.lambdas = {heisenrep::qfrac(-1, 4)};
  cfg.suites = {"fock-h2", "su2-blocks", "sp2r-casimirs", "u11-grading"};
  if (argc > 1) cfg = heisenrep::load_config_file(argv[1], cfg);
  auto report = heisenrep::run_suites(cfg);
  std::cout << heisenrep::emit_report(report, heisenrep::ReportFormat::Text);
  return report.all_pass() ? 0 : 1;
}
