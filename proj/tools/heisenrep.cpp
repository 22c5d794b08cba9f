#include "heisenrep/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>

namespace hr = heisenrep;

namespace {

struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& msg) : std::runtime_error(flag + ": " + msg) {}
};

struct Options {
  std::string config;
  std::vector<std::string> lambda;
  std::string lambdaPrime;
  std::string pWindow;
  int mMax = -1;
  int jMax = -1;
  std::vector<std::string> tol;
  std::vector<std::string> suites;
  bool noSuites = false;
  bool sequential = false;
  std::string format;
  std::string output;
  std::string rep = "nonfock-h4";
  int modes = 2;
  int mode = 2;
  std::string op;
  std::string input;
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

void override_setting(hr::SuiteConfig& c, const std::string& flag, const std::string& key, const std::string& v) {
  try {
    hr::apply_setting(c, key, v);
  } catch (const hr::ConfigError& e) {
    throw UsageError(flag, e.field == key ? e.detail : e.what());
  }
}

std::pair<int, int> parse_window(const std::string& s) {
  auto colon = s.find(':', s.front() == '-' ? 1 : 0);
  if (colon == std::string::npos) throw UsageError("--p-window", "expected a:b, got '" + s + "'");
  try {
    std::size_t pa = 0, pb = 0;
    std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    int x = std::stoi(a, &pa), y = std::stoi(b, &pb);
    if (pa != a.size() || pb != b.size()) throw std::invalid_argument("trailing");
    if (x > y) throw UsageError("--p-window", "lower bound exceeds upper bound");
    return {x, y};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--p-window", "expected integers a:b, got '" + s + "'");
  }
}

hr::SuiteConfig build_config(const Options& o) {
  hr::SuiteConfig c;
  std::string path = o.config;
  if (path.empty())
    if (const char* env = std::getenv(hr::kConfigEnv)) path = env;
  if (!path.empty()) {
    try {
      c = hr::load_config_file(path);
    } catch (const hr::ConfigError& e) {
      throw UsageError(o.config.empty() ? std::string("$") + hr::kConfigEnv : "--config", e.what());
    }
  }
  if (!o.lambda.empty()) {
    c.lambdaFromDecimal = false;
    override_setting(c, "--lambda", "lambda", join(o.lambda));
  }
  if (!o.lambdaPrime.empty()) override_setting(c, "--lambda-prime", "lambda_prime", o.lambdaPrime);
  if (!o.pWindow.empty()) {
    auto [a, b] = parse_window(o.pWindow);
    c.pMin = a;
    c.pMax = b;
  }
  if (o.mMax >= 0) c.mMax = o.mMax;
  if (o.jMax >= 0) c.jMax = o.jMax;
  for (const auto& t : o.tol) {
    auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("--tol", "expected class=value, got '" + t + "'");
    override_setting(c, "--tol", "tol." + t.substr(0, eq), t.substr(eq + 1));
  }
  if (!o.suites.empty()) c.suites = o.suites;
  if (o.noSuites) c.suites.clear();
  if (o.sequential) c.parallel = false;
  return c;
}

void validate(const hr::SuiteConfig& c) {
  try {
    c.validate();
  } catch (const hr::GeneralPositionError& e) {
    throw UsageError("--lambda", e.what());
  } catch (const hr::ConfigError& e) {
    static const std::map<std::string, std::string> flags{{"lambda", "--lambda"}, {"suite", "--suite"}, {"window", "--p-window"}};
    auto it = flags.find(e.field);
    throw UsageError(it != flags.end() ? it->second : e.field, e.detail);
  }
}

void write_out(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw UsageError("--output", "cannot write '" + o.output + "'");
  f << text;
}

hr::ReportFormat format_of(const Options& o, const std::string& fallback) {
  try {
    return hr::report_format_from(o.format.empty() ? fallback : o.format);
  } catch (const hr::ConfigError& e) {
    throw UsageError("--format", e.detail);
  }
}

int cmd_check(const Options& o) {
  auto cfg = build_config(o);
  validate(cfg);
  auto fmt = format_of(o, "json");
  auto rep = hr::run_suites(cfg);
  write_out(o, hr::emit_report(rep, fmt));
  return rep.all_pass() ? 0 : 1;
}

hr::SpinParameter spin_flag(const hr::Q& l) {
  try {
    return hr::SpinParameter(l);
  } catch (const hr::GeneralPositionError& e) {
    throw UsageError("--lambda", e.what());
  }
}

std::string decimal(const hr::Q& q) {
  std::ostringstream s;
  s << std::setprecision(12) << hr::to_double(q);
  return s.str();
}

int cmd_spectrum(const Options& o) {
  auto cfg = build_config(o);
  std::ostringstream out;
  bool csv = o.format == "csv";
  if (!o.format.empty() && o.format != "csv" && o.format != "text") throw UsageError("--format", "unknown format '" + o.format + "'");
  if (o.rep == "fock") {
    int mMax = o.mMax >= 0 ? o.mMax : 6;
    if (o.modes < 1 || o.modes > 4) throw UsageError("--modes", "expected 1..4");
    auto f = hr::fock_ladders<hr::Q>(o.modes, mMax);
    out << (csv ? "mode,eigenvalue\n" : "mode  eigenvalues\n");
    for (int k = 0; k < o.modes; ++k) {
      auto s = hr::fock_number_spectrum(f, k);
      if (csv)
        for (const auto& v : s) out << k + 1 << ',' << hr::to_string(v) << '\n';
      else {
        out << std::setw(4) << k + 1 << "  ";
        for (const auto& v : s) out << hr::to_string(v) << ' ';
        out << '\n';
      }
    }
  } else if (o.rep == "nonfock-h4") {
    if (cfg.lambdaFromDecimal) throw UsageError("--lambda", "decimal value refused; give lambda as n/d");
    if (o.mode != 1 && o.mode != 2) throw UsageError("--mode", "expected 1 or 2");
    hr::TruncationWindow w(cfg.pMin, cfg.pMax, cfg.mMax);
    out << (csv ? "lambda,p,m,eigenvalue,decimal\n" : "lambda      p    m   N_mode" + std::to_string(o.mode) + "   decimal\n");
    for (const auto& l : cfg.lambdas) {
      auto lam = spin_flag(l);
      auto wide = hr::nonfock_h4<hr::Q>(lam, w.widened(1));
      auto N = hr::restrict_to(wide.a2(o.mode) * wide.a1(o.mode), w);
      for (std::size_t i = 0; i < w.dim(); ++i) {
        auto g = hr::graded_index(w, i);
        auto v = N.matrix().at(i, i);
        if (csv)
          out << hr::to_string(l) << ',' << g.p << ',' << g.m << ',' << hr::to_string(v) << ',' << decimal(v) << '\n';
        else
          out << std::left << std::setw(10) << hr::to_string(l) << std::right << std::setw(3) << g.p << std::setw(5) << g.m << "   "
              << std::left << std::setw(8) << hr::to_string(v) << ' ' << decimal(v) << std::right << '\n';
      }
      auto s = hr::number_spectrum<hr::Q>(lam, w, o.mode);
      if (!csv) out << "# min " << hr::to_string(s.front()) << " (" << decimal(s.front()) << "), " << s.size() << " distinct values\n";
    }
  } else {
    throw UsageError("--rep", "expected nonfock-h4 or fock, got '" + o.rep + "'");
  }
  write_out(o, out.str());
  return 0;
}

int cmd_kernel(const Options& o) {
  auto cfg = build_config(o);
  if (cfg.lambdaFromDecimal) throw UsageError("--lambda", "decimal value refused; give lambda as n/d");
  std::ostringstream out;
  int pMin = o.pWindow.empty() ? -5 : cfg.pMin, pMax = o.pWindow.empty() ? 5 : cfg.pMax;
  int jShow = 4;
  bool bad = false;
  for (const auto& l : cfg.lambdas) {
    auto lam = spin_flag(l);
    std::vector<hr::KernelBlock> bl;
    try {
      bl = hr::kernel_blocks(lam, pMin, pMax, cfg.jMax);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--j-max", e.what());
    }
    out << "lambda " << hr::to_string(l) << ", blocks p in [" << pMin << ", " << pMax << "], jMax " << cfg.jMax << '\n';
    for (const auto& b : bl) {
      out << "  K_" << b.p << " = zbar2^(" << hr::to_string(b.exponent) << ") * sum_j c_j (zeta zbar1/zbar2)^j, c =";
      for (int j = 0; j <= jShow && j < static_cast<int>(b.coeff.size()); ++j) out << ' ' << hr::to_string(b.coeff[j]);
      out << " ...\n";
    }
    auto shift = hr::kernel_shift_check(bl, l, {hr::Q(0), hr::Q(1)});
    auto poly = hr::kernel_shift_check(bl, l, {hr::Q(2), hr::Q(-3), hr::Q(1)});
    out << "  shift zbar2 K_p = K_(p+1): residual " << shift << '\n';
    out << "  f(zbar2) = 2 - 3 zbar2 + zbar2^2 (f(1) = 0): residual " << poly << '\n';
    for (auto g : hr::all_interlace_generators()) {
      double r = hr::interlace_residual(lam, g, pMin, pMax, cfg.jMax);
      bad = bad || r != 0.0;
      out << "  interlace " << hr::to_string(g) << ": residual " << r << '\n';
    }
    bad = bad || shift != 0.0 || poly != 0.0;
  }
  write_out(o, out.str());
  return bad ? 1 : 0;
}

int cmd_dump(const Options& o) {
  auto cfg = build_config(o);
  if (cfg.lambdaFromDecimal) throw UsageError("--lambda", "decimal value refused; give lambda as n/d");
  auto lam = spin_flag(cfg.lambdas.front());
  hr::TruncationWindow w(cfg.pMin, cfg.pMax, cfg.mMax);
  hr::SparseMatrix<hr::Q> M;
  const std::string& n = o.op;
  auto h = [&] { return hr::nonfock_h4<hr::Q>(lam, w); };
  if (n == "a1_1") M = h().a1(1).matrix();
  else if (n == "a1_2") M = h().a1(2).matrix();
  else if (n == "a2_1") M = h().a2(1).matrix();
  else if (n == "a2_2") M = h().a2(2).matrix();
  else if (n == "L3" || n == "Lp" || n == "Lm" || n == "L0") {
    auto g = hr::graded_su2<hr::Q>(lam, w);
    M = (n == "L3" ? g.L3 : n == "Lp" ? g.Lp : n == "Lm" ? g.Lm : g.L0).matrix();
  } else if (n == "N1" || n == "N2") {
    auto wide = hr::nonfock_h4<hr::Q>(lam, w.widened(1));
    int md = n == "N1" ? 1 : 2;
    M = hr::restrict_to(wide.a2(md) * wide.a1(md), w).matrix();
  } else
    throw UsageError("--op", "unknown operator '" + n + "' (a1_1 a1_2 a2_1 a2_2 L3 Lp Lm L0 N1 N2)");
  std::ostringstream out;
  out << "row,col,p_row,m_row,p_col,m_col,value\n";
  std::vector<std::tuple<std::size_t, std::size_t, hr::Q>> ent;
  M.for_each([&](std::size_t r, std::size_t c, const hr::Q& v) { ent.emplace_back(r, c, v); });
  std::sort(ent.begin(), ent.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b) : std::get<1>(a) < std::get<1>(b);
  });
  for (const auto& [r, c, v] : ent) {
    auto gr = hr::graded_index(w, r), gc = hr::graded_index(w, c);
    out << r << ',' << c << ',' << gr.p << ',' << gr.m << ',' << gc.p << ',' << gc.m << ',' << hr::to_string(v) << '\n';
  }
  write_out(o, out.str());
  return 0;
}

int cmd_report(const Options& o) {
  auto fmt = format_of(o, "text");
  std::ifstream in(o.input);
  if (!in) throw UsageError("--input", "cannot read '" + o.input + "'");
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("--input", std::string("not JSON: ") + e.what());
  }
  hr::VerificationReport rep;
  try {
    rep = hr::report_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError("--input", e.what());
  }
  write_out(o, hr::emit_report(rep, fmt));
  return rep.all_pass() ? 0 : 1;
}

void add_config_flags(CLI::App* s, Options& o) {
  s->add_option("--config", o.config, "key=value config file (default from $HEISENREP_CONFIG)");
  s->add_option("--lambda", o.lambda, "spin parameter(s) as exact rationals, e.g. -1/4")->delimiter(',');
  s->add_option("--p-window", o.pWindow, "grade window a:b");
  s->add_option("--m-max", o.mMax, "top m level");
  s->add_option("--output,-o", o.output, "write to file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heisenrep: finite-truncation checks for Heisenberg algebra representations"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(hr::kVersion));
  Options o;

  auto* check = app.add_subcommand("check", "run verification suites and emit a report");
  add_config_flags(check, o);
  check->add_option("--lambda-prime", o.lambdaPrime, "second spin parameter list");
  check->add_option("--j-max", o.jMax, "kernel series depth");
  check->add_option("--tol", o.tol, "tolerance override class=value");
  check->add_option("--suite", o.suites, "suite to run (repeatable)")->delimiter(',');
  check->add_flag("--no-suites", o.noSuites, "run nothing; empty report");
  check->add_flag("--sequential", o.sequential, "run suites one after another");
  check->add_option("--format", o.format, "json, csv or text");

  auto* spectrum = app.add_subcommand("spectrum", "print number-operator spectra");
  add_config_flags(spectrum, o);
  spectrum->add_option("--rep", o.rep, "nonfock-h4 or fock");
  spectrum->add_option("--mode", o.mode, "oscillator mode for nonfock-h4 (1 or 2)");
  spectrum->add_option("--modes", o.modes, "number of Fock modes");
  spectrum->add_option("--format", o.format, "text or csv");

  auto* kernel = app.add_subcommand("kernel", "print interlacing kernel blocks and checks");
  add_config_flags(kernel, o);
  kernel->add_option("--j-max", o.jMax, "series depth");

  auto* dump = app.add_subcommand("dump-operator", "write a sparse operator as CSV triplets");
  add_config_flags(dump, o);
  dump->add_option("--op", o.op, "operator name")->required();

  auto* report = app.add_subcommand("report", "reformat an existing JSON report");
  report->add_option("input", o.input, "JSON report")->required();
  report->add_option("--format", o.format, "json, csv or text");
  report->add_option("--output,-o", o.output, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(o);
    if (*spectrum) return cmd_spectrum(o);
    if (*kernel) return cmd_kernel(o);
    if (*dump) return cmd_dump(o);
    if (*report) return cmd_report(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hr::GeneralPositionError& e) {
    std::cerr << "error: --lambda: " << e.what() << '\n';
    return 2;
  } catch (const hr::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
