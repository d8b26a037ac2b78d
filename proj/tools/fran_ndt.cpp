// fran-ndt - command-line front end for the delivery-time trade-off engine.
//
// Subcommands: ndt, sweep, regimes, gap, simulate, figure. Exit codes:
//   0 success, 2 invalid arguments, 3 no finite delivery time (or an
//   undeliverable demand), 4 gap-audit violation, 5 indivisible file size.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fran/fran.hpp"

namespace {

using namespace fran;
using nlohmann::json;

struct ParamArgs {
  int en_count = 2;
  int user_count = 2;
  int library_size = 0;  // defaults to user_count when unset
  std::string mu = "0";
  std::string r = "0";

  SystemParams build() const {
    const int n = library_size > 0 ? library_size : user_count;
    return SystemParams(en_count, user_count, n, parse_rational(mu), parse_rational(r));
  }
};

void add_param_options(CLI::App* cmd, ParamArgs& args) {
  cmd->add_option("-M,--ens", args.en_count, "number of edge nodes");
  cmd->add_option("-K,--users", args.user_count, "number of users");
  cmd->add_option("-N,--library", args.library_size, "library size (default: K)");
  cmd->add_option("--mu", args.mu, "fractional cache size, 'p/q' or decimal");
  cmd->add_option("-r,--rate", args.r, "fronthaul rate, 'p/q' or decimal");
}

Mode parse_mode(const std::string& text) {
  if (text == "serial") return Mode::Serial;
  if (text == "pipelined") return Mode::Pipelined;
  throw std::invalid_argument("mode must be 'serial' or 'pipelined'");
}

std::vector<Mode> parse_modes(const std::string& text) {
  if (text == "both") return {Mode::Serial, Mode::Pipelined};
  return {parse_mode(text)};
}

// Accepts "2^k" or a plain power of two; returns k.
int parse_snr_exponent(const std::string& text) {
  if (text.rfind("2^", 0) == 0) {
    const int k = std::stoi(text.substr(2));
    if (k < 1) throw std::invalid_argument("SNR exponent must be positive");
    return k;
  }
  const Rational p = parse_rational(text);
  if (denominator(p) != 1 || p < 2) throw std::invalid_argument("SNR must be a power of two >= 2");
  BigInt v = numerator(p);
  int k = 0;
  while (v % 2 == 0) {
    v /= 2;
    ++k;
  }
  if (v != 1) throw std::invalid_argument("SNR must be a power of two");
  return k;
}

std::vector<int> parse_demand(const std::string& text) {
  std::vector<int> demand;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) demand.push_back(std::stoi(cell));
  return demand;
}

std::vector<Rational> parse_grid_list(const std::string& text) {
  std::vector<Rational> grid;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) grid.push_back(parse_rational(cell));
  return grid;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string describe_split(const FileSplit& split) {
  std::string out;
  for (const auto& part : split.parts) {
    if (!out.empty()) out += ", ";
    out += to_string(part.scheme) + " " + format_rational(part.fraction);
  }
  return out;
}

int cmd_ndt(const ParamArgs& args, const std::string& mode_text, const std::string& format,
            const std::string& out_path) {
  const SystemParams p = args.build();
  const Mode mode = parse_mode(mode_text);
  Rational lower, ach_delta;
  json lower_json;
  SchemeNdt ach;
  if (mode == Mode::Serial || p.r == 0) {
    const LpSolution lp = lp_lower_bound(p);
    lower = lp.point.delta;
    lower_json = jsonio::dump(lp);
    ach = achievable_serial(p);
  } else {
    lower = pipelined_lower_bound(p);
    lower_json = {{"delta", jsonio::dump(lower)}};
    ach = achievable_pipelined(p);
  }
  ach_delta = ach.point.delta;
  const OptimalityCertificate cert = exact_ndt(p, mode);
  const RegimeLabel label = classify_regime(p, mode);

  if (format == "json") {
    json j = {{"params", jsonio::dump(p)},
              {"mode", to_string(mode)},
              {"regime", jsonio::dump(label)},
              {"lower", lower_json},
              {"achievable", jsonio::dump(ach)},
              {"certificate", jsonio::dump(cert)}};
    write_output(out_path, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream out;
  out << "M=" << p.en_count << " K=" << p.user_count << " N=" << p.library_size
      << " mu=" << format_rational(p.mu) << " r=" << format_rational(p.r) << " mode=" << to_string(mode)
      << "\n";
  out << "regime:      " << to_string(label.cache_regime) << " / " << to_string(label.fronthaul_regime);
  if (mode == Mode::Pipelined) out << " / band " << to_string(label.band);
  out << "\n";
  out << "lower bound: " << format_rational(lower) << " (" << format_decimal(lower) << ")\n";
  out << "achievable:  " << format_rational(ach_delta) << " (" << format_decimal(ach_delta) << ") via "
      << describe_split(ach.split) << "\n";
  out << "certificate: " << to_string(cert.status) << " (witness " << cert.witness << "), gap "
      << format_rational(cert.gap) << "\n";
  write_output(out_path, out.str());
  return 0;
}

int cmd_regimes(const ParamArgs& args, const std::string& format, const std::string& out_path) {
  const SystemParams p = args.build();
  const Thresholds t = thresholds(p);
  if (format == "json") {
    json j = {{"params", jsonio::dump(p)},
              {"thresholds", jsonio::dump(t)},
              {"serial", jsonio::dump(classify_regime(p, Mode::Serial))},
              {"pipelined", jsonio::dump(classify_regime(p, Mode::Pipelined))}};
    write_output(out_path, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream out;
  out << "thresholds: r_th=" << (t.r_th ? format_rational(*t.r_th) : std::string("infinity"))
      << " mu1=" << format_rational(t.mu1) << " mu2=" << format_rational(t.mu2) << "\n";
  const RegimeLabel serial = classify_regime(p, Mode::Serial);
  const RegimeLabel pipe = classify_regime(p, Mode::Pipelined);
  out << "serial:     " << to_string(serial.cache_regime) << " / " << to_string(serial.fronthaul_regime)
      << "\n";
  out << "pipelined:  " << to_string(pipe.cache_regime) << " / " << to_string(pipe.fronthaul_regime)
      << " / band " << to_string(pipe.band) << "\n";
  write_output(out_path, out.str());
  return 0;
}

int cmd_sweep(const ParamArgs& args, const std::string& axis_text, const std::string& grid_list,
              const std::string& grid_start, const std::string& grid_end, const std::string& grid_step,
              const std::string& mode_text, const std::string& out_path) {
  SweepSpec spec;
  spec.base = args.build();
  spec.axis = axis_text == "r" ? SweepAxis::R : SweepAxis::Mu;
  if (axis_text != "mu" && axis_text != "r") throw std::invalid_argument("axis must be 'mu' or 'r'");
  spec.modes = parse_modes(mode_text);
  if (!grid_list.empty())
    spec.grid = parse_grid_list(grid_list);
  else
    spec.grid = SweepSpec::make_grid(parse_rational(grid_start), parse_rational(grid_end),
                                     parse_rational(grid_step));
  const auto rows = run_sweep(spec);
  write_output(out_path, sweep_csv(rows));
  return 0;
}

int cmd_gap(const GapGridSpec& spec, const std::string& out_path) {
  std::vector<GapRow> rows;
  try {
    rows = run_gap_grid(spec);
  } catch (const std::logic_error& e) {
    std::cerr << "gap audit violation: " << e.what() << "\n";
    return 4;
  }
  std::ostringstream out;
  out << "M,K,mu,r,mode,gap,gap_pq\n";
  Rational max_gap(0);
  for (const auto& row : rows) {
    out << row.en_count << ',' << row.user_count << ',' << format_rational(row.mu) << ','
        << format_rational(row.r) << ',' << to_string(row.mode) << ',' << format_decimal(row.gap) << ','
        << format_rational(row.gap) << "\n";
    if (row.gap > max_gap) max_gap = row.gap;
  }
  write_output(out_path, out.str());
  std::cerr << "tuples: " << rows.size() << ", max gap: " << format_rational(max_gap) << " ("
            << format_decimal(max_gap) << ")\n";
  if (max_gap > 2) {
    std::cerr << "gap audit violation: max gap exceeds 2\n";
    return 4;
  }
  return 0;
}

int cmd_simulate(const ParamArgs& args, long long file_bits, const std::string& snr_text,
                 const std::string& demand_text, bool pipelined, int blocks,
                 const std::string& ladder_text, const std::string& out_path) {
  const SystemParams p = args.build();
  const int log2p = parse_snr_exponent(snr_text);
  const std::vector<int> demand = parse_demand(demand_text);
  const Mode mode = pipelined ? Mode::Pipelined : Mode::Serial;
  const PlacementPlan plan = plan_placement(p, file_bits, mode, pipelined ? blocks : 1);
  const Schedule schedule = pipelined ? build_pipelined_schedule(plan, demand, log2p)
                                      : build_serial_schedule(plan, demand, log2p);
  SimulationReport report = verify_schedule(schedule, plan, demand);
  if (!ladder_text.empty()) {
    std::vector<int> ladder;
    int lo = 10, hi = 40, step = 2;
    if (std::sscanf(ladder_text.c_str(), "%d:%d:%d", &lo, &hi, &step) < 2 || step < 1 || hi < lo)
      throw std::invalid_argument("ladder must be 'lo:hi[:step]' in log2 units");
    for (int e = lo; e <= hi; e += step) ladder.push_back(e);
    const PlacementPlan serial_plan = plan_placement(p, file_bits, Mode::Serial, 1);
    report.convergence = finite_p_convergence(serial_plan, demand, ladder).convergence;
  }
  json j = {{"params", jsonio::dump(p)},
            {"plan", jsonio::dump(plan)},
            {"schedule", jsonio::dump(schedule)},
            {"report", jsonio::dump(report)}};
  write_output(out_path, j.dump(2) + "\n");
  return report.all_pass() ? 0 : 1;
}

int cmd_figure(const std::string& preset, bool gnuplot, const std::string& out_path) {
  SweepSpec spec;
  std::string title;
  spec.base = SystemParams(2, 2, 2, Rational(0), Rational(1, 2));
  spec.axis = SweepAxis::Mu;
  spec.grid = SweepSpec::make_grid(Rational(0), Rational(1), Rational(1, 20));
  if (preset == "fig2b") {
    spec.modes = {Mode::Serial, Mode::Pipelined};
    title = "2x2 trade-off, r=1/2, serial and pipelined";
  } else if (preset == "fig7a") {
    spec.base.r = Rational(1, 4);
    spec.modes = {Mode::Serial};
    title = "2x2 trade-off, low fronthaul r=1/4";
  } else if (preset == "fig7b") {
    spec.base.r = Rational(3, 2);
    spec.modes = {Mode::Serial};
    title = "2x2 trade-off, high fronthaul r=3/2";
  } else if (preset == "fig9") {
    spec.modes = {Mode::Pipelined};
    title = "2x2 pipelined trade-off, r=1/2";
  } else {
    throw std::invalid_argument("unknown preset; choose fig2b, fig7a, fig7b or fig9");
  }
  const auto rows = run_sweep(spec);
  write_output(out_path, sweep_csv(rows));
  if (gnuplot) {
    const std::string data = out_path.empty() ? "sweep.csv" : out_path;
    const std::string script_path = (out_path.empty() ? preset : out_path) + ".gp";
    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set title '" << title << "'\n"
       << "set xlabel 'fractional cache size'\n"
       << "set ylabel 'normalized delivery time'\n"
       << "set key top right\n"
       << "plot \\\n";
    bool first = true;
    for (Mode mode : spec.modes) {
      const std::string m = to_string(mode);
      if (!first) gp << ", \\\n";
      gp << "  '" << data << "' skip 1 u 1:(strcol(6) eq '" << m << "' ? $2 : 1/0) w lp t '" << m
         << " lower'"
         << ", \\\n  '" << data << "' skip 1 u 1:(strcol(6) eq '" << m << "' ? $3 : 1/0) w lp t '" << m
         << " achievable'";
      first = false;
    }
    gp << "\n";
    std::ofstream script(script_path);
    script << gp.str();
    std::cerr << "wrote plot script " << script_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delivery-time trade-off engine for cloud- and cache-aided edge networks"};
  app.require_subcommand(1);

  ParamArgs ndt_args, regime_args, sweep_args, sim_args;
  std::string mode_text = "serial", format = "table", out_path;

  auto* ndt = app.add_subcommand("ndt", "lower bound, achievable value and optimality certificate");
  add_param_options(ndt, ndt_args);
  ndt->add_option("--mode", mode_text, "serial or pipelined");
  ndt->add_option("--format", format, "table or json");
  ndt->add_option("-o,--output", out_path, "write to file instead of stdout");

  auto* regimes = app.add_subcommand("regimes", "regime thresholds and classification");
  add_param_options(regimes, regime_args);
  regimes->add_option("--format", format, "table or json");
  regimes->add_option("-o,--output", out_path, "write to file instead of stdout");

  std::string axis = "mu", grid_list, grid_start = "0", grid_end = "1", grid_step = "1/20";
  std::string sweep_mode = "serial";
  auto* sweep = app.add_subcommand("sweep", "trade-off sweep as CSV");
  add_param_options(sweep, sweep_args);
  sweep->add_option("--axis", axis, "mu or r");
  sweep->add_option("--grid", grid_list, "explicit grid, comma-separated rationals");
  sweep->add_option("--grid-start", grid_start, "grid start");
  sweep->add_option("--grid-end", grid_end, "grid end");
  sweep->add_option("--grid-step", grid_step, "grid step");
  sweep->add_option("--mode", sweep_mode, "serial, pipelined or both");
  sweep->add_option("-o,--output", out_path, "write to file instead of stdout");

  GapGridSpec gap_spec;
  std::string gap_mode = "serial", gap_r_max = "4";
  auto* gap = app.add_subcommand("gap", "gap audit over a parameter grid");
  gap->add_option("--m-min", gap_spec.m_min, "smallest M");
  gap->add_option("--m-max", gap_spec.m_max, "largest M");
  gap->add_option("--k-min", gap_spec.k_min, "smallest K");
  gap->add_option("--k-max", gap_spec.k_max, "largest K");
  gap->add_option("--mu-points", gap_spec.mu_points, "mu grid points over [0,1]");
  gap->add_option("--r-points", gap_spec.r_points, "r grid points over (0,r-max]");
  gap->add_option("--r-max", gap_r_max, "largest fronthaul rate");
  gap->add_option("--mode", gap_mode, "serial, pipelined or both");
  gap->add_option("-o,--output", out_path, "write to file instead of stdout");

  long long file_bits = 0;
  std::string snr_text = "2^20", demand_text, ladder_text;
  bool pipelined = false;
  int blocks = 1;
  auto* simulate = app.add_subcommand("simulate", "materialize and audit a delivery schedule");
  add_param_options(simulate, sim_args);
  simulate->add_option("-L,--file-bits", file_bits, "file size in bits")->required();
  simulate->add_option("-P,--snr", snr_text, "SNR as a power of two, e.g. 2^20");
  simulate->add_option("-d,--demand", demand_text, "demand vector, e.g. 1,2")->required();
  simulate->add_flag("--pipelined", pipelined, "pipelined block-Markov delivery");
  simulate->add_option("--blocks", blocks, "number of blocks for pipelined delivery");
  simulate->add_option("--ladder", ladder_text, "convergence ladder 'lo:hi[:step]' in log2 SNR");
  simulate->add_option("-o,--output", out_path, "write to file instead of stdout");

  std::string preset;
  bool gnuplot = false;
  auto* figure = app.add_subcommand("figure", "bundled trade-off dataset presets");
  figure->add_option("preset", preset, "fig2b, fig7a, fig7b or fig9")->required();
  figure->add_flag("--gnuplot", gnuplot, "also emit a gnuplot script");
  figure->add_option("-o,--output", out_path, "write to file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ndt->parsed()) return cmd_ndt(ndt_args, mode_text, format, out_path);
    if (regimes->parsed()) return cmd_regimes(regime_args, format, out_path);
    if (sweep->parsed())
      return cmd_sweep(sweep_args, axis, grid_list, grid_start, grid_end, grid_step, sweep_mode, out_path);
    if (gap->parsed()) {
      gap_spec.r_max = parse_rational(gap_r_max);
      gap_spec.modes = parse_modes(gap_mode);
      return cmd_gap(gap_spec, out_path);
    }
    if (simulate->parsed())
      return cmd_simulate(sim_args, file_bits, snr_text, demand_text, pipelined, blocks, ladder_text,
                          out_path);
    if (figure->parsed()) return cmd_figure(preset, gnuplot, out_path);
  } catch (const fran::IndivisibleLengthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const fran::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fran::UndeliverableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fran::OutOfRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
