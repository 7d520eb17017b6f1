// vmspod: dns -> pod -> rom pipeline and the experiment tables.
//
//   vmspod dns [--config run.ini] [overrides]
//   vmspod pod ...
//   vmspod rom --model vms-pod ...
//   vmspod experiment table1|table2|table3|table4|e3-regression ...
//
// Artifacts go under <output>/dns, <output>/pod, <output>/rom/<model>_r<r>_R<R>,
// <output>/experiments.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "vmspod/error.hpp"
#include "vmspod/experiments.hpp"
#include "vmspod/io/archive.hpp"
#include "vmspod/io/artifacts.hpp"
#include "vmspod/io/config.hpp"
#include "vmspod/io/csv.hpp"
#include "vmspod/mesh.hpp"

using namespace vmspod;
namespace fs = std::filesystem;
namespace ex = experiments;

namespace {

struct Overrides {
  std::string config_file;
  std::optional<int> nx, degree, r, R;
  std::optional<double> dt, T, epsilon, b_x, b_y, g, front_width, rank_tolerance;
  std::optional<std::string> alpha, inner_product, solution, output;
  std::optional<std::uint64_t> seed;
};

void add_run_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_file, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("--nx", o.nx, "cells per side");
  app.add_option("--degree", o.degree, "finite element degree (1 or 2)");
  app.add_option("--dt", o.dt);
  app.add_option("--T", o.T, "final time");
  app.add_option("--epsilon", o.epsilon, "diffusion coefficient");
  app.add_option("--b-x", o.b_x);
  app.add_option("--b-y", o.b_y);
  app.add_option("--g", o.g, "reaction coefficient");
  app.add_option("--front-width", o.front_width);
  app.add_option("--solution", o.solution, "tanh-front | zero");
  app.add_option("--inner-product", o.inner_product, "L2 | H1 | H1semi");
  app.add_option("--rank-tolerance", o.rank_tolerance);
  app.add_option("-r,--r", o.r, "POD modes kept");
  app.add_option("-R,--R", o.R, "resolved modes in the VMS splitting");
  app.add_option("--alpha", o.alpha, "stabilization coefficient or \"auto\"");
  app.add_option("-o,--output", o.output, "output directory (overrides $VMSPOD_OUTPUT_DIR)");
  app.add_option("--seed", o.seed);
}

// file, then environment, then flags
io::RunConfig resolve(const Overrides& o, bool coarse_space = true) {
  io::RunConfig c = o.config_file.empty() ? io::RunConfig{} : io::read_config_file(o.config_file);
  io::apply_environment(c);
  const auto set = [](auto& field, const auto& flag) {
    if (flag) field = *flag;
  };
  set(c.nx, o.nx);
  set(c.degree, o.degree);
  set(c.dt, o.dt);
  set(c.T, o.T);
  set(c.epsilon, o.epsilon);
  set(c.b[0], o.b_x);
  set(c.b[1], o.b_y);
  set(c.g, o.g);
  set(c.front_width, o.front_width);
  set(c.rank_tolerance, o.rank_tolerance);
  set(c.r, o.r);
  set(c.R, o.R);
  set(c.seed, o.seed);
  if (o.output) c.output_dir = *o.output;
  if (o.inner_product) c.inner_product = pod::parse_inner_product(*o.inner_product);
  if (o.solution) {
    require(*o.solution == "tanh-front" || *o.solution == "zero", ErrorKind::InvalidConfiguration,
            "--solution must be tanh-front or zero, got " + *o.solution);
    c.solution = *o.solution == "zero" ? io::SolutionKind::Zero : io::SolutionKind::TanhFront;
  }
  if (o.alpha) {
    if (*o.alpha == "auto") {
      c.alpha.reset();
    } else {
      std::size_t used = 0;
      try {
        c.alpha = std::stod(*o.alpha, &used);
      } catch (const std::exception&) {
      }
      require(used == o.alpha->size() && used > 0, ErrorKind::InvalidConfiguration,
              "--alpha must be a number or \"auto\", got " + *o.alpha);
    }
  }
  if (!coarse_space) c.R = 0;  // POD-G has no resolved/unresolved split
  c.validate();
  return c;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

fs::path dns_dir(const io::RunConfig& c) { return c.output_dir / "dns"; }
fs::path pod_dir(const io::RunConfig& c) { return c.output_dir / "pod"; }

fem::FESpace space_of(const io::RunConfig& c) {
  return fem::build_fespace(fem::build_uniform_mesh(c.nx), c.degree);
}

// ties a basis to the exact snapshot bytes it was computed from
std::string states_fingerprint(const DnsRun& dns) {
  const auto bytes = io::encode_matrix(dns.snapshots.states);
  std::ostringstream s;
  s << std::hex << io::fnv1a(bytes.data(), bytes.size());
  return s.str();
}

pod::PodBasis compute_pod(const io::RunConfig& c, const DnsRun& dns) {
  const auto space = space_of(c);
  const auto ops = fem::FemOperators::assemble(space, c.study_config().problem.b);
  pod::PodBasis basis =
      pod::compute_basis(dns.snapshots, pod::build_correlation(dns.snapshots, c.inner_product, ops));
  io::save_basis(pod_dir(c), basis, pod::reduced_matrices(basis, basis.rank(), ops, c.g),
                 space_tag(space));
  io::write_manifest(pod_dir(c) / "source.ini", {{"states", states_fingerprint(dns)}});
  return basis;
}

bool pod_matches(const io::RunConfig& c, const DnsRun& dns) {
  const fs::path dir = pod_dir(c);
  if (!fs::exists(dir / "manifest.ini") || !fs::exists(dir / "source.ini")) return false;
  const auto man = io::read_manifest(dir / "manifest.ini");
  const auto src = io::read_manifest(dir / "source.ini");
  return man.count("inner_product") && man.at("inner_product") == pod::to_string(c.inner_product) &&
         src.count("states") && src.at("states") == states_fingerprint(dns);
}

DnsRun run_dns(const io::RunConfig& c, double* average_error) {
  const auto sc = c.study_config();
  const auto space = space_of(c);
  DnsRun dns = dns_solve(sc.problem, space);
  *average_error = average_l2_error(space, dns.snapshots, *sc.problem.exact);
  io::save_dns(dns_dir(c), dns, c, *average_error);
  return dns;
}

DnsRun stored_dns(const io::RunConfig& c) {
  require(fs::exists(dns_dir(c) / "manifest.ini"), ErrorKind::Io,
          "no snapshots in " + dns_dir(c).string() + "; run `vmspod dns` first");
  require(io::dns_matches(dns_dir(c), c), ErrorKind::MismatchedMesh,
          dns_dir(c).string() + " was written for a different mesh, degree or problem");
  return io::load_dns(dns_dir(c));
}

// Reuses matching artifacts; otherwise computes and persists them.
ex::Study obtain_study(const io::RunConfig& c, bool build_missing) {
  DnsRun dns;
  if (build_missing && !io::dns_matches(dns_dir(c), c)) {
    double err = 0.0;
    dns = run_dns(c, &err);
    std::cout << "dns: average error " << fmt(err) << "\n";
  } else {
    dns = stored_dns(c);
  }
  if (!pod_matches(c, dns)) {
    require(build_missing, ErrorKind::MismatchedMesh,
            pod_dir(c).string() + " does not belong to the stored snapshots; run `vmspod pod` first");
    pod::PodBasis basis = compute_pod(c, dns);
    return ex::Study::from_parts(c.study_config(), std::move(dns), std::move(basis));
  }
  std::string tag;
  pod::PodBasis basis = io::load_basis(pod_dir(c), &tag);
  require(tag == dns.snapshots.space_tag, ErrorKind::MismatchedMesh,
          "basis was computed on " + tag + ", snapshots on " + dns.snapshots.space_tag);
  return ex::Study::from_parts(c.study_config(), std::move(dns), std::move(basis));
}

void require_rank(int r, int d) {
  require(r <= d, ErrorKind::InvalidConfiguration,
          "rom.r = " + std::to_string(r) + " exceeds the rank of the snapshot set (d = " +
              std::to_string(d) + ")");
}

int cmd_dns(const io::RunConfig& c) {
  double err = 0.0;
  const DnsRun dns = run_dns(c, &err);
  std::cout << "unknowns " << dns.snapshots.states.rows() << ", steps " << dns.snapshots.num_steps()
            << "\n";
  if (dns.stability.violations > 0)
    std::cout << "warning: stability bound violated at " << dns.stability.violations << " steps\n";
  std::cout << "average DNS error " << fmt(err) << "\n";
  std::cout << "wrote " << dns_dir(c).string() << "\n";
  return 0;
}

int cmd_pod(const io::RunConfig& c) {
  const DnsRun dns = stored_dns(c);
  const pod::PodBasis basis = compute_pod(c, dns);
  std::cout << "d = " << basis.rank() << "\n";
  std::cout << "wrote " << pod_dir(c).string() << "\n";
  require_rank(c.r, basis.rank());
  std::cout << "tail sum T_r (r=" << c.r << ") " << fmt(pod::tail_sum(basis, c.r)) << "\n";
  std::cout << "tail sum T_R (R=" << c.R << ") " << fmt(pod::tail_sum(basis, c.R)) << "\n";
  return 0;
}

const std::vector<std::string> kReportHeader{"model", "r", "R", "alpha", "e", "e1", "e2", "e3",
                                             "h", "m", "dt", "N", "epsilon"};

io::CsvRow report_row(rom::ModelKind kind, const ex::ErrorReport& rep) {
  const auto& k = rep.config;
  return {std::string(rom::to_string(kind)), static_cast<long long>(k.r), static_cast<long long>(k.R),
          rep.alpha_used, rep.e, rep.e1, rep.e2, rep.e3, k.h, static_cast<long long>(k.m), k.dt,
          static_cast<long long>(k.N), k.epsilon};
}

int cmd_rom(const io::RunConfig& c, const std::string& model) {
  const rom::ModelKind kind = rom::parse_model_kind(model);
  const ex::Study s = obtain_study(c, false);
  require_rank(c.r, s.rank());
  int R = c.R;
  double alpha = 0.0;
  if (kind == rom::ModelKind::PodG) {
    R = 0;
  } else {
    alpha = c.alpha ? *c.alpha : s.auto_alpha(c.r, R);
  }
  const ex::RomResult res = s.run_rom(kind, c.r, R, alpha);
  const fs::path dir = c.output_dir / "rom" / (model + "_r" + std::to_string(c.r) + "_R" + std::to_string(R));
  io::write_matrix(dir / "trajectory.bin", res.trajectory.coeffs);
  io::write_csv(dir / "report.csv", kReportHeader, {report_row(kind, res.report)});
  if (res.trajectory.stability.violations > 0)
    std::cout << "warning: stability bound violated at " << res.trajectory.stability.violations
              << " steps\n";
  std::cout << model << " r=" << c.r << " R=" << R << " alpha " << fmt(alpha) << "\n";
  std::cout << "average error " << fmt(res.report.e) << " (e1 " << fmt(res.report.e1) << ", e2 "
            << fmt(res.report.e2) << ", e3 " << fmt(res.report.e3) << ")\n";
  std::cout << "wrote " << dir.string() << "\n";
  return 0;
}

std::vector<int> ranks_up_to(const std::vector<int>& wanted, int d) {
  std::vector<int> out;
  for (int r : wanted)
    if (r <= d) out.push_back(r);
  require(!out.empty(), ErrorKind::InvalidConfiguration,
          "none of the requested r values fits the rank d = " + std::to_string(d));
  return out;
}

int cmd_experiment(const io::RunConfig& c, const std::string& name, std::vector<int> r_values,
                   std::vector<double> eps_values) {
  const fs::path dir = c.output_dir / "experiments";
  if (name == "table4") {
    if (eps_values.empty()) eps_values = {1e-2, 1e-4, 1e-6};
    std::vector<io::CsvRow> rows;
    for (const auto& row : ex::run_epsilon_sweep(c.study_config(), eps_values, c.r, c.R)) {
      rows.push_back({row.epsilon, row.dns, row.pod_g, row.alpha, row.vms_pod});
      std::cout << "epsilon " << fmt(row.epsilon) << ": dns " << fmt(row.dns) << ", pod-g "
                << fmt(row.pod_g) << ", vms-pod " << fmt(row.vms_pod) << " (alpha "
                << fmt(row.alpha) << ")\n";
    }
    io::write_csv(dir / "table4.csv", {"epsilon", "dns", "pod_g", "alpha", "vms_pod"}, rows);
    std::cout << "wrote " << (dir / "table4.csv").string() << "\n";
    return 0;
  }

  const ex::Study s = obtain_study(c, true);
  const int d = s.rank();
  std::cout << "d = " << d << "\n";
  if (name == "table1") {
    if (r_values.empty()) r_values = {20, 40, 60, 80};
    std::vector<io::CsvRow> rows;
    for (const auto& row : ex::run_table_podg(s, ranks_up_to(r_values, d))) {
      rows.push_back({static_cast<long long>(row.r), row.e});
      std::cout << "r=" << row.r << " e " << fmt(row.e) << "\n";
    }
    io::write_csv(dir / "table1.csv", {"r", "e"}, rows);
    std::cout << "wrote " << (dir / "table1.csv").string() << "\n";
  } else if (name == "table2" || name == "e3-regression") {
    const int r = r_values.empty() ? std::min(60, d - 5) : r_values.front();
    require_rank(r, d);
    const double alpha = c.alpha ? *c.alpha : s.h() / 2;
    const ex::E3Study st = ex::run_e3_protocol(s, alpha, r);
    std::vector<io::CsvRow> rows;
    std::ostringstream plot;
    plot << std::setprecision(17);
    for (const auto& row : st.rows) {
      rows.push_back({static_cast<long long>(row.R), row.e3, row.e});
      plot << std::log10(row.e3) << " " << std::log10(row.e) << "\n";
      std::cout << "R=" << row.R << " e3 " << fmt(row.e3) << " e " << fmt(row.e) << "\n";
    }
    std::cout << "r=" << r << " alpha " << fmt(alpha) << ", e1 " << fmt(st.e1) << ", e2 "
              << fmt(st.e2) << "\n";
    io::write_csv(dir / "table2.csv", {"R", "e3", "e"}, rows);
    std::cout << "wrote " << (dir / "table2.csv").string() << "\n";
    if (name == "e3-regression") {
      fs::create_directories(dir);
      std::ofstream(dir / "e3_regression.dat") << "# log10(e3) log10(e)\n" << plot.str();
      std::cout << "slope " << fmt(st.slope) << "\n";
      std::cout << "wrote " << (dir / "e3_regression.dat").string() << "\n";
    }
  } else if (name == "table3") {
    if (r_values.empty()) r_values = {10, 20};
    std::vector<io::CsvRow> rows;
    int best = 0;
    const auto table = ex::run_alpha_sensitivity(s, ranks_up_to(r_values, d));
    for (const auto& row : table) {
      rows.push_back({static_cast<long long>(row.r), static_cast<long long>(row.R), row.alpha_star,
                      row.e_low, row.e_star, row.e_high, row.e_zero,
                      static_cast<long long>(row.star_is_best)});
      best += row.star_is_best;
      std::cout << "r=" << row.r << " R=" << row.R << " alpha* " << fmt(row.alpha_star) << ": "
                << fmt(row.e_low) << " / " << fmt(row.e_star) << " / " << fmt(row.e_high)
                << (row.star_is_best ? "  alpha* best" : "") << "\n";
    }
    io::write_csv(dir / "table3.csv",
                  {"r", "R", "alpha_star", "e_0.01alpha_star", "e_alpha_star", "e_100alpha_star",
                   "e_alpha_0", "alpha_star_best"},
                  rows);
    std::cout << "alpha* best in " << best << " of " << table.size() << " rows\n";
    std::cout << "wrote " << (dir / "table3.csv").string() << "\n";
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown experiment " + name);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VMS-POD reduced-order models for 2D convection-diffusion"};
  app.require_subcommand(1);

  Overrides dns_o, pod_o, rom_o, exp_o;
  auto* dns = app.add_subcommand("dns", "finite element run; writes snapshots and load vectors");
  add_run_options(*dns, dns_o);
  auto* pod = app.add_subcommand("pod", "POD basis from stored snapshots");
  add_run_options(*pod, pod_o);
  auto* rom = app.add_subcommand("rom", "reduced model run from the stored basis");
  add_run_options(*rom, rom_o);
  std::string model = "vms-pod";
  rom->add_option("--model", model)->check(CLI::IsMember({"pod-g", "vms-pod"}));
  auto* exp = app.add_subcommand("experiment", "error tables and the e3 regression");
  add_run_options(*exp, exp_o);
  std::string name;
  std::vector<int> r_values;
  std::vector<double> eps_values;
  exp->add_option("name", name)
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "table4", "e3-regression"}));
  exp->add_option("--r-values", r_values, "r list (table1, table3) or r (table2)")->delimiter(',');
  exp->add_option("--eps-values", eps_values, "epsilon list (table4)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (dns->parsed()) return cmd_dns(resolve(dns_o));
    if (pod->parsed()) return cmd_pod(resolve(pod_o));
    if (rom->parsed()) return cmd_rom(resolve(rom_o, model == "vms-pod"), model);
    return cmd_experiment(resolve(exp_o), name, r_values, eps_values);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
