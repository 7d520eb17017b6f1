#include "vmspod/io/artifacts.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "vmspod/error.hpp"
#include "vmspod/io/archive.hpp"

namespace vmspod::io {

namespace {

std::string exact_text(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

Matrix row_matrix(const std::vector<double>& v) {
  Matrix m(1, static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m(0, static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

std::string solution_text(const RunConfig& config) {
  return config.solution == SolutionKind::Zero ? "zero" : "tanh-front";
}

std::vector<double> row_values(const Matrix& m, const std::string& origin) {
  require(m.rows() == 1, ErrorKind::CorruptArchive, origin + ": expected a single row");
  return {m.data(), m.data() + m.size()};
}

}  // namespace

void save_dns(const std::filesystem::path& dir, const DnsRun& dns, const RunConfig& config,
              double average_error) {
  write_matrix(dir / "states.bin", dns.snapshots.states);
  write_matrix(dir / "loads.bin", dns.loads.loads);
  write_matrix(dir / "forcing_norms.bin", row_matrix(dns.loads.forcing_norms));
  write_manifest(dir / "manifest.ini",
                 {{"space", dns.snapshots.space_tag},
                  {"dt", exact_text(dns.snapshots.dt)},
                  {"steps", std::to_string(dns.snapshots.num_steps())},
                  {"epsilon", exact_text(config.epsilon)},
                  {"g", exact_text(config.g)},
                  {"b_x", exact_text(config.b[0])},
                  {"b_y", exact_text(config.b[1])},
                  {"front_width", exact_text(config.front_width)},
                  {"solution", solution_text(config)},
                  {"average_error", exact_text(average_error)},
                  {"stability_violations", std::to_string(dns.stability.violations)}});
}

DnsRun load_dns(const std::filesystem::path& dir) {
  const Manifest man = read_manifest(dir / "manifest.ini");
  DnsRun dns;
  dns.snapshots.space_tag = manifest_value(man, "space", dir);
  dns.snapshots.dt = std::stod(manifest_value(man, "dt", dir));
  dns.snapshots.states = read_matrix(dir / "states.bin");
  dns.snapshots.compute_diff_quotients();
  dns.loads.loads = read_matrix(dir / "loads.bin");
  dns.loads.forcing_norms = row_values(read_matrix(dir / "forcing_norms.bin"),
                                       (dir / "forcing_norms.bin").string());
  const int steps = std::stoi(manifest_value(man, "steps", dir));
  require(dns.snapshots.num_steps() == steps && dns.loads.loads.cols() == steps + 1 &&
              dns.loads.loads.rows() == dns.snapshots.states.rows() &&
              static_cast<int>(dns.loads.forcing_norms.size()) == steps + 1,
          ErrorKind::CorruptArchive, dir.string() + ": archive dimensions are inconsistent");
  return dns;
}

bool dns_matches(const std::filesystem::path& dir, const RunConfig& config) {
  if (!std::filesystem::exists(dir / "manifest.ini")) return false;
  const Manifest man = read_manifest(dir / "manifest.ini");
  const auto same = [&man](const char* key, const std::string& expected) {
    const auto it = man.find(key);
    return it != man.end() && it->second == expected;
  };
  const auto space = fem::build_fespace(fem::build_uniform_mesh(config.nx), config.degree);
  return same("space", space_tag(space)) && same("dt", exact_text(config.dt)) &&
         same("epsilon", exact_text(config.epsilon)) && same("g", exact_text(config.g)) &&
         same("b_x", exact_text(config.b[0])) && same("b_y", exact_text(config.b[1])) &&
         same("front_width", exact_text(config.front_width)) &&
         same("solution", solution_text(config)) &&
         same("steps", std::to_string(static_cast<int>(std::round(config.T / config.dt))));
}

void save_basis(const std::filesystem::path& dir, const pod::PodBasis& basis,
                const pod::ReducedMatrices& full, const std::string& tag) {
  write_matrix(dir / "modes.bin", basis.modes);
  write_matrix(dir / "eigenvalues.bin", row_matrix(basis.eigenvalues));
  write_matrix(dir / "mass.bin", full.mass);
  write_matrix(dir / "stiffness.bin", full.stiffness);
  write_matrix(dir / "h1_gram.bin", full.h1_gram);
  write_matrix(dir / "transport.bin", full.transport);
  write_manifest(dir / "manifest.ini",
                 {{"space", tag},
                  {"inner_product", std::string(pod::to_string(basis.kind))},
                  {"rank", std::to_string(basis.rank())},
                  {"snapshot_count", std::to_string(basis.source_snapshot_count)},
                  {"discarded_energy", exact_text(basis.discarded_energy)}});
}

pod::PodBasis load_basis(const std::filesystem::path& dir, std::string* tag) {
  const Manifest man = read_manifest(dir / "manifest.ini");
  pod::PodBasis basis;
  basis.kind = pod::parse_inner_product(manifest_value(man, "inner_product", dir));
  basis.source_snapshot_count = std::stoi(manifest_value(man, "snapshot_count", dir));
  basis.discarded_energy = std::stod(manifest_value(man, "discarded_energy", dir));
  basis.modes = read_matrix(dir / "modes.bin");
  basis.eigenvalues =
      row_values(read_matrix(dir / "eigenvalues.bin"), (dir / "eigenvalues.bin").string());
  for (std::size_t i = 1; i < basis.eigenvalues.size(); ++i) {
    require(basis.eigenvalues[i] <= basis.eigenvalues[i - 1], ErrorKind::CorruptArchive,
            dir.string() + ": eigenvalues are not sorted in descending order");
  }
  require(basis.rank() == std::stoi(manifest_value(man, "rank", dir)) &&
              basis.modes.cols() == basis.rank(),
          ErrorKind::CorruptArchive, dir.string() + ": rank does not match the stored modes");
  if (tag != nullptr) *tag = manifest_value(man, "space", dir);
  return basis;
}

}  // namespace vmspod::io
