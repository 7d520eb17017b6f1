#include "vmspod/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "vmspod/error.hpp"

namespace vmspod::experiments {

namespace {

double tail(const std::vector<double>& eigenvalues, int k) {
  double sum = 0.0;
  for (auto j = static_cast<int>(eigenvalues.size()) - 1; j >= k; --j)
    sum += eigenvalues[static_cast<std::size_t>(j)];
  return sum;
}

/// Runs fn(i) for i in [0, count); cells are independent and results land in
/// caller-owned slots, so the output order never depends on scheduling.
template <class Fn>
void for_each_cell(int count, Fn&& fn) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

double alpha_tilde(double h, int m, const std::vector<double>& eigenvalues, int r, int R) {
  const int d = static_cast<int>(eigenvalues.size());
  require(R >= 0 && R < r && r <= d, ErrorKind::InvalidConfiguration,
          "alpha_tilde: need 0 <= R < r <= d, got R = " + std::to_string(R) +
              ", r = " + std::to_string(r) + ", d = " + std::to_string(d));
  const double sqrt_tr = std::sqrt(tail(eigenvalues, r));
  const double sqrt_tR = std::sqrt(tail(eigenvalues, R));
  const double numerator = std::pow(h, m + 1) + sqrt_tr;
  const double denominator = 2.0 * std::pow(h, m) + sqrt_tr + sqrt_tR;
  require(denominator > 1e-300, ErrorKind::InvalidConfiguration,
          "alpha_tilde: denominator underflow");
  return numerator / denominator;
}

double alpha_star(double alpha_tilde, double h) {
  require(alpha_tilde > 0.0 && h > 0.0, ErrorKind::InvalidArgument,
          "alpha_star: inputs must be positive");
  return std::max(alpha_tilde, 0.5 * h);
}

ErrorReport error_components(const RunRecord& config, double inv_mass_norm, double tail_r,
                             double tail_R, double alpha) {
  ErrorReport rep;
  rep.config = config;
  rep.alpha_used = alpha;
  const double s = std::sqrt(inv_mass_norm);
  rep.e1 = s * std::pow(config.h, config.m + 1);
  rep.e2 = s * std::sqrt(tail_r);
  rep.e3 = std::sqrt(alpha) * std::sqrt(tail_R);
  return rep;
}

Study Study::run(const StudyConfig& config) {
  config.problem.validate();
  auto space = std::make_shared<const fem::FESpace>(
      fem::build_fespace(fem::build_uniform_mesh(config.nx), config.degree));
  auto ops = std::make_shared<const fem::FemOperators>(
      fem::FemOperators::assemble(*space, config.problem.b));
  DnsRun dns = dns_solve(config.problem, *space, *ops, LoadHistory::compute(*space, config.problem));
  const pod::Correlation corr = pod::build_correlation(dns.snapshots, config.inner_product, *ops);
  pod::PodBasis basis = pod::compute_basis(dns.snapshots, corr, config.rank_tolerance);

  Study s;
  s.config_ = config;
  s.space_ = std::move(space);
  s.ops_ = std::move(ops);
  s.dns_ = std::make_shared<const DnsRun>(std::move(dns));
  s.basis_ = std::make_shared<const pod::PodBasis>(std::move(basis));
  s.finish();
  return s;
}

Study Study::from_parts(const StudyConfig& config, DnsRun dns, pod::PodBasis basis) {
  config.problem.validate();
  Study s;
  s.config_ = config;
  s.space_ = std::make_shared<const fem::FESpace>(
      fem::build_fespace(fem::build_uniform_mesh(config.nx), config.degree));
  require(dns.snapshots.space_tag == space_tag(*s.space_), ErrorKind::MismatchedMesh,
          "snapshots were computed on " + dns.snapshots.space_tag + ", configuration gives " +
              space_tag(*s.space_));
  s.ops_ = std::make_shared<const fem::FemOperators>(
      fem::FemOperators::assemble(*s.space_, config.problem.b));
  s.dns_ = std::make_shared<const DnsRun>(std::move(dns));
  s.basis_ = std::make_shared<const pod::PodBasis>(std::move(basis));
  s.finish();
  return s;
}

void Study::finish() {
  const ErrorEvaluator evaluator(*space_, config_.problem, ops_->mass);
  dns_error_ = evaluator.average_error(dns_->snapshots.states);
  reduced_error_ = std::make_shared<const ErrorEvaluator::Reduced>(evaluator.reduce(basis_->modes));
  context_ = std::make_shared<const rom::RomContext>(rom::RomContext::build(
      *basis_, *ops_, dns_->loads, dns_->snapshots.states.col(0), config_.problem));
}

double Study::auto_alpha(int r, int R) const {
  return alpha_star(alpha_tilde(h(), config_.degree, basis_->eigenvalues, r, R), h());
}

double Study::average_error(const Matrix& coeffs) const {
  return reduced_error_->truncate(static_cast<int>(coeffs.rows())).average_error(coeffs);
}

Study::StabilityTally Study::rom_stability() const {
  return {counters_->runs.load(), counters_->steps.load(), counters_->violations.load()};
}

RomResult Study::run_rom(rom::ModelKind kind, int r, int R, double alpha) const {
  const rom::RomOperators ops = rom::build_rom_operators(*context_, kind, r, R, alpha);
  RomResult res;
  res.trajectory = rom::rom_solve(ops, config_.problem.dt, config_.problem.num_steps());
  counters_->runs += 1;
  counters_->steps += res.trajectory.stability.steps_checked;
  counters_->violations += res.trajectory.stability.violations;

  RunRecord rec;
  rec.h = h();
  rec.m = config_.degree;
  rec.dt = config_.problem.dt;
  rec.N = config_.problem.num_steps();
  rec.r = r;
  rec.R = kind == rom::ModelKind::VmsPod ? R : r;
  rec.epsilon = config_.problem.epsilon;
  const double used_alpha = kind == rom::ModelKind::VmsPod ? alpha : 0.0;
  res.report = error_components(rec, ops.reduced.inv_mass_norm, pod::tail_sum(*basis_, r),
                                pod::tail_sum(*basis_, rec.R), used_alpha);
  res.report.e = average_error(res.trajectory.coeffs);
  return res;
}

std::vector<PodgRow> run_table_podg(const Study& study, const std::vector<int>& r_values) {
  std::vector<PodgRow> rows(r_values.size());
  for_each_cell(static_cast<int>(r_values.size()), [&](int i) {
    const int r = r_values[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(i)] = {r, study.run_rom(rom::ModelKind::PodG, r, r, 0.0).report.e};
  });
  return rows;
}

void fit_e3_regression(E3Study& s) {
  require(s.rows.size() >= 3, ErrorKind::InvalidConfiguration,
          "e3 regression needs at least 3 points, got " + std::to_string(s.rows.size()));
  const auto n = static_cast<double>(s.rows.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& row : s.rows) {
    const double x = std::log(row.e3);
    const double y = std::log(row.e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  require(std::abs(denom) > 1e-14 * std::max(1.0, n * sxx), ErrorKind::InvalidConfiguration,
          "e3 regression: all e3 values coincide");
  s.slope = (n * sxy - sx * sy) / denom;
  s.intercept = (sy - s.slope * sx) / n;
}

E3Study run_e3_study(const Study& study, double alpha, const std::vector<int>& R_values, int r) {
  require(R_values.size() >= 3, ErrorKind::InvalidConfiguration,
          "e3 study needs at least 3 values of R");
  E3Study out;
  out.alpha = alpha;
  out.r = r;
  out.rows.resize(R_values.size());
  std::vector<ErrorReport> reports(R_values.size());
  for_each_cell(static_cast<int>(R_values.size()), [&](int i) {
    const int R = R_values[static_cast<std::size_t>(i)];
    const ErrorReport rep = study.run_rom(rom::ModelKind::VmsPod, r, R, alpha).report;
    out.rows[static_cast<std::size_t>(i)] = {R, rep.e3, rep.e};
    reports[static_cast<std::size_t>(i)] = rep;
  });
  out.e1 = reports.front().e1;
  out.e2 = reports.front().e2;
  fit_e3_regression(out);
  return out;
}

std::vector<int> e3_dominant_R(const Study& study, double alpha, int r,
                               const std::vector<int>& candidates) {
  const auto ctx_r = pod::reduced_matrices_from_blocks(study.context().mass, study.context().stiffness,
                                                       study.context().transport, r);
  RunRecord rec;
  rec.h = study.h();
  rec.m = study.config().degree;
  std::vector<int> out;
  for (int R : candidates) {
    if (R < 0 || R >= r) continue;
    const ErrorReport rep = error_components(rec, ctx_r.inv_mass_norm, pod::tail_sum(study.basis(), r),
                                             pod::tail_sum(study.basis(), R), alpha);
    if (rep.e3 > std::max(rep.e1, rep.e2)) out.push_back(R);
  }
  return out;
}

E3Study run_e3_protocol(const Study& study, double alpha, int r) {
  std::vector<int> candidates(static_cast<std::size_t>(std::max(r - 1, 0)));
  std::iota(candidates.begin(), candidates.end(), 1);
  return run_e3_study(study, alpha, e3_dominant_R(study, alpha, r, candidates), r);
}

std::vector<int> default_R_sweep(int r) {
  std::vector<int> values;
  for (int R = 5; R <= r - 5; R += 5) values.push_back(R);
  if (values.empty() && r >= 2) values.push_back(r / 2);
  return values;
}

std::vector<AlphaRow> run_alpha_sensitivity(const Study& study, const std::vector<int>& r_values) {
  std::vector<AlphaRow> rows;
  for (int r : r_values)
    for (int R : default_R_sweep(r)) rows.push_back({r, R});
  for_each_cell(static_cast<int>(rows.size()), [&](int i) {
    AlphaRow& row = rows[static_cast<std::size_t>(i)];
    row.alpha_star = study.auto_alpha(row.r, row.R);
    const auto e = [&](double alpha) {
      return study.run_rom(rom::ModelKind::VmsPod, row.r, row.R, alpha).report.e;
    };
    row.e_low = e(0.01 * row.alpha_star);
    row.e_star = e(row.alpha_star);
    row.e_high = e(100.0 * row.alpha_star);
    row.e_zero = e(0.0);
    row.star_is_best = row.e_star <= row.e_low && row.e_star <= row.e_high;
  });
  return rows;
}

std::vector<EpsilonRow> epsilon_rows(const std::vector<const Study*>& studies, int r, int R) {
  std::vector<EpsilonRow> rows(studies.size());
  for_each_cell(static_cast<int>(studies.size()), [&](int i) {
    const Study& s = *studies[static_cast<std::size_t>(i)];
    EpsilonRow& row = rows[static_cast<std::size_t>(i)];
    row.epsilon = s.config().problem.epsilon;
    row.dns = s.dns_error();
    row.pod_g = s.run_rom(rom::ModelKind::PodG, r, r, 0.0).report.e;
    row.alpha = s.auto_alpha(r, R);
    row.vms_pod = s.run_rom(rom::ModelKind::VmsPod, r, R, row.alpha).report.e;
  });
  return rows;
}

std::vector<EpsilonRow> run_epsilon_sweep(const StudyConfig& base,
                                          const std::vector<double>& eps_values, int r, int R) {
  std::vector<EpsilonRow> rows;
  for (double eps : eps_values) {
    StudyConfig cfg = base;
    cfg.problem.epsilon = eps;
    // one study alive at a time keeps peak memory at a single DNS
    const Study study = Study::run(cfg);
    rows.push_back(epsilon_rows({&study}, r, R).front());
  }
  return rows;
}

}  // namespace vmspod::experiments
