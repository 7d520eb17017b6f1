#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <vector>

#include "vmspod/pod.hpp"
#include "vmspod/rom.hpp"
#include "vmspod/time_integrator.hpp"

namespace vmspod::experiments {

/// alpha~ = (h^{m+1} + sqrt(T_r)) / (2 h^m + sqrt(T_r) + sqrt(T_R)), T_k = sum_{j>k} lambda_j.
double alpha_tilde(double h, int m, const std::vector<double>& eigenvalues, int r, int R);
/// Clipped coefficient max(alpha~, h/2).
double alpha_star(double alpha_tilde, double h);

struct RunRecord {
  double h = 0.0;
  int m = 2;
  double dt = 0.0;
  int N = 0;
  int r = 0;
  int R = 0;
  double epsilon = 0.0;
};

/// Average L2 error of a reduced model and the computable parts of its bound:
/// e1 = ||M_r^{-1}||^{1/2} h^{m+1}, e2 = ||M_r^{-1}||^{1/2} sqrt(T_r), e3 = sqrt(alpha T_R).
struct ErrorReport {
  double e = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double alpha_used = 0.0;
  RunRecord config;
};

ErrorReport error_components(const RunRecord& config, double inv_mass_norm, double tail_r,
                             double tail_R, double alpha);

struct StudyConfig {
  int nx = 50;
  int degree = 2;
  ProblemSpec problem = steep_front_problem();
  pod::InnerProduct inner_product = pod::InnerProduct::H1Full;
  double rank_tolerance = pod::kDefaultRankTolerance;
};

struct RomResult {
  rom::RomTrajectory trajectory;
  ErrorReport report;
};

/// One DNS + POD pipeline, shared read-only by every reduced-model run built on it.
class Study {
 public:
  static Study run(const StudyConfig& config);
  /// Rebuilds a study from persisted DNS output and basis.
  static Study from_parts(const StudyConfig& config, DnsRun dns, pod::PodBasis basis);

  const StudyConfig& config() const { return config_; }
  const fem::FESpace& space() const { return *space_; }
  const fem::FemOperators& operators() const { return *ops_; }
  const DnsRun& dns() const { return *dns_; }
  const pod::PodBasis& basis() const { return *basis_; }
  const rom::RomContext& context() const { return *context_; }
  double dns_error() const { return dns_error_; }
  double h() const { return space_->mesh->h; }
  int rank() const { return basis_->rank(); }

  /// alpha* for the given truncation.
  double auto_alpha(int r, int R) const;
  RomResult run_rom(rom::ModelKind kind, int r, int R, double alpha) const;
  /// Error of an already computed trajectory (pure function of stored data).
  double average_error(const Matrix& coeffs) const;

  /// Stability checks accumulated over every run_rom call on this study (and its copies).
  struct StabilityTally {
    long long runs = 0;
    long long steps = 0;
    long long violations = 0;
  };
  StabilityTally rom_stability() const;

 private:
  Study() = default;
  void finish();

  StudyConfig config_;
  std::shared_ptr<const fem::FESpace> space_;
  std::shared_ptr<const fem::FemOperators> ops_;
  std::shared_ptr<const DnsRun> dns_;
  std::shared_ptr<const pod::PodBasis> basis_;
  std::shared_ptr<const rom::RomContext> context_;
  std::shared_ptr<const ErrorEvaluator::Reduced> reduced_error_;
  double dns_error_ = 0.0;
  struct Counters {
    std::atomic<long long> runs{0}, steps{0}, violations{0};
  };
  std::shared_ptr<Counters> counters_ = std::make_shared<Counters>();
};

struct PodgRow {
  int r = 0;
  double e = 0.0;
};
std::vector<PodgRow> run_table_podg(const Study& study, const std::vector<int>& r_values);

struct E3Row {
  int R = 0;
  double e3 = 0.0;
  double e = 0.0;
};
struct E3Study {
  std::vector<E3Row> rows;
  double slope = 0.0;
  double intercept = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double alpha = 0.0;
  int r = 0;
};

/// Ordinary least squares fit of log e against log e3; needs at least 3 rows.
void fit_e3_regression(E3Study& study);
E3Study run_e3_study(const Study& study, double alpha, const std::vector<int>& R_values, int r);
/// R values from `candidates` at which e3 exceeds both e1 and e2.
std::vector<int> e3_dominant_R(const Study& study, double alpha, int r,
                               const std::vector<int>& candidates);
/// e3 study over every R in [1, r) at which e3 dominates.
E3Study run_e3_protocol(const Study& study, double alpha, int r);

struct AlphaRow {
  int r = 0;
  int R = 0;
  double alpha_star = 0.0;
  double e_low = 0.0;   // 0.01 alpha*
  double e_star = 0.0;  // alpha*
  double e_high = 0.0;  // 100 alpha*
  double e_zero = 0.0;  // alpha = 0 control
  bool star_is_best = false;
};
/// R from 5 to r - 5 in steps of 5 (at least {r/2} when r < 10).
std::vector<int> default_R_sweep(int r);
std::vector<AlphaRow> run_alpha_sensitivity(const Study& study, const std::vector<int>& r_values);

struct EpsilonRow {
  double epsilon = 0.0;
  double dns = 0.0;
  double pod_g = 0.0;
  double alpha = 0.0;
  double vms_pod = 0.0;
};
/// Full pipeline per epsilon with everything else taken from `base`.
std::vector<EpsilonRow> run_epsilon_sweep(const StudyConfig& base,
                                          const std::vector<double>& eps_values, int r, int R);
/// Rows from studies that were already run, one per epsilon.
std::vector<EpsilonRow> epsilon_rows(const std::vector<const Study*>& studies, int r, int R);

}  // namespace vmspod::experiments
