#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vmspod/experiments.hpp"

namespace vmspod::io {

/// Experiment record. File layout (INI):
///
///   [problem]        epsilon, b_x, b_y, g, T, front_width, solution (tanh-front | zero)
///   [discretization] nx, degree, dt
///   [pod]            inner_product (L2 | H1 | H1semi), rank_tolerance
///   [rom]            r, R, alpha (decimal or "auto")
///   [output]         directory, seed
enum class SolutionKind { TanhFront, Zero };

struct RunConfig {
  int nx = 50;
  int degree = 2;
  double dt = 2e-3;
  double T = 1.0;
  double epsilon = 1e-4;
  std::array<double, 2> b{0.5, 0.86602540378443864676};
  double g = 1.0;
  double front_width = 0.04;
  SolutionKind solution = SolutionKind::TanhFront;
  int r = 20;
  int R = 10;
  std::optional<double> alpha;  // empty means alpha*
  pod::InnerProduct inner_product = pod::InnerProduct::H1Full;
  double rank_tolerance = pod::kDefaultRankTolerance;
  std::filesystem::path output_dir = "vmspod_out";
  std::uint64_t seed = 20130101;

  /// Throws InvalidConfiguration naming the offending field.
  void validate() const;
  experiments::StudyConfig study_config() const;
  std::string alpha_text() const;
};

inline constexpr const char* kOutputDirEnv = "VMSPOD_OUTPUT_DIR";

RunConfig read_config_file(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);
std::string format_config(const RunConfig& config);
/// Applies $VMSPOD_OUTPUT_DIR if set.
void apply_environment(RunConfig& config);

}  // namespace vmspod::io
