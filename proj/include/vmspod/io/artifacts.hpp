#pragma once

#include <filesystem>

#include "vmspod/io/config.hpp"
#include "vmspod/pod.hpp"
#include "vmspod/time_integrator.hpp"

namespace vmspod::io {

/// <dir>/states.bin, loads.bin, forcing_norms.bin, manifest.ini.
/// Difference quotients are recomputed from the states on load.
void save_dns(const std::filesystem::path& dir, const DnsRun& dns, const RunConfig& config,
              double average_error);
DnsRun load_dns(const std::filesystem::path& dir);

/// <dir>/modes.bin, eigenvalues.bin, mass.bin, stiffness.bin, h1_gram.bin,
/// transport.bin (d x d projections), manifest.ini.
void save_basis(const std::filesystem::path& dir, const pod::PodBasis& basis,
                const pod::ReducedMatrices& full, const std::string& space_tag);
pod::PodBasis load_basis(const std::filesystem::path& dir, std::string* space_tag = nullptr);

/// True when <dir>/manifest.ini exists and records the same discretization as `config`.
bool dns_matches(const std::filesystem::path& dir, const RunConfig& config);

}  // namespace vmspod::io
