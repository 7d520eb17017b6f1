#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vmspod::io {

/// Flat matrix file: 8-byte magic, u32 version, u64 rows, u64 cols, row-major
/// little-endian float64 payload, then a u64 FNV-1a checksum of every preceding byte.
inline constexpr char kMatrixMagic[8] = {'V', 'M', 'S', 'P', 'O', 'D', 'M', 'X'};
inline constexpr std::uint32_t kMatrixVersion = 1;

std::uint64_t fnv1a(const unsigned char* data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

std::vector<unsigned char> encode_matrix(const Eigen::MatrixXd& m);
Eigen::MatrixXd decode_matrix(const std::vector<unsigned char>& bytes, const std::string& origin);

/// Writes via a temporary file and rename.
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(const std::filesystem::path& path);

void write_bytes_atomic(const std::filesystem::path& path, const std::string& bytes);

/// key = value text file stored next to the binary archives.
using Manifest = std::map<std::string, std::string>;
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);
const std::string& manifest_value(const Manifest& manifest, const std::string& key,
                                  const std::filesystem::path& origin);

}  // namespace vmspod::io
