#include "vmspod/io/archive.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "vmspod/error.hpp"

namespace vmspod::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "matrix archives assume a little-endian host");

constexpr std::size_t kHeaderSize = 8 + 4 + 8 + 8;

template <class T>
void put(std::vector<unsigned char>& out, T value) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

template <class T>
T get(const std::vector<unsigned char>& in, std::size_t offset) {
  T value;
  std::memcpy(&value, in.data() + offset, sizeof(T));
  return value;
}

}  // namespace

std::uint64_t fnv1a(const unsigned char* data, std::size_t size, std::uint64_t seed) {
  std::uint64_t hash = seed;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= data[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::vector<unsigned char> encode_matrix(const Eigen::MatrixXd& m) {
  std::vector<unsigned char> out;
  out.reserve(kHeaderSize + static_cast<std::size_t>(m.size()) * 8 + 8);
  for (char c : kMatrixMagic) out.push_back(static_cast<unsigned char>(c));
  put<std::uint32_t>(out, kMatrixVersion);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) put<double>(out, m(i, j));
  put<std::uint64_t>(out, fnv1a(out.data(), out.size()));
  return out;
}

Eigen::MatrixXd decode_matrix(const std::vector<unsigned char>& bytes, const std::string& origin) {
  require(bytes.size() >= kHeaderSize + 8, ErrorKind::CorruptArchive, origin + ": truncated header");
  require(std::memcmp(bytes.data(), kMatrixMagic, 8) == 0, ErrorKind::CorruptArchive,
          origin + ": bad magic");
  const auto version = get<std::uint32_t>(bytes, 8);
  require(version == kMatrixVersion, ErrorKind::CorruptArchive,
          origin + ": unsupported format version " + std::to_string(version));
  const auto rows = get<std::uint64_t>(bytes, 12);
  const auto cols = get<std::uint64_t>(bytes, 20);
  require(cols == 0 || rows <= (bytes.size() / 8) / cols, ErrorKind::CorruptArchive,
          origin + ": dimensions exceed file size");
  const std::size_t payload = static_cast<std::size_t>(rows * cols) * 8;
  require(bytes.size() == kHeaderSize + payload + 8, ErrorKind::CorruptArchive,
          origin + ": size does not match dimensions");
  const auto stored = get<std::uint64_t>(bytes, kHeaderSize + payload);
  require(stored == fnv1a(bytes.data(), kHeaderSize + payload), ErrorKind::CorruptArchive,
          origin + ": checksum mismatch");

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t offset = kHeaderSize;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j, offset += 8) m(i, j) = get<double>(bytes, offset);
  return m;
}

void write_bytes_atomic(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    require(static_cast<bool>(out), ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  require(!ec, ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  const auto bytes = encode_matrix(m);
  write_bytes_atomic(path, std::string(bytes.begin(), bytes.end()));
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return decode_matrix(bytes, path.string());
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  std::ostringstream out;
  for (const auto& [key, value] : manifest) out << key << " = " << value << '\n';
  write_bytes_atomic(path, out.str());
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  Manifest m;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    m[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return m;
}

const std::string& manifest_value(const Manifest& manifest, const std::string& key,
                                  const std::filesystem::path& origin) {
  const auto it = manifest.find(key);
  require(it != manifest.end(), ErrorKind::CorruptArchive,
          origin.string() + ": missing key '" + key + "'");
  return it->second;
}

}  // namespace vmspod::io
