#include "nseobs/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nseobs {
namespace {

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 4);
}

void write_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double read_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void save_nsef1(const VelocityField& v, const std::string& path) {
  std::ostringstream os(std::ios::binary);
  os.write("NSEF", 4);
  write_u32(os, 1);
  write_f64(os, v.grid().ell1());
  write_f64(os, v.grid().ell2());
  write_u32(os, static_cast<std::uint32_t>(v.grid().n1()));
  write_u32(os, static_cast<std::uint32_t>(v.grid().n2()));
  for (double x : v.u1().to_physical(1)) write_f64(os, x);
  for (double x : v.u2().to_physical(1)) write_f64(os, x);
  atomic_write(path, os.str());
}

VelocityField load_nsef1(const std::string& path, const std::optional<GridSpec>& expected_grid,
                         double check_state_tol) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open snapshot file: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "NSEF", 4) != 0)
    throw std::runtime_error("bad snapshot magic in " + path);
  std::uint32_t version = read_u32(is);
  if (version != 1) throw std::runtime_error("unsupported snapshot version in " + path);
  double ell1 = read_f64(is), ell2 = read_f64(is);
  std::uint32_t n1 = read_u32(is), n2 = read_u32(is);
  if (!is) throw std::runtime_error("truncated snapshot header in " + path);
  GridSpec grid = expected_grid
                      ? *expected_grid
                      : GridSpec(ell1, ell2, static_cast<int>(n1), static_cast<int>(n2));
  if (expected_grid &&
      (grid.ell1() != ell1 || grid.ell2() != ell2 || grid.n1() != static_cast<int>(n1) ||
       grid.n2() != static_cast<int>(n2)))
    throw std::runtime_error("snapshot grid mismatch in " + path);

  auto read_component = [&]() {
    std::vector<double> s(grid.size());
    for (auto& x : s) x = read_f64(is);
    if (!is) throw std::runtime_error("truncated snapshot data in " + path);
    for (double x : s)
      if (!std::isfinite(x)) throw std::runtime_error("non-finite sample in " + path);
    return ScalarField::from_physical(grid, s);
  };
  ScalarField u1 = read_component();
  ScalarField u2 = read_component();
  VelocityField v(std::move(u1), std::move(u2));
  if (check_state_tol >= 0.0) {
    double scale = std::max(v.max_abs_coeff(), 1e-300);
    if (v.mean_defect() > check_state_tol * scale)
      throw std::runtime_error("snapshot violates zero-mean invariant: " + path);
    double kscale = std::max({grid.kx(grid.n1() / 2 - 1), grid.ky(grid.n2() / 2 - 1), 1.0});
    if (v.divergence_defect() > check_state_tol * scale * kscale)
      throw std::runtime_error("snapshot violates divergence-free invariant: " + path);
  }
  return v;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
  std::ostringstream os;
  os << "t,l2,grad_l2,h1,lap_l2\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    os << format_double(rec.times[i]) << ',' << format_double(rec.l2[i]) << ','
       << format_double(rec.grad_l2[i]) << ',' << format_double(rec.h1[i]) << ','
       << format_double(rec.lap_l2[i]) << '\n';
  }
  return os.str();
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["config_digest"] = config_digest;
  j["seed"] = seed;
  j["code_version"] = code_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : metrics) m[k] = v;
  j["metrics"] = m;
  j["success"] = success;
  if (!failure_cause.empty()) j["failure_cause"] = failure_cause;
  return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const { atomic_write(path, to_json()); }

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace nseobs
