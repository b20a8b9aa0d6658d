#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nseobs/field.hpp"
#include "nseobs/solver.hpp"

namespace nseobs {

/// "NSEF1" snapshot: magic NSEF, u32 version=1, f64 ell1, f64 ell2, u32 n1,
/// u32 n2, then two row-major n1 x n2 little-endian f64 physical sample
/// arrays (u1 then u2).
void save_nsef1(const VelocityField& v, const std::string& path);

/// Loads a snapshot, re-deriving coefficients from the stored samples. When
/// expected_grid is given the file header must match it. Checks that the
/// result is finite; state invariants (zero mean, div-free) are checked
/// against check_state_tol unless it is negative.
VelocityField load_nsef1(const std::string& path,
                         const std::optional<GridSpec>& expected_grid = std::nullopt,
                         double check_state_tol = -1.0);

/// Writes content to path atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

std::string trajectory_csv(const TrajectoryRecord& rec);

/// Canonical float formatting used in every CSV (17 significant digits).
std::string format_double(double x);

/// FNV-1a 64-bit digest, used for config fingerprints in manifests.
std::uint64_t fnv1a(const std::string& data);

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string code_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, double>> metrics;
  bool success = false;
  std::string failure_cause;

  std::string to_json() const;
  void write(const std::string& path) const;
};

std::string timestamp_utc();

}  // namespace nseobs
