#ifndef FNLSLAB_CHECKPOINT_HPP
#define FNLSLAB_CHECKPOINT_HPP

#include <string>

#include "fnlslab/solver.hpp"

namespace fnls {

/// Binary checkpoint container (little-endian):
///   magic "FNLSTRJ1" (8 bytes), u32 version = 1,
///   u32 dim, u32 points, f64 half_extent, u64 snapshot count,
///   then per snapshot: f64 time followed by M^n (re, im) f64 pairs.
/// A single field uses the same layout with count = 1 and magic "FNLSFLD1".
void save_trajectory(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory(const std::string& path);

void save_field(const Field& f, const std::string& path);
Field load_field(const std::string& path);

}  // namespace fnls

#endif
