#pragma once

#include <vector>

#include "nanonmr/types.hpp"

namespace nanonmr {

struct VolumeGridSpec {
  double voxel = 0.1e-9;  // voxel edge, m; must be <= depth/10
  /// Half-width of the integration region in x and y; 0 means 15*depth.
  double lateral_halfwidth = 0.0;
  /// Depth of the integration region below the surface; 0 means 15*depth.
  double depth_extent = 0.0;
  /// Half-width of the stored voxel block kept for export; 0 means 2.5*depth.
  double store_halfwidth = 0.0;
  /// Amplitude fraction (of the total RMS field) defining the detection box.
  double target_fraction = 0.70;
};

/// Voxel block retained for plotting: x, y in [-halfwidth, halfwidth),
/// z in [0, halfwidth), centers on a regular lattice.
struct StoredVoxelGrid {
  double voxel = 0.0;
  int nx = 0, ny = 0, nz = 0;
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;  // center of voxel (0,0,0)
  std::vector<double> weights;          // nx*ny*nz, T^2 per voxel

  double& at(int ix, int iy, int iz) {
    return weights[(static_cast<std::size_t>(iz) * ny + iy) * nx + ix];
  }
  double at(int ix, int iy, int iz) const {
    return weights[(static_cast<std::size_t>(iz) * ny + iy) * nx + ix];
  }
};

/// Map of per-voxel contributions to the detected RMS field variance.
/// Each voxel's weight is the variance of the Larmor-precessing part of
/// the dipolar field its spins project on the sensor axis; summed over
/// the half-space this reproduces the analytic layer B_RMS^2.
struct VolumeMap {
  StoredVoxelGrid grid;
  double total_weight = 0.0;    // T^2, integrated over the full region
  double analytic_brms2 = 0.0;  // semi-infinite layer closed form, T^2
  /// Cumulative enclosed weight fraction for cubes centered on the
  /// sensor's surface projection, indexed by cube edge.
  std::vector<double> box_edges;        // m
  std::vector<double> weight_fraction;  // dimensionless, nondecreasing
  /// Smallest cube edge whose enclosed amplitude fraction
  /// sqrt(weight fraction) reaches target_fraction.
  double box_edge = 0.0;
  double spin_count = 0.0;  // nuclei inside that cube (sample side)
  double equivalent_polarized = 0.0;  // sqrt(spin_count)
  double target_fraction = 0.70;
  /// Set when the grid total misses the analytic value by more than 2%.
  bool resolution_warning = false;
};

/// Integrates the per-spin signal variance over the sample half-space on
/// a voxel lattice. The sensor sits a distance depth_d below the surface
/// with its axis tilted by alpha in the x-z plane.
VolumeMap volume_map(const SensorParams& sensor, const NucleusSpec& nucleus,
                     const VolumeGridSpec& grid = {});

}  // namespace nanonmr
