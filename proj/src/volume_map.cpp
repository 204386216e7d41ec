#include "nanonmr/volume_map.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "nanonmr/bath.hpp"

namespace nanonmr {

namespace {

struct SlabResult {
  double total = 0.0;
  std::vector<double> hist;  // by cube-edge bin
};

}  // namespace

VolumeMap volume_map(const SensorParams& sensor, const NucleusSpec& nucleus,
                     const VolumeGridSpec& spec) {
  sensor.validate();
  nucleus.validate();
  const double d = sensor.depth_d;
  const double v = spec.voxel;
  if (!(v > 0.0) || v > d / 10.0 * (1.0 + 1e-12))
    throw InvalidArgument("volume_map: voxel edge must be positive and <= depth/10");

  const double lateral = spec.lateral_halfwidth > 0.0 ? spec.lateral_halfwidth : 15.0 * d;
  const double depth_ext = spec.depth_extent > 0.0 ? spec.depth_extent : 15.0 * d;
  const double store_hw = spec.store_halfwidth > 0.0 ? spec.store_halfwidth : 2.5 * d;

  const int nxh = static_cast<int>(std::ceil(lateral / v));  // half count in x, y
  const int nz = static_cast<int>(std::ceil(depth_ext / v));
  const int store_nh = std::min(static_cast<int>(std::ceil(store_hw / v)), nxh);
  const int store_nz = std::min(store_nh, nz);

  VolumeMap out;
  out.target_fraction = spec.target_fraction;
  out.grid.voxel = v;
  out.grid.nx = 2 * store_nh;
  out.grid.ny = 2 * store_nh;
  out.grid.nz = store_nz;
  out.grid.x0 = -(store_nh - 0.5) * v;
  out.grid.y0 = -(store_nh - 0.5) * v;
  out.grid.z0 = 0.5 * v;
  out.grid.weights.assign(static_cast<std::size_t>(out.grid.nx) * out.grid.ny *
                              out.grid.nz, 0.0);

  // Cube edges are odd multiples of the voxel edge by construction
  // (voxel centers sit at half-integer lattice positions).
  const int nbins =
      std::min(2 * nxh, static_cast<int>(std::ceil(16.0 * d / v))) + 1;

  const double moment =
      PhysicalConstants::mu0_over_4pi * PhysicalConstants::hbar * nucleus.gamma;
  const double amp = nucleus.density * v * v * v * moment * moment * 2.25;
  const double sa = std::sin(sensor.alpha);
  const double ca = std::cos(sensor.alpha);

  std::vector<SlabResult> slabs(nz);

  auto run_slab = [&](int iz) {
    SlabResult& slab = slabs[iz];
    slab.hist.assign(nbins, 0.0);
    const double z = (iz + 0.5) * v;
    const double dz = z + d;  // distance below the sensor plane
    const int zbin = 2 * iz + 1;
    const bool store_z = iz < store_nz;
    for (int ix = -nxh; ix < nxh; ++ix) {
      const double x = (ix + 0.5) * v;
      const double axial = x * sa + dz * ca;
      const double a2 = axial * axial;
      const double x2z2 = x * x + dz * dz;
      const int xbin = 2 * std::abs(ix + (ix < 0 ? 1 : 0)) + 1;  // 2|x|/v
      const bool store_x = store_z && ix >= -store_nh && ix < store_nh;
      // y >= 0 half only; weights are symmetric under y -> -y.
      for (int iy = 0; iy < nxh; ++iy) {
        const double y = (iy + 0.5) * v;
        const double inv_r2 = 1.0 / (x2z2 + y * y);
        const double c2 = a2 * inv_r2;
        const double w = amp * c2 * (1.0 - c2) * (inv_r2 * inv_r2 * inv_r2);
        slab.total += 2.0 * w;
        const int bin = std::max({xbin, 2 * iy + 1, zbin});
        if (bin < nbins) slab.hist[bin] += 2.0 * w;
        if (store_x && iy < store_nh) {
          out.grid.at(ix + store_nh, iy + store_nh, iz) = w;
          out.grid.at(ix + store_nh, store_nh - 1 - iy, iz) = w;
        }
      }
    }
  };

  const unsigned n_threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(nz)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      for (int iz = static_cast<int>(t); iz < nz; iz += n_threads) run_slab(iz);
    });
  }
  for (auto& th : pool) th.join();

  // Deterministic combine in slab order regardless of thread scheduling.
  std::vector<double> hist(nbins, 0.0);
  for (const SlabResult& slab : slabs) {
    out.total_weight += slab.total;
    for (int b = 0; b < nbins; ++b) hist[b] += slab.hist[b];
  }

  LayerSpec semi;
  semi.nucleus = nucleus;
  semi.standoff_d = d;
  const double analytic = brms_layer(semi, sensor.alpha);
  out.analytic_brms2 = analytic * analytic;
  out.resolution_warning =
      std::abs(out.total_weight - out.analytic_brms2) >
      0.02 * std::max(out.analytic_brms2, 1e-300);

  out.box_edges.resize(nbins - 1);
  out.weight_fraction.resize(nbins - 1);
  double cum = 0.0;
  const double total = std::max(out.total_weight, 1e-300);
  for (int b = 1; b < nbins; ++b) {
    cum += hist[b];
    out.box_edges[b - 1] = b * v;
    out.weight_fraction[b - 1] = cum / total;
  }

  const double variance_target = spec.target_fraction * spec.target_fraction;
  out.box_edge = 0.0;
  if (out.total_weight > 0.0) {
    for (std::size_t i = 0; i < out.weight_fraction.size(); ++i) {
      if (out.weight_fraction[i] >= variance_target) {
        out.box_edge = out.box_edges[i];
        break;
      }
    }
  }
  const double edge = out.box_edge;
  out.spin_count = nucleus.density * edge * edge * (edge / 2.0);
  out.equivalent_polarized = std::sqrt(out.spin_count);
  return out;
}

}  // namespace nanonmr
