#pragma once

#include <limits>

#include "nanonmr/types.hpp"

namespace nanonmr {

/// A homogeneous layer of spin-1/2 nuclei below the sensor: standoff
/// distance from sensor to layer top and layer thickness (may be
/// infinite for a semi-infinite sample).
struct LayerSpec {
  NucleusSpec nucleus;
  double standoff_d = 0.0;  // m
  double thickness_t = std::numeric_limits<double>::infinity();  // m

  void validate() const {
    nucleus.validate();
    if (!(standoff_d > 0.0)) throw InvalidArgument("LayerSpec: standoff_d must be > 0");
    if (!(thickness_t > 0.0) && thickness_t != 0.0)
      throw InvalidArgument("LayerSpec: thickness_t must be >= 0");
  }
};

/// pi * (8 - 3 sin^4 alpha) / 128 — the angular prefactor of the layer
/// RMS field for a sensor axis tilted by alpha from the surface normal.
double layer_angular_prefactor(double alpha);

/// RMS field at the sensor produced by statistical polarization of the
/// layer: B^2 = rho (mu0 hbar gamma_n / 4pi)^2 * prefactor(alpha)
///             * (1/d^3 - 1/(d+t)^3).
double brms_layer(const LayerSpec& layer, double alpha);

/// Inverse of brms_layer for a semi-infinite layer: the sensor depth that
/// reproduces the measured RMS field.
double depth_from_brms(double b_rms, const NucleusSpec& nucleus, double alpha);

struct DepthThickness {
  double depth = 0.0;      // m
  double thickness = 0.0;  // m
  /// false when the inputs imply thickness <= 0 (inconsistent data).
  bool physical = true;
};

/// Joint depth/thickness calibration from a finite layer of species h
/// (RMS field b_h) stacked on a semi-infinite layer of species f (b_f).
DepthThickness depth_thickness_two_species(double b_h, double b_f,
                                           const NucleusSpec& h,
                                           const NucleusSpec& f, double alpha);

}  // namespace nanonmr
