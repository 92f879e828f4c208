#pragma once

#include <string_view>

#include "core/montecarlo.hpp"

namespace dirac {

// Flat key = value experiment configuration. One pair per line, '#' starts a
// comment, blank lines are ignored. Keys:
//
//   field      uniform-asym | uniform-sym | monopole | monopole-linear   (required)
//   noise      wiener | ou                                               (required)
//   drift      trivial | precession                          (default trivial)
//   T          operational time, > 0                                    (required)
//   steps      time-grid panels, >= 1                                   (required)
//   samples    trajectories per ensemble, >= 1                          (required)
//   seed       64-bit master seed                                  (default 0)
//   coupling   phase coupling constant                             (default 1)
//   Bx By Bz   Wiener diffusion constants, >= 0      (wiener only, default 0)
//   gamma      OU relaxation rate, > 0                      (required for ou)
//   D          OU diffusion constant, >= 0    (ou only; exactly one of D and
//   epsilon    OU stationary amplitude, >= 0   epsilon must be present)
//   theta0     colatitude of the drift point / loop      (default pi/2)
//   phi0       initial azimuth                              (default 0)
//   turns      precession revolutions per T, >= 1 (precession only, default 1)
//   quad_steps closure quadrature panels, >= 1            (default 64)
//   bootstrap  bootstrap resamples, >= 2                 (default 200)
//
// Unknown and duplicate keys are rejected, as are keys that do not apply to
// the selected noise or drift model. theta0/phi0 place the trivial drift
// point (and the linearization base of monopole-linear) on the unit sphere.
ExperimentConfig parse_config(std::string_view text);

}  // namespace dirac
