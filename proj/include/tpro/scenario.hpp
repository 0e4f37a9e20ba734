#pragma once

#include "tpro/config.hpp"
#include "tpro/dynamics.hpp"

namespace tpro {

/// A fully resolved run: drive context, integration window and control.
struct Scenario {
  DriveContext context;
  TimeSpan span;  ///< span.end is the readout time
  IntegratorControl control;
};

/// Converts interface units (eV, meV, area in pi) to internal ones and
/// evaluates the hybrid feedback constants when a geometry is present.
Scenario build_scenario(const RunConfig& config);

/// FeedbackParams for the config: isolated or hybrid at the pulse carrier.
FeedbackParams feedback_for(const RunConfig& config);

}  // namespace tpro
