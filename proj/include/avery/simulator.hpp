#pragma once

#include "avery/scenario.hpp"
#include "avery/timeline.hpp"

namespace avery {

// Run one mission: discrete events (sense, capture, compute, transmit) over
// the fluid link until MissionEnd. Deterministic for a fixed scenario, LUT,
// and trace.
MissionTimeline run_event_loop(const Scenario& scenario, const SystemLUT& lut,
                               const BandwidthTrace& trace);

} // namespace avery
