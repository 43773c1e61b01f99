#pragma once

#include "gathering/engine.hpp"

#include <iosfwd>
#include <string>

namespace gathering {

/// One JSON object per event, then a final verdict line. Positions are in the
/// global frame.
void write_trace_jsonl(const Trace& trace, std::ostream& out);
void save_trace_jsonl(const Trace& trace, const std::string& path);

/// Trajectories as polylines (one per agent, hue by index), one circle of
/// radius eps per GA event and the gathering point(s) highlighted.
void write_svg(const Trace& trace, std::ostream& out);
void save_svg(const Trace& trace, const std::string& path);

} // namespace gathering
