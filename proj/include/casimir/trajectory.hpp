#pragma once

#include <vector>

namespace casimir {

enum class TerminalEvent { reached_target, bounce, step_limit };

struct TrajectorySample {
    double t = 0.0; // seconds (hole filling) or proper meters (shell collapse)
    double r = 0.0;
    double v = 0.0; // dr/dt, negative while collapsing
};

/// Ordered (time, radius, velocity) samples from a dynamic solver;
/// t strictly increasing, r strictly decreasing until a bounce.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    TerminalEvent terminal_event = TerminalEvent::reached_target;
};

} // namespace casimir
