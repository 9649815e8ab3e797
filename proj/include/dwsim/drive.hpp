#pragma once

#include <vector>

namespace dwsim {

// Externally applied drive at one instant: spin-current velocity and field
// along the easy axis.
struct DriveSample {
  double bJ_m_per_s = 0.0;
  double H_ext_Oe = 0.0;
};

// Piecewise-constant drive program. Each breakpoint value holds from its
// start time until the next breakpoint; the last one holds forever.
class DriveProgram {
 public:
  // Zero drive everywhere.
  DriveProgram() : segments_{{0.0, DriveSample{}}} {}

  static DriveProgram constant(double bJ_m_per_s, double H_ext_Oe) {
    DriveProgram p;
    p.segments_[0].value = {bJ_m_per_s, H_ext_Oe};
    return p;
  }

  // Appends a breakpoint; start times must be strictly increasing.
  void add_segment(double t_s, double bJ_m_per_s, double H_ext_Oe);

  DriveSample at(double t_s) const;

  // Breakpoint times after t=0, ascending. Integrators land a step exactly
  // on each so no step straddles a drive discontinuity.
  std::vector<double> boundaries() const;

 private:
  struct Segment {
    double t_s;
    DriveSample value;
  };
  std::vector<Segment> segments_;
};

}  // namespace dwsim
