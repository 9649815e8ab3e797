#include "dwsim/drive.hpp"

#include <stdexcept>

namespace dwsim {

void DriveProgram::add_segment(double t_s, double bJ_m_per_s, double H_ext_Oe) {
  if (!(t_s > segments_.back().t_s)) {
    throw std::invalid_argument("drive breakpoints must have increasing times");
  }
  segments_.push_back({t_s, {bJ_m_per_s, H_ext_Oe}});
}

DriveSample DriveProgram::at(double t_s) const {
  // Last segment whose start is <= t; times before the first clamp to it.
  const Segment* cur = &segments_.front();
  for (const auto& s : segments_) {
    if (s.t_s <= t_s) cur = &s;
    else break;
  }
  return cur->value;
}

std::vector<double> DriveProgram::boundaries() const {
  std::vector<double> out;
  for (const auto& s : segments_) {
    if (s.t_s > 0.0) out.push_back(s.t_s);
  }
  return out;
}

}  // namespace dwsim
