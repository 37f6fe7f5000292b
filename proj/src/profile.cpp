#include "tbsim/profile.hpp"

#include <algorithm>
#include <cmath>

#include "tbsim/error.hpp"

namespace tbsim {

PiecewiseProfile::PiecewiseProfile(std::vector<Segment> segments) : segments_(std::move(segments)) {
  for (const auto& s : segments_) {
    if (!std::isfinite(s.z_start) || !std::isfinite(s.z_end) || !std::isfinite(s.value))
      throw ConfigError("profile", "non-finite segment");
    if (!(s.z_start < s.z_end)) throw ConfigError("profile", "segment must satisfy z_start < z_end");
  }
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.z_start < b.z_start; });
  for (std::size_t k = 1; k < segments_.size(); ++k)
    if (segments_[k].z_start < segments_[k - 1].z_end) throw ConfigError("profile", "segments overlap");
}

PiecewiseProfile PiecewiseProfile::constant(double z_start, double z_end, double value) {
  return PiecewiseProfile({{z_start, z_end, value}});
}

PiecewiseProfile PiecewiseProfile::periodic_poling(double z_start, double z_end, double period) {
  if (!(period > 0.0)) throw ConfigError("poling_period", "must be positive");
  std::vector<Segment> segs;
  const double half = 0.5 * period;
  const auto n = static_cast<long>(std::ceil((z_end - z_start) / half - 1e-12));
  double sign = 1.0;
  for (long k = 0; k < n; ++k) {
    const double a = z_start + static_cast<double>(k) * half;
    const double b = (k == n - 1) ? z_end : z_start + static_cast<double>(k + 1) * half;
    segs.push_back({a, b, sign});
    sign = -sign;
  }
  return PiecewiseProfile(std::move(segs));
}

double PiecewiseProfile::operator()(double z) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), z,
                             [](double v, const Segment& s) { return v < s.z_start; });
  if (it == segments_.begin()) return 0.0;
  --it;
  return (z < it->z_end) ? it->value : 0.0;
}

double PiecewiseProfile::antiderivative(double z) const {
  double acc = 0.0;
  for (const auto& s : segments_) {
    if (z <= s.z_start) break;
    acc += s.value * (std::min(z, s.z_end) - s.z_start);
  }
  return acc;
}

double PiecewiseProfile::integral(double a, double b) const { return antiderivative(b) - antiderivative(a); }

std::vector<double> PiecewiseProfile::breakpoints() const {
  std::vector<double> out;
  for (const auto& s : segments_) {
    out.push_back(s.z_start);
    out.push_back(s.z_end);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PiecewiseProfile::is_zero() const {
  return std::all_of(segments_.begin(), segments_.end(), [](const Segment& s) { return s.value == 0.0; });
}

bool PiecewiseProfile::is_single_segment_over(double a, double b) const {
  return segments_.size() == 1 && segments_[0].z_start == a && segments_[0].z_end == b;
}

bool PiecewiseProfile::within(double a, double b) const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [&](const Segment& s) { return s.z_start >= a && s.z_end <= b; });
}

void PiecewiseProfile::require_values(std::initializer_list<double> allowed, const std::string& field) const {
  for (const auto& s : segments_)
    if (std::find(allowed.begin(), allowed.end(), s.value) == allowed.end())
      throw ConfigError(field, "segment value " + std::to_string(s.value) + " is not allowed");
}

}  // namespace tbsim
