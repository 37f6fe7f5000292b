#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace tbsim {

struct Segment {
  double z_start;
  double z_end;
  double value;
};

/// Piecewise-constant function of z; zero outside its segments.
///
/// Segments are half-open [z_start, z_end), sorted, and non-overlapping.
/// Used for the nonlinearity sign profile g(z), the XPM masks h_j(z), and the
/// pump SPM strength.
class PiecewiseProfile {
 public:
  PiecewiseProfile() = default;
  explicit PiecewiseProfile(std::vector<Segment> segments);

  static PiecewiseProfile constant(double z_start, double z_end, double value);
  /// Alternating +1/-1 domains of length period/2 on [z_start, z_end), starting at +1.
  static PiecewiseProfile periodic_poling(double z_start, double z_end, double period);

  double operator()(double z) const;
  /// Signed integral from a to b.
  double integral(double a, double b) const;
  /// Integral from -infinity to z.
  double antiderivative(double z) const;

  /// Segment endpoints, sorted and deduplicated.
  std::vector<double> breakpoints() const;
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  bool is_zero() const;
  /// True when the profile is one constant nonzero segment exactly covering [a, b].
  bool is_single_segment_over(double a, double b) const;
  bool within(double a, double b) const;

  /// Throws ConfigError (naming `field`) if a segment value is not in `allowed`.
  void require_values(std::initializer_list<double> allowed, const std::string& field) const;

 private:
  std::vector<Segment> segments_;
};

}  // namespace tbsim
