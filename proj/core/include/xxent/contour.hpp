#pragma once

#include <optional>
#include <span>
#include <variant>

#include "xxent/correlation.hpp"
#include "xxent/matrix.hpp"
#include "xxent/spectral.hpp"

namespace xxent {

/// Axis-aligned rectangle centred at the origin.
struct RectangleContour {
  double half_width;
  double half_height;
};

/// Ellipse centred at the origin with its major axis along the real line.
struct EllipseContour {
  double semi_major;
  double semi_minor;
};

/// Closed counter-clockwise curve around [-1, 1] for the entropy integrals.
///
/// The integrands have branch cuts on (-inf, -1-eps] and [1+eps, inf), so the
/// curve must cross the real axis inside (1, 1+eps) and (-1-eps, -1) while
/// staying at least eps/2 away from [-1, 1].
///
/// Quadrature is composite Gauss-Legendre: `panels` uniform base panels
/// shared out over the curve by arc length, with geometric refinement towards
/// the two real-axis crossings where the cut endpoints come within eps/2.
struct ContourSpec {
  static constexpr int kDefaultPanels = 256;
  static constexpr int kMinPanels = 64;

  double epsilon = 1e-4;
  std::variant<RectangleContour, EllipseContour> shape;
  int panels = kDefaultPanels;
  /// Largest change allowed when the base panel count is doubled.
  double convergence_tolerance = 1e-9;

  /// Rectangle with half-width 1 + eps/2 and half-height 0.5.
  static ContourSpec rectangle(double epsilon, int panels = kDefaultPanels);
  /// Ellipse with semi-major axis 1 + eps/2 and semi-minor axis 0.4.
  static ContourSpec ellipse(double epsilon, int panels = kDefaultPanels);
};

/// Raises BadContour when the curve violates the constraints above.
void validate(const ContourSpec& contour);

/// e(x, lambda) on the principal branch.
Complex mode_entropy(double x, Complex lambda);
/// e_alpha(x, lambda) on the principal branch.
Complex mode_renyi(double x, Complex lambda, double alpha);

/// sum_i e(1 + eps, nu_i): what the von Neumann contour integral converges to.
double shifted_entropy(std::span<const double> nu, double epsilon);
double shifted_renyi(std::span<const double> nu, double epsilon, double alpha);

/// ln det(lambda I - A), principal branch.
Complex log_det_D(const Matrix& a, Complex lambda);

/// Keeps ln D(lambda) continuous along a sequence of nearby points by
/// unwrapping the imaginary part in multiples of 2 pi.
class LogDetTracker {
 public:
  explicit LogDetTracker(const Matrix& a) : a_(a) {}
  Complex next(Complex lambda);

 private:
  const Matrix& a_;
  std::optional<Complex> last_;
};

struct ContourResult {
  double value;
  /// Imaginary part of the quadrature sum before it is discarded.
  double imaginary_residue;
  /// |value(panels) - value(2 panels)|.
  double refinement_delta;
  std::size_t nodes;
};

/// Von Neumann entropy as (1/2 pi i) \oint e(1+eps, lambda) d/dlambda ln D.
/// The log-derivative is the resolvent trace. Raises QuadratureNotConverged
/// if doubling the panels moves the result by more than the tolerance or the
/// imaginary residue exceeds 1e-8.
ContourResult entropy_by_contour(const Matrix& a, const ContourSpec& contour);
ContourResult entropy_by_contour(const CorrMatrix& a, const ContourSpec& contour);

/// The Renyi analogue. For alpha > 1 the integrand has branch points at
/// +-i tan(pi / (2 alpha)), which the curve must not enclose.
ContourResult renyi_by_contour(const Matrix& a, const ContourSpec& contour, double alpha);
ContourResult renyi_by_contour(const CorrMatrix& a, const ContourSpec& contour, double alpha);

}  // namespace xxent
