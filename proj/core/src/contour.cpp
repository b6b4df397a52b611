#include "xxent/contour.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "xxent/entropy.hpp"
#include "xxent/error.hpp"

namespace xxent {

using std::numbers::pi;

namespace {

constexpr int kGaussOrder = 12;
constexpr double kGradingRatio = 0.25;
constexpr double kMaxImaginaryResidue = 1e-8;

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
GaussRule gauss_legendre(int n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = gauss_legendre(kGaussOrder);
  return rule;
}

// One smooth arc of the contour, parametrized over t in [0, 1].
struct Piece {
  std::function<Complex(double)> z;
  std::function<Complex(double)> dz;
  bool grade_start = false;
  bool grade_end = false;
};

struct Node {
  Complex z;
  Complex weight;  // quadrature weight times dz/dt
};

double crossing_of(const ContourSpec& c) {
  return std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, RectangleContour>) {
          return s.half_width;
        } else {
          return s.semi_major;
        }
      },
      c.shape);
}

double height_of(const ContourSpec& c) {
  return std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, RectangleContour>) {
          return s.half_height;
        } else {
          return s.semi_minor;
        }
      },
      c.shape);
}

std::vector<Piece> pieces_of(const ContourSpec& contour) {
  std::vector<Piece> out;
  if (const auto* r = std::get_if<RectangleContour>(&contour.shape)) {
    const double w = r->half_width;
    const double h = r->half_height;
    const Complex i{0.0, 1.0};
    out.push_back({[=](double t) { return w + i * h * t; }, [=](double) { return i * h; }, true,
                   false});
    out.push_back({[=](double t) { return Complex{w - 2.0 * w * t, h}; },
                   [=](double) { return Complex{-2.0 * w, 0.0}; }});
    out.push_back({[=](double t) { return -w + i * h * (1.0 - t); },
                   [=](double) { return -i * h; }, false, true});
    out.push_back({[=](double t) { return -w - i * h * t; }, [=](double) { return -i * h; }, true,
                   false});
    out.push_back({[=](double t) { return Complex{-w + 2.0 * w * t, -h}; },
                   [=](double) { return Complex{2.0 * w, 0.0}; }});
    out.push_back({[=](double t) { return w - i * h * (1.0 - t); },
                   [=](double) { return i * h; }, false, true});
  } else {
    const auto& e = std::get<EllipseContour>(contour.shape);
    const double a = e.semi_major;
    const double b = e.semi_minor;
    for (int quarter = 0; quarter < 4; ++quarter) {
      const double theta0 = quarter * pi / 2.0;
      out.push_back({[=](double t) {
                       const double th = theta0 + t * pi / 2.0;
                       return Complex{a * std::cos(th), b * std::sin(th)};
                     },
                     [=](double t) {
                       const double th = theta0 + t * pi / 2.0;
                       return (pi / 2.0) * Complex{-a * std::sin(th), b * std::cos(th)};
                     },
                     quarter % 2 == 0, quarter % 2 == 1});
    }
  }
  return out;
}

double piece_length(const Piece& piece) {
  constexpr int kSamples = 256;
  double len = 0.0;
  for (int k = 0; k < kSamples; ++k) len += std::abs(piece.dz((k + 0.5) / kSamples));
  return len / kSamples;
}

std::vector<Node> quadrature_nodes(const ContourSpec& contour, int panels) {
  const std::vector<Piece> pieces = pieces_of(contour);
  std::vector<double> lengths;
  double total = 0.0;
  for (const Piece& p : pieces) {
    lengths.push_back(piece_length(p));
    total += lengths.back();
  }
  const double x = crossing_of(contour);
  // Nearest singular point to a crossing: the spectrum edge or the cut end.
  const double singular_distance = std::min(x - 1.0, 1.0 + contour.epsilon - x);

  const GaussRule& rule = gauss_rule();
  std::vector<Node> nodes;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Piece& piece = pieces[k];
    const int base = std::max(2, static_cast<int>(std::lround(panels * lengths[k] / total)));
    std::vector<double> breaks;
    for (int j = 0; j <= base; ++j) breaks.push_back(static_cast<double>(j) / base);

    auto refine = [&](double speed, bool at_start) {
      const double t_min = 0.25 * singular_distance / speed;
      if (t_min >= 1.0 / base) return;
      for (double t = kGradingRatio / base; t > t_min; t *= kGradingRatio) {
        breaks.push_back(at_start ? t : 1.0 - t);
      }
      breaks.push_back(at_start ? t_min : 1.0 - t_min);
    };
    if (piece.grade_start) refine(std::abs(piece.dz(0.0)), true);
    if (piece.grade_end) refine(std::abs(piece.dz(1.0)), false);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
      const double lo = breaks[j];
      const double hi = breaks[j + 1];
      if (hi <= lo) continue;
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (int g = 0; g < kGaussOrder; ++g) {
        const double t = mid + half * rule.nodes[g];
        nodes.push_back({piece.z(t), half * rule.weights[g] * piece.dz(t)});
      }
    }
  }
  return nodes;
}

using Integrand = std::function<Complex(Complex)>;

Complex integrate(const Matrix& a, const std::vector<Node>& nodes, const Integrand& f) {
  Complex sum{0.0, 0.0};
  for (const Node& node : nodes) sum += node.weight * f(node.z) * resolvent_trace(a, node.z);
  return sum / Complex{0.0, 2.0 * pi};
}

ContourResult run_quadrature(const Matrix& a, const ContourSpec& contour, const Integrand& f) {
  const std::vector<Node> coarse = quadrature_nodes(contour, contour.panels);
  const std::vector<Node> fine = quadrature_nodes(contour, 2 * contour.panels);
  const Complex first = integrate(a, coarse, f);
  const Complex second = integrate(a, fine, f);
  const double delta = std::abs(second.real() - first.real());
  if (delta > contour.convergence_tolerance) {
    raise(ErrorKind::kQuadratureNotConverged,
          "doubling the panels moved the result by " + std::to_string(delta));
  }
  if (std::abs(second.imag()) > kMaxImaginaryResidue) {
    raise(ErrorKind::kQuadratureNotConverged,
          "imaginary residue " + std::to_string(second.imag()) + " too large");
  }
  return {second.real(), second.imag(), delta, fine.size()};
}

}  // namespace

ContourSpec ContourSpec::rectangle(double epsilon, int panels) {
  return {epsilon, RectangleContour{1.0 + 0.5 * epsilon, 0.5}, panels};
}

ContourSpec ContourSpec::ellipse(double epsilon, int panels) {
  return {epsilon, EllipseContour{1.0 + 0.5 * epsilon, 0.4}, panels};
}

void validate(const ContourSpec& contour) {
  const double eps = contour.epsilon;
  if (!std::isfinite(eps) || eps <= 0.0 || eps >= 1.0) {
    raise(ErrorKind::kBadContour, "epsilon must lie in (0, 1)");
  }
  if (contour.panels < ContourSpec::kMinPanels) {
    raise(ErrorKind::kBadContour, "at least " + std::to_string(ContourSpec::kMinPanels) +
                                      " panels are required");
  }
  const double x = crossing_of(contour);
  if (!(x - 1.0 >= 0.5 * eps * (1.0 - 1e-9)) || !(x < 1.0 + eps)) {
    raise(ErrorKind::kBadContour,
          "the curve must cross the real axis between 1 + eps/2 and 1 + eps");
  }
  if (!(height_of(contour) > 0.0)) raise(ErrorKind::kBadContour, "curve height must be positive");

  // Distance from [-1, 1], sampled along the curve.
  const double floor = 0.5 * eps * (1.0 - 1e-9);
  for (const Piece& piece : pieces_of(contour)) {
    for (int k = 0; k <= 512; ++k) {
      const Complex z = piece.z(k / 512.0);
      const double dx = std::max(0.0, std::abs(z.real()) - 1.0);
      if (std::hypot(dx, z.imag()) < floor) {
        raise(ErrorKind::kBadContour, "curve passes closer than eps/2 to [-1, 1]");
      }
    }
  }
}

Complex mode_entropy(double x, Complex lambda) {
  const Complex p = 0.5 * (x + lambda);
  const Complex q = 0.5 * (x - lambda);
  return -p * std::log(p) - q * std::log(q);
}

Complex mode_renyi(double x, Complex lambda, double alpha) {
  const Complex p = 0.5 * (x + lambda);
  const Complex q = 0.5 * (x - lambda);
  return std::log(std::pow(p, alpha) + std::pow(q, alpha)) / (1.0 - alpha);
}

double shifted_entropy(std::span<const double> nu, double epsilon) {
  double s = 0.0;
  for (double v : nu) s += mode_entropy(1.0 + epsilon, v).real();
  return s;
}

double shifted_renyi(std::span<const double> nu, double epsilon, double alpha) {
  check_alpha(alpha);
  double s = 0.0;
  for (double v : nu) s += mode_renyi(1.0 + epsilon, v, alpha).real();
  return s;
}

Complex log_det_D(const Matrix& a, Complex lambda) {
  const std::size_t n = a.rows();
  ComplexMatrix shifted(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) shifted(i, j) = -a(i, j);
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += lambda;
  return lu_logdet(shifted);
}

Complex LogDetTracker::next(Complex lambda) {
  Complex value = log_det_D(a_, lambda);
  if (last_) {
    const double turns = std::round((last_->imag() - value.imag()) / (2.0 * pi));
    value += Complex{0.0, 2.0 * pi * turns};
  }
  last_ = value;
  return value;
}

ContourResult entropy_by_contour(const Matrix& a, const ContourSpec& contour) {
  validate(contour);
  const double x = 1.0 + contour.epsilon;
  return run_quadrature(a, contour, [x](Complex z) { return mode_entropy(x, z); });
}

ContourResult entropy_by_contour(const CorrMatrix& a, const ContourSpec& contour) {
  return entropy_by_contour(a.entries, contour);
}

ContourResult renyi_by_contour(const Matrix& a, const ContourSpec& contour, double alpha) {
  check_alpha(alpha);
  validate(contour);
  const double x = 1.0 + contour.epsilon;
  if (alpha > 1.0) {
    const double branch = x * std::tan(pi / (2.0 * alpha));
    if (height_of(contour) >= branch) {
      raise(ErrorKind::kBadContour, "curve height must stay below the Renyi branch point at " +
                                        std::to_string(branch));
    }
  }
  return run_quadrature(a, contour, [x, alpha](Complex z) { return mode_renyi(x, z, alpha); });
}

ContourResult renyi_by_contour(const CorrMatrix& a, const ContourSpec& contour, double alpha) {
  return renyi_by_contour(a.entries, contour, alpha);
}

}  // namespace xxent
