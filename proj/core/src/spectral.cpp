#include "xxent/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xxent/error.hpp"

namespace xxent {

double LogDet::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

namespace {

double phase_of(double x) { return x < 0.0 ? -1.0 : 1.0; }
Complex phase_of(Complex z) { return z / std::abs(z); }

}  // namespace

template <typename T>
LuFactorization<T>::LuFactorization(DenseMatrix<T> a, double singular_tolerance)
    : lu_(std::move(a)) {
  if (!lu_.square()) raise(ErrorKind::kInvalidParams, "LU of a non-square matrix");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  double max_col_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(lu_(i, j));
    max_col_norm = std::max(max_col_norm, std::sqrt(s));
  }
  const double threshold = singular_tolerance * max_col_norm;

  bool odd = false;
  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        r = i;
      }
    }
    if (r != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(r).begin());
      std::swap(perm_[k], perm_[r]);
      odd = !odd;
    }
    const T pivot = lu_(k, k);
    const double mag = std::abs(pivot);
    max_pivot = std::max(max_pivot, mag);
    min_pivot = std::min(min_pivot, mag);
    if (mag <= threshold) singular_ = true;
    if (mag == 0.0) {
      log_abs_det_ = -std::numeric_limits<double>::infinity();
      det_phase_ = T{0};
      continue;
    }
    log_abs_det_ += std::log(mag);
    det_phase_ *= phase_of(pivot);

    T* pivot_row = lu_.row(k).data();
    for (std::size_t i = k + 1; i < n; ++i) {
      T* row = lu_.row(i).data();
      const T factor = row[k] / pivot;
      row[k] = factor;
      if (factor == T{0}) continue;
      for (std::size_t j = k + 1; j < n; ++j) row[j] -= factor * pivot_row[j];
    }
  }
  if (odd) det_phase_ = -det_phase_;
  pivot_ratio_ = (n == 0 || max_pivot == 0.0) ? (n == 0 ? 1.0 : 0.0) : min_pivot / max_pivot;
}

template <typename T>
std::vector<T> LuFactorization<T>::solve(std::span<const T> b) const {
  const std::size_t n = dim();
  if (b.size() != n) raise(ErrorKind::kInvalidParams, "right-hand side has wrong length");
  if (singular_) raise(ErrorKind::kSingularCore, "solve with a singular factorization");
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const T* row = lu_.row(i).data();
    T s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= row[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const T* row = lu_.row(i).data();
    T s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= row[j] * x[j];
    x[i] = s / row[i];
  }
  return x;
}

template <typename T>
DenseMatrix<T> LuFactorization<T>::reconstruct() const {
  const std::size_t n = dim();
  DenseMatrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T s{0};
      const std::size_t kmax = std::min(i, j);
      for (std::size_t k = 0; k < kmax; ++k) s += lu_(i, k) * lu_(k, j);
      s += (i <= j) ? lu_(i, j) : lu_(i, j) * lu_(j, j);
      out(perm_[i], j) = s;
    }
  }
  return out;
}

template class LuFactorization<double>;
template class LuFactorization<Complex>;

LogDet lu_logdet(const Matrix& a) {
  LuFactorization<double> lu(a);
  if (lu.singular() || lu.det_phase() == 0.0) {
    return {0, -std::numeric_limits<double>::infinity()};
  }
  return {lu.det_phase() > 0 ? 1 : -1, lu.log_abs_det()};
}

Complex lu_logdet(const ComplexMatrix& a) {
  LuFactorization<Complex> lu(a);
  if (lu.singular()) raise(ErrorKind::kNearSingularShift, "pivot collapsed in det(lambda I - A)");
  return {lu.log_abs_det(), std::arg(lu.det_phase())};
}

namespace {

void check_symmetric(const Matrix& input) {
  if (!input.square()) raise(ErrorKind::kNotSymmetric, "matrix is not square");
  const std::size_t n = input.rows();
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(input(i, j)));
  const double sym_tol = 1e-12 * std::max(1.0, max_abs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > sym_tol) {
        raise(ErrorKind::kNotSymmetric, "entries (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") and transpose differ");
      }
    }
  }
}

SymmetricEigen sorted_result(std::vector<double> d, const Matrix* columns, bool transposed) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  SymmetricEigen out;
  out.values.reserve(n);
  for (std::size_t k : order) out.values.push_back(d[k]);
  if (columns != nullptr) {
    out.vectors = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t i = 0; i < n; ++i)
        out.vectors(i, col) = transposed ? (*columns)(order[col], i) : (*columns)(i, order[col]);
  }
  return out;
}

SymmetricEigen jacobi(const Matrix& input, bool want_vectors) {
  const std::size_t n = input.rows();
  Matrix a = input;
  // Rows of vt are the eigenvectors, so rotations touch contiguous memory.
  Matrix vt = want_vectors ? Matrix::identity(n) : Matrix{};

  double frob2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob2 += a(i, j) * a(i, j);
  const double target = kJacobiTolerance * std::sqrt(frob2);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_norm() <= target) break;
    if (sweep == kJacobiMaxSweeps) {
      raise(ErrorKind::kNoConvergence,
            "Jacobi did not converge in " + std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        double* rp = a.row(p).data();
        double* rq = a.row(q).data();
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = rp[k];
          const double akq = rq[k];
          rp[k] = akp - s * (akq + tau * akp);
          rq[k] = akq + s * (akp - tau * akq);
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }
        if (want_vectors) {
          double* vp = vt.row(p).data();
          double* vq = vt.row(q).data();
          for (std::size_t k = 0; k < n; ++k) {
            const double g = vp[k];
            const double h = vq[k];
            vp[k] = g - s * (h + tau * g);
            vq[k] = h + s * (g - tau * h);
          }
        }
      }
    }
  }

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  return sorted_result(std::move(d), want_vectors ? &vt : nullptr, true);
}

// Householder reduction to tridiagonal form followed by implicit QL with
// Wilkinson-style shifts (the EISPACK tred2/tql2 pair). v holds the input on
// entry and the eigenvectors as columns on exit when they are requested.
SymmetricEigen tridiagonal_ql(const Matrix& input, bool want_vectors) {
  const std::size_t n = input.rows();
  if (n == 0) return {};
  Matrix v = input;
  std::vector<double> d(n), e(n);

  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);
  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  if (want_vectors) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      v(n - 1, i) = v(i, i);
      v(i, i) = 1.0;
      const double h = d[i + 1];
      if (h != 0.0) {
        for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
        for (std::size_t j = 0; j <= i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
          for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
        }
      }
      for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
      d[j] = v(n - 1, j);
      v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
  } else {
    for (std::size_t j = 0; j < n; ++j) d[j] = v(j, j);
  }
  e[0] = 0.0;

  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_iter = 60 * n;
  std::size_t iterations = 0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
    if (m > l) {
      do {
        if (++iterations > max_iter) {
          raise(ErrorKind::kNoConvergence, "tridiagonal QL did not converge");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (want_vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              h = v(k, i + 1);
              v(k, i + 1) = s * v(k, i) + c * h;
              v(k, i) = c * v(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
  return sorted_result(std::move(d), want_vectors ? &v : nullptr, false);
}

}  // namespace

SymmetricEigen eig_symmetric(const Matrix& a, bool want_vectors, EigenMethod method) {
  check_symmetric(a);
  return method == EigenMethod::kJacobi ? jacobi(a, want_vectors) : tridiagonal_ql(a, want_vectors);
}

Spectrum Spectrum::from_values(std::vector<double> values) {
  for (double& v : values) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + kClampTolerance) {
      raise(ErrorKind::kDomainError,
            "correlation eigenvalue " + std::to_string(v) + " lies outside [-1, 1]");
    }
    v = std::clamp(v, -1.0, 1.0);
  }
  std::sort(values.begin(), values.end());
  return Spectrum(std::move(values));
}

Spectrum correlation_spectrum(const Matrix& a) {
  return Spectrum::from_values(eig_symmetric(a).values);
}

Complex resolvent_trace(const Matrix& a, Complex lambda) {
  const std::size_t n = a.rows();
  ComplexMatrix shifted(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) shifted(i, j) = -a(i, j);
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += lambda;

  LuFactorization<Complex> lu(std::move(shifted));
  if (lu.singular()) raise(ErrorKind::kNearSingularShift, "lambda sits on the spectrum");
  Complex trace{0.0, 0.0};
  std::vector<Complex> e(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(e.begin(), e.end(), Complex{});
    e[k] = 1.0;
    trace += lu.solve(e)[k];
  }
  return trace;
}

Complex resolvent_trace(std::span<const double> eigenvalues, Complex lambda) {
  Complex trace{0.0, 0.0};
  for (double nu : eigenvalues) trace += 1.0 / (lambda - nu);
  return trace;
}

}  // namespace xxent
