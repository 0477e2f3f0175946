#include "uqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uqc {

SymEigen jacobi_eigensym(const std::vector<double>& a_in, int dim) {
  if (dim <= 0 || a_in.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("jacobi_eigensym: bad dimensions");

  std::vector<double> a = a_in;
  // symmetrize so tiny asymmetries cannot stall convergence
  for (int r = 0; r < dim; ++r)
    for (int c = r + 1; c < dim; ++c) {
      const double m = 0.5 * (a[r * dim + c] + a[c * dim + r]);
      a[r * dim + c] = a[c * dim + r] = m;
    }

  std::vector<double> v(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) v[i * dim + i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int r = 0; r < dim; ++r)
      for (int c = r + 1; c < dim; ++c) s += a[r * dim + c] * a[r * dim + c];
    return std::sqrt(2.0 * s);
  };

  double scale = 0.0;
  for (int i = 0; i < dim; ++i) scale = std::max(scale, std::abs(a[i * dim + i]));
  scale = std::max(scale, off_norm());
  const double tol = 1e-14 * std::max(scale, 1.0);

  for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
    for (int p = 0; p < dim - 1; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const double apq = a[p * dim + q];
        if (std::abs(apq) <= tol * 1e-2) continue;
        const double app = a[p * dim + p];
        const double aqq = a[q * dim + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int i = 0; i < dim; ++i) {
          const double aip = a[i * dim + p];
          const double aiq = a[i * dim + q];
          a[i * dim + p] = c * aip - s * aiq;
          a[i * dim + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < dim; ++i) {
          const double api = a[p * dim + i];
          const double aqi = a[q * dim + i];
          a[p * dim + i] = c * api - s * aqi;
          a[q * dim + i] = s * api + c * aqi;
        }
        for (int i = 0; i < dim; ++i) {
          const double vip = v[i * dim + p];
          const double viq = v[i * dim + q];
          v[i * dim + p] = c * vip - s * viq;
          v[i * dim + q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a[x * dim + x] > a[y * dim + y]; });

  SymEigen out;
  out.dim = dim;
  out.values.resize(dim);
  out.vectors.resize(static_cast<std::size_t>(dim) * dim);
  for (int k = 0; k < dim; ++k) {
    const int j = order[k];
    out.values[k] = a[j * dim + j];
    for (int i = 0; i < dim; ++i) out.vectors[k * dim + i] = v[i * dim + j];
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const std::vector<cplx>& h, int dim) {
  if (dim <= 0 || h.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("hermitian_eigenvalues: bad dimensions");

  const int d2 = 2 * dim;
  std::vector<double> m(static_cast<std::size_t>(d2) * d2, 0.0);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = h[r * dim + c].real();
      const double im = h[r * dim + c].imag();
      m[r * d2 + c] = re;
      m[(r + dim) * d2 + (c + dim)] = re;
      m[r * d2 + (c + dim)] = -im;
      m[(r + dim) * d2 + c] = im;
    }
  }
  SymEigen e = jacobi_eigensym(m, d2);
  // spectrum comes out doubled; take every second value, ascending
  std::sort(e.values.begin(), e.values.end());
  std::vector<double> out(dim);
  for (int i = 0; i < dim; ++i) out[i] = 0.5 * (e.values[2 * i] + e.values[2 * i + 1]);
  return out;
}

}  // namespace uqc
