#pragma once

#include <complex>
#include <vector>

namespace uqc {

using cplx = std::complex<double>;

// Eigendecomposition of a real symmetric matrix, sorted by descending
// eigenvalue. vectors is row-major: vectors[k*dim + i] is component i of the
// k-th eigenvector.
struct SymEigen {
  int dim = 0;
  std::vector<double> values;
  std::vector<double> vectors;
};

// Cyclic Jacobi rotations; input is row-major dim x dim, only the symmetric
// part is referenced.
SymEigen jacobi_eigensym(const std::vector<double>& a, int dim);

// Eigenvalues (ascending) of a Hermitian matrix via the real symmetric
// embedding [[Re, -Im], [Im, Re]] whose spectrum is that of H doubled.
std::vector<double> hermitian_eigenvalues(const std::vector<cplx>& h, int dim);

}  // namespace uqc
