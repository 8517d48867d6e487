#pragma once

#include <vector>

#include "duc/gate.h"

namespace duc {

struct EigenResult {
    std::vector<cplx> values;
    /// Right eigenvectors as columns, unit 2-norm.
    Matrix vectors;
};

/// Dense nonsymmetric complex eigenvalues (LAPACK zgeev).
std::vector<cplx> eigenvalues(const Matrix &a);
EigenResult eigen_decomposition(const Matrix &a);

/// Greedy matching of two eigenvalue multisets; returns the largest pair distance,
/// or +inf when sizes differ.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace duc
