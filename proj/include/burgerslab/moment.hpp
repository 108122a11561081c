#pragma once

#include "burgerslab/flux.hpp"
#include "burgerslab/polynomial.hpp"
#include "burgerslab/rational.hpp"

#include <vector>

namespace burgerslab {

// Dense square matrix, row-major.
template <class T>
struct SquareMatrix {
    int dim = 0;
    std::vector<T> a;

    explicit SquareMatrix(int d = 0) : dim(d), a(static_cast<size_t>(d) * d, T(0)) {}
    T& at(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }
    const T& at(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }
};

using RationalMatrix = SquareMatrix<Rational>;
using RealMatrix = SquareMatrix<double>;

// Moment matrix of the d-dimensional Burgers family at state a:
//   M(a)_{ij} = a^{i+j+1} / (i+j+1),   0 <= i, j <= d-1.
// Equals int_0^a F'(s) F'(s)^T ds with F = (s, s^2/2, ..., s^d/d).
RationalMatrix vandermonde_moment_exact(const Rational& a, int d);
RealMatrix vandermonde_moment(double a, int d);

// Hilbert-type matrix H_{ij} = 1/(i+j+1) and its exact determinant.
// det M(a) = hilbert_det(d) * a^{d*d}.  Supported for 1 <= d <= 12.
Rational hilbert_det(int d);

// Exact determinant: clear denominators per row, run fraction-free Bareiss
// elimination over the integers, divide the row multipliers back out.
Rational det_exact(const RationalMatrix& m);

// Partial-pivot LU determinant (matrix taken by value, destroyed).
double det_lu(RealMatrix m);

// det M(a) == hilbert_det(d) * a^{d*d}, exactly.
bool det_identity_holds(const Rational& a, int d);

// Moment matrix of a general flux family: M(a) = int_0^a F' F'^T ds with
// F = (s, f_1, ..., f_n), so dim = d = n + 1.  The exact overload requires a
// monomial family (entries are then rational monomials in a).
RationalMatrix general_moment_exact(const FluxSpec& spec, const Rational& a);
RealMatrix general_moment(const FluxSpec& spec, double a);

// Delta(a) = det(M(a))^{1/n}, a >= 0.  For the Burgers family this is
// hilbert_det(d)^{1/n} * a^{d*d/n}.
double capital_delta(const FluxSpec& spec, double a);

// Hot-path evaluator for Delta over a whole field: the antiderivative
// polynomials of the matrix entries are built once, each call fills a small
// stack matrix by Horner evaluation and takes an LU determinant.  A
// determinant below -1e-12 signals a degenerate family and throws; small
// negative round-off is clamped to zero.
class DeltaEvaluator {
public:
    explicit DeltaEvaluator(const FluxSpec& spec);
    double operator()(double a) const;
    int dim() const { return d_; }

private:
    int d_ = 0;
    std::vector<Polynomial> entries_;  // row-major d*d antiderivatives
};

inline constexpr double kDegeneracyThreshold = -1e-12;

}  // namespace burgerslab
