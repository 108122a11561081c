#include "burgerslab/moment.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace burgerslab {

RationalMatrix vandermonde_moment_exact(const Rational& a, int d) {
    if (d < 1 || d > 12) throw std::invalid_argument("moment: dimension must be in [1, 12]");
    RationalMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m.at(i, j) = rational_pow(a, i + j + 1) / (i + j + 1);
    return m;
}

RealMatrix vandermonde_moment(double a, int d) {
    if (d < 1 || d > 12) throw std::invalid_argument("moment: dimension must be in [1, 12]");
    RealMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m.at(i, j) = ipow(a, i + j + 1) / (i + j + 1);
    return m;
}

Rational hilbert_det(int d) {
    if (d < 1 || d > 12) throw std::invalid_argument("moment: dimension must be in [1, 12]");
    RationalMatrix h(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            h.at(i, j) = Rational(1, i + j + 1);
    return det_exact(h);
}

Rational det_exact(const RationalMatrix& m) {
    const int n = m.dim;
    if (n == 0) return 1;

    // Clear denominators row by row: row i times L_i is integral.
    std::vector<std::vector<BigInt>> w(static_cast<size_t>(n),
                                       std::vector<BigInt>(static_cast<size_t>(n)));
    BigInt denom = 1;
    for (int i = 0; i < n; ++i) {
        BigInt L = 1;
        for (int j = 0; j < n; ++j)
            L = boost::integer::lcm(L, BigInt(boost::multiprecision::denominator(m.at(i, j))));
        for (int j = 0; j < n; ++j) {
            const Rational& r = m.at(i, j);
            w[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                BigInt(boost::multiprecision::numerator(r)) *
                (L / BigInt(boost::multiprecision::denominator(r)));
        }
        denom *= L;
    }

    // Fraction-free Bareiss: every division below is exact over the integers.
    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (w[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(w[static_cast<size_t>(k)], w[static_cast<size_t>(swap_row)]);
            sign = -sign;
        }
        const BigInt& piv = w[static_cast<size_t>(k)][static_cast<size_t>(k)];
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                BigInt t = w[static_cast<size_t>(i)][static_cast<size_t>(j)] * piv -
                           w[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                               w[static_cast<size_t>(k)][static_cast<size_t>(j)];
                w[static_cast<size_t>(i)][static_cast<size_t>(j)] = t / prev;
            }
            w[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
        }
        prev = piv;
    }
    BigInt det_int = w[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
    if (sign < 0) det_int = -det_int;
    return Rational(det_int, denom);
}

double det_lu(RealMatrix m) {
    const int n = m.dim;
    if (n == 0) return 1.0;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m.at(k, k));
        for (int r = k + 1; r < n; ++r) {
            const double v = std::abs(m.at(r, k));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            det = -det;
        }
        const double pv = m.at(k, k);
        det *= pv;
        for (int r = k + 1; r < n; ++r) {
            const double f = m.at(r, k) / pv;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j) m.at(r, j) -= f * m.at(k, j);
        }
    }
    return det;
}

bool det_identity_holds(const Rational& a, int d) {
    return det_exact(vandermonde_moment_exact(a, d)) ==
           hilbert_det(d) * rational_pow(a, static_cast<long long>(d) * d);
}

namespace {

// F'_i as an exact rational polynomial: F'_0 = 1, F'_i = f_i' = s^{k_i - 1}
// for a monomial family.
Rational moment_entry_exact(const FluxSpec& spec, const Rational& a, int i, int j) {
    // degree of F'_i as a monomial in s
    const auto deg = [&](int idx) {
        return idx == 0 ? 0 : spec.exponents()[static_cast<size_t>(idx - 1)] - 1;
    };
    const int p = deg(i) + deg(j) + 1;
    return rational_pow(a, p) / p;
}

}  // namespace

RationalMatrix general_moment_exact(const FluxSpec& spec, const Rational& a) {
    if (!spec.is_monomial())
        throw std::invalid_argument("moment: exact entries need a monomial family");
    const int d = spec.d();
    RationalMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m.at(i, j) = moment_entry_exact(spec, a, i, j);
    return m;
}

RealMatrix general_moment(const FluxSpec& spec, double a) {
    const int d = spec.d();
    RealMatrix m(d);
    Polynomial one;
    one.c = {1.0};
    for (int i = 0; i < d; ++i) {
        const Polynomial& pi = (i == 0) ? one : spec.dpoly(i - 1);
        for (int j = i; j < d; ++j) {
            const Polynomial& pj = (j == 0) ? one : spec.dpoly(j - 1);
            const double v = ((pi * pj).antiderivative()).eval(a);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

DeltaEvaluator::DeltaEvaluator(const FluxSpec& spec) : d_(spec.d()) {
    Polynomial one;
    one.c = {1.0};
    entries_.resize(static_cast<size_t>(d_) * d_);
    for (int i = 0; i < d_; ++i) {
        const Polynomial& pi = (i == 0) ? one : spec.dpoly(i - 1);
        for (int j = i; j < d_; ++j) {
            const Polynomial& pj = (j == 0) ? one : spec.dpoly(j - 1);
            Polynomial e = (pi * pj).antiderivative();
            entries_[static_cast<size_t>(i) * d_ + j] = e;
            entries_[static_cast<size_t>(j) * d_ + i] = std::move(e);
        }
    }
}

double DeltaEvaluator::operator()(double a) const {
    if (a < 0.0) throw std::invalid_argument("Delta: state must be nonnegative");
    if (a == 0.0) return 0.0;
    constexpr int kMaxDim = 13;
    if (d_ > kMaxDim) throw std::invalid_argument("Delta: dimension too large");
    double m[kMaxDim][kMaxDim];
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            m[i][j] = entries_[static_cast<size_t>(i) * d_ + j].eval(a);

    double det = 1.0;
    for (int k = 0; k < d_; ++k) {
        int piv = k;
        double best = std::abs(m[k][k]);
        for (int r = k + 1; r < d_; ++r)
            if (std::abs(m[r][k]) > best) {
                best = std::abs(m[r][k]);
                piv = r;
            }
        if (best == 0.0) {
            det = 0.0;
            break;
        }
        if (piv != k) {
            for (int j = 0; j < d_; ++j) std::swap(m[k][j], m[piv][j]);
            det = -det;
        }
        det *= m[k][k];
        for (int r = k + 1; r < d_; ++r) {
            const double f = m[r][k] / m[k][k];
            if (f == 0.0) continue;
            for (int j = k + 1; j < d_; ++j) m[r][j] -= f * m[k][j];
        }
    }
    if (det < kDegeneracyThreshold)
        throw std::domain_error("Delta: moment determinant is negative (degenerate family)");
    if (det <= 0.0) return 0.0;
    return std::pow(det, 1.0 / (d_ - 1));
}

double capital_delta(const FluxSpec& spec, double a) {
    return DeltaEvaluator(spec)(a);
}

}  // namespace burgerslab
