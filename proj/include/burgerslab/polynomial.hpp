#pragma once

#include "burgerslab/util.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace burgerslab {

// Dense univariate polynomial, c[k] multiplies s^k.  Evaluation is Horner;
// coefficients are plain doubles (flux coefficients are user-supplied
// doubles to begin with).
struct Polynomial {
    std::vector<double> c;

    int degree() const {
        for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
            if (c[static_cast<size_t>(k)] != 0.0) return k;
        return -1;  // zero polynomial
    }

    double eval(double s) const {
        double acc = 0.0;
        for (size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];
        return acc;
    }

    Polynomial derivative() const {
        Polynomial d;
        if (c.size() <= 1) return d;
        d.c.resize(c.size() - 1);
        for (size_t k = 1; k < c.size(); ++k)
            d.c[k - 1] = static_cast<double>(k) * c[k];
        return d;
    }

    // Antiderivative vanishing at 0.
    Polynomial antiderivative() const {
        Polynomial a;
        a.c.resize(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); ++k)
            a.c[k + 1] = c[k] / static_cast<double>(k + 1);
        return a;
    }

    Polynomial operator*(const Polynomial& o) const {
        Polynomial p;
        if (c.empty() || o.c.empty()) return p;
        p.c.assign(c.size() + o.c.size() - 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j)
                p.c[i + j] += c[i] * o.c[j];
        return p;
    }
};

// All real roots of p inside [lo, hi], ascending.  Sign-change bracketing on
// a fine sample grid followed by bisection; adequate for the low-degree
// derivative polynomials this project feeds it (flux degree <= ~16).
std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi);

}  // namespace burgerslab
