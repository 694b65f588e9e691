#ifndef SUMRANK_SKEWPOLY_HPP
#define SUMRANK_SKEWPOLY_HPP

#include "sumrank/linalg.hpp"

namespace sumrank {

// Skew polynomial in F_{q^m}[x; sigma] with sigma the q-power Frobenius.
// coeffs[i] is the coefficient of x^i; trailing zeros stripped, so the zero
// polynomial is the empty list (degree -infinity).
struct SkewPoly {
    const Tower* tw = nullptr;
    std::vector<Elem> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    // -1 stands in for the -infinity sentinel of the zero polynomial.
    int degree() const { return (int)coeffs.size() - 1; }
};

SkewPoly make_skew_poly(const Tower& tw, std::vector<Elem> coeffs);
SkewPoly skew_monomial(const Tower& tw, u32 degree, Elem coeff = 1);

SkewPoly skew_add(const SkewPoly& f, const SkewPoly& g);
// Product under x * a = sigma(a) * x, i.e. x^i * a = sigma^i(a) * x^i.
SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g);

// Generalized operator evaluation f(beta)_mu = sum_i f_i sigma^i(beta) N_i(mu).
Elem op_eval(const SkewPoly& f, Elem beta, Elem mu);

// (f(beta_1)_{mu_1}, ..., f(beta_n)_{mu_1} | ... | f(beta_1)_{mu_t}, ...).
FVec multipoint_ev(const SkewPoly& f, const std::vector<Elem>& mus,
                   const std::vector<Elem>& betas);

}  // namespace sumrank

#endif
