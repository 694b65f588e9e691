#include "sumrank/skewpoly.hpp"

namespace sumrank {

SkewPoly make_skew_poly(const Tower& tw, std::vector<Elem> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    for (Elem c : coeffs) tw.check_elem(c);
    return SkewPoly{&tw, std::move(coeffs)};
}

SkewPoly skew_monomial(const Tower& tw, u32 degree, Elem coeff) {
    std::vector<Elem> c(degree + 1, 0);
    c[degree] = coeff;
    return make_skew_poly(tw, std::move(c));
}

SkewPoly skew_add(const SkewPoly& f, const SkewPoly& g) {
    if (f.tw != g.tw) throw ValidationError("tower mismatch");
    const Tower& tw = *f.tw;
    std::vector<Elem> c(std::max(f.coeffs.size(), g.coeffs.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        Elem a = i < f.coeffs.size() ? f.coeffs[i] : 0;
        Elem b = i < g.coeffs.size() ? g.coeffs[i] : 0;
        c[i] = tw.add(a, b);
    }
    return make_skew_poly(tw, std::move(c));
}

SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g) {
    if (f.tw != g.tw) throw ValidationError("tower mismatch");
    const Tower& tw = *f.tw;
    if (f.is_zero() || g.is_zero()) return SkewPoly{&tw, {}};
    std::vector<Elem> c(f.coeffs.size() + g.coeffs.size() - 1, 0);
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i] == 0) continue;
        for (size_t j = 0; j < g.coeffs.size(); ++j) {
            if (g.coeffs[j] == 0) continue;
            // (f_i x^i)(g_j x^j) = f_i sigma^i(g_j) x^{i+j}
            Elem term = tw.mul(f.coeffs[i], tw.frobenius(g.coeffs[j], i));
            c[i + j] = tw.add(c[i + j], term);
        }
    }
    return make_skew_poly(tw, std::move(c));
}

Elem op_eval(const SkewPoly& f, Elem beta, Elem mu) {
    const Tower& tw = *f.tw;
    Elem acc = 0, ni = 1;  // N_0(mu) = 1
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i] != 0)
            acc = tw.add(acc, tw.mul(f.coeffs[i], tw.mul(tw.frobenius(beta, i), ni)));
        ni = tw.mul(ni, tw.frobenius(mu, i));  // N_{i+1} = N_i * sigma^i(mu)
    }
    return acc;
}

FVec multipoint_ev(const SkewPoly& f, const std::vector<Elem>& mus,
                   const std::vector<Elem>& betas) {
    FVec out;
    out.reserve(mus.size() * betas.size());
    for (Elem mu : mus)
        for (Elem beta : betas) out.push_back(op_eval(f, beta, mu));
    return out;
}

}  // namespace sumrank
