#include "sumrank/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace sumrank {

// ---------------------------------------------------------------- utilities

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 mod) {
    return (u64)((__uint128_t)a * b % mod);
}

u64 powmod_u64(u64 a, u64 e, u64 mod) {
    u64 r = 1 % mod;
    a %= mod;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, mod);
        a = mulmod_u64(a, a, mod);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (n % a == 0) return n == a;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (fp::is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

// Dense F_p linear algebra on row-major u32 matrices.
struct FpMat {
    u32 rows = 0, cols = 0;
    std::vector<u32> a;
    FpMat() = default;
    FpMat(u32 r, u32 c) : rows(r), cols(c), a((size_t)r * c, 0) {}
    u32& at(u32 r, u32 c) { return a[(size_t)r * cols + c]; }
    u32 at(u32 r, u32 c) const { return a[(size_t)r * cols + c]; }
};

u32 fp_inv_scalar(u32 x, u32 p) {
    // p prime, x != 0
    u32 r = 1;
    u64 e = p - 2, b = x;
    while (e) {
        if (e & 1) r = (u32)((u64)r * b % p);
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Row-reduce `m` in place; returns rank; records pivot columns.
u32 fp_rref(FpMat& m, u32 p, std::vector<u32>* pivot_cols = nullptr) {
    u32 r = 0;
    for (u32 col = 0; col < m.cols && r < m.rows; ++col) {
        u32 piv = r;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (u32 c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(r, c));
        u32 iv = fp_inv_scalar(m.at(r, col), p);
        for (u32 c = 0; c < m.cols; ++c) m.at(r, c) = (u32)((u64)m.at(r, c) * iv % p);
        for (u32 i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            u32 f = m.at(i, col);
            if (!f) continue;
            for (u32 c = 0; c < m.cols; ++c)
                m.at(i, c) = (u32)((m.at(i, c) + (u64)(p - f) * m.at(r, c)) % p);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++r;
    }
    return r;
}

// Nullspace basis of m (as column vectors of length m.cols).
std::vector<std::vector<u32>> fp_kernel(FpMat m, u32 p) {
    std::vector<u32> pivots;
    fp_rref(m, p, &pivots);
    std::vector<bool> is_pivot(m.cols, false);
    for (u32 c : pivots) is_pivot[c] = true;
    std::vector<std::vector<u32>> basis;
    for (u32 fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<u32> v(m.cols, 0);
        v[fc] = 1;
        for (u32 i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = (p - m.at(i, fc)) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Inverse of a square matrix.
FpMat fp_invert(const FpMat& m, u32 p) {
    FpMat aug(m.rows, 2 * m.cols);
    for (u32 r = 0; r < m.rows; ++r) {
        for (u32 c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols + r) = 1;
    }
    u32 rank = fp_rref(aug, p);
    if (rank != m.rows) throw ValidationError("matrix not invertible over F_p");
    FpMat inv(m.rows, m.cols);
    for (u32 r = 0; r < m.rows; ++r)
        for (u32 c = 0; c < m.cols; ++c) inv.at(r, c) = aug.at(r, m.cols + c);
    return inv;
}

FpMat fp_mul(const FpMat& a, const FpMat& b, u32 p) {
    FpMat r(a.rows, b.cols);
    for (u32 i = 0; i < a.rows; ++i)
        for (u32 k = 0; k < a.cols; ++k) {
            u32 f = a.at(i, k);
            if (!f) continue;
            for (u32 j = 0; j < b.cols; ++j)
                r.at(i, j) = (u32)((r.at(i, j) + (u64)f * b.at(k, j)) % p);
        }
    return r;
}

void fp_matvec(const std::vector<u32>& mat, u32 n, const u32* v, u32* out, u32 p) {
    for (u32 r = 0; r < n; ++r) {
        u64 s = 0;
        const u32* row = mat.data() + (size_t)r * n;
        for (u32 c = 0; c < n; ++c) s += (u64)row[c] * v[c];
        out[r] = (u32)(s % p);
    }
}

}  // namespace

std::vector<u64> prime_factors_distinct(u64 n) {
    std::vector<u64> all;
    factor_rec(n, all);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// ---------------------------------------------------------------- fp::

namespace fp {

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == a) return true;
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

static Poly pmod(Poly a, const Poly& mod, u32 p) {
    // mod is monic
    while (a.size() >= mod.size()) {
        u32 c = a.back();
        if (c) {
            size_t off = a.size() - mod.size();
            for (size_t i = 0; i < mod.size(); ++i)
                a[off + i] = (u32)((a[off + i] + (u64)(p - c % p) * mod[i]) % p);
        }
        a.pop_back();
    }
    return trim(std::move(a));
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, u32 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (u32)((r[i + j] + (u64)a[i] * b[j]) % p);
    }
    return pmod(std::move(r), mod, p);
}

Poly powmod(Poly a, u64 e, const Poly& mod, u32 p) {
    Poly r{1};
    a = pmod(std::move(a), mod, p);
    while (e) {
        if (e & 1) r = mulmod(r, a, mod, p);
        a = mulmod(a, a, mod, p);
        e >>= 1;
    }
    return r;
}

static Poly pgcd(Poly a, Poly b, u32 p) {
    while (!b.empty()) {
        u32 iv = fp_inv_scalar(b.back(), p);
        Poly bm = b;
        for (auto& c : bm) c = (u32)((u64)c * iv % p);
        a = pmod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

static Poly psub(const Poly& a, const Poly& b, u32 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 av = i < a.size() ? a[i] : 0;
        u32 bv = i < b.size() ? b[i] : 0;
        r[i] = (av + p - bv) % p;
    }
    return trim(std::move(r));
}

bool is_irreducible(const Poly& f, u32 p) {
    u32 d = (u32)f.size() - 1;
    if (d == 0) return false;
    Poly x{0, 1};
    Poly xr = pmod(x, f, p);  // reduce: matters for degree-1 moduli
    // x^(p^d) == x mod f
    Poly xp = xr;
    for (u32 i = 0; i < d; ++i) xp = powmod(xp, p, f, p);
    if (!psub(xp, xr, p).empty()) return false;
    for (u64 l : prime_factors_distinct(d)) {
        Poly xe = x;
        for (u64 i = 0; i < d / l; ++i) xe = powmod(xe, p, f, p);
        Poly g = pgcd(psub(xe, x, p), f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

Poly lex_first_irreducible(u32 p, u32 d) {
    u64 count = 1;
    for (u32 i = 0; i < d; ++i) {
        count *= p;
        if (count > (u64(1) << 26))
            throw GuardExceeded("modulus search space too large");
    }
    for (u64 c = 0; c < count; ++c) {
        Poly f(d + 1, 0);
        u64 cc = c;
        for (u32 i = 0; i < d; ++i) {
            f[i] = cc % p;
            cc /= p;
        }
        f[d] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw ValidationError("no irreducible polynomial found");
}

}  // namespace fp

// ---------------------------------------------------------------- SmallField

SmallField::SmallField(u32 p, const fp::Poly& modulus)
    : p_(p), e_((u32)modulus.size() - 1), modulus_(modulus) {
    u64 q = 1;
    for (u32 i = 0; i < e_; ++i) {
        q *= p;
        if (q > (u64(1) << 20)) throw GuardExceeded("base field too large to tabulate");
    }
    q_ = (u32)q;
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    auto enc = [&](const fp::Poly& f) {
        u32 v = 0;
        for (size_t i = f.size(); i-- > 0;) v = v * p_ + f[i];
        return v;
    };
    auto dec = [&](u32 v) {
        fp::Poly f;
        while (v) {
            f.push_back(v % p_);
            v /= p_;
        }
        return f;
    };
    // smallest primitive element
    auto factors = prime_factors_distinct(q_ - 1);
    gen_ = 0;
    for (u32 cand = q_ >= 3 ? 2 : 1; cand < q_; ++cand) {
        bool ok = true;
        for (u64 l : factors)
            if (enc(fp::powmod(dec(cand), (q_ - 1) / l, modulus_, p_)) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen_ = cand;
            break;
        }
    }
    if (q_ == 2) gen_ = 1;
    fp::Poly cur{1};
    fp::Poly g = dec(gen_);
    for (u32 i = 0; i < q_ - 1; ++i) {
        u32 v = enc(cur);
        exp_[i] = v;
        log_[v] = i;
        cur = fp::mulmod(cur, g, modulus_, p_);
    }
}

u32 SmallField::add(u32 a, u32 b) const {
    if (p_ == 2) return a ^ b;
    u32 r = 0, mul = 1;
    for (u32 i = 0; i < e_; ++i) {
        r += (a % p_ + b % p_) % p_ * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return r;
}

u32 SmallField::neg(u32 a) const {
    if (p_ == 2) return a;
    u32 r = 0, mul = 1;
    for (u32 i = 0; i < e_; ++i) {
        r += (p_ - a % p_) % p_ * mul;
        a /= p_;
        mul *= p_;
    }
    return r;
}

u32 SmallField::inv(u32 a) const {
    if (a == 0) throw ValidationError("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

u32 SmallField::pow(u32 a, u64 exp) const {
    if (a == 0) return exp == 0 ? 1 : 0;
    return exp_[(u64)((__uint128_t)log_[a] * exp % (q_ - 1))];
}

// ---------------------------------------------------------------- Tower

Tower::Tower(u32 p, u32 e, u32 m, u64 table_limit)
    : p_(p), e_(e), m_(m), em_(e * m), base_(p, fp::lex_first_irreducible(p, e)) {
    if (!fp::is_prime_u64(p)) throw ValidationError("p is not prime");
    if (e < 1 || m < 1) throw ValidationError("e and m must be >= 1");
    order_ = 1;
    for (u32 i = 0; i < em_; ++i) {
        if (order_ > (u64(1) << 48) / p) throw GuardExceeded("p^{em} exceeds 2^48");
        order_ *= p;
    }
    q_ = 1;
    for (u32 i = 0; i < e_; ++i) q_ *= p;
    base_modulus_ = base_.modulus();
    top_modulus_ = fp::lex_first_irreducible(p, em_);

    // reduction rows: z^(em+i) mod top_modulus
    red_.assign(em_ ? em_ : 1, std::vector<u32>(em_, 0));
    {
        std::vector<u32> cur(em_, 0);  // z^em mod top
        for (u32 j = 0; j < em_; ++j) cur[j] = (p_ - top_modulus_[j] % p_) % p_;
        red_[0] = cur;
        for (u32 i = 1; i < em_; ++i) {
            std::vector<u32> nxt(em_, 0);
            u32 carry = cur[em_ - 1];
            for (u32 j = em_ - 1; j > 0; --j) nxt[j] = cur[j - 1];
            nxt[0] = 0;
            if (carry)
                for (u32 j = 0; j < em_; ++j)
                    nxt[j] = (u32)((nxt[j] + (u64)carry * red_[0][j]) % p_);
            red_[i] = nxt;
            cur = nxt;
        }
    }

    factors_ = prime_factors_distinct(order_ - 1);

    // smallest primitive element via generic arithmetic
    generator_ = 0;
    if (order_ == 2) {
        generator_ = 1;
    } else {
        for (Elem cand = 2; cand < order_; ++cand) {
            bool ok = true;
            for (u64 l : factors_) {
                Elem t = 1, b = cand;
                u64 ex = (order_ - 1) / l;
                while (ex) {
                    if (ex & 1) t = mul_generic(t, b);
                    b = mul_generic(b, b);
                    ex >>= 1;
                }
                if (t == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                generator_ = cand;
                break;
            }
        }
        if (!generator_) throw ValidationError("no primitive element found");
    }

    if (order_ <= table_limit) {
        exp_.assign(order_ - 1, 0);
        log_.assign(order_, 0);
        Elem cur = 1;
        for (u64 i = 0; i < order_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = (u32)i;
            cur = mul_generic(cur, generator_);
        }
        tabled_ = true;
    }

    // x -> x^q matrix over F_p (columns are images of z^i)
    frob_q_mat_.assign((size_t)em_ * em_, 0);
    {
        Elem z = em_ > 1 ? (Elem)p_ : (Elem)(0);  // canonical int of z
        std::vector<u32> dig(em_);
        for (u32 i = 0; i < em_; ++i) {
            Elem zi = 1;
            if (em_ > 1)
                for (u32 t = 0; t < i; ++t) zi = mul(zi, z);
            Elem img = pow(zi, q_);
            decode(img, dig.data());
            for (u32 r = 0; r < em_; ++r) frob_q_mat_[(size_t)r * em_ + i] = dig[r];
        }
    }

    // embedding of F_q: smallest root of base_modulus in the big field
    if (e_ == 1) {
        w_ = 0;  // base_modulus = z; the embedding is the scalar one
    } else {
        FpMat phi(em_, em_);
        std::vector<u32> dig(em_);
        Elem z = (Elem)p_;
        for (u32 i = 0; i < em_; ++i) {
            Elem zi = 1;
            for (u32 t = 0; t < i; ++t) zi = mul(zi, z);
            Elem img = pow(zi, p_);
            decode(img, dig.data());
            for (u32 r = 0; r < em_; ++r) phi.at(r, i) = dig[r];
        }
        // phi^e - id
        FpMat pe = phi;
        for (u32 t = 1; t < e_; ++t) pe = fp_mul(pe, phi, p_);
        for (u32 i = 0; i < em_; ++i) pe.at(i, i) = (pe.at(i, i) + p_ - 1) % p_;
        auto kern = fp_kernel(pe, p_);
        if (kern.size() != e_) throw ValidationError("subfield copy has wrong dimension");
        // enumerate copy, find roots of base_modulus
        std::vector<Elem> kbasis;
        for (auto& v : kern) kbasis.push_back(encode(v.data()));
        Elem best = 0;
        bool found = false;
        std::vector<u32> cnt(e_, 0);
        Elem acc = 0;
        // plain odometer over F_p digits
        u64 total = q_;
        for (u64 it = 1; it < total; ++it) {
            u32 d = 0;
            while (true) {
                cnt[d]++;
                acc = add(acc, kbasis[d]);
                if (cnt[d] < p_) break;
                cnt[d] = 0;
                // acc now has p copies of kbasis[d] added since last reset: they sum to 0
                ++d;
            }
            // evaluate base_modulus at acc (Horner)
            Elem val = 0;
            for (size_t i = base_modulus_.size(); i-- > 0;)
                val = add(mul(val, acc), base_modulus_[i] % p_);
            if (val == 0 && (!found || acc < best)) {
                best = acc;
                found = true;
            }
        }
        if (!found) throw ValidationError("no root of base modulus in big field");
        w_ = best;
    }
    w_powers_.assign(e_, 1);
    for (u32 a = 1; a < e_; ++a) w_powers_[a] = mul(w_powers_[a - 1], w_);
    if (q_ <= (u64(1) << 16)) {
        embed_table_.assign(q_, 0);
        for (u64 c = 0; c < q_; ++c) {
            Elem s = 0;
            u64 cc = c;
            for (u32 a = 0; a < e_; ++a) {
                u32 ca = (u32)(cc % p_);
                cc /= p_;
                if (ca) {
                    Elem t = w_powers_[a];
                    for (u32 rep = 1; rep < ca; ++rep) t = add(t, w_powers_[a]);
                    s = add(s, t);
                }
            }
            embed_table_[c] = s;
        }
    }

    // coordinate solver for the basis {w^a z^j}
    {
        FpMat M(em_, em_);
        std::vector<u32> dig(em_);
        Elem z = em_ > 1 ? (Elem)p_ : (Elem)0;
        Elem zj = 1;
        for (u32 j = 0; j < m_; ++j) {
            for (u32 a = 0; a < e_; ++a) {
                Elem el = mul(w_powers_[a], zj);
                decode(el, dig.data());
                for (u32 r = 0; r < em_; ++r) M.at(r, (size_t)j * e_ + a) = dig[r];
            }
            if (j + 1 < m_) zj = mul(zj, z);
        }
        FpMat inv = fp_invert(M, p_);
        coords_inv_ = inv.a;
    }
}

void Tower::decode(Elem x, u32* digits) const {
    for (u32 i = 0; i < em_; ++i) {
        digits[i] = (u32)(x % p_);
        x /= p_;
    }
}

Elem Tower::encode(const u32* digits) const {
    Elem v = 0;
    for (u32 i = em_; i-- > 0;) v = v * p_ + digits[i];
    return v;
}

void Tower::check_elem(Elem a) const {
    if (a >= order_) throw ValidationError("element out of range for tower");
}

Elem Tower::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem r = 0, mul = 1;
    for (u32 i = 0; i < em_; ++i) {
        r += (a % p_ + b % p_) % p_ * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return r;
}

Elem Tower::neg(Elem a) const {
    if (p_ == 2) return a;
    Elem r = 0, mul = 1;
    for (u32 i = 0; i < em_; ++i) {
        r += (p_ - a % p_) % p_ * mul;
        a /= p_;
        mul *= p_;
    }
    return r;
}

Elem Tower::mul_generic(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    u32 da[64], db[64];
    u64 acc[128] = {0};
    decode(a, da);
    decode(b, db);
    for (u32 i = 0; i < em_; ++i) {
        if (!da[i]) continue;
        for (u32 j = 0; j < em_; ++j) acc[i + j] += (u64)da[i] * db[j];
    }
    for (u32 i = 2 * em_ - 1; i-- > em_;) {
        u32 c = (u32)(acc[i] % p_);
        if (c) {
            const auto& row = red_[i - em_];
            for (u32 j = 0; j < em_; ++j) acc[j] += (u64)c * row[j];
        }
    }
    u32 out[64];
    for (u32 j = 0; j < em_; ++j) out[j] = (u32)(acc[j] % p_);
    return encode(out);
}

Elem Tower::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (tabled_) return exp_[((u64)log_[a] + log_[b]) % (order_ - 1)];
    return mul_generic(a, b);
}

Elem Tower::inv(Elem a) const {
    if (a == 0) throw ValidationError("inverse of zero");
    if (tabled_) return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
    return pow(a, order_ - 2);
}

Elem Tower::pow(Elem a, u64 exp) const {
    if (a == 0) return exp == 0 ? 1 : 0;
    if (tabled_) return exp_[(u64)((__uint128_t)log_[a] * (exp % (order_ - 1)) % (order_ - 1))];
    Elem r = 1;
    while (exp) {
        if (exp & 1) r = mul_generic(r, a);
        a = mul_generic(a, a);
        exp >>= 1;
    }
    return r;
}

Elem Tower::frobenius(Elem x, u64 s) const {
    s %= m_;
    if (s == 0 || x == 0 || x == 1) return x;
    if (tabled_) {
        u64 qs = 1;
        for (u64 i = 0; i < s; ++i) qs = (u64)((__uint128_t)qs * q_ % (order_ - 1));
        return exp_[(u64)((__uint128_t)log_[x] * qs % (order_ - 1))];
    }
    u32 dig[64], out[64];
    decode(x, dig);
    for (u64 i = 0; i < s; ++i) {
        fp_matvec(frob_q_mat_, em_, dig, out, p_);
        std::copy(out, out + em_, dig);
    }
    return encode(dig);
}

Elem Tower::rel_norm(Elem x, u32 r) const {
    if (r == 0 || m_ % r != 0) throw ValidationError("r does not divide m");
    if (x == 0) return 0;
    u64 qr = 1;
    for (u32 i = 0; i < r; ++i) qr *= q_;
    return pow(x, (order_ - 1) / (qr - 1));
}

Elem Tower::subfield_norm(Elem x, u32 from_r, u32 to_r) const {
    if (from_r == 0 || to_r == 0 || m_ % from_r != 0 || from_r % to_r != 0)
        throw ValidationError("invalid subfield chain for norm");
    if (!subfield_member(x, from_r))
        throw ValidationError("element not in the source subfield of the norm");
    if (x == 0) return 0;
    u64 qf = 1, qt = 1;
    for (u32 i = 0; i < from_r; ++i) qf *= q_;
    for (u32 i = 0; i < to_r; ++i) qt *= q_;
    return pow(x, (qf - 1) / (qt - 1));
}

Elem Tower::rel_trace(Elem x) const {
    Elem s = 0;
    for (u32 i = 0; i < m_; ++i) s = add(s, frobenius(x, i));
    return s;
}

Elem Tower::partial_norm(Elem mu, u64 i) const {
    Elem r = 1;
    for (u64 j = 0; j < i; ++j) r = mul(r, frobenius(mu, j));
    return r;
}

bool Tower::subfield_member(Elem x, u32 r) const {
    if (r == 0 || m_ % r != 0) throw ValidationError("r does not divide m");
    return frobenius(x, r) == x;
}

Elem Tower::embed_base(u32 c) const {
    if (c >= q_) throw ValidationError("F_q integer out of range");
    if (!embed_table_.empty()) return embed_table_[c];
    Elem s = 0;
    for (u32 a = 0; a < e_; ++a) {
        u32 ca = c % p_;
        c /= p_;
        for (u32 rep = 0; rep < ca; ++rep) s = add(s, w_powers_[a]);
    }
    return s;
}

void Tower::to_base_coords_into(Elem x, u32* out) const {
    u32 dig[64], coords[64];
    decode(x, dig);
    fp_matvec(coords_inv_, em_, dig, coords, p_);
    for (u32 j = 0; j < m_; ++j) {
        u32 c = 0;
        for (u32 a = e_; a-- > 0;) c = c * p_ + coords[(size_t)j * e_ + a];
        out[j] = c;
    }
}

std::vector<u32> Tower::to_base_coords(Elem x) const {
    std::vector<u32> out(m_);
    to_base_coords_into(x, out.data());
    return out;
}

Elem Tower::from_base_coords(const std::vector<u32>& coords) const {
    if (coords.size() != m_) throw ValidationError("coordinate vector has wrong length");
    Elem z = em_ > 1 ? (Elem)p_ : (Elem)0;
    Elem zj = 1, s = 0;
    for (u32 j = 0; j < m_; ++j) {
        s = add(s, mul(embed_base(coords[j]), zj));
        if (j + 1 < m_) zj = mul(zj, z);
    }
    return s;
}

u32 Tower::base_int(Elem x) const {
    auto c = to_base_coords(x);
    for (u32 j = 1; j < m_; ++j)
        if (c[j] != 0) throw ValidationError("element not in the embedded F_q");
    return c[0];
}

std::vector<Elem> Tower::subfield_copy_basis(u32 r, u64 /*enumeration_guard*/) const {
    if (r == 0 || m_ % r != 0) throw ValidationError("r does not divide m");
    u32 d = e_ * r;
    // kernel of (x -> x^{p^d}) - id over F_p
    FpMat mat(em_, em_);
    std::vector<u32> dig(em_);
    Elem z = em_ > 1 ? (Elem)p_ : (Elem)0;
    u64 pd = 1;
    for (u32 i = 0; i < d; ++i) pd *= p_;
    Elem zi = 1;
    for (u32 i = 0; i < em_; ++i) {
        Elem img = pow(zi, pd);
        decode(img, dig.data());
        for (u32 rr = 0; rr < em_; ++rr) mat.at(rr, i) = dig[rr];
        if (i + 1 < em_) zi = mul(zi, z);
    }
    for (u32 i = 0; i < em_; ++i) mat.at(i, i) = (mat.at(i, i) + p_ - 1) % p_;
    auto kern = fp_kernel(mat, p_);
    if (kern.size() != d) throw ValidationError("subfield copy has wrong dimension");
    std::vector<Elem> basis;
    for (auto& v : kern) basis.push_back(encode(v.data()));
    return basis;
}

std::vector<Elem> Tower::subfield_copy_elements(u32 r, u64 enumeration_guard) const {
    auto basis = subfield_copy_basis(r, enumeration_guard);
    u64 count = 1;
    for (size_t i = 0; i < basis.size(); ++i) {
        count *= p_;
        check_guard(count, enumeration_guard, "element enumeration");
    }
    std::vector<Elem> out;
    out.reserve(count);
    out.push_back(0);
    std::vector<u32> cnt(basis.size(), 0);
    Elem acc = 0;
    for (u64 it = 1; it < count; ++it) {
        u32 dpos = 0;
        while (true) {
            cnt[dpos]++;
            acc = add(acc, basis[dpos]);
            if (cnt[dpos] < p_) break;
            cnt[dpos] = 0;
            ++dpos;
        }
        out.push_back(acc);
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 Tower::mult_order(Elem x) const {
    if (x == 0) throw ValidationError("order of zero");
    u64 o = order_ - 1;
    for (u64 l : factors_)
        while (o % l == 0 && pow(x, o / l) == 1) o /= l;
    return o;
}

// ---------------------------------------------------------------- cache

namespace {
std::map<std::array<u32, 3>, std::shared_ptr<Tower>>& tower_registry() {
    static std::map<std::array<u32, 3>, std::shared_ptr<Tower>> reg;
    return reg;
}
std::mutex tower_mutex;
}  // namespace

const Tower& get_tower(u32 p, u32 e, u32 m) {
    std::lock_guard<std::mutex> lock(tower_mutex);
    auto key = std::array<u32, 3>{p, e, m};
    auto& reg = tower_registry();
    auto it = reg.find(key);
    if (it == reg.end()) it = reg.emplace(key, std::make_shared<Tower>(p, e, m)).first;
    return *it->second;
}

std::shared_ptr<Tower> make_tower(u32 p, u32 e, u32 m, std::optional<u64> /*seed*/) {
    return std::make_shared<Tower>(p, e, m);
}

// ---------------------------------------------------------------- SubfieldMap

SubfieldMap::SubfieldMap(const Tower& small, const Tower& big, u64 enumeration_guard)
    : small_(&small), big_(&big), d_(small.em()) {
    if (small.p() != big.p()) throw ValidationError("subfield map requires equal characteristic");
    if (big.em() % d_ != 0) throw ValidationError("degree does not divide");
    u32 p = big.p(), n = big.em();
    // F_{p^d}-copy inside big: kernel of phi_p^d - id
    FpMat mat(n, n);
    std::vector<u32> dig(n);
    Elem z = n > 1 ? (Elem)p : (Elem)0;
    u64 pd = 1;
    for (u32 i = 0; i < d_; ++i) pd *= p;
    Elem zi = 1;
    for (u32 i = 0; i < n; ++i) {
        Elem img = big.pow(zi, pd);
        std::vector<u32> dv(n);
        {
            Elem x = img;
            for (u32 t = 0; t < n; ++t) {
                dv[t] = (u32)(x % p);
                x /= p;
            }
        }
        for (u32 r = 0; r < n; ++r) mat.at(r, i) = dv[r];
        if (i + 1 < n) zi = big.mul(zi, z);
    }
    for (u32 i = 0; i < n; ++i) mat.at(i, i) = (mat.at(i, i) + p - 1) % p;
    auto kern = fp_kernel(mat, p);
    if (kern.size() != d_) throw ValidationError("copy has wrong dimension");
    std::vector<Elem> kbasis;
    for (auto& v : kern) {
        Elem x = 0;
        for (u32 i = n; i-- > 0;) x = x * p + v[i];
        kbasis.push_back(x);
    }
    // enumerate the copy, find smallest root of small.top_modulus
    u64 count = 1;
    for (u32 i = 0; i < d_; ++i) {
        count *= p;
        check_guard(count, enumeration_guard, "element enumeration");
    }
    const auto& f = small.top_modulus();
    Elem best = 0;
    bool found = false;
    std::vector<u32> cnt(d_, 0);
    Elem acc = 0;
    for (u64 it = 1; it < count; ++it) {
        u32 dpos = 0;
        while (true) {
            cnt[dpos]++;
            acc = big.add(acc, kbasis[dpos]);
            if (cnt[dpos] < p) break;
            cnt[dpos] = 0;
            ++dpos;
        }
        Elem val = 0;
        for (size_t i = f.size(); i-- > 0;) val = big.add(big.mul(val, acc), f[i] % p);
        if (val == 0 && (!found || acc < best)) {
            best = acc;
            found = true;
        }
    }
    if (!found && d_ == 1) {
        // degree-1 modulus z: root 0
        best = 0;
        found = true;
    }
    if (!found) throw ValidationError("no root of small modulus in big tower");
    root_powers_.assign(d_, 1);
    for (u32 i = 1; i < d_; ++i) root_powers_[i] = big.mul(root_powers_[i - 1], best);

    // decomposition solver: rref([M | I]) with M columns = digits(root^i)
    FpMat aug(n, d_ + n);
    for (u32 c = 0; c < d_; ++c) {
        Elem x = root_powers_[c];
        for (u32 r = 0; r < n; ++r) {
            aug.at(r, c) = (u32)(x % p);
            x /= p;
        }
    }
    for (u32 r = 0; r < n; ++r) aug.at(r, d_ + r) = 1;
    std::vector<u32> pivots;
    fp_rref(aug, p, &pivots);
    u32 rank = 0;
    for (u32 c : pivots)
        if (c < d_) ++rank;
    if (rank != d_) throw ValidationError("root powers not independent");
    solver_.assign((size_t)n * n, 0);
    for (u32 r = 0; r < n; ++r)
        for (u32 c = 0; c < n; ++c) solver_[(size_t)r * n + c] = aug.at(r, d_ + c);
    pivot_rows_.assign(n, 0);  // identity row order after rref: rows 0..d-1 hold coords
}

Elem SubfieldMap::embed(Elem x_small) const {
    small_->check_elem(x_small);
    u32 p = small_->p();
    Elem s = 0;
    for (u32 i = 0; i < d_; ++i) {
        u32 digit = (u32)(x_small % p);
        x_small /= p;
        for (u32 rep = 0; rep < digit; ++rep) s = big_->add(s, root_powers_[i]);
    }
    return s;
}

Elem SubfieldMap::decompose(Elem x_big) const {
    u32 p = big_->p(), n = big_->em();
    u32 dig[64], out[64];
    {
        Elem x = x_big;
        for (u32 t = 0; t < n; ++t) {
            dig[t] = (u32)(x % p);
            x /= p;
        }
    }
    fp_matvec(solver_, n, dig, out, p);
    for (u32 r = d_; r < n; ++r)
        if (out[r] != 0) throw ValidationError("element not in the subfield copy");
    Elem v = 0;
    for (u32 i = d_; i-- > 0;) v = v * p + out[i];
    small_->check_elem(v);
    return v;
}

bool SubfieldMap::in_copy(Elem x_big) const {
    u64 pd = 1;
    for (u32 i = 0; i < d_; ++i) pd *= big_->p();
    return big_->pow(x_big, pd) == x_big;
}

}  // namespace sumrank
