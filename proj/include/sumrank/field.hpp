#ifndef SUMRANK_FIELD_HPP
#define SUMRANK_FIELD_HPP

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "sumrank/util.hpp"

namespace sumrank {

// Field elements are canonical integers: the little-endian base-p value of
// the coefficient vector of the polynomial representation. This integer
// order is the canonical element order used everywhere ("smallest root",
// "first witness", hyperplane streams, ...).
using Elem = u64;

namespace fp {
// Polynomials over F_p, little-endian coefficient vectors, trimmed.
using Poly = std::vector<u32>;
Poly trim(Poly f);
Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, u32 p);
Poly powmod(Poly a, u64 e, const Poly& mod, u32 p);
bool is_irreducible(const Poly& f, u32 p);
// First irreducible monic polynomial of degree d in canonical order.
Poly lex_first_irreducible(u32 p, u32 d);
bool is_prime_u64(u64 n);
}  // namespace fp

// Exact arithmetic in F_q, q = p^e, elements as canonical integers < q.
class SmallField {
public:
    SmallField(u32 p, const fp::Poly& modulus);

    u32 p() const { return p_; }
    u32 e() const { return e_; }
    u32 q() const { return q_; }
    u32 generator() const { return gen_; }
    const fp::Poly& modulus() const { return modulus_; }

    u32 add(u32 a, u32 b) const;
    u32 neg(u32 a) const;
    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
    u32 mul(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    u32 inv(u32 a) const;
    u32 pow(u32 a, u64 exp) const;
    bool is_zero(u32 a) const { return a == 0; }
    u32 one() const { return 1; }
    u32 zero() const { return 0; }

private:
    u32 p_, e_, q_, gen_;
    fp::Poly modulus_;
    std::vector<u32> exp_, log_;
};

// The tower F_p <= F_q <= F_{q^m} with q = p^e, realized as
// F_p[z]/(top_modulus) with deg(top_modulus) = e*m and a distinguished
// embedded copy of F_q = F_p[y]/(base_modulus). Immutable after
// construction; safe to share across threads.
class Tower {
public:
    // Deterministic for fixed (p, e, m): moduli are the lexicographically
    // first irreducible polynomials, the embedding maps a root of
    // base_modulus to its smallest root in the big field, and the stored
    // generator is the smallest primitive element.
    Tower(u32 p, u32 e, u32 m, u64 table_limit = u64(1) << 21);

    u32 p() const { return p_; }
    u32 e() const { return e_; }
    u32 m() const { return m_; }
    u32 em() const { return em_; }
    u64 q() const { return q_; }
    u64 order() const { return order_; }
    Elem generator() const { return generator_; }
    const fp::Poly& base_modulus() const { return base_modulus_; }
    const fp::Poly& top_modulus() const { return top_modulus_; }
    const SmallField& base() const { return base_; }
    bool same_as(const Tower& o) const { return this == &o; }

    // ---- element arithmetic (canonical integers) ----
    Elem add(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, u64 exp) const;
    bool is_zero(Elem a) const { return a == 0; }
    Elem one() const { return 1; }
    Elem zero() const { return 0; }
    void check_elem(Elem a) const;

    // x^(q^s); sigma is fixed per tower as x -> x^q.
    Elem frobenius(Elem x, u64 s) const;
    // N_{q^m/q^r}(x) = x^((q^m-1)/(q^r-1)) for x != 0; requires r | m.
    Elem rel_norm(Elem x, u32 r) const;
    // Norm between intermediate subfields F_{q^to} <= F_{q^from} <= F_{q^m};
    // requires x in the F_{q^from}-copy.
    Elem subfield_norm(Elem x, u32 from_r, u32 to_r) const;
    // Tr_{q^m/q}(x) = sum_{i<m} x^(q^i); lands in the F_q-copy.
    Elem rel_trace(Elem x) const;
    // N_i(mu) = prod_{j<i} mu^(q^j); N_0 = 1.
    Elem partial_norm(Elem mu, u64 i) const;
    // true iff x^(q^r) = x; requires r | m.
    bool subfield_member(Elem x, u32 r) const;

    // ---- the embedded F_q and the recorded basis {1, z, ..., z^{m-1}} ----
    // F_q-int (< q) -> element of the F_q-copy.
    Elem embed_base(u32 c) const;
    // Inverse of embed_base; requires membership in the copy.
    u32 base_int(Elem x) const;
    // Coordinates of x over the recorded F_q-basis of F_{q^m}, as F_q-ints.
    std::vector<u32> to_base_coords(Elem x) const;
    Elem from_base_coords(const std::vector<u32>& coords) const;
    void to_base_coords_into(Elem x, u32* out) const;

    // F_p-basis of the F_{q^r}-copy (e*r vectors); guard on p^(e*r).
    std::vector<Elem> subfield_copy_basis(u32 r, u64 enumeration_guard) const;
    // All elements of the F_{q^r}-copy in canonical order; guard applies.
    std::vector<Elem> subfield_copy_elements(u32 r, u64 enumeration_guard) const;

    // Multiplicative order of x (x != 0).
    u64 mult_order(Elem x) const;

private:
    u32 p_, e_, m_, em_;
    u64 q_, order_;
    fp::Poly base_modulus_, top_modulus_;
    SmallField base_;
    Elem generator_ = 0;
    Elem w_ = 0;  // smallest root of base_modulus in the big field
    std::vector<Elem> w_powers_;
    std::vector<u32> embed_table_;  // F_q-int -> copy element (q <= 2^16)

    bool tabled_ = false;
    std::vector<u64> exp_;
    std::vector<u32> log_;
    std::vector<std::vector<u32>> red_;  // digits of z^(em+i) mod top_modulus
    std::vector<u32> frob_q_mat_;        // em x em matrix of x -> x^q over F_p
    std::vector<u32> coords_inv_;        // em x em inverse of the {w^a z^j} basis
    std::vector<u64> factors_;           // distinct prime factors of order-1

    void decode(Elem x, u32* digits) const;
    Elem encode(const u32* digits) const;
    Elem mul_generic(Elem a, Elem b) const;
    friend class TowerBuilder;
};

// Process-wide cache of towers keyed by (p, e, m); towers are immutable.
const Tower& get_tower(u32 p, u32 e, u32 m);

// Spec operation: construct a tower. `seed` is accepted for reproducibility
// bookkeeping but the construction is fully deterministic and ignores it.
std::shared_ptr<Tower> make_tower(u32 p, u32 e, u32 m,
                                  std::optional<u64> seed = std::nullopt);

// Canonical isomorphism from a standalone small tower onto its copy inside
// a big tower over the same p: the standalone generator z_S is sent to the
// smallest root of S.top_modulus inside the copy.
class SubfieldMap {
public:
    SubfieldMap(const Tower& small, const Tower& big, u64 enumeration_guard);

    const Tower& small() const { return *small_; }
    const Tower& big() const { return *big_; }
    Elem embed(Elem x_small) const;
    // Requires membership in the copy.
    Elem decompose(Elem x_big) const;
    bool in_copy(Elem x_big) const;

private:
    const Tower* small_;
    const Tower* big_;
    u32 d_;                          // = small.em
    std::vector<Elem> root_powers_;  // images of z_S^i
    std::vector<u32> solver_;        // row-reduced transform, d x big.em
    std::vector<u32> pivot_rows_;
};

}  // namespace sumrank

#endif
