#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swheight/errors.hpp"
#include "swheight/gf2.hpp"

namespace swh {

// ---------------------------------------------------------------------------
// Polynomials over GF(2) in weighted variables x_1..x_d, deg(x_i) = i.
// A polynomial is the set of its monomials; insertion cancels mod 2.

using monomial = std::vector<std::uint16_t>;  // exponent of x_1..x_d

class poly_z2 {
public:
    poly_z2() = default;
    explicit poly_z2(int n_vars) : n_vars_(n_vars) {}

    static poly_z2 zero(int n_vars) { return poly_z2(n_vars); }
    static poly_z2 one(int n_vars) {
        poly_z2 p(n_vars);
        p.toggle(monomial(static_cast<std::size_t>(n_vars), 0));
        return p;
    }
    static poly_z2 variable(int i, int n_vars) {
        if (i < 1 || i > n_vars) throw usage_error("variable index out of range");
        poly_z2 p(n_vars);
        monomial m(static_cast<std::size_t>(n_vars), 0);
        m[static_cast<std::size_t>(i - 1)] = 1;
        p.toggle(m);
        return p;
    }

    int n_vars() const { return n_vars_; }
    bool is_zero() const { return monomials_.empty(); }
    const std::set<monomial>& monomials() const { return monomials_; }

    void toggle(const monomial& m) {
        auto it = monomials_.find(m);
        if (it == monomials_.end())
            monomials_.insert(m);
        else
            monomials_.erase(it);
    }

    poly_z2& operator+=(const poly_z2& other) {
        for (const auto& m : other.monomials_) toggle(m);
        return *this;
    }
    friend poly_z2 operator+(poly_z2 a, const poly_z2& b) { return a += b; }

    friend poly_z2 operator*(const poly_z2& a, const poly_z2& b) {
        poly_z2 out(a.n_vars_);
        for (const auto& ma : a.monomials_)
            for (const auto& mb : b.monomials_) {
                monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i)
                    m[i] = static_cast<std::uint16_t>(m[i] + mb[i]);
                out.toggle(m);
            }
        return out;
    }

    friend bool operator==(const poly_z2& a, const poly_z2& b) {
        return a.monomials_ == b.monomials_;
    }

    static int weighted_degree(const monomial& m) {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(i + 1) * m[i];
        return d;
    }

    // -1 for the zero polynomial; the common weighted degree if homogeneous,
    // otherwise throws.
    int homogeneous_degree() const {
        if (monomials_.empty()) return -1;
        int d = weighted_degree(*monomials_.begin());
        for (const auto& m : monomials_)
            if (weighted_degree(m) != d)
                throw integrity_error("polynomial is not weighted-homogeneous");
        return d;
    }

    std::string to_string() const {
        if (monomials_.empty()) return "0";
        std::string out;
        for (const auto& m : monomials_) {
            if (!out.empty()) out += " + ";
            std::string term;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!term.empty()) term += "*";
                term += "x" + std::to_string(i + 1);
                if (m[i] > 1) term += "^" + std::to_string(m[i]);
            }
            out += term.empty() ? "1" : term;
        }
        return out;
    }

private:
    int n_vars_ = 0;
    std::set<monomial> monomials_;
};

// The recursion a_i^(0) = x_i, a_i^(k) = x_i a_1^(k-1) + a_{i+1}^(k-1) with
// a_{d+1} = 0. Each a_i^(k) is weighted-homogeneous of degree i + k.
inline poly_z2 a_polynomial(int i, int k, int d) {
    if (d < 1) throw usage_error("a_polynomial: d must be >= 1");
    if (i < 1 || i > d) throw usage_error("a_polynomial: i out of range 1..d");
    if (k < 0 || k > d - 1) throw usage_error("a_polynomial: k out of range 0..d-1");
    std::vector<poly_z2> level(static_cast<std::size_t>(d) + 2, poly_z2::zero(d));
    for (int j = 1; j <= d; ++j)
        level[static_cast<std::size_t>(j)] = poly_z2::variable(j, d);
    for (int l = 1; l <= k; ++l) {
        std::vector<poly_z2> next(static_cast<std::size_t>(d) + 2, poly_z2::zero(d));
        for (int j = 1; j <= d; ++j)
            next[static_cast<std::size_t>(j)] =
                poly_z2::variable(j, d) * level[1] + level[static_cast<std::size_t>(j) + 1];
        level = std::move(next);
    }
    return level[static_cast<std::size_t>(i)];
}

// Reduction of the symbol s^(d+k) in the free module with basis
// s^(d-1)..s^0 over Z2[x_1..x_d], modulo s^d = x_1 s^(d-1) + ... + x_d.
// Starts from s^d (the k = 0 row is x_1..x_d) and multiplies by s k times:
// each step sends coefficients (c_1..c_d) to c'_j = x_j c_1 + c_{j+1}.
inline std::vector<poly_z2> sphere_reduce_power(int d, int k) {
    if (d < 1) throw usage_error("sphere_reduce_power: d must be >= 1");
    if (k < 0 || k > d - 1) throw usage_error("sphere_reduce_power: k out of range 0..d-1");
    std::vector<poly_z2> c(static_cast<std::size_t>(d), poly_z2::zero(d));
    for (int j = 1; j <= d; ++j)
        c[static_cast<std::size_t>(j - 1)] = poly_z2::variable(j, d);
    for (int step = 0; step < k; ++step) {
        std::vector<poly_z2> next(static_cast<std::size_t>(d), poly_z2::zero(d));
        for (int j = 1; j <= d; ++j) {
            next[static_cast<std::size_t>(j - 1)] = poly_z2::variable(j, d) * c[0];
            if (j < d) next[static_cast<std::size_t>(j - 1)] += c[static_cast<std::size_t>(j)];
        }
        c = std::move(next);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Finite models of graded GF(2) algebras (cohomology rings).

class graded_algebra;

// Coordinates of a ring element, one bit vector per degree 0..D.
class algebra_element {
public:
    algebra_element() = default;
    algebra_element(const graded_algebra* alg, std::vector<bit_vector> coords)
        : alg_(alg), coords_(std::move(coords)) {}

    const std::vector<bit_vector>& coords() const { return coords_; }
    bit_vector& at_degree(int j) { return coords_[static_cast<std::size_t>(j)]; }
    const bit_vector& at_degree(int j) const { return coords_[static_cast<std::size_t>(j)]; }
    const graded_algebra* algebra() const { return alg_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c.any()) return false;
        return true;
    }

    // zero outside a single degree? returns that degree, or -1 if zero;
    // throws if the element is not homogeneous
    int homogeneous_degree() const {
        int deg = -1;
        for (std::size_t j = 0; j < coords_.size(); ++j)
            if (coords_[j].any()) {
                if (deg >= 0) throw integrity_error("element is not homogeneous");
                deg = static_cast<int>(j);
            }
        return deg;
    }

    friend bool operator==(const algebra_element& a, const algebra_element& b) {
        return a.coords_ == b.coords_;
    }

private:
    const graded_algebra* alg_ = nullptr;
    std::vector<bit_vector> coords_;
};

// Graded algebra with a chosen basis per degree and an explicit
// multiplication table. Products above the top degree are zero.
class graded_algebra {
public:
    graded_algebra(int top_degree, std::vector<std::vector<std::string>> basis_names)
        : top_(top_degree), names_(std::move(basis_names)) {
        if (top_ < 0 || names_.size() != static_cast<std::size_t>(top_) + 1)
            throw usage_error("graded_algebra: basis must list degrees 0..top");
        if (names_[0].size() != 1)
            throw usage_error("graded_algebra: degree 0 must have exactly the unit basis element");
        table_.resize(names_.size());
        for (std::size_t p = 0; p < names_.size(); ++p) {
            table_[p].resize(names_[p].size());
            for (auto& row : table_[p]) row.resize(names_.size());
        }
        // unit row/column is implied
        for (std::size_t p = 0; p <= static_cast<std::size_t>(top_); ++p)
            for (std::size_t i = 0; i < names_[p].size(); ++i)
                set_product(0, 0, static_cast<int>(p), static_cast<int>(i), {{static_cast<int>(p), static_cast<int>(i)}});
    }

    int top_degree() const { return top_; }
    std::size_t basis_dim(int degree) const {
        if (degree < 0 || degree > top_) return 0;
        return names_[static_cast<std::size_t>(degree)].size();
    }
    const std::string& basis_name(int degree, std::size_t i) const {
        return names_[static_cast<std::size_t>(degree)][i];
    }

    // product of basis elements (p,i) and (q,j) given as a sum of basis
    // elements of degree p+q; also records the commuted entry
    void set_product(int p, std::size_t i, int q, std::size_t j,
                     const std::vector<std::pair<int, int>>& summands) {
        bit_vector v(basis_dim(p + q));
        for (const auto& [deg, idx] : summands) {
            if (deg != p + q) throw usage_error("product summand has wrong degree");
            v.flip(static_cast<std::size_t>(idx));
        }
        table_[static_cast<std::size_t>(p)][i][static_cast<std::size_t>(q)].resize(
            std::max(table_[static_cast<std::size_t>(p)][i][static_cast<std::size_t>(q)].size(),
                     j + 1));
        table_[static_cast<std::size_t>(p)][i][static_cast<std::size_t>(q)][j] = v;
        table_[static_cast<std::size_t>(q)][j][static_cast<std::size_t>(p)].resize(std::max(
            table_[static_cast<std::size_t>(q)][j][static_cast<std::size_t>(p)].size(), i + 1));
        table_[static_cast<std::size_t>(q)][j][static_cast<std::size_t>(p)][i] = v;
    }

    algebra_element zero() const {
        std::vector<bit_vector> coords;
        for (int j = 0; j <= top_; ++j) coords.emplace_back(basis_dim(j));
        return algebra_element(this, std::move(coords));
    }

    algebra_element unit() const {
        auto e = zero();
        e.at_degree(0).set(0);
        return e;
    }

    algebra_element basis_element(int degree, std::size_t i) const {
        auto e = zero();
        e.at_degree(degree).set(i);
        return e;
    }

    algebra_element add(const algebra_element& a, const algebra_element& b) const {
        auto out = a;
        for (int j = 0; j <= top_; ++j) out.at_degree(j) ^= b.at_degree(j);
        return out;
    }

    algebra_element mul(const algebra_element& a, const algebra_element& b) const {
        auto out = zero();
        for (int p = 0; p <= top_; ++p) {
            const bit_vector& ap = a.at_degree(p);
            if (!ap.any()) continue;
            for (int q = 0; p + q <= top_; ++q) {
                const bit_vector& bq = b.at_degree(q);
                if (!bq.any()) continue;
                for (std::size_t i = ap.first_set(); i != bit_vector::npos;
                     i = ap.first_set_from(i + 1))
                    for (std::size_t j = bq.first_set(); j != bit_vector::npos;
                         j = bq.first_set_from(j + 1))
                        out.at_degree(p + q) ^= product_of_basis(p, i, q, j);
            }
        }
        return out;
    }

    bit_vector product_of_basis(int p, std::size_t i, int q, std::size_t j) const {
        const auto& row = table_[static_cast<std::size_t>(p)][i][static_cast<std::size_t>(q)];
        if (j >= row.size() || row[j].size() != basis_dim(p + q))
            return bit_vector(basis_dim(p + q));
        return row[j];
    }

    std::string element_to_string(const algebra_element& e) const {
        std::string out;
        for (int j = 0; j <= top_; ++j) {
            const bit_vector& c = e.at_degree(j);
            for (std::size_t i = c.first_set(); i != bit_vector::npos; i = c.first_set_from(i + 1)) {
                if (!out.empty()) out += " + ";
                out += basis_name(j, i);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    int top_;
    std::vector<std::vector<std::string>> names_;
    // table_[p][i][q][j] = coordinates of e_{p,i} * e_{q,j} in degree p+q
    std::vector<std::vector<std::vector<std::vector<bit_vector>>>> table_;
};

// A cohomology model of a closed d-manifold: the ring plus the tangent
// Stiefel-Whitney classes w_1..w_d (w[i-1] in degree i, possibly zero).
struct manifold_model {
    std::string name;
    graded_algebra alg;
    std::vector<algebra_element> w;

    int dimension() const { return alg.top_degree(); }

    algebra_element total_w() const {
        auto t = alg.unit();
        for (const auto& wi : w) t = alg.add(t, wi);
        return t;
    }
};

// ---------------------------------------------------------------------------
// Evaluation of the a-polynomials in a model

inline void check_w_list(const graded_algebra& alg, const std::vector<algebra_element>& w) {
    const int d = alg.top_degree();
    if (static_cast<int>(w.size()) != d)
        throw usage_error("w must have exactly d = " + std::to_string(d) + " entries");
    for (int i = 1; i <= d; ++i) {
        const int deg = w[static_cast<std::size_t>(i - 1)].homogeneous_degree();
        if (deg >= 0 && deg != i)
            throw usage_error("w_" + std::to_string(i) + " must be homogeneous of degree " +
                              std::to_string(i));
    }
}

inline algebra_element evaluate_poly(const graded_algebra& alg, const poly_z2& p,
                                     const std::vector<algebra_element>& w) {
    auto out = alg.zero();
    for (const auto& m : p.monomials()) {
        auto term = alg.unit();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) term = alg.mul(term, w[i]);
        out = alg.add(out, term);
    }
    return out;
}

struct wk_result {
    int k = 0;
    // wk[i-1] = a_i^(k) evaluated at w, an element of degree i + k
    std::vector<algebra_element> wk;
    algebra_element total;  // 1 + sum of the wk
    bool nontrivial = false;

    // Degree-graded accessor: the degree-j component of the total class is
    // a_{j-k}^(k)(w) for k < j <= d + k. The recursion index i labels
    // cohomological degree i + k, so both views are exposed.
    algebra_element by_degree(int j) const {
        const int d = static_cast<int>(wk.size());
        const graded_algebra* alg = total.algebra();
        if (j <= k || j > d + k) return alg ? alg->zero() : algebra_element();
        return wk[static_cast<std::size_t>(j - k - 1)];
    }
};

inline wk_result wk_classes(const graded_algebra& alg, const std::vector<algebra_element>& w,
                            int k) {
    check_w_list(alg, w);
    const int d = alg.top_degree();
    if (k < 0 || k > d - 1) throw usage_error("wk_classes: k out of range 0..d-1");
    wk_result out;
    out.k = k;
    out.total = alg.unit();
    for (int i = 1; i <= d; ++i) {
        auto v = evaluate_poly(alg, a_polynomial(i, k, d), w);
        out.nontrivial = out.nontrivial || !v.is_zero();
        out.total = alg.add(out.total, v);
        out.wk.push_back(std::move(v));
    }
    return out;
}

inline wk_result wk_classes(const manifold_model& m, int k) {
    return wk_classes(m.alg, m.w, k);
}

// Largest n with s^n nonzero in the free module over the model with basis
// 1, s, ..., s^(d-1) and the rewrite s^d = w_1 s^(d-1) + ... + w_d.
// Computed by iterated rewrite; always >= d-1, capped at d + top_degree.
inline int symbolic_sphere_height(const graded_algebra& alg,
                                  const std::vector<algebra_element>& w) {
    check_w_list(alg, w);
    const int d = alg.top_degree();
    if (d < 1) throw usage_error("symbolic_sphere_height needs a positive-dimensional model");
    const int cap = d + alg.top_degree();
    // coefficients c_1..c_d of s^(d-1)..s^0, starting at s^(d-1)
    std::vector<algebra_element> c(static_cast<std::size_t>(d), alg.zero());
    c[0] = alg.unit();
    int n = d - 1;
    while (n < cap) {
        std::vector<algebra_element> next(static_cast<std::size_t>(d), alg.zero());
        for (int j = 1; j <= d; ++j) {
            next[static_cast<std::size_t>(j - 1)] = alg.mul(c[0], w[static_cast<std::size_t>(j - 1)]);
            if (j < d)
                next[static_cast<std::size_t>(j - 1)] =
                    alg.add(next[static_cast<std::size_t>(j - 1)], c[static_cast<std::size_t>(j)]);
        }
        bool all_zero = true;
        for (const auto& e : next)
            if (!e.is_zero()) {
                all_zero = false;
                break;
            }
        if (all_zero) return n;
        c = std::move(next);
        ++n;
    }
    return cap;
}

inline int symbolic_sphere_height(const manifold_model& m) {
    return symbolic_sphere_height(m.alg, m.w);
}

// ---------------------------------------------------------------------------
// Built-in models

// truncated polynomial ring on one generator of degree g, top degree n*g
inline graded_algebra truncated_polynomial_algebra(const std::string& gen, int g, int n) {
    std::vector<std::vector<std::string>> names(static_cast<std::size_t>(n * g) + 1);
    names[0] = {"1"};
    for (int j = 1; j <= n; ++j) {
        std::string nm = gen;
        if (j > 1) nm += "^" + std::to_string(j);
        names[static_cast<std::size_t>(j * g)] = {nm};
    }
    graded_algebra alg(n * g, names);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i + j <= n) alg.set_product(i * g, 0, j * g, 0, {{(i + j) * g, 0}});
            else alg.set_product(i * g, 0, j * g, 0, {});
    return alg;
}

namespace detail {

// split (1 + x)^(n+1) into homogeneous parts within the algebra; x is the
// degree-g generator of a truncated polynomial model
inline std::vector<algebra_element> binomial_total_class(const graded_algebra& alg, int g,
                                                         int n_plus_1) {
    auto x = alg.zero();
    if (alg.basis_dim(g) > 0) x.at_degree(g).set(0);
    auto total = alg.unit();
    auto one_plus_x = alg.add(alg.unit(), x);
    for (int i = 0; i < n_plus_1; ++i) total = alg.mul(total, one_plus_x);
    const int d = alg.top_degree();
    std::vector<algebra_element> w;
    for (int i = 1; i <= d; ++i) {
        auto part = alg.zero();
        part.at_degree(i) = total.at_degree(i);
        w.push_back(std::move(part));
    }
    return w;
}

}  // namespace detail

// real projective space of dimension n: ring Z2[a]/(a^(n+1)), w = (1+a)^(n+1)
inline manifold_model rp_model(int n) {
    if (n < 1) throw usage_error("rp(n) needs n >= 1");
    auto alg = truncated_polynomial_algebra("a", 1, n);
    auto w = detail::binomial_total_class(alg, 1, n + 1);
    return manifold_model{"rp(" + std::to_string(n) + ")", std::move(alg), std::move(w)};
}

// complex projective space of complex dimension n: Z2[c]/(c^(n+1)), deg c = 2
inline manifold_model cp_model(int n) {
    if (n < 1) throw usage_error("cp(n) needs n >= 1");
    auto alg = truncated_polynomial_algebra("c", 2, n);
    auto w = detail::binomial_total_class(alg, 2, n + 1);
    return manifold_model{"cp(" + std::to_string(n) + ")", std::move(alg), std::move(w)};
}

// n-sphere: basis 1 and s in degree n, s^2 = 0, w = 1
inline manifold_model sphere_model(int n) {
    if (n < 1) throw usage_error("sphere(n) needs n >= 1");
    std::vector<std::vector<std::string>> names(static_cast<std::size_t>(n) + 1);
    names[0] = {"1"};
    names[static_cast<std::size_t>(n)] = {"s"};
    graded_algebra alg(n, names);
    alg.set_product(n, 0, n, 0, {});
    std::vector<algebra_element> w(static_cast<std::size_t>(n), alg.zero());
    return manifold_model{"sphere(" + std::to_string(n) + ")", std::move(alg), std::move(w)};
}

// tensor product model with w = w1 * w2 (the Whitney product class)
inline manifold_model product_model(const manifold_model& m1, const manifold_model& m2) {
    const int d1 = m1.dimension(), d2 = m2.dimension();
    const int d = d1 + d2;
    std::vector<std::vector<std::string>> names(static_cast<std::size_t>(d) + 1);
    // basis of degree j: pairs (p, i1), (q, i2) with p + q = j, ordered by p
    // then basis indexes; remember the indexing for products
    std::map<std::tuple<int, std::size_t, int, std::size_t>, std::pair<int, std::size_t>> index;
    for (int j = 0; j <= d; ++j)
        for (int p = std::max(0, j - d2); p <= std::min(j, d1); ++p) {
            const int q = j - p;
            for (std::size_t i1 = 0; i1 < m1.alg.basis_dim(p); ++i1)
                for (std::size_t i2 = 0; i2 < m2.alg.basis_dim(q); ++i2) {
                    index[{p, i1, q, i2}] = {j, names[static_cast<std::size_t>(j)].size()};
                    std::string nm;
                    const std::string n1 = m1.alg.basis_name(p, i1);
                    const std::string n2 = m2.alg.basis_name(q, i2);
                    if (n1 == "1") nm = n2;
                    else if (n2 == "1") nm = n1;
                    else nm = n1 + "|" + n2;
                    names[static_cast<std::size_t>(j)].push_back(nm);
                }
        }
    graded_algebra alg(d, names);
    // (a1|a2)(b1|b2) = (a1 b1)|(a2 b2), no signs over GF(2)
    for (const auto& [key_a, pos_a] : index)
        for (const auto& [key_b, pos_b] : index) {
            const auto [p1, i1, q1, j1] = key_a;
            const auto [p2, i2, q2, j2] = key_b;
            if (pos_a.first + pos_b.first > d) continue;
            const bit_vector left = m1.alg.product_of_basis(p1, i1, p2, i2);
            const bit_vector right = m2.alg.product_of_basis(q1, j1, q2, j2);
            std::vector<std::pair<int, int>> summands;
            for (std::size_t u = left.first_set(); u != bit_vector::npos;
                 u = left.first_set_from(u + 1))
                for (std::size_t v = right.first_set(); v != bit_vector::npos;
                     v = right.first_set_from(v + 1)) {
                    const auto pos = index.at({p1 + p2, u, q1 + q2, v});
                    summands.emplace_back(pos.first, static_cast<int>(pos.second));
                }
            alg.set_product(pos_a.first, pos_a.second, pos_b.first, pos_b.second, summands);
        }
    // embed both total classes and multiply
    auto embed = [&](const manifold_model& m, bool left_factor) {
        auto out = alg.zero();
        auto tot = m.total_w();
        for (int deg = 0; deg <= m.dimension(); ++deg) {
            const bit_vector& c = tot.at_degree(deg);
            for (std::size_t i = c.first_set(); i != bit_vector::npos; i = c.first_set_from(i + 1)) {
                const auto pos = left_factor ? index.at({deg, i, 0, 0}) : index.at({0, 0, deg, i});
                out.at_degree(pos.first).flip(pos.second);
            }
        }
        return out;
    };
    auto total = alg.mul(embed(m1, true), embed(m2, false));
    std::vector<algebra_element> w;
    for (int i = 1; i <= d; ++i) {
        auto part = alg.zero();
        part.at_degree(i) = total.at_degree(i);
        w.push_back(std::move(part));
    }
    return manifold_model{"product(" + m1.name + "," + m2.name + ")", std::move(alg),
                          std::move(w)};
}

// ---------------------------------------------------------------------------
// Model spec parser: rp(5), cp(2), sphere(3), product(rp(2),sphere(1))

namespace detail {

inline manifold_model parse_model_spec_at(const std::string& s, std::size_t& pos);

inline void skip_spaces(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
}

inline manifold_model parse_model_spec_at(const std::string& s, std::size_t& pos) {
    skip_spaces(s, pos);
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
    const std::string head = s.substr(start, pos - start);
    skip_spaces(s, pos);
    if (pos >= s.size() || s[pos] != '(')
        throw usage_error("model spec: expected '(' after '" + head + "'");
    ++pos;
    if (head == "product") {
        auto m1 = parse_model_spec_at(s, pos);
        skip_spaces(s, pos);
        if (pos >= s.size() || s[pos] != ',') throw usage_error("model spec: expected ','");
        ++pos;
        auto m2 = parse_model_spec_at(s, pos);
        skip_spaces(s, pos);
        if (pos >= s.size() || s[pos] != ')') throw usage_error("model spec: expected ')'");
        ++pos;
        return product_model(m1, m2);
    }
    std::size_t nstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (nstart == pos) throw usage_error("model spec: expected an integer parameter");
    const int n = std::stoi(s.substr(nstart, pos - nstart));
    skip_spaces(s, pos);
    if (pos >= s.size() || s[pos] != ')') throw usage_error("model spec: expected ')'");
    ++pos;
    if (head == "rp") return rp_model(n);
    if (head == "cp") return cp_model(n);
    if (head == "sphere") return sphere_model(n);
    throw usage_error("unknown model kind '" + head + "'");
}

}  // namespace detail

inline manifold_model parse_model_spec(const std::string& spec) {
    std::size_t pos = 0;
    auto m = detail::parse_model_spec_at(spec, pos);
    detail::skip_spaces(spec, pos);
    if (pos != spec.size()) throw usage_error("model spec: trailing input after ')'");
    return m;
}

// ---------------------------------------------------------------------------
// Model files: basis per degree, multiplication table, w coordinates.

inline manifold_model model_from_json(const nlohmann::json& j) {
    if (!j.contains("top_degree") || !j.contains("basis"))
        throw usage_error("model document needs 'top_degree' and 'basis'");
    const int d = j["top_degree"].get<int>();
    std::vector<std::vector<std::string>> names(static_cast<std::size_t>(d) + 1);
    const auto& bj = j["basis"];
    for (int deg = 0; deg <= d; ++deg)
        if (static_cast<std::size_t>(deg) < bj.size())
            names[static_cast<std::size_t>(deg)] = bj[static_cast<std::size_t>(deg)]
                                                       .get<std::vector<std::string>>();
    graded_algebra alg(d, names);
    // name -> (degree, index)
    std::map<std::string, std::pair<int, std::size_t>> where;
    for (int deg = 0; deg <= d; ++deg)
        for (std::size_t i = 0; i < alg.basis_dim(deg); ++i) {
            if (where.count(alg.basis_name(deg, i)))
                throw usage_error("duplicate basis name '" + alg.basis_name(deg, i) + "'");
            where[alg.basis_name(deg, i)] = {deg, i};
        }
    if (j.contains("products"))
        for (const auto& ent : j["products"]) {
            const auto a = where.at(ent.at("left").get<std::string>());
            const auto b = where.at(ent.at("right").get<std::string>());
            std::vector<std::pair<int, int>> summands;
            for (const auto& nm : ent.at("value")) {
                const auto c = where.at(nm.get<std::string>());
                summands.emplace_back(c.first, static_cast<int>(c.second));
            }
            alg.set_product(a.first, a.second, b.first, b.second, summands);
        }
    std::vector<algebra_element> w(static_cast<std::size_t>(d), alg.zero());
    if (j.contains("w")) {
        const auto& wj = j["w"];
        for (int i = 1; i <= d; ++i) {
            if (static_cast<std::size_t>(i - 1) >= wj.size()) break;
            for (const auto& nm : wj[static_cast<std::size_t>(i - 1)]) {
                const auto c = where.at(nm.get<std::string>());
                if (c.first != i)
                    throw usage_error("w_" + std::to_string(i) + " summand '" +
                                      nm.get<std::string>() + "' has degree " +
                                      std::to_string(c.first));
                w[static_cast<std::size_t>(i - 1)].at_degree(c.first).flip(c.second);
            }
        }
    }
    std::string name = j.contains("name") ? j["name"].get<std::string>() : "model";
    return manifold_model{name, std::move(alg), std::move(w)};
}

inline nlohmann::json model_to_json(const manifold_model& m) {
    nlohmann::json j;
    j["format"] = "swheight-model/1";
    j["name"] = m.name;
    j["top_degree"] = m.alg.top_degree();
    nlohmann::json basis = nlohmann::json::array();
    for (int deg = 0; deg <= m.alg.top_degree(); ++deg) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t i = 0; i < m.alg.basis_dim(deg); ++i)
            row.push_back(m.alg.basis_name(deg, i));
        basis.push_back(row);
    }
    j["basis"] = basis;
    nlohmann::json prods = nlohmann::json::array();
    for (int p = 1; p <= m.alg.top_degree(); ++p)
        for (std::size_t i = 0; i < m.alg.basis_dim(p); ++i)
            for (int q = p; p + q <= m.alg.top_degree(); ++q)
                for (std::size_t jx = (q == p ? i : 0); jx < m.alg.basis_dim(q); ++jx) {
                    const bit_vector& v = m.alg.product_of_basis(p, i, q, jx);
                    if (!v.any()) continue;
                    nlohmann::json ent;
                    ent["left"] = m.alg.basis_name(p, i);
                    ent["right"] = m.alg.basis_name(q, jx);
                    nlohmann::json val = nlohmann::json::array();
                    for (std::size_t u = v.first_set(); u != bit_vector::npos;
                         u = v.first_set_from(u + 1))
                        val.push_back(m.alg.basis_name(p + q, u));
                    ent["value"] = val;
                    prods.push_back(ent);
                }
    j["products"] = prods;
    nlohmann::json wj = nlohmann::json::array();
    for (int i = 1; i <= m.alg.top_degree(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        const bit_vector& c = m.w[static_cast<std::size_t>(i - 1)].at_degree(i);
        for (std::size_t u = c.first_set(); u != bit_vector::npos; u = c.first_set_from(u + 1))
            row.push_back(m.alg.basis_name(i, u));
        wj.push_back(row);
    }
    j["w"] = wj;
    return j;
}

}  // namespace swh
