#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "swheight/delta_complex.hpp"
#include "swheight/errors.hpp"
#include "swheight/gf2.hpp"

namespace swh {

// Boundary matrices over GF(2). boundary[q] maps q-chains to (q-1)-chains;
// boundary[0] is the 0 x n_0 zero map.
struct chain_complex_gf2 {
    std::vector<bit_matrix> boundary;

    int dim() const { return static_cast<int>(boundary.size()) - 1; }
};

namespace detail {

// dd = 0 checked combinatorially on the face maps: the multiset of
// codimension-2 faces of every simplex must cancel mod 2.
inline void check_dd_zero(const delta_complex& dc) {
    for (int q = 2; q <= dc.dim(); ++q) {
        std::vector<std::uint32_t> hits;
        for (std::uint32_t s = 0; s < dc.count(q); ++s) {
            hits.clear();
            for (int i = 0; i <= q; ++i) {
                const std::uint32_t f = dc.face(q, s, i);
                for (int j = 0; j <= q - 1; ++j) hits.push_back(dc.face(q - 1, f, j));
            }
            std::sort(hits.begin(), hits.end());
            for (std::size_t i = 0; i + 1 < hits.size(); i += 2)
                if (hits[i] != hits[i + 1])
                    throw integrity_error("dd != 0 at dimension " + std::to_string(q) +
                                          ", simplex " + std::to_string(s));
            if (hits.size() % 2 != 0)
                throw integrity_error("dd != 0 at dimension " + std::to_string(q));
        }
    }
}

}  // namespace detail

// Single boundary matrix, without the dd check.
inline bit_matrix boundary_matrix(const delta_complex& dc, int q) {
    if (q < 0 || q > dc.dim()) throw usage_error("boundary_matrix: dimension out of range");
    if (q == 0) return bit_matrix(0, dc.count(0));
    bit_matrix m(dc.count(q - 1), dc.count(q));
    for (std::uint32_t s = 0; s < dc.count(q); ++s)
        for (int i = 0; i <= q; ++i) m.flip(dc.face(q, s, i), s);  // repeats cancel
    return m;
}

inline chain_complex_gf2 boundary_matrices(const delta_complex& dc) {
    detail::check_dd_zero(dc);
    chain_complex_gf2 cc;
    const int dmax = dc.dim();
    cc.boundary.reserve(static_cast<std::size_t>(dmax) + 1);
    for (int q = 0; q <= dmax; ++q) cc.boundary.push_back(boundary_matrix(dc, q));
    return cc;
}

inline chain_complex_gf2 boundary_matrices(const equivariant_delta_complex& x) {
    return boundary_matrices(x.dc);
}
inline chain_complex_gf2 boundary_matrices(const quotient_complex& q) {
    return boundary_matrices(q.dc);
}

inline std::size_t betti_mod2(const chain_complex_gf2& cc, int q) {
    if (q < 0) throw usage_error("betti_mod2: dimension must be >= 0");
    if (q > cc.dim()) return 0;
    const std::size_t nq = cc.boundary[static_cast<std::size_t>(q)].cols();
    const std::size_t rank_q = gf2_rank(cc.boundary[static_cast<std::size_t>(q)]);
    const std::size_t rank_q1 =
        q + 1 <= cc.dim() ? gf2_rank(cc.boundary[static_cast<std::size_t>(q + 1)]) : 0;
    return nq - rank_q - rank_q1;
}

inline std::size_t betti_mod2(const delta_complex& dc, int q) {
    return betti_mod2(boundary_matrices(dc), q);
}
inline std::size_t betti_mod2(const equivariant_delta_complex& x, int q) {
    return betti_mod2(x.dc, q);
}
inline std::size_t betti_mod2(const quotient_complex& qc, int q) {
    return betti_mod2(qc.dc, q);
}

// n-fold cup power of the double-cover cocycle, evaluated Alexander-Whitney
// style: the value on an n-simplex is the product over consecutive vertex
// pairs of the representative chain of z on that edge; z on an edge is the
// parity of non-canonical endpoints, so the product is 1 exactly when the
// lift indicator alternates along the whole chain.
inline bit_vector cup_power(const quotient_complex& qc, int n) {
    if (n < 1 || n > qc.dc.dim())
        throw usage_error("cup_power: exponent " + std::to_string(n) +
                          " out of range 1.." + std::to_string(std::max(qc.dc.dim(), 0)));
    const auto& pat = qc.lift_pattern[static_cast<std::size_t>(n)];
    bit_vector v(qc.dc.count(n));
    for (std::uint32_t s = 0; s < qc.dc.count(n); ++s) {
        const std::uint32_t p = pat[s];
        bool alternating = true;
        for (int i = 1; i <= n && alternating; ++i)
            alternating = (((p >> (i - 1)) ^ (p >> i)) & 1u) != 0;
        if (alternating) v.set(s);
    }
    // delta-check when the next dimension is available
    if (n + 1 <= qc.dc.dim()) {
        for (std::uint32_t s = 0; s < qc.dc.count(n + 1); ++s) {
            bool sum = false;
            for (int i = 0; i <= n + 1; ++i) sum ^= v.test(qc.dc.face(n + 1, s, i));
            if (sum)
                throw integrity_error("cup_power(" + std::to_string(n) + ") is not a cocycle");
        }
    }
    return v;
}

struct height_degree_diag {
    int degree = 0;
    std::size_t simplices = 0;
    bool cocycle_checked = false;
    bool is_coboundary = false;
    double solve_ms = 0.0;
};

struct height_report {
    int h = 0;
    // when true, powers were only examined up to max_degree and h is a
    // lower bound attained at the cap; otherwise h is exact
    bool capped = false;
    int max_degree = 0;
    std::vector<height_degree_diag> degrees;
    std::vector<std::size_t> simplex_counts;
    double total_ms = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["h"] = h;
        j["capped"] = capped;
        j["max_degree"] = max_degree;
        j["simplex_counts"] = simplex_counts;
        nlohmann::json degs = nlohmann::json::array();
        for (const auto& d : degrees) {
            nlohmann::json dj;
            dj["degree"] = d.degree;
            dj["simplices"] = d.simplices;
            dj["cocycle_checked"] = d.cocycle_checked;
            dj["is_coboundary"] = d.is_coboundary;
            degs.push_back(dj);
        }
        j["degrees"] = degs;
        return j;
    }
};

// Stiefel-Whitney height: the largest n with the n-th cup power of z not a
// coboundary. Ascends n with early stop at the first coboundary, which is
// sound because a vanishing power kills all higher ones. With max_degree
// set below the quotient dimension the result is exact whenever it is
// < max_degree and a lower bound (capped = true) when it reaches it.
inline height_report sw_height(const quotient_complex& qc, int max_degree = -1) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::check_dd_zero(qc.dc);
    height_report rep;
    rep.simplex_counts = qc.dc.counts;
    const int dmax = std::max(qc.dc.dim(), 0);
    const int cap = max_degree < 0 ? dmax : std::min(max_degree, dmax);
    rep.max_degree = cap;
    rep.h = 0;
    for (int n = 1; n <= cap; ++n) {
        height_degree_diag diag;
        diag.degree = n;
        diag.simplices = qc.dc.count(n);
        if (qc.dc.count(n) == 0) {
            diag.is_coboundary = true;
            rep.degrees.push_back(diag);
            break;
        }
        bit_vector power = cup_power(qc, n);
        diag.cocycle_checked = n + 1 <= qc.dc.dim();
        bool cob;
        const auto s0 = std::chrono::steady_clock::now();
        if (power.none()) {
            cob = true;
        } else {
            try {
                const bit_matrix coboundary_map = transpose(boundary_matrix(qc.dc, n));
                cob = solve_linear(coboundary_map, power).has_value();
            } catch (const resource_error& e) {
                throw resource_error(std::string(e.what()) + " (height computation at degree " +
                                     std::to_string(n) + ")");
            }
        }
        diag.solve_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - s0)
                            .count();
        diag.is_coboundary = cob;
        rep.degrees.push_back(diag);
        if (cob) break;
        rep.h = n;
    }
    // capped: powers above h were never tested, so h is only a lower bound
    rep.capped = (rep.h == cap && cap < qc.dc.dim());
    rep.total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace swh
