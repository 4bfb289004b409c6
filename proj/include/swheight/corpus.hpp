#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swheight/errors.hpp"
#include "swheight/simplicial_complex.hpp"

namespace swh {
namespace corpus {

// The unique 6-vertex triangulation of the real projective plane
// (antipodal quotient of the icosahedron). chi = 1.
inline const std::vector<std::vector<int>>& rp2_6_facets() {
    static const std::vector<std::vector<int>> f = {
        {1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
        {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}};
    return f;
}

// The 7-vertex torus with complete 1-skeleton: triangles {i, i+1, i+3} and
// {i, i+2, i+3} mod 7. chi = 0.
inline const std::vector<std::vector<int>>& torus_7_facets() {
    static const std::vector<std::vector<int>> f = [] {
        std::vector<std::vector<int>> out;
        for (int i = 0; i < 7; ++i) {
            std::vector<int> a{i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1};
            std::vector<int> b{i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1};
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            out.push_back(a);
            out.push_back(b);
        }
        std::sort(out.begin(), out.end());
        return out;
    }();
    return f;
}

// The 9-vertex triangulation of the complex projective plane: 36 facets,
// f-vector (9, 36, 84, 90, 36), complete 2-skeleton, chi = 3. Every vertex
// link is a combinatorial 3-sphere.
inline const std::vector<std::vector<int>>& cp2_9_facets() {
    static const std::vector<std::vector<int>> f = {
        {1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}, {1, 2, 4, 5, 7},
        {1, 2, 4, 6, 8}, {1, 2, 4, 7, 8}, {1, 2, 5, 6, 7}, {1, 2, 6, 7, 9},
        {1, 2, 6, 8, 9}, {1, 2, 7, 8, 9}, {1, 3, 4, 5, 9}, {1, 3, 4, 6, 9},
        {1, 3, 5, 6, 7}, {1, 3, 5, 7, 8}, {1, 3, 5, 8, 9}, {1, 3, 6, 7, 9},
        {1, 3, 7, 8, 9}, {1, 4, 5, 7, 8}, {1, 4, 5, 8, 9}, {1, 4, 6, 8, 9},
        {2, 3, 4, 5, 9}, {2, 3, 4, 6, 8}, {2, 3, 4, 7, 8}, {2, 3, 4, 7, 9},
        {2, 3, 5, 6, 8}, {2, 3, 5, 8, 9}, {2, 3, 7, 8, 9}, {2, 4, 5, 7, 9},
        {2, 5, 6, 7, 9}, {2, 5, 6, 8, 9}, {3, 4, 6, 7, 8}, {3, 4, 6, 7, 9},
        {3, 5, 6, 7, 8}, {4, 5, 6, 7, 8}, {4, 5, 6, 7, 9}, {4, 5, 6, 8, 9}};
    return f;
}

}  // namespace corpus

namespace detail {

inline simplicial_complex complex_from_int_facets(const std::vector<std::vector<int>>& facets) {
    std::vector<std::vector<vertex_label>> lf;
    lf.reserve(facets.size());
    for (const auto& f : facets) {
        std::vector<vertex_label> row;
        for (int v : f) row.emplace_back(static_cast<std::int64_t>(v));
        lf.push_back(std::move(row));
    }
    return simplicial_complex::from_facets(lf);
}

inline simplicial_complex validated_corpus_complex(const std::vector<std::vector<int>>& facets,
                                                   long long expected_chi,
                                                   const std::string& name) {
    auto k = complex_from_int_facets(facets);
    if (!check_closed_pseudomanifold(k).pass())
        throw integrity_error("corpus complex " + name + " fails the pseudomanifold check");
    if (k.euler_characteristic() != expected_chi)
        throw integrity_error("corpus complex " + name + " has Euler characteristic " +
                              std::to_string(k.euler_characteristic()) + ", expected " +
                              std::to_string(expected_chi));
    return k;
}

}  // namespace detail

// The full n-simplex on vertices 1..n+1.
inline simplicial_complex simplex_complex(int n) {
    if (n < 0) throw usage_error("simplex(n) needs n >= 0");
    std::vector<int> all(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    return detail::complex_from_int_facets({all});
}

// Boundary of the n-simplex, an (n-1)-sphere.
inline simplicial_complex boundary_simplex(int n) {
    if (n < 1) throw usage_error("boundary_simplex(n) needs n >= 1");
    std::vector<std::vector<int>> facets;
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> f;
        for (int i = 0; i <= n; ++i)
            if (i != skip) f.push_back(i + 1);
        facets.push_back(f);
    }
    return detail::complex_from_int_facets(facets);
}

// Boundary of the d-dimensional cross polytope, a (d-1)-sphere. Vertices
// 1..2d with antipodal pairs (2i-1, 2i) adjacent in the vertex order, so
// the antipodal map is order-preserving on every simplex.
inline simplicial_complex cross_polytope_boundary(int d) {
    if (d < 1) throw usage_error("cross_polytope_boundary(d) needs d >= 1");
    std::vector<std::vector<int>> facets;
    for (int signs = 0; signs < (1 << d); ++signs) {
        std::vector<int> f;
        for (int i = 0; i < d; ++i) f.push_back(2 * i + 1 + ((signs >> i) & 1));
        facets.push_back(f);
    }
    return detail::complex_from_int_facets(facets);
}

// The antipodal vertex involution of cross_polytope_boundary(d), as a map
// on dense vertex ids (which coincide with label order 1..2d shifted to 0).
inline std::vector<vertex_id> cross_polytope_antipodal(int d) {
    std::vector<vertex_id> inv(static_cast<std::size_t>(2 * d));
    for (int i = 0; i < d; ++i) {
        inv[static_cast<std::size_t>(2 * i)] = 2 * i + 1;
        inv[static_cast<std::size_t>(2 * i + 1)] = 2 * i;
    }
    return inv;
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {"rp2_6", "torus_7", "cp2_9"};
    return names;
}

// Named complex lookup. Parametric kinds take one integer argument; corpus
// entries are validated (pseudomanifold check + known Euler characteristic)
// on every load.
inline simplicial_complex standard_complex(const std::string& kind, int param = -1) {
    auto need_param = [&](int min_value) {
        if (param < min_value)
            throw usage_error("standard_complex '" + kind + "' needs an integer parameter >= " +
                              std::to_string(min_value));
    };
    if (kind == "simplex") {
        need_param(0);
        return simplex_complex(param);
    }
    if (kind == "boundary_simplex") {
        need_param(1);
        return boundary_simplex(param);
    }
    if (kind == "cross_polytope_boundary") {
        need_param(1);
        return cross_polytope_boundary(param);
    }
    if (kind == "rp2_6") return detail::validated_corpus_complex(corpus::rp2_6_facets(), 1, kind);
    if (kind == "torus_7")
        return detail::validated_corpus_complex(corpus::torus_7_facets(), 0, kind);
    if (kind == "cp2_9") return detail::validated_corpus_complex(corpus::cp2_9_facets(), 3, kind);
    throw usage_error("unknown complex kind '" + kind + "'");
}

}  // namespace swh
