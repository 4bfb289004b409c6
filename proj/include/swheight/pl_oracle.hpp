#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "swheight/errors.hpp"
#include "swheight/rational.hpp"
#include "swheight/simplicial_complex.hpp"

namespace swh {

// Piecewise-linear map: exact rational coordinates per vertex, extended
// affinely over each simplex.
struct pl_map {
    simplicial_complex complex;
    int target_dim = 0;
    std::vector<std::vector<rational>> coords;  // per dense vertex id

    const std::vector<rational>& vertex_image(vertex_id v) const {
        return coords[static_cast<std::size_t>(v)];
    }
};

namespace detail {

// Exact phase-1 simplex with Bland's rule: feasibility of A x = b, x >= 0.
// Small dense tableaus; rationals throughout, so termination and exactness
// are unconditional.
inline std::optional<std::vector<rational>> lp_feasible_point(
    std::vector<std::vector<rational>> a, std::vector<rational> b) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    if (b.size() != m) throw usage_error("lp_feasible_point: shape mismatch");
    for (std::size_t r = 0; r < m; ++r)
        if (b[r] < 0) {
            for (auto& v : a[r]) v = -v;
            b[r] = -b[r];
        }
    // tableau: n structural + m artificial columns, last column = rhs
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<rational>> t(m, std::vector<rational>(cols, rational(0)));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) t[r][c] = a[r][c];
        t[r][n + r] = 1;
        t[r][cols - 1] = b[r];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;
    // reduced costs for min(sum of artificials): z_j = -(sum of rows)_j on
    // structural columns, 0 on artificials
    std::vector<rational> cost(cols, rational(0));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (c != n + r) cost[c] -= t[r][c];
    // objective value = -(sum b); feasible iff it can be driven to 0
    while (true) {
        // Bland: entering = least-index column with negative reduced cost
        std::size_t enter = cols - 1;
        for (std::size_t c = 0; c + 1 < cols; ++c)
            if (cost[c] < 0) {
                enter = c;
                break;
            }
        if (enter == cols - 1) break;
        // ratio test; Bland tie-break on least basis variable
        std::size_t leave = m;
        rational best;
        for (std::size_t r = 0; r < m; ++r) {
            if (t[r][enter] <= 0) continue;
            const rational ratio = t[r][cols - 1] / t[r][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[r] < basis[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave == m)
            throw integrity_error("phase-1 simplex is unbounded; this cannot happen");
        // pivot
        const rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave) continue;
            if (t[r][enter] == 0) continue;
            const rational f = t[r][enter];
            for (std::size_t c = 0; c < cols; ++c) t[r][c] -= f * t[leave][c];
        }
        const rational fc = cost[enter];
        for (std::size_t c = 0; c < cols; ++c) cost[c] -= fc * t[leave][c];
        basis[leave] = enter;
    }
    // optimum of the artificial sum: recompute from the basic solution
    rational artificial_sum = 0;
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] >= n) artificial_sum += t[r][cols - 1];
    if (artificial_sum != 0) return std::nullopt;
    std::vector<rational> x(n, rational(0));
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n) x[basis[r]] = t[r][cols - 1];
    return x;
}

// exact bounding-interval rejection per axis
inline bool boxes_disjoint(const pl_map& f, const simplex& sigma, const simplex& tau) {
    for (int axis = 0; axis < f.target_dim; ++axis) {
        const auto range = [&](const simplex& s) {
            rational lo = f.vertex_image(s[0])[static_cast<std::size_t>(axis)];
            rational hi = lo;
            for (std::size_t i = 1; i < s.size(); ++i) {
                const rational& v = f.vertex_image(s[i])[static_cast<std::size_t>(axis)];
                if (v < lo) lo = v;
                if (v > hi) hi = v;
            }
            return std::pair<rational, rational>(lo, hi);
        };
        const auto [alo, ahi] = range(sigma);
        const auto [blo, bhi] = range(tau);
        if (ahi < blo || bhi < alo) return true;
    }
    return false;
}

}  // namespace detail

// Decides exactly whether the convex hulls of the vertex images of sigma
// and tau intersect; returns a common point when they do. Barycentric
// feasibility: weights nonnegative, each side summing to one, images equal.
inline std::optional<std::vector<rational>> simplex_images_intersect(const pl_map& f,
                                                                     const simplex& sigma,
                                                                     const simplex& tau) {
    if (detail::boxes_disjoint(f, sigma, tau)) return std::nullopt;
    const std::size_t ns = sigma.size(), nt = tau.size();
    const std::size_t m = static_cast<std::size_t>(f.target_dim) + 2;
    std::vector<std::vector<rational>> a(m, std::vector<rational>(ns + nt, rational(0)));
    std::vector<rational> b(m, rational(0));
    for (int axis = 0; axis < f.target_dim; ++axis) {
        for (std::size_t i = 0; i < ns; ++i)
            a[static_cast<std::size_t>(axis)][i] =
                f.vertex_image(sigma[i])[static_cast<std::size_t>(axis)];
        for (std::size_t j = 0; j < nt; ++j)
            a[static_cast<std::size_t>(axis)][ns + j] =
                -f.vertex_image(tau[j])[static_cast<std::size_t>(axis)];
    }
    for (std::size_t i = 0; i < ns; ++i) a[m - 2][i] = 1;
    b[m - 2] = 1;
    for (std::size_t j = 0; j < nt; ++j) a[m - 1][ns + j] = 1;
    b[m - 1] = 1;
    auto x = detail::lp_feasible_point(std::move(a), std::move(b));
    if (!x) return std::nullopt;
    std::vector<rational> witness(static_cast<std::size_t>(f.target_dim), rational(0));
    for (int axis = 0; axis < f.target_dim; ++axis)
        for (std::size_t i = 0; i < ns; ++i)
            witness[static_cast<std::size_t>(axis)] +=
                (*x)[i] * f.vertex_image(sigma[i])[static_cast<std::size_t>(axis)];
    return witness;
}

struct coincidence {
    simplex sigma;
    simplex tau;
    std::vector<rational> witness;
};

// Scans disjoint simplex pairs with dim(sigma) + dim(tau) <= max_dim_sum in
// deterministic order (dim sum, then lexicographic) and returns the first
// pair whose images intersect.
inline std::optional<coincidence> find_coincidence_pair(const pl_map& f, int max_dim_sum) {
    std::vector<simplex> all;
    for (int q = 0; q <= f.complex.dim(); ++q) {
        auto fs = f.complex.faces(q);
        all.insert(all.end(), fs.begin(), fs.end());
    }
    struct entry {
        int dim_sum;
        const simplex* s;
        const simplex* t;
    };
    std::vector<entry> pairs;
    for (const auto& s : all)
        for (const auto& t : all) {
            if (!(s < t)) continue;  // unordered pairs; the predicate is symmetric
            const int ds = static_cast<int>(s.size() + t.size()) - 2;
            if (ds > max_dim_sum) continue;
            simplex inter;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) continue;
            pairs.push_back({ds, &s, &t});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const entry& a, const entry& b) {
        if (a.dim_sum != b.dim_sum) return a.dim_sum < b.dim_sum;
        if (*a.s != *b.s) return *a.s < *b.s;
        return *a.t < *b.t;
    });
    for (const auto& e : pairs)
        if (auto w = simplex_images_intersect(f, *e.s, *e.t))
            return coincidence{*e.s, *e.t, std::move(*w)};
    return std::nullopt;
}

// Deterministic pseudo-random integer coordinates in [-range, range].
inline pl_map random_rational_map(const simplicial_complex& k, int m, std::uint64_t seed,
                                  int range = 100) {
    if (m < 1) throw usage_error("random_rational_map: target dimension must be >= 1");
    if (range < 1) throw usage_error("random_rational_map: range must be >= 1");
    pl_map f;
    f.complex = k;
    f.target_dim = m;
    std::mt19937_64 gen(seed);
    const std::uint64_t span = static_cast<std::uint64_t>(2 * range + 1);
    f.coords.resize(k.n_vertices());
    for (std::size_t v = 0; v < k.n_vertices(); ++v) {
        f.coords[v].reserve(static_cast<std::size_t>(m));
        for (int axis = 0; axis < m; ++axis) {
            const long long val = static_cast<long long>(gen() % span) - range;
            f.coords[v].emplace_back(val);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// PL map files: {"target_dim": m, "coordinates": {label: [num|"p/q", ...]}}

inline pl_map pl_map_from_json(const nlohmann::json& j, const simplicial_complex& k) {
    if (!j.contains("target_dim") || !j.contains("coordinates"))
        throw usage_error("map document needs 'target_dim' and 'coordinates'");
    pl_map f;
    f.complex = k;
    f.target_dim = j["target_dim"].get<int>();
    if (f.target_dim < 1) throw usage_error("target_dim must be >= 1");
    f.coords.assign(k.n_vertices(), {});
    const auto& cj = j["coordinates"];
    for (std::size_t v = 0; v < k.n_vertices(); ++v) {
        const std::string key = label_to_string(k.labels()[v]);
        if (!cj.contains(key)) throw usage_error("map is missing coordinates for vertex " + key);
        for (const auto& ent : cj.at(key)) {
            if (ent.is_number_integer())
                f.coords[v].emplace_back(ent.get<std::int64_t>());
            else if (ent.is_string())
                f.coords[v].push_back(rational_from_string(ent.get<std::string>()));
            else
                throw usage_error("coordinates must be integers or 'p/q' strings");
        }
        if (f.coords[v].size() != static_cast<std::size_t>(f.target_dim))
            throw usage_error("vertex " + key + " has " + std::to_string(f.coords[v].size()) +
                              " coordinates, expected " + std::to_string(f.target_dim));
    }
    return f;
}

inline nlohmann::json pl_map_to_json(const pl_map& f) {
    nlohmann::json j;
    j["format"] = "swheight-plmap/1";
    j["target_dim"] = f.target_dim;
    nlohmann::json cj = nlohmann::json::object();
    for (std::size_t v = 0; v < f.complex.n_vertices(); ++v) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& r : f.coords[v]) row.push_back(rational_to_string(r));
        cj[label_to_string(f.complex.labels()[v])] = row;
    }
    j["coordinates"] = cj;
    return j;
}

}  // namespace swh
