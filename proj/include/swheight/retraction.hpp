#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swheight/errors.hpp"
#include "swheight/simplicial_complex.hpp"

namespace swh {

// Barycentric point of a complex: dense coordinates over all vertices,
// nonnegative, summing to one, supported on a simplex.
struct bary_point {
    std::vector<double> t;

    simplex support() const {
        simplex s;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] > 0.0) s.push_back(static_cast<vertex_id>(i));
        return s;
    }
};

inline void validate_bary_point(const simplicial_complex& k, const bary_point& x) {
    if (x.t.size() != k.n_vertices()) throw usage_error("bary point has wrong coordinate count");
    double sum = 0.0;
    for (double v : x.t) {
        if (!(v >= 0.0)) throw usage_error("bary point has a negative or NaN coordinate");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw usage_error("bary point coordinates must sum to 1");
    const simplex s = x.support();
    if (s.empty() || !k.contains(s))
        throw usage_error("bary point support is not a simplex of the complex");
}

// The positive-part map behind the deformation retraction of the deleted
// product onto its simplicial model: delta_i = max(x_i - y_i, 0), then
// normalize. The support shrinks into support(x), so the value stays in k.
inline bary_point alpha(const simplicial_complex& k, const bary_point& x, const bary_point& y) {
    validate_bary_point(k, x);
    validate_bary_point(k, y);
    std::vector<double> delta(x.t.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.t.size(); ++i) {
        delta[i] = std::max(x.t[i] - y.t[i], 0.0);
        sum += delta[i];
    }
    if (sum <= 0.0) throw usage_error("alpha is undefined on the diagonal (x == y)");
    for (auto& v : delta) v /= sum;
    return bary_point{std::move(delta)};
}

// The pair ((1-t)x + t*alpha(x,y), (1-t)y + t*alpha(y,x)). At t = 0 this is
// (x, y); at t = 1 the two supports are disjoint simplices.
inline std::pair<bary_point, bary_point> retraction_path(const simplicial_complex& k,
                                                         const bary_point& x, const bary_point& y,
                                                         double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw usage_error("path parameter must lie in [0, 1]");
    const bary_point ax = alpha(k, x, y);
    const bary_point ay = alpha(k, y, x);
    bary_point px, py;
    px.t.resize(x.t.size());
    py.t.resize(x.t.size());
    for (std::size_t i = 0; i < x.t.size(); ++i) {
        px.t[i] = (1.0 - t) * x.t[i] + t * ax.t[i];
        py.t[i] = (1.0 - t) * y.t[i] + t * ay.t[i];
    }
    return {std::move(px), std::move(py)};
}

struct retraction_report {
    std::size_t samples = 0;
    std::size_t near_diagonal_samples = 0;
    std::uint64_t seed = 0;
    std::size_t endpoint_failures = 0;     // (a) t=1 supports disjoint simplices of k
    std::size_t fixed_point_failures = 0;  // (b) disjoint-support pairs are fixed
    std::size_t stays_in_failures = 0;     // (c) pair stays off the diagonal
    std::size_t equivariance_failures = 0; // (d) path(y,x) is the swap of path(x,y)
    std::vector<std::string> counterexamples;

    bool pass() const {
        return endpoint_failures == 0 && fixed_point_failures == 0 && stays_in_failures == 0 &&
               equivariance_failures == 0;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["samples"] = samples;
        j["near_diagonal_samples"] = near_diagonal_samples;
        j["seed"] = seed;
        j["endpoint_failures"] = endpoint_failures;
        j["fixed_point_failures"] = fixed_point_failures;
        j["stays_in_failures"] = stays_in_failures;
        j["equivariance_failures"] = equivariance_failures;
        j["counterexamples"] = counterexamples;
        j["pass"] = pass();
        return j;
    }
};

namespace detail {

inline double unit_uniform(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline bary_point random_point(const simplicial_complex& k, std::mt19937_64& gen) {
    const auto& facets = k.facets();
    const simplex& f = facets[gen() % facets.size()];
    bary_point p;
    p.t.assign(k.n_vertices(), 0.0);
    double sum = 0.0;
    std::vector<double> raw(f.size());
    for (auto& v : raw) {
        double u = unit_uniform(gen);
        while (u <= 0.0) u = unit_uniform(gen);
        v = -std::log(u);
        sum += v;
    }
    for (std::size_t i = 0; i < f.size(); ++i)
        p.t[static_cast<std::size_t>(f[i])] = raw[i] / sum;
    // renormalize exactly once to tame accumulated error
    double s2 = 0.0;
    for (double v : p.t) s2 += v;
    for (auto& v : p.t) v /= s2;
    return p;
}

inline bool supports_disjoint(const bary_point& a, const bary_point& b) {
    for (std::size_t i = 0; i < a.t.size(); ++i)
        if (a.t[i] > 0.0 && b.t[i] > 0.0) return false;
    return true;
}

inline bool points_equal(const bary_point& a, const bary_point& b, double tol) {
    for (std::size_t i = 0; i < a.t.size(); ++i)
        if (std::abs(a.t[i] - b.t[i]) > tol) return false;
    return true;
}

inline bool points_identical(const bary_point& a, const bary_point& b) {
    return a.t == b.t;
}

inline std::string describe(const bary_point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.t.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p.t[i]);
    }
    return out + ")";
}

}  // namespace detail

// Property harness for the retraction: draws pairs x != y, checks the four
// assertion families at t in {0, 0.1, ..., 1}, plus adversarial
// near-diagonal pairs. Any failure is recorded with its counterexample.
inline retraction_report check_retraction_properties(const simplicial_complex& k,
                                                     std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw usage_error("check_retraction_properties needs samples >= 1");
    retraction_report rep;
    rep.samples = samples;
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    const double tol = 1e-12;

    auto record = [&](std::size_t& counter, const std::string& what, const bary_point& x,
                      const bary_point& y) {
        ++counter;
        if (rep.counterexamples.size() < 10)
            rep.counterexamples.push_back(what + " x=" + detail::describe(x) +
                                          " y=" + detail::describe(y));
    };

    auto run_pair = [&](const bary_point& x, const bary_point& y) {
        // (a) endpoints at t = 1
        const auto end = retraction_path(k, x, y, 1.0);
        const simplex sx = end.first.support();
        const simplex sy = end.second.support();
        if (!detail::supports_disjoint(end.first, end.second) || !k.contains(sx) ||
            !k.contains(sy))
            record(rep.endpoint_failures, "endpoint", x, y);
        // (b) fixed when supports are already disjoint
        if (detail::supports_disjoint(x, y)) {
            for (int step = 0; step <= 10; ++step) {
                const auto pt = retraction_path(k, x, y, 0.1 * step);
                if (!detail::points_equal(pt.first, x, tol) ||
                    !detail::points_equal(pt.second, y, tol)) {
                    record(rep.fixed_point_failures, "fixed-point", x, y);
                    break;
                }
            }
        }
        // (c) stays off the diagonal at sampled times
        for (int step = 0; step <= 10; ++step) {
            const auto pt = retraction_path(k, x, y, 0.1 * step);
            if (detail::points_identical(pt.first, pt.second)) {
                record(rep.stays_in_failures, "diagonal", x, y);
                break;
            }
        }
        // (d) equivariance, bitwise
        for (int step = 0; step <= 10; ++step) {
            const auto pq = retraction_path(k, x, y, 0.1 * step);
            const auto qp = retraction_path(k, y, x, 0.1 * step);
            if (!detail::points_identical(qp.first, pq.second) ||
                !detail::points_identical(qp.second, pq.first)) {
                record(rep.equivariance_failures, "equivariance", x, y);
                break;
            }
        }
    };

    for (std::size_t s = 0; s < samples; ++s) {
        bary_point x = detail::random_point(k, gen);
        bary_point y = detail::random_point(k, gen);
        int guard = 0;
        while (detail::points_identical(x, y) && guard++ < 100)
            y = detail::random_point(k, gen);
        run_pair(x, y);
    }

    // adversarial near-diagonal pairs within one facet
    const std::size_t adversarial = std::max<std::size_t>(samples / 10, 8);
    rep.near_diagonal_samples = adversarial;
    for (std::size_t s = 0; s < adversarial; ++s) {
        bary_point x = detail::random_point(k, gen);
        const simplex sup = x.support();
        if (sup.size() < 2) continue;
        bary_point y = x;
        const double eps = 1e-9;
        const std::size_t a = static_cast<std::size_t>(sup[gen() % sup.size()]);
        std::size_t b = static_cast<std::size_t>(sup[gen() % sup.size()]);
        int guard = 0;
        while (b == a && guard++ < 100) b = static_cast<std::size_t>(sup[gen() % sup.size()]);
        if (b == a) continue;
        const double shift = std::min(eps, y.t[b]);
        y.t[a] += shift;
        y.t[b] -= shift;
        if (detail::points_identical(x, y)) continue;
        // alpha must stay finite
        const bary_point ax = alpha(k, x, y);
        for (double v : ax.t)
            if (std::isnan(v) || std::isinf(v)) {
                record(rep.stays_in_failures, "near-diagonal NaN", x, y);
                break;
            }
        run_pair(x, y);
    }
    return rep;
}

}  // namespace swh
