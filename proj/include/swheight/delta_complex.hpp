#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swheight/errors.hpp"
#include "swheight/gf2.hpp"
#include "swheight/simplicial_complex.hpp"

namespace swh {

// Complex of ordered simplices with explicit face maps. Simplices are NOT
// determined by their vertex sets; quotients below genuinely need that
// generality (distinct simplices may share a vertex list).
struct delta_complex {
    // counts[q] = number of q-simplices
    std::vector<std::size_t> counts;
    // faces[q] has counts[q]*(q+1) entries for q >= 1: d_i of simplex s at
    // position s*(q+1)+i, an id in dimension q-1
    std::vector<std::vector<std::uint32_t>> faces;
    // verts[q] has counts[q]*(q+1) entries: ordered vertex ids (dimension-0
    // simplex ids) of each simplex
    std::vector<std::vector<std::uint32_t>> verts;

    int dim() const { return static_cast<int>(counts.size()) - 1; }
    std::size_t count(int q) const {
        return (q >= 0 && q <= dim()) ? counts[static_cast<std::size_t>(q)] : 0;
    }
    std::uint32_t face(int q, std::uint32_t s, int i) const {
        return faces[static_cast<std::size_t>(q)][s * static_cast<std::uint32_t>(q + 1) +
                                                  static_cast<std::uint32_t>(i)];
    }
    std::uint32_t vertex(int q, std::uint32_t s, int i) const {
        return verts[static_cast<std::size_t>(q)][s * static_cast<std::uint32_t>(q + 1) +
                                                  static_cast<std::uint32_t>(i)];
    }
};

// Checks the simplicial identities d_i d_j = d_{j-1} d_i (i < j) and id
// ranges. Throws integrity_error on failure.
inline void validate_delta(const delta_complex& dc) {
    for (int q = 1; q <= dc.dim(); ++q) {
        const std::size_t nq = dc.count(q);
        if (dc.faces[static_cast<std::size_t>(q)].size() != nq * static_cast<std::size_t>(q + 1))
            throw integrity_error("face array size mismatch in dimension " + std::to_string(q));
        for (std::uint32_t s = 0; s < nq; ++s)
            for (int j = 0; j <= q; ++j) {
                if (dc.face(q, s, j) >= dc.count(q - 1))
                    throw integrity_error("face id out of range in dimension " + std::to_string(q));
                if (q >= 2)
                    for (int i = 0; i < j; ++i)
                        if (dc.face(q - 1, dc.face(q, s, j), i) !=
                            dc.face(q - 1, dc.face(q, s, i), j - 1))
                            throw integrity_error("simplicial identity fails in dimension " +
                                                  std::to_string(q));
            }
    }
}

// Rebuild vertex lists from face maps (vertex i survives deleting all other
// positions, top positions first).
inline void recompute_vertex_lists(delta_complex& dc) {
    dc.verts.assign(dc.counts.size(), {});
    if (dc.counts.empty()) return;
    dc.verts[0].resize(dc.count(0));
    for (std::uint32_t v = 0; v < dc.count(0); ++v) dc.verts[0][v] = v;
    for (int q = 1; q <= dc.dim(); ++q) {
        auto& out = dc.verts[static_cast<std::size_t>(q)];
        out.resize(dc.count(q) * static_cast<std::size_t>(q + 1));
        for (std::uint32_t s = 0; s < dc.count(q); ++s)
            for (int i = 0; i <= q; ++i) {
                std::uint32_t cur = s;
                for (int j = q; j > i; --j) cur = dc.face(j, cur, j);
                for (int j = i; j > 0; --j) cur = dc.face(j, cur, 0);
                out[s * static_cast<std::size_t>(q + 1) + static_cast<std::size_t>(i)] = cur;
            }
    }
}

// Free simplicial involution on a delta complex.
struct equivariant_delta_complex {
    delta_complex dc;
    std::vector<std::vector<std::uint32_t>> invol;  // per dimension
    // For deleted products: the (u, v) vertex pair behind each 0-simplex.
    std::vector<std::pair<vertex_id, vertex_id>> vertex_pairs;

    // A vertex is the canonical lift of its orbit when its id is smaller
    // than its partner's. For deleted products ids follow the lexicographic
    // pair order, so canonical means u < v.
    bool not_canonical(std::uint32_t v) const { return invol[0][v] < v; }
};

// ---------------------------------------------------------------------------
// Deleted product

struct cell_pair {
    simplex sigma;
    simplex tau;
};

// All ordered pairs of disjoint simplices of k, both orders present,
// sorted by (dim sum, sigma, tau).
inline std::vector<cell_pair> deleted_cell_pairs(const simplicial_complex& k) {
    std::vector<simplex> all;
    for (int q = 0; q <= k.dim(); ++q) {
        auto fs = k.faces(q);
        all.insert(all.end(), fs.begin(), fs.end());
    }
    std::vector<cell_pair> out;
    for (const auto& s : all)
        for (const auto& t : all) {
            simplex inter;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) out.push_back({s, t});
        }
    std::sort(out.begin(), out.end(), [](const cell_pair& a, const cell_pair& b) {
        const std::size_t da = a.sigma.size() + a.tau.size();
        const std::size_t db = b.sigma.size() + b.tau.size();
        if (da != db) return da < db;
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.tau < b.tau;
    });
    return out;
}

namespace detail {

using chain = std::vector<std::pair<vertex_id, vertex_id>>;

inline chain swap_chain(const chain& c) {
    chain s;
    s.reserve(c.size());
    for (const auto& [u, v] : c) s.emplace_back(v, u);
    return s;
}

// Monotone staircases on the |U| x |V| grid from corner to corner with
// unit steps right/up/diagonal. Exactly the simplices of the product
// triangulation whose projections are all of U and V.
inline void enumerate_staircases(const simplex& U, const simplex& V, int max_len,
                                 std::vector<std::vector<chain>>& per_dim) {
    const int a = static_cast<int>(U.size()) - 1;
    const int b = static_cast<int>(V.size()) - 1;
    chain cur;
    cur.reserve(static_cast<std::size_t>(a + b + 1));
    // iterative DFS over (i, j) with explicit stack of step choices
    struct frame {
        int i, j, next_step;
    };
    std::vector<frame> stack;
    stack.reserve(static_cast<std::size_t>(a + b) + 2);
    cur.emplace_back(U[0], V[0]);
    stack.push_back({0, 0, 0});
    while (!stack.empty()) {
        frame& f = stack.back();
        if (f.i == a && f.j == b) {
            const int d = static_cast<int>(cur.size()) - 1;
            if (static_cast<int>(per_dim.size()) <= d) per_dim.resize(static_cast<std::size_t>(d) + 1);
            per_dim[static_cast<std::size_t>(d)].push_back(cur);
            stack.pop_back();
            cur.pop_back();
            continue;
        }
        // prune: the cheapest completion uses max(a-i, b-j) more points
        if (static_cast<int>(cur.size()) + std::max(a - f.i, b - f.j) > max_len) {
            stack.pop_back();
            cur.pop_back();
            continue;
        }
        bool pushed = false;
        while (!pushed && f.next_step < 3) {
            const int step = f.next_step++;
            const int ni = f.i + (step == 0 || step == 2 ? 1 : 0);
            const int nj = f.j + (step == 1 || step == 2 ? 1 : 0);
            if (ni > a || nj > b) continue;
            cur.emplace_back(U[static_cast<std::size_t>(ni)], V[static_cast<std::size_t>(nj)]);
            stack.push_back({ni, nj, 0});  // invalidates f; loop exits via pushed
            pushed = true;
        }
        if (!pushed) {
            stack.pop_back();
            cur.pop_back();
        }
    }
}

inline std::uint32_t chain_id(const std::vector<chain>& sorted, const chain& c) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
    if (it == sorted.end() || *it != c) throw integrity_error("chain lookup failed");
    return static_cast<std::uint32_t>(it - sorted.begin());
}

}  // namespace detail

// Canonical triangulation of the simplicial deleted product: simplices are
// the strictly increasing chains of vertex pairs (componentwise order)
// whose two projections are disjoint simplices of k. The coordinate swap is
// a free simplicial involution. If max_dim >= 0, only dimensions <= max_dim
// are built (faces of kept simplices are always present).
inline equivariant_delta_complex triangulated_deleted_product(const simplicial_complex& k,
                                                              int max_dim = -1) {
    const long long cap = max_dim < 0 ? (1LL << 20) : max_dim;
    std::vector<std::vector<detail::chain>> per_dim;
    for (const auto& pr : deleted_cell_pairs(k)) {
        const int lo = static_cast<int>(std::max(pr.sigma.size(), pr.tau.size())) - 1;
        if (lo > cap) continue;
        const long long full = static_cast<long long>(pr.sigma.size() + pr.tau.size());
        detail::enumerate_staircases(pr.sigma, pr.tau,
                                     static_cast<int>(std::min(cap + 1, full)), per_dim);
    }
    equivariant_delta_complex x;
    const int dmax = static_cast<int>(per_dim.size()) - 1;
    x.dc.counts.resize(static_cast<std::size_t>(dmax) + 1);
    x.dc.faces.resize(static_cast<std::size_t>(dmax) + 1);
    x.dc.verts.resize(static_cast<std::size_t>(dmax) + 1);
    x.invol.resize(static_cast<std::size_t>(dmax) + 1);
    for (int q = 0; q <= dmax; ++q) {
        auto& chains = per_dim[static_cast<std::size_t>(q)];
        std::sort(chains.begin(), chains.end());
        x.dc.counts[static_cast<std::size_t>(q)] = chains.size();
    }
    if (dmax >= 0)
        for (const auto& c : per_dim[0]) x.vertex_pairs.push_back(c[0]);
    for (int q = 0; q <= dmax; ++q) {
        const auto& chains = per_dim[static_cast<std::size_t>(q)];
        auto& faces = x.dc.faces[static_cast<std::size_t>(q)];
        auto& verts = x.dc.verts[static_cast<std::size_t>(q)];
        auto& inv = x.invol[static_cast<std::size_t>(q)];
        verts.resize(chains.size() * static_cast<std::size_t>(q + 1));
        inv.resize(chains.size());
        if (q >= 1) faces.resize(chains.size() * static_cast<std::size_t>(q + 1));
        for (std::uint32_t s = 0; s < chains.size(); ++s) {
            const auto& c = chains[s];
            for (int i = 0; i <= q; ++i) {
                detail::chain point{c[static_cast<std::size_t>(i)]};
                verts[s * static_cast<std::size_t>(q + 1) + static_cast<std::size_t>(i)] =
                    detail::chain_id(per_dim[0], point);
                if (q >= 1) {
                    detail::chain sub = c;
                    sub.erase(sub.begin() + i);
                    faces[s * static_cast<std::size_t>(q + 1) + static_cast<std::size_t>(i)] =
                        detail::chain_id(per_dim[static_cast<std::size_t>(q - 1)], sub);
                }
            }
            inv[s] = detail::chain_id(chains, detail::swap_chain(c));
        }
    }
    return x;
}

// A simplicial complex with a free, order-preserving vertex involution,
// viewed as an equivariant delta complex (used for antipodal spheres).
inline equivariant_delta_complex equivariant_from_involution(const simplicial_complex& k,
                                                             const std::vector<vertex_id>& inv) {
    const std::size_t n = k.n_vertices();
    if (inv.size() != n) throw usage_error("involution size mismatch");
    for (std::size_t v = 0; v < n; ++v) {
        if (inv[v] < 0 || static_cast<std::size_t>(inv[v]) >= n ||
            inv[static_cast<std::size_t>(inv[v])] != static_cast<vertex_id>(v))
            throw usage_error("vertex map is not an involution");
    }
    for (const auto& f : k.facets())
        for (std::size_t i = 1; i < f.size(); ++i)
            if (inv[static_cast<std::size_t>(f[i - 1])] >= inv[static_cast<std::size_t>(f[i])])
                throw usage_error(
                    "involution is not order-preserving on a facet; relabel the complex");

    auto all = k.all_faces();
    const int dmax = k.dim();
    equivariant_delta_complex x;
    x.dc.counts.resize(static_cast<std::size_t>(dmax) + 1);
    x.dc.faces.resize(static_cast<std::size_t>(dmax) + 1);
    x.dc.verts.resize(static_cast<std::size_t>(dmax) + 1);
    x.invol.resize(static_cast<std::size_t>(dmax) + 1);
    auto find = [](const std::vector<simplex>& v, const simplex& s) {
        auto it = std::lower_bound(v.begin(), v.end(), s);
        if (it == v.end() || *it != s) throw integrity_error("face lookup failed");
        return static_cast<std::uint32_t>(it - v.begin());
    };
    for (int q = 0; q <= dmax; ++q) {
        const auto& fs = all[static_cast<std::size_t>(q)];
        x.dc.counts[static_cast<std::size_t>(q)] = fs.size();
        auto& faces = x.dc.faces[static_cast<std::size_t>(q)];
        auto& verts = x.dc.verts[static_cast<std::size_t>(q)];
        auto& iv = x.invol[static_cast<std::size_t>(q)];
        verts.resize(fs.size() * static_cast<std::size_t>(q + 1));
        iv.resize(fs.size());
        if (q >= 1) faces.resize(fs.size() * static_cast<std::size_t>(q + 1));
        for (std::uint32_t s = 0; s < fs.size(); ++s) {
            const simplex& f = fs[s];
            simplex img(f.size());
            for (std::size_t i = 0; i < f.size(); ++i)
                img[i] = inv[static_cast<std::size_t>(f[i])];
            iv[s] = find(fs, img);
            for (int i = 0; i <= q; ++i) {
                simplex vtx{f[static_cast<std::size_t>(i)]};
                verts[s * static_cast<std::size_t>(q + 1) + static_cast<std::size_t>(i)] =
                    find(all[0], vtx);
                if (q >= 1) {
                    simplex sub = f;
                    sub.erase(sub.begin() + i);
                    faces[s * static_cast<std::size_t>(q + 1) + static_cast<std::size_t>(i)] =
                        find(all[static_cast<std::size_t>(q - 1)], sub);
                }
            }
        }
    }
    return x;
}

// Equivariant n-skeleton: drop all simplices of dimension > n.
inline equivariant_delta_complex equivariant_skeleton(const equivariant_delta_complex& x, int n) {
    if (n < 0) throw usage_error("skeleton dimension must be >= 0");
    if (n >= x.dc.dim()) return x;
    equivariant_delta_complex out;
    const std::size_t keep = static_cast<std::size_t>(n) + 1;
    out.dc.counts.assign(x.dc.counts.begin(), x.dc.counts.begin() + static_cast<std::ptrdiff_t>(keep));
    out.dc.faces.assign(x.dc.faces.begin(), x.dc.faces.begin() + static_cast<std::ptrdiff_t>(keep));
    out.dc.verts.assign(x.dc.verts.begin(), x.dc.verts.begin() + static_cast<std::ptrdiff_t>(keep));
    out.invol.assign(x.invol.begin(), x.invol.begin() + static_cast<std::ptrdiff_t>(keep));
    out.vertex_pairs = x.vertex_pairs;
    return out;
}

// ---------------------------------------------------------------------------
// Swap quotient

struct quotient_complex {
    delta_complex dc;
    // z[e] for each 1-simplex: the double-cover cocycle whose class is the
    // Stiefel-Whitney class of the source
    bit_vector z;
    // per dimension, per simplex: bit i set when vertex i of the chosen
    // representative is not the canonical lift of its orbit
    std::vector<std::vector<std::uint32_t>> lift_pattern;
    // per dimension: orbit -> representative simplex id upstairs
    std::vector<std::vector<std::uint32_t>> rep;
    // per dimension: upstairs simplex id -> orbit id
    std::vector<std::vector<std::uint32_t>> orbit_of;

    long long euler_characteristic() const {
        long long chi = 0;
        for (int q = 0; q <= dc.dim(); ++q)
            chi += (q % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(dc.count(q));
        return chi;
    }
};

inline long long euler_characteristic(const equivariant_delta_complex& x) {
    long long chi = 0;
    for (int q = 0; q <= x.dc.dim(); ++q)
        chi += (q % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(x.dc.count(q));
    return chi;
}

inline quotient_complex swap_quotient(const equivariant_delta_complex& x) {
    const int dmax = x.dc.dim();
    // assert the involution is free, involutive and simplicial
    for (int q = 0; q <= dmax; ++q) {
        const auto& inv = x.invol[static_cast<std::size_t>(q)];
        if (inv.size() != x.dc.count(q)) throw integrity_error("involution array size mismatch");
        for (std::uint32_t s = 0; s < inv.size(); ++s) {
            if (inv[s] == s)
                throw integrity_error("involution fixes a simplex in dimension " +
                                      std::to_string(q) + "; quotient undefined");
            if (inv[inv[s]] != s) throw integrity_error("involution does not square to identity");
            if (q >= 1)
                for (int i = 0; i <= q; ++i)
                    if (x.dc.face(q, inv[s], i) !=
                        x.invol[static_cast<std::size_t>(q - 1)][x.dc.face(q, s, i)])
                        throw integrity_error("involution does not commute with face maps");
        }
    }

    quotient_complex qc;
    qc.dc.counts.resize(static_cast<std::size_t>(dmax) + 1);
    qc.dc.faces.resize(static_cast<std::size_t>(dmax) + 1);
    qc.dc.verts.resize(static_cast<std::size_t>(dmax) + 1);
    qc.lift_pattern.resize(static_cast<std::size_t>(dmax) + 1);
    qc.rep.resize(static_cast<std::size_t>(dmax) + 1);
    qc.orbit_of.resize(static_cast<std::size_t>(dmax) + 1);

    for (int q = 0; q <= dmax; ++q) {
        const auto& inv = x.invol[static_cast<std::size_t>(q)];
        auto& rep = qc.rep[static_cast<std::size_t>(q)];
        auto& orb = qc.orbit_of[static_cast<std::size_t>(q)];
        orb.assign(x.dc.count(q), 0);
        for (std::uint32_t s = 0; s < x.dc.count(q); ++s)
            if (s < inv[s]) {
                orb[s] = orb[inv[s]] = static_cast<std::uint32_t>(rep.size());
                rep.push_back(s);
            }
        qc.dc.counts[static_cast<std::size_t>(q)] = rep.size();
        if (2 * rep.size() != x.dc.count(q))
            throw integrity_error("orbit count mismatch in dimension " + std::to_string(q));
    }

    for (int q = 0; q <= dmax; ++q) {
        const auto& rep = qc.rep[static_cast<std::size_t>(q)];
        auto& faces = qc.dc.faces[static_cast<std::size_t>(q)];
        auto& verts = qc.dc.verts[static_cast<std::size_t>(q)];
        auto& pat = qc.lift_pattern[static_cast<std::size_t>(q)];
        verts.resize(rep.size() * static_cast<std::size_t>(q + 1));
        pat.assign(rep.size(), 0);
        if (q >= 1) faces.resize(rep.size() * static_cast<std::size_t>(q + 1));
        for (std::uint32_t o = 0; o < rep.size(); ++o) {
            const std::uint32_t s = rep[o];
            for (int i = 0; i <= q; ++i) {
                const std::uint32_t w = x.dc.vertex(q, s, i);
                verts[o * static_cast<std::size_t>(q + 1) + static_cast<std::size_t>(i)] =
                    qc.orbit_of[0][w];
                if (x.not_canonical(w)) pat[o] |= (std::uint32_t{1} << i);
                if (q >= 1)
                    faces[o * static_cast<std::size_t>(q + 1) + static_cast<std::size_t>(i)] =
                        qc.orbit_of[static_cast<std::size_t>(q - 1)][x.dc.face(q, s, i)];
            }
        }
    }

    // double-cover cocycle on edges: parity of non-canonical endpoints of a
    // representative; independent of the representative choice because the
    // swap flips both indicators
    qc.z = bit_vector(qc.dc.count(1));
    if (dmax >= 1)
        for (std::uint32_t o = 0; o < qc.dc.count(1); ++o) {
            const std::uint32_t p = qc.lift_pattern[1][o];
            if ((p ^ (p >> 1)) & 1u) qc.z.set(o);
        }

    if (euler_characteristic(x) != 2 * qc.euler_characteristic())
        throw integrity_error("quotient Euler characteristic is not half the source's");
    return qc;
}

// ---------------------------------------------------------------------------
// Emission of a quotient for inspection, and re-ingestion

inline nlohmann::json quotient_to_json(const quotient_complex& qc) {
    nlohmann::json j;
    j["format"] = "swheight-quotient/1";
    j["counts"] = qc.dc.counts;
    nlohmann::json fl = nlohmann::json::array();
    for (int q = 1; q <= qc.dc.dim(); ++q) {
        nlohmann::json dimj = nlohmann::json::array();
        for (std::uint32_t s = 0; s < qc.dc.count(q); ++s) {
            nlohmann::json row = nlohmann::json::array();
            for (int i = 0; i <= q; ++i) row.push_back(qc.dc.face(q, s, i));
            dimj.push_back(row);
        }
        fl.push_back(dimj);
    }
    j["face_maps"] = fl;
    nlohmann::json zj = nlohmann::json::array();
    for (std::size_t e = 0; e < qc.z.size(); ++e) zj.push_back(qc.z.test(e) ? 1 : 0);
    j["z"] = zj;
    return j;
}

struct ingested_quotient {
    delta_complex dc;
    bit_vector z;
};

inline ingested_quotient quotient_from_json(const nlohmann::json& j) {
    if (!j.contains("counts") || !j.contains("face_maps"))
        throw usage_error("quotient document needs 'counts' and 'face_maps'");
    ingested_quotient out;
    out.dc.counts = j["counts"].get<std::vector<std::size_t>>();
    out.dc.faces.resize(out.dc.counts.size());
    const auto& fl = j["face_maps"];
    for (int q = 1; q <= out.dc.dim(); ++q) {
        const auto& dimj = fl[static_cast<std::size_t>(q - 1)];
        auto& faces = out.dc.faces[static_cast<std::size_t>(q)];
        faces.reserve(out.dc.count(q) * static_cast<std::size_t>(q + 1));
        for (const auto& row : dimj)
            for (const auto& v : row) faces.push_back(v.get<std::uint32_t>());
        if (faces.size() != out.dc.count(q) * static_cast<std::size_t>(q + 1))
            throw usage_error("face map table size mismatch in dimension " + std::to_string(q));
    }
    recompute_vertex_lists(out.dc);
    validate_delta(out.dc);
    if (j.contains("z")) {
        out.z = bit_vector(out.dc.count(1));
        const auto& zj = j["z"];
        for (std::size_t e = 0; e < zj.size() && e < out.z.size(); ++e)
            if (zj[e].get<int>()) out.z.set(e);
    }
    return out;
}

}  // namespace swh
