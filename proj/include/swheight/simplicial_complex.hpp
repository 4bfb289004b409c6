#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "swheight/errors.hpp"

namespace swh {

// Vertex labels are integers or strings; integers order before strings.
using vertex_label = std::variant<std::int64_t, std::string>;

inline std::string label_to_string(const vertex_label& l) {
    if (std::holds_alternative<std::int64_t>(l)) return std::to_string(std::get<std::int64_t>(l));
    return std::get<std::string>(l);
}

// Dense vertex index within one complex. The index order is the global
// vertex order every downstream construction relies on.
using vertex_id = int;

// A simplex is a sorted vector of dense vertex ids.
using simplex = std::vector<vertex_id>;

// Abstract simplicial complex given by its facets. Downward closure is
// implied; faces are enumerated on demand.
class simplicial_complex {
public:
    static simplicial_complex from_facets(const std::vector<std::vector<vertex_label>>& facets) {
        if (facets.empty()) throw usage_error("complex needs at least one facet");
        std::set<vertex_label> label_set;
        for (const auto& f : facets) {
            if (f.empty()) throw usage_error("empty facet");
            label_set.insert(f.begin(), f.end());
        }
        simplicial_complex k;
        k.labels_.assign(label_set.begin(), label_set.end());
        std::map<vertex_label, vertex_id> id_of;
        for (vertex_id i = 0; i < static_cast<vertex_id>(k.labels_.size()); ++i)
            id_of[k.labels_[i]] = i;
        std::set<simplex> raw;
        for (const auto& f : facets) {
            simplex s;
            for (const auto& l : f) s.push_back(id_of.at(l));
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            raw.insert(std::move(s));
        }
        // absorb nested facets
        for (const auto& s : raw) {
            bool maximal = true;
            for (const auto& t : raw)
                if (&s != &t && s.size() < t.size() &&
                    std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                    maximal = false;
                    break;
                }
            if (maximal) k.facets_.push_back(s);
        }
        std::sort(k.facets_.begin(), k.facets_.end());
        return k;
    }

    // Facets given directly as dense ids 0..n-1 with integer labels 0..n-1.
    static simplicial_complex from_id_facets(int n_vertices, std::vector<simplex> facets) {
        std::vector<std::vector<vertex_label>> lf;
        lf.reserve(facets.size());
        for (auto& f : facets) {
            std::vector<vertex_label> row;
            for (auto v : f) {
                if (v < 0 || v >= n_vertices) throw usage_error("facet vertex out of range");
                row.emplace_back(static_cast<std::int64_t>(v));
            }
            lf.push_back(std::move(row));
        }
        // ensure isolated vertices are impossible by construction: every vertex
        // must occur in some facet, which from_facets enforces by building the
        // label set from the facets themselves
        auto k = from_facets(lf);
        return k;
    }

    std::size_t n_vertices() const { return labels_.size(); }
    const std::vector<vertex_label>& labels() const { return labels_; }
    const std::vector<simplex>& facets() const { return facets_; }

    int dim() const {
        std::size_t m = 0;
        for (const auto& f : facets_) m = std::max(m, f.size());
        return static_cast<int>(m) - 1;
    }

    bool contains(const simplex& s) const {
        for (const auto& f : facets_)
            if (std::includes(f.begin(), f.end(), s.begin(), s.end())) return true;
        return false;
    }

    // All q-dimensional faces, sorted, deduplicated.
    std::vector<simplex> faces(int q) const {
        std::set<simplex> out;
        const std::size_t want = static_cast<std::size_t>(q) + 1;
        for (const auto& f : facets_) {
            if (f.size() < want) continue;
            // enumerate `want`-subsets of f
            std::vector<std::size_t> idx(want);
            for (std::size_t i = 0; i < want; ++i) idx[i] = i;
            bool more = true;
            while (more) {
                simplex s(want);
                for (std::size_t i = 0; i < want; ++i) s[i] = f[idx[i]];
                out.insert(std::move(s));
                more = false;
                for (std::size_t i = want; i-- > 0;) {
                    if (idx[i] + (want - i) < f.size()) {
                        ++idx[i];
                        for (std::size_t j = i + 1; j < want; ++j) idx[j] = idx[j - 1] + 1;
                        more = true;
                        break;
                    }
                }
            }
        }
        return {out.begin(), out.end()};
    }

    // Faces of every dimension, indexed by dimension.
    std::vector<std::vector<simplex>> all_faces() const {
        std::vector<std::vector<simplex>> out(static_cast<std::size_t>(dim()) + 1);
        for (int q = 0; q <= dim(); ++q) out[q] = faces(q);
        return out;
    }

    std::size_t face_count(int q) const { return faces(q).size(); }

    long long euler_characteristic() const {
        long long chi = 0;
        for (int q = 0; q <= dim(); ++q)
            chi += (q % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(face_count(q));
        return chi;
    }

    simplicial_complex skeleton(int n) const {
        if (n < 0) throw usage_error("skeleton dimension must be >= 0");
        if (n >= dim()) return *this;
        std::vector<std::vector<vertex_label>> new_facets;
        for (const auto& s : faces(n)) {
            std::vector<vertex_label> row;
            for (auto v : s) row.push_back(labels_[v]);
            new_facets.push_back(std::move(row));
        }
        for (const auto& f : facets_)
            if (static_cast<int>(f.size()) - 1 < n) {
                std::vector<vertex_label> row;
                for (auto v : f) row.push_back(labels_[v]);
                new_facets.push_back(std::move(row));
            }
        return from_facets(new_facets);
    }

private:
    std::vector<vertex_label> labels_;  // sorted; position = dense id
    std::vector<simplex> facets_;
};

// Weak sanity check that a complex could triangulate a closed manifold:
// pure, every ridge in exactly two facets, facet graph connected.
struct pseudomanifold_report {
    bool pure = false;
    bool ridges_in_two_facets = false;
    bool facet_connected = false;
    bool pass() const { return pure && ridges_in_two_facets && facet_connected; }
};

inline pseudomanifold_report check_closed_pseudomanifold(const simplicial_complex& k) {
    pseudomanifold_report rep;
    const auto& facets = k.facets();
    const std::size_t fs = facets.front().size();
    rep.pure = std::all_of(facets.begin(), facets.end(),
                           [&](const simplex& f) { return f.size() == fs; });
    if (!rep.pure) return rep;

    std::map<simplex, int> ridge_count;
    for (const auto& f : facets)
        for (std::size_t i = 0; i < f.size(); ++i) {
            simplex r = f;
            r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
            ++ridge_count[r];
        }
    rep.ridges_in_two_facets = std::all_of(ridge_count.begin(), ridge_count.end(),
                                           [](const auto& kv) { return kv.second == 2; });

    // facet adjacency across shared ridges
    std::vector<int> comp(facets.size(), -1);
    std::vector<std::size_t> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < facets.size(); ++v) {
            if (comp[v] >= 0) continue;
            simplex inter;
            std::set_intersection(facets[u].begin(), facets[u].end(), facets[v].begin(),
                                  facets[v].end(), std::back_inserter(inter));
            if (inter.size() == fs - 1) {
                comp[v] = 0;
                stack.push_back(v);
            }
        }
    }
    rep.facet_connected =
        std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
    return rep;
}

// ---------------------------------------------------------------------------
// Complex file format: {"facets": [[labels]...], "vertices": [labels] (optional)}

inline vertex_label label_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return vertex_label{j.get<std::int64_t>()};
    if (j.is_string()) return vertex_label{j.get<std::string>()};
    throw usage_error("vertex labels must be integers or strings");
}

inline nlohmann::json label_to_json(const vertex_label& l) {
    if (std::holds_alternative<std::int64_t>(l)) return std::get<std::int64_t>(l);
    return std::get<std::string>(l);
}

inline simplicial_complex complex_from_json(const nlohmann::json& j) {
    if (!j.contains("facets") || !j["facets"].is_array())
        throw usage_error("complex document needs a 'facets' array");
    std::vector<std::vector<vertex_label>> facets;
    for (const auto& f : j["facets"]) {
        std::vector<vertex_label> row;
        for (const auto& v : f) row.push_back(label_from_json(v));
        facets.push_back(std::move(row));
    }
    auto k = simplicial_complex::from_facets(facets);
    if (j.contains("vertices")) {
        // if given, the vertex list must cover every vertex used by facets
        std::set<vertex_label> declared;
        for (const auto& v : j["vertices"]) declared.insert(label_from_json(v));
        for (const auto& l : k.labels())
            if (!declared.count(l))
                throw usage_error("facet vertex " + label_to_string(l) +
                                  " missing from 'vertices'");
    }
    return k;
}

inline nlohmann::json complex_to_json(const simplicial_complex& k) {
    nlohmann::json j;
    j["format"] = "swheight-complex/1";
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& l : k.labels()) verts.push_back(label_to_json(l));
    j["vertices"] = verts;
    nlohmann::json facets = nlohmann::json::array();
    for (const auto& f : k.facets()) {
        nlohmann::json row = nlohmann::json::array();
        for (auto v : f) row.push_back(label_to_json(k.labels()[v]));
        facets.push_back(row);
    }
    j["facets"] = facets;
    return j;
}

}  // namespace swh
