#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swheight/char_class.hpp"
#include "swheight/cohomology.hpp"
#include "swheight/delta_complex.hpp"
#include "swheight/simplicial_complex.hpp"

namespace swh {

enum class claim_kind { radon_coincidence, skeleton_non_embeddable };

inline const char* claim_kind_name(claim_kind k) {
    return k == claim_kind::radon_coincidence ? "radon-coincidence" : "skeleton-non-embeddable";
}

// A theorem instance for a manifold whose model satisfies w^(k) != 1.
// Radon claims: every continuous map of a triangulation into R^(D+k) has a
// coincidence pair of disjoint simplices with dim sum <= D+k.
// Skeleton claims (when D = 2d+k+1, d >= k+1): the (d+k)-skeleton of every
// triangulation admits no embedding into R^(2d+2k).
struct verdict {
    std::string manifold;
    int manifold_dim = 0;
    int level = 0;  // k
    claim_kind kind = claim_kind::radon_coincidence;
    int skeleton_dim = -1;  // for skeleton claims
    int target_dim = 0;
    std::vector<int> nonzero_wk_indices;  // i with w_i^(k) != 0
    // proof route: level 0 rests on the Borsuk-Ulam-type bound directly,
    // levels >= 1 on the Radon-type theorem
    std::string route;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["manifold"] = manifold;
        j["manifold_dim"] = manifold_dim;
        j["level"] = level;
        j["kind"] = claim_kind_name(kind);
        if (kind == claim_kind::skeleton_non_embeddable) j["skeleton_dim"] = skeleton_dim;
        j["target_dim"] = target_dim;
        j["nonzero_wk_indices"] = nonzero_wk_indices;
        j["route"] = route;
        return j;
    }
};

// All claims the hypothesis calculus yields for a model of dimension D:
// one Radon claim per level k with w^(k) != 1, plus a skeleton claim
// whenever D = 2d+k+1 for an integer d with k <= d-1.
inline std::vector<verdict> enumerate_claims(const manifold_model& m, int D) {
    if (m.dimension() != D)
        throw usage_error("model top degree " + std::to_string(m.dimension()) +
                          " does not match dimension " + std::to_string(D));
    std::vector<verdict> out;
    for (int k = 0; k <= D - 1; ++k) {
        const auto res = wk_classes(m, k);
        if (!res.nontrivial) continue;
        std::vector<int> idx;
        for (int i = 1; i <= D; ++i)
            if (!res.wk[static_cast<std::size_t>(i - 1)].is_zero()) idx.push_back(i);
        verdict radon;
        radon.manifold = m.name;
        radon.manifold_dim = D;
        radon.level = k;
        radon.kind = claim_kind::radon_coincidence;
        radon.target_dim = D + k;
        radon.nonzero_wk_indices = idx;
        radon.route = k == 0 ? "borsuk-ulam" : "radon";
        out.push_back(radon);
        // D = 2d + k + 1 with d >= k + 1
        if ((D - k - 1) % 2 == 0) {
            const int d = (D - k - 1) / 2;
            if (d >= 1 && k <= d - 1) {
                verdict skel = radon;
                skel.kind = claim_kind::skeleton_non_embeddable;
                skel.skeleton_dim = d + k;
                skel.target_dim = 2 * d + 2 * k;
                skel.route = "constraint(" + radon.route + ")";
                out.push_back(skel);
            }
        }
    }
    return out;
}

// Certification of the height bound h(deleted product) >= D + level on a
// concrete triangulation. The deleted product is built up to dimension
// D + level only: reaching the cap certifies the bound for the full space
// (skeleton inclusions keep cup powers nonzero downward), and a smaller
// exact answer refutes it.
struct certification {
    std::string complex_name;
    int manifold_dim = 0;
    int level = 0;
    int required_height = 0;
    pseudomanifold_report manifold_check;
    bool hypothesis_evaluated = false;
    bool hypothesis_nontrivial = false;
    height_report height;
    bool bound_holds = false;
    bool certified = false;  // bound_holds and the hypothesis held (when given)

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["complex"] = complex_name;
        j["manifold_dim"] = manifold_dim;
        j["level"] = level;
        j["required_height"] = required_height;
        nlohmann::json mc;
        mc["pure"] = manifold_check.pure;
        mc["ridges_in_two_facets"] = manifold_check.ridges_in_two_facets;
        mc["facet_connected"] = manifold_check.facet_connected;
        mc["pass"] = manifold_check.pass();
        j["manifold_check"] = mc;
        j["hypothesis_evaluated"] = hypothesis_evaluated;
        if (hypothesis_evaluated) j["hypothesis_nontrivial"] = hypothesis_nontrivial;
        j["height"] = height.to_json();
        j["height_is_lower_bound"] = height.capped;
        j["bound_holds"] = bound_holds;
        j["certified"] = certified;
        return j;
    }
};

inline certification certify_height_bound(const simplicial_complex& k, int D, int level,
                                          const manifold_model* model = nullptr,
                                          const std::string& name = "",
                                          int max_degree = -1) {
    if (D < 1) throw usage_error("certify_height_bound: dimension must be >= 1");
    if (level < 0 || level > D - 1)
        throw usage_error("certify_height_bound: level out of range 0..D-1");
    certification cert;
    cert.complex_name = name;
    cert.manifold_dim = D;
    cert.level = level;
    cert.required_height = D + level;
    cert.manifold_check = check_closed_pseudomanifold(k);
    if (model) {
        cert.hypothesis_evaluated = true;
        cert.hypothesis_nontrivial = wk_classes(*model, level).nontrivial;
    }
    const int cap = max_degree < 0 ? cert.required_height : max_degree;
    const auto x = triangulated_deleted_product(k, cap);
    const auto q = swap_quotient(x);
    cert.height = sw_height(q, cap);
    // reaching the cap means h >= cap for the full deleted product; below
    // the cap the computed value is exact
    cert.bound_holds = cert.height.h >= cert.required_height;
    cert.certified = cert.bound_holds && (!cert.hypothesis_evaluated || cert.hypothesis_nontrivial);
    return cert;
}

}  // namespace swh
