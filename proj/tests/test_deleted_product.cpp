#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "swheight/corpus.hpp"
#include "swheight/delta_complex.hpp"

using namespace swh;

namespace {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// brute-force oracle: enumerate disjoint simplex pairs directly from subsets
std::size_t count_disjoint_pairs_oracle(const simplicial_complex& k) {
    std::vector<simplex> all;
    for (int q = 0; q <= k.dim(); ++q) {
        auto f = k.faces(q);
        all.insert(all.end(), f.begin(), f.end());
    }
    std::size_t n = 0;
    for (const auto& s : all)
        for (const auto& t : all) {
            simplex inter;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) ++n;
        }
    return n;
}

void check_equivariant_integrity(const equivariant_delta_complex& x) {
    validate_delta(x.dc);
    for (int q = 0; q <= x.dc.dim(); ++q) {
        REQUIRE(x.invol[static_cast<std::size_t>(q)].size() == x.dc.count(q));
        CHECK(x.dc.count(q) % 2 == 0);
        for (std::uint32_t s = 0; s < x.dc.count(q); ++s) {
            const std::uint32_t im = x.invol[static_cast<std::size_t>(q)][s];
            CHECK(im != s);
            CHECK(x.invol[static_cast<std::size_t>(q)][im] == s);
            if (q >= 1)
                for (int i = 0; i <= q; ++i)
                    CHECK(x.dc.face(q, im, i) ==
                          x.invol[static_cast<std::size_t>(q - 1)][x.dc.face(q, s, i)]);
        }
    }
}

}  // namespace

TEST_CASE("deleted cell pairs on small complexes", "[delprod]") {
    auto tri = simplex_complex(2);
    auto pairs = deleted_cell_pairs(tri);
    CHECK(pairs.size() == 12);
    std::size_t vv = 0, ve = 0;
    for (const auto& p : pairs) {
        if (p.sigma.size() == 1 && p.tau.size() == 1) ++vv;
        if (p.sigma.size() + p.tau.size() == 3) ++ve;
    }
    CHECK(vv == 6);
    CHECK(ve == 6);

    auto edge = simplex_complex(1);
    auto ep = deleted_cell_pairs(edge);
    REQUIRE(ep.size() == 2);
    CHECK(ep[0].sigma == simplex{0});
    CHECK(ep[0].tau == simplex{1});
    CHECK(ep[1].sigma == simplex{1});
    CHECK(ep[1].tau == simplex{0});

    // K5: 20 vertex-vertex + 60 vertex-edge + 30 edge-edge
    auto k5 = simplex_complex(4).skeleton(1);
    auto kp = deleted_cell_pairs(k5);
    CHECK(kp.size() == 110);
    CHECK(kp.size() == count_disjoint_pairs_oracle(k5));
    CHECK(count_disjoint_pairs_oracle(tri) == 12);
}

TEST_CASE("triangulated deleted product of an edge is two swapped points", "[delprod]") {
    auto x = triangulated_deleted_product(simplex_complex(1));
    CHECK(x.dc.dim() == 0);
    REQUIRE(x.dc.count(0) == 2);
    CHECK(x.vertex_pairs[0] == std::make_pair(0, 1));
    CHECK(x.vertex_pairs[1] == std::make_pair(1, 0));
    CHECK(x.invol[0][0] == 1);
    CHECK(x.invol[0][1] == 0);
}

TEST_CASE("triangulated deleted product of the triangle is a hexagon", "[delprod]") {
    auto x = triangulated_deleted_product(simplex_complex(2));
    check_equivariant_integrity(x);
    CHECK(x.dc.dim() == 1);
    CHECK(x.dc.count(0) == 6);
    CHECK(x.dc.count(1) == 6);
}

TEST_CASE("staircase chains per cell match the lattice path count", "[delprod][property]") {
    // K = disjoint union of a p-simplex and a q-simplex: top-dimensional
    // chains in the cell sigma x tau are the C(p+q, p) corner-to-corner
    // unit staircases
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            std::vector<std::vector<vertex_label>> facets(2);
            for (int i = 0; i <= p; ++i)
                facets[0].emplace_back(static_cast<std::int64_t>(i));
            for (int j = 0; j <= q; ++j)
                facets[1].emplace_back(static_cast<std::int64_t>(100 + j));
            auto k = simplicial_complex::from_facets(facets);
            auto x = triangulated_deleted_product(k);
            check_equivariant_integrity(x);
            // top cells sigma x tau and tau x sigma, each C(p+q, p) chains
            CHECK(x.dc.count(p + q) == 2 * static_cast<std::size_t>(binomial(p + q, p)));
        }
}

TEST_CASE("chains project to disjoint simplices and avoid swapped duplicates",
          "[delprod][property]") {
    auto k = standard_complex("rp2_6");
    auto x = triangulated_deleted_product(k, 2);
    check_equivariant_integrity(x);
    for (int q = 0; q <= x.dc.dim(); ++q)
        for (std::uint32_t s = 0; s < x.dc.count(q); ++s) {
            std::set<vertex_id> us, vs;
            std::set<std::pair<vertex_id, vertex_id>> seen;
            for (int i = 0; i <= q; ++i) {
                const auto pr = x.vertex_pairs[x.dc.vertex(q, s, i)];
                us.insert(pr.first);
                vs.insert(pr.second);
                CHECK_FALSE(seen.count({pr.second, pr.first}));
                seen.insert(pr);
            }
            simplex u(us.begin(), us.end()), v(vs.begin(), vs.end());
            simplex inter;
            std::set_intersection(u.begin(), u.end(), v.begin(), v.end(),
                                  std::back_inserter(inter));
            CHECK(inter.empty());
            CHECK(k.contains(u));
            CHECK(k.contains(v));
        }
}

TEST_CASE("swap quotient halves every dimension", "[delprod]") {
    for (const char* name : {"rp2_6", "torus_7"}) {
        auto x = triangulated_deleted_product(standard_complex(name), 2);
        auto q = swap_quotient(x);
        for (int d = 0; d <= x.dc.dim(); ++d)
            CHECK(2 * q.dc.count(d) == x.dc.count(d));
        CHECK(euler_characteristic(x) == 2 * q.euler_characteristic());
    }
}

TEST_CASE("quotient z is a cocycle on every 2-simplex", "[delprod][property]") {
    auto x = triangulated_deleted_product(simplex_complex(3));
    auto q = swap_quotient(x);
    REQUIRE(q.dc.dim() >= 2);
    for (std::uint32_t s = 0; s < q.dc.count(2); ++s) {
        bool sum = false;
        for (int i = 0; i <= 2; ++i) sum ^= q.z.test(q.dc.face(2, s, i));
        CHECK_FALSE(sum);
    }
}

TEST_CASE("antipodal square quotients to a circle with twisted double cover", "[delprod]") {
    auto k = cross_polytope_boundary(2);
    auto x = equivariant_from_involution(k, cross_polytope_antipodal(2));
    check_equivariant_integrity(x);
    CHECK(x.dc.count(0) == 4);
    CHECK(x.dc.count(1) == 4);
    auto q = swap_quotient(x);
    CHECK(q.dc.count(0) == 2);
    CHECK(q.dc.count(1) == 2);
    // the double cover is the connected one: z sums to 1 around the loop
    int zsum = 0;
    for (std::size_t e = 0; e < q.z.size(); ++e) zsum += q.z.test(e) ? 1 : 0;
    CHECK(zsum % 2 == 1);
}

TEST_CASE("swap quotient rejects a non-free involution", "[delprod]") {
    // a vertex map fixing two vertices builds fine but its quotient must be
    // rejected: freeness is asserted where the orbits are formed
    auto k = cross_polytope_boundary(2);
    std::vector<vertex_id> bad{1, 0, 2, 3};
    auto fixed = equivariant_from_involution(k, bad);
    CHECK_THROWS_AS(swap_quotient(fixed), integrity_error);

    auto x = equivariant_from_involution(k, cross_polytope_antipodal(2));
    x.invol[0][0] = 0;  // corrupt
    x.invol[0][1] = 1;
    CHECK_THROWS_AS(swap_quotient(x), integrity_error);

    // a non-involutive vertex map is rejected at construction
    std::vector<vertex_id> cycle{1, 2, 3, 0};
    CHECK_THROWS_AS(equivariant_from_involution(k, cycle), usage_error);
}

TEST_CASE("quotient is not determined by vertex sets", "[delprod]") {
    // two chains on the tetrahedron descend to distinct quotient edges with
    // identical vertex-orbit sets
    auto x = triangulated_deleted_product(simplex_complex(3));
    auto q = swap_quotient(x);

    auto find_vertex = [&](vertex_id u, vertex_id v) {
        for (std::uint32_t w = 0; w < x.dc.count(0); ++w)
            if (x.vertex_pairs[w] == std::make_pair(u, v)) return w;
        FAIL("vertex pair not found");
        return std::uint32_t{0};
    };
    auto find_edge = [&](std::uint32_t a, std::uint32_t b) {
        for (std::uint32_t e = 0; e < x.dc.count(1); ++e)
            if (x.dc.vertex(1, e, 0) == a && x.dc.vertex(1, e, 1) == b) return e;
        FAIL("edge not found");
        return std::uint32_t{0};
    };
    // labels 1..4 are dense ids 0..3
    const auto e1 = find_edge(find_vertex(0, 1), find_vertex(2, 3));
    const auto e2 = find_edge(find_vertex(0, 1), find_vertex(3, 2));
    const auto o1 = q.orbit_of[1][e1];
    const auto o2 = q.orbit_of[1][e2];
    CHECK(o1 != o2);
    std::set<std::uint32_t> vs1{q.dc.vertex(1, o1, 0), q.dc.vertex(1, o1, 1)};
    std::set<std::uint32_t> vs2{q.dc.vertex(1, o2, 0), q.dc.vertex(1, o2, 1)};
    CHECK(vs1 == vs2);
}

TEST_CASE("equivariant skeleton truncates and keeps ids", "[delprod]") {
    auto k = cross_polytope_boundary(3);
    auto x = equivariant_from_involution(k, cross_polytope_antipodal(3));
    auto x1 = equivariant_skeleton(x, 1);
    CHECK(x1.dc.dim() == 1);
    CHECK(x1.dc.count(0) == x.dc.count(0));
    CHECK(x1.dc.count(1) == x.dc.count(1));
    // skeleton above the dimension is the whole complex
    auto x9 = equivariant_skeleton(x, 9);
    CHECK(x9.dc.dim() == x.dc.dim());
}

TEST_CASE("skeleton quotient cocycle restricts literally", "[delprod][property]") {
    auto k = standard_complex("rp2_6");
    auto x = triangulated_deleted_product(k, 3);
    auto q_full = swap_quotient(x);
    for (int n = 1; n <= 2; ++n) {
        auto q_skel = swap_quotient(equivariant_skeleton(x, n));
        REQUIRE(q_skel.dc.count(1) == q_full.dc.count(1));
        CHECK(q_skel.z == q_full.z);
    }
}

TEST_CASE("quotient emission round trips through json", "[delprod]") {
    auto x = triangulated_deleted_product(standard_complex("rp2_6"), 2);
    auto q = swap_quotient(x);
    auto j = quotient_to_json(q);
    auto back = quotient_from_json(j);
    REQUIRE(back.dc.counts == q.dc.counts);
    for (int d = 1; d <= q.dc.dim(); ++d)
        CHECK(back.dc.faces[static_cast<std::size_t>(d)] ==
              q.dc.faces[static_cast<std::size_t>(d)]);
    CHECK(back.z == q.z);
}

TEST_CASE("capped build matches the skeleton of the full build", "[delprod][property]") {
    auto k = standard_complex("rp2_6");
    auto full = triangulated_deleted_product(k);
    for (int cap = 0; cap <= full.dc.dim(); ++cap) {
        auto capped = triangulated_deleted_product(k, cap);
        auto skel = equivariant_skeleton(full, cap);
        REQUIRE(capped.dc.counts == skel.dc.counts);
        for (int d = 0; d <= cap; ++d) {
            CHECK(capped.dc.faces[static_cast<std::size_t>(d)] ==
                  skel.dc.faces[static_cast<std::size_t>(d)]);
            CHECK(capped.invol[static_cast<std::size_t>(d)] ==
                  skel.invol[static_cast<std::size_t>(d)]);
        }
    }
}
