#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <vector>

#include "swheight/corpus.hpp"
#include "swheight/simplicial_complex.hpp"

using namespace swh;

namespace {

std::vector<std::vector<vertex_label>> int_facets(const std::vector<std::vector<int>>& f) {
    std::vector<std::vector<vertex_label>> out;
    for (const auto& row : f) {
        std::vector<vertex_label> r;
        for (int v : row) r.emplace_back(static_cast<std::int64_t>(v));
        out.push_back(r);
    }
    return out;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_CASE("build_complex absorbs nested facets", "[complex]") {
    auto k = simplicial_complex::from_facets(int_facets({{1, 2, 3}}));
    CHECK(k.n_vertices() == 3);
    CHECK(k.dim() == 2);

    auto tri = simplicial_complex::from_facets(int_facets({{1, 2}, {2, 3}, {1, 3}}));
    CHECK(tri.dim() == 1);
    CHECK(tri.face_count(1) == 3);
    CHECK(tri.face_count(0) == 3);

    auto nested = simplicial_complex::from_facets(int_facets({{1, 2, 3}, {1, 2}}));
    CHECK(nested.facets().size() == 1);
    CHECK(nested.dim() == 2);
}

TEST_CASE("build_complex rejects empty input", "[complex]") {
    CHECK_THROWS_AS(simplicial_complex::from_facets({}), usage_error);
    CHECK_THROWS_AS(simplicial_complex::from_facets(int_facets({{1, 2}, {}})), usage_error);
}

TEST_CASE("skeleton of the 4-simplex at dimension 1 is K5", "[complex]") {
    auto k5 = simplex_complex(4).skeleton(1);
    CHECK(k5.n_vertices() == 5);
    CHECK(k5.dim() == 1);
    CHECK(k5.face_count(1) == 10);
}

TEST_CASE("skeleton at or above the dimension is the identity", "[complex]") {
    auto k = simplex_complex(3);
    CHECK(k.skeleton(3).facets() == k.facets());
    CHECK(k.skeleton(7).facets() == k.facets());
}

TEST_CASE("2-skeleton of the 6-simplex has binomial face counts", "[complex]") {
    auto k = simplex_complex(6).skeleton(2);
    CHECK(k.face_count(0) == 7);
    CHECK(k.face_count(1) == 21);
    CHECK(k.face_count(2) == 35);
}

TEST_CASE("iterated skeleta compose through the minimum", "[complex][property]") {
    auto k = simplex_complex(5);
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
            auto a = k.skeleton(m).skeleton(n);
            auto b = k.skeleton(std::min(m, n));
            CHECK(a.facets() == b.facets());
        }
}

TEST_CASE("skeleton faces are exactly the small subsets of facets", "[complex][property]") {
    auto k = standard_complex("rp2_6");
    const int n = 1;
    auto skel = k.skeleton(n);
    std::set<simplex> expected;
    for (const auto& f : k.facets())
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) expected.insert({f[a], f[b]});
    auto got = skel.faces(1);
    CHECK(std::set<simplex>(got.begin(), got.end()) == expected);
}

TEST_CASE("euler characteristic", "[complex]") {
    for (int n = 0; n <= 5; ++n) CHECK(simplex_complex(n).euler_characteristic() == 1);
    CHECK(boundary_simplex(3).euler_characteristic() == 2);
    CHECK(standard_complex("torus_7").euler_characteristic() == 0);
    auto t7 = standard_complex("torus_7");
    CHECK(t7.face_count(0) == 7);
    CHECK(t7.face_count(1) == 21);
    CHECK(t7.face_count(2) == 14);
}

TEST_CASE("euler characteristic of skeleta of odd simplices", "[complex][property]") {
    for (int d = 0; d <= 3; ++d) {
        auto k = simplex_complex(2 * d + 2).skeleton(d);
        long long expected = 0;
        for (int i = 0; i <= d; ++i)
            expected += (i % 2 == 0 ? 1 : -1) * binomial(2 * d + 3, i + 1);
        CHECK(k.euler_characteristic() == expected);
    }
}

TEST_CASE("closed pseudomanifold check", "[complex]") {
    CHECK(check_closed_pseudomanifold(boundary_simplex(4)).pass());
    auto rep = check_closed_pseudomanifold(simplex_complex(2));
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.ridges_in_two_facets);

    auto cp = standard_complex("cp2_9");
    CHECK(check_closed_pseudomanifold(cp).pass());
    CHECK(cp.euler_characteristic() == 3);
}

TEST_CASE("corpus complexes validate on load", "[complex]") {
    auto rp = standard_complex("rp2_6");
    CHECK(rp.face_count(0) == 6);
    CHECK(rp.face_count(1) == 15);
    CHECK(rp.face_count(2) == 10);
    CHECK(rp.euler_characteristic() == 1);

    auto cp = standard_complex("cp2_9");
    CHECK(cp.face_count(0) == 9);
    CHECK(cp.face_count(1) == 36);
    CHECK(cp.face_count(2) == 84);
    CHECK(cp.face_count(3) == 90);
    CHECK(cp.face_count(4) == 36);
}

TEST_CASE("standard complexes", "[complex]") {
    auto s2 = boundary_simplex(3);
    CHECK(s2.face_count(0) == 4);
    CHECK(s2.face_count(2) == 4);
    CHECK(s2.euler_characteristic() == 2);

    auto square = cross_polytope_boundary(2);
    CHECK(square.face_count(0) == 4);
    CHECK(square.face_count(1) == 4);
    CHECK(square.euler_characteristic() == 0);

    CHECK_THROWS_AS(standard_complex("no_such_complex"), usage_error);
    CHECK_THROWS_AS(standard_complex("simplex"), usage_error);
}

TEST_CASE("cross polytope antipodal map is a free order-preserving involution", "[complex]") {
    for (int d = 1; d <= 4; ++d) {
        auto k = cross_polytope_boundary(d);
        auto inv = cross_polytope_antipodal(d);
        REQUIRE(inv.size() == k.n_vertices());
        for (std::size_t v = 0; v < inv.size(); ++v) {
            CHECK(inv[static_cast<std::size_t>(inv[v])] == static_cast<vertex_id>(v));
            CHECK(inv[v] != static_cast<vertex_id>(v));
        }
        for (const auto& f : k.facets())
            for (std::size_t i = 1; i < f.size(); ++i)
                CHECK(inv[static_cast<std::size_t>(f[i - 1])] <
                      inv[static_cast<std::size_t>(f[i])]);
    }
}

TEST_CASE("complex json round trip", "[complex]") {
    auto k = standard_complex("rp2_6");
    auto j = complex_to_json(k);
    auto k2 = complex_from_json(j);
    CHECK(k2.facets() == k.facets());
    CHECK(k2.labels() == k.labels());

    nlohmann::json bad;
    bad["facets"] = nlohmann::json::array({nlohmann::json::array({1, 2})});
    bad["vertices"] = nlohmann::json::array({1});
    CHECK_THROWS_AS(complex_from_json(bad), usage_error);
}

TEST_CASE("string and integer labels share one sorted order", "[complex]") {
    auto k = simplicial_complex::from_facets(
        {{vertex_label{std::int64_t{2}}, vertex_label{std::string{"a"}}},
         {vertex_label{std::int64_t{1}}, vertex_label{std::string{"a"}}}});
    REQUIRE(k.n_vertices() == 3);
    // integers order before strings
    CHECK(label_to_string(k.labels()[0]) == "1");
    CHECK(label_to_string(k.labels()[2]) == "a");
}
