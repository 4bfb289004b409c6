#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "swheight/gf2.hpp"

using namespace swh;

namespace {

bit_matrix from_rows(std::size_t cols, const std::vector<std::vector<int>>& rows) {
    bit_matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c]) m.set(r, c);
    return m;
}

bit_matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols,
                         double density = 0.5) {
    bit_matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if ((gen() >> 11) * 0x1.0p-53 < density) m.set(r, c);
    return m;
}

// brute-force rank oracle over all row subsets (tiny matrices only)
std::size_t rank_by_enumeration(const bit_matrix& m) {
    // dimension of the row space = log2 of its size
    std::set<std::vector<std::uint64_t>> span;
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<std::uint64_t> packed;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) packed.push_back(c);
        rows.push_back(packed);
    }
    const std::size_t n = rows.size();
    REQUIRE(n <= 16);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::set<std::uint64_t> acc;
        for (std::size_t r = 0; r < n; ++r)
            if (mask & (std::size_t{1} << r))
                for (auto c : rows[r]) {
                    if (acc.count(c)) acc.erase(c);
                    else acc.insert(c);
                }
        span.insert(std::vector<std::uint64_t>(acc.begin(), acc.end()));
    }
    std::size_t rank = 0;
    while ((std::size_t{1} << rank) < span.size()) ++rank;
    return rank;
}

}  // namespace

TEST_CASE("rank on small fixed matrices", "[gf2]") {
    bit_matrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.set(i, i);
    CHECK(gf2_rank(id3) == 3);

    CHECK(gf2_rank(bit_matrix(4, 7)) == 0);
    CHECK(gf2_rank(bit_matrix(0, 5)) == 0);

    // row3 = row1 + row2
    auto m = from_rows(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    CHECK(gf2_rank(m) == 2);
    CHECK(rank_by_enumeration(m) == 2);
}

TEST_CASE("rank does not mutate its input", "[gf2]") {
    auto m = from_rows(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    auto copy = m;
    (void)gf2_rank(m);
    CHECK(m == copy);
}

TEST_CASE("solve_linear on fixed systems", "[gf2]") {
    bit_matrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.set(i, i);
    bit_vector b(3);
    b.set(0);
    b.set(2);
    auto x = solve_linear(id3, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    bit_matrix zero(2, 4);
    bit_vector nonzero(2);
    nonzero.set(1);
    CHECK_FALSE(solve_linear(zero, nonzero).has_value());

    // rows {110, 011}, b = (1,1): oracle below enumerates all 8 candidates
    auto a = from_rows(3, {{1, 1, 0}, {0, 1, 1}});
    bit_vector b2(2);
    b2.set(0);
    b2.set(1);
    std::vector<bit_vector> oracle_solutions;
    for (int mask = 0; mask < 8; ++mask) {
        bit_vector cand(3);
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) cand.set(i);
        if (a.apply(cand) == b2) oracle_solutions.push_back(cand);
    }
    REQUIRE(oracle_solutions.size() == 2);  // rank 2, 3 unknowns: 2^(3-2) solutions
    auto sol = solve_linear(a, b2);
    REQUIRE(sol.has_value());
    CHECK(a.apply(*sol) == b2);
}

TEST_CASE("solve_linear rejects shape mismatch", "[gf2]") {
    bit_matrix a(3, 3);
    bit_vector b(2);
    CHECK_THROWS_AS(solve_linear(a, b), usage_error);
}

TEST_CASE("rank equals rank of the transpose", "[gf2][property]") {
    std::mt19937_64 gen(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + gen() % 64;
        const std::size_t c = 1 + gen() % 64;
        auto m = random_matrix(gen, r, c);
        CHECK(gf2_rank(m) == gf2_rank(transpose(m)));
    }
}

TEST_CASE("solve_linear solves exactly the consistent systems", "[gf2][property]") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + gen() % 20;
        const std::size_t c = 1 + gen() % 20;
        auto a = random_matrix(gen, r, c, 0.4);
        bit_vector b(r);
        for (std::size_t i = 0; i < r; ++i)
            if (gen() & 1) b.set(i);
        // augmented rank comparison as the independent criterion
        bit_matrix aug(r, c + 1);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j)
                if (a.get(i, j)) aug.set(i, j);
            if (b.test(i)) aug.set(i, c);
        }
        const bool consistent = gf2_rank(a) == gf2_rank(aug);
        auto x = solve_linear(a, b);
        CHECK(x.has_value() == consistent);
        if (x) CHECK(a.apply(*x) == b);
    }
}

TEST_CASE("memory budget guards matrix allocation", "[gf2]") {
    const std::size_t saved = memory_budget_bytes().load();
    set_memory_budget(1024);
    CHECK_THROWS_AS(bit_matrix(1000, 1000), resource_error);
    CHECK_NOTHROW(bit_matrix(16, 64));
    set_memory_budget(saved);
}

TEST_CASE("bit_vector basics", "[gf2]") {
    bit_vector v(130);
    CHECK(v.none());
    v.set(129);
    v.set(0);
    CHECK(v.popcount() == 2);
    CHECK(v.first_set() == 0);
    CHECK(v.first_set_from(1) == 129);
    CHECK(v.first_set_from(130) == bit_vector::npos);
    v.flip(0);
    CHECK(v.first_set() == 129);

    bit_vector w(130);
    w.set(129);
    CHECK(v.dot(w));
    v ^= w;
    CHECK(v.none());
}
