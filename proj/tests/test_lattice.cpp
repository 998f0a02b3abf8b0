#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "rfimlab/lattice.hpp"

using namespace rfimlab;

namespace {

VertexSet make_set(std::initializer_list<Vertex> cells) {
    VertexSet s;
    for (Vertex v : cells) s.insert(v.x, v.y);
    return s;
}

// Independent enumerator used as an oracle: breadth-first growth of connected
// origin-containing sets with hash-based deduplication. Exponential in cell
// count, fine at oracle scale.
std::vector<std::vector<std::uint64_t>> naive_origin_sets(int max_cells) {
    using Key = std::vector<std::uint64_t>;
    std::set<Key> all;
    std::set<Key> level;
    VertexSet origin = make_set({{0, 0}});
    level.insert(origin.canonical_key());
    all.insert(origin.canonical_key());
    auto unpack = [](std::uint64_t k) {
        return Vertex{static_cast<int>(static_cast<std::int32_t>(k >> 32)),
                      static_cast<int>(static_cast<std::int32_t>(k & 0xffffffffull))};
    };
    for (int n = 1; n < max_cells; ++n) {
        std::set<Key> next;
        for (const Key& key : level) {
            VertexSet s;
            for (std::uint64_t k : key) {
                Vertex v = unpack(k);
                s.insert(v.x, v.y);
            }
            const int dx[4] = {1, -1, 0, 0};
            const int dy[4] = {0, 0, 1, -1};
            s.for_each([&](int x, int y) {
                for (int d = 0; d < 4; ++d) {
                    int nx = x + dx[d], ny = y + dy[d];
                    if (s.contains(nx, ny)) continue;
                    VertexSet grown = s;
                    grown.insert(nx, ny);
                    next.insert(grown.canonical_key());
                }
            });
        }
        for (const Key& k : next) all.insert(k);
        level = std::move(next);
    }
    return {all.begin(), all.end()};
}

} // namespace

TEST_CASE("edge boundary counts on small shapes", "[lattice]") {
    CHECK(edge_boundary(make_set({{0, 0}})).size() == 4);
    CHECK(edge_boundary(make_set({{0, 0}, {1, 0}})).size() == 6);
    CHECK(edge_boundary(make_set({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).size() == 8);
}

TEST_CASE("edge boundary is independent of any box", "[lattice]") {
    // same shape far from the origin has the same boundary size
    VertexSet far = make_set({{100, -200}, {101, -200}});
    CHECK(edge_boundary(far).size() == 6);
}

TEST_CASE("simple connectivity", "[lattice]") {
    CHECK(is_simply_connected(make_set({{0, 0}})));
    CHECK(is_simply_connected(make_set({{0, 0}, {1, 0}, {0, 1}}))); // L-tromino

    VertexSet ring;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (!(x == 1 && y == 1)) ring.insert(x, y);
    CHECK_FALSE(is_simply_connected(ring));

    VertexSet disconnected = make_set({{0, 0}, {2, 0}});
    CHECK_FALSE(is_simply_connected(disconnected));

    CHECK_THROWS_AS(is_simply_connected(VertexSet{}), std::invalid_argument);
}

TEST_CASE("fixed polyomino counts match the known sequence", "[lattice]") {
    // 1, 2, 6, 19, 63, 216, 760, 2725 fixed polyominoes with 1..8 cells
    const std::vector<std::size_t> expected{1, 2, 6, 19, 63, 216, 760, 2725};
    std::map<std::size_t, std::size_t> by_cells;
    enumerate_polyominoes(8, [&](const std::vector<Vertex>& cells) { ++by_cells[cells.size()]; });
    for (std::size_t n = 1; n <= 8; ++n) CHECK(by_cells[n] == expected[n - 1]);
}

TEST_CASE("enumerate_simply_connected smallest budgets", "[lattice]") {
    std::vector<std::vector<std::uint64_t>> sets4;
    enumerate_simply_connected(4, [&](const VertexSet& s, int) {
        sets4.push_back(s.canonical_key());
    });
    REQUIRE(sets4.size() == 1);
    CHECK(sets4[0] == make_set({{0, 0}}).canonical_key());

    std::size_t count6 = 0;
    bool all_contain_origin = true;
    enumerate_simply_connected(6, [&](const VertexSet& s, int p) {
        ++count6;
        all_contain_origin = all_contain_origin && s.contains(0, 0);
        CHECK(p <= 6);
    });
    CHECK(count6 == 5); // singleton + the four dominoes containing the origin
    CHECK(all_contain_origin);
}

TEST_CASE("enumeration agrees with the brute-force oracle at budget 8", "[lattice]") {
    const int budget = 8;
    std::set<std::vector<std::uint64_t>> mine;
    enumerate_simply_connected(budget, [&](const VertexSet& s, int p) {
        CHECK(p == static_cast<int>(perimeter(s)));
        CHECK(is_simply_connected(s));
        bool inserted = mine.insert(s.canonical_key()).second;
        CHECK(inserted); // exactly-once semantics
    });

    std::size_t oracle_count = 0;
    for (const auto& key : naive_origin_sets(max_cells_for_perimeter(budget))) {
        VertexSet s;
        for (std::uint64_t k : key)
            s.insert(static_cast<std::int32_t>(k >> 32), static_cast<std::int32_t>(k & 0xffffffffull));
        if (static_cast<int>(perimeter(s)) <= budget && is_simply_connected(s)) {
            ++oracle_count;
            CHECK(mine.count(key) == 1);
        }
    }
    CHECK(mine.size() == oracle_count);
}

TEST_CASE("perimeter guard rails", "[lattice]") {
    CHECK_THROWS_AS(enumerate_simply_connected(2, [](const VertexSet&, int) {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_simply_connected(40, [](const VertexSet&, int) {}),
                    std::invalid_argument);
}

TEST_CASE("isoperimetry and parity over the enumeration corpus", "[lattice]") {
    enumerate_simply_connected(10, [&](const VertexSet& s, int p) {
        CHECK(p % 2 == 0);
        CHECK(static_cast<double>(p) >= 0.25 * std::sqrt(static_cast<double>(s.size())));
    });
}

TEST_CASE("constant sign components", "[lattice]") {
    const int L = 2;
    SpinConfiguration all_plus(L, Boundary::plus, 1);
    auto comps = constant_sign_components(all_plus);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].first.size() == Box{L}.vertex_count());
    CHECK(comps[0].second == 1);

    SpinConfiguration one_minus = all_plus;
    one_minus.set_spin(0, 0, -1);
    comps = constant_sign_components(one_minus);
    REQUIRE(comps.size() == 2);

    SpinConfiguration checker(L, Boundary::plus, 1);
    for (int x = -L; x <= L; ++x)
        for (int y = -L; y <= L; ++y) checker.set_spin(x, y, ((x + y) % 2 == 0) ? 1 : -1);
    comps = constant_sign_components(checker);
    CHECK(comps.size() == Box{L}.vertex_count());
}

TEST_CASE("hole descent", "[lattice]") {
    const int L = 4;
    SpinConfiguration all_plus(L, Boundary::plus, 1);
    auto [whole, sign] = hole_descent(all_plus);
    CHECK(whole.size() == Box{L}.vertex_count());
    CHECK(sign == 1);

    SpinConfiguration one_minus = all_plus;
    one_minus.set_spin(0, 0, -1);
    auto [single, msign] = hole_descent(one_minus);
    CHECK(single.size() == 1);
    CHECK(single.contains(0, 0));
    CHECK(msign == -1);

    // minus ring around a plus core inside a plus sea: descent lands on the core
    SpinConfiguration ringcfg(L, Boundary::plus, 1);
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y)
            if (std::max(std::abs(x), std::abs(y)) == 2) ringcfg.set_spin(x, y, -1);
    auto [core, csign] = hole_descent(ringcfg);
    CHECK(csign == 1);
    CHECK(core.size() == 9); // the 3x3 plus core
    CHECK(core.contains(0, 0));
    CHECK(is_simply_connected(core));
}

TEST_CASE("hole descent output certificate", "[lattice]") {
    // output is simply connected and every internal boundary edge disagrees
    const int L = 3;
    SpinConfiguration cfg(L, Boundary::plus, 1);
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            if (std::max(std::abs(x), std::abs(y)) == 1) cfg.set_spin(x, y, -1);
    auto [comp, sign] = hole_descent(cfg);
    CHECK(is_simply_connected(comp));
    for (const GridEdge& e : edge_boundary(comp).edges) {
        int ax = e.x, ay = e.y;
        int bx = e.horizontal ? e.x + 1 : e.x;
        int by = e.horizontal ? e.y : e.y + 1;
        if (cfg.in_box(ax, ay) && cfg.in_box(bx, by)) {
            bool a_in = comp.contains(ax, ay);
            int inner = a_in ? cfg.spin(ax, ay) : cfg.spin(bx, by);
            int outer = a_in ? cfg.spin(bx, by) : cfg.spin(ax, ay);
            CHECK(inner == sign);
            CHECK(outer == -sign);
        }
    }
}

TEST_CASE("boundary component counting", "[lattice]") {
    CHECK(boundary_component_count(edge_boundary(make_set({{0, 0}}))) == 1);
    CHECK(boundary_component_count(edge_boundary(make_set({{0, 0}, {5, 5}}))) == 2);
    // ring: inner and outer boundary curves
    VertexSet ring;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (!(x == 1 && y == 1)) ring.insert(x, y);
    CHECK(boundary_component_count(edge_boundary(ring)) == 2);
}

TEST_CASE("vertex set algebra", "[lattice]") {
    VertexSet a = make_set({{0, 0}, {1, 0}, {2, 0}});
    VertexSet b = make_set({{1, 0}, {2, 0}, {3, 0}});
    CHECK(a.intersect(b).size() == 2);
    CHECK(a.difference(b).size() == 1);
    CHECK(a.translated(1, 0) == b);
    CHECK(a.intersect(Box{1}).size() == 2);
    CHECK(make_set({{0, 0}}).subset_of(a));
    CHECK_FALSE(a.subset_of(b));
}
