#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rfimlab/spin.hpp"

namespace rfimlab {

struct Vertex {
    int x = 0;
    int y = 0;
    friend bool operator==(Vertex a, Vertex b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(Vertex a, Vertex b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }
};

struct Box {
    int half_side = 0; // Lambda(L) = {-L..L}^2
    int side() const { return 2 * half_side + 1; }
    std::size_t vertex_count() const { return static_cast<std::size_t>(side()) * side(); }
    bool contains(int x, int y) const {
        return std::abs(x) <= half_side && std::abs(y) <= half_side;
    }
};

// Finite subset of Z^2 stored as a dense bit grid over a bounded window.
// The window grows on demand; membership outside the window is false.
class VertexSet {
  public:
    VertexSet() = default;
    VertexSet(int x0, int y0, int width, int height)
        : x0_(x0), y0_(y0), w_(width), h_(height),
          bits_(static_cast<std::size_t>(width) * height, 0) {}

    static VertexSet from(const std::vector<Vertex>& cells) {
        VertexSet s;
        for (const Vertex& v : cells) s.insert(v.x, v.y);
        return s;
    }

    bool contains(int x, int y) const {
        if (x < x0_ || y < y0_ || x >= x0_ + w_ || y >= y0_ + h_) return false;
        return bits_[bit_index(x, y)] != 0;
    }

    void insert(int x, int y) {
        ensure_window(x, y);
        std::uint8_t& b = bits_[bit_index(x, y)];
        if (!b) {
            b = 1;
            ++count_;
        }
    }

    void erase(int x, int y) {
        if (!contains(x, y)) return;
        bits_[bit_index(x, y)] = 0;
        --count_;
    }

    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    // members in row-major order (y, then x); deterministic
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        out.reserve(count_);
        for (int y = y0_; y < y0_ + h_; ++y)
            for (int x = x0_; x < x0_ + w_; ++x)
                if (bits_[bit_index(x, y)]) out.push_back({x, y});
        return out;
    }

    template <typename F>
    void for_each(F&& fn) const {
        for (int y = y0_; y < y0_ + h_; ++y)
            for (int x = x0_; x < x0_ + w_; ++x)
                if (bits_[bit_index(x, y)]) fn(x, y);
    }

    // tight bounding box of the members; requires nonempty
    void bounding_box(int& min_x, int& min_y, int& max_x, int& max_y) const {
        if (empty()) throw std::logic_error("bounding_box of empty VertexSet");
        min_x = std::numeric_limits<int>::max();
        min_y = std::numeric_limits<int>::max();
        max_x = std::numeric_limits<int>::min();
        max_y = std::numeric_limits<int>::min();
        for_each([&](int x, int y) {
            min_x = std::min(min_x, x);
            min_y = std::min(min_y, y);
            max_x = std::max(max_x, x);
            max_y = std::max(max_y, y);
        });
    }

    VertexSet translated(int dx, int dy) const {
        VertexSet out(x0_ + dx, y0_ + dy, std::max(w_, 1), std::max(h_, 1));
        for_each([&](int x, int y) { out.insert(x + dx, y + dy); });
        return out;
    }

    VertexSet intersect(const VertexSet& other) const {
        VertexSet out;
        for_each([&](int x, int y) {
            if (other.contains(x, y)) out.insert(x, y);
        });
        return out;
    }

    VertexSet intersect(const Box& box) const {
        VertexSet out;
        for_each([&](int x, int y) {
            if (box.contains(x, y)) out.insert(x, y);
        });
        return out;
    }

    VertexSet difference(const VertexSet& other) const {
        VertexSet out;
        for_each([&](int x, int y) {
            if (!other.contains(x, y)) out.insert(x, y);
        });
        return out;
    }

    bool subset_of(const VertexSet& other) const {
        bool ok = true;
        for_each([&](int x, int y) { ok = ok && other.contains(x, y); });
        return ok;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        if (a.count_ != b.count_) return false;
        bool eq = true;
        a.for_each([&](int x, int y) { eq = eq && b.contains(x, y); });
        return eq;
    }

    // canonical key over absolute coordinates; equal keys iff equal sets
    std::vector<std::uint64_t> canonical_key() const {
        std::vector<std::uint64_t> key;
        key.reserve(count_);
        for_each([&](int x, int y) {
            key.push_back((static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                          static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)));
        });
        std::sort(key.begin(), key.end());
        return key;
    }

  private:
    std::size_t bit_index(int x, int y) const {
        return static_cast<std::size_t>(y - y0_) * w_ + static_cast<std::size_t>(x - x0_);
    }

    void ensure_window(int x, int y) {
        if (w_ == 0) {
            x0_ = x - 2;
            y0_ = y - 2;
            w_ = 5;
            h_ = 5;
            bits_.assign(static_cast<std::size_t>(w_) * h_, 0);
            return;
        }
        if (x >= x0_ && y >= y0_ && x < x0_ + w_ && y < y0_ + h_) return;
        int nx0 = std::min(x0_, x - 2);
        int ny0 = std::min(y0_, y - 2);
        int nx1 = std::max(x0_ + w_, x + 3);
        int ny1 = std::max(y0_ + h_, y + 3);
        // double to amortize repeated growth
        nx0 = std::min(nx0, x0_ - w_ / 2);
        ny0 = std::min(ny0, y0_ - h_ / 2);
        nx1 = std::max(nx1, x0_ + w_ + w_ / 2);
        ny1 = std::max(ny1, y0_ + h_ + h_ / 2);
        VertexSet grown(nx0, ny0, nx1 - nx0, ny1 - ny0);
        for_each([&](int cx, int cy) { grown.insert(cx, cy); });
        *this = std::move(grown);
    }

    int x0_ = 0, y0_ = 0, w_ = 0, h_ = 0;
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

struct VertexSetKeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::uint64_t v : key) {
            h ^= v;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Unordered nearest-neighbor edge, stored canonically: connects (x,y) to
// (x+1,y) when horizontal, else (x,y) to (x,y+1).
struct GridEdge {
    int x = 0;
    int y = 0;
    bool horizontal = true;
    friend bool operator==(const GridEdge& a, const GridEdge& b) {
        return a.x == b.x && a.y == b.y && a.horizontal == b.horizontal;
    }
};

struct EdgeSet {
    std::vector<GridEdge> edges;
    std::size_t size() const { return edges.size(); }
};

// All edges of Z^2 with exactly one endpoint in A. Computed against the full
// lattice, never clipped to any box.
inline EdgeSet edge_boundary(const VertexSet& set) {
    EdgeSet out;
    set.for_each([&](int x, int y) {
        if (!set.contains(x + 1, y)) out.edges.push_back({x, y, true});
        if (!set.contains(x - 1, y)) out.edges.push_back({x - 1, y, true});
        if (!set.contains(x, y + 1)) out.edges.push_back({x, y, false});
        if (!set.contains(x, y - 1)) out.edges.push_back({x, y - 1, false});
    });
    return out;
}

inline std::size_t perimeter(const VertexSet& set) { return edge_boundary(set).size(); }

// Number of connected components of the boundary, viewed as a union of unit
// segments of the dual lattice (segments touching at a corner are joined).
inline std::size_t boundary_component_count(const EdgeSet& boundary) {
    if (boundary.edges.empty()) return 0;
    std::unordered_map<std::uint64_t, int> node_id;
    std::vector<int> parent;
    auto node = [&](int cx, int cy) {
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
                            static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
        auto it = node_id.find(key);
        if (it != node_id.end()) return it->second;
        int id = static_cast<int>(parent.size());
        parent.push_back(id);
        node_id.emplace(key, id);
        return id;
    };
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (const GridEdge& e : boundary.edges) {
        // dual segment endpoints on the doubled lattice (odd,odd coordinates)
        int ax, ay, bx, by;
        if (e.horizontal) {
            ax = 2 * e.x + 1;
            ay = 2 * e.y - 1;
            bx = 2 * e.x + 1;
            by = 2 * e.y + 1;
        } else {
            ax = 2 * e.x - 1;
            ay = 2 * e.y + 1;
            bx = 2 * e.x + 1;
            by = 2 * e.y + 1;
        }
        unite(node(ax, ay), node(bx, by));
    }
    std::size_t components = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i)
        if (find(i) == i) ++components;
    return components;
}

inline bool is_connected(const VertexSet& set) {
    if (set.empty()) return true;
    std::vector<Vertex> cells = set.vertices();
    std::unordered_set<std::uint64_t> seen;
    auto key = [](int x, int y) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
    };
    std::vector<Vertex> stack{cells.front()};
    seen.insert(key(cells.front().x, cells.front().y));
    std::size_t visited = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++visited;
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            int nx = v.x + dx[d], ny = v.y + dy[d];
            if (set.contains(nx, ny) && seen.insert(key(nx, ny)).second) stack.push_back({nx, ny});
        }
    }
    return visited == set.size();
}

// Connected and the complement in Z^2 is connected. Complement connectivity
// is decided on the bounding box inflated by one cell: every hole lies inside
// the bounding box, and everything outside the inflated window is connected
// through its border ring.
inline bool is_simply_connected(const VertexSet& set) {
    if (set.empty()) throw std::invalid_argument("is_simply_connected: empty set");
    if (!is_connected(set)) return false;
    int min_x, min_y, max_x, max_y;
    set.bounding_box(min_x, min_y, max_x, max_y);
    int x0 = min_x - 1, y0 = min_y - 1;
    int w = max_x - min_x + 3, h = max_y - min_y + 3;
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    auto idx = [&](int x, int y) {
        return static_cast<std::size_t>(y - y0) * w + static_cast<std::size_t>(x - x0);
    };
    std::vector<Vertex> stack{{x0, y0}};
    visited[idx(x0, y0)] = 1;
    std::size_t complement_seen = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++complement_seen;
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            int nx = v.x + dx[d], ny = v.y + dy[d];
            if (nx < x0 || ny < y0 || nx >= x0 + w || ny >= y0 + h) continue;
            if (set.contains(nx, ny) || visited[idx(nx, ny)]) continue;
            visited[idx(nx, ny)] = 1;
            stack.push_back({nx, ny});
        }
    }
    return complement_seen == static_cast<std::size_t>(w) * h - set.size();
}

namespace detail {

// Fixed-polyomino enumeration by canonical growth: each shape is produced
// exactly once, anchored so its row-major minimal cell is the origin. Cells
// live in the half plane {y>0} u {y==0, x>=0}; a cell enters the untried list
// at most once along any search path, and once a cell's branch has been
// explored it stays excluded from all later branches of the same level.
template <typename F>
class PolyominoEnumerator {
  public:
    PolyominoEnumerator(int max_cells, F& emit) : n_(max_cells), emit_(emit) {
        width_ = 2 * n_ + 3;
        height_ = n_ + 2;
        ox_ = n_ + 1;
        seen_.assign(static_cast<std::size_t>(width_) * height_, 0);
        occ_.assign(static_cast<std::size_t>(width_) * height_, 0);
    }

    void run() {
        if (n_ <= 0) return;
        untried_.push_back(encode(0, 0));
        seen_[encode(0, 0)] = 1;
        grow(0);
    }

  private:
    int encode(int x, int y) const { return y * width_ + (x + ox_); }
    bool half_plane(int x, int y) const { return y > 0 || (y == 0 && x >= 0); }
    bool in_field(int x, int y) const {
        return x > -ox_ && x < width_ - ox_ - 1 && y >= 0 && y < height_ - 1;
    }

    void grow(std::size_t lo) {
        const std::size_t hi = untried_.size();
        for (std::size_t i = lo; i < hi; ++i) {
            int code = untried_[i];
            int cy = code / width_;
            int cx = code % width_ - ox_;
            occ_[code] = 1;
            cells_.push_back({cx, cy});
            emit_(cells_, occ_, width_, ox_);
            if (static_cast<int>(cells_.size()) < n_) {
                std::size_t base = untried_.size();
                const int dx[4] = {1, -1, 0, 0};
                const int dy[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int nx = cx + dx[d], ny = cy + dy[d];
                    if (!half_plane(nx, ny) || !in_field(nx, ny)) continue;
                    int ncode = encode(nx, ny);
                    if (!seen_[ncode]) {
                        seen_[ncode] = 1;
                        untried_.push_back(ncode);
                    }
                }
                grow(i + 1);
                while (untried_.size() > base) {
                    seen_[untried_.back()] = 0;
                    untried_.pop_back();
                }
            }
            occ_[code] = 0;
            cells_.pop_back();
        }
    }

    int n_, width_, height_, ox_;
    F& emit_;
    std::vector<std::uint8_t> seen_, occ_;
    std::vector<int> untried_;
    std::vector<Vertex> cells_;
};

inline int perimeter_of_cells(const std::vector<Vertex>& cells,
                              const std::vector<std::uint8_t>& occ, int width, int ox) {
    int adjacencies = 0;
    for (const Vertex& v : cells) {
        if (v.y > 0 || (v.y == 0 && v.x + 1 >= 0))
            if (occ[(v.y) * width + (v.x + 1 + ox)]) ++adjacencies;
        if (occ[(v.y + 1) * width + (v.x + ox)]) ++adjacencies;
    }
    return 4 * static_cast<int>(cells.size()) - 2 * adjacencies;
}

} // namespace detail

// Streams every fixed polyomino with at most max_cells cells exactly once,
// anchored at its canonical translate. fn(cells).
template <typename F>
void enumerate_polyominoes(int max_cells, F&& fn) {
    auto emit = [&](const std::vector<Vertex>& cells, const std::vector<std::uint8_t>&, int,
                    int) { fn(cells); };
    detail::PolyominoEnumerator<decltype(emit)> en(max_cells, emit);
    en.run();
}

constexpr int kDefaultPerimeterCap = 16;

// smallest cell count that a perimeter bound cannot exclude:
// any connected set with n cells has perimeter >= 2*ceil(2*sqrt(n))
inline int max_cells_for_perimeter(int perimeter_max) {
    return (perimeter_max / 2) * (perimeter_max / 2) / 4;
}

// Streams every simply connected shape (canonical translate, minimal cell at
// the origin) with perimeter <= perimeter_max, exactly once, in a fixed
// deterministic order. fn(cells, perimeter).
template <typename F>
void enumerate_sc_shapes(int perimeter_max, F&& fn, int safety_cap = kDefaultPerimeterCap) {
    if (perimeter_max < 4) throw std::invalid_argument("enumerate_sc_shapes: perimeter_max < 4");
    if (perimeter_max > safety_cap)
        throw std::invalid_argument("enumerate_sc_shapes: perimeter_max exceeds safety cap");
    int max_cells = max_cells_for_perimeter(perimeter_max);
    auto emit = [&](const std::vector<Vertex>& cells, const std::vector<std::uint8_t>& occ,
                    int width, int ox) {
        int p = detail::perimeter_of_cells(cells, occ, width, ox);
        if (p > perimeter_max) return;
        VertexSet set = VertexSet::from(cells);
        if (!is_simply_connected(set)) return;
        fn(cells, p);
    };
    detail::PolyominoEnumerator<decltype(emit)> en(max_cells, emit);
    en.run();
}

// Streams every simply connected finite subset of Z^2 containing the origin
// with perimeter <= perimeter_max, exactly once. fn(VertexSet, perimeter).
template <typename F>
void enumerate_simply_connected(int perimeter_max, F&& fn,
                                int safety_cap = kDefaultPerimeterCap) {
    enumerate_sc_shapes(
        perimeter_max,
        [&](const std::vector<Vertex>& cells, int p) {
            for (const Vertex& anchor : cells) {
                VertexSet set;
                for (const Vertex& c : cells) set.insert(c.x - anchor.x, c.y - anchor.y);
                fn(set, p);
            }
        },
        safety_cap);
}

// Maximal connected constant-sign subsets of the box; they partition
// Lambda(L) and every boundary edge internal to the box is a disagreement.
inline std::vector<std::pair<VertexSet, int>> constant_sign_components(
    const SpinConfiguration& sigma) {
    const int L = sigma.L;
    const int side = sigma.side();
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(side) * side, 0);
    std::vector<std::pair<VertexSet, int>> components;
    for (int y = -L; y <= L; ++y) {
        for (int x = -L; x <= L; ++x) {
            if (visited[sigma.index(x, y)]) continue;
            int sign = sigma.spin(x, y);
            VertexSet comp(-L, -L, side, side);
            std::vector<Vertex> stack{{x, y}};
            visited[sigma.index(x, y)] = 1;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                comp.insert(v.x, v.y);
                const int dx[4] = {1, -1, 0, 0};
                const int dy[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int nx = v.x + dx[d], ny = v.y + dy[d];
                    if (!sigma.in_box(nx, ny) || visited[sigma.index(nx, ny)]) continue;
                    if (sigma.spin(nx, ny) != sign) continue;
                    visited[sigma.index(nx, ny)] = 1;
                    stack.push_back({nx, ny});
                }
            }
            components.emplace_back(std::move(comp), sign);
        }
    }
    return components;
}

namespace detail {

inline VertexSet component_of(const SpinConfiguration& sigma, int sx, int sy) {
    const int L = sigma.L;
    int sign = sigma.spin(sx, sy);
    VertexSet comp(-L, -L, sigma.side(), sigma.side());
    std::vector<Vertex> stack{{sx, sy}};
    comp.insert(sx, sy);
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            int nx = v.x + dx[d], ny = v.y + dy[d];
            if (!sigma.in_box(nx, ny) || comp.contains(nx, ny)) continue;
            if (sigma.spin(nx, ny) != sign) continue;
            comp.insert(nx, ny);
            stack.push_back({nx, ny});
        }
    }
    return comp;
}

// first row-major vertex of a hole of `comp` (a bounded complement
// component); false when comp is simply connected
inline bool find_hole_vertex(const VertexSet& comp, Vertex& hole) {
    int min_x, min_y, max_x, max_y;
    comp.bounding_box(min_x, min_y, max_x, max_y);
    int x0 = min_x - 1, y0 = min_y - 1;
    int w = max_x - min_x + 3, h = max_y - min_y + 3;
    std::vector<std::uint8_t> outside(static_cast<std::size_t>(w) * h, 0);
    auto idx = [&](int x, int y) {
        return static_cast<std::size_t>(y - y0) * w + static_cast<std::size_t>(x - x0);
    };
    std::vector<Vertex> stack{{x0, y0}};
    outside[idx(x0, y0)] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            int nx = v.x + dx[d], ny = v.y + dy[d];
            if (nx < x0 || ny < y0 || nx >= x0 + w || ny >= y0 + h) continue;
            if (comp.contains(nx, ny) || outside[idx(nx, ny)]) continue;
            outside[idx(nx, ny)] = 1;
            stack.push_back({nx, ny});
        }
    }
    for (int y = y0; y < y0 + h; ++y)
        for (int x = x0; x < x0 + w; ++x)
            if (!comp.contains(x, y) && !outside[idx(x, y)]) {
                hole = {x, y};
                return true;
            }
    return false;
}

} // namespace detail

// Descends from the origin component into holes until reaching a simply
// connected constant-sign component; each step strictly shrinks the region,
// so the walk terminates. An all-constant configuration returns the box.
inline std::pair<VertexSet, int> hole_descent(const SpinConfiguration& sigma) {
    Vertex at{0, 0};
    while (true) {
        VertexSet comp = detail::component_of(sigma, at.x, at.y);
        Vertex hole;
        if (!detail::find_hole_vertex(comp, hole)) return {comp, sigma.spin(at.x, at.y)};
        at = hole;
    }
}

} // namespace rfimlab
