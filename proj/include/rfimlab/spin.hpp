#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rfimlab {

enum class Boundary : std::uint8_t { plus, minus };

inline int boundary_sign(Boundary b) { return b == Boundary::plus ? 1 : -1; }

// +-1 spins on the box Lambda(L) = {-L..L}^2 together with the boundary
// condition imposed outside the box.
struct SpinConfiguration {
    int L = 0;
    std::vector<std::int8_t> spins; // row-major over the box, side 2L+1
    Boundary boundary = Boundary::plus;

    SpinConfiguration() = default;
    SpinConfiguration(int L_, Boundary b, std::int8_t fill = 1)
        : L(L_), spins(static_cast<std::size_t>(2 * L_ + 1) * (2 * L_ + 1), fill), boundary(b) {}

    int side() const { return 2 * L + 1; }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y + L) * side() + static_cast<std::size_t>(x + L);
    }
    bool in_box(int x, int y) const { return x >= -L && x <= L && y >= -L && y <= L; }
    int spin(int x, int y) const { return spins[index(x, y)]; }
    void set_spin(int x, int y, int s) { spins[index(x, y)] = static_cast<std::int8_t>(s); }
};

} // namespace rfimlab
