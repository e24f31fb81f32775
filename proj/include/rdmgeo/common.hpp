#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rdmgeo {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// Two-mode collective-spin models with a three-term Hamiltonian family.
enum class Model { ising, xy };

inline const char* model_name(Model m) {
    return m == Model::ising ? "ising" : "xy";
}

/// Coordinate plane selecting two of the three projection coordinates.
enum class Plane { xy, xz, yz };

inline const char* plane_name(Plane p) {
    switch (p) {
        case Plane::xy: return "xy";
        case Plane::xz: return "xz";
        default: return "yz";
    }
}

inline std::pair<int, int> plane_axes(Plane p) {
    switch (p) {
        case Plane::xy: return {0, 1};
        case Plane::xz: return {0, 2};
        default: return {1, 2};
    }
}

/// Numerical solve failed to reach the requested tolerance.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

/// Convex-hull construction failed (degenerate input).
class hull_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// splitmix64; used wherever deterministic pseudo-random streams are needed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform double in [-1, 1), platform-independent.
inline double uniform_pm1(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1p-52 - 1.0;
}

} // namespace detail

} // namespace rdmgeo
