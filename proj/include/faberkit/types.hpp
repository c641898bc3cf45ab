#ifndef FABERKIT_TYPES_HPP
#define FABERKIT_TYPES_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace faberkit
{

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// e^{i theta}
inline cplx unit(double theta)
{
    return {std::cos(theta), std::sin(theta)};
}

inline bool is_power_of_two(std::size_t n)
{
    return n != 0 && (n & (n - 1)) == 0;
}

inline std::size_t next_power_of_two(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

} // namespace faberkit

#endif
