#ifndef FABERKIT_ERROR_HPP
#define FABERKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace faberkit
{

// Base of every error thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Newton iteration in invert_map ran out of budget.
class non_convergence : public error
{
public:
    using error::error;
};

// A computed or requested point lies outside the admissible region.
class outside_range : public error
{
public:
    using error::error;
};

// Evaluation point is closer to a quadrature contour than the allowed minimum.
class too_close_to_contour : public error
{
public:
    using error::error;
};

// A pole of a rational function is not enclosed by any boundary curve.
class pole_outside_regions : public error
{
public:
    using error::error;
};

// Two independent computations of the same Grunsky block disagree.
class method_disagreement : public error
{
public:
    using error::error;
};

// Power-series division by a series with vanishing constant term.
class series_divergence : public error
{
public:
    using error::error;
};

// Malformed configuration file or command-line descriptor.
class parse_error : public error
{
public:
    using error::error;
};

} // namespace faberkit

#endif
