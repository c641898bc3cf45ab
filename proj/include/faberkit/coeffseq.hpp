#ifndef FABERKIT_COEFFSEQ_HPP
#define FABERKIT_COEFFSEQ_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include <faberkit/types.hpp>

namespace faberkit
{

// Finite Laurent/Fourier coefficient vector on the circle.
//
// neg[k] multiplies z^{-(k+1)} and pos[k] multiplies z^{k+1}; the constant
// term is kept apart because every norm and every Grunsky quantity ignores it.
struct CoeffSeq {
    cvec neg;
    cvec pos;
    cplx constant{};

    static CoeffSeq monomial(int k, cplx value = 1.0)
    {
        CoeffSeq s;
        s.set(k, value);
        return s;
    }

    std::size_t max_neg() const
    {
        return neg.size();
    }
    std::size_t max_pos() const
    {
        return pos.size();
    }

    // Coefficient of z^k.
    cplx coeff(int k) const
    {
        if (k == 0) {
            return constant;
        }
        if (k < 0) {
            const auto idx = static_cast<std::size_t>(-k - 1);
            return idx < neg.size() ? neg[idx] : cplx{};
        }
        const auto idx = static_cast<std::size_t>(k - 1);
        return idx < pos.size() ? pos[idx] : cplx{};
    }

    void set(int k, cplx value)
    {
        if (k == 0) {
            constant = value;
            return;
        }
        auto &side = k < 0 ? neg : pos;
        const auto idx = static_cast<std::size_t>(std::abs(k) - 1);
        if (side.size() <= idx) {
            side.resize(idx + 1);
        }
        side[idx] = value;
    }

    // Keep frequencies -max_neg..max_pos.
    CoeffSeq truncated(std::size_t max_neg, std::size_t max_pos) const
    {
        CoeffSeq out = *this;
        out.neg.resize(max_neg);
        out.pos.resize(max_pos);
        return out;
    }

    CoeffSeq &operator+=(const CoeffSeq &o)
    {
        neg.resize(std::max(neg.size(), o.neg.size()));
        pos.resize(std::max(pos.size(), o.pos.size()));
        for (std::size_t k = 0; k < o.neg.size(); ++k) {
            neg[k] += o.neg[k];
        }
        for (std::size_t k = 0; k < o.pos.size(); ++k) {
            pos[k] += o.pos[k];
        }
        constant += o.constant;
        return *this;
    }

    CoeffSeq &operator*=(cplx s)
    {
        for (auto &c : neg) {
            c *= s;
        }
        for (auto &c : pos) {
            c *= s;
        }
        constant *= s;
        return *this;
    }

    friend CoeffSeq operator+(CoeffSeq a, const CoeffSeq &b)
    {
        return a += b;
    }
    friend CoeffSeq operator*(CoeffSeq a, cplx s)
    {
        return a *= s;
    }
};

// Largest coefficient difference between two sequences over all frequencies.
inline double max_abs_difference(const CoeffSeq &a, const CoeffSeq &b)
{
    double d = std::abs(a.constant - b.constant);
    const std::size_t nn = std::max(a.neg.size(), b.neg.size());
    const std::size_t np = std::max(a.pos.size(), b.pos.size());
    for (std::size_t k = 1; k <= nn; ++k) {
        d = std::max(d, std::abs(a.coeff(-static_cast<int>(k)) - b.coeff(-static_cast<int>(k))));
    }
    for (std::size_t k = 1; k <= np; ++k) {
        d = std::max(d, std::abs(a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k))));
    }
    return d;
}

// Dirichlet norm of the exterior part: sqrt(pi * sum m |a_{-m}|^2).
inline double dirichlet_norm_minus(const CoeffSeq &s)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < s.neg.size(); ++k) {
        acc += static_cast<double>(k + 1) * std::norm(s.neg[k]);
    }
    return std::sqrt(pi * acc);
}

// Dirichlet norm of the disk part: sqrt(pi * sum n |a_n|^2).
inline double dirichlet_norm_plus(const CoeffSeq &s)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < s.pos.size(); ++k) {
        acc += static_cast<double>(k + 1) * std::norm(s.pos[k]);
    }
    return std::sqrt(pi * acc);
}

// H^{1/2} seminorm sqrt(pi * sum_{n != 0} |n| |a_n|^2).
inline double h_half_norm(const CoeffSeq &s)
{
    const double m = dirichlet_norm_minus(s), p = dirichlet_norm_plus(s);
    return std::sqrt(m * m + p * p);
}

// P_infty(D^-): negative frequencies only.
inline CoeffSeq project_minus(const CoeffSeq &s)
{
    CoeffSeq out;
    out.neg = s.neg;
    return out;
}

// P_0(D^+): positive frequencies only.
inline CoeffSeq project_plus(const CoeffSeq &s)
{
    CoeffSeq out;
    out.pos = s.pos;
    return out;
}

// Sum of a_n z^n over every stored frequency, constant included.
inline cplx eval_series(const CoeffSeq &s, cplx z)
{
    cplx acc = s.constant;
    if (!s.pos.empty()) {
        cplx p{};
        for (std::size_t k = s.pos.size(); k-- > 0;) {
            p = (p + s.pos[k]) * z;
        }
        acc += p;
    }
    if (!s.neg.empty()) {
        const cplx u = 1.0 / z;
        cplx p{};
        for (std::size_t k = s.neg.size(); k-- > 0;) {
            p = (p + s.neg[k]) * u;
        }
        acc += p;
    }
    return acc;
}

// Reflection in the unit circle of the exterior part: for h = sum a_{-m} z^{-m}
// the antiholomorphic function (Rh)(zeta) = h(1 / conj(zeta)) = sum a_{-m} conj(zeta)^m.
class Reflection
{
public:
    explicit Reflection(const CoeffSeq &s) : m_neg(s.neg) {}

    cplx operator()(cplx zeta) const
    {
        const cplx zb = std::conj(zeta);
        cplx p{};
        for (std::size_t k = m_neg.size(); k-- > 0;) {
            p = (p + m_neg[k]) * zb;
        }
        return p;
    }

private:
    cvec m_neg;
};

inline Reflection reflect(const CoeffSeq &s)
{
    return Reflection(s);
}

struct CoeffExtraction {
    CoeffSeq coeffs;
    // Largest raw FFT coefficient near the Nyquist index relative to the largest overall.
    double alias_floor = 0.0;
    bool alias_warning = false;
};

// Laurent coefficients a_{-max_neg}..a_{max_pos} of a function sampled at
// rho e^{2 pi i k / N}, k = 0..N-1, using a_n = FFT_n / N * rho^{-n}.
inline CoeffExtraction sample_to_coeffs(const cvec &samples, double rho, std::size_t max_neg, std::size_t max_pos,
                                       double alias_threshold = 1e-12)
{
    const std::size_t n = samples.size();
    if (n < 2 * (max_neg + max_pos) + 1) {
        throw std::invalid_argument("sample_to_coeffs: too few samples for the requested band");
    }
    if (!(rho > 0.0)) {
        throw std::invalid_argument("sample_to_coeffs: radius must be positive");
    }
    Eigen::FFT<double> fft;
    cvec spec;
    fft.fwd(spec, samples);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto &c : spec) {
        c *= inv_n;
    }

    double largest = 0.0;
    for (const auto &c : spec) {
        largest = std::max(largest, std::abs(c));
    }
    const std::size_t half = n / 2;
    const std::size_t width = std::max<std::size_t>(1, n / 16);
    double tail = 0.0;
    for (std::size_t k = half - std::min(half, width - 1); k <= half + std::min(half - 1, width - 1) && k < n; ++k) {
        tail = std::max(tail, std::abs(spec[k]));
    }

    CoeffExtraction out;
    out.alias_floor = largest > 0.0 ? tail / largest : 0.0;
    out.alias_warning = out.alias_floor > alias_threshold;
    out.coeffs.constant = spec[0];
    out.coeffs.neg.resize(max_neg);
    out.coeffs.pos.resize(max_pos);
    for (std::size_t k = 1; k <= max_pos; ++k) {
        out.coeffs.pos[k - 1] = spec[k] * std::pow(rho, -static_cast<double>(k));
    }
    for (std::size_t k = 1; k <= max_neg; ++k) {
        out.coeffs.neg[k - 1] = spec[n - k] * std::pow(rho, static_cast<double>(k));
    }
    return out;
}

// Samples of fn at rho e^{2 pi i k / count}.
template <typename Fn>
cvec sample_circle(Fn &&fn, double rho, std::size_t count)
{
    cvec out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = fn(rho * unit(2.0 * pi * static_cast<double>(k) / static_cast<double>(count)));
    }
    return out;
}

// CSV rows `n,re,im`, frequency-sorted, zero entries included.
inline void write_coeff_csv(std::ostream &os, const CoeffSeq &s)
{
    os << "n,re,im\n";
    const auto old = os.precision(17);
    for (std::size_t k = s.neg.size(); k >= 1; --k) {
        const cplx c = s.neg[k - 1];
        os << -static_cast<long>(k) << ',' << c.real() << ',' << c.imag() << '\n';
    }
    os << 0 << ',' << s.constant.real() << ',' << s.constant.imag() << '\n';
    for (std::size_t k = 1; k <= s.pos.size(); ++k) {
        const cplx c = s.pos[k - 1];
        os << k << ',' << c.real() << ',' << c.imag() << '\n';
    }
    os.precision(old);
}

} // namespace faberkit

#endif
