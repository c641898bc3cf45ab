#pragma once

#include <string>
#include <utility>
#include <vector>

#include <faberkit/faberkit.hpp>

namespace fixtures
{

using faberkit::cplx;
using faberkit::ConformalMapSpec;
using faberkit::MultiDomainConfig;
using faberkit::RationalFn;

inline MultiDomainConfig config_a()
{
    return {{ConformalMapSpec(-2.0, {1.0}), ConformalMapSpec(2.0, {1.0})}};
}

inline MultiDomainConfig config_b()
{
    return {{ConformalMapSpec(-2.0, {1.0, 0.1}), ConformalMapSpec(2.0, {0.8})}};
}

inline MultiDomainConfig config_c()
{
    return {{ConformalMapSpec(-4.0, {1.0}), ConformalMapSpec(4.0, {1.0}), ConformalMapSpec(cplx(0.0, 4.0), {1.0})}};
}

inline MultiDomainConfig single(const ConformalMapSpec &spec)
{
    return {{spec}};
}

struct Named {
    std::string name;
    MultiDomainConfig config;
};

inline std::vector<Named> all_configs()
{
    return {{"A", config_a()}, {"B", config_b()}, {"C", config_c()}};
}

// Ten rational functions with poles at f_k(w0), |w0| <= 0.5, mixing components and orders.
inline std::vector<RationalFn> rational_family(const MultiDomainConfig &cfg)
{
    const auto at = [&](std::size_t k, cplx w) { return faberkit::evaluate_map(cfg.maps[k % cfg.size()], w); };
    const std::size_t last = cfg.size() - 1;
    std::vector<RationalFn> fam;
    fam.push_back(RationalFn::simple(at(0, 0.0), 1, 1.0));
    fam.push_back(RationalFn::simple(at(last, 0.0), 1, 1.0));
    fam.push_back(RationalFn::simple(at(0, 0.0), 1, 1.0) + RationalFn::simple(at(last, 0.0), 1, 1.0));
    fam.push_back(RationalFn::simple(at(0, 0.3), 1, cplx(0.5, -0.2)));
    fam.push_back(RationalFn::simple(at(0, cplx(0.0, 0.4)), 2, 1.0));
    fam.push_back(RationalFn::simple(at(last, cplx(-0.25, 0.25)), 3, cplx(0.0, 1.0)));
    {
        RationalFn h = RationalFn::simple(at(0, 0.2), 2, 0.7);
        h.add(at(0, 0.2), 1, cplx(0.1, 0.3));
        fam.push_back(h);
    }
    {
        RationalFn h;
        for (std::size_t k = 0; k < cfg.size(); ++k) {
            h.add(at(k, cplx(0.1, -0.2)), 1 + k % 2, cplx(1.0, static_cast<double>(k)));
        }
        fam.push_back(h);
    }
    fam.push_back(RationalFn::simple(at(1, cplx(0.45, 0.0)), 1, -2.0) + RationalFn::simple(at(0, cplx(-0.4, 0.1)), 2, 0.3));
    {
        RationalFn h = RationalFn::simple(at(last, 0.5), 1, cplx(0.2, 0.2));
        h.add(at(0, cplx(0.0, -0.35)), 3, 0.05);
        h.add(at(1, 0.0), 2, cplx(-0.4, 0.0));
        fam.push_back(h);
    }
    return fam;
}

} // namespace fixtures
