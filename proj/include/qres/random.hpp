#pragma once

// Seeded draws that do not depend on the standard library's distribution
// implementations, so a seed gives the same stream on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "qres/etale.hpp"
#include "qres/scalar.hpp"

namespace qres {

using Rng = std::mt19937_64;

/// Uniform integer in [-bound, bound] by rejection sampling.
inline long draw_bounded(Rng& rng, long bound)
{
    if (bound <= 0) return 0;
    const std::uint64_t range = 2 * static_cast<std::uint64_t>(bound) + 1;
    const std::uint64_t limit = Rng::max() - Rng::max() % range;
    std::uint64_t r;
    do r = rng(); while (r >= limit);
    return static_cast<long>(r % range) - bound;
}

/// Uniform integer in [lo, hi].
inline long draw_range(Rng& rng, long lo, long hi)
{
    const long mid = (hi - lo) / 2;
    if ((hi - lo) % 2 == 0) return lo + mid + draw_bounded(rng, mid);
    // odd width: draw from the next even width and reject the extra value
    long v;
    do v = lo + mid + 1 + draw_bounded(rng, mid + 1);
    while (v > hi);
    return v;
}

template <Scalar F>
F draw_scalar(Rng& rng, const field_of<F>& fld, long bound)
{
    return fld.from_int(draw_bounded(rng, bound));
}

template <Scalar F>
F draw_nonzero_scalar(Rng& rng, const field_of<F>& fld, long bound)
{
    F v;
    do v = fld.from_int(draw_bounded(rng, bound));
    while (v.is_zero());
    return v;
}

template <Scalar F>
AlgElement<F> random_element(const EtaleAlgebra<F>& a, Rng& rng, long bound)
{
    std::vector<F> c;
    for (std::size_t i = 0; i < a.dimension(); ++i) c.push_back(draw_scalar<F>(rng, a.field(), bound));
    return a.from_coords(c);
}

template <Scalar F>
AlgElement<F> random_unit(const EtaleAlgebra<F>& a, Rng& rng, long bound)
{
    for (;;) {
        auto x = random_element(a, rng, bound);
        if (x.is_unit()) return x;
    }
}

}  // namespace qres
