// Albert forms of cor(S/C, x) for a cyclic quartic: the index of the
// biquaternion algebra read off the transfer form. x is given in the basis
// 1, c, c^2 of C built from the substituted quartic.

#include <iostream>

#include "qres/albert.hpp"
#include "qres/resolvent.hpp"

using namespace qres;

int main()
{
    const RationalField QQ;
    const auto rd = RationalResolvent::build(parse_poly("x^4-4x^2+2", QQ));
    std::cout << "P = " << rd.quartic().to_string("x") << ", rhoC = " << rd.rhoC().to_string("z") << "\n";
    const std::vector<std::vector<long>> xs{{1, 0, 0}, {3, 0, 0}, {-1, 0, 0}, {1, 1, 0}, {2, -1, 1}, {-5, 0, 2}};
    for (const auto& c : xs) {
        const auto x = rd.C().from_coords({Rational(c[0]), Rational(c[1]), Rational(c[2])});
        const QuadForm q = transfer_form(rd, x);
        const auto [pos, neg] = q.signature();
        std::cout << "x = (" << c[0] << ", " << c[1] << ", " << c[2] << "): " << q.diagonal_text()
                  << ", signature (" << pos << "," << neg << "), disc " << q.disc().get_str() << ", "
                  << to_string(classify_albert(q)) << ", cor ramified at {";
        const auto labels = cor_class(rd, x).labels();
        for (std::size_t i = 0; i < labels.size(); ++i) std::cout << (i ? ", " : "") << labels[i];
        std::cout << "}\n";
    }
}
