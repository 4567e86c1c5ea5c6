// Builds S/C for x^4 + x + 1 and walks through the maps between unit groups.

#include <iostream>

#include "qres/albert.hpp"
#include "qres/resolvent.hpp"

using namespace qres;

int main()
{
    const RationalField QQ;
    const auto rd = RationalResolvent::build(parse_poly("x^4+x+1", QQ));
    std::cout << "P    = " << rd.quartic().to_string("x") << "\n"
              << "P6   = " << rd.P6().to_string("Y") << "\n"
              << "rhoC = " << rd.rhoC().to_string("z") << "\n"
              << "rho  = " << rd.rho().to_string("X") << "\n";

    // x = 1 + t in L
    const auto x = rd.L().from_monogenic(parse_poly("1+x", QQ));
    const auto s = rd.sigma_star(x);
    std::cout << "N_{L/k}(x)          = " << x.norm().to_string() << "\n"
              << "N_{S/C}(sigma*(x))  = " << rd.norm_S_over_C(s).to_string() << "\n"
              << "tau*(sigma*(x))     = " << rd.tau_star(s).to_string() << "\n"
              << "x^2 N_{L/k}(x)      = " << (x * x * rd.L().scalar(x.norm())).to_string() << "\n";

    // (lambda, -rho(lambda)) is the corestriction of lambda(lambda - a)
    for (long l = 1; l <= 6; ++l) {
        const Rational lam(l);
        std::cout << "lambda = " << l << ": (" << l << ", " << (-rd.rho().eval(lam)).to_string() << ") ramified at {";
        const auto labels = quat_from_lambda(rd, lam).labels();
        for (std::size_t i = 0; i < labels.size(); ++i) std::cout << (i ? ", " : "") << labels[i];
        std::cout << "}\n";
    }
}
