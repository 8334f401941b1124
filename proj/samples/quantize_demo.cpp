// q-deformations of a few continued fractions, with the conjugate expansion.
#include <iostream>

#include <qmetallic/qmetallic.hpp>

using namespace qmetallic;

int main(int argc, char **argv)
{
    const char *text = argc > 1 ? argv[1] : "2;(1,1,1,4)*";
    const PeriodicCF cf = PeriodicCF::parse(text);
    std::cout << "x = [" << cf.to_string() << "]\n";
    if (cf.is_rational()) {
        const auto r = q_rational(cf);
        std::cout << "[x]_q = (" << r.num << ") / (" << r.den << ")\n";
        return 0;
    }
    const auto f = quantize_quadratic(cf);
    std::cout << "[x]_q = (" << f.R << (f.sign > 0 ? " + " : " - ") << "sqrt(" << f.P << ")) / (" << f.S << ")\n";
    std::cout << "series     " << f.series(16).to_string(20) << "\n";
    std::cout << "conjugate  " << f.conjugate_series(16).to_string(20) << "\n";
    if (f.S.is_monomial()) {
        const auto c = conjugate_pair_check(cf, 60);
        std::cout << "coefficients are opposite from q^" << c.onset << " on: " << (c.holds ? "yes" : "no") << "\n";
    }
}
