// Dominant singularities of [phi_n]_q and the quality of the leading term.
#include <iostream>
#include <vector>

#include <qmetallic/qmetallic.hpp>

using namespace qmetallic;

int main()
{
    const std::vector<long> ls{100, 500, 1000, 2000};
    for (long n = 1; n <= 4; ++n) {
        const auto report = singularity_report(n);
        PrecisionScope scope(report.precision_bits);
        std::cout << "n = " << n << "  radius " << format_significant(report.radius, 20) << "  dominant roots "
                  << report.dominant.size() << "\n";
        for (std::size_t i = 0; i < report.dominant.size(); ++i) {
            const auto &z = report.dominant[i];
            const auto &g = report.gammas[i];
            std::cout << "  zeta = " << format_significant(z.re, 12) << " " << format_significant(z.im, 12)
                      << "i   gamma = " << format_significant(g.re, 12) << " " << format_significant(g.im, 12)
                      << "i\n";
        }
        for (const auto &row : ratio_table(n, ls)) {
            std::cout << "  l = " << row.l << "  alpha/kappa = " << row.ratio << "\n";
        }
    }
}
