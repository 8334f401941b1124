// Coefficients of [phi_n]_q from three independent engines.
#include <iostream>

#include <qmetallic/qmetallic.hpp>

using namespace qmetallic;

int main()
{
    const long L = 18;
    for (long n = 1; n <= 5; ++n) {
        const auto conv = coeffs_convolution(n, L);
        const auto prec = coeffs_p_recurrence(n, L);
        const auto root = coeffs_sqrt(n, L);
        const bool same = conv.values == prec.values && prec.values == root.values;
        std::cout << "[phi_" << n << "]_q = " << conv.series().to_string(L) << (same ? "" : "   (engines disagree!)")
                  << "\n";
    }
    std::cout << "\nR_3 = " << poly_R(3) << "\nP_3 = " << poly_P(3) << "\nQ_3 = " << poly_Q(3) << "\n";
}
