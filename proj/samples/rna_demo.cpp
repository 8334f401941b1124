// Secondary structures and the signed coefficients of the q-golden ratio.
#include <iostream>

#include <qmetallic/qmetallic.hpp>

using namespace qmetallic;

int main()
{
    for (const auto &s : rna::generate_structures(6, 1)) {
        std::cout << "  {";
        for (std::size_t i = 0; i < s.hbonds.size(); ++i) {
            std::cout << (i ? ", " : "") << "(" << s.hbonds[i].first << "," << s.hbonds[i].second << ")";
        }
        std::cout << "}\n";
    }
    const auto kappa = coeffs_p_recurrence(1, 16).values;
    std::cout << "\n l  a_l(rank 1)  kappa_{l+1}(phi_1)  rank 0  rank 2\n";
    for (long l = 1; l <= 14; ++l) {
        std::cout << " " << l << "  " << rna::enumerate_structures(l, 1) << "  " << kappa[static_cast<std::size_t>(l + 1)]
                  << "  " << rna::enumerate_structures(l, 0) << "  " << rna::enumerate_structures(l, 2) << "\n";
    }
    const auto log = classify(19, 5000);
    std::cout << "\nn = 19 up to 5000: " << log_class_name(log.classification) << ", " << log.positive_count
              << " positive and " << log.negative_count << " negative discriminants\n";
}
