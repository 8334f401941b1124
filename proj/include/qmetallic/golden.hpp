#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "series.hpp"

// Printed reference data: series expansions and asymptotic ratio tables.
namespace qmetallic::golden {

struct PrintedSeries {
    std::string_view name;
    long valuation;
    std::vector<long> coeffs;

    [[nodiscard]] long order() const { return valuation + static_cast<long>(coeffs.size()); }

    [[nodiscard]] LaurentSeries series() const
    {
        std::vector<BigRat> v(coeffs.begin(), coeffs.end());
        return LaurentSeries(valuation, std::move(v), order());
    }
};

inline const PrintedSeries &phi1()
{
    static const PrintedSeries s{"phi_1", 0, {1,     0,     1,      -1,     2,       -4,      8,
                                               -17,   37,    -82,    185,    -423,    978,     -2283,
                                               5373,  -12735, 30372, -72832, 175502, -424748, 1032004}};
    return s;
}

inline const PrintedSeries &phi2()
{
    static const PrintedSeries s{"phi_2", 0, {1, 1, 0, 0, 1, 0, -2, 1, 4, -5, -7, 18, 7, -55, 18, 146, -155, -322, 692,
                                              476, -2446}};
    return s;
}

inline const PrintedSeries &phi3()
{
    static const PrintedSeries s{
        "phi_3", 0, {1, 1, 1, 0, 0, 0, 1, 0, -1, -2, 2, 4, 1, -11, -7, 15, 34, -17, -83, -38, 189, 215, -260}};
    return s;
}

inline const PrintedSeries &phi5()
{
    static const PrintedSeries s{"phi_5", 0, {1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0, -1, -1, 0, 0, 3, 3, -2, -7, -4, -1,
                                              10, 21, 9, -30, -44, -28}};
    return s;
}

// Coefficients a_0 .. a_15 of the secondary-structure generating function.
inline const std::vector<long> &rna_counts()
{
    static const std::vector<long> a{1, 1, 1, 2, 4, 8, 17, 37, 82, 185, 423, 978, 2283, 5373, 12735, 30372};
    return a;
}

inline const PrintedSeries &sqrt7()
{
    static const PrintedSeries s{"sqrt7", 0, {1, 1, 0, 1, -1, 2, -3, 4, -6, 8, -9, 9, -5, -9, 40, -101, 215, -411,
                                              724, -1195}};
    return s;
}

inline const PrintedSeries &neg_sqrt7()
{
    static const PrintedSeries s{"-sqrt7", -3, {-1, -1, 0, -1, 0, 1, -1, 1, -2, 3, -4, 6, -8, 9, -9, 5, 9, -40, 101,
                                                -215, 411, -724, 1195}};
    return s;
}

inline const PrintedSeries &inv_sqrt7()
{
    static const PrintedSeries s{"1/sqrt7", 2, {1, -1, 1, -2, 3, -3, 3, -3, 0, 8, -22, 48, -95, 169, -277, 426, -603,
                                                754, -756}};
    return s;
}

inline const PrintedSeries &neg_inv_sqrt7()
{
    static const PrintedSeries s{"-1/sqrt7", -1, {-1,    1,     -1,     2,      -4,      8,      -16,   31,
                                                  -60,   116,   -222,   423,    -804,    1522,   -2873, 5414,
                                                  -10186, 19142, -35952, 67505, -126745, 238023}};
    return s;
}

// The golden-ratio family: [1/phi_1], [-phi_1], [-1/phi_1], 1/[phi_1].
inline const PrintedSeries &recip_phi1()
{
    static const PrintedSeries s{"1/phi_1", 1, {1, -1, 2, -4, 8, -17, 37, -82, 185, -423, 978, -2283, 5373, -12735,
                                                30372, -72832}};
    return s;
}

inline const PrintedSeries &neg_phi1()
{
    static const PrintedSeries s{"-phi_1", -2, {-1, -1, 1, -1, 1, -2, 4, -8, 17, -37, 82, -185, 423, -978, 2283,
                                                -5373, 12735, -30372}};
    return s;
}

inline const PrintedSeries &neg_recip_phi1()
{
    static const PrintedSeries s{"-1/phi_1", -1, {-1, 0, 1, -1, 1, -2, 4, -8, 17, -37, 82, -185, 423, -978, 2283,
                                                  -5373, 12735, -30372}};
    return s;
}

inline const PrintedSeries &mult_inverse_phi1()
{
    static const PrintedSeries s{"1/[phi_1]", 0, {1, 0, -1, 1, -1, 2, -4, 8, -17, 37, -82, 185, -423, 978, -2283,
                                                  5373, -12735, 30372, -72832}};
    return s;
}

struct RatioRow {
    long l;
    std::string_view ratio;
};

// alpha_l / kappa_l for l = 100, 200, ..., 2000.
inline const std::array<RatioRow, 20> &ratio_table(long n)
{
    static const std::array<RatioRow, 20> t1{{{100, "1.00920787585969"},  {200, "1.00460791453865"},
                                              {300, "1.00307282663501"},  {400, "1.00230495129970"},
                                              {500, "1.00184412006547"},  {600, "1.00153685506518"},
                                              {700, "1.00131735842809"},  {800, "1.00115272411804"},
                                              {900, "1.00102466819873"},  {1000, "1.00092221904615"},
                                              {1100, "1.00083839409185"}, {1200, "1.00076853795555"},
                                              {1300, "1.00070942749156"}, {1400, "1.00065876033949"},
                                              {1500, "1.00061484803111"}, {1600, "1.00057642416974"},
                                              {1700, "1.00054252030416"}, {1800, "1.00051238317392"},
                                              {1900, "1.00048541808530"}, {2000, "1.00046114927309"}}};
    static const std::array<RatioRow, 20> t2{{{100, "1.01308514797288"},   {200, "1.00325325010954"},
                                              {300, "0.991108641080958"},  {400, "1.00275058677525"},
                                              {500, "1.00102402482528"},   {600, "1.00806934422174"},
                                              {700, "1.00136740524684"},   {800, "1.00040110393724"},
                                              {900, "1.00225021335249"},   {1000, "1.00083728350527"},
                                              {1100, "0.999994952553134"}, {1200, "1.00122049561281"},
                                              {1300, "1.00055562411420"},  {1400, "0.999397735266132"},
                                              {1500, "1.00080153834159"},  {1600, "1.00037325748451"},
                                              {1700, "0.990550401870774"}, {1800, "1.00057468377462"},
                                              {1900, "1.00023210537365"},  {2000, "1.00143627259275"}}};
    static const std::array<RatioRow, 20> t3{{{100, "1.02884159097029"},  {200, "1.01358188118180"},
                                              {300, "1.00870875634510"},  {400, "1.00632246106473"},
                                              {500, "1.00491290582129"},  {600, "1.00398610179618"},
                                              {700, "1.00333268815893"},  {800, "1.00284880660249"},
                                              {900, "1.00247711799935"},  {1000, "1.00218340411663"},
                                              {1100, "1.00194599713422"}, {1200, "1.00175051986890"},
                                              {1300, "1.00158706487181"}, {1400, "1.00144858802272"},
                                              {1500, "1.00132994764758"}, {1600, "1.00122730566850"},
                                              {1700, "1.00113774115142"}, {1800, "1.00105899333883"},
                                              {1900, "1.00098928627763"}, {2000, "1.00092720636958"}}};
    switch (n) {
    case 1:
        return t1;
    case 2:
        return t2;
    case 3:
        return t3;
    default:
        raise(ErrorKind::InvalidArgument, "printed ratio tables exist for n = 1, 2, 3 only");
    }
}

} // namespace qmetallic::golden
