#pragma once

// Integer coefficient tables for the cleared determinant polynomial
// used by the cross-check evaluator in equations.hpp. Each entry is a
// monomial c * a^i * b^j; the four tables are the components along the
// basis {1, u, v, u*v} with u = sqrt(a^2-1), v = sqrt(b^2-1).

#include <array>
#include <cstdint>

namespace kitecc::f2_tables {

struct Term {
  std::int8_t i, j;
  std::int64_t c;
};

// constant part (133 terms)
inline constexpr std::array<Term, 133> kTerms1 = {{
    {0, 3, 36864}, {0, 4, 24576}, {0, 5, -129024}, {0, 6, -49152},
    {0, 7, 169728}, {0, 8, 30720}, {0, 9, -103296}, {0, 10, -6144},
    {0, 11, 28560}, {0, 12, 192}, {0, 13, -2904}, {0, 15, 48},
    {2, 2, -49152}, {2, 3, -122880}, {2, 4, 49152}, {2, 5, 411648},
    {2, 6, 24576}, {2, 7, -508416}, {2, 8, -30720}, {2, 9, 281856},
    {2, 10, 4992}, {2, 11, -67296}, {2, 13, 5280}, {2, 15, -48},
    {3, 0, 36864}, {3, 2, -122880}, {3, 3, -9216}, {3, 4, 155904},
    {3, 5, 21504}, {3, 6, -92928}, {3, 7, -21216}, {3, 8, 26064},
    {3, 9, 11616}, {3, 10, -3120}, {3, 11, -3210}, {3, 12, 120},
    {3, 13, 336}, {3, 15, -6}, {4, 0, 24576}, {4, 2, 49152}, {4, 3, 155904},
    {4, 4, -110592}, {4, 5, -493440}, {4, 6, 36864}, {4, 7, 559008},
    {4, 8, 2880}, {4, 9, -270288}, {4, 11, 50832}, {4, 13, -2376},
    {5, 0, -129024}, {5, 2, 411648}, {5, 3, 21504}, {5, 4, -493440},
    {5, 5, -55872}, {5, 6, 272256}, {5, 7, 59040}, {5, 8, -67752},
    {5, 9, -31128}, {5, 10, 6384}, {5, 11, 7440}, {5, 12, -120},
    {5, 13, -606}, {5, 15, 6}, {6, 0, -49152}, {6, 2, 24576}, {6, 3, -92928},
    {6, 4, 36864}, {6, 5, 272256}, {6, 6, -16128}, {6, 7, -271584},
    {6, 9, 104832}, {6, 11, -12096}, {7, 0, 169728}, {7, 2, -508416},
    {7, 3, -21216}, {7, 4, 559008}, {7, 5, 59040}, {7, 6, -271584},
    {7, 7, -61884}, {7, 8, 54456}, {7, 9, 29088}, {7, 10, -3168},
    {7, 11, -5490}, {7, 13, 270}, {8, 0, 30720}, {8, 2, -30720},
    {8, 3, 26064}, {8, 4, 2880}, {8, 5, -67752}, {8, 7, 54456}, {8, 8, -24},
    {8, 9, -13104}, {8, 10, 24}, {8, 12, -3}, {9, 0, -103296},
    {9, 2, 281856}, {9, 3, 11616}, {9, 4, -270288}, {9, 5, -31128},
    {9, 6, 104832}, {9, 7, 29088}, {9, 8, -13104}, {9, 9, -10836},
    {9, 11, 1260}, {10, 0, -6144}, {10, 2, 4992}, {10, 3, -3120},
    {10, 5, 6384}, {10, 7, -3168}, {10, 8, 24}, {10, 10, -18},
    {11, 0, 28560}, {11, 2, -67296}, {11, 3, -3210}, {11, 4, 50832},
    {11, 5, 7440}, {11, 6, -12096}, {11, 7, -5490}, {11, 9, 1260},
    {12, 0, 192}, {12, 3, 120}, {12, 5, -120}, {12, 8, -3}, {13, 0, -2904},
    {13, 2, 5280}, {13, 3, 336}, {13, 4, -2376}, {13, 5, -606}, {13, 7, 270},
    {15, 0, 48}, {15, 2, -48}, {15, 3, -6}, {15, 5, 6}
}};

// coefficient of u (100 terms)
inline constexpr std::array<Term, 100> kTermsU = {{
    {0, 3, 36864}, {0, 5, -82944}, {0, 7, 62976}, {0, 8, -2304},
    {0, 9, -18240}, {0, 10, 4224}, {0, 11, 1536}, {0, 12, -2256},
    {0, 14, 312}, {2, 3, -58368}, {2, 5, 113664}, {2, 7, -67776},
    {2, 8, 4224}, {2, 9, 11904}, {2, 10, -7008}, {2, 12, 3144},
    {2, 14, -288}, {3, 0, 36864}, {3, 2, -76800}, {3, 4, 50688},
    {3, 5, -4608}, {3, 6, -10944}, {3, 7, 8832}, {3, 8, 576}, {3, 9, -4992},
    {3, 10, -384}, {3, 11, 744}, {3, 12, 228}, {3, 14, -36}, {4, 3, 26112},
    {4, 5, -40128}, {4, 7, 14592}, {4, 8, -2256}, {4, 10, 3144},
    {4, 12, -960}, {5, 0, -64512}, {5, 2, 116736}, {5, 3, -4608},
    {5, 4, -61248}, {5, 5, 19968}, {5, 6, 8256}, {5, 7, -24192},
    {5, 8, -288}, {5, 9, 9744}, {5, 10, 552}, {5, 11, -840}, {5, 12, -294},
    {5, 14, 33}, {6, 3, -2880}, {6, 5, 2688}, {6, 8, 312}, {6, 10, -288},
    {7, 0, 35328}, {7, 2, -50496}, {7, 3, 6528}, {7, 4, 16320},
    {7, 5, -19200}, {7, 7, 16800}, {7, 8, 84}, {7, 9, -4200}, {7, 10, -168},
    {7, 12, 75}, {8, 0, -2304}, {8, 2, 5376}, {8, 3, 192}, {8, 4, -4080},
    {8, 5, -384}, {8, 6, 1056}, {8, 7, 204}, {8, 8, -48}, {8, 11, -12},
    {9, 0, -6336}, {9, 2, 5568}, {9, 3, -2304}, {9, 5, 4848}, {9, 7, -2520},
    {9, 8, 18}, {9, 10, -9}, {10, 0, 3072}, {10, 2, -6432}, {10, 3, -288},
    {10, 4, 4080}, {10, 5, 552}, {10, 6, -720}, {10, 7, -294}, {10, 9, 30},
    {11, 0, 192}, {11, 3, 120}, {11, 5, -120}, {11, 8, -3}, {12, 0, -1008},
    {12, 2, 1728}, {12, 3, 108}, {12, 4, -720}, {12, 5, -180}, {12, 7, 72},
    {14, 0, 48}, {14, 2, -48}, {14, 3, -6}, {14, 5, 6}
}};

// coefficient of v (100 terms)
inline constexpr std::array<Term, 100> kTermsV = {{
    {0, 3, -36864}, {0, 5, 64512}, {0, 7, -35328}, {0, 8, 2304},
    {0, 9, 6336}, {0, 10, -3072}, {0, 11, -192}, {0, 12, 1008}, {0, 14, -48},
    {2, 3, 76800}, {2, 5, -116736}, {2, 7, 50496}, {2, 8, -5376},
    {2, 9, -5568}, {2, 10, 6432}, {2, 12, -1728}, {2, 14, 48},
    {3, 0, -36864}, {3, 2, 58368}, {3, 4, -26112}, {3, 5, 4608},
    {3, 6, 2880}, {3, 7, -6528}, {3, 8, -192}, {3, 9, 2304}, {3, 10, 288},
    {3, 11, -120}, {3, 12, -108}, {3, 14, 6}, {4, 3, -50688}, {4, 5, 61248},
    {4, 7, -16320}, {4, 8, 4080}, {4, 10, -4080}, {4, 12, 720},
    {5, 0, 82944}, {5, 2, -113664}, {5, 3, 4608}, {5, 4, 40128},
    {5, 5, -19968}, {5, 6, -2688}, {5, 7, 19200}, {5, 8, 384}, {5, 9, -4848},
    {5, 10, -552}, {5, 11, 120}, {5, 12, 180}, {5, 14, -6}, {6, 3, 10944},
    {6, 5, -8256}, {6, 8, -1056}, {6, 10, 720}, {7, 0, -62976},
    {7, 2, 67776}, {7, 3, -8832}, {7, 4, -14592}, {7, 5, 24192},
    {7, 7, -16800}, {7, 8, -204}, {7, 9, 2520}, {7, 10, 294}, {7, 12, -72},
    {8, 0, 2304}, {8, 2, -4224}, {8, 3, -576}, {8, 4, 2256}, {8, 5, 288},
    {8, 6, -312}, {8, 7, -84}, {8, 8, 48}, {8, 9, -18}, {8, 11, 3},
    {9, 0, 18240}, {9, 2, -11904}, {9, 3, 4992}, {9, 5, -9744}, {9, 7, 4200},
    {9, 10, -30}, {10, 0, -4224}, {10, 2, 7008}, {10, 3, 384},
    {10, 4, -3144}, {10, 5, -552}, {10, 6, 288}, {10, 7, 168}, {10, 9, 9},
    {11, 0, -1536}, {11, 3, -744}, {11, 5, 840}, {11, 8, 12}, {12, 0, 2256},
    {12, 2, -3144}, {12, 3, -228}, {12, 4, 960}, {12, 5, 294}, {12, 7, -75},
    {14, 0, -312}, {14, 2, 288}, {14, 3, 36}, {14, 5, -33}
}};

// coefficient of u*v (99 terms)
inline constexpr std::array<Term, 99> kTermsUV = {{
    {0, 3, 36864}, {0, 4, 24576}, {0, 5, -110592}, {0, 6, -36864},
    {0, 7, 119040}, {0, 8, 15360}, {0, 9, -55296}, {0, 10, -1536},
    {0, 11, 10320}, {0, 13, -528}, {2, 2, -49152}, {2, 3, -104448},
    {2, 4, 36864}, {2, 5, 294912}, {2, 6, 12288}, {2, 7, -289152},
    {2, 8, -7680}, {2, 9, 115968}, {2, 11, -16824}, {2, 13, 504},
    {3, 0, 36864}, {3, 2, -104448}, {3, 3, -9216}, {3, 4, 108288},
    {3, 5, 16896}, {3, 6, -49536}, {3, 7, -13920}, {3, 8, 9744},
    {3, 9, 6192}, {3, 10, -744}, {3, 11, -1170}, {3, 13, 63}, {4, 0, 24576},
    {4, 2, 36864}, {4, 3, 108288}, {4, 4, -55296}, {4, 5, -281856},
    {4, 6, 9216}, {4, 7, 241056}, {4, 9, -76032}, {4, 11, 6624},
    {5, 0, -110592}, {5, 2, 294912}, {5, 3, 16896}, {5, 4, -281856},
    {5, 5, -36672}, {5, 6, 114816}, {5, 7, 32208}, {5, 8, -18432},
    {5, 9, -12696}, {5, 10, 840}, {5, 11, 1875}, {5, 13, -60},
    {6, 0, -36864}, {6, 2, 12288}, {6, 3, -49536}, {6, 4, 9216},
    {6, 5, 114816}, {6, 7, -78480}, {6, 9, 15120}, {7, 0, 119040},
    {7, 2, -289152}, {7, 3, -13920}, {7, 4, 241056}, {7, 5, 32208},
    {7, 6, -78480}, {7, 7, -26028}, {7, 8, 7824}, {7, 9, 8046},
    {7, 11, -720}, {8, 0, 15360}, {8, 2, -7680}, {8, 3, 9744},
    {8, 5, -18432}, {8, 7, 7824}, {8, 8, -24}, {8, 10, 12}, {9, 0, -55296},
    {9, 2, 115968}, {9, 3, 6192}, {9, 4, -76032}, {9, 5, -12696},
    {9, 6, 15120}, {9, 7, 8046}, {9, 9, -1512}, {10, 0, -1536},
    {10, 3, -744}, {10, 5, 840}, {10, 8, 12}, {11, 0, 10320},
    {11, 2, -16824}, {11, 3, -1170}, {11, 4, 6624}, {11, 5, 1875},
    {11, 7, -720}, {13, 0, -528}, {13, 2, 504}, {13, 3, 63}, {13, 5, -60}
}};

}  // namespace kitecc::f2_tables
