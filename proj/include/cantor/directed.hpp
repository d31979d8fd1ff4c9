#pragma once

// Direction-certified evaluation of the few transcendental forms the bound
// computations need. Every exported double is guaranteed to sit on the
// requested side of the true value; the worst-case relative error per
// evaluation is accounted at 2^-45 into the rounding budget.

#include <cstdint>
#include <optional>
#include <string>

#include "cantor/rat.hpp"

namespace cantor {

enum class Round { Down, Up };

// Exponents in this domain are rational multiples of log3(2), or of its
// reciprocal (for the 1/s_d roots).
struct Exponent {
    Rat64 factor{1};
    bool reciprocal_log = false;

    // s_d / 2 = (d/2) * log3(2)
    static Exponent half_dimension(int d) { return Exponent{Rat64{d, 2}, false}; }
    // s_d = d * log3(2)
    static Exponent dimension_of(int d) { return Exponent{Rat64{d, 1}, false}; }
    // 1 / s_d = (1/d) / log3(2)
    static Exponent inverse_dimension(int d) { return Exponent{Rat64{1, d}, true}; }
};

inline constexpr double kEvalRelBudget = 0x1p-45;

// log3(2) on the requested side of the true value.
double log3_2(Round dir);

// d * log3(2): nearest double (within 1 ulp), or direction-tagged.
double dimension(int d);
double dimension(int d, Round dir);

// base^exponent with the result on the requested side; base must be > 0.
double pow_directed(const Rat64& base, const Exponent& exponent, Round dir);

// (h * t)^exponent for a double factor h > 0 and exact rational t > 0.
double pow_directed_scaled(double h, const Rat64& t, const Exponent& exponent, Round dir);

// num / den on the requested side.
double div_directed(double num, const Rat64& den, Round dir);
double div_directed(double num, double den, Round dir);

// Exact comparison a < b with no rounding (b finite).
bool rat_less_double(const Rat64& a, double b);

// d^(s_d/2), rounded up.
double naive_upper(int d);

struct BoundContext {
    int dim = 1;
    double s = 0;                    // d * log3(2)
    Rat64 min_separation{1, 3};      // gap between adjacent level-1 sets
    double ambient_diameter = 1;     // sqrt(d), rounded up
    double rounding_budget = 0;

    static BoundContext make(int d);
};

struct UpperWitness {
    Rat64 diameter_sq;        // (2r)^2, exact
    std::int64_t covered = 0; // N = 2^d * restricted count
    Rat64 mu_low;             // N / 2^(kd), exact
};

struct BoundResult {
    enum class Direction { Lower, Upper };

    Direction direction = Direction::Upper;
    double value = 0;
    int d = 0;
    int k = 0;
    bool certified = false;
    double rounding_budget = 0;
    std::optional<UpperWitness> witness;
};

}  // namespace cantor
