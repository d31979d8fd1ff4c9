#include "cantor/directed.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace cantor {

namespace {

constexpr mpfr_prec_t kWorkPrec = 96;

// Enclosure [lo, hi] of a real value at working precision. The handful of
// formulas below only ever compose log, mul, div, exp on positive-width
// enclosures, so the endpoint bookkeeping stays simple.
class Interval {
public:
    Interval() {
        mpfr_init2(lo_, kWorkPrec);
        mpfr_init2(hi_, kWorkPrec);
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }
    Interval(const Interval& o) : Interval() {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval& operator=(const Interval& o) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
        return *this;
    }

    static Interval from_rat(const Rat64& r) {
        Interval v;
        mpfr_set_si(v.lo_, r.num, MPFR_RNDD);
        mpfr_div_si(v.lo_, v.lo_, r.den, MPFR_RNDD);
        mpfr_set_si(v.hi_, r.num, MPFR_RNDU);
        mpfr_div_si(v.hi_, v.hi_, r.den, MPFR_RNDU);
        return v;
    }

    static Interval from_double(double x) {
        Interval v;
        mpfr_set_d(v.lo_, x, MPFR_RNDD);
        mpfr_set_d(v.hi_, x, MPFR_RNDU);
        return v;
    }

    static Interval log3_2() {
        Interval ln2, ln3, v;
        mpfr_const_log2(ln2.lo_, MPFR_RNDD);
        mpfr_const_log2(ln2.hi_, MPFR_RNDU);
        mpfr_set_ui(ln3.lo_, 3, MPFR_RNDN);
        mpfr_log(ln3.hi_, ln3.lo_, MPFR_RNDU);
        mpfr_log(ln3.lo_, ln3.lo_, MPFR_RNDD);
        mpfr_div(v.lo_, ln2.lo_, ln3.hi_, MPFR_RNDD);
        mpfr_div(v.hi_, ln2.hi_, ln3.lo_, MPFR_RNDU);
        return v;
    }

    Interval log() const {
        if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Interval::log of non-positive value");
        Interval v;
        mpfr_log(v.lo_, lo_, MPFR_RNDD);
        mpfr_log(v.hi_, hi_, MPFR_RNDU);
        return v;
    }

    Interval exp() const {
        Interval v;
        mpfr_exp(v.lo_, lo_, MPFR_RNDD);
        mpfr_exp(v.hi_, hi_, MPFR_RNDU);
        return v;
    }

    Interval mul(const Interval& o) const {
        Interval v;
        mpfr_t t;
        mpfr_init2(t, kWorkPrec);
        const mpfr_srcptr a[2] = {lo_, hi_};
        const mpfr_srcptr b[2] = {o.lo_, o.hi_};
        bool first = true;
        for (auto x : a)
            for (auto y : b) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, v.lo_)) mpfr_set(v.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, v.hi_)) mpfr_set(v.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return v;
    }

    Interval div(const Interval& o) const {
        if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
            throw std::domain_error("Interval::div by interval containing zero");
        Interval v;
        mpfr_t t;
        mpfr_init2(t, kWorkPrec);
        const mpfr_srcptr a[2] = {lo_, hi_};
        const mpfr_srcptr b[2] = {o.lo_, o.hi_};
        bool first = true;
        for (auto x : a)
            for (auto y : b) {
                mpfr_div(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, v.lo_)) mpfr_set(v.lo_, t, MPFR_RNDD);
                mpfr_div(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, v.hi_)) mpfr_set(v.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return v;
    }

    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double end(Round dir) const { return dir == Round::Down ? lo_double() : hi_double(); }
    double mid_double() const {
        mpfr_t t;
        mpfr_init2(t, kWorkPrec);
        mpfr_add(t, lo_, hi_, MPFR_RNDN);
        mpfr_div_ui(t, t, 2, MPFR_RNDN);
        double r = mpfr_get_d(t, MPFR_RNDN);
        mpfr_clear(t);
        return r;
    }

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

Interval exponent_interval(const Exponent& e) {
    const Interval L = Interval::log3_2();
    const Interval f = Interval::from_rat(e.factor);
    return e.reciprocal_log ? f.div(L) : f.mul(L);
}

Interval pow_interval(const Interval& base, const Exponent& e) {
    return exponent_interval(e).mul(base.log()).exp();
}

}  // namespace

double log3_2(Round dir) { return Interval::log3_2().end(dir); }

double dimension(int d) {
    if (d < 1) throw std::invalid_argument("dimension: d must be >= 1");
    return Interval::from_rat(Rat64{d}).mul(Interval::log3_2()).mid_double();
}

double dimension(int d, Round dir) {
    if (d < 1) throw std::invalid_argument("dimension: d must be >= 1");
    return Interval::from_rat(Rat64{d}).mul(Interval::log3_2()).end(dir);
}

double pow_directed(const Rat64& base, const Exponent& exponent, Round dir) {
    if (base.num <= 0) throw std::domain_error("pow_directed: base must be positive");
    if (base.num == base.den) return 1.0;
    return pow_interval(Interval::from_rat(base), exponent).end(dir);
}

double pow_directed_scaled(double h, const Rat64& t, const Exponent& exponent, Round dir) {
    if (h <= 0 || t.num <= 0) throw std::domain_error("pow_directed_scaled: base must be positive");
    const Interval base = Interval::from_double(h).mul(Interval::from_rat(t));
    return pow_interval(base, exponent).end(dir);
}

double div_directed(double num, const Rat64& den, Round dir) {
    if (den.num == 0) throw std::domain_error("div_directed: zero denominator");
    return Interval::from_double(num).div(Interval::from_rat(den)).end(dir);
}

double div_directed(double num, double den, Round dir) {
    if (den == 0) throw std::domain_error("div_directed: zero denominator");
    return Interval::from_double(num).div(Interval::from_double(den)).end(dir);
}

bool rat_less_double(const Rat64& a, double b) {
    if (!std::isfinite(b)) return b > 0;
    // a.num < b * a.den, exactly: 53-bit mantissa * 63-bit integer fits 128 bits
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_d(t, b, MPFR_RNDN);           // exact
    mpfr_mul_si(t, t, a.den, MPFR_RNDN);   // exact at 128 bits
    const bool r = mpfr_cmp_si(t, a.num) > 0;
    mpfr_clear(t);
    return r;
}

double naive_upper(int d) {
    if (d < 1) throw std::invalid_argument("naive_upper: d must be >= 1");
    return pow_directed(Rat64{d}, Exponent::half_dimension(d), Round::Up);
}

BoundContext BoundContext::make(int d) {
    BoundContext ctx;
    ctx.dim = d;
    ctx.s = dimension(d);
    ctx.min_separation = Rat64{1, 3};
    mpfr_t t;
    mpfr_init2(t, kWorkPrec);
    mpfr_set_si(t, d, MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDU);
    ctx.ambient_diameter = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    ctx.rounding_budget = 0;
    return ctx;
}

}  // namespace cantor
