#include "orbitkit/rational.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace orbitkit {

BigRational rational_binomial(unsigned n, unsigned k) {
    if (k > n) throw DomainError("rational_binomial: k > n");
    if (n > 1000) throw DomainError("rational_binomial: n > 1000");
    k = std::min(k, n - k);
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;  // exact at every step: C(n-k+i, i) is an integer
    }
    return BigRational(result);
}

DDouble to_ddouble(const BigInt& x) {
    if (x == 0) return DDouble(0.0);
    double hi = x.convert_to<double>();
    if (!std::isfinite(hi)) throw DomainError("BigInt too large for DDouble");
    BigInt rem = x - BigInt(hi);
    double lo = rem.convert_to<double>();
    return DDouble::from_sum(hi, lo);
}

DDouble to_ddouble(const BigRational& r) {
    if (r.is_zero()) return DDouble(0.0);
    BigInt p = big_abs(r.numerator());
    BigInt q = r.denominator();
    long mp = static_cast<long>(boost::multiprecision::msb(p));
    long mq = static_cast<long>(boost::multiprecision::msb(q));
    long e = mp - mq;  // |value| is within a factor 2 of 2^e
    if (e < -1065) return DDouble(0.0);  // below the double-double range
    if (e > 1020) throw DomainError("BigRational too large for DDouble");
    // shift both parts near 160 bits so the two-double extraction is finite
    long sp = std::max(0L, mp - 160);
    long sq = std::max(0L, mq - 160);
    DDouble v = to_ddouble(BigInt(p >> sp)) / to_ddouble(BigInt(q >> sq));
    v = ldexp(v, static_cast<int>(sp - sq));
    return r.is_negative() ? -v : v;
}

namespace {

// floor(log10(|num/den|)) via digit counts plus one exact comparison.
int exponent10(const BigInt& num, const BigInt& den) {
    std::string ns = big_abs(num).str();
    std::string ds = den.str();
    int e = static_cast<int>(ns.size()) - static_cast<int>(ds.size());
    // |num/den| is in [10^(e-1), 10^(e+1)); pin it down exactly.
    BigInt lhs = big_abs(num);
    BigInt rhs = den;
    if (e > 0) rhs *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(e));
    if (e < 0) lhs *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-e));
    if (lhs < rhs) --e;
    return e;
}

}  // namespace

std::string decimal_string(const BigRational& r, int digits) {
    digits = std::max(digits, 1);
    if (r.is_zero()) {
        std::string s = "0.";
        s.append(static_cast<size_t>(digits - 1), '0');
        return s + "e+00";
    }
    BigInt num = big_abs(r.numerator());
    BigInt den = r.denominator();
    int e = exponent10(num, den);

    // scaled = round(|r| * 10^(digits-1-e)) has exactly `digits` digits
    // (or digits+1 after a carry like 0.999... -> 1.000...).
    int shift = digits - 1 - e;
    if (shift >= 0) {
        num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
    } else {
        den *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
    }
    BigInt scaled = (2 * num + den) / (2 * den);  // round half up
    std::string digs = scaled.str();
    if (static_cast<int>(digs.size()) == digits + 1) {
        ++e;
        digs.pop_back();  // carry produced 10^digits; trailing digit is 0
    }

    std::string out;
    if (r.is_negative()) out += '-';
    out += digs[0];
    if (digits > 1) {
        out += '.';
        out += digs.substr(1);
    }
    out += 'e';
    out += (e < 0 ? '-' : '+');
    std::string es = std::to_string(std::abs(e));
    if (es.size() < 2) es.insert(es.begin(), '0');
    return out + es;
}

}  // namespace orbitkit
