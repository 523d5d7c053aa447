#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adez {

using Rat = boost::rational<long long>;

inline double to_double(const Rat& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

/// Reduce q into the half-open interval [0, 2). Used for phases of e(x) = exp(i*pi*x).
inline Rat mod2(Rat q) {
    long long two_num = 2 * q.denominator();
    long long n = q.numerator() % two_num;
    if (n < 0) n += two_num;
    return Rat(n, q.denominator());
}

/// "p/q" for non-integers, "p" otherwise. Exact, locale-free.
inline std::string rat_str(const Rat& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

/// Exact Gauss-Jordan inverse of a square rational matrix.
RatMat rat_inverse(const RatMat& m);

/// Exact determinant by fraction-free elimination.
Rat rat_det(RatMat m);

}  // namespace adez
