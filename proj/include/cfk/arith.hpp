#pragma once

#include <gmpxx.h>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfk {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Int& z) { return z.get_str(); }

/** Format as "p" or "p/q". */
inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/** Parse "p" or "p/q" into an exact rational. */
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    Rat q;
    if (slash == std::string::npos) {
        q = Rat(Int(s));
    } else {
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        q = Rat(num, den);
    }
    q.canonicalize();
    return q;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer too large: " + z.get_str());
    return z.get_si();
}

/** Interior barycentric weights with common denominator 997 (prime). */
inline std::vector<Rat> random_interior_weights(int n, std::mt19937_64& rng) {
    if (n == 1) return {rat(1)};
    // composition of 997 into n positive parts
    std::vector<int> cuts;
    std::uniform_int_distribution<int> pick(1, 996);
    while ((int)cuts.size() < n - 1) {
        int c = pick(rng);
        bool dup = false;
        for (int x : cuts) dup |= (x == c);
        if (!dup) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rat> w;
    int prev = 0;
    for (int c : cuts) { w.push_back(rat(c - prev, 997)); prev = c; }
    w.push_back(rat(997 - prev, 997));
    return w;
}

} // namespace cfk
