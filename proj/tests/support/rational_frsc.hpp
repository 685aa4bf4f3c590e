// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_TESTS_RATIONAL_FRSC_HPP
#define POWLAB_TESTS_RATIONAL_FRSC_HPP

#include <powlab/feegame/frsc.hpp>

#include <boost/rational.hpp>

/** Exact contract arithmetic: amounts and fractions are both rationals. */
using Q = boost::rational<std::int64_t>;

template <>
struct powlab::feegame::FrscArith<Q> {
    using Fraction = Q;
    static inline const Q kOne{1};
    static Q mul(const Q& a, const Q& f) { return a * f; }
    static Q div(const Q& a, std::int64_t lambda) { return a / lambda; }
    static Q from_int(std::int64_t v) { return Q(v); }
    static double fraction_to_double(const Q& f) { return boost::rational_cast<double>(f); }
};

#endif // POWLAB_TESTS_RATIONAL_FRSC_HPP
