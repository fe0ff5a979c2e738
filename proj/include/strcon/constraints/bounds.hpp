#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "constraint.hpp"

namespace strcon {

using BigInt = boost::multiprecision::cpp_int;

struct Bounds {
    long m = 0, t = 0, p = 0, k = 0, c = 0;
    bool floored = false;
    std::vector<BigInt> perVariable; // B_1..B_k or D_1..D_k
    BigInt outputFactor = 0;         // 2ctB_k, context-free case only
};

// Largest big integer the recurrences may produce before giving up.
constexpr unsigned long kDefaultMaxBits = 1ul << 22;

namespace detail {

inline long max_multiplicity(const StringConstraint& c)
{
    long m = 0;
    for (std::size_t x = 0; x < c.variables.size(); ++x)
        m = std::max<long>(m, multiplicity(c, static_cast<int>(x)));
    return m;
}

inline long max_transducer_states(const StringConstraint& c)
{
    long t = 0;
    for (const auto& r : c.relations)
        for (const auto& o : r.rhs)
            t = std::max<long>(t, o.transducer.base.states);
    return t;
}

inline long machine_size(const Membership& m)
{
    if (auto* p = std::get_if<Pda>(&m))
        return p->state_size();
    return std::get<Nfa>(m).states;
}

inline void apply_floors(Bounds& b)
{
    long m0 = b.m, t0 = b.t, p0 = b.p;
    b.m = std::max(b.m, 1L);
    b.t = std::max(b.t, 2L);
    b.p = std::max(b.p, 2L);
    b.floored = m0 != b.m || t0 != b.t || p0 != b.p;
}

inline BigInt pow_big(const BigInt& base, const BigInt& e, unsigned long maxBits)
{
    if (e.is_zero())
        return 1;
    unsigned long bits = base <= 1 ? 1 : static_cast<unsigned long>(msb(base)) + 1;
    if (base > 1 && e > BigInt(maxBits) / bits)
        throw BudgetExceeded("bound exceeds the configured size limit");
    return boost::multiprecision::pow(base, e.convert_to<unsigned>());
}

inline void check_size(const BigInt& v, unsigned long maxBits)
{
    if (v > 1 && static_cast<unsigned long>(msb(v)) + 1 > maxBits)
        throw BudgetExceeded("bound exceeds the configured size limit");
}

} // namespace detail

// B_1 = 2^{p^3}; B_n = 2m t^{2m} p^3 B_{n-1} 2^{p^3 t^{2m}}; outputs bounded by 2ctB_k.
inline Bounds bound_cf_params(long m, long t, long p, long k, long c, unsigned long maxBits = kDefaultMaxBits)
{
    Bounds b{m, t, p, k, c, false, {}, 0};
    detail::apply_floors(b);
    BigInt p3 = BigInt(b.p) * b.p * b.p;
    BigInt t2m = detail::pow_big(BigInt(b.t), BigInt(2 * b.m), maxBits);
    BigInt factor = BigInt(2) * b.m * t2m * p3 * detail::pow_big(BigInt(2), p3 * t2m, maxBits);
    BigInt cur = detail::pow_big(BigInt(2), p3, maxBits);
    for (long n = 1; n <= std::max(b.k, 1L); ++n) {
        if (n > 1)
            cur *= factor;
        detail::check_size(cur, maxBits);
        b.perVariable.push_back(cur);
    }
    b.outputFactor = BigInt(2) * b.c * b.t * b.perVariable.back();
    return b;
}

inline Bounds bound_cf(const StringConstraint& c, unsigned long maxBits = kDefaultMaxBits)
{
    auto dep = dependency_order(c);
    if (dep.cyclic)
        throw CyclicConstraint("bound_cf: constraint is cyclic");
    long p = 0, cc = 0;
    for (const auto& m : c.membership)
        p = std::max(p, detail::machine_size(m));
    for (const auto& r : c.relations)
        for (const auto& o : r.rhs)
            for (const auto& w : o.transducer.outputs)
                cc = std::max<long>(cc, static_cast<long>(w.size()));
    return bound_cf_params(detail::max_multiplicity(c), detail::max_transducer_states(c), p,
                           static_cast<long>(c.variables.size()), cc, maxBits);
}

// D_i = t^{(m+1) i} m^i.
inline Bounds bound_reg_params(long m, long t, long k, unsigned long maxBits = kDefaultMaxBits)
{
    Bounds b{m, t, 2, k, 0, false, {}, 0};
    detail::apply_floors(b);
    b.p = 0;
    for (long i = 1; i <= std::max(b.k, 1L); ++i) {
        BigInt d = detail::pow_big(BigInt(b.t), BigInt((b.m + 1) * i), maxBits) *
                   detail::pow_big(BigInt(b.m), BigInt(i), maxBits);
        detail::check_size(d, maxBits);
        b.perVariable.push_back(d);
    }
    return b;
}

inline Bounds bound_reg(const StringConstraint& c, unsigned long maxBits = kDefaultMaxBits)
{
    if (!c.is_regular())
        throw NotRegular("bound_reg: some membership constraint is a pushdown automaton");
    auto dep = dependency_order(c);
    if (dep.cyclic)
        throw CyclicConstraint("bound_reg: constraint is cyclic");
    long t = detail::max_transducer_states(c);
    for (const auto& m : c.membership)
        t = std::max(t, detail::machine_size(m));
    return bound_reg_params(detail::max_multiplicity(c), t, static_cast<long>(c.variables.size()), maxBits);
}

inline std::string big_to_string(const BigInt& v) { return v.str(); }

} // namespace strcon
