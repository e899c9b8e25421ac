/* Shared exact-arithmetic aliases, error taxonomy, and small integer helpers. */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace grasscalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* Precondition violations carry a machine-readable kind string. */
struct EngineError : std::runtime_error {
    std::string kind;
    EngineError(std::string k, const std::string& msg)
        : std::runtime_error(msg), kind(std::move(k)) {}
};

struct NotSymmetric : EngineError {
    explicit NotSymmetric(const std::string& msg) : EngineError("NotSymmetric", msg) {}
};
struct GeneratorOutOfRange : EngineError {
    explicit GeneratorOutOfRange(const std::string& msg) : EngineError("GeneratorOutOfRange", msg) {}
};
struct AmbiguousAssembly : EngineError {
    explicit AmbiguousAssembly(const std::string& msg) : EngineError("AmbiguousAssembly", msg) {}
};
struct GenericityFailure : EngineError {
    explicit GenericityFailure(const std::string& msg) : EngineError("GenericityFailure", msg) {}
};
struct UnexpectedDimension : EngineError {
    explicit UnexpectedDimension(const std::string& msg) : EngineError("UnexpectedDimension", msg) {}
};
struct LiftFailure : EngineError {
    explicit LiftFailure(const std::string& msg) : EngineError("LiftFailure", msg) {}
};
struct PreconditionViolation : EngineError {
    explicit PreconditionViolation(const std::string& msg) : EngineError("PreconditionViolation", msg) {}
};

inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

/* Largest s with s*s <= v, for v >= 0. */
inline long isqrt_floor(long v) {
    long s = static_cast<long>(std::sqrt(static_cast<double>(v)));
    while (s > 0 && s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s;
}

inline std::string int_str(const Int& v) { return v.str(); }

/* Exact Rat -> Int, throwing if the value is not integral. */
inline Int rat_to_int(const Rat& v) {
    if (boost::multiprecision::denominator(v) != 1)
        throw PreconditionViolation("expected integral value, got " + v.str());
    return boost::multiprecision::numerator(v);
}

}  // namespace grasscalc
