#pragma once

#include <memory>
#include <string>
#include <utility>

#include "wigf/errors.hpp"

namespace wigf {

// Non-negative weight (utility) function. Closed under square root and
// squaring so the Cauchy-Schwarz sandwich needs no special cases.
class WeightFn {
public:
    static WeightFn one();
    static WeightFn identity();           // x
    static WeightFn reciprocal();         // 1/x, x > 0
    static WeightFn shifted(double b);    // x + b, b > 0
    static WeightFn power(double m);      // x^m, m > 0

    WeightFn sqrted() const;
    WeightFn squared() const;

    double operator()(double x) const;
    const std::string& id() const { return id_; }

    // Family tag: one | x | invx | shift | pow | sqrt-of | square-of.
    std::string kind_str() const;
    double param() const { return param_; }

    // Grammar: one | x | invx | pow:m=<v> | shift:b=<v>
    static WeightFn parse(const std::string& spec);

private:
    enum class Kind { One, Identity, Reciprocal, Shifted, Power, SqrtOf, SquareOf };

    WeightFn(Kind kind, double param, std::string id,
             std::shared_ptr<const WeightFn> base = nullptr)
        : kind_(kind), param_(param), id_(std::move(id)), base_(std::move(base)) {}

    Kind kind_;
    double param_;
    std::string id_;
    std::shared_ptr<const WeightFn> base_;
};

inline std::pair<WeightFn, WeightFn> derived_weights(const WeightFn& w) {
    return {w.sqrted(), w.squared()};
}

} // namespace wigf
