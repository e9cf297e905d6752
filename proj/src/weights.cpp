#include "wigf/weights.hpp"

#include <cmath>

namespace wigf {

WeightFn WeightFn::one() { return WeightFn(Kind::One, 0.0, "one"); }

WeightFn WeightFn::identity() { return WeightFn(Kind::Identity, 0.0, "x"); }

WeightFn WeightFn::reciprocal() { return WeightFn(Kind::Reciprocal, 0.0, "invx"); }

WeightFn WeightFn::shifted(double b) {
    if (!(b > 0.0)) throw domain_error("shifted weight requires b > 0");
    return WeightFn(Kind::Shifted, b, "shift:b=" + std::to_string(b));
}

WeightFn WeightFn::power(double m) {
    if (!(m > 0.0)) throw domain_error("power weight requires m > 0");
    return WeightFn(Kind::Power, m, "pow:m=" + std::to_string(m));
}

WeightFn WeightFn::sqrted() const {
    switch (kind_) {
        case Kind::One: return one();
        case Kind::Identity: return power(0.5);
        case Kind::Power: return param_ == 1.0 ? identity() : power(param_ / 2.0);
        case Kind::SquareOf: return *base_;
        default:
            return WeightFn(Kind::SqrtOf, 0.0, "sqrt(" + id_ + ")",
                            std::make_shared<WeightFn>(*this));
    }
}

WeightFn WeightFn::squared() const {
    switch (kind_) {
        case Kind::One: return one();
        case Kind::Identity: return power(2.0);
        case Kind::Power: return power(param_ * 2.0);
        case Kind::SqrtOf: return *base_;
        default:
            return WeightFn(Kind::SquareOf, 0.0, "square(" + id_ + ")",
                            std::make_shared<WeightFn>(*this));
    }
}

double WeightFn::operator()(double x) const {
    switch (kind_) {
        case Kind::One: return 1.0;
        case Kind::Identity: return x;
        case Kind::Reciprocal:
            if (x == 0.0) throw domain_error("reciprocal weight undefined at x = 0");
            return 1.0 / x;
        case Kind::Shifted: return x + param_;
        case Kind::Power: return std::pow(x, param_);
        case Kind::SqrtOf: return std::sqrt((*base_)(x));
        case Kind::SquareOf: {
            const double v = (*base_)(x);
            return v * v;
        }
    }
    throw numeric_error("unreachable weight kind");
}

std::string WeightFn::kind_str() const {
    switch (kind_) {
        case Kind::One: return "one";
        case Kind::Identity: return "x";
        case Kind::Reciprocal: return "invx";
        case Kind::Shifted: return "shift";
        case Kind::Power: return "pow";
        case Kind::SqrtOf: return "sqrt-of";
        case Kind::SquareOf: return "square-of";
    }
    return "?";
}

WeightFn WeightFn::parse(const std::string& spec) {
    if (spec == "one") return one();
    if (spec == "x") return identity();
    if (spec == "invx") return reciprocal();
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        const std::string rest = spec.substr(colon + 1);
        const auto eq = rest.find('=');
        if (eq != std::string::npos) {
            const std::string key = rest.substr(0, eq);
            double val = 0.0;
            try {
                val = std::stod(rest.substr(eq + 1));
            } catch (const std::exception&) {
                throw domain_error("bad weight parameter in '" + spec + "'");
            }
            if (head == "pow" && key == "m") return power(val);
            if (head == "shift" && key == "b") return shifted(val);
        }
    }
    throw domain_error("unknown weight spec '" + spec + "'");
}

} // namespace wigf
