#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nsverify/fields.hpp"
#include "nsverify/text.hpp"

namespace nsv {

TimeProfile TimeProfile::zero() { return TimeProfile(Zero{}); }

TimeProfile TimeProfile::constant(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("constant profile value must be finite");
    return TimeProfile(Constant{value});
}

TimeProfile TimeProfile::exponential(double amplitude, double lambda) {
    if (!std::isfinite(amplitude) || !std::isfinite(lambda))
        throw std::invalid_argument("exponential profile parameters must be finite");
    if (lambda < 0.0) throw std::invalid_argument("exponential profile requires lambda >= 0");
    return TimeProfile(Exponential{amplitude, lambda});
}

TimeProfile TimeProfile::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("tabulated profile needs at least two (time, value) knots");
    if (times.front() != 0.0) throw std::invalid_argument("tabulated profile knots must start at t = 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("tabulated knots must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("tabulated profile values must be finite");
    return TimeProfile(Tabulated{std::move(times), std::move(values)});
}

namespace {

double interpolate(const TimeProfile::Tabulated& tab, double t) {
    if (t < 0.0 || t > tab.times.back())
        throw std::out_of_range("tabulated profile does not cover t = " + format_shortest(t));
    auto it = std::upper_bound(tab.times.begin(), tab.times.end(), t);
    if (it == tab.times.end()) return tab.values.back();
    const auto i = static_cast<std::size_t>(it - tab.times.begin());
    const double t0 = tab.times[i - 1], t1 = tab.times[i];
    const double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * tab.values[i - 1] + w * tab.values[i];
}

// integral_0^t exp(d tau) dtau without cancellation for small d t
double exp_integral(double d, double t) { return d == 0.0 ? t : std::expm1(d * t) / d; }

}  // namespace

double TimeProfile::operator()(double t) const {
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Zero>) return 0.0;
            else if constexpr (std::is_same_v<K, Constant>) return k.value;
            else if constexpr (std::is_same_v<K, Exponential>) return k.amplitude * std::exp(-k.lambda * t);
            else return interpolate(k, t);
        },
        kind_);
}

double TimeProfile::weighted_integral(double rate, double t) const {
    if (t < 0.0) throw std::invalid_argument("integration horizon must be non-negative");
    return std::visit(
        [rate, t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Zero>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, Constant>) {
                return k.value * exp_integral(rate, t);
            } else if constexpr (std::is_same_v<K, Exponential>) {
                return k.amplitude * exp_integral(rate - k.lambda, t);
            } else {
                if (t > k.times.back())
                    throw std::out_of_range("tabulated profile does not cover [0, " + format_shortest(t) + "]");
                using boost::math::quadrature::gauss_kronrod;
                double total = 0.0;
                // integrate knot interval by knot interval so the kinks sit on panel edges
                for (std::size_t i = 0; i + 1 < k.times.size() && k.times[i] < t; ++i) {
                    const double lo = k.times[i];
                    const double hi = std::min(k.times[i + 1], t);
                    const double g0 = k.values[i], g1 = k.values[i + 1];
                    const double t0 = k.times[i], t1 = k.times[i + 1];
                    auto integrand = [&](double tau) {
                        const double w = (tau - t0) / (t1 - t0);
                        return ((1.0 - w) * g0 + w * g1) * std::exp(rate * tau);
                    };
                    double error = 0.0;
                    const double part = gauss_kronrod<double, 15>::integrate(integrand, lo, hi, 20, 1e-14, &error);
                    if (error > 1e-12)
                        throw std::runtime_error("tabulated profile quadrature did not reach 1e-12");
                    total += part;
                }
                return total;
            }
        },
        kind_);
}

std::string TimeProfile::describe() const {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Zero>) {
                return "zero";
            } else if constexpr (std::is_same_v<K, Constant>) {
                return "const:" + format_shortest(k.value);
            } else if constexpr (std::is_same_v<K, Exponential>) {
                return "exp:" + format_shortest(k.amplitude) + "," + format_shortest(k.lambda);
            } else {
                std::string out = "table:";
                for (std::size_t i = 0; i < k.times.size(); ++i) {
                    if (i) out += ";";
                    out += format_shortest(k.times[i]) + "=" + format_shortest(k.values[i]);
                }
                return out;
            }
        },
        kind_);
}

TimeProfile TimeProfile::parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (kind == "zero" || kind == "none") return zero();
    if (kind == "const" || kind == "constant") return constant(parse_double(args));
    if (kind == "exp" || kind == "exponential") {
        const auto parts = parse_double_list(args);
        if (parts.size() != 2) throw std::invalid_argument("exp forcing takes f_I,lambda");
        return exponential(parts[0], parts[1]);
    }
    if (kind == "table" || kind == "tabulated") {
        std::vector<double> times, values;
        for (const auto& knot : split(args, ';')) {
            const auto eq = knot.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("table knots are written t=value");
            times.push_back(parse_double(std::string_view(knot).substr(0, eq)));
            values.push_back(parse_double(std::string_view(knot).substr(eq + 1)));
        }
        return tabulated(std::move(times), std::move(values));
    }
    throw std::invalid_argument("unknown time profile '" + std::string(text) + "'");
}

double omega(const TimeProfile& g, double decay_rate, double t) {
    if (!(decay_rate > 0.0)) throw std::invalid_argument("omega: decay rate must be positive");
    return 1.0 + g.weighted_integral(decay_rate, t);
}

}  // namespace nsv
