#include "twistcat/rational.h"

#include <boost/multiprecision/cpp_int.hpp>

namespace twistcat {

std::string rat_to_string(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) return std::nullopt;
            return Rat(Int(s));
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        Int d(den);
        if (d == 0) return std::nullopt;
        return Rat(Int(num), d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace twistcat
