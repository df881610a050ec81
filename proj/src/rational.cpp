#include "ella/rational.hpp"

#include <ostream>

namespace ella {

std::ostream& operator<<(std::ostream& os, const rational& r) {
    return os << r.str();
}

rational rational::parse(const std::string& s) {
    size_t slash = s.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            long long n = std::stoll(s, &used);
            if (used != s.size()) throw parse_error("rational: trailing characters in '" + s + "'");
            return rational(n);
        }
        long long n = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw parse_error("rational: bad numerator in '" + s + "'");
        std::string dpart = s.substr(slash + 1);
        long long d = std::stoll(dpart, &used);
        if (used != dpart.size()) throw parse_error("rational: bad denominator in '" + s + "'");
        return rational(n, d);
    } catch (const std::invalid_argument&) {
        throw parse_error("rational: cannot parse '" + s + "'");
    } catch (const std::out_of_range&) {
        throw parse_error("rational: out of 64-bit range: '" + s + "'");
    }
}

} // namespace ella
