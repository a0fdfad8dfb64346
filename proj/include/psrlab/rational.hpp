#pragma once

#include <sstream>
#include <string>

#include <boost/rational.hpp>

namespace psrlab {

using rational = boost::rational<long long>;

/// "p/q" in lowest terms, always with a denominator.
inline std::string to_string(const rational& r)
{
    std::ostringstream os;
    os << r.numerator() << '/' << r.denominator();
    return os.str();
}

} // namespace psrlab
