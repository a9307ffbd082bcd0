#include "forge/rational.hpp"

namespace forge {

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigNat::from_string(text));
    return Rational(BigNat::from_string(text.substr(0, slash)),
                    BigNat::from_string(text.substr(slash + 1)));
}

}  // namespace forge
