#include "mandel/angle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mandel {

namespace {
BigInt big_gcd(BigInt a, BigInt b) {
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}
}  // namespace

RationalAngle::RationalAngle(BigInt num, BigInt den) {
    if (den <= 0) throw std::invalid_argument("RationalAngle: denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    BigInt g = big_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

RationalAngle RationalAngle::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return RationalAngle(BigInt(text), 1);
    return RationalAngle(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

RationalAngle RationalAngle::doubled() const { return RationalAngle(2 * num_, den_); }
RationalAngle RationalAngle::halved() const { return RationalAngle(num_, 2 * den_); }
RationalAngle RationalAngle::half_plus() const { return RationalAngle(num_ + den_, 2 * den_); }

double RationalAngle::to_double() const {
    // 64 binary digits of p/q.
    BigInt scaled = (num_ << 64) / den_;
    return static_cast<double>(scaled.convert_to<double>()) / 18446744073709551616.0;
}

std::string RationalAngle::str() const {
    return num_.str() + "/" + den_.str();
}

DoublingCycle doubling_cycle(const RationalAngle& theta) {
    std::map<RationalAngle, int> seen;
    std::vector<RationalAngle> chain;
    RationalAngle t = theta;
    while (!seen.count(t)) {
        seen[t] = static_cast<int>(chain.size());
        chain.push_back(t);
        t = t.doubled();
    }
    DoublingCycle out;
    out.preperiod = seen[t];
    out.period = static_cast<int>(chain.size()) - out.preperiod;
    out.cycle.assign(chain.begin() + out.preperiod, chain.end());
    std::sort(out.cycle.begin(), out.cycle.end());
    return out;
}

std::pair<std::string, std::string> binary_expansion(const RationalAngle& theta) {
    // Digits of p/q in base 2; the state (current numerator) eventually
    // repeats, splitting the digit stream into preperiod + period.
    std::map<BigInt, int> seen;
    std::string digits;
    BigInt p = theta.numerator();
    const BigInt& q = theta.denominator();
    while (!seen.count(p)) {
        seen[p] = static_cast<int>(digits.size());
        p *= 2;
        if (p >= q) {
            digits.push_back('1');
            p -= q;
        } else {
            digits.push_back('0');
        }
    }
    int start = seen[p];
    return {digits.substr(0, start), digits.substr(start)};
}

namespace {
RationalAngle from_binary(const std::string& pre, const std::string& per) {
    // value = (A + B / (2^|per| - 1)) / 2^|pre|  with A, B the block values.
    BigInt a = 0;
    for (char d : pre) a = 2 * a + (d == '1' ? 1 : 0);
    BigInt b = 0;
    for (char d : per) b = 2 * b + (d == '1' ? 1 : 0);
    BigInt perden = (BigInt(1) << per.size()) - 1;
    if (per.empty()) perden = 1, b = 0;
    // p/q = (a*perden + b) / (2^|pre| * perden)
    BigInt num = a * perden + b;
    BigInt den = (BigInt(1) << pre.size()) * perden;
    return RationalAngle(num, den);
}

std::string substitute(const std::string& digits, const std::string& b0, const std::string& b1) {
    std::string out;
    out.reserve(digits.size() * b0.size());
    for (char d : digits) out += (d == '1' ? b1 : b0);
    return out;
}
}  // namespace

RationalAngle tune_angle(const RationalAngle& theta, const std::string& block0,
                         const std::string& block1) {
    if (block0.size() != block1.size() || block0.empty())
        throw std::invalid_argument("tune_angle: blocks must be nonempty and of equal length");
    auto [pre, per] = binary_expansion(theta);
    return from_binary(substitute(pre, block0, block1), substitute(per, block0, block1));
}

}  // namespace mandel
