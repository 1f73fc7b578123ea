#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <set>
#include <string>
#include <vector>

namespace mandel {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction in [0,1) under angle doubling. Denominators grow without
// bound along tuned towers, hence the bignum backing.
class RationalAngle {
  public:
    RationalAngle() : num_(0), den_(1) {}
    RationalAngle(BigInt num, BigInt den);

    // Parses "p/q" or a bare integer ("0").
    static RationalAngle parse(const std::string& text);

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    RationalAngle doubled() const;   // (2p mod q)/q
    RationalAngle halved() const;    // p/(2q), the preimage in [0, 1/2)
    RationalAngle half_plus() const; // (p+q)/(2q), the other preimage

    double to_double() const;
    std::string str() const;  // "p/q"

    bool operator==(const RationalAngle& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator<(const RationalAngle& o) const { return num_ * o.den_ < o.num_ * den_; }

  private:
    BigInt num_;
    BigInt den_;  // reduced, num_ < den_, den_ > 0
};

struct DoublingCycle {
    int preperiod = 0;
    int period = 0;
    std::vector<RationalAngle> cycle;  // the periodic part, sorted
};

DoublingCycle doubling_cycle(const RationalAngle& theta);

// Binary tuning: substitutes the repeating blocks of the wake angle pair
// (block0 for digit 0, block1 for digit 1) into the binary expansion of
// theta. Blocks are given as bit strings of equal length.
RationalAngle tune_angle(const RationalAngle& theta, const std::string& block0,
                         const std::string& block1);

// Binary expansion of an angle as (preperiodic digits, periodic digits).
std::pair<std::string, std::string> binary_expansion(const RationalAngle& theta);

}  // namespace mandel
