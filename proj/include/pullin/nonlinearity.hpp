#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pullin {

// Forcing profile g(u) in L u = lambda f g(u), singular at u = 1.
// power(m):   g(u) = (1-u)^{-m}
// casimir(s): g(u) = (1-u)^{-2} + s (1-u)^{-4}
class Nonlinearity {
public:
  static Nonlinearity power(double m) {
    if (!(m > 0)) throw std::invalid_argument("power: need m > 0");
    return Nonlinearity{true, m, 0.0};
  }
  static Nonlinearity casimir(double sigma) {
    if (sigma < 0) throw std::invalid_argument("casimir: need sigma >= 0");
    return Nonlinearity{false, 2.0, sigma};
  }

  double operator()(double u) const {
    if (u >= 1)
      throw std::domain_error("nonlinearity evaluated at u >= 1");
    const double w = 1.0 - u;
    if (power_) return std::pow(w, -m_);
    const double w2 = w * w;
    return (1.0 + sigma_ / w2) / w2;
  }

  bool is_power() const { return power_; }
  double exponent() const { return m_; }
  double sigma() const { return sigma_; }
  std::string name() const {
    return power_ ? "power:" + format(m_) : "casimir:" + format(sigma_);
  }

private:
  Nonlinearity(bool power, double m, double sigma)
      : power_(power), m_(m), sigma_(sigma) {}
  static std::string format(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  bool power_;
  double m_;
  double sigma_;
};

}  // namespace pullin
