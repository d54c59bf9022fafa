#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "lzero/arith.hpp"

namespace lzero {

/// Dense polynomial over the integers, lowest degree first.
/// Invariant: no trailing zero coefficients (the zero polynomial is empty).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPoly monomial(std::size_t degree, BigInt c = 1) {
        std::vector<BigInt> v(degree + 1);
        v[degree] = std::move(c);
        return IntPoly(std::move(v));
    }

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& leading() const { return coeffs_.back(); }
    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPoly(std::move(r));
    }

    /// Quotient and remainder by a monic divisor.
    friend std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& m) {
        if (m.is_zero() || m.leading() != 1) throw InvalidArgument("divisor must be monic");
        std::vector<BigInt> rem = a.coeffs_;
        int dm = m.degree();
        if (a.degree() < dm) return {IntPoly(), a};
        std::vector<BigInt> quot(a.degree() - dm + 1);
        for (int i = a.degree(); i >= dm; --i) {
            BigInt c = rem[i];
            if (c == 0) continue;
            quot[i - dm] = c;
            for (int j = 0; j <= dm; ++j) rem[i - dm + j] -= c * m.coeffs_[j];
        }
        rem.resize(dm);
        return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs_[i];
            if (c == 0) continue;
            BigInt a = abs(c);
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (a != 1 || i == 0) os << a;
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

/// The k-th cyclotomic polynomial, obtained by dividing x^k - 1 by Phi_d for
/// every proper divisor d of k. Memoized; safe to call concurrently.
inline const IntPoly& cyclotomic_poly(std::int64_t k) {
    if (k < 1) throw InvalidArgument("cyclotomic_poly: k must be positive");
    static std::mutex mu;
    static std::map<std::int64_t, std::unique_ptr<IntPoly>> memo;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(k); it != memo.end()) return *it->second;
    }
    IntPoly num = IntPoly::monomial(static_cast<std::size_t>(k)) - IntPoly(std::vector<BigInt>{1});
    for (std::int64_t d : divisors(k)) {
        if (d == k) continue;
        auto [q, r] = divmod_monic(num, cyclotomic_poly(d));
        if (!r.is_zero()) throw TheoremViolation("cyclotomic division left a remainder");
        num = std::move(q);
    }
    std::lock_guard lock(mu);
    auto& slot = memo[k];
    if (!slot) slot = std::make_unique<IntPoly>(std::move(num));
    return *slot;
}

} // namespace lzero
