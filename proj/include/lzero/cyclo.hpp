#pragma once

/**
 * Exact arithmetic in the cyclotomic field Q(zeta_k).
 *
 * Elements are stored in the power basis zeta^0 .. zeta^(phi(k)-1) with
 * rational coordinates, reduced modulo Phi_k, so two elements of the same
 * order are equal exactly when their coordinate vectors are equal.
 * Mixed-order operands are first embedded into Q(zeta_lcm) using
 * zeta_k := zeta_K^(K/k).
 */

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "lzero/arith.hpp"
#include "lzero/intpoly.hpp"

namespace lzero {

/// Per-order data: Phi_k and the reduction of zeta^m, 0 <= m < k, to the power basis.
struct CycloContext {
    std::int64_t k = 1;
    std::size_t phi = 1;
    IntPoly modulus;
    std::vector<std::vector<BigInt>> power_table;
};

inline std::shared_ptr<const CycloContext> cyclo_context(std::int64_t k) {
    if (k < 1) throw InvalidArgument("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const CycloContext>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }
    auto ctx = std::make_shared<CycloContext>();
    ctx->k = k;
    ctx->modulus = cyclotomic_poly(k);
    ctx->phi = static_cast<std::size_t>(ctx->modulus.degree());
    const auto& phi_k = ctx->modulus.coeffs();
    const std::size_t n = ctx->phi;
    ctx->power_table.reserve(static_cast<std::size_t>(k));
    std::vector<BigInt> cur(n);
    cur[0] = 1;
    for (std::int64_t m = 0; m < k; ++m) {
        ctx->power_table.push_back(cur);
        // multiply by x, then fold the x^n term back using Phi_k
        BigInt top = cur[n - 1];
        for (std::size_t i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::size_t i = 0; i < n; ++i) cur[i] -= top * phi_k[i];
    }
    std::lock_guard lock(mu);
    auto [it, inserted] = cache.emplace(k, std::move(ctx));
    return it->second;
}

class CycloElt {
public:
    CycloElt() : CycloElt(1) {}

    /// Zero of Q(zeta_k).
    explicit CycloElt(std::int64_t k) : ctx_(cyclo_context(k)), coords_(ctx_->phi) {}

    CycloElt(std::int64_t k, std::vector<BigRat> coords) : ctx_(cyclo_context(k)), coords_(std::move(coords)) {
        if (coords_.size() != ctx_->phi)
            throw InvalidArgument("coordinate vector length must equal phi(k)");
    }

    static CycloElt rational(std::int64_t k, const BigRat& q) {
        CycloElt z(k);
        z.coords_[0] = q;
        return z;
    }

    static CycloElt one(std::int64_t k) { return rational(k, BigRat(1)); }

    /// zeta_k^m for any integer m.
    static CycloElt zeta_power(std::int64_t k, std::int64_t m) {
        CycloElt z(k);
        const auto& row = z.ctx_->power_table[static_cast<std::size_t>(floor_mod(m, k))];
        for (std::size_t i = 0; i < row.size(); ++i) z.coords_[i] = row[i];
        return z;
    }

    /// sum_m c[m] zeta_k^m for a length-k coefficient vector (integers or rationals).
    template <typename Scalar>
    static CycloElt from_power_sum(std::int64_t k, const std::vector<Scalar>& c) {
        CycloElt z(k);
        if (c.size() != static_cast<std::size_t>(k)) throw InvalidArgument("power sum needs k coefficients");
        const auto& table = z.ctx_->power_table;
        if constexpr (std::is_same_v<Scalar, BigInt>) {
            std::vector<BigInt> acc(z.ctx_->phi);
            for (std::size_t m = 0; m < c.size(); ++m) {
                if (c[m] == 0) continue;
                for (std::size_t i = 0; i < acc.size(); ++i)
                    if (table[m][i] != 0) acc[i] += c[m] * table[m][i];
            }
            for (std::size_t i = 0; i < acc.size(); ++i) z.coords_[i] = BigRat(acc[i]);
        } else {
            for (std::size_t m = 0; m < c.size(); ++m) {
                if (c[m] == 0) continue;
                for (std::size_t i = 0; i < z.coords_.size(); ++i)
                    if (table[m][i] != 0) z.coords_[i] += c[m] * BigRat(table[m][i]);
            }
        }
        return z;
    }

    std::int64_t order() const { return ctx_->k; }
    std::size_t degree() const { return ctx_->phi; }
    const std::vector<BigRat>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }

    /// The rational value; throws unless is_rational().
    BigRat rational_value() const {
        if (!is_rational()) throw InvalidArgument("element is not rational");
        return coords_[0];
    }

    /// Z[zeta_k] is the full ring of integers, so integrality is coordinate-wise.
    bool is_algebraic_integer() const {
        for (const auto& c : coords_)
            if (!is_integer(c)) return false;
        return true;
    }

    /// Image under zeta_k -> zeta_K^(K/k); requires k | K.
    CycloElt embed_into(std::int64_t big_k) const {
        if (big_k < 1 || big_k % order() != 0)
            throw IncompatibleOrders("cannot embed order " + std::to_string(order()) + " into order " +
                                     std::to_string(big_k));
        if (big_k == order()) return *this;
        std::vector<BigRat> c(static_cast<std::size_t>(big_k));
        std::int64_t step = big_k / order();
        for (std::size_t i = 0; i < coords_.size(); ++i) c[i * step] = coords_[i];
        return from_power_sum(big_k, c);
    }

    /// The automorphism zeta_k -> zeta_k^j, gcd(j, k) = 1.
    CycloElt galois_conj(std::int64_t j) const {
        std::int64_t k = order();
        if (gcd64(floor_mod(j, k), k) != 1 && k > 1)
            throw InvalidArgument("galois_conj: exponent must be coprime to the order");
        std::vector<BigRat> c(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i] != 0) c[floor_mod(static_cast<std::int64_t>(i) * j, k)] += coords_[i];
        return from_power_sum(k, c);
    }

    CycloElt operator-() const {
        CycloElt r = *this;
        for (auto& c : r.coords_) c = -c;
        return r;
    }

    friend CycloElt operator+(const CycloElt& a, const CycloElt& b) {
        auto [x, y] = merge(a, b);
        for (std::size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] += y.coords_[i];
        return x;
    }

    friend CycloElt operator-(const CycloElt& a, const CycloElt& b) { return a + (-b); }

    friend CycloElt operator*(const CycloElt& a, const CycloElt& b) {
        auto [x, y] = merge(a, b);
        std::int64_t k = x.order();
        std::vector<BigRat> c(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < x.coords_.size(); ++i) {
            if (x.coords_[i] == 0) continue;
            for (std::size_t j = 0; j < y.coords_.size(); ++j)
                if (y.coords_[j] != 0) c[(i + j) % static_cast<std::size_t>(k)] += x.coords_[i] * y.coords_[j];
        }
        return from_power_sum(k, c);
    }

    friend CycloElt operator*(const BigRat& q, const CycloElt& z) {
        CycloElt r = z;
        for (auto& c : r.coords_) c *= q;
        return r;
    }

    CycloElt& operator+=(const CycloElt& o) { return *this = *this + o; }
    CycloElt& operator*=(const CycloElt& o) { return *this = *this * o; }

    /// Multiplicative inverse, by solving the linear system (mult-by-z) y = 1.
    CycloElt inv() const {
        if (is_zero()) throw DivisionByZero();
        const std::size_t n = degree();
        // column i of the matrix holds z * zeta^i
        std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            CycloElt col = *this * zeta_power(order(), static_cast<std::int64_t>(i));
            for (std::size_t r = 0; r < n; ++r) m[r][i] = col.coords_[r];
        }
        m[0][n] = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && m[piv][col] == 0) ++piv;
            if (piv == n) throw TheoremViolation("multiplication matrix of a nonzero element is singular");
            std::swap(m[piv], m[col]);
            BigRat inv_p = 1 / m[col][col];
            for (std::size_t j = col; j <= n; ++j) m[col][j] *= inv_p;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || m[r][col] == 0) continue;
                BigRat f = m[r][col];
                for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
            }
        }
        CycloElt out(order());
        for (std::size_t r = 0; r < n; ++r) out.coords_[r] = m[r][n];
        return out;
    }

    CycloElt pow(std::int64_t e) const {
        if (e < 0) return inv().pow(-e);
        CycloElt result = one(order()), base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    /// Norm to Q as the product of all Galois conjugates.
    BigRat norm() const {
        CycloElt acc = one(order());
        for (std::int64_t j = 1; j <= order(); ++j)
            if (gcd64(j, order()) == 1) acc = acc * galois_conj(j);
        return acc.rational_value();
    }

    friend bool operator==(const CycloElt& a, const CycloElt& b) {
        if (a.order() == b.order()) return a.coords_ == b.coords_;
        auto [x, y] = merge(a, b);
        return x.coords_ == y.coords_;
    }

    /// Human-readable form, e.g. "3/5 + 1/5*z4".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] == 0) continue;
            const BigRat& c = coords_[i];
            if (first) os << c.get_str();
            else os << (c < 0 ? " - " : " + ") << BigRat(abs(c)).get_str();
            if (i == 1) os << "*z" << order();
            if (i > 1) os << "*z" << order() << "^" << i;
            first = false;
        }
        return os.str();
    }

    /// Both operands lifted to the lcm of their orders.
    static std::pair<CycloElt, CycloElt> merge(const CycloElt& a, const CycloElt& b) {
        if (a.order() == b.order()) return {a, b};
        std::int64_t l = lcm64(a.order(), b.order());
        return {a.embed_into(l), b.embed_into(l)};
    }

private:
    std::shared_ptr<const CycloContext> ctx_;
    std::vector<BigRat> coords_;
};

} // namespace lzero
