#pragma once

/**
 * A fixed embedding of cyclotomic numbers into a finite-precision model of
 * an extension of Q_p, and valuations there.
 *
 * For k = p^a k' with p not dividing k', the local model is
 *
 *     O = W[pi] / (E(pi)),   W = (Z/p^N)[x] / (g(x)),
 *
 * where g is the Hensel lift of a chosen irreducible factor of Phi_{k'} mod p
 * (unramified, degree f = ord_{k'}(p)) and E(pi) = Phi_{p^a}(1 + pi) is
 * Eisenstein of degree e = phi(p^a). The embedding sends zeta_k to
 * (1 + pi) * x. The chosen factor is the one whose coefficient residues,
 * negated and read constant term first, are lexicographically least; for a
 * linear factor x - r this is the least root r. That choice is the prime
 * above p at which every valuation in this library is measured.
 *
 * Valuations are normalized so v(p) = 1 and v(pi) = 1/e.
 */

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "lzero/arith.hpp"
#include "lzero/cyclo.hpp"
#include "lzero/dirichlet.hpp"
#include "lzero/intpoly.hpp"

namespace lzero {

inline constexpr int kDefaultPrecision = 16;
inline constexpr int kMaxPrecision = 512;

// ---------------------------------------------------------------------------
// Polynomials over F_p (p < 2^31), lowest degree first, no trailing zeros.
// ---------------------------------------------------------------------------
namespace fp {

using Poly = std::vector<std::int64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly reduce(const std::vector<BigInt>& a, std::int64_t p) {
    Poly r(a.size());
    BigInt t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_fdiv_r_ui(t.get_mpz_t(), a[i].get_mpz_t(), static_cast<unsigned long>(p));
        r[i] = t.get_si();
    }
    trim(r);
    return r;
}

inline Poly add(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = ((i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0)) % p;
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = floor_mod((i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0), p);
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul_mod(a[i], b[j], p)) % p;
    trim(r);
    return r;
}

inline Poly scale(const Poly& a, std::int64_t c, std::int64_t p) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_mod(a[i], floor_mod(c, p), p);
    trim(r);
    return r;
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::int64_t p) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero over F_p");
    Poly rem = a;
    if (deg(a) < deg(b)) return {{}, rem};
    Poly quot(a.size() - b.size() + 1, 0);
    std::int64_t inv_lead = inv_mod(b.back(), p);
    for (int i = deg(rem); i >= deg(b); --i) {
        std::int64_t c = mul_mod(rem[i], inv_lead, p);
        if (c == 0) continue;
        quot[i - deg(b)] = c;
        for (int j = 0; j <= deg(b); ++j) rem[i - deg(b) + j] = floor_mod(rem[i - deg(b) + j] - mul_mod(c, b[j], p), p);
    }
    trim(rem);
    trim(quot);
    return {quot, rem};
}

inline Poly mod(const Poly& a, const Poly& b, std::int64_t p) { return divmod(a, b, p).second; }

inline Poly monic(const Poly& a, std::int64_t p) {
    if (a.empty()) return a;
    return scale(a, inv_mod(a.back(), p), p);
}

inline Poly gcd(Poly a, Poly b, std::int64_t p) {
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

/// (s, t) with s a + t b = 1 for coprime a, b.
inline std::pair<Poly, Poly> bezout(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        Poly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (deg(r0) != 0) throw InvalidArgument("bezout: polynomials are not coprime");
    std::int64_t c = inv_mod(r0[0], p);
    return {scale(s0, c, p), scale(t0, c, p)};
}

/// base^e mod m over F_p.
inline Poly powmod(Poly base, const BigInt& e, const Poly& m, std::int64_t p) {
    Poly result{1};
    base = mod(base, m, p);
    for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
        result = mod(mul(result, result, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), bit)) result = mod(mul(result, base, p), m, p);
    }
    return result;
}

/// Cantor-Zassenhaus equal-degree splitting of a squarefree monic polynomial
/// all of whose irreducible factors have degree d (p odd).
inline void equal_degree_split(const Poly& f, int d, std::int64_t p, std::mt19937_64& rng, std::vector<Poly>& out) {
    const int n = deg(f);
    if (n <= d) {
        out.push_back(f);
        return;
    }
    BigInt e = (big_pow(p, static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        Poly a(static_cast<std::size_t>(n));
        for (auto& c : a) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        trim(a);
        if (deg(a) < 1) continue;
        Poly g = gcd(a, f, p);
        if (deg(g) <= 0 || deg(g) == n) {
            Poly b = sub(powmod(a, e, f, p), Poly{1}, p);
            g = gcd(b, f, p);
        }
        if (deg(g) > 0 && deg(g) < n) {
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

/// Selection order: negated coefficient residues, constant term first.
inline Poly selection_key(const Poly& g, std::int64_t p) {
    Poly key;
    for (int i = 0; i < deg(g); ++i) key.push_back(floor_mod(-g[i], p));
    return key;
}

} // namespace fp

/// Irreducible factors of Phi_k mod p (p odd, p not dividing k), sorted by selection key.
inline std::vector<fp::Poly> cyclotomic_factors_mod_p(std::int64_t k, std::int64_t p) {
    if (k % p == 0) throw InvalidArgument("cyclotomic_factors_mod_p: p divides k");
    fp::Poly phi = fp::reduce(cyclotomic_poly(k).coeffs(), p);
    int d = static_cast<int>(multiplicative_order(p % k, k));
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(k * 1000003 + p));
    std::vector<fp::Poly> out;
    fp::equal_degree_split(phi, d, p, rng, out);
    for (auto& g : out) g = fp::monic(g, p);
    std::sort(out.begin(), out.end(),
              [p](const fp::Poly& a, const fp::Poly& b) { return fp::selection_key(a, p) < fp::selection_key(b, p); });
    return out;
}

/// Lifts the factorization target = g h (mod p) to a monic G = g (mod p) with G | target mod p^n.
inline std::vector<BigInt> hensel_lift_factor(const IntPoly& target, const fp::Poly& g, std::int64_t p, int n) {
    fp::Poly tp = fp::reduce(target.coeffs(), p);
    auto [h, rem] = fp::divmod(tp, g, p);
    if (!rem.empty()) throw InvalidArgument("hensel_lift_factor: g does not divide the target mod p");
    auto [s, t] = fp::bezout(g, h, p);
    auto to_big = [](const fp::Poly& a) {
        std::vector<BigInt> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<long>(a[i]);
        return r;
    };
    IntPoly big_g(to_big(g)), big_h(to_big(h));
    BigInt pi = static_cast<unsigned long>(p); // p^i
    for (int i = 1; i < n; ++i) {
        IntPoly diff = target - big_g * big_h;
        std::vector<BigInt> ec = diff.coeffs();
        for (auto& c : ec) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pi.get_mpz_t());
        fp::Poly e = fp::reduce(ec, p);
        fp::Poly r = fp::mod(fp::mul(t, e, p), g, p);
        auto [dh, rem2] = fp::divmod(fp::sub(e, fp::mul(r, h, p), p), g, p);
        if (!rem2.empty()) throw TheoremViolation("Hensel step left a remainder");
        std::vector<BigInt> rg = to_big(r), rh = to_big(dh);
        for (auto& c : rg) c *= pi;
        for (auto& c : rh) c *= pi;
        big_g = big_g + IntPoly(rg);
        big_h = big_h + IntPoly(rh);
        pi *= static_cast<unsigned long>(p);
    }
    std::vector<BigInt> out(static_cast<std::size_t>(fp::deg(g)) + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = big_g.coeff(i);
        mpz_fdiv_r(out[i].get_mpz_t(), out[i].get_mpz_t(), pi.get_mpz_t());
    }
    return out;
}

/// Reproducibility record of a tower: enough to rebuild it and re-verify a verdict.
struct TowerDescriptor {
    std::int64_t p = 0;
    std::int64_t k = 0;
    int precision = 0;
    std::vector<std::int64_t> factor; ///< chosen factor of Phi_{k'} mod p, lowest degree first

    friend auto operator<=>(const TowerDescriptor&, const TowerDescriptor&) = default;
};

/// v in (1/e)Z, or "above precision" when the element vanished at the working precision.
struct Valuation {
    std::optional<BigRat> value;

    static Valuation above_precision() { return {}; }
    bool known() const { return value.has_value(); }
    std::string to_string() const { return value ? to_fraction_string(*value) : "above_precision"; }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

class PadicElt;

class PadicTower : public std::enable_shared_from_this<PadicTower> {
public:
    PadicTower(std::int64_t p, std::int64_t k, int precision) : p_(p), k_(k), n_(precision) {
        if (!is_odd_prime(p)) throw InvalidArgument("tower prime must be an odd prime");
        if (k < 1) throw InvalidArgument("tower order must be positive");
        if (precision < 1) throw InvalidArgument("precision must be at least 1");
        k_tame_ = k;
        while (k_tame_ % p == 0) {
            k_tame_ /= p;
            ++wild_exp_;
        }
        e_ = static_cast<std::size_t>(euler_phi(ipow(p, wild_exp_)));
        pn_ = big_pow(p, static_cast<unsigned long>(precision));
        factor_ = cyclotomic_factors_mod_p(k_tame_, p).front();
        f_ = static_cast<std::size_t>(fp::deg(factor_));
        lifted_ = hensel_lift_factor(cyclotomic_poly(k_tame_), factor_, p, precision);
        // E(pi) = Phi_{p^a}(1 + pi)
        IntPoly shift(std::vector<BigInt>{1, 1}), acc, power(std::vector<BigInt>{1});
        const auto& phi_pa = cyclotomic_poly(ipow(p, wild_exp_)).coeffs();
        for (const auto& c : phi_pa) {
            acc = acc + IntPoly(std::vector<BigInt>{c}) * power;
            power = power * shift;
        }
        eisenstein_ = acc.coeffs();
        build_zeta_powers();
    }

    std::int64_t p() const { return p_; }
    std::int64_t k() const { return k_; }
    int precision() const { return n_; }
    std::int64_t k_tame() const { return k_tame_; }
    int wild_exp() const { return wild_exp_; }
    std::size_t ramification() const { return e_; }
    std::size_t residue_degree() const { return f_; }
    const fp::Poly& factor() const { return factor_; }
    const std::vector<BigInt>& lifted_poly() const { return lifted_; }
    const std::vector<BigInt>& eisenstein_poly() const { return eisenstein_; }
    const BigInt& modulus() const { return pn_; }

    TowerDescriptor descriptor() const { return {p_, k_, n_, factor_}; }

    /// Flat coefficient vector (e*f entries, c[j*f + i] for pi^j x^i) of zeta_k^m.
    const std::vector<BigInt>& zeta_power(std::int64_t m) const {
        return zeta_powers_[static_cast<std::size_t>(floor_mod(m, k_))];
    }

    /// Residue-field image of zeta_k^m, as a polynomial in x mod (p, factor).
    fp::Poly residue_of_zeta_power(std::int64_t m) const {
        const auto& c = zeta_power(m);
        return fp::reduce(std::vector<BigInt>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(f_)), p_);
    }

    /// Ring multiplication of flat coefficient vectors.
    std::vector<BigInt> multiply(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
        const std::size_t e = e_, f = f_;
        // product in pi up to degree 2e-2 with W-coefficients up to degree 2f-2
        std::vector<std::vector<BigInt>> prod(2 * e - 1, std::vector<BigInt>(2 * f - 1));
        for (std::size_t j1 = 0; j1 < e; ++j1)
            for (std::size_t i1 = 0; i1 < f; ++i1) {
                const BigInt& x = a[j1 * f + i1];
                if (x == 0) continue;
                for (std::size_t j2 = 0; j2 < e; ++j2)
                    for (std::size_t i2 = 0; i2 < f; ++i2) {
                        const BigInt& y = b[j2 * f + i2];
                        if (y != 0) mpz_addmul(prod[j1 + j2][i1 + i2].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    }
            }
        std::vector<std::vector<BigInt>> w(2 * e - 1);
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = reduce_w(prod[j]);
        // fold pi^j, j >= e, using pi^e = -sum_{i<e} E_i pi^i
        for (std::size_t j = w.size(); j-- > e;) {
            for (std::size_t i = 0; i < e; ++i) {
                if (eisenstein_[i] == 0) continue;
                for (std::size_t t = 0; t < f; ++t)
                    mpz_submul(w[j - e + i][t].get_mpz_t(), w[j][t].get_mpz_t(), eisenstein_[i].get_mpz_t());
            }
        }
        std::vector<BigInt> out(e * f);
        for (std::size_t j = 0; j < e; ++j)
            for (std::size_t t = 0; t < f; ++t) {
                mpz_fdiv_r(out[j * f + t].get_mpz_t(), w[j][t].get_mpz_t(), pn_.get_mpz_t());
            }
        return out;
    }

private:
    /// Reduce a polynomial in x (any degree) modulo the lifted factor and p^N; returns f coefficients.
    std::vector<BigInt> reduce_w(std::vector<BigInt> c) const {
        const std::size_t f = f_;
        for (std::size_t i = c.size(); i-- > f;) {
            if (c[i] == 0) continue;
            mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), pn_.get_mpz_t());
            for (std::size_t t = 0; t < f; ++t)
                mpz_submul(c[i - f + t].get_mpz_t(), c[i].get_mpz_t(), lifted_[t].get_mpz_t());
            c[i] = 0;
        }
        c.resize(f);
        for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pn_.get_mpz_t());
        return c;
    }

    void build_zeta_powers() {
        const std::size_t e = e_, f = f_;
        // generator (1 + pi) * x, each factor reduced into the model first
        std::vector<BigInt> one_plus_pi(e * f), x(e * f);
        one_plus_pi[0] = 1;
        if (e > 1) {
            one_plus_pi[f] = 1;
        } else {
            // e = 1: pi = -E_0 where E(pi) = pi + E_0
            one_plus_pi[0] = 1 - eisenstein_[0];
        }
        std::vector<BigInt> xpoly{0, 1};
        auto xr = reduce_w(xpoly);
        for (std::size_t t = 0; t < f; ++t) x[t] = xr[t];
        std::vector<BigInt> gen = multiply(one_plus_pi, x);
        std::vector<BigInt> cur(e * f);
        cur[0] = 1;
        zeta_powers_.reserve(static_cast<std::size_t>(k_));
        for (std::int64_t m = 0; m < k_; ++m) {
            zeta_powers_.push_back(cur);
            cur = multiply(cur, gen);
        }
        if (cur != zeta_powers_.front()) throw TheoremViolation("image of zeta_k does not have order dividing k");
    }

    std::int64_t p_, k_;
    int n_;
    std::int64_t k_tame_ = 1;
    int wild_exp_ = 0;
    std::size_t e_ = 1, f_ = 1;
    BigInt pn_;
    fp::Poly factor_;
    std::vector<BigInt> lifted_;
    std::vector<BigInt> eisenstein_;
    std::vector<std::vector<BigInt>> zeta_powers_;
};

/// Cached, immutable tower for (p, k, N).
inline std::shared_ptr<const PadicTower> build_tower(std::int64_t p, std::int64_t k, int precision = kDefaultPrecision) {
    static std::mutex mu;
    static std::map<std::tuple<std::int64_t, std::int64_t, int>, std::shared_ptr<const PadicTower>> cache;
    auto key = std::tuple{p, k, precision};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto tower = std::make_shared<const PadicTower>(p, k, precision);
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(tower)).first->second;
}

/// p^{-shift} * sum_{j,i} c[j][i] pi^j x^i, coefficients reduced mod p^N.
class PadicElt {
public:
    PadicElt(std::shared_ptr<const PadicTower> tower, std::vector<BigInt> coeffs, int shift = 0)
        : tower_(std::move(tower)), coeffs_(std::move(coeffs)), shift_(shift) {
        if (coeffs_.size() != tower_->ramification() * tower_->residue_degree())
            throw InvalidArgument("coefficient count must be e*f");
        for (auto& c : coeffs_) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), tower_->modulus().get_mpz_t());
    }

    const PadicTower& tower() const { return *tower_; }
    const std::shared_ptr<const PadicTower>& tower_ptr() const { return tower_; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    int shift() const { return shift_; }

    friend PadicElt operator+(const PadicElt& a, const PadicElt& b) {
        check_same(a, b);
        int s = std::max(a.shift_, b.shift_);
        std::vector<BigInt> c(a.coeffs_.size());
        BigInt fa = big_pow(a.tower_->p(), static_cast<unsigned long>(s - a.shift_));
        BigInt fb = big_pow(a.tower_->p(), static_cast<unsigned long>(s - b.shift_));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] * fa + b.coeffs_[i] * fb;
        return PadicElt(a.tower_, std::move(c), s);
    }

    PadicElt operator-() const {
        std::vector<BigInt> c(coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
        return PadicElt(tower_, std::move(c), shift_);
    }

    friend PadicElt operator-(const PadicElt& a, const PadicElt& b) { return a + (-b); }

    friend PadicElt operator*(const PadicElt& a, const PadicElt& b) {
        check_same(a, b);
        return PadicElt(a.tower_, a.tower_->multiply(a.coeffs_, b.coeffs_), a.shift_ + b.shift_);
    }

    /// Equality modulo the working precision.
    friend bool operator==(const PadicElt& a, const PadicElt& b) { return (a - b).is_zero_at_precision(); }

    bool is_zero_at_precision() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// min_j (v_p(c_j) + j/e) - shift; exact because the candidates j/e are distinct mod 1.
    Valuation valuation() const {
        const std::size_t e = tower_->ramification(), f = tower_->residue_degree();
        std::optional<BigRat> best;
        for (std::size_t j = 0; j < e; ++j)
            for (std::size_t i = 0; i < f; ++i) {
                const BigInt& c = coeffs_[j * f + i];
                if (c == 0) continue;
                BigRat v = BigRat(valuation_p(c, tower_->p())) + make_rat(static_cast<long>(j), static_cast<long>(e));
                if (!best || v < *best) best = v;
            }
        if (!best) return Valuation::above_precision();
        BigRat v = *best - BigRat(shift_);
        v.canonicalize();
        return {v};
    }

    /// Image in the residue field F_p[x]/(factor); requires valuation >= 0.
    fp::Poly residue() const {
        auto v = valuation();
        if (v.known() && *v.value < 0) throw InvalidArgument("residue of a non-integral element");
        const std::size_t f = tower_->residue_degree();
        std::vector<BigInt> c0(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(f));
        if (shift_ > 0) {
            if (shift_ >= tower_->precision()) throw PrecisionExhausted("residue needs more precision");
            BigInt d = big_pow(tower_->p(), static_cast<unsigned long>(shift_));
            for (auto& c : c0) mpz_fdiv_q(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        }
        return fp::reduce(c0, tower_->p());
    }

private:
    static void check_same(const PadicElt& a, const PadicElt& b) {
        if (a.tower_ != b.tower_ && a.tower_->descriptor() != b.tower_->descriptor())
            throw IncompatibleOrders("p-adic elements live in different towers");
    }

    std::shared_ptr<const PadicTower> tower_;
    std::vector<BigInt> coeffs_;
    int shift_ = 0;
};

/// Image of z in the tower, with zeta_{ord z} := zeta_K^{K / ord z}. A p-power
/// denominator becomes the shift; the rest is inverted mod p^N.
inline PadicElt embed_padic(const CycloElt& z, const std::shared_ptr<const PadicTower>& tower) {
    if (tower->k() % z.order() != 0)
        throw IncompatibleOrders("element of order " + std::to_string(z.order()) + " does not embed in tower of order " +
                                 std::to_string(tower->k()));
    const std::int64_t step = tower->k() / z.order();
    const auto& coords = z.coords();
    BigInt den = 1;
    for (const auto& c : coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    int shift = 0;
    BigInt unit_den = den, pp = static_cast<unsigned long>(tower->p());
    while (mpz_divisible_p(unit_den.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(unit_den.get_mpz_t(), unit_den.get_mpz_t(), pp.get_mpz_t());
        ++shift;
    }
    if (shift >= tower->precision())
        throw PrecisionExhausted("denominator p^" + std::to_string(shift) + " consumes precision " +
                                 std::to_string(tower->precision()));
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), unit_den.get_mpz_t(), tower->modulus().get_mpz_t());
    std::vector<BigInt> acc(tower->ramification() * tower->residue_degree());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        // coords[i] * den = integer
        BigInt scaled = coords[i].get_num() * (den / coords[i].get_den());
        scaled = scaled * inv;
        const auto& zp = tower->zeta_power(static_cast<std::int64_t>(i) * step);
        for (std::size_t t = 0; t < acc.size(); ++t)
            if (zp[t] != 0) mpz_addmul(acc[t].get_mpz_t(), scaled.get_mpz_t(), zp[t].get_mpz_t());
    }
    return PadicElt(tower, std::move(acc), shift);
}

inline Valuation valuation(const PadicElt& z) { return z.valuation(); }

struct PadicValuation {
    Valuation value;
    std::shared_ptr<const PadicTower> tower;
};

/// Valuation of z in the tower for (p, k), starting at precision n0 and
/// doubling up to kMaxPrecision while the answer is undecided.
inline PadicValuation padic_valuation(const CycloElt& z, std::int64_t p, std::int64_t k, int n0 = kDefaultPrecision) {
    if (z.is_zero()) throw InvalidArgument("valuation of zero is infinite");
    for (int n = std::max(1, n0);; n *= 2) {
        n = std::min(n, kMaxPrecision);
        auto tower = build_tower(p, k, n);
        try {
            auto v = embed_padic(z, tower).valuation();
            if (v.known()) return {v, tower};
        } catch (const PrecisionExhausted&) {
            if (n == kMaxPrecision) throw;
        }
        if (n == kMaxPrecision) throw PrecisionExhausted("valuation undecided at the precision cap");
    }
}

/// The (p-1)-th root of unity congruent to a, modulo p^N.
inline BigInt teichmuller(std::int64_t a, std::int64_t p, int precision) {
    if (!is_odd_prime(p)) throw InvalidArgument("teichmuller: p must be an odd prime");
    if (a % p == 0) throw InvalidArgument("teichmuller: a must be coprime to p");
    BigInt pn = big_pow(p, static_cast<unsigned long>(precision));
    BigInt x = static_cast<long>(a);
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pn.get_mpz_t());
    BigInt e = static_cast<unsigned long>(p);
    for (int i = 0; i <= precision; ++i) {
        BigInt next;
        mpz_powm(next.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), pn.get_mpz_t());
        if (next == x) break;
        x = next;
    }
    return x;
}

/// True iff chi(a) = a^t mod the chosen prime for every a coprime to lcm(f, p);
/// tested on the generators of (Z/lcm(f, p))^x.
inline bool char_is_omega_power_mod_p(const DirichletChar& chi, std::int64_t p, std::int64_t t,
                                      int precision = kDefaultPrecision) {
    if (!is_odd_prime(p)) throw InvalidArgument("p must be an odd prime");
    auto tower = build_tower(p, chi.order(), precision);
    std::int64_t big_m = lcm64(chi.modulus(), p);
    for (const auto& g : unit_group(big_m)->generators()) {
        auto m = chi.value_exponent(g.residue);
        fp::Poly lhs = tower->residue_of_zeta_power(*m);
        std::int64_t a = g.residue % p;
        std::int64_t rhs = t >= 0 ? pow_mod(a, t, p) : pow_mod(inv_mod(a, p), -t, p);
        fp::Poly rhs_poly;
        if (rhs != 0) rhs_poly.push_back(rhs);
        if (lhs != rhs_poly) return false;
    }
    return true;
}

} // namespace lzero
