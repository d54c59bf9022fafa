#pragma once

/**
 * Dirichlet characters with a canonical generator basis.
 *
 * (Z/f)^x is decomposed over the prime powers of f. Each odd prime power gets
 * its smallest primitive root, 4 gets -1, 2^a (a >= 3) gets -1 and 5; every
 * generator is lifted by CRT to be 1 in all other components. A character is
 * its exponent vector against that basis: chi(g_i) = exp(2 pi i e_i / ord_i).
 * Characters enumerate in lexicographic order of exponent vectors.
 */

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lzero/arith.hpp"
#include "lzero/cyclo.hpp"

namespace lzero {

struct Generator {
    std::int64_t residue = 1;
    std::int64_t order = 1;

    friend bool operator==(const Generator&, const Generator&) = default;
};

struct UnitGroupBasis {
    std::int64_t modulus = 1;
    std::vector<Generator> generators;
};

namespace detail {

inline std::int64_t smallest_primitive_root(std::int64_t q, int a) {
    std::int64_t m = ipow(q, a);
    std::int64_t target = euler_phi(m);
    for (std::int64_t g = 2; g < m; ++g)
        if (g % q != 0 && multiplicative_order(g, m) == target) return g;
    return 1; // m == 2
}

} // namespace detail

inline UnitGroupBasis unit_group_basis(std::int64_t f) {
    if (f < 1) throw InvalidArgument("modulus must be positive");
    UnitGroupBasis basis{f, {}};
    for (auto [q, a] : factorize(f)) {
        std::int64_t qa = ipow(q, a);
        std::int64_t rest = f / qa;
        auto lift = [&](std::int64_t r) { return rest == 1 ? floor_mod(r, qa) : crt_pair(r, qa, 1, rest); };
        if (q == 2) {
            if (a == 2) basis.generators.push_back({lift(-1), 2});
            if (a >= 3) {
                basis.generators.push_back({lift(-1), 2});
                basis.generators.push_back({lift(5), ipow(2, a - 2)});
            }
        } else {
            basis.generators.push_back({lift(detail::smallest_primitive_root(q, a)), euler_phi(qa)});
        }
    }
    return basis;
}

/// Unit group with a discrete-log table against the canonical basis.
class UnitGroup {
public:
    explicit UnitGroup(std::int64_t f) : basis_(unit_group_basis(f)) {
        const std::size_t n = basis_.generators.size();
        logs_.assign(static_cast<std::size_t>(f) * n, -1);
        unit_.assign(static_cast<std::size_t>(f), false);
        assign_owners();
        // walk every exponent vector in mixed radix
        std::vector<std::int64_t> e(n, 0);
        std::int64_t total = 1;
        for (const auto& g : basis_.generators) total *= g.order;
        for (std::int64_t idx = 0; idx < total; ++idx) {
            std::int64_t r = 1 % f;
            for (std::size_t i = 0; i < n; ++i) r = mul_mod(r, pow_mod(basis_.generators[i].residue, e[i], f), f);
            unit_[static_cast<std::size_t>(r)] = true;
            for (std::size_t i = 0; i < n; ++i) logs_[static_cast<std::size_t>(r) * n + i] = e[i];
            for (std::size_t i = n; i-- > 0;) {
                if (++e[i] < basis_.generators[i].order) break;
                e[i] = 0;
            }
        }
    }

    std::int64_t modulus() const { return basis_.modulus; }
    const UnitGroupBasis& basis() const { return basis_; }
    const std::vector<Generator>& generators() const { return basis_.generators; }
    std::size_t rank() const { return basis_.generators.size(); }
    std::int64_t size() const {
        std::int64_t t = 1;
        for (const auto& g : basis_.generators) t *= g.order;
        return t;
    }

    bool is_unit(std::int64_t a) const { return unit_[static_cast<std::size_t>(floor_mod(a, modulus()))]; }

    /// Exponent of generator i in the discrete log of a unit a.
    std::int64_t log(std::int64_t a, std::size_t i) const {
        return logs_[static_cast<std::size_t>(floor_mod(a, modulus())) * rank() + i];
    }

    /// Prime power component (q, q^a) that generator i belongs to.
    std::pair<std::int64_t, std::int64_t> owner(std::size_t i) const { return owner_[i]; }

private:
    void assign_owners() {
        std::int64_t f = basis_.modulus;
        for (auto [q, a] : factorize(f)) {
            std::int64_t qa = ipow(q, a);
            int count = q == 2 ? (a == 1 ? 0 : a == 2 ? 1 : 2) : 1;
            for (int c = 0; c < count; ++c) owner_.emplace_back(q, qa);
        }
    }

    UnitGroupBasis basis_;
    std::vector<std::int64_t> logs_;
    std::vector<bool> unit_;
    std::vector<std::pair<std::int64_t, std::int64_t>> owner_;
};

inline std::shared_ptr<const UnitGroup> unit_group(std::int64_t f) {
    if (f < 1) throw InvalidArgument("modulus must be positive");
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const UnitGroup>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(f); it != cache.end()) return it->second;
    }
    auto g = std::make_shared<const UnitGroup>(f);
    std::lock_guard lock(mu);
    return cache.emplace(f, std::move(g)).first->second;
}

/// Serializable identity of a character: modulus and exponent vector.
struct CharKey {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> exponents;

    friend auto operator<=>(const CharKey&, const CharKey&) = default;
    friend bool operator==(const CharKey&, const CharKey&) = default;

    std::string to_string() const {
        std::ostringstream os;
        os << modulus << ":[";
        for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
        os << "]";
        return os.str();
    }
};

class DirichletChar {
public:
    DirichletChar() : DirichletChar(unit_group(1), {}) {}

    DirichletChar(std::shared_ptr<const UnitGroup> group, std::vector<std::int64_t> exponents)
        : group_(std::move(group)), exps_(std::move(exponents)) {
        if (exps_.size() != group_->rank())
            throw InvalidArgument("exponent vector length must match the number of generators of (Z/" +
                                  std::to_string(group_->modulus()) + ")^x");
        order_ = 1;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            std::int64_t o = group_->generators()[i].order;
            if (exps_[i] < 0 || exps_[i] >= o) throw InvalidArgument("character exponent out of range");
            order_ = lcm64(order_, o / gcd64(exps_[i], o));
        }
        weights_.resize(exps_.size());
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            std::int64_t o = group_->generators()[i].order;
            std::int64_t g = gcd64(exps_[i], o);
            weights_[i] = floor_mod((exps_[i] / g) * (order_ / (o / g)), order_);
        }
    }

    DirichletChar(std::int64_t modulus, std::vector<std::int64_t> exponents)
        : DirichletChar(unit_group(modulus), std::move(exponents)) {}

    static DirichletChar trivial(std::int64_t modulus) {
        auto g = unit_group(modulus);
        return DirichletChar(g, std::vector<std::int64_t>(g->rank(), 0));
    }

    std::int64_t modulus() const { return group_->modulus(); }
    const std::vector<std::int64_t>& exponents() const { return exps_; }
    const UnitGroup& group() const { return *group_; }
    const std::shared_ptr<const UnitGroup>& group_ptr() const { return group_; }
    /// Exact order of the character; its values lie in Q(zeta_order).
    std::int64_t order() const { return order_; }
    CharKey key() const { return {modulus(), exps_}; }

    /// m with chi(a) = zeta_order^m, or nullopt when gcd(a, f) > 1.
    std::optional<std::int64_t> value_exponent(std::int64_t a) const {
        if (!group_->is_unit(a)) return std::nullopt;
        std::int64_t m = 0;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            m = floor_mod(m + weights_[i] * group_->log(a, i), order_);
        return m;
    }

    bool is_trivial() const { return order_ == 1; }

    /// chi(-1) as +1 or -1.
    int parity() const {
        if (modulus() <= 2) return 1;
        return *value_exponent(-1) == 0 ? 1 : -1;
    }
    bool is_odd() const { return parity() == -1; }
    bool is_even() const { return parity() == 1; }

    /// chi^s; for s coprime to the order this is a Galois conjugate.
    DirichletChar pow(std::int64_t s) const {
        std::vector<std::int64_t> e(exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = floor_mod(exps_[i] * floor_mod(s, group_->generators()[i].order), group_->generators()[i].order);
        return DirichletChar(group_, std::move(e));
    }

    friend bool operator==(const DirichletChar& a, const DirichletChar& b) { return a.key() == b.key(); }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<std::int64_t> exps_;
    std::int64_t order_ = 1;
    std::vector<std::int64_t> weights_;
};

/// chi(a) as an element of Q(zeta_k), k = order of chi; 0 when gcd(a, f) > 1.
inline CycloElt char_eval(const DirichletChar& chi, std::int64_t a) {
    auto m = chi.value_exponent(a);
    if (!m) return CycloElt(chi.order());
    return CycloElt::zeta_power(chi.order(), *m);
}

/// Builds the character of (Z/f)^x whose value at each generator g_i is
/// exp(2 pi i num/den) for value(g_i) = (num, den).
template <typename ValueFn>
DirichletChar character_from_values(std::shared_ptr<const UnitGroup> group, ValueFn&& value) {
    std::vector<std::int64_t> e(group->rank());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto& g = group->generators()[i];
        auto [num, den] = value(g.residue);
        if ((num * g.order) % den != 0) throw InvalidArgument("value is not a root of unity of the generator order");
        e[i] = floor_mod(num * g.order / den, g.order);
    }
    return DirichletChar(std::move(group), std::move(e));
}

/// The character mod a multiple F of the modulus induced by chi.
inline DirichletChar induce(const DirichletChar& chi, std::int64_t big_f) {
    if (big_f < 1 || big_f % chi.modulus() != 0) throw InvalidArgument("induce: target must be a multiple of the modulus");
    return character_from_values(unit_group(big_f), [&](std::int64_t r) {
        return std::pair{*chi.value_exponent(r % chi.modulus()), chi.order()};
    });
}

/// Product of two characters of arbitrary moduli, as a character mod lcm.
inline DirichletChar char_product(const DirichletChar& a, const DirichletChar& b) {
    std::int64_t l = lcm64(a.modulus(), b.modulus());
    DirichletChar x = induce(a, l), y = induce(b, l);
    std::vector<std::int64_t> e(x.exponents().size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = (x.exponents()[i] + y.exponents()[i]) % x.group().generators()[i].order;
    return DirichletChar(x.group_ptr(), std::move(e));
}

namespace detail {

/// True when chi(u) = 1 for every unit u = 1 mod c_part (inside the q-component) and u = 1 elsewhere.
inline bool trivial_on_component_level(const DirichletChar& chi, std::int64_t qa, std::int64_t level) {
    std::int64_t f = chi.modulus();
    std::int64_t rest = f / qa;
    for (std::int64_t x = 0; x < qa / level; ++x) {
        std::int64_t local = floor_mod(1 + x * level, qa);
        std::int64_t u = rest == 1 ? local : crt_pair(local, qa, 1, rest);
        auto m = chi.value_exponent(u);
        if (m && *m != 0) return false;
    }
    return true;
}

} // namespace detail

/// Least c | f such that chi factors through (Z/c)^x.
inline std::int64_t conductor(const DirichletChar& chi) {
    std::int64_t c = 1;
    for (auto [q, a] : factorize(chi.modulus())) {
        std::int64_t qa = ipow(q, a);
        std::int64_t level = 1;
        while (!detail::trivial_on_component_level(chi, qa, level)) level *= q;
        c *= level;
    }
    return c;
}

inline bool is_primitive(const DirichletChar& chi) { return conductor(chi) == chi.modulus(); }

/// (conductor, the primitive character at the conductor that induces chi).
inline std::pair<std::int64_t, DirichletChar> conductor_and_primitivize(const DirichletChar& chi) {
    std::int64_t c = conductor(chi);
    std::int64_t f = chi.modulus();
    DirichletChar prim = character_from_values(unit_group(c), [&](std::int64_t h) {
        std::int64_t u = h;
        while (gcd64(u, f) != 1) u += c;
        return std::pair{*chi.value_exponent(u), chi.order()};
    });
    return {c, prim};
}

enum class Parity { all, odd, even };

/// Characters mod f in lexicographic order of exponent vectors.
inline std::vector<DirichletChar> enumerate_characters(std::int64_t f, bool primitive_only = false,
                                                       Parity parity = Parity::all) {
    auto group = unit_group(f);
    std::vector<DirichletChar> out;
    const std::size_t n = group->rank();
    std::vector<std::int64_t> e(n, 0);
    std::int64_t total = group->size();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        DirichletChar chi(group, e);
        bool keep = true;
        if (parity == Parity::odd) keep = chi.is_odd();
        if (parity == Parity::even) keep = chi.is_even();
        if (keep && primitive_only) keep = is_primitive(chi);
        if (keep) out.push_back(std::move(chi));
        for (std::size_t i = n; i-- > 0;) {
            if (++e[i] < group->generators()[i].order) break;
            e[i] = 0;
        }
    }
    return out;
}

struct TameWild {
    DirichletChar tame; ///< modulus p, order dividing p - 1
    DirichletChar wild; ///< modulus p^n, p-power order
};

/// Splits a character mod p^n along (Z/p^n)^x = mu_{p-1} x (1 + pZ).
inline TameWild tame_wild_decomposition(const DirichletChar& chi, std::int64_t p) {
    if (!is_odd_prime(p)) throw InvalidArgument("tame_wild_decomposition: p must be an odd prime");
    auto [q, n] = prime_power(chi.modulus());
    if (q != p) throw NotPrimePower("modulus " + std::to_string(chi.modulus()) + " is not a power of " + std::to_string(p));
    std::int64_t tame_ord = p - 1;
    std::int64_t wild_ord = ipow(p, n - 1);
    std::int64_t phi = tame_ord * wild_ord;
    std::int64_t e = chi.exponents()[0];
    std::int64_t u = mul_mod(e % tame_ord, inv_mod(wild_ord % tame_ord, tame_ord), tame_ord);
    std::int64_t v = wild_ord == 1 ? 0 : mul_mod(e % wild_ord, inv_mod(tame_ord % wild_ord, wild_ord), wild_ord);
    DirichletChar tame_full(chi.group_ptr(), {floor_mod(u * wild_ord, phi)});
    DirichletChar wild(chi.group_ptr(), {floor_mod(v * tame_ord, phi)});
    auto [c, tame_prim] = conductor_and_primitivize(tame_full);
    return {induce(tame_prim, p), wild};
}

} // namespace lzero
