#pragma once

/**
 * Bernoulli numbers, generalized Bernoulli numbers B_{1,chi}, L(0, chi),
 * the minus class number of Q(zeta_p), and irregular pairs.
 */

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzero/arith.hpp"
#include "lzero/cyclo.hpp"
#include "lzero/dirichlet.hpp"

namespace lzero {

/// B_n from sum_{j<=n} C(n+1, j) B_j = 0, B_0 = 1 (so B_1 = -1/2). Memoized.
inline BigRat bernoulli_number(unsigned n) {
    static std::mutex mu;
    static std::vector<BigRat> memo{BigRat(1)};
    std::lock_guard lock(mu);
    while (memo.size() <= n) {
        const unsigned m = static_cast<unsigned>(memo.size());
        BigRat acc = 0;
        BigInt binom = 1; // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            acc += BigRat(binom) * memo[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        BigRat b = -acc / BigRat(m + 1);
        b.canonicalize();
        memo.push_back(b);
    }
    return memo[n];
}

/// prod of primes q with (q - 1) | n: the denominator of B_n for even n >= 2.
inline BigInt von_staudt_clausen_denominator(unsigned n) {
    BigInt d = 1;
    for (std::int64_t q : primes_up_to(static_cast<std::int64_t>(n) + 1))
        if (n % (q - 1) == 0) d *= static_cast<unsigned long>(q);
    return d;
}

struct IrregularPair {
    std::int64_t p = 0;
    unsigned k = 0;
    friend auto operator<=>(const IrregularPair&, const IrregularPair&) = default;
};

/// (p, k) with p | numerator(B_k), k even, 2 <= k <= p - 3, over primes p <= p_max.
/// Every Bernoulli denominator used is checked against von Staudt-Clausen.
inline std::vector<IrregularPair> irregular_pairs(std::int64_t p_max) {
    if (p_max < 3) throw InvalidArgument("irregular_pairs: p_max must be at least 3");
    std::vector<IrregularPair> out;
    for (unsigned k = 2; static_cast<std::int64_t>(k) + 3 <= p_max; k += 2) {
        BigRat b = bernoulli_number(k);
        if (b.get_den() != von_staudt_clausen_denominator(k))
            throw TheoremViolation("von Staudt-Clausen denominator mismatch at B_" + std::to_string(k));
    }
    for (std::int64_t p : primes_up_to(p_max)) {
        if (p < 5) continue;
        for (unsigned k = 2; static_cast<std::int64_t>(k) <= p - 3; k += 2) {
            BigInt num = bernoulli_number(k).get_num();
            if (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) out.push_back({p, k});
        }
    }
    return out;
}

/// Disk-backed memo of B_{1,chi}, one JSON object per line:
///   {"f":5,"chi":[1],"k":4,"b1":["-3/5","-1/5","0/1",...]}
/// Entries are idempotent, so concurrent writers can only duplicate lines.
class BernoulliCache {
public:
    BernoulliCache() = default;

    /// Loads (and later appends to) <dir>/b1chi.jsonl; the directory is created if missing.
    explicit BernoulliCache(const std::filesystem::path& dir) : path_(dir / "b1chi.jsonl") {
        std::filesystem::create_directories(dir);
        std::ifstream in(*path_);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                auto [key, value] = parse_line(line);
                entries_.insert_or_assign(std::move(key), std::move(value));
            } catch (const std::exception&) {
                // a torn trailing line from an interrupted run; recomputed on demand
            }
        }
    }

    std::optional<CycloElt> find(const CharKey& key) const {
        std::lock_guard lock(mu_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        return std::nullopt;
    }

    void store(const CharKey& key, const CycloElt& b1) {
        std::lock_guard lock(mu_);
        if (!entries_.emplace(key, b1).second) return;
        if (path_) {
            std::ofstream out(*path_, std::ios::app);
            out << format_line(key, b1) << '\n';
        }
    }

    std::size_t size() const {
        std::lock_guard lock(mu_);
        return entries_.size();
    }

    static std::string format_line(const CharKey& key, const CycloElt& b1) {
        nlohmann::ordered_json j;
        j["f"] = key.modulus;
        j["chi"] = key.exponents;
        j["k"] = b1.order();
        auto& coords = j["b1"] = nlohmann::ordered_json::array();
        for (const auto& c : b1.coords()) coords.push_back(to_fraction_string(c));
        return j.dump();
    }

    static std::pair<CharKey, CycloElt> parse_line(const std::string& line) {
        auto j = nlohmann::json::parse(line);
        CharKey key{j.at("f").get<std::int64_t>(), j.at("chi").get<std::vector<std::int64_t>>()};
        std::vector<BigRat> coords;
        for (const auto& s : j.at("b1")) coords.push_back(parse_fraction(s.get<std::string>()));
        return {std::move(key), CycloElt(j.at("k").get<std::int64_t>(), std::move(coords))};
    }

private:
    std::optional<std::filesystem::path> path_;
    mutable std::mutex mu_;
    std::map<CharKey, CycloElt> entries_;
};

/// B_{1,chi} = (1/f) sum_{a=1}^{f} a chi(a), exactly, in Q(zeta_order).
inline CycloElt generalized_bernoulli_b1(const DirichletChar& chi) {
    const std::int64_t f = chi.modulus(), k = chi.order();
    std::vector<BigInt> weights(static_cast<std::size_t>(k));
    for (std::int64_t a = 1; a <= f; ++a)
        if (auto m = chi.value_exponent(a)) weights[static_cast<std::size_t>(*m)] += static_cast<long>(a);
    return make_rat(1, f) * CycloElt::from_power_sum(k, weights);
}

struct LValueRecord {
    DirichletChar character;
    CycloElt b1chi;
    CycloElt l0; ///< L(0, chi) = -B_{1,chi}
};

/// L(0, chi) for a nontrivial primitive character. Odd characters are checked
/// to give a nonzero value and even ones to give exactly zero.
inline LValueRecord l_value_at_zero(const DirichletChar& chi, BernoulliCache* cache = nullptr) {
    if (chi.is_trivial()) throw InvalidArgument("l_value_at_zero: character must be nontrivial");
    if (!is_primitive(chi))
        throw ImprimitiveInput("character " + chi.key().to_string() + " is not primitive (conductor " +
                               std::to_string(conductor(chi)) + ")");
    std::optional<CycloElt> b1;
    if (cache) b1 = cache->find(chi.key());
    if (!b1) {
        b1 = generalized_bernoulli_b1(chi);
        if (cache) cache->store(chi.key(), *b1);
    }
    if (chi.is_odd() && b1->is_zero())
        throw TheoremViolation("B_{1,chi} vanished for odd character " + chi.key().to_string());
    if (chi.is_even() && !b1->is_zero())
        throw TheoremViolation("B_{1,chi} nonzero for even character " + chi.key().to_string());
    return {chi, *b1, -*b1};
}

/// h^- of Q(zeta_p) from prod_{chi odd} L(0, chi) = (1/p) h^- 2^{(p-3)/2}.
/// The product is formed exactly in Q(zeta_{p-1}); the alternative form
/// 2p prod(-B_{1,chi}/2) is evaluated separately and must agree.
inline BigInt minus_class_number(std::int64_t p, BernoulliCache* cache = nullptr) {
    if (!is_odd_prime(p)) throw InvalidArgument("minus_class_number: p must be an odd prime");
    const std::int64_t k = p - 1;
    CycloElt prod_l = CycloElt::one(k), prod_half_b = CycloElt::one(k);
    for (const auto& chi : enumerate_characters(p, true, Parity::odd)) {
        auto rec = l_value_at_zero(chi, cache);
        prod_l *= rec.l0;
        prod_half_b *= make_rat(-1, 2) * rec.b1chi;
    }
    if (!prod_l.is_rational()) throw NonIntegralResult("product of odd L-values is not rational");
    BigRat h = BigRat(p) * prod_l.rational_value() / BigRat(BigInt(1) << static_cast<unsigned>((p - 3) / 2));
    h.canonicalize();
    if (!is_integer(h) || h <= 0) throw NonIntegralResult("h^-(" + std::to_string(p) + ") = " + h.get_str());
    if (!prod_half_b.is_rational() || BigRat(2 * p) * prod_half_b.rational_value() != h)
        throw NonIntegralResult("the two forms of the minus class number disagree at p = " + std::to_string(p));
    return h.get_num();
}

} // namespace lzero
