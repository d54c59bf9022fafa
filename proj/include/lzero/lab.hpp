#pragma once

/**
 * Checks and scans over L(0, chi) at a fixed prime above p.
 *
 * Statements that are theorems (the integrality classification of primitive
 * odd characters, the pole orders at prime-power conductors, integrality of
 * w L(0, chi), the Kummer congruence, the h^- product identity) raise a
 * TheoremViolation subclass when they fail: such a failure is a bug.
 * Conjectural statements (congruences between L-values of congruent
 * characters, vanishing mod p for non-prime-power conductors) are reported
 * as data and never throw.
 */

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lzero/bernoulli.hpp"
#include "lzero/dirichlet.hpp"
#include "lzero/padic.hpp"
#include "lzero/parallel.hpp"

namespace lzero {

struct LabOptions {
    int precision = kDefaultPrecision;
    BernoulliCache* cache = nullptr;
    unsigned jobs = 1;
};

struct VerdictRecord {
    CharKey character;
    std::int64_t order = 1;
    std::int64_t p = 0;
    TowerDescriptor tower;
    Valuation valuation;
    bool global_integral = false;  ///< L(0, chi) is an algebraic integer
    bool omega_inverse = false;    ///< chi = omega^{-1} mod the chosen prime
    bool prime_power_conductor = false;
    bool classification_consistent = false;
    /// For conductor p^d m (m > 1) with chi = omega^{-1}: whether L(0, chi) = 0 mod the prime.
    std::optional<bool> vanishes_mod_p;
    std::string notes;

    bool non_integral() const { return valuation.known() && *valuation.value < 0; }
};

namespace detail {

inline void require_odd_primitive(const DirichletChar& chi) {
    if (!chi.is_odd()) throw InvalidArgument("character " + chi.key().to_string() + " is not odd");
    if (!is_primitive(chi)) throw ImprimitiveInput("character " + chi.key().to_string() + " is not primitive");
}

inline void require_odd_prime(std::int64_t p) {
    if (!is_odd_prime(p)) throw InvalidArgument(std::to_string(p) + " is not an odd prime");
}

/// -1 at conductor p, -1/phi(p^{r-1}) at conductor p^r with r >= 2.
inline BigRat expected_pole(std::int64_t p, int r) {
    if (r == 1) return BigRat(-1);
    return make_rat(-1, euler_phi(ipow(p, r - 1)));
}

inline std::string residue_string(const fp::Poly& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + "]";
}

} // namespace detail

/// L(0, chi) at the chosen prime above p: valuation, integrality and the omega^{-1} test.
inline VerdictRecord integrality_verdict(const DirichletChar& chi, std::int64_t p, const LabOptions& opts = {}) {
    detail::require_odd_prime(p);
    detail::require_odd_primitive(chi);
    auto lv = l_value_at_zero(chi, opts.cache);
    auto pv = padic_valuation(lv.l0, p, chi.order(), opts.precision);

    VerdictRecord rec;
    rec.character = chi.key();
    rec.order = chi.order();
    rec.p = p;
    rec.tower = pv.tower->descriptor();
    rec.valuation = pv.value;
    rec.global_integral = lv.l0.is_algebraic_integer();
    rec.omega_inverse = char_is_omega_power_mod_p(chi, p, -1, pv.tower->precision());
    auto [q, d] = prime_power(chi.modulus());
    rec.prime_power_conductor = q == p;
    rec.classification_consistent = rec.non_integral() == (rec.prime_power_conductor && rec.omega_inverse);
    if (rec.omega_inverse && !rec.prime_power_conductor) {
        rec.vanishes_mod_p = *rec.valuation.value > 0;
        rec.notes = *rec.vanishes_mod_p ? "omega^-1 class, vanishes mod p" : "omega^-1 class, unit mod p";
    } else if (rec.non_integral()) {
        rec.notes = "pole";
    }
    return rec;
}

struct ClassificationSummary {
    std::size_t characters = 0;
    std::size_t records = 0;
    std::size_t non_integral = 0;
    /// (p, d) -> number of non-integral characters of conductor p^d.
    std::map<std::pair<std::int64_t, int>, std::size_t> poles_by_level;
    std::size_t vanishing_probes = 0; ///< records with a vanishes_mod_p entry
    std::size_t vanishing_hits = 0;
};

struct ClassificationResult {
    std::vector<VerdictRecord> records;
    ClassificationSummary summary;
};

/// Primitive odd characters of (Z/f)^x for 3 <= f <= f_max, in canonical order.
inline std::vector<DirichletChar> primitive_odd_characters(std::int64_t f_max) {
    std::vector<DirichletChar> out;
    for (std::int64_t f = 3; f <= f_max; ++f)
        for (auto& chi : enumerate_characters(f, true, Parity::odd)) out.push_back(std::move(chi));
    return out;
}

/// Verdicts for every primitive odd chi of conductor <= f_max and odd prime p <= p_max.
/// Checks the classification, the pole orders and the per-level pole counts.
inline ClassificationResult prop1_scan(std::int64_t f_max, std::int64_t p_max, const LabOptions& opts = {}) {
    if (f_max < 3 || p_max < 3) throw InvalidArgument("prop1_scan: f_max and p_max must be at least 3");
    auto chars = primitive_odd_characters(f_max);
    std::vector<std::int64_t> primes;
    for (std::int64_t p : primes_up_to(p_max))
        if (p > 2) primes.push_back(p);
    const std::size_t n = chars.size() * primes.size();
    ClassificationResult result;
    result.records = parallel_map(n, opts.jobs, [&](std::size_t i) {
        return integrality_verdict(chars[i / primes.size()], primes[i % primes.size()], opts);
    });
    auto& s = result.summary;
    s.characters = chars.size();
    s.records = result.records.size();
    for (const auto& rec : result.records) {
        if (!rec.classification_consistent)
            throw ClassificationViolation("classification fails for " + rec.character.to_string() +
                                          " at p = " + std::to_string(rec.p) + ", v = " + rec.valuation.to_string());
        if (rec.vanishes_mod_p) {
            ++s.vanishing_probes;
            if (*rec.vanishes_mod_p) ++s.vanishing_hits;
        }
        if (!rec.non_integral()) continue;
        ++s.non_integral;
        int d = prime_power(rec.character.modulus).second;
        if (*rec.valuation.value != detail::expected_pole(rec.p, d))
            throw ClassificationViolation("pole order " + rec.valuation.to_string() + " for " +
                                          rec.character.to_string() + " at p = " + std::to_string(rec.p));
        ++s.poles_by_level[{rec.p, d}];
    }
    for (std::int64_t p : primes)
        for (int d = 1; ipow(p, d) <= f_max; ++d) {
            std::size_t expected = d == 1 ? 1 : static_cast<std::size_t>(euler_phi(ipow(p, d - 1)));
            std::size_t got = s.poles_by_level.count({p, d}) ? s.poles_by_level.at({p, d}) : 0;
            if (got != expected)
                throw ClassificationViolation("conductor " + std::to_string(ipow(p, d)) + " at p = " +
                                              std::to_string(p) + ": " + std::to_string(got) +
                                              " non-integral characters, expected " + std::to_string(expected));
        }
    return result;
}

struct DeligneRibetRow {
    CharKey character;
    std::int64_t w = 0;
    CycloElt scaled; ///< w L(0, chi)
    bool integral = false;
};

/// Number of roots of unity in the field cut out by chi: lcm(2, n) for the
/// largest n | f with ker(chi) contained in {a = 1 mod n}.
inline std::int64_t roots_of_unity_in_field(const DirichletChar& chi) {
    const std::int64_t f = chi.modulus();
    std::vector<std::int64_t> kernel;
    for (std::int64_t a = 1; a <= f; ++a)
        if (auto m = chi.value_exponent(a); m && *m == 0) kernel.push_back(a);
    std::int64_t n_max = 1;
    for (std::int64_t n : divisors(f)) {
        bool ok = true;
        for (std::int64_t a : kernel)
            if ((a - 1) % n != 0) {
                ok = false;
                break;
            }
        if (ok) n_max = lcm64(n_max, n);
    }
    return lcm64(2, n_max);
}

inline DeligneRibetRow deligne_ribet_check(const DirichletChar& chi, const LabOptions& opts = {}) {
    detail::require_odd_primitive(chi);
    DeligneRibetRow row{chi.key(), roots_of_unity_in_field(chi), CycloElt(), false};
    row.scaled = BigRat(row.w) * l_value_at_zero(chi, opts.cache).l0;
    row.integral = row.scaled.is_algebraic_integer();
    if (!row.integral)
        throw IntegralityViolation("w L(0, chi) = " + row.scaled.to_string() + " is not integral for " +
                                   chi.key().to_string());
    return row;
}

inline std::vector<DeligneRibetRow> deligne_ribet_scan(std::int64_t f_max, const LabOptions& opts = {}) {
    auto chars = primitive_odd_characters(f_max);
    return parallel_map(chars.size(), opts.jobs, [&](std::size_t i) { return deligne_ribet_check(chars[i], opts); });
}

struct KummerRow {
    std::int64_t n = 0;
    std::int64_t lhs = 0; ///< B_{1, omega^n} mod p
    std::int64_t rhs = 0; ///< B_{n+1} / (n+1) mod p
    bool equal = false;
};

/// B_{1, omega^n} = B_{n+1}/(n+1) mod p for odd n in [1, p-4].
inline std::vector<KummerRow> kummer_check(std::int64_t p) {
    detail::require_odd_prime(p);
    const BigInt p2 = BigInt(static_cast<long>(p)) * p;
    std::vector<BigInt> omega(static_cast<std::size_t>(p));
    for (std::int64_t a = 1; a < p; ++a) omega[a] = teichmuller(a, p, 2);
    std::vector<KummerRow> rows;
    for (std::int64_t n = 1; n <= p - 4; n += 2) {
        if ((n + 1) % (p - 1) == 0) continue;
        BigInt sum = 0, term;
        for (std::int64_t a = 1; a < p; ++a) {
            mpz_powm_ui(term.get_mpz_t(), omega[a].get_mpz_t(), static_cast<unsigned long>(n), p2.get_mpz_t());
            sum += term * static_cast<long>(a);
        }
        mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), p2.get_mpz_t());
        if (!mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(p)))
            throw CongruenceViolation("sum a omega^n(a) is not divisible by p at p = " + std::to_string(p));
        KummerRow row;
        row.n = n;
        row.lhs = BigInt(sum / static_cast<long>(p)).get_si() % p;
        row.rhs = rat_mod(bernoulli_number(static_cast<unsigned>(n + 1)) / BigRat(n + 1), p);
        row.equal = row.lhs == row.rhs;
        if (!row.equal)
            throw CongruenceViolation("Kummer congruence fails at p = " + std::to_string(p) + ", n = " +
                                      std::to_string(n));
        rows.push_back(row);
    }
    return rows;
}

struct PoleOrderRow {
    CharKey character;
    int r = 0;
    BigRat expected;
    Valuation computed;
    TowerDescriptor tower;
    bool equal = false;
};

inline constexpr std::int64_t kPoleOrderConductorBudget = 5000;

/// For every primitive chi mod p^r (r <= r_max) with chi = omega^{-1} mod the
/// chosen prime: v(L(0, chi)) is -1 for r = 1 and -1/phi(p^{r-1}) otherwise.
inline std::vector<PoleOrderRow> remark2_check(std::int64_t p, int r_max, const LabOptions& opts = {}) {
    detail::require_odd_prime(p);
    if (r_max < 1) throw InvalidArgument("remark2_check: r_max must be at least 1");
    if (ipow(p, r_max) > kPoleOrderConductorBudget)
        throw InvalidArgument("remark2_check: p^r_max exceeds the conductor budget " +
                              std::to_string(kPoleOrderConductorBudget));
    std::vector<DirichletChar> targets;
    std::vector<int> levels;
    for (int r = 1; r <= r_max; ++r)
        for (auto& chi : enumerate_characters(ipow(p, r), true, Parity::odd))
            if (char_is_omega_power_mod_p(chi, p, -1, opts.precision)) {
                targets.push_back(std::move(chi));
                levels.push_back(r);
            }
    return parallel_map(targets.size(), opts.jobs, [&](std::size_t i) {
        auto rec = integrality_verdict(targets[i], p, opts);
        PoleOrderRow row{rec.character, levels[i], detail::expected_pole(p, levels[i]), rec.valuation, rec.tower, false};
        row.equal = row.computed.known() && *row.computed.value == row.expected;
        if (!row.equal)
            throw ClassificationViolation("pole of L(0, " + row.character.to_string() + ") has valuation " +
                                          row.computed.to_string() + ", expected " + to_fraction_string(row.expected));
        return row;
    });
}

struct StarFactor {
    CharKey character;
    Valuation valuation;
    bool omega_inverse = false;
    TowerDescriptor tower;
};

struct StarResult {
    std::int64_t p = 0;
    std::vector<StarFactor> factors;
    BigInt h_minus;
    bool product_identity = false;
    bool unique_pole = false;
};

/// The odd L-values mod p: exactly one simple pole (at omega^{-1}) and an
/// integral product p 2^{-(p-3)/2} prod L(0, chi) = h^-.
inline StarResult equation_star_check(std::int64_t p, const LabOptions& opts = {}) {
    detail::require_odd_prime(p);
    StarResult out;
    out.p = p;
    auto chars = enumerate_characters(p, true, Parity::odd);
    auto recs = parallel_map(chars.size(), opts.jobs, [&](std::size_t i) { return integrality_verdict(chars[i], p, opts); });
    std::size_t poles = 0;
    bool others_integral = true;
    for (const auto& rec : recs) {
        out.factors.push_back({rec.character, rec.valuation, rec.omega_inverse, rec.tower});
        if (rec.non_integral()) {
            ++poles;
            if (*rec.valuation.value != -1 || !rec.omega_inverse) others_integral = false;
        }
    }
    out.unique_pole = poles == 1 && others_integral;
    if (!out.unique_pole)
        throw ClassificationViolation("p = " + std::to_string(p) + ": expected exactly one simple pole at omega^-1, found " +
                                      std::to_string(poles) + " poles");
    out.h_minus = minus_class_number(p, opts.cache);
    out.product_identity = out.h_minus > 0;
    return out;
}

struct CongruenceRow {
    CharKey first, second;
    std::string residue_first, residue_second;
    bool equal = false;          ///< L(0, chi_1) = L(0, chi_2) mod the prime
    bool adjusted_equal = false; ///< equal after completing both with the missing Euler factors of the tame part
    bool integral = true;        ///< false if either value has a pole (then nothing is compared)
    std::string notes;
};

struct CongruenceSummary {
    std::size_t characters = 0;
    std::size_t classes = 0;
    std::size_t excluded_classes = 0;
    std::size_t excluded_characters = 0;
    std::size_t pairs = 0;
    std::size_t unequal = 0;
    std::size_t adjusted_unequal = 0;
    std::size_t non_integral_members = 0;
};

struct CongruenceResult {
    std::int64_t p = 0;
    std::vector<CongruenceRow> rows;
    std::vector<TowerDescriptor> towers;
    CongruenceSummary summary;
};

namespace detail {

/// The prime-to-p-order part of chi, as a primitive character.
inline DirichletChar tame_part(const DirichletChar& chi, std::int64_t p) {
    std::int64_t k = chi.order(), pa = 1;
    while (k % p == 0) {
        k /= p;
        pa *= p;
    }
    std::int64_t c = pa == 1 ? 1 : crt_pair(1, k, 0, pa);
    return conductor_and_primitivize(chi.pow(c)).second;
}

} // namespace detail

/// Groups primitive odd characters of conductor <= f_max by their reduction
/// mod the chosen prime above p (classes congruent to omega^{-1} excluded)
/// and compares L(0, chi) mod the prime within each class. Never throws on
/// an inequality: the rows are evidence.
///
/// Two characters reduce alike exactly when their prime-to-p-order parts
/// agree, so a class is labelled by that primitive tame character tau.
/// `adjusted_equal` additionally multiplies each side by prod (1 - tau(l))
/// over primes l dividing the other conductor but neither its own nor tau's.
inline CongruenceResult congruence_scan(std::int64_t f_max, std::int64_t p, const LabOptions& opts = {}) {
    detail::require_odd_prime(p);
    if (f_max < 3) throw InvalidArgument("congruence_scan: f_max must be at least 3");
    CongruenceResult out;
    out.p = p;
    auto chars = primitive_odd_characters(f_max);
    out.summary.characters = chars.size();

    std::map<CharKey, std::vector<std::size_t>> classes;
    std::map<CharKey, DirichletChar> taus;
    std::set<CharKey> excluded;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        DirichletChar tau = detail::tame_part(chars[i], p);
        classes[tau.key()].push_back(i);
        taus.emplace(tau.key(), tau);
        if (char_is_omega_power_mod_p(chars[i], p, -1, opts.precision)) excluded.insert(tau.key());
    }
    out.summary.classes = classes.size();
    out.summary.excluded_classes = excluded.size();

    struct Work {
        CharKey tau;
        std::vector<std::size_t> members;
    };
    std::vector<Work> work;
    for (auto& [key, members] : classes) {
        if (excluded.count(key)) {
            out.summary.excluded_characters += members.size();
            continue;
        }
        if (members.size() >= 2) work.push_back({key, members});
    }

    struct ClassOut {
        std::vector<CongruenceRow> rows;
        TowerDescriptor tower;
        std::size_t non_integral = 0;
    };
    auto results = parallel_map(work.size(), opts.jobs, [&](std::size_t w) {
        const auto& tau = taus.at(work[w].tau);
        const auto& members = work[w].members;
        std::int64_t big_k = 1;
        for (auto i : members) big_k = lcm64(big_k, chars[i].order());
        std::vector<CycloElt> values;
        for (auto i : members) values.push_back(l_value_at_zero(chars[i], opts.cache).l0);

        // one tower for the whole class, raising precision until every valuation is decided
        std::shared_ptr<const PadicTower> tower;
        std::vector<PadicElt> images;
        std::vector<Valuation> vals;
        for (int n = opts.precision;; n = std::min(2 * n, kMaxPrecision)) {
            tower = build_tower(p, big_k, n);
            images.clear();
            vals.clear();
            bool decided = true;
            try {
                for (const auto& v : values) {
                    images.push_back(embed_padic(v, tower));
                    vals.push_back(images.back().valuation());
                    decided = decided && vals.back().known();
                }
            } catch (const PrecisionExhausted&) {
                decided = false;
            }
            if (decided) break;
            if (n == kMaxPrecision) throw PrecisionExhausted("congruence_scan: valuation undecided at the cap");
        }

        const std::int64_t pp = p;
        auto residue_of_tau = [&](std::int64_t ell) {
            auto m = tau.value_exponent(ell);
            if (!m) return fp::Poly{};
            return tower->residue_of_zeta_power(*m * (big_k / tau.order()));
        };
        auto euler_factor = [&](std::int64_t ell) { return fp::sub(fp::Poly{1}, residue_of_tau(ell), pp); };
        auto primes_of = [&](std::int64_t f) {
            std::set<std::int64_t> s;
            for (auto [q, e] : factorize(f))
                if (tau.modulus() % q != 0) s.insert(q);
            return s;
        };

        ClassOut co;
        co.tower = tower->descriptor();
        std::vector<std::optional<fp::Poly>> residues;
        for (std::size_t m = 0; m < members.size(); ++m) {
            if (*vals[m].value < 0) {
                ++co.non_integral;
                residues.emplace_back();
            } else {
                residues.emplace_back(images[m].residue());
            }
        }
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const auto& ca = chars[members[a]];
                const auto& cb = chars[members[b]];
                CongruenceRow row;
                row.first = ca.key();
                row.second = cb.key();
                if (!residues[a] || !residues[b]) {
                    row.residue_first = residues[a] ? detail::residue_string(*residues[a]) : "non-integral";
                    row.residue_second = residues[b] ? detail::residue_string(*residues[b]) : "non-integral";
                    row.integral = false;
                    row.notes = "non-integral member";
                    co.rows.push_back(std::move(row));
                    continue;
                }
                row.residue_first = detail::residue_string(*residues[a]);
                row.residue_second = detail::residue_string(*residues[b]);
                row.equal = *residues[a] == *residues[b];
                auto sa = primes_of(ca.modulus()), sb = primes_of(cb.modulus());
                fp::Poly adj_a = *residues[a], adj_b = *residues[b];
                for (auto ell : sb)
                    if (!sa.count(ell))
                        adj_a = fp::mod(fp::mul(adj_a, euler_factor(ell), pp), tower->factor(), pp);
                for (auto ell : sa)
                    if (!sb.count(ell))
                        adj_b = fp::mod(fp::mul(adj_b, euler_factor(ell), pp), tower->factor(), pp);
                row.adjusted_equal = adj_a == adj_b;
                if (!row.equal && row.adjusted_equal && adj_a.empty()) row.notes = "missing Euler factor vanishes mod p";
                co.rows.push_back(std::move(row));
            }
        return co;
    });

    std::set<TowerDescriptor> towers;
    for (auto& co : results) {
        out.summary.non_integral_members += co.non_integral;
        towers.insert(co.tower);
        for (auto& row : co.rows) {
            ++out.summary.pairs;
            if (row.integral && !row.equal) ++out.summary.unequal;
            if (row.integral && !row.adjusted_equal) ++out.summary.adjusted_unequal;
            out.rows.push_back(std::move(row));
        }
    }
    out.towers.assign(towers.begin(), towers.end());
    return out;
}

struct TwistWitness {
    VerdictRecord omega_inverse; ///< L(0, omega^{-1}) at conductor p
    VerdictRecord twisted;       ///< L(0, omega^{-1} x chi_2) at conductor pq
};

/// The character omega^{-1} mod p under the chosen prime.
inline DirichletChar omega_inverse_character(std::int64_t p, const LabOptions& opts = {}) {
    detail::require_odd_prime(p);
    std::optional<DirichletChar> found;
    for (auto& chi : enumerate_characters(p, true, Parity::odd))
        if (char_is_omega_power_mod_p(chi, p, -1, opts.precision)) {
            if (found) throw TheoremViolation("two characters mod p reduce to omega^-1");
            found = chi;
        }
    if (!found) throw TheoremViolation("no character mod p reduces to omega^-1");
    return *found;
}

/// omega^{-1} mod p has a pole; twisting by an order-p character mod q removes it.
inline TwistWitness corollary1_witness(std::int64_t p, std::int64_t q, const LabOptions& opts = {}) {
    detail::require_odd_prime(p);
    detail::require_odd_prime(q);
    if ((q - 1) % p != 0)
        throw NoOrderPCharacter(std::to_string(p) + " does not divide " + std::to_string(q) + " - 1");
    DirichletChar omega_inv = omega_inverse_character(p, opts);
    std::optional<DirichletChar> chi2;
    for (auto& c : enumerate_characters(q))
        if (c.order() == p) {
            chi2 = c;
            break;
        }
    DirichletChar twisted = char_product(omega_inv, *chi2);
    TwistWitness w{integrality_verdict(omega_inv, p, opts), integrality_verdict(twisted, p, opts)};
    if (!w.omega_inverse.non_integral() || *w.omega_inverse.valuation.value != -1)
        throw ClassificationViolation("L(0, omega^-1) is not a simple pole at p = " + std::to_string(p));
    if (w.twisted.non_integral())
        throw ClassificationViolation("L(0, omega^-1 x chi_2) is non-integral at p = " + std::to_string(p));
    return w;
}

} // namespace lzero
