// Command-line surface: exact counts (sieve and brute force), per-b tables,
// and the verification sweeps. One JSON object per line on stdout for
// machine consumption; CSV for tables. Exit codes: 0 ok, 1 verification
// failure, 2 bad parameters, 3 budget exceeded, 4 oracle mismatch.

#include "subsum/bigint.hpp"
#include "subsum/bounds.hpp"
#include "subsum/budget.hpp"
#include "subsum/charsums.hpp"
#include "subsum/combinat.hpp"
#include "subsum/counting.hpp"
#include "subsum/field.hpp"
#include "subsum/kernels.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <thread>

using json = nlohmann::ordered_json;
using namespace subsum;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failure = 1;
constexpr int exit_bad_params = 2;
constexpr int exit_budget = 3;
constexpr int exit_mismatch = 4;

// The small-field grid every exhaustive sweep runs over.
const std::vector<uint32_t> kOracleGrid = {5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27};

int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Budget budget_from_env() {
    Budget b;
    if (const char* env = std::getenv("SUBGROUPSUMS_BUDGET")) {
        char* end = nullptr;
        const unsigned long long n = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && n > 0) {
            b.enum_ops = n;
            b.sum_ops = n * 5;
            b.conv_ops = n < (uint64_t{1} << 44) ? n * 5000 : ~uint64_t{0};
        }
    }
    return b;
}

struct PrimePower {
    uint32_t p = 0, r = 0, q = 0;
};

PrimePower factor_prime_power(uint64_t q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    uint32_t r = 0;
    uint64_t rest = q;
    while (rest % p == 0) { rest /= p; ++r; }
    if (rest != 1)
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    return {static_cast<uint32_t>(p), r, static_cast<uint32_t>(q)};
}

Target parse_target(const std::string& s) {
    if (s == "M") return Target::MH;
    if (s == "NH") return Target::NH;
    if (s == "Nmstar") return Target::NmStar;
    throw std::invalid_argument("unknown target '" + s + "' (expected M, NH or Nmstar)");
}

// b selector: "all", a comma list of encodings, or "sample:<n>:seed=<s>"
// (n seeded distinct values, always including 0).
std::vector<uint32_t> select_b(const std::string& sel, uint32_t q) {
    std::vector<uint32_t> out;
    if (sel == "all") {
        out.resize(q);
        for (uint32_t b = 0; b < q; ++b) out[b] = b;
        return out;
    }
    if (sel.rfind("sample:", 0) == 0) {
        const std::string rest = sel.substr(7);
        const auto colon = rest.find(':');
        if (colon == std::string::npos || rest.compare(colon + 1, 5, "seed=") != 0)
            throw std::invalid_argument("bad sample selector '" + sel + "'");
        const uint32_t n = static_cast<uint32_t>(std::stoul(rest.substr(0, colon)));
        const uint64_t seed = std::stoull(rest.substr(colon + 6));
        if (n == 0 || n > q) throw std::invalid_argument("sample size out of range");
        std::mt19937_64 gen(seed);
        out.push_back(0);
        std::vector<bool> seen(q, false);
        seen[0] = true;
        while (out.size() < n) {
            const uint32_t b = static_cast<uint32_t>(gen() % q);
            if (!seen[b]) {
                seen[b] = true;
                out.push_back(b);
            }
        }
        return out;
    }
    size_t pos = 0;
    while (pos < sel.size()) {
        const size_t comma = sel.find(',', pos);
        const std::string tok = sel.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const unsigned long v = std::stoul(tok);
        if (v >= q) throw std::invalid_argument("b = " + tok + " out of range [0, q)");
        out.push_back(static_cast<uint32_t>(v));
        pos = (comma == std::string::npos) ? sel.size() : comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty b selector");
    return out;
}

std::string main_term_string(const SubgroupSpec& sub, uint32_t k, Target t) {
    const uint32_t q = sub.field().q();
    Bigint num;
    switch (t) {
        case Target::MH: num = binomial_uint(sub.subgroup_size(), k); break;
        case Target::NH: num = falling_factorial_int(Bigint(sub.subgroup_size()), k); break;
        case Target::NmStar: num = falling_factorial_int(Bigint(q) - 1, k); break;
    }
    return rational_string(num, q);
}

std::optional<BoundId> bound_id_for(Target t, uint32_t k, const SubgroupSpec& sub) {
    switch (t) {
        case Target::MH:
            if (k < 1 || static_cast<uint64_t>(k) * sub.m() > sub.field().q() - 1)
                return std::nullopt;
            return BoundId::subset_sum;
        case Target::NH:
            if (k < 1 || static_cast<uint64_t>(k) * sub.m() > sub.field().q() - 1)
                return std::nullopt;
            return BoundId::subset_sum_ordered;
        case Target::NmStar:
            return BoundId::diagonal;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- count ----

struct CountArgs {
    uint64_t q = 0;
    uint32_t p = 0, r = 1;
    uint32_t m = 1;
    uint32_t k = 0;
    int64_t b = -1;
    std::string target = "M";
    std::string method = "sieve";
};

int cmd_count(const CountArgs& a, const Budget& budget) {
    const int64_t t0 = now_ms();
    PrimePower pp = a.q ? factor_prime_power(a.q)
                        : factor_prime_power([&] {
                              uint64_t q = 1;
                              for (uint32_t i = 0; i < a.r; ++i) q *= a.p;
                              return q;
                          }());
    FiniteField field = make_field(pp.p, pp.r);
    SubgroupSpec sub = subgroup(field, a.m);
    const Target target = parse_target(a.target);
    if (a.b < 0 || a.b >= field.q()) throw std::invalid_argument("--b must lie in [0, q)");
    const FieldElement b{static_cast<uint32_t>(a.b)};

    SieveContext ctx(sub, budget);
    std::optional<Bigint> sieve_v, brute_v;
    if (a.method == "sieve" || a.method == "both") sieve_v = ctx.count(a.k, b, target);
    if (a.method == "brute" || a.method == "both") {
        if (target == Target::NH)
            brute_v = brute_force_count(sub, a.k, b, Target::MH, budget).value * factorial(a.k);
        else
            brute_v = brute_force_count(sub, a.k, b, target, budget).value;
    }
    if (!sieve_v && !brute_v) throw std::invalid_argument("unknown method '" + a.method + "'");
    const Bigint value = sieve_v ? *sieve_v : *brute_v;

    json out;
    out["q"] = field.q();
    out["p"] = field.p();
    out["r"] = field.r();
    out["m"] = sub.m();
    out["k"] = a.k;
    out["b"] = b.v;
    out["target"] = a.target;
    out["count"] = to_decimal(value);
    out["main_term"] = main_term_string(sub, a.k, target);
    if (auto id = bound_id_for(target, a.k, sub)) {
        BoundReport rep = report_for(ctx, a.k, b, *id, value);
        out["bound"] = rep.rhs;
        out["bound_holds"] = rep.holds;
    } else {
        out["bound"] = nullptr;
        out["bound_holds"] = nullptr;
    }
    out["method"] = a.method;
    bool mismatch = false;
    if (a.method == "both") {
        mismatch = (*sieve_v != *brute_v);
        out["mismatch"] = mismatch;
    }
    out["elapsed_ms"] = now_ms() - t0;
    std::printf("%s\n", out.dump().c_str());
    return mismatch ? exit_mismatch : exit_ok;
}

// ---------------------------------------------------------------- table ----

int cmd_table(const CountArgs& a, const Budget& budget) {
    PrimePower pp = a.q ? factor_prime_power(a.q)
                        : factor_prime_power([&] {
                              uint64_t q = 1;
                              for (uint32_t i = 0; i < a.r; ++i) q *= a.p;
                              return q;
                          }());
    FiniteField field = make_field(pp.p, pp.r);
    SubgroupSpec sub = subgroup(field, a.m);
    const Target target = parse_target(a.target);
    const uint32_t q = field.q();

    SieveContext ctx(sub, budget);
    std::vector<Bigint> counts;
    bool mismatch = false;
    if (a.method == "brute") {
        counts = brute_force_table(sub, a.k, target == Target::NH ? Target::MH : target, budget);
        if (target == Target::NH)
            for (auto& v : counts) v *= factorial(a.k);
    } else {
        counts = ctx.table(a.k, target);
        if (a.method == "both") {
            auto brute = brute_force_table(sub, a.k, target == Target::NH ? Target::MH : target,
                                           budget);
            if (target == Target::NH)
                for (auto& v : brute) v *= factorial(a.k);
            mismatch = (brute != counts);
        }
    }

    const std::string main_term = main_term_string(sub, a.k, target);
    const auto id = bound_id_for(target, a.k, sub);
    std::printf("q,m,k,b,count,main_term,lhs,rhs,holds\n");
    Bigint rowsum = 0;
    for (uint32_t b = 0; b < q; ++b) {
        rowsum += counts[b];
        std::string lhs, rhs, holds;
        if (id) {
            BoundReport rep = report_for(ctx, a.k, {b}, *id, counts[b]);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", rep.lhs);
            lhs = buf;
            std::snprintf(buf, sizeof buf, "%.9g", rep.rhs);
            rhs = buf;
            holds = rep.holds ? "true" : "false";
        }
        std::printf("%u,%u,%u,%u,%s,%s,%s,%s,%s\n", q, sub.m(), a.k, b,
                    to_decimal(counts[b]).c_str(), main_term.c_str(), lhs.c_str(), rhs.c_str(),
                    holds.c_str());
    }
    Bigint expected;
    switch (target) {
        case Target::MH: expected = binomial_uint(sub.subgroup_size(), a.k); break;
        case Target::NH:
            expected = binomial_uint(sub.subgroup_size(), a.k) * factorial(a.k);
            break;
        case Target::NmStar: expected = falling_factorial_int(Bigint(q) - 1, a.k); break;
    }
    std::printf("# rowsum %s expected %s %s\n", to_decimal(rowsum).c_str(),
                to_decimal(expected).c_str(), rowsum == expected ? "ok" : "MISMATCH");
    if (rowsum != expected) return exit_verify_failure;
    return mismatch ? exit_mismatch : exit_ok;
}

// --------------------------------------------------------------- verify ----

struct VerifyConfig {
    std::vector<uint64_t> qs;  // explicit instance list; empty = suite defaults
    std::optional<uint32_t> q_max;
    std::vector<uint32_t> ms;
    std::optional<uint32_t> k_max;
    std::vector<uint32_t> ks;
    std::string b_sel = "all";
    uint32_t n_max = 3;
    uint32_t d_max = 6;
    uint32_t gauss_q_max = 343;
    uint32_t jobs = 1;
    std::string format = "json";
    Budget budget;
};

struct SuiteResult {
    std::string name;
    uint64_t instances = 0;
    uint64_t failures = 0;
    double max_dev = 0.0;
    std::vector<std::string> failure_lines;

    void merge(const SuiteResult& o) {
        instances += o.instances;
        failures += o.failures;
        max_dev = std::max(max_dev, o.max_dev);
        failure_lines.insert(failure_lines.end(), o.failure_lines.begin(),
                             o.failure_lines.end());
    }
    void fail(std::string line) {
        ++failures;
        failure_lines.push_back(std::move(line));
    }
};

std::vector<uint32_t> prime_powers_upto(uint32_t n) {
    std::vector<uint32_t> out;
    for (uint32_t q = 2; q <= n; ++q) {
        uint64_t p = q;
        for (uint64_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        uint64_t rest = q;
        while (rest % p == 0) rest /= p;
        if (rest == 1) out.push_back(q);
    }
    return out;
}

// Bounded worker pool; results keep task order so output is independent of
// the parallelism degree. The first exception, if any, is rethrown on the
// calling thread so exit-code mapping still applies.
std::vector<SuiteResult> run_tasks(const std::vector<std::function<SuiteResult()>>& tasks,
                                   uint32_t jobs) {
    std::vector<SuiteResult> results(tasks.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
        return results;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(tasks.size());
    std::vector<std::thread> pool;
    const uint32_t n = std::min<uint32_t>(jobs, static_cast<uint32_t>(tasks.size()));
    for (uint32_t w = 0; w < n; ++w)
        pool.emplace_back([&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                try {
                    results[i] = tasks[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

// --- oracle suite: sieve vs brute force, plus the structural identities ----

SuiteResult oracle_for_subgroup(const FiniteField& field, uint32_t m, uint32_t k_max,
                                bool with_brute, const Budget& budget) {
    SuiteResult r;
    const uint32_t q = field.q();
    SubgroupSpec sub = subgroup(field, m);
    SieveContext ctx(sub, budget);
    const uint32_t hsz = sub.subgroup_size();
    const uint32_t kmax_h = std::min(hsz, k_max);
    auto inst = [&](uint32_t q_, uint32_t m_, uint32_t k_, const char* what) {
        return "q=" + std::to_string(q_) + " m=" + std::to_string(m_) +
               " k=" + std::to_string(k_) + " " + what;
    };

    std::vector<std::vector<Bigint>> mh(kmax_h + 1), nh(kmax_h + 1);
    for (uint32_t k = 0; k <= kmax_h; ++k) {
        mh[k] = ctx.table(k, Target::MH);
        nh[k] = ctx.table(k, Target::NH);
    }
    const uint32_t kmax_star = std::min(q - 1, k_max);
    std::vector<std::vector<Bigint>> ns(kmax_star + 1);
    for (uint32_t k = 0; k <= kmax_star; ++k) ns[k] = ctx.table(k, Target::NmStar);

    if (with_brute) {
        for (uint32_t k = 0; k <= kmax_h; ++k) {
            auto brute = brute_force_table(sub, k, Target::MH, budget);
            for (uint32_t b = 0; b < q; ++b) {
                ++r.instances;
                if (mh[k][b] != brute[b])
                    r.fail("oracle " + inst(q, m, k, "M_H") + " b=" + std::to_string(b) +
                           " sieve=" + to_decimal(mh[k][b]) + " brute=" + to_decimal(brute[b]));
            }
        }
        for (uint32_t k = 0; k <= kmax_star; ++k) {
            auto brute = brute_force_table(sub, k, Target::NmStar, budget);
            for (uint32_t b = 0; b < q; ++b) {
                ++r.instances;
                if (ns[k][b] != brute[b])
                    r.fail("oracle " + inst(q, m, k, "N_m*") + " b=" + std::to_string(b) +
                           " sieve=" + to_decimal(ns[k][b]) + " brute=" + to_decimal(brute[b]));
            }
        }
    }

    // k! M_H = N_H, row sums, and the two symmetry identities
    for (uint32_t k = 0; k <= kmax_h; ++k) {
        const Bigint kf = factorial(k);
        Bigint rowsum = 0;
        for (uint32_t b = 0; b < q; ++b) {
            ++r.instances;
            if (nh[k][b] != kf * mh[k][b])
                r.fail("structural " + inst(q, m, k, "N_H != k! M_H") + " b=" + std::to_string(b));
            rowsum += mh[k][b];
        }
        ++r.instances;
        if (rowsum != binomial_uint(hsz, k))
            r.fail("structural " + inst(q, m, k, "row sum != C(|H|,k)"));
    }
    const FieldElement sig_h = sub.subgroup_sum();
    for (uint32_t k = 0; k <= kmax_h; ++k) {
        std::vector<Bigint> other = ctx.table(hsz - k, Target::MH);
        for (uint32_t b = 0; b < q; ++b) {
            ++r.instances;
            if (mh[k][b] != other[field.sub(sig_h, {b}).v])
                r.fail("structural " + inst(q, m, k, "M_H symmetry") + " b=" + std::to_string(b));
        }
    }
    // N_m*(k,b)/k! = N_m*(q-1-k, T-b)/(q-1-k)!, cross-multiplied
    FieldElement t_star = field.zero();
    for (uint32_t x = 1; x < q; ++x) t_star = field.add(t_star, field.pow({x}, m));
    for (uint32_t k = 0; k <= kmax_star; ++k) {
        std::vector<Bigint> other = ctx.table(q - 1 - k, Target::NmStar);
        const Bigint lf = factorial(q - 1 - k), rf = factorial(k);
        for (uint32_t b = 0; b < q; ++b) {
            ++r.instances;
            if (lf * ns[k][b] != rf * other[field.sub(t_star, {b}).v])
                r.fail("structural " + inst(q, m, k, "N_m* symmetry") + " b=" + std::to_string(b));
        }
    }
    return r;
}

SuiteResult suite_oracle(const VerifyConfig& cfg) {
    const uint32_t q_max = cfg.q_max.value_or(121);
    const uint32_t k_max = cfg.k_max.value_or(6);
    std::vector<std::function<SuiteResult()>> tasks;

    std::vector<uint32_t> base;
    if (!cfg.qs.empty()) {
        for (uint64_t q : cfg.qs)
            if (q <= q_max) base.push_back(static_cast<uint32_t>(q));
    } else {
        for (uint32_t q : kOracleGrid)
            if (q <= q_max) base.push_back(q);
    }
    for (uint32_t q : base) {
        tasks.push_back([q, k_max, &cfg] {
            SuiteResult r;
            PrimePower pp = factor_prime_power(q);
            FiniteField field = make_field(pp.p, pp.r);
            std::vector<uint32_t> ms = cfg.ms;
            if (ms.empty()) ms = divisors(field.q() - 1);
            for (uint32_t m : ms) {
                if ((field.q() - 1) % m != 0) continue;
                r.merge(oracle_for_subgroup(field, m, k_max, /*with_brute=*/true, cfg.budget));
            }
            return r;
        });
    }
    // sieve-vs-sieve structural block at q = 121 (no brute force at this size)
    if (cfg.qs.empty() && q_max >= 121) {
        for (uint32_t m : {2u, 3u, 5u}) {
            tasks.push_back([m, &cfg] {
                FiniteField field = make_field(11, 2);
                return oracle_for_subgroup(field, m, std::max(10u, cfg.k_max.value_or(6)),
                                           /*with_brute=*/false, cfg.budget);
            });
        }
    }
    SuiteResult total;
    total.name = "oracle";
    for (auto& r : run_tasks(tasks, cfg.jobs)) total.merge(r);
    return total;
}

// --- identities suite ------------------------------------------------------

SuiteResult suite_identities(const VerifyConfig& cfg) {
    SuiteResult r;
    r.name = "identities";
    const uint32_t q_max = cfg.q_max.value_or(49);
    for (uint32_t q : prime_powers_upto(q_max)) {
        PrimePower pp = factor_prime_power(q);
        FiniteField field = make_field(pp.p, pp.r);
        for (uint32_t n = 1; n <= cfg.n_max; ++n) {
            for (uint32_t d = 1; d <= cfg.d_max; ++d) {
                IdentityReport rep = verify_charsum_identities(field, d, n, cfg.budget);
                for (const auto& fam : rep.families) {
                    r.instances += fam.instances;
                    r.max_dev = std::max(r.max_dev, fam.max_dev);
                    if (!fam.pass)
                        r.fail("identities q=" + std::to_string(q) + " d=" + std::to_string(d) +
                               " n=" + std::to_string(n) + " family '" + fam.family +
                               "' dev=" + std::to_string(fam.max_dev));
                }
            }
        }
    }
    for (uint32_t q : prime_powers_upto(cfg.gauss_q_max)) {
        PrimePower pp = factor_prime_power(q);
        FiniteField field = make_field(pp.p, pp.r);
        const double dev = max_gauss_modulus_deviation(field);
        ++r.instances;
        r.max_dev = std::max(r.max_dev, dev);
        if (dev > 1e-9 * std::sqrt(static_cast<double>(q)))
            r.fail("identities |g(chi)| != sqrt(q) at q=" + std::to_string(q) +
                   " dev=" + std::to_string(dev));
        if (q <= 121) {
            const double pdev = max_power_count_deviation(field);
            ++r.instances;
            r.max_dev = std::max(r.max_dev, pdev);
            if (pdev > 1e-9 * q)
                r.fail("identities power-count relation at q=" + std::to_string(q) +
                       " dev=" + std::to_string(pdev));
        }
    }
    return r;
}

// --- combinat suite ---------------------------------------------------------

SuiteResult suite_combinat(const VerifyConfig& cfg) {
    (void)cfg;
    SuiteResult r;
    r.name = "combinat";
    for (uint32_t k = 0; k <= 40; ++k) {
        uint64_t n = 0;
        for_each_partition(k, [&](const PartitionType&) { ++n; });
        ++r.instances;
        if (n != partition_count(k))
            r.fail("combinat partition count mismatch at k=" + std::to_string(k));
    }
    for (uint32_t k = 0; k <= 12; ++k) {
        Bigint total = 0;
        for_each_partition(k, [&](const PartitionType& t) { total += cycle_type_count(t); });
        ++r.instances;
        if (total != factorial(k))
            r.fail("combinat sum N(c) != k! at k=" + std::to_string(k));
    }
    for (uint32_t k = 1; k <= 12; ++k)
        for (uint32_t q = 1; q <= 50; ++q) {
            std::vector<Bigint> t(k, Bigint(q));
            ++r.instances;
            if (gen_func_C(k, t) != gen_func_C_uniform_closed(k, Bigint(q)))
                r.fail("combinat uniform closed form k=" + std::to_string(k) +
                       " q=" + std::to_string(q));
        }
    for (uint32_t k = 1; k <= 10; ++k)
        for (uint32_t d = 1; d <= 5; ++d)
            for (uint32_t s = 1; s <= 30; ++s)
                for (uint32_t q = s; q <= 30; ++q) {
                    if ((q - s) % d != 0) continue;
                    auto t = periodic_substitution(k, d, q, s);
                    ++r.instances;
                    if (gen_func_C(k, t) != gen_func_C_periodic_closed(k, d, q, s))
                        r.fail("combinat periodic closed form k=" + std::to_string(k) + " d=" +
                               std::to_string(d) + " q=" + std::to_string(q) +
                               " s=" + std::to_string(s));
                    auto c = check_gen_func_bound(s, d, k, q);
                    ++r.instances;
                    if (!c.holds)
                        r.fail("combinat gen-func bound k=" + std::to_string(k) + " d=" +
                               std::to_string(d) + " q=" + std::to_string(q) +
                               " s=" + std::to_string(s));
                }
    for (uint32_t l = 1; l <= 12; ++l)
        for (uint32_t n = 1; n <= 12; ++n)
            for (uint32_t q = 1; q <= 12; ++q)
                for (uint32_t m = 1; m <= 12; ++m) {
                    ++r.instances;
                    if (!check_binomial_sum_inequality(l, n, q, m).holds)
                        r.fail("combinat binomial sum inequality (" + std::to_string(l) + "," +
                               std::to_string(n) + "," + std::to_string(q) + "," +
                               std::to_string(m) + ")");
                }
    return r;
}

// --- bounds suite ------------------------------------------------------------

SuiteResult bounds_for_instance(const FiniteField& field, uint32_t m, uint32_t k,
                                const std::vector<uint32_t>& bs, const Budget& budget,
                                bool expect_positivity) {
    SuiteResult r;
    SubgroupSpec sub = subgroup(field, m);
    SieveContext ctx(sub, budget);
    const uint32_t q = field.q();
    auto tag = [&](const char* what, uint32_t b) {
        return std::string(what) + " q=" + std::to_string(q) + " m=" + std::to_string(m) +
               " k=" + std::to_string(k) + " b=" + std::to_string(b);
    };

    const bool subset_ok = k >= 1 && static_cast<uint64_t>(k) * m <= q - 1;
    const bool diag_ok = k <= q - 1;

    // guaranteed positivity implies every count below must be nonzero
    bool positive_required = false;
    if (subset_ok && field.p() > 2 && 2ull * k * m <= q - 1) {
        PositivityReport pos =
            positivity_sufficient(q, field.p(), m, k, PositivityTarget::subset);
        positive_required = pos.guaranteed;
        if (expect_positivity) {
            ++r.instances;
            if (!pos.guaranteed)
                r.fail("bounds positivity_sufficient not guaranteed at q=" + std::to_string(q) +
                       " m=" + std::to_string(m) + " k=" + std::to_string(k));
        }
    }
    for (uint32_t b : bs) {
        if (subset_ok) {
            BoundReport rep = check_bounds(ctx, k, {b}, BoundId::subset_sum);
            ++r.instances;
            if (!rep.holds) r.fail("bounds " + tag(rep.theorem_id.c_str(), b));
            if (positive_required && rep.exact == 0) r.fail("bounds " + tag("M_H = 0", b));
            if (b == 0) {
                BoundReport alt = report_for(ctx, k, {b}, BoundId::subset_sum_zero_alt, rep.exact);
                ++r.instances;
                if (!alt.holds) r.fail("bounds " + tag(alt.theorem_id.c_str(), b));
                ++r.instances;
                if (alt.rhs > rep.rhs * (1 + 1e-9))
                    r.fail("bounds " + tag("alt zero-bound above the primary", b));
            }
        }
        if (diag_ok) {
            BoundReport rep = check_bounds(ctx, k, {b}, BoundId::diagonal);
            ++r.instances;
            if (!rep.holds) r.fail("bounds " + tag(rep.theorem_id.c_str(), b));
        }
    }
    return r;
}

SuiteResult suite_bounds(const VerifyConfig& cfg) {
    SuiteResult total;
    total.name = "bounds";
    std::vector<std::function<SuiteResult()>> tasks;

    if (!cfg.qs.empty()) {
        // explicit instances, e.g. the large positivity run
        for (uint64_t q64 : cfg.qs) {
            PrimePower pp = factor_prime_power(q64);
            std::vector<uint32_t> ms = cfg.ms.empty() ? std::vector<uint32_t>{1} : cfg.ms;
            std::vector<uint32_t> ks = cfg.ks.empty()
                                           ? std::vector<uint32_t>{cfg.k_max.value_or(1)}
                                           : cfg.ks;
            for (uint32_t m : ms)
                for (uint32_t k : ks)
                    tasks.push_back([pp, m, k, &cfg] {
                        FiniteField field = make_field(pp.p, pp.r);
                        auto bs = select_b(cfg.b_sel, field.q());
                        return bounds_for_instance(field, m, k, bs, cfg.budget,
                                                   /*expect_positivity=*/false);
                    });
        }
    } else {
        const uint32_t q_max = cfg.q_max.value_or(27);
        const uint32_t k_max = cfg.k_max.value_or(6);
        for (uint32_t q : kOracleGrid) {
            if (q > q_max) continue;
            tasks.push_back([q, k_max, &cfg] {
                SuiteResult r;
                PrimePower pp = factor_prime_power(q);
                FiniteField field = make_field(pp.p, pp.r);
                for (uint32_t m : divisors(field.q() - 1)) {
                    SubgroupSpec sub = subgroup(field, m);
                    auto bs = select_b(cfg.b_sel, field.q());
                    const uint32_t kmax_inst = std::min(k_max, field.q() - 1);
                    for (uint32_t k = 0; k <= std::min(kmax_inst, sub.subgroup_size()); ++k)
                        r.merge(bounds_for_instance(field, m, k, bs, cfg.budget, false));
                }
                return r;
            });
        }
        // mixed-exponent diagonal estimates (general and equal-exponent forms)
        tasks.push_back([&cfg] {
            SuiteResult r;
            for (uint32_t q : {7u, 9u, 13u, 25u}) {
                PrimePower pp = factor_prime_power(q);
                FiniteField field = make_field(pp.p, pp.r);
                const FieldElement g = field.generator();
                for (uint32_t n = 1; n <= 3; ++n) {
                    std::vector<uint32_t> ds(n, 1);
                    while (true) {
                        DiagonalSpec spec;
                        for (uint32_t i = 0; i < n; ++i) {
                            spec.coeffs.push_back(field.pow(g, i + 1));
                            spec.exps.push_back(ds[i]);
                        }
                        const double qd = q;
                        spec.target = field.one();
                        Bigint nstar = diagonal_count(field, spec, cfg.budget);
                        double main = (std::pow(qd - 1, n) - ((n % 2) ? -1.0 : 1.0)) / qd;
                        double lhs = std::abs(nstar.convert_to<double>() - main);
                        double rhs = diagonal_mixed_rhs_nonzero(q, ds);
                        ++r.instances;
                        if (lhs > rhs + 1e-9 * std::max(1.0, rhs))
                            r.fail("bounds mixed bound (b!=0) q=" + std::to_string(q) +
                                   " n=" + std::to_string(n));
                        spec.target = field.zero();
                        Bigint n0 = diagonal_count(field, spec, cfg.budget);
                        double main0 = std::pow(qd - 1, n) / qd;
                        double lhs0 = std::abs(n0.convert_to<double>() - main0);
                        double rhs0 = diagonal_mixed_rhs_zero(q, ds);
                        ++r.instances;
                        if (lhs0 > rhs0 + 1e-9 * std::max(1.0, rhs0))
                            r.fail("bounds mixed bound (b=0) q=" + std::to_string(q) +
                                   " n=" + std::to_string(n));
                        // equal exponents: the power-form corollaries dominate
                        bool equal = true;
                        for (uint32_t d : ds) equal = equal && d == ds[0];
                        if (equal && (q - 1) % ds[0] == 0) {
                            ++r.instances;
                            if (lhs > diagonal_power_rhs_nonzero(q, ds[0], n) +
                                          1e-9 * std::max(1.0, rhs))
                                r.fail("bounds power bound (b!=0) q=" + std::to_string(q));
                            ++r.instances;
                            if (lhs0 > diagonal_power_rhs_zero(q, ds[0], n) +
                                           1e-9 * std::max(1.0, rhs0))
                                r.fail("bounds power bound (b=0) q=" + std::to_string(q));
                        }
                        uint32_t pos = n;
                        while (pos > 0 && ds[pos - 1] == 3) ds[--pos] = 1;
                        if (pos == 0) break;
                        ++ds[pos - 1];
                    }
                }
            }
            return r;
        });
        // positivity at large scale
        tasks.push_back([&cfg] {
            FiniteField field = make_field(1009, 1);
            auto bs = select_b("sample:16:seed=1", field.q());
            return bounds_for_instance(field, 2, 43, bs, cfg.budget, /*expect_positivity=*/true);
        });
    }
    for (auto& r : run_tasks(tasks, cfg.jobs)) total.merge(r);
    return total;
}

int cmd_verify(const std::string& suite, const VerifyConfig& cfg) {
    std::vector<std::string> names;
    if (suite == "all")
        names = {"combinat", "identities", "oracle", "bounds"};
    else if (suite == "combinat" || suite == "identities" || suite == "oracle" ||
             suite == "bounds")
        names = {suite};
    else
        throw std::invalid_argument("unknown suite '" + suite + "'");

    uint64_t failures = 0;
    for (const auto& name : names) {
        const int64_t t0 = now_ms();
        SuiteResult r;
        if (name == "combinat") r = suite_combinat(cfg);
        else if (name == "identities") r = suite_identities(cfg);
        else if (name == "oracle") r = suite_oracle(cfg);
        else r = suite_bounds(cfg);
        r.name = name;
        for (const auto& line : r.failure_lines) std::printf("FAIL %s\n", line.c_str());
        json summary;
        summary["suite"] = r.name;
        summary["instances"] = r.instances;
        summary["failures"] = r.failures;
        summary["max_deviation"] = r.max_dev;
        summary["elapsed_ms"] = now_ms() - t0;
        if (cfg.format == "csv")
            std::printf("%s,%llu,%llu,%.12g,%lld\n", r.name.c_str(),
                        static_cast<unsigned long long>(r.instances),
                        static_cast<unsigned long long>(r.failures), r.max_dev,
                        static_cast<long long>(now_ms() - t0));
        else
            std::printf("%s\n", summary.dump().c_str());
        failures += r.failures;
    }
    return failures ? exit_verify_failure : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact k-subset sum counts over multiplicative subgroups of F_q*"};
    app.require_subcommand(1);

    CountArgs ca;
    VerifyConfig vc;
    vc.budget = budget_from_env();
    std::string suite = "all";

    auto add_instance_flags = [&](CLI::App* cmd) {
        cmd->add_option("--q", ca.q, "field size q = p^r (prime power)");
        cmd->add_option("--p", ca.p, "characteristic p (with --r)");
        cmd->add_option("--r", ca.r, "extension degree r");
        cmd->add_option("--m", ca.m, "subgroup index m | (q-1)");
        cmd->add_option("--k", ca.k, "subset size k");
        cmd->add_option("--target", ca.target, "M | NH | Nmstar")->default_str("M");
        cmd->add_option("--method", ca.method, "sieve | brute | both")->default_str("sieve");
    };

    CLI::App* count = app.add_subcommand("count", "count one (q,m,k,b) instance");
    add_instance_flags(count);
    count->add_option("--b", ca.b, "target element encoding in [0,q)")->required();

    CLI::App* table = app.add_subcommand("table", "CSV table over all b in F_q");
    add_instance_flags(table);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite, "identities | bounds | oracle | combinat | all");
    verify->add_option("--q", vc.qs, "explicit field size(s)");
    verify->add_option("--q-max", vc.q_max, "cap on the default field grid");
    verify->add_option("--m", vc.ms, "explicit subgroup index list");
    verify->add_option("--k-max", vc.k_max, "cap on k in sweeps");
    verify->add_option("--k", vc.ks, "explicit k list");
    verify->add_option("--b", vc.b_sel, "all | b1,b2,... | sample:<n>:seed=<s>");
    verify->add_option("--n-max", vc.n_max, "max character-sum arity");
    verify->add_option("--d-max", vc.d_max, "max character order divisor");
    verify->add_option("--gauss-q-max", vc.gauss_q_max, "cap for the |g(chi)| sweep");
    verify->add_option("--jobs", vc.jobs, "worker threads for sweeps");
    verify->add_option("--format", vc.format, "json | csv summaries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_bad_params;
    }

    try {
        if (count->parsed()) return cmd_count(ca, vc.budget);
        if (table->parsed()) return cmd_table(ca, vc.budget);
        return cmd_verify(suite, vc);
    } catch (const budget_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_budget;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_bad_params;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_bad_params;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 70;
    }
}
