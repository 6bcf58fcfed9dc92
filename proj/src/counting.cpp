#include "subsum/counting.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace subsum {

const char* target_name(Target t) {
    switch (t) {
        case Target::MH: return "M";
        case Target::NH: return "NH";
        case Target::NmStar: return "Nmstar";
    }
    return "?";
}

WeightProfile profile_of(const PartitionType& t, const SubgroupSpec& sub) {
    const FiniteField& f = sub.field();
    WeightProfile out;
    out.coset_vars.assign(sub.m(), 0);
    for (size_t idx = 0; idx < t.c.size(); ++idx) {
        const uint32_t ci = t.c[idx];
        if (ci == 0) continue;
        const uint32_t weight = static_cast<uint32_t>(idx + 1);
        const FieldElement w = f.from_int(weight);
        if (w.v == 0)
            out.free_vars += ci;
        else
            out.coset_vars[sub.coset_index(w)] += ci;
    }
    return out;
}

Bigint diagonal_count(const FiniteField& field, const DiagonalSpec& spec, const Budget& budget) {
    const uint32_t q = field.q();
    const size_t n = spec.coeffs.size();
    if (n == 0 || spec.exps.size() != n)
        throw std::invalid_argument("diagonal_count: need matching nonempty coeffs/exps");
    for (auto a : spec.coeffs)
        if (a.v == 0 || !field.valid(a))
            throw std::invalid_argument("diagonal_count: coefficients must be nonzero");
    for (auto d : spec.exps)
        if (d < 1) throw std::invalid_argument("diagonal_count: exponents must be >= 1");
    budget.require_enum(static_cast<uint64_t>(n) * q * q);

    std::vector<Bigint> acc(q, 0);
    acc[0] = 1;
    std::vector<uint32_t> var_dist(q);
    for (size_t i = 0; i < n; ++i) {
        std::fill(var_dist.begin(), var_dist.end(), 0);
        const uint32_t lo = spec.zero_excluded ? 1 : 0;
        for (uint32_t x = lo; x < q; ++x)
            var_dist[field.mul(spec.coeffs[i], field.pow({x}, spec.exps[i])).v]++;
        std::vector<Bigint> next(q, 0);
        for (uint32_t v = 0; v < q; ++v) {
            if (acc[v] == 0) continue;
            for (uint32_t y = 0; y < q; ++y)
                if (var_dist[y]) next[field.add({v}, {y}).v] += acc[v] * var_dist[y];
        }
        acc = std::move(next);
    }
    return acc[spec.target.v];
}

SieveContext::SieveContext(const SubgroupSpec& sub, Budget budget)
    : sub_(&sub), budget_(budget) {}

const PackedDist& SieveContext::dist_for(const std::vector<uint32_t>& nvec) {
    {
        std::shared_lock lock(dist_mutex_);
        auto it = dist_cache_.find(nvec);
        if (it != dist_cache_.end()) return it->second;
    }
    std::unique_lock lock(dist_mutex_);
    // walk down to the deepest cached ancestor along the last nonzero axis
    std::vector<std::vector<uint32_t>> chain;
    std::vector<uint32_t> cur = nvec;
    while (dist_cache_.find(cur) == dist_cache_.end()) {
        chain.push_back(cur);
        uint32_t j = static_cast<uint32_t>(cur.size());
        while (j > 0 && cur[j - 1] == 0) --j;
        if (j == 0) {
            dist_cache_.emplace(cur, PackedDist::unit(field().q()));
            chain.pop_back();
            break;
        }
        cur[j - 1] -= 1;
    }
    while (!chain.empty()) {
        const std::vector<uint32_t>& nxt = chain.back();
        uint32_t j = static_cast<uint32_t>(nxt.size());
        while (j > 0 && nxt[j - 1] == 0) --j;
        std::vector<uint32_t> parent = nxt;
        parent[j - 1] -= 1;
        const PackedDist& base = dist_cache_.at(parent);
        auto support = sub_->coset(j - 1);
        const uint64_t used = conv_ops_used_.fetch_add(
            static_cast<uint64_t>(field().q()) * support.size() *
            std::max<uint32_t>(1, base.limbs()));
        budget_.require_conv(used);
        dist_cache_.emplace(nxt, base.convolved(field(), support));
        chain.pop_back();
    }
    return dist_cache_.at(nvec);
}

Bigint SieveContext::profile_count(const WeightProfile& prof, FieldElement b, Domain domain) {
    if (prof.coset_vars.size() != sub_->m())
        throw std::invalid_argument("profile_count: profile does not match subgroup index");
    const PackedDist& d = dist_for(prof.coset_vars);
    Bigint out = d.at(b.v);
    if (domain == Domain::subgroup) {
        for (uint32_t i = 0; i < prof.free_vars; ++i) out *= sub_->subgroup_size();
    } else {
        for (uint32_t i = 0; i < prof.free_vars; ++i) out *= (field().q() - 1);
        for (uint32_t i = 0; i < prof.bound_vars(); ++i) out *= sub_->m();
    }
    return out;
}

void SieveContext::check_range(uint32_t k, Target t) const {
    const uint32_t limit = (t == Target::NmStar) ? field().q() - 1 : sub_->subgroup_size();
    if (k > limit)
        throw std::invalid_argument("k = " + std::to_string(k) + " out of range (max " +
                                    std::to_string(limit) + " for target " + target_name(t) + ")");
}

// Signed multiplicities sum_{types with this profile} sign * N(c), keyed by
// (free_vars, coset_vars). The enumeration carries the profile and the
// denominator of N(c) incrementally.
const SieveContext::ProfileAggMap& SieveContext::aggregate_profiles(uint32_t k) {
    {
        std::shared_lock lock(agg_mutex_);
        auto it = agg_cache_.find(k);
        if (it != agg_cache_.end()) return it->second;
    }
    const FiniteField& f = field();
    const uint32_t m = sub_->m();
    ProfileAggMap agg;

    // class of each part size: m = free variable, otherwise the coset index
    std::vector<uint32_t> cls(k + 1, 0);
    for (uint32_t i = 1; i <= k; ++i) {
        const FieldElement w = f.from_int(i);
        cls[i] = (w.v == 0) ? m : sub_->coset_index(w);
    }

    const Bigint kfact = factorial(k);
    uint32_t free_vars = 0;
    std::vector<uint32_t> nvec(m, 0);

    auto leaf = [&](uint32_t cycles, const Bigint& denom) {
        Bigint n = exact_div(kfact, denom, "sieve N(c)");
        if ((k - cycles) % 2) n = -n;
        agg[{free_vars, nvec}] += n;
    };

    auto rec = [&](auto&& self, uint32_t part, uint32_t rem, uint32_t cycles,
                   const Bigint& denom) -> void {
        if (rem == 0) {
            leaf(cycles, denom);
            return;
        }
        if (part > k) return;
        uint32_t& slot = (cls[part] == m) ? free_vars : nvec[cls[part]];
        Bigint d = denom;
        uint32_t bumped = 0;
        for (uint32_t ci = 0; ci <= rem / part; ++ci) {
            const uint32_t left = rem - ci * part;
            if (ci > 0) {
                d *= static_cast<uint64_t>(part) * ci;
                ++slot;
                ++bumped;
            }
            if (left == 0 || left > part) self(self, part + 1, left, cycles + ci, d);
        }
        slot -= bumped;
    };
    rec(rec, 1, k, 0, Bigint(1));
    std::unique_lock lock(agg_mutex_);
    return agg_cache_.emplace(k, std::move(agg)).first->second;
}

std::vector<Bigint> SieveContext::table_profile(uint32_t k, Target t) {
    const uint32_t q = field().q();
    const ProfileAggMap& agg = aggregate_profiles(k);
    std::vector<Bigint> out(q, 0);
    for (const auto& [key, w] : agg) {
        const auto& [free_vars, nvec] = key;
        Bigint scale = w;
        if (t == Target::NmStar) {
            for (uint32_t i = 0; i < free_vars; ++i) scale *= (q - 1);
            uint32_t bound = std::accumulate(nvec.begin(), nvec.end(), 0u);
            for (uint32_t i = 0; i < bound; ++i) scale *= sub_->m();
        } else {
            for (uint32_t i = 0; i < free_vars; ++i) scale *= sub_->subgroup_size();
        }
        const PackedDist& d = dist_for(nvec);
        for (uint32_t b = 0; b < q; ++b) {
            Bigint v = d.at(b);
            if (v != 0) out[b] += scale * v;
        }
    }
    return out;
}

// D_k = sum_{i=1..k} (-1)^{i-1} (k-1)_{i-1} u_i * D_{k-i} in the group
// algebra Z[F_q], where u_i is the value distribution of one weight-i
// variable. D_k[b] is then exactly the signed cycle-type sum for
// N_target(k, b), with cost polynomial in k.
void SieveContext::extend_recurrence(int which, uint32_t K) {
    const FiniteField& f = field();
    const uint32_t q = f.q();
    const uint32_t m = sub_->m();
    const bool star = (which == 1);
    auto& D = rec_[which];
    if (D.empty()) {
        D.emplace_back(q, Bigint(0));
        D[0][0] = 1;
    }
    std::vector<Bigint> tmp(q);
    for (uint32_t k = static_cast<uint32_t>(D.size()); k <= K; ++k) {
        std::vector<Bigint> row(q, 0);
        Bigint coef = 1;  // (k-1)_{i-1}
        for (uint32_t i = 1; i <= k; ++i) {
            if (i > 1) coef *= (k - i + 1);
            const std::vector<Bigint>& prev = D[k - i];
            const bool negate = (i % 2 == 0);
            const uint32_t w = i % f.p();
            if (w == 0) {
                Bigint s = coef * (star ? (q - 1) : sub_->subgroup_size());
                if (negate) s = -s;
                for (uint32_t v = 0; v < q; ++v)
                    if (prev[v] != 0) row[v] += s * prev[v];
            } else {
                const uint32_t j = sub_->coset_index({w});
                auto support = sub_->coset(j);
                Bigint s = star ? coef * m : coef;
                if (negate) s = -s;
                for (uint32_t v = 0; v < q; ++v) tmp[v] = (prev[v] != 0) ? s * prev[v] : Bigint(0);
                const uint64_t used = conv_ops_used_.fetch_add(
                    static_cast<uint64_t>(q) * support.size() * (k / 16 + 1));
                budget_.require_conv(used);
                if (f.r() == 1) {
                    const uint32_t p = f.p();
                    for (uint32_t h : support)
                        for (uint32_t v = 0; v < q; ++v) {
                            if (tmp[v] == 0) continue;
                            uint32_t dst = v + h;
                            if (dst >= p) dst -= p;
                            row[dst] += tmp[v];
                        }
                } else {
                    for (uint32_t h : support)
                        for (uint32_t v = 0; v < q; ++v)
                            if (tmp[v] != 0) row[f.add({v}, {h}).v] += tmp[v];
                }
            }
        }
        D.push_back(std::move(row));
    }
}

std::vector<Bigint> SieveContext::table_recurrence(uint32_t k, Target t) {
    const int which = (t == Target::NmStar) ? 1 : 0;
    std::lock_guard lock(rec_mutex_);
    extend_recurrence(which, k);
    return rec_[which][k];
}

uint64_t sieve_profile_path_limit() { return 2'000'000; }

std::vector<Bigint> SieveContext::table(uint32_t k, Target t, SievePath path) {
    check_range(k, t);
    if (path == SievePath::automatic)
        path = (partition_count(k) <= sieve_profile_path_limit()) ? SievePath::profile
                                                                  : SievePath::recurrence;
    std::vector<Bigint> n_table = (path == SievePath::profile) ? table_profile(k, t)
                                                               : table_recurrence(k, t);
    if (t == Target::MH) {
        const Bigint kf = factorial(k);
        for (auto& v : n_table) v = exact_div(v, kf, "N_H = k! * M_H");
    }
    return n_table;
}

Bigint SieveContext::count(uint32_t k, FieldElement b, Target t, SievePath path) {
    check_range(k, t);
    if (!field().valid(b)) throw std::invalid_argument("b out of range");
    if (path == SievePath::automatic)
        path = (partition_count(k) <= sieve_profile_path_limit()) ? SievePath::profile
                                                                  : SievePath::recurrence;
    if (path == SievePath::recurrence) {
        std::vector<Bigint> row = table_recurrence(k, t);
        Bigint v = row[b.v];
        return (t == Target::MH) ? exact_div(v, factorial(k), "N_H = k! * M_H") : v;
    }
    // profile path, single b: read one entry per profile
    const ProfileAggMap& agg = aggregate_profiles(k);
    Bigint total = 0;
    for (const auto& [key, w] : agg) {
        WeightProfile prof{key.first, key.second};
        Bigint pc = profile_count(prof, b,
                                  t == Target::NmStar ? Domain::full_star : Domain::subgroup);
        total += w * pc;
    }
    return (t == Target::MH) ? exact_div(total, factorial(k), "N_H = k! * M_H") : total;
}

CountResult sieve_count(SieveContext& ctx, uint32_t k, FieldElement b, Target t, SievePath path) {
    CountResult r;
    r.value = ctx.count(k, b, t, path);
    r.method = "sieve";
    r.q = ctx.field().q();
    r.m = ctx.sub().m();
    r.k = k;
    r.b = b.v;
    r.target = t;
    return r;
}

std::vector<Bigint> brute_force_table(const SubgroupSpec& sub, uint32_t k, Target t,
                                      const Budget& budget) {
    const FiniteField& f = sub.field();
    const uint32_t q = f.q();

    std::vector<uint32_t> values;  // summands: H itself, or x^m over F_q*
    if (t == Target::NmStar) {
        values.reserve(q - 1);
        for (uint32_t x = 1; x < q; ++x) values.push_back(f.pow({x}, sub.m()).v);
    } else {
        auto h = sub.elements();
        values.assign(h.begin(), h.end());
    }
    const uint32_t n = static_cast<uint32_t>(values.size());
    if (k > n)
        throw std::invalid_argument("brute force: k exceeds the domain size");
    const Bigint work = binomial_uint(n, k);
    if (work > budget.enum_ops)
        throw budget_error("brute-force enumeration needs " + work.str() + " subsets, cap " +
                           std::to_string(budget.enum_ops));

    std::vector<Bigint> hist(q, 0);
    if (k == 0) {
        hist[0] = 1;
    } else {
        std::vector<uint32_t> idx(k), psum(k);
        std::iota(idx.begin(), idx.end(), 0);
        uint32_t dirty = 0;
        while (true) {
            for (uint32_t j = dirty; j < k; ++j) {
                const uint32_t prev = (j == 0) ? 0 : psum[j - 1];
                psum[j] = f.add({prev}, {values[idx[j]]}).v;
            }
            hist[psum[k - 1]] += 1;
            int32_t j = static_cast<int32_t>(k) - 1;
            while (j >= 0 && idx[j] == n - k + j) --j;
            if (j < 0) break;
            ++idx[j];
            for (uint32_t t2 = j + 1; t2 < k; ++t2) idx[t2] = idx[t2 - 1] + 1;
            dirty = static_cast<uint32_t>(j);
        }
    }
    if (t != Target::MH) {
        const Bigint kf = factorial(k);
        for (auto& v : hist) v *= kf;
    }
    return hist;
}

CountResult brute_force_count(const SubgroupSpec& sub, uint32_t k, FieldElement b, Target t,
                              const Budget& budget) {
    if (!sub.field().valid(b)) throw std::invalid_argument("b out of range");
    auto hist = brute_force_table(sub, k, t, budget);
    CountResult r;
    r.value = hist[b.v];
    r.method = "brute";
    r.q = sub.field().q();
    r.m = sub.m();
    r.k = k;
    r.b = b.v;
    r.target = t;
    return r;
}

}  // namespace subsum
