#pragma once

#include "subsum/bigint.hpp"
#include "subsum/budget.hpp"
#include "subsum/combinat.hpp"
#include "subsum/dist.hpp"
#include "subsum/field.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace subsum {

enum class Target { MH, NH, NmStar };
enum class Domain { subgroup, full_star };

// Evaluation strategy for the sieve sum. `profile` enumerates cycle types and
// aggregates signed multiplicities per weight profile (one convolution per
// profile); `recurrence` evaluates the same sum through the Newton identity
// for the cycle-index series, whose cost is polynomial in k. `automatic`
// switches on p(k).
enum class SievePath { automatic, profile, recurrence };

const char* target_name(Target t);

// Reduction of a cycle type to what the diagonal count depends on: weights
// divisible by p free their variable, every other weight i pins its variable
// to the coset of i*1.
struct WeightProfile {
    uint32_t free_vars = 0;
    std::vector<uint32_t> coset_vars;  // length m, count per coset index

    uint32_t bound_vars() const {
        uint32_t s = 0;
        for (uint32_t n : coset_vars) s += n;
        return s;
    }
    uint32_t total_vars() const { return free_vars + bound_vars(); }
};

WeightProfile profile_of(const PartitionType& t, const SubgroupSpec& sub);

// Weighted diagonal equation a_1 x_1^{d_1} + ... + a_n x_n^{d_n} = b with
// x_i ranging over F_q* (zero_excluded) or F_q.
struct DiagonalSpec {
    std::vector<FieldElement> coeffs;
    std::vector<uint32_t> exps;
    FieldElement target{0};
    bool zero_excluded = true;
};

// Exact solution count by left-fold convolution of per-variable value
// distributions. Work is n*q*q, checked against budget.enum_ops.
Bigint diagonal_count(const FiniteField& field, const DiagonalSpec& spec,
                      const Budget& budget = {});

struct CountResult {
    Bigint value;
    std::string method;
    uint32_t q = 0, m = 0, k = 0, b = 0;
    Target target = Target::MH;
};

// Shared evaluation state for one (field, subgroup) pair: the memoized
// coset-profile distributions and the recurrence tables. Instances of
// sieve_count on one context may run concurrently; the caches do insert-once
// writes under a lock and are never mutated afterwards.
class SieveContext {
public:
    explicit SieveContext(const SubgroupSpec& sub, Budget budget = {});

    const FiniteField& field() const { return sub_->field(); }
    const SubgroupSpec& sub() const { return *sub_; }

    Bigint count(uint32_t k, FieldElement b, Target t, SievePath path = SievePath::automatic);
    std::vector<Bigint> table(uint32_t k, Target t, SievePath path = SievePath::automatic);

    // |H|^f * #solutions over the cosets (subgroup domain), or the same
    // scaled by m^{free+bound} (full_star domain).
    Bigint profile_count(const WeightProfile& prof, FieldElement b, Domain domain);

    const Budget& budget() const { return budget_; }

private:
    const SubgroupSpec* sub_;
    Budget budget_;

    const PackedDist& dist_for(const std::vector<uint32_t>& nvec);
    std::map<std::vector<uint32_t>, PackedDist> dist_cache_;
    std::shared_mutex dist_mutex_;
    std::atomic<uint64_t> conv_ops_used_{0};

    // signed multiplicity per profile; target-independent, cached per k
    using ProfileAggMap = std::map<std::pair<uint32_t, std::vector<uint32_t>>, Bigint>;
    const ProfileAggMap& aggregate_profiles(uint32_t k);
    std::map<uint32_t, ProfileAggMap> agg_cache_;
    std::shared_mutex agg_mutex_;

    // Newton-recurrence tables: rec_[0] for the subgroup weights (N_H),
    // rec_[1] for the full-star weights (N_m*).
    std::vector<std::vector<Bigint>> rec_[2];
    std::mutex rec_mutex_;
    void extend_recurrence(int which, uint32_t K);

    std::vector<Bigint> table_profile(uint32_t k, Target t);
    std::vector<Bigint> table_recurrence(uint32_t k, Target t);
    void check_range(uint32_t k, Target t) const;
};

// Convenience wrappers returning the full result record.
CountResult sieve_count(SieveContext& ctx, uint32_t k, FieldElement b, Target t,
                        SievePath path = SievePath::automatic);

// Exhaustive oracle: enumerates k-subsets (of H, or of F_q* with the m-th
// power map applied) and scales by k! for the ordered targets. Work is
// C(n, k), checked against budget.enum_ops.
std::vector<Bigint> brute_force_table(const SubgroupSpec& sub, uint32_t k, Target t,
                                      const Budget& budget = {});
CountResult brute_force_count(const SubgroupSpec& sub, uint32_t k, FieldElement b, Target t,
                              const Budget& budget = {});

// Number of cycle types of S_k, used for the automatic path switch.
uint64_t sieve_profile_path_limit();

}  // namespace subsum
