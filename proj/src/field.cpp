#include "subsum/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace subsum {

namespace {

// Dense polynomial over F_p, coefficients low-to-high, no trailing zeros
// except the zero polynomial itself.
using Poly = std::vector<uint32_t>;

void trim(Poly& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

// a mod m in place; m monic.
void poly_mod(Poly& a, const Poly& m, uint32_t p) {
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const uint32_t c = a.back();
        const size_t shift = a.size() - 1 - dm;
        if (c != 0) {
            for (size_t j = 0; j < dm; ++j)
                a[shift + j] = static_cast<uint32_t>(
                    (a[shift + j] + static_cast<uint64_t>(c) * (p - m[j] % p)) % p);
        }
        a.pop_back();
    }
    trim(a);
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<uint32_t>((out[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
    }
    return out;
}

Poly decode(uint32_t e, uint32_t p, uint32_t r) {
    Poly out(r, 0);
    for (uint32_t i = 0; i < r && e; ++i) {
        out[i] = e % p;
        e /= p;
    }
    trim(out);
    return out;
}

uint32_t encode(const Poly& a, uint32_t p) {
    uint64_t e = 0, mult = 1;
    for (uint32_t c : a) {
        e += c * mult;
        mult *= p;
    }
    return static_cast<uint32_t>(e);
}

bool is_zero(const Poly& a) { return a.size() == 1 && a[0] == 0; }

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible(const Poly& cand, uint32_t p) {
    const uint32_t deg = static_cast<uint32_t>(cand.size() - 1);
    for (uint32_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p;
        for (uint64_t enc = 0; enc < count; ++enc) {
            Poly div = decode(static_cast<uint32_t>(enc), p, d);
            div.resize(d + 1, 0);
            div[d] = 1;
            Poly rem = cand;
            poly_mod(rem, div, p);
            if (is_zero(rem)) return false;
        }
    }
    return true;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> out;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint32_t> divisors(uint32_t n) {
    std::vector<uint32_t> out;
    for (uint32_t d = 1; static_cast<uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteField::FiniteField(uint32_t p, uint32_t r, uint64_t size_cap) : p_(p), r_(r) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (r < 1) throw std::invalid_argument("extension degree r must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > size_cap)
            throw std::invalid_argument("q = p^r exceeds the size cap " + std::to_string(size_cap));
    }
    q_ = static_cast<uint32_t>(q);

    if (r == 1) {
        modulus_ = {0, 1};
    } else {
        // smallest monic irreducible by coefficient encoding
        bool found = false;
        for (uint32_t enc = 0; enc < q_ && !found; ++enc) {
            Poly cand = decode(enc, p, r);
            cand.resize(r + 1, 0);
            cand[r] = 1;
            if (irreducible(cand, p)) {
                modulus_ = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no irreducible modulus found");  // cannot happen
    }

    // bootstrap multiplication (polynomial mul mod modulus)
    auto mul0 = [&](uint32_t x, uint32_t y) -> uint32_t {
        if (x == 0 || y == 0) return 0;
        Poly prod = poly_mul(decode(x, p, r), decode(y, p, r), p);
        if (prod.size() > r) poly_mod(prod, modulus_, p);
        return encode(prod, p);
    };
    auto pow0 = [&](uint32_t x, uint64_t e) -> uint32_t {
        uint32_t acc = 1, base = x;
        while (e) {
            if (e & 1) acc = mul0(acc, base);
            base = mul0(base, base);
            e >>= 1;
        }
        return acc;
    };

    const uint32_t order = q_ - 1;
    const auto factors = prime_factors(order);
    uint32_t gen = 1;
    for (uint32_t g = 1; g < q_; ++g) {
        bool ok = true;
        for (uint32_t f : factors)
            if (pow0(g, order / f) == 1) { ok = false; break; }
        if (ok) { gen = g; break; }
    }

    exp_.assign(order, 1);
    for (uint32_t t = 1; t < order; ++t) exp_[t] = mul0(exp_[t - 1], gen);
    dlog_.assign(q_, 0);
    std::vector<bool> seen(q_, false);
    for (uint32_t t = 0; t < order; ++t) {
        if (seen[exp_[t]]) throw std::logic_error("generator order check failed");
        seen[exp_[t]] = true;
        dlog_[exp_[t]] = t;
    }

    trace_.assign(q_, 0);
    for (uint32_t x = 1; x < q_; ++x) {
        FieldElement acc{0}, y{x};
        for (uint32_t i = 0; i < r_; ++i) {
            // inline add/frobenius against partially built tables
            uint32_t s = 0, mult = 1, a = acc.v, b = y.v;
            for (uint32_t d = 0; d < r_; ++d) {
                s += ((a % p_) + (b % p_)) % p_ * mult;
                a /= p_;
                b /= p_;
                mult *= p_;
            }
            acc.v = s;
            y.v = exp_[static_cast<uint64_t>(dlog_[y.v]) * p_ % order];
        }
        if (acc.v >= p_) throw std::logic_error("trace left the prime subfield");
        trace_[x] = acc.v;
    }
}

FieldElement FiniteField::add(FieldElement x, FieldElement y) const {
    if (r_ == 1) return {(x.v + y.v) % p_};
    uint32_t s = 0, mult = 1, a = x.v, b = y.v;
    for (uint32_t d = 0; d < r_; ++d) {
        s += ((a % p_) + (b % p_)) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return {s};
}

FieldElement FiniteField::neg(FieldElement x) const {
    if (r_ == 1) return {x.v ? p_ - x.v : 0};
    uint32_t s = 0, mult = 1, a = x.v;
    for (uint32_t d = 0; d < r_; ++d) {
        uint32_t c = a % p_;
        s += (c ? p_ - c : 0) * mult;
        a /= p_;
        mult *= p_;
    }
    return {s};
}

FieldElement FiniteField::mul(FieldElement x, FieldElement y) const {
    if (x.v == 0 || y.v == 0) return {0};
    return {exp_[(static_cast<uint64_t>(dlog_[x.v]) + dlog_[y.v]) % (q_ - 1)]};
}

FieldElement FiniteField::inv(FieldElement x) const {
    if (x.v == 0) throw std::domain_error("inverse of zero");
    return {exp_[(q_ - 1 - dlog_[x.v]) % (q_ - 1)]};
}

FieldElement FiniteField::pow(FieldElement x, uint64_t e) const {
    if (x.v == 0) return e == 0 ? one() : zero();
    return {exp_[static_cast<uint64_t>(dlog_[x.v]) % (q_ - 1) * (e % (q_ - 1)) % (q_ - 1)]};
}

uint32_t FiniteField::dlog(FieldElement x) const {
    if (x.v == 0) throw std::domain_error("discrete log of zero");
    return dlog_[x.v];
}

FiniteField make_field(uint32_t p, uint32_t r, uint64_t size_cap) {
    return FiniteField(p, r, size_cap);
}

SubgroupSpec::SubgroupSpec(const FiniteField& field, uint32_t m) : field_(&field), m_(m) {
    const uint32_t order = field.q() - 1;
    if (m < 1 || order % m != 0)
        throw std::invalid_argument("m = " + std::to_string(m) + " does not divide q-1 = " +
                                    std::to_string(order));
    size_ = order / m;
    cosets_.assign(m, {});
    for (auto& c : cosets_) c.reserve(size_);
    auto exp = field.exp_table();
    for (uint32_t t = 0; t < order; ++t) cosets_[t % m].push_back(exp[t]);
    sum_ = field.zero();
    for (uint32_t h : cosets_[0]) sum_ = field.add(sum_, {h});
}

SubgroupSpec subgroup(const FiniteField& field, uint32_t m) { return SubgroupSpec(field, m); }

}  // namespace subsum
