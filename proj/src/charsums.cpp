#include "subsum/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace subsum {

namespace {

using cplx = std::complex<double>;

// chi_j over the whole field with the zero convention baked in.
std::vector<cplx> char_table(const FiniteField& f, uint32_t j) {
    const uint32_t q = f.q();
    const uint32_t order = q - 1;
    std::vector<cplx> val(q);
    val[0] = (j == 0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    for (uint32_t t = 0; t < order; ++t) {
        const uint64_t e = static_cast<uint64_t>(j) % order * t % order;
        const double arg = 2.0 * std::numbers::pi * static_cast<double>(e) / order;
        val[f.exp(t).v] = cplx(std::cos(arg), std::sin(arg));
    }
    return val;
}

std::vector<cplx> zeta_trace_table(const FiniteField& f) {
    const uint32_t q = f.q();
    std::vector<cplx> zt(q);
    for (uint32_t t = 0; t < q; ++t) {
        const double arg = 2.0 * std::numbers::pi * f.trace({t}) / f.p();
        zt[t] = cplx(std::cos(arg), std::sin(arg));
    }
    return zt;
}

struct QuadSums {
    cplx J{}, J0{}, Jstar{}, J0star{};
};

// All four Jacobi-type sums for one character tuple in a single sweep over
// the q^{n-1} free coordinates.
QuadSums jacobi_all(const FiniteField& f, const std::vector<const std::vector<cplx>*>& tabs) {
    const uint32_t q = f.q();
    const size_t n = tabs.size();
    QuadSums out;
    const std::vector<cplx>& last = *tabs[n - 1];

    std::vector<uint32_t> y(n >= 1 ? n - 1 : 0, 0);
    std::vector<uint32_t> psum(n, 0);  // psum[i+1] = y_0 + ... + y_i (field)
    std::vector<cplx> pprod(n, cplx(1.0, 0.0));
    std::vector<uint32_t> pzero(n, 0);  // zero coordinates so far

    size_t refresh = 0;
    while (true) {
        for (size_t i = refresh; i + 1 < n; ++i) {
            psum[i + 1] = f.add({psum[i]}, {y[i]}).v;
            pprod[i + 1] = pprod[i] * (*tabs[i])[y[i]];
            pzero[i + 1] = pzero[i] + (y[i] == 0 ? 1 : 0);
        }
        const uint32_t s = psum[n - 1];
        const cplx prod = pprod[n - 1];
        const bool prefix_zero = pzero[n - 1] != 0;

        const uint32_t y_one = f.sub({1}, {s}).v;
        const uint32_t y_zero = f.neg({s}).v;
        out.J += prod * last[y_one];
        out.J0 += prod * last[y_zero];
        if (!prefix_zero) {
            if (y_one != 0) out.Jstar += prod * last[y_one];
            if (y_zero != 0) out.J0star += prod * last[y_zero];
        }

        // odometer over the free coordinates
        size_t pos = n >= 1 ? n - 1 : 0;
        while (pos > 0 && y[pos - 1] == q - 1) {
            y[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        ++y[pos - 1];
        refresh = pos - 1;
    }
    return out;
}

cplx jacobi_pick(const QuadSums& s, JacobiKind kind) {
    switch (kind) {
        case JacobiKind::J: return s.J;
        case JacobiKind::J0: return s.J0;
        case JacobiKind::Jstar: return s.Jstar;
        case JacobiKind::J0star: return s.J0star;
    }
    return {};
}

uint64_t ipow_capped(uint64_t base, uint32_t e, uint64_t cap) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (r > cap / std::max<uint64_t>(base, 1)) return cap + 1;
        r *= base;
    }
    return r;
}

}  // namespace

Character character(const FiniteField& field, uint32_t j) {
    return Character{&field, j % (field.q() - 1)};
}

uint32_t character_order(const Character& chi) {
    const uint32_t order = chi.field->q() - 1;
    return order / std::gcd(chi.j, order);
}

std::complex<double> eval_char(const Character& chi, FieldElement x) {
    const FiniteField& f = *chi.field;
    if (x.v == 0) return chi.j == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    const uint32_t order = f.q() - 1;
    const uint64_t e = static_cast<uint64_t>(chi.j) * f.dlog(x) % order;
    const double arg = 2.0 * std::numbers::pi * static_cast<double>(e) / order;
    return cplx(std::cos(arg), std::sin(arg));
}

std::complex<double> gauss_sum(const FiniteField& field, FieldElement a, const Character& chi) {
    auto tab = char_table(field, chi.j);
    auto zt = zeta_trace_table(field);
    cplx g{};
    for (uint32_t t = 0; t < field.q(); ++t) g += tab[t] * zt[field.mul(a, {t}).v];
    return g;
}

std::complex<double> jacobi(JacobiKind kind, std::span<const Character> chis,
                            const Budget& budget) {
    if (chis.empty()) throw std::invalid_argument("jacobi: need at least one character");
    const FiniteField& f = *chis[0].field;
    budget.require_sum(ipow_capped(f.q(), static_cast<uint32_t>(chis.size() - 1),
                                   budget.sum_ops));
    std::vector<std::vector<cplx>> tables;
    tables.reserve(chis.size());
    for (const auto& chi : chis) tables.push_back(char_table(f, chi.j));
    std::vector<const std::vector<cplx>*> tabs;
    for (auto& t : tables) tabs.push_back(&t);
    return jacobi_pick(jacobi_all(f, tabs), kind);
}

IdentityReport verify_charsum_identities(const FiniteField& field, uint32_t d, uint32_t n,
                                         const Budget& budget) {
    const uint32_t q = field.q();
    const uint32_t order = q - 1;
    if (n < 1) throw std::invalid_argument("verify_charsum_identities: n >= 1");
    if (d < 1) throw std::invalid_argument("verify_charsum_identities: d >= 1");

    const uint32_t g = std::gcd(d, order);
    const uint32_t step = order / g;
    std::vector<uint32_t> js(g);
    for (uint32_t i = 0; i < g; ++i) js[i] = i * step;

    budget.require_sum(ipow_capped(g, n, budget.sum_ops / std::max<uint32_t>(q, 1)) *
                       std::max<uint32_t>(q, 1));

    // per-character tables and Gauss sums, indexed by position in js
    std::vector<std::vector<cplx>> tabs(g);
    std::vector<cplx> gsum(g);
    for (uint32_t i = 0; i < g; ++i) {
        tabs[i] = char_table(field, js[i]);
        gsum[i] = gauss_sum(field, field.one(), character(field, js[i]));
    }
    // chi(-1) per character
    std::vector<cplx> chi_m1(g);
    const FieldElement minus1 = field.neg(field.one());
    for (uint32_t i = 0; i < g; ++i) chi_m1[i] = tabs[i][minus1.v];

    IdentityReport rep;
    rep.q = q;
    rep.d = d;
    rep.n = n;
    rep.tol = 1e-9 * std::pow(static_cast<double>(q), static_cast<double>(n) - 1.0);

    enum Fam {
        f_J_cases, f_J0_cases, f_Jstar_cases, f_J0star_cases,
        f_gauss_jacobi, f_trivial_product_reduction, f_magnitudes, f_j_bound,
        fam_count
    };
    const char* names[fam_count] = {
        "J case table",  "J0 case table",  "J* case table",  "J0* case table",
        "gauss-jacobi factorization", "trivial-product reduction",
        "jacobi magnitudes", "|J| <= q^{(n-1)/2}",
    };
    rep.families.resize(fam_count);
    for (int i = 0; i < fam_count; ++i) rep.families[i].family = names[i];
    auto note = [&](Fam fam, double dev) {
        auto& fr = rep.families[fam];
        fr.instances++;
        fr.max_dev = std::max(fr.max_dev, dev);
    };

    auto jacobi_of = [&](const std::vector<uint32_t>& positions, JacobiKind kind) -> cplx {
        std::vector<const std::vector<cplx>*> t;
        for (uint32_t p : positions) t.push_back(&tabs[p]);
        return jacobi_pick(jacobi_all(field, t), kind);
    };

    std::vector<uint32_t> tuple(n, 0);
    while (true) {
        std::vector<const std::vector<cplx>*> t(n);
        for (uint32_t i = 0; i < n; ++i) t[i] = &tabs[tuple[i]];
        const QuadSums s = jacobi_all(field, t);

        uint32_t e = 0;
        uint64_t jsum = 0;
        std::vector<uint32_t> nontrivial;
        for (uint32_t i = 0; i < n; ++i) {
            if (js[tuple[i]] == 0) ++e;
            else nontrivial.push_back(tuple[i]);
            jsum += js[tuple[i]];
        }
        const bool product_trivial = (jsum % order) == 0;
        const double qd = q;

        // Prop 2.9 case tables
        if (e == n) {
            note(f_J_cases, std::abs(s.J - std::pow(qd, n - 1.0)));
            note(f_J0_cases, std::abs(s.J0 - std::pow(qd, n - 1.0)));
            note(f_Jstar_cases,
                 std::abs(s.Jstar - (std::pow(qd - 1, static_cast<double>(n)) -
                                     ((n % 2) ? -1.0 : 1.0)) / qd));
            note(f_J0star_cases,
                 std::abs(s.J0star - (std::pow(qd - 1, static_cast<double>(n)) -
                                      (qd - 1) * ((n % 2) ? 1.0 : -1.0)) / qd));
        } else {
            if (e >= 1) {
                note(f_J_cases, std::abs(s.J));
                note(f_J0_cases, std::abs(s.J0));
            } else {
                if (!product_trivial) {
                    note(f_J0_cases, std::abs(s.J0));
                } else {
                    std::vector<uint32_t> prefix(tuple.begin(), tuple.end() - 1);
                    const cplx expected =
                        chi_m1[tuple[n - 1]] * (qd - 1) * jacobi_of(prefix, JacobiKind::J);
                    note(f_J0_cases, std::abs(s.J0 - expected));
                }
            }
            const double sgn = (e % 2) ? -1.0 : 1.0;
            note(f_Jstar_cases, std::abs(s.Jstar - sgn * jacobi_of(nontrivial, JacobiKind::J)));
            note(f_J0star_cases, std::abs(s.J0star - sgn * jacobi_of(nontrivial, JacobiKind::J0)));
        }

        if (e == 0) {
            cplx gprod(1.0, 0.0);
            for (uint32_t i = 0; i < n; ++i) gprod *= gsum[tuple[i]];
            if (!product_trivial) {
                // g(chi_1)...g(chi_n) = J(chi_1,...,chi_n) g(chi_1...chi_n)
                const uint32_t jprod = static_cast<uint32_t>(jsum % order);
                const cplx gprod_char = gauss_sum(field, field.one(), character(field, jprod));
                note(f_gauss_jacobi, std::abs(gprod - s.J * gprod_char));
                note(f_magnitudes, std::abs(std::abs(s.J) - std::pow(qd, (n - 1.0) / 2.0)));
            } else if (n >= 2) {
                std::vector<uint32_t> prefix(tuple.begin(), tuple.end() - 1);
                const cplx jpre = jacobi_of(prefix, JacobiKind::J);
                note(f_trivial_product_reduction,
                     std::abs(gprod - chi_m1[tuple[n - 1]] * qd * jpre));
                note(f_trivial_product_reduction,
                     std::abs(s.J + chi_m1[tuple[n - 1]] * jpre));
                note(f_magnitudes,
                     std::abs(std::abs(s.J0) - (qd - 1) * std::pow(qd, n / 2.0 - 1.0)));
                note(f_magnitudes, std::abs(std::abs(s.J) - std::pow(qd, n / 2.0 - 1.0)));
            }
            note(f_j_bound, std::max(0.0, std::abs(s.J) - std::pow(qd, (n - 1.0) / 2.0)));
        }

        uint32_t pos = n;
        while (pos > 0 && tuple[pos - 1] == g - 1) tuple[--pos] = 0;
        if (pos == 0) break;
        ++tuple[pos - 1];
    }

    for (auto& fr : rep.families) {
        fr.tol = rep.tol;
        fr.pass = fr.max_dev <= fr.tol;
        rep.max_dev = std::max(rep.max_dev, fr.max_dev);
        rep.pass = rep.pass && fr.pass;
    }
    return rep;
}

double max_gauss_modulus_deviation(const FiniteField& field) {
    const uint32_t q = field.q();
    const uint32_t order = q - 1;
    auto zt = zeta_trace_table(field);
    // reorder by discrete log so chi_j(exp(t)) is a root-of-unity power
    std::vector<cplx> zt_by_dlog(order);
    for (uint32_t t = 0; t < order; ++t) zt_by_dlog[t] = zt[field.exp(t).v];
    std::vector<cplx> roots(order);
    for (uint32_t t = 0; t < order; ++t) {
        const double arg = 2.0 * std::numbers::pi * t / order;
        roots[t] = cplx(std::cos(arg), std::sin(arg));
    }
    const double sq = std::sqrt(static_cast<double>(q));
    double worst = 0.0;
    for (uint32_t j = 1; j < order; ++j) {
        cplx gsum{};
        uint64_t e = 0;
        for (uint32_t t = 0; t < order; ++t) {
            gsum += roots[e] * zt_by_dlog[t];
            e += j;
            if (e >= order) e -= order;
        }
        worst = std::max(worst, std::abs(std::abs(gsum) - sq));
    }
    return worst;
}

double max_power_count_deviation(const FiniteField& field) {
    const uint32_t q = field.q();
    const uint32_t order = q - 1;
    double worst = 0.0;
    std::vector<uint32_t> counts(q);
    for (uint32_t d : divisors(order)) {
        std::fill(counts.begin(), counts.end(), 0);
        for (uint32_t x = 0; x < q; ++x) counts[field.pow({x}, d).v]++;
        std::vector<std::vector<cplx>> tabs;
        for (uint32_t i = 0; i < d; ++i) tabs.push_back(char_table(field, i * (order / d)));
        for (uint32_t a = 0; a < q; ++a) {
            cplx rhs{};
            for (const auto& tab : tabs) rhs += tab[a];
            worst = std::max(worst, std::abs(rhs - cplx(counts[a], 0.0)));
        }
    }
    return worst;
}

}  // namespace subsum
