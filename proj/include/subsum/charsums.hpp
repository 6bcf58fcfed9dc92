#pragma once

#include "subsum/budget.hpp"
#include "subsum/field.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace subsum {

// Multiplicative character chi_j(x) = e^{2 pi i j dlog(x)/(q-1)}, extended to
// 0 by chi_0(0) = 1 and chi_j(0) = 0 for j != 0.
struct Character {
    const FiniteField* field = nullptr;
    uint32_t j = 0;

    bool trivial() const { return j == 0; }
};

Character character(const FiniteField& field, uint32_t j);

uint32_t character_order(const Character& chi);

std::complex<double> eval_char(const Character& chi, FieldElement x);

// g_a(chi) = sum_t chi(t) zeta^{Tr(at)}, zeta = e^{2 pi i / p}, summed over
// all of F_q (so the zero conventions above apply at t = 0).
std::complex<double> gauss_sum(const FiniteField& field, FieldElement a, const Character& chi);

enum class JacobiKind { J, J0, Jstar, J0star };

// Direct summation over the hyperplane y_1+...+y_n = 1 (J, Jstar) or = 0
// (J0, J0star); the starred kinds skip terms with any y_i = 0. Cost q^{n-1},
// checked against budget.sum_ops.
std::complex<double> jacobi(JacobiKind kind, std::span<const Character> chis,
                            const Budget& budget = {});

struct FamilyResult {
    std::string family;
    uint64_t instances = 0;
    double max_dev = 0.0;  // worst absolute deviation seen
    double tol = 0.0;
    bool pass = true;
};

struct IdentityReport {
    uint32_t q = 0, d = 0, n = 0;
    std::vector<FamilyResult> families;
    double max_dev = 0.0;
    double tol = 0.0;
    bool pass = true;
};

// Checks, by direct summation, every identity/magnitude family over all
// n-tuples of characters with chi^d = 1: the four closed-form case tables,
// the Gauss-Jacobi factorization, the trivial-product reduction, the
// magnitude statements, and |J| <= q^{(n-1)/2}. Tolerance 1e-9 * q^{n-1}.
IdentityReport verify_charsum_identities(const FiniteField& field, uint32_t d, uint32_t n,
                                         const Budget& budget = {});

// Worst |  |g(chi)| - sqrt(q)  | over nontrivial chi.
double max_gauss_modulus_deviation(const FiniteField& field);

// Worst deviation of #{x : x^d = a} from sum_{chi^d = 1} chi(a), over all
// d | q-1 and all a in F_q (a = 0 included).
double max_power_count_deviation(const FiniteField& field);

}  // namespace subsum
