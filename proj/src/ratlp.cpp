/*
 * Copyright 2026 The pabisim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pabisim/ratlp.hpp"

#include <gmp.h>

#include "pabisim/errors.hpp"

namespace pabisim {

// Phase-1 simplex with Bland's least-index rule, minimizing the sum of one
// artificial variable per row; the system is feasible iff the optimum is
// zero. Artificial columns never (re)enter the basis, which cannot flip
// the verdict: an artificial-free feasible point keeps them at zero.
//
// The tableau is kept fraction-free: every input row is scaled to
// integers, and pivots use the two-term determinant update
//     T'[i][j] = (T[i][j]*T[r][c] - T[i][c]*T[r][j]) / D
// where D is the previous pivot (initially 1). All entries stay integral
// minors of the start matrix, so no gcd normalization is ever needed; the
// rational tableau is T/D with D > 0 throughout, because simplex only
// pivots on positive entries.
LpOutcome feasible(const LinSystem& sys) {
    const size_t n = static_cast<size_t>(sys.num_vars);
    const size_t m = sys.rows.size();
    for (const auto& row : sys.rows)
        if (row.coeffs.size() != n) throw ShapeError("row width disagrees with variable count");

    if (m == 0) return std::vector<Rat>(n, Rat::zero());

    // Columns [0,n) real variables, [n,n+m) artificials, last rhs.
    const size_t width = n + m + 1;
    std::vector<std::vector<mpz_class>> t(m + 1, std::vector<mpz_class>(width));
    auto& obj = t[m];
    std::vector<size_t> basis(m);

    mpz_class scale, tmp;
    for (size_t i = 0; i < m; ++i) {
        // Row lcm of denominators, negated when the right side is negative.
        scale = 1;
        for (const Rat& c : sys.rows[i].coeffs)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.mpq().get_den().get_mpz_t());
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
                sys.rows[i].rhs.mpq().get_den().get_mpz_t());
        if (sys.rows[i].rhs.sign() < 0) mpz_neg(scale.get_mpz_t(), scale.get_mpz_t());

        for (size_t j = 0; j < n; ++j) {
            const mpq_class& q = sys.rows[i].coeffs[j].mpq();
            mpz_divexact(tmp.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
            mpz_mul(t[i][j].get_mpz_t(), tmp.get_mpz_t(), q.get_num().get_mpz_t());
        }
        const mpq_class& q = sys.rows[i].rhs.mpq();
        mpz_divexact(tmp.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
        mpz_mul(t[i][width - 1].get_mpz_t(), tmp.get_mpz_t(), q.get_num().get_mpz_t());

        // The signed scale already made the right side nonnegative, so the
        // identity artificial block starts the feasible basis.
        t[i][n + i] = 1;
        basis[i] = n + i;
    }

    // Reduced costs priced out for the all-artificial basis.
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < m; ++i)
            mpz_sub(obj[j].get_mpz_t(), obj[j].get_mpz_t(), t[i][j].get_mpz_t());
    for (size_t i = 0; i < m; ++i)
        mpz_sub(obj[width - 1].get_mpz_t(), obj[width - 1].get_mpz_t(),
                t[i][width - 1].get_mpz_t());

    mpz_class det(1), lhs, rhs, pivot;
    for (;;) {
        // Bland: entering = least real column with negative reduced cost.
        size_t enter = width;
        for (size_t j = 0; j < n; ++j) {
            if (mpz_sgn(obj[j].get_mpz_t()) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) break;

        // Ratio test on T[i][rhs]/T[i][enter] by cross-multiplication;
        // ties broken by least basis variable index.
        size_t leave = m;
        for (size_t i = 0; i < m; ++i) {
            if (mpz_sgn(t[i][enter].get_mpz_t()) <= 0) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            mpz_mul(lhs.get_mpz_t(), t[i][width - 1].get_mpz_t(), t[leave][enter].get_mpz_t());
            mpz_mul(rhs.get_mpz_t(), t[leave][width - 1].get_mpz_t(), t[i][enter].get_mpz_t());
            int c = mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
            if (c < 0 || (c == 0 && basis[i] < basis[leave])) leave = i;
        }
        // The phase-1 objective is bounded below by zero, so an improving
        // column always admits a leaving row.
        if (leave == m) throw Error("phase-1 simplex lost boundedness");

        // Fraction-free pivot; the pivot row itself is left unchanged.
        mpz_set(pivot.get_mpz_t(), t[leave][enter].get_mpz_t());
        for (size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            auto& row = t[i];
            const auto& prow = t[leave];
            if (mpz_sgn(row[enter].get_mpz_t()) == 0) {
                // Only the global rescale by pivot/det applies.
                for (size_t j = 0; j < width; ++j) {
                    if (mpz_sgn(row[j].get_mpz_t()) == 0) continue;
                    mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), pivot.get_mpz_t());
                    mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), det.get_mpz_t());
                }
                continue;
            }
            mpz_set(lhs.get_mpz_t(), row[enter].get_mpz_t());
            for (size_t j = 0; j < width; ++j) {
                mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), pivot.get_mpz_t());
                if (mpz_sgn(prow[j].get_mpz_t()) != 0) {
                    mpz_mul(tmp.get_mpz_t(), lhs.get_mpz_t(), prow[j].get_mpz_t());
                    mpz_sub(row[j].get_mpz_t(), row[j].get_mpz_t(), tmp.get_mpz_t());
                }
                if (mpz_sgn(row[j].get_mpz_t()) != 0)
                    mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), det.get_mpz_t());
            }
        }
        mpz_set(det.get_mpz_t(), pivot.get_mpz_t());
        basis[leave] = enter;
    }

    // Optimum value is -obj[rhs]/det; nonzero means an artificial is stuck.
    if (mpz_sgn(obj[width - 1].get_mpz_t()) != 0) return std::nullopt;

    std::vector<Rat> witness(n, Rat::zero());
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] >= n) continue;
        mpq_class value(t[i][width - 1], det);
        value.canonicalize();
        witness[basis[i]] = Rat::from_mpq(std::move(value));
    }
    return witness;
}

}  // namespace pabisim
