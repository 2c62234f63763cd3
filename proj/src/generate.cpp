#include "pwamin/generate.hpp"

#include "pwamin/errors.hpp"

namespace pwamin {

namespace {

std::vector<Vec<Rational>> random_rows(Pcg32& rng, std::size_t n, std::size_t m) {
    std::vector<Vec<Rational>> rows(m);
    for (auto& row : rows) {
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) row.push_back(Rational(rng.range(-3, 3)));
    }
    return rows;
}

// Make every column carry both signs or none. A single-signed column
// with two or more nonzeros gets one of them negated; with exactly one
// nonzero that entry is zeroed (no sign partner is possible there).
void fix_column_signs(Pcg32& rng, std::vector<Vec<Rational>>& rows, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> nonzero;
        bool has_neg = false, has_pos = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            int s = rows[i][j].sign();
            if (s != 0) nonzero.push_back(i);
            if (s < 0) has_neg = true;
            if (s > 0) has_pos = true;
        }
        if (has_neg == has_pos) continue;
        if (nonzero.size() >= 2) {
            std::size_t pick = nonzero[rng.bounded(static_cast<std::uint32_t>(nonzero.size()))];
            rows[pick][j] = -rows[pick][j];
        } else {
            rows[nonzero.front()][j] = Rational(0);
        }
    }
}

} // namespace

PwaFunction<Rational> generate_random(std::size_t n, std::size_t m, std::uint64_t seed,
                                      GenProfile profile) {
    if (n < 1 || m < 1) throw PreconditionError("need n >= 1 and m >= 1");
    Pcg32 rng(seed);

    std::vector<Vec<Rational>> rows;
    switch (profile) {
        case GenProfile::Unrestricted:
            rows = random_rows(rng, n, m);
            break;
        case GenProfile::SignConsistentOnly:
            rows = random_rows(rng, n, m);
            fix_column_signs(rng, rows, n);
            break;
        case GenProfile::RintConsistent: {
            // pick positive weights first, then close the last row so the
            // weighted row sum vanishes: 0 = sum_i w_i a_i with all w_i > 0
            std::vector<Rational> w;
            w.reserve(m);
            for (std::size_t i = 0; i < m; ++i) w.push_back(Rational(rng.range(1, 4)));
            rows = random_rows(rng, n, m - 1);
            Vec<Rational> last(n, Rational(0));
            for (std::size_t j = 0; j < n; ++j) {
                Rational acc(0);
                for (std::size_t i = 0; i + 1 < m; ++i) acc += w[i] * rows[i][j];
                last[j] = -acc / w[m - 1];
            }
            rows.push_back(std::move(last));
            break;
        }
    }

    Vec<Rational> b;
    b.reserve(m);
    for (std::size_t i = 0; i < m; ++i) b.push_back(Rational(rng.range(-3, 3)));
    return PwaFunction<Rational>(std::move(rows), std::move(b));
}

} // namespace pwamin
