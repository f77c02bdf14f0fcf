// Copyright 2026 The owpb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <initializer_list>

#include "gtest/gtest.h"
#include "owpb/owpb.hpp"
#include "test_util.hpp"

using namespace owpb;
using namespace owpb::test;

namespace {

SignMatrix sign_matrix(std::initializer_list<std::initializer_list<int>> rows) {
    SignMatrix out(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto &row : rows) {
        std::size_t c = 0;
        for (int v : row) {
            out(r, c++) = static_cast<Sign>(v);
        }
        ++r;
    }
    return out;
}

SignVector signs(std::vector<Sign> v) {
    return SignVector(std::move(v));
}

/// n and a with 2n + a = m, n chosen at random.
Pattern random_pattern_of_size(std::mt19937_64 &rng, std::size_t m) {
    const std::size_t n = rng() % (m / 2 + 1);
    return random_pattern(rng, n, m - 2 * n);
}

/// Pattern whose pure auxiliaries are pairwise non-adjacent.
Pattern random_edgeless_aux_pattern(std::mt19937_64 &rng, std::size_t n, std::size_t a) {
    std::vector<Edge> edges;
    for (const Edge &e : random_edges(rng, 2 * n + a)) {
        const bool u_aux = e.u > n && e.u <= n + a;
        const bool v_aux = e.v > n && e.v <= n + a;
        if (!(u_aux && v_aux)) {
            edges.push_back(e);
        }
    }
    return Pattern(n, a, edges, random_angles(rng, n + a));
}

}  // namespace

TEST(epsilon_phase, examples) {
    EXPECT_EQ(epsilon_phase(line3(1.7, 0.3), 1), Complex(1.0, 0.0));
    EXPECT_LE(std::abs(epsilon_phase(line2(kPi), 2) - Complex(-1.0, 0.0)), 1e-15);
    const Pattern p(2, 0, {}, {kPi / 2, kPi});
    EXPECT_LE(std::abs(epsilon_phase(p, 4) - Complex(0.0, 1.0)), 1e-15);
    EXPECT_THROW(epsilon_phase(p, 0), std::out_of_range);
    EXPECT_THROW(epsilon_phase(p, 5), std::out_of_range);
}

TEST(epsilon_phase, unit_modulus) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const Pattern p = random_pattern(rng, 1 + rng() % 3, 0);
        for (std::uint64_t i = 1; i <= (std::uint64_t{1} << p.n()); ++i) {
            EXPECT_LE(std::abs(std::abs(epsilon_phase(p, i)) - 1.0), 1e-15);
        }
    }
}

TEST(phase_vector, examples) {
    EXPECT_EQ(phase_vector(line2(0.4)).expand(), std::vector<Complex>{Complex(1.0, 0.0)});
    EXPECT_EQ(phase_vector(line3(0.4, 0.0)).expand(), (std::vector<Complex>{1.0, 1.0}));
    const std::vector<Complex> phi = phase_vector(Pattern(0, 2, {}, {0.0, kPi})).expand();
    ASSERT_EQ(phi.size(), 4U);
    const double expected[] = {1, -1, 1, -1};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LE(std::abs(phi[k] - expected[k]), 1e-15);
    }
}

TEST(sign_pattern_matrix, examples) {
    EXPECT_EQ(sign_pattern_matrix(line3(0, 0), 1).signs, sign_matrix({{1, 1}, {1, -1}}));
    EXPECT_EQ(sign_pattern_matrix(line3(0, 0), 2).signs, sign_matrix({{1, -1}, {1, 1}}));
    EXPECT_EQ(sign_pattern_matrix(triangle_line3(0, 0), 1).signs, sign_matrix({{1, 1}, {1, -1}}));
    EXPECT_EQ(sign_pattern_matrix(triangle_line3(0, 0), 2).signs, sign_matrix({{1, -1}, {-1, -1}}));
    const Pattern edgeless = graph_pattern(2, 6, {});
    for (std::uint64_t i = 1; i <= 4; ++i) {
        const SignPatternMatrix b = sign_pattern_matrix(edgeless, i);
        EXPECT_EQ(b.signs, SignMatrix(4, 4));
        EXPECT_EQ(b.column, i);
    }
}

TEST(sign_pattern_matrix, errors) {
    EXPECT_THROW(sign_pattern_matrix(line3(0, 0), 3), std::out_of_range);
    Limits small;
    small.sign_matrix_max_log2 = 1;
    EXPECT_THROW(sign_pattern_matrix(line3(0, 0), 1, small), CapExceeded);
}

TEST(sign_pattern_matrix, diagonal_construction_matches_induced_counts) {
    // Every graph on m <= 6 vertices, every split, every column.
    for (std::size_t m = 1; m <= 6; ++m) {
        const std::size_t pairs = m * (m - 1) / 2;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
            for (std::size_t n = 0; 2 * n <= m; ++n) {
                const Pattern p = graph_pattern(n, m, edges_from_code(m, code));
                const SignVector diag = phi2_diagonal(p);
                for (std::uint64_t i = 1; i <= (std::uint64_t{1} << n); ++i) {
                    ASSERT_EQ(sign_pattern_matrix_from_diagonal(p, diag, i), sign_pattern_matrix(p, i))
                        << m << " " << code << " " << n << " " << i;
                }
            }
        }
    }
}

TEST(sign_pattern_matrix, diagonal_construction_random_up_to_8) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const Pattern p = random_pattern_of_size(rng, 7 + rng() % 2);
        const SignVector diag = phi2_diagonal(p);
        for (std::uint64_t i = 1; i <= (std::uint64_t{1} << p.n()); ++i) {
            ASSERT_EQ(sign_pattern_matrix_from_diagonal(p, diag, i), sign_pattern_matrix(p, i));
        }
    }
}

TEST(decompose_column_factors, line3_column2) {
    const FactorBundle f = decompose_column_factors(line3(0.5, 0.2), 2);
    EXPECT_EQ(f.column, 2U);
    EXPECT_EQ(f.gamma, 1);
    EXPECT_EQ(f.delta, signs({1, 1}));
    EXPECT_EQ(f.s, signs({1, 1}));
    EXPECT_EQ(f.b_full, sign_matrix({{1, 1}, {1, -1}}));
    EXPECT_EQ(f.n_diag, signs({1, 1}));
    EXPECT_EQ(f.omega, signs({1, -1}));
    EXPECT_EQ(f.product(), sign_matrix({{1, -1}, {1, 1}}));
}

TEST(decompose_column_factors, triangle_column2) {
    const FactorBundle f = decompose_column_factors(triangle_line3(0.5, 0.2), 2);
    EXPECT_EQ(f.gamma, 1);
    EXPECT_EQ(f.delta, signs({1, -1}));
    EXPECT_EQ(f.s, signs({1, 1}));
    EXPECT_EQ(f.b_full, sign_matrix({{1, 1}, {1, -1}}));
    EXPECT_EQ(f.n_diag, signs({1, 1}));
    EXPECT_EQ(f.omega, signs({1, -1}));
    EXPECT_EQ(f.product(), sign_matrix({{1, -1}, {-1, -1}}));
}

TEST(decompose_column_factors, edgeless_is_trivial) {
    const Pattern p = graph_pattern(2, 7, {});
    for (std::uint64_t i = 1; i <= 4; ++i) {
        const FactorBundle f = decompose_column_factors(p, i);
        EXPECT_EQ(f.gamma, 1);
        EXPECT_TRUE(f.delta.all_ones());
        EXPECT_TRUE(f.s.all_ones());
        EXPECT_TRUE(f.n_diag.all_ones());
        EXPECT_TRUE(f.omega.all_ones());
        EXPECT_EQ(f.b_full, SignMatrix(4, 8));
    }
}

TEST(decompose_column_factors, product_is_exact_up_to_9) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 150; ++trial) {
        const Pattern p = random_pattern_of_size(rng, 1 + rng() % 9);
        const SignDecomposition dec(p);
        for (std::uint64_t i = 1; i <= (std::uint64_t{1} << p.n()); ++i) {
            ASSERT_EQ(dec.bundle(i).product(), sign_pattern_matrix(p, i).signs) << trial << " " << i;
        }
    }
}

TEST(decompose_column_factors, column_out_of_range) {
    EXPECT_THROW(decompose_column_factors(line3(0, 0), 0), std::out_of_range);
    EXPECT_THROW(decompose_column_factors(line3(0, 0), 3), std::out_of_range);
}

TEST(structured_matrix, line2_raw) {
    for (double theta : {0.0, 0.3, kPi / 2, 2.5}) {
        const Complex e = std::polar(1.0, -theta);
        for (StructuredMethod method : {StructuredMethod::theorem1, StructuredMethod::decomposition}) {
            const ComplexMatrix mat = structured_matrix(line2(theta), method);
            EXPECT_EQ(mat.scaling(), Scaling::raw);
            EXPECT_LE(std::abs(mat(0, 0) - 1.0), 1e-15);
            EXPECT_LE(std::abs(mat(0, 1) - e), 1e-15);
            EXPECT_LE(std::abs(mat(1, 0) - 1.0), 1e-15);
            EXPECT_LE(std::abs(mat(1, 1) + e), 1e-15);
        }
    }
}

TEST(structured_matrix, line3_with_zero_aux_angle) {
    for (double theta : {0.0, 0.9, 4.0}) {
        const ComplexMatrix mat = structured_matrix(line3(theta, 0.0));
        EXPECT_LE(std::abs(mat(0, 0) - 2.0), 1e-15);
        EXPECT_LE(std::abs(mat(0, 1)), 1e-15);
        EXPECT_LE(std::abs(mat(1, 0)), 1e-15);
        EXPECT_LE(std::abs(mat(1, 1) - 2.0 * std::polar(1.0, -theta)), 1e-15);
    }
}

TEST(structured_matrix, physical_is_scaled_raw) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 30; ++trial) {
        const Pattern p = random_pattern_of_size(rng, 2 + rng() % 9);
        const ComplexMatrix raw = structured_matrix(p, StructuredMethod::decomposition, Scaling::raw);
        const ComplexMatrix phys = structured_matrix(p, StructuredMethod::decomposition, Scaling::physical);
        EXPECT_EQ(phys.scaling(), Scaling::physical);
        EXPECT_LE(max_abs_diff(raw.rescaled(physical_factor(p.m(), p.n()), Scaling::physical), phys), 0.0);
        const ComplexMatrix dense = dense_positive_branch(p);
        EXPECT_LE(max_abs_diff(phys, dense), 1e-10);
    }
}

TEST(structured_matrix, matches_dense_oracle) {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng() % 4;
        const std::size_t a = rng() % (11 - 2 * n > 7 ? 7 : 11 - 2 * n);
        const Pattern p = random_pattern(rng, n, a, 0.1 + 0.8 * std::uniform_real_distribution<double>()(rng));
        const ComplexMatrix dense = dense_positive_branch(p);
        for (StructuredMethod method : {StructuredMethod::theorem1, StructuredMethod::decomposition}) {
            ASSERT_LE(max_abs_diff(structured_matrix(p, method, Scaling::physical), dense), 1e-10)
                << to_string(method) << " trial " << trial;
        }
    }
}

TEST(structured_matrix, methods_agree) {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 50; ++trial) {
        const Pattern p = random_pattern_of_size(rng, 1 + rng() % 12);
        EXPECT_LE(max_abs_diff(structured_matrix(p, StructuredMethod::theorem1),
                               structured_matrix(p, StructuredMethod::decomposition)),
                  1e-12);
    }
}

TEST(structured_matrix, entries_are_eps_times_row_dot_phi) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const Pattern p = random_pattern_of_size(rng, 1 + rng() % 8);
        const ComplexMatrix mat = structured_matrix(p, StructuredMethod::theorem1);
        const std::vector<Complex> phi = phase_vector(p).expand();
        const std::size_t dim = mat.rows();
        for (std::uint64_t i = 1; i <= dim; ++i) {
            const SignPatternMatrix b = sign_pattern_matrix(p, i);
            for (std::size_t r = 0; r < dim; ++r) {
                Complex dot{0.0, 0.0};
                for (std::size_t q = 0; q < phi.size(); ++q) {
                    dot += static_cast<double>(b.signs(r, q)) * phi[q];
                }
                ASSERT_EQ(mat(r, i - 1), epsilon_phase(p, i) * dot);
            }
        }
    }
}

TEST(structured_matrix, first_column_ignores_input_angles) {
    std::mt19937_64 rng(38);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        const Pattern p = random_pattern(rng, n, rng() % 5);
        const ComplexMatrix base = structured_matrix(p);
        for (int redraw = 0; redraw < 50; ++redraw) {
            std::vector<double> angles(p.angles().begin(), p.angles().end());
            for (std::size_t k = 0; k < n; ++k) {
                angles[k] = uniform_angle(rng);
            }
            const ComplexMatrix other = structured_matrix(p.with_angles(angles));
            EXPECT_EQ(other.column(0), base.column(0));
        }
    }
}

TEST(structured_matrix, input_angles_only_rephase_columns) {
    std::mt19937_64 rng(39);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        const Pattern p = random_pattern(rng, n, rng() % 5);
        const ComplexMatrix base = structured_matrix(p);
        for (int redraw = 0; redraw < 20; ++redraw) {
            std::vector<double> angles(p.angles().begin(), p.angles().end());
            for (std::size_t k = 0; k < n; ++k) {
                angles[k] = uniform_angle(rng);
            }
            const Pattern q = p.with_angles(angles);
            const ComplexMatrix other = structured_matrix(q);
            for (std::uint64_t i = 1; i <= base.cols(); ++i) {
                const Complex ratio = epsilon_phase(q, i) / epsilon_phase(p, i);
                for (std::size_t r = 0; r < base.rows(); ++r) {
                    EXPECT_LE(std::abs(other(r, i - 1) - ratio * base(r, i - 1)), 1e-12);
                    EXPECT_LE(std::abs(std::abs(other(r, i - 1)) - std::abs(base(r, i - 1))), 1e-12);
                }
            }
        }
    }
}

TEST(structured_matrix, no_inputs) {
    const Pattern p(0, 2, {{1, 2}}, {0.3, 1.1});
    const ComplexMatrix mat = structured_matrix(p, StructuredMethod::decomposition, Scaling::physical);
    ASSERT_EQ(mat.rows(), 1U);
    EXPECT_LE(max_abs_diff(mat, dense_positive_branch(p)), 1e-15);
}

TEST(structured_matrix, cap) {
    Limits small;
    small.sign_matrix_max_log2 = 2;
    EXPECT_THROW(structured_matrix(line(5, {0, 0, 0, 0}), StructuredMethod::decomposition, Scaling::raw, small),
                 CapExceeded);
}

TEST(fast_entry, line3_examples) {
    const double t1 = 0.37;
    const double t2 = 1.9;
    const Pattern p = line3(t1, t2);
    const Complex e1 = std::polar(1.0, -t1);
    const Complex e2 = std::polar(1.0, -t2);
    EXPECT_LE(std::abs(fast_entry(p, 2, 2) - e1 * (1.0 + e2)), 1e-15);
    EXPECT_LE(std::abs(fast_entry(p, 1, 1) - (1.0 + e2)), 1e-15);
    // Frozen from tests/oracles/derive_expected.py.
    EXPECT_LE(std::abs(fast_entry(p, 2, 2) - Complex(0.28871892689249384, -1.126970384494215)), 1e-15);
    EXPECT_LE(std::abs(fast_entry(p, 1, 1) - Complex(0.6767104331364964, -0.946300087687414)), 1e-15);
}

TEST(fast_entry, rejects_connected_auxiliaries) {
    const Pattern p(1, 2, {{1, 2}, {2, 3}, {3, 4}}, {0, 0, 0});
    EXPECT_THROW(fast_entry(p, 1, 1), PreconditionViolated);
    EXPECT_NO_THROW(expanded_entry(p, 1, 1));
}

TEST(fast_entry, index_errors) {
    EXPECT_THROW(fast_entry(line3(0, 0), 0, 1), std::out_of_range);
    EXPECT_THROW(fast_entry(line3(0, 0), 1, 3), std::out_of_range);
}

TEST(fast_entry, matches_structured_matrix) {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = rng() % 3;
        const std::size_t a = rng() % 13;
        const Pattern p = random_edgeless_aux_pattern(rng, n, a);
        const ComplexMatrix mat = structured_matrix(p);
        const FastEntryEvaluator fast(p);
        for (std::uint64_t r = 1; r <= mat.rows(); ++r) {
            for (std::uint64_t c = 1; c <= mat.cols(); ++c) {
                // Raw entries reach 2^a in modulus; compare relative to that scale.
                const double tol = 1e-12 * std::max(1.0, std::abs(mat(r - 1, c - 1)));
                ASSERT_LE(std::abs(fast.entry(r, c) - mat(r - 1, c - 1)), tol) << trial;
                ASSERT_LE(std::abs(expanded_entry(p, r, c) - mat(r - 1, c - 1)), tol) << trial;
            }
        }
    }
}

TEST(fast_entry, two_input_ladder_frozen) {
    const Pattern p(2, 0, {{1, 3}, {2, 4}, {1, 2}, {3, 4}}, {0.4, 1.3});
    const Complex a{0.26749882862458724, -0.9635581854171925};
    EXPECT_LE(std::abs(fast_entry(p, 1, 2) - a), 1e-15);
    EXPECT_LE(std::abs(fast_entry(p, 2, 2) + a), 1e-15);
    EXPECT_LE(std::abs(fast_entry(p, 4, 1) + 1.0), 1e-15);
}
