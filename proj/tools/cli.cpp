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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "owpb/owpb.hpp"

namespace owpb::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Bad input detected after argument parsing; reported with exit code 2.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultSeed = 42;
constexpr std::size_t kDefaultSamples = 100;

Pattern load_pattern(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read pattern file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_pattern(text.str());
    } catch (const PatternError &e) {
        throw UsageError(path + ": " + e.what());
    }
}

Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json signs_json(std::span<const Sign> signs) {
    Json out = Json::array();
    for (Sign s : signs) {
        out.push_back(static_cast<int>(s));
    }
    return out;
}

Json subset_json(const VertexSubset &s) {
    return Json(std::vector<Label>(s.begin(), s.end()));
}

Json matrix_json(const ComplexMatrix &mat) {
    Json out = Json::array();
    for (const Complex &z : mat.entries()) {
        out.push_back(complex_json(z));
    }
    return out;
}

Json angles_json(std::span<const double> angles) {
    Json out = Json::object();
    for (std::size_t k = 0; k < angles.size(); ++k) {
        out[std::to_string(k + 1)] = angles[k];
    }
    return out;
}

VertexSubset parse_set(const Pattern &p, const std::string &spec, const std::string &flag) {
    if (spec == "inputs") {
        return p.inputs();
    }
    if (spec == "aux") {
        return p.auxiliaries();
    }
    if (spec == "outputs") {
        return p.outputs();
    }
    if (spec == "all") {
        return p.vertices();
    }
    std::vector<Label> labels;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
            throw UsageError(flag + ": expected inputs|aux|outputs|all or a comma-separated label list, got \"" +
                             spec + "\"");
        }
        const auto v = static_cast<Label>(std::stoul(item));
        if (v < 1 || v > p.m()) {
            throw UsageError(flag + ": label " + item + " is not a vertex (labels are 1.." + std::to_string(p.m()) +
                             ")");
        }
        labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        throw UsageError(flag + ": label listed twice");
    }
    return VertexSubset(std::move(labels));
}

Limits make_limits(std::optional<std::size_t> cap) {
    Limits limits;
    try {
        limits = Limits::from_environment();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (cap) {
        limits.dense_max_qubits = *cap;
    }
    return limits;
}

std::string emit(const Json &doc) {
    return doc.dump() + "\n";
}

}  // namespace

CommandResult execute(const std::vector<std::string> &args) {
    CLI::App app{"Positive-branch matrices of measurement-based patterns", "owpb"};
    app.require_subcommand(1);

    std::string file;
    std::string file_b;
    std::string method;
    std::string scaling = "physical";
    std::optional<std::size_t> cap;
    double tol = kDefaultTolerance;
    std::uint64_t column = 0;
    std::uint64_t row = 0;
    std::string function;
    std::string set_spec;
    std::string against;
    bool uniform = false;
    std::size_t samples = kDefaultSamples;
    std::uint64_t seed = kDefaultSeed;
    bool global_phase = false;

    auto *matrix_cmd = app.add_subcommand("matrix", "Compute the matrix of the positive branch");
    matrix_cmd->add_option("file", file, "Pattern file")->required();
    matrix_cmd->add_option("--method", method, "dense|theorem1|decomposition")
        ->check(CLI::IsMember({"dense", "theorem1", "decomposition"}))
        ->default_str("decomposition");
    matrix_cmd->add_option("--scaling", scaling, "raw|physical")->check(CLI::IsMember({"raw", "physical"}));
    matrix_cmd->add_option("--cap", cap, "Dense simulation qubit cap");

    auto *verify_cmd = app.add_subcommand("verify", "Cross-check dense, theorem1 and decomposition matrices");
    verify_cmd->add_option("file", file, "Pattern file")->required();
    verify_cmd->add_option("--tol", tol, "Maximum allowed deviation");
    verify_cmd->add_option("--cap", cap, "Dense simulation qubit cap");

    auto *decompose_cmd = app.add_subcommand("decompose", "Six-factor decomposition of one sign pattern matrix");
    decompose_cmd->add_option("file", file, "Pattern file")->required();
    decompose_cmd->add_option("--column", column, "Column index i (1-based)")->required();

    auto *signs_cmd = app.add_subcommand("signs", "Evaluate the P or B sign function");
    signs_cmd->add_option("file", file, "Pattern file")->required();
    signs_cmd->add_option("--function", function, "P|B")->required()->check(CLI::IsMember({"P", "B"}));
    signs_cmd->add_option("--set", set_spec, "inputs|aux|outputs|all or labels like 1,3")->required();
    signs_cmd->add_option("--against", against, "Second vertex set (B only)");
    signs_cmd->add_option("--method", method, "P: enumerate|quadratic_form|edge_list; B: enumerate|column_parity");

    auto *det_cmd = app.add_subcommand("determinism", "Check (uniform) determinism via the Gram matrix");
    det_cmd->add_option("file", file, "Pattern file")->required();
    det_cmd->add_flag("--uniform", uniform, "Probe auxiliary angles for uniform determinism");
    det_cmd->add_option("--samples", samples, "Random auxiliary angle samples")->check(CLI::PositiveNumber);
    det_cmd->add_option("--seed", seed, "RNG seed");
    det_cmd->add_option("--tol", tol, "Tolerance");

    auto *equal_cmd = app.add_subcommand("equal", "Compare the physical matrices of two patterns");
    equal_cmd->add_option("file_a", file, "First pattern file")->required();
    equal_cmd->add_option("file_b", file_b, "Second pattern file")->required();
    equal_cmd->add_flag("--global-phase", global_phase, "Compare up to a global phase");
    equal_cmd->add_option("--tol", tol, "Tolerance");

    auto *entry_cmd = app.add_subcommand("entry", "Single raw matrix entry");
    entry_cmd->add_option("file", file, "Pattern file")->required();
    entry_cmd->add_option("--row", row, "Row index p (1-based)")->required();
    entry_cmd->add_option("--col", column, "Column index i (1-based)")->required();

    CommandResult result;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        result.stdout_document = app.help();
        return result;
    } catch (const CLI::ParseError &e) {
        result.exit_code = kExitUsage;
        result.stderr_text = std::string(e.what()) + "\n";
        return result;
    }

    try {
        if (tol < 0 || !std::isfinite(tol)) {
            throw UsageError("--tol must be a non-negative number");
        }
        Json doc;
        if (matrix_cmd->parsed()) {
            const Pattern p = load_pattern(file);
            const Limits limits = make_limits(cap);
            if (method.empty()) {
                method = "decomposition";
            }
            const Scaling out_scaling = scaling == "raw" ? Scaling::raw : Scaling::physical;
            ComplexMatrix mat;
            if (method == "dense") {
                mat = dense_positive_branch(p, limits);
                if (out_scaling == Scaling::raw) {
                    mat = mat.rescaled(1.0 / physical_factor(p.m(), p.n()), Scaling::raw);
                }
            } else {
                mat = structured_matrix(
                    p, method == "theorem1" ? StructuredMethod::theorem1 : StructuredMethod::decomposition,
                    out_scaling, limits);
            }
            doc["m"] = p.m();
            doc["n"] = p.n();
            doc["a"] = p.a();
            doc["method"] = method;
            doc["scaling"] = to_string(out_scaling);
            doc["rows"] = mat.rows();
            doc["cols"] = mat.cols();
            doc["matrix"] = matrix_json(mat);
        } else if (verify_cmd->parsed()) {
            const Pattern p = load_pattern(file);
            const Limits limits = make_limits(cap);
            const ComplexMatrix dense = dense_positive_branch(p, limits);
            const ComplexMatrix t1 = structured_matrix(p, StructuredMethod::theorem1, Scaling::physical, limits);
            const ComplexMatrix dec =
                structured_matrix(p, StructuredMethod::decomposition, Scaling::physical, limits);
            const double d_t1 = max_abs_diff(dense, t1);
            const double d_dec = max_abs_diff(dense, dec);
            const double t1_dec = max_abs_diff(t1, dec);
            const double worst = std::max({d_t1, d_dec, t1_dec});
            doc["dense_vs_theorem1"] = d_t1;
            doc["dense_vs_decomposition"] = d_dec;
            doc["theorem1_vs_decomposition"] = t1_dec;
            doc["max_deviation"] = worst;
            doc["tol"] = tol;
            doc["passed"] = worst <= tol;
            if (worst > tol) {
                result.exit_code = kExitCheckFailed;
                result.stderr_text = "verification failed: max deviation exceeds tolerance\n";
            }
        } else if (decompose_cmd->parsed()) {
            const Pattern p = load_pattern(file);
            if (column < 1 || column > (std::uint64_t{1} << p.n())) {
                throw UsageError("--column must be in 1.." + std::to_string(std::uint64_t{1} << p.n()));
            }
            const FactorBundle bundle = decompose_column_factors(p, column, make_limits(std::nullopt));
            Json b_rows = Json::array();
            for (std::size_t r = 0; r < bundle.b_full.rows(); ++r) {
                b_rows.push_back(signs_json(bundle.b_full.row(r)));
            }
            doc["column"] = bundle.column;
            doc["gamma"] = bundle.gamma;
            doc["delta"] = signs_json(bundle.delta.entries());
            doc["s"] = signs_json(bundle.s.entries());
            doc["b_full"] = std::move(b_rows);
            doc["n_diag"] = signs_json(bundle.n_diag.entries());
            doc["omega"] = signs_json(bundle.omega.entries());
        } else if (signs_cmd->parsed()) {
            const Pattern p = load_pattern(file);
            const VertexSubset set = parse_set(p, set_spec, "--set");
            SignVector vec;
            doc["function"] = function;
            doc["set"] = subset_json(set);
            if (function == "P") {
                if (!against.empty()) {
                    throw UsageError("--against only applies to --function B");
                }
                PMethod pm = PMethod::enumerate;
                if (method == "quadratic_form") {
                    pm = PMethod::quadratic_form;
                } else if (method == "edge_list") {
                    pm = PMethod::edge_list;
                } else if (!method.empty() && method != "enumerate") {
                    throw UsageError("--method for P must be enumerate|quadratic_form|edge_list");
                }
                vec = p_vector(p, set, pm);
                doc["method"] = method.empty() ? "enumerate" : method;
            } else {
                if (against.empty()) {
                    throw UsageError("--against is required for --function B");
                }
                const VertexSubset other = parse_set(p, against, "--against");
                if (!set.disjoint_from(other)) {
                    throw UsageError("--set and --against must be disjoint");
                }
                BMethod bm = BMethod::enumerate;
                if (method == "column_parity") {
                    bm = BMethod::column_parity;
                } else if (!method.empty() && method != "enumerate") {
                    throw UsageError("--method for B must be enumerate|column_parity");
                }
                vec = b_vector(p, set, other, bm);
                doc["against"] = subset_json(other);
                doc["method"] = method.empty() ? "enumerate" : method;
            }
            doc["vector"] = signs_json(vec.entries());
        } else if (det_cmd->parsed()) {
            const Pattern p = load_pattern(file);
            const Limits limits = make_limits(std::nullopt);
            if (uniform) {
                const UniformVerdict v = check_uniform_determinism(p, samples, seed, tol, limits);
                doc["uniform"] = v.uniform;
                doc["samples_checked"] = v.samples_checked;
                doc["seed"] = v.seed;
                doc["tol"] = tol;
                doc["verdict"] = v.uniform ? "no counterexample found in " + std::to_string(v.samples_checked) +
                                                 " samples"
                                           : std::string("counterexample found");
                doc["witness"] = v.witness ? angles_json(*v.witness) : Json(nullptr);
                if (!v.uniform) {
                    result.exit_code = kExitCheckFailed;
                    result.stderr_text = "pattern is not uniformly deterministic\n";
                }
            } else {
                const DeterminismVerdict v = check_determinism(p, tol, limits);
                doc["deterministic"] = v.deterministic;
                doc["lambda"] = v.lambda;
                doc["max_deviation"] = v.max_deviation;
                doc["strongly_uniform_probability"] = v.strongly_uniform_probability;
                doc["tol"] = tol;
                if (!v.deterministic) {
                    result.exit_code = kExitCheckFailed;
                    result.stderr_text = "pattern is not deterministic\n";
                }
            }
        } else if (equal_cmd->parsed()) {
            const Pattern pa = load_pattern(file);
            const Pattern pb = load_pattern(file_b);
            if (pa.n() != pb.n()) {
                throw UsageError("patterns have different input counts (" + std::to_string(pa.n()) + " vs " +
                                 std::to_string(pb.n()) + ")");
            }
            const EqualityVerdict v = patterns_equal(pa, pb, tol, global_phase, make_limits(std::nullopt));
            doc["equal"] = v.equal;
            doc["max_deviation"] = v.max_deviation;
            doc["global_phase"] = global_phase;
            doc["tol"] = tol;
            if (!v.equal) {
                result.exit_code = kExitCheckFailed;
                result.stderr_text = "patterns are not equal\n";
            }
        } else if (entry_cmd->parsed()) {
            const Pattern p = load_pattern(file);
            const std::uint64_t dim = std::uint64_t{1} << p.n();
            if (row < 1 || row > dim) {
                throw UsageError("--row must be in 1.." + std::to_string(dim));
            }
            if (column < 1 || column > dim) {
                throw UsageError("--col must be in 1.." + std::to_string(dim));
            }
            Complex value;
            std::string path = "fast";
            try {
                value = fast_entry(p, row, column);
            } catch (const PreconditionViolated &) {
                path = "dense";
                value = expanded_entry(p, row, column, make_limits(std::nullopt));
            }
            doc["row"] = row;
            doc["col"] = column;
            doc["scaling"] = "raw";
            doc["path"] = path;
            doc["value"] = complex_json(value);
        }
        result.stdout_document = emit(doc);
    } catch (const UsageError &e) {
        return CommandResult{kExitUsage, "", std::string(e.what()) + "\n"};
    } catch (const CapExceeded &e) {
        return CommandResult{kExitUsage, "", std::string("cap exceeded: ") + e.what() + "\n"};
    } catch (const std::exception &e) {
        return CommandResult{kExitUsage, "", std::string("error: ") + e.what() + "\n"};
    }
    return result;
}

}  // namespace owpb::cli
