#include "gm/cli.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <CLI11.hpp>

#include "gm/dicke.hpp"
#include "gm/parallel.hpp"
#include "gm/rank2.hpp"
#include "gm/sym3q.hpp"
#include "gm/wmax.hpp"

namespace gm::cli {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kCrosscheckTolerance = 1e-7;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string vec3_text(const Vec3& v) {
    return "(" + format_number(v[0]) + ", " + format_number(v[1]) + ", " + format_number(v[2]) + ")";
}

/// Dicke amplitudes (g, 0, sqrt3 t, e^{i gamma} h) back to canonical parameters, if they have that shape.
std::optional<SymThreeQubitCanonical> as_canonical_sym3(const SymmetricDickeState& s) {
    if (s.n_qubits() != 3) return std::nullopt;
    const auto& a = s.amplitudes();
    constexpr double tol = 1e-12;
    if (std::abs(a[1]) > tol || std::abs(a[0].imag()) > tol || std::abs(a[2].imag()) > tol) return std::nullopt;
    if (a[0].real() < -tol || a[2].real() < -tol) return std::nullopt;
    const double h = std::abs(a[3]);
    const double gamma = h > tol ? std::arg(a[3]) : 0.0;
    if (std::abs(gamma) > std::numbers::pi / 2) return std::nullopt;
    return SymThreeQubitCanonical::projected(std::max(0.0, a[0].real()), std::max(0.0, a[2].real()) / std::sqrt(3.0), h,
                                             gamma);
}

void print_result(std::ostream& out, const GmResult& r) {
    const bool rank2 = r.method == Method::rank2_closed || r.method == Method::rank2_numeric;
    out << "method = " << to_string(r.method) << '\n';
    if (rank2) {
        out << "g = " << format_number(r.G_squared) << '\n';
    } else {
        out << "G^2 = " << format_number(r.G_squared) << '\n';
        out << "G = " << format_number(r.G) << '\n';
        out << "E_G = " << format_number(r.E_G) << '\n';
    }
    for (std::size_t i = 0; i < r.closest_product.size(); ++i) {
        out << "product[" << i << "] = " << vec3_text(r.closest_product[i].s()) << '\n';
    }
    for (const auto& [key, value] : r.diagnostics) out << key << " = " << format_number(value) << '\n';
    if (!r.candidates.empty()) {
        out << "candidates:\n";
        for (const auto& c : r.candidates) {
            out << "  " << to_string(c.case_tag) << " phi=" << format_number(c.phi) << " theta=" << format_number(c.theta)
                << " G_j^2=" << format_number(c.G_j_squared) << " residual=" << format_number(c.residual) << '\n';
        }
    }
}

struct Globals {
    bool json = false;
    unsigned threads = 0;
};

int emit(std::ostream& out, std::ostream& err, const Globals& globals, const OutputRecord& rec) {
    if (globals.json) {
        out << to_json(rec).dump(2) << '\n';
    } else {
        print_result(out, rec.result);
        out << "wall_time_ms = " << format_number(rec.wall_time_ms) << '\n';
    }
    if (rec.result.warning) {
        err << "warning: solver did not converge\n";
        return kExitWarning;
    }
    return kExitOk;
}

GmResult rank2_oracle(const RankTwoCanonical& s, const OracleConfig& cfg) {
    GmResult r = GmResult::from_squared(g_mixed_oracle(rank2_to_matrix(s), cfg), Method::oracle);
    return r;
}

GmResult oracle_for(const StateDescriptor& state, const OracleConfig& cfg) {
    return std::visit(overloaded{
                          [&](const PureState& s) { return gm_pure_oracle(s, cfg); },
                          [&](const SymmetricDickeState& s) { return gm_symmetric_oracle(s, cfg); },
                          [&](const SymThreeQubitCanonical& s) { return gm_symmetric_oracle(sym3q_to_dicke(s), cfg); },
                          [&](const RankTwoCanonical& s) { return rank2_oracle(s, cfg); },
                      },
                      state);
}

PureState dense_of(const StateDescriptor& state) {
    return std::visit(overloaded{
                          [](const PureState& s) { return s; },
                          [](const SymmetricDickeState& s) { return dicke_to_dense(s); },
                          [](const SymThreeQubitCanonical& s) { return sym3q_to_dense(s); },
                          [](const RankTwoCanonical&) -> PureState {
                              throw ValidationError("rank-two states have no dense pure form; use `gm oracle`");
                          },
                      },
                      state);
}

std::uint64_t parse_seed(const std::string& text) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
}

} // namespace

OracleConfig oracle_config_from_env() {
    OracleConfig cfg;
    if (const char* env = std::getenv("GM_SEED"); env && *env) {
        try {
            cfg.seed = parse_seed(env);
        } catch (const std::exception&) {
            throw ValidationError(std::string("GM_SEED is not an unsigned integer: ") + env);
        }
    }
    return cfg;
}

std::optional<SymmetricDickeState> as_symmetric(const PureState& psi) {
    const int n = psi.n_qubits();
    const auto& amps = psi.amplitudes();
    Eigen::VectorXcd dicke = Eigen::VectorXcd::Zero(n + 1);
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const int m = std::popcount(static_cast<std::uint64_t>(i));
        if (!seen[m]) {
            dicke[m] = amps[i];
            seen[m] = true;
        } else if (std::abs(amps[i] - dicke[m]) > 1e-12) {
            return std::nullopt;
        }
    }
    for (int m = 0; m <= n; ++m) dicke[m] *= binomial_sqrt(n, m);
    return SymmetricDickeState(dicke);
}

std::vector<CrosscheckEntry> crosscheck(const StateDescriptor& state, const OracleConfig& cfg) {
    std::vector<CrosscheckEntry> out;
    auto add = [&](std::string name, const GmResult& r) { out.push_back({std::move(name), r.G_squared, r.warning}); };

    auto symmetric_solvers = [&](const SymmetricDickeState& s) {
        if (s.non_negative()) add("dicke", gm_dicke_nonneg(s));
        if (const auto c = as_canonical_sym3(s)) add("sym3q", gm_sym3q(*c, cfg));
        add("symmetric_oracle", gm_symmetric_oracle(s, cfg));
    };
    auto dense_solvers = [&](const PureState& psi) {
        add("pure_oracle", gm_pure_oracle(psi, cfg));
        if (psi.n_qubits() == 3) {
            for (int party = 0; party < 3; ++party) {
                out.push_back({"reduced_oracle[trace " + std::to_string(party) + "]", g_from_pure_3qubit(psi, party, cfg), false});
            }
        }
    };

    std::visit(overloaded{
                   [&](const PureState& s) {
                       if (const auto sym = as_symmetric(s)) symmetric_solvers(*sym);
                       dense_solvers(s);
                   },
                   [&](const SymmetricDickeState& s) {
                       symmetric_solvers(s);
                       if (s.n_qubits() <= kMaxDenseQubits) dense_solvers(dicke_to_dense(s));
                   },
                   [&](const SymThreeQubitCanonical& s) {
                       const SymmetricDickeState d = sym3q_to_dicke(s);
                       add("sym3q", gm_sym3q(s, cfg));
                       if (d.non_negative()) add("dicke", gm_dicke_nonneg(d));
                       add("symmetric_oracle", gm_symmetric_oracle(d, cfg));
                       dense_solvers(sym3q_to_dense(s));
                   },
                   [&](const RankTwoCanonical& s) {
                       if (s.x()[0] == 0.0 && s.x()[1] == 0.0) add("rank2_closed", gm_rank2(s, true));
                       add("rank2_numeric", gm_rank2(s, false));
                       add("mixed_oracle", rank2_oracle(s, cfg));
                   },
               },
               state);
    return out;
}

double max_pairwise_delta(const std::vector<CrosscheckEntry>& entries) {
    double worst = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            worst = std::max(worst, std::abs(entries[i].G_squared - entries[j].G_squared));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geometric measure of entanglement for pure multiqubit states", "gm"};
    app.require_subcommand(1);
    Globals globals;
    app.add_flag("--json", globals.json, "Structured JSON output");
    app.add_option("--threads", globals.threads, "Worker threads for grid sweeps and restarts (0 = all cores)");

    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    // dicke
    std::string dicke_file;
    std::vector<double> dicke_amps;
    CLI::App* dicke = sub("dicke", "Symmetric state with non-negative Dicke amplitudes");
    auto* dicke_file_opt = dicke->add_option("--file", dicke_file, "State JSON (kind dicke)");
    dicke->add_option("--amps", dicke_amps, "Real amplitudes a0,a1,...,aN")->delimiter(',')->excludes(dicke_file_opt);

    // sym3
    double g = 0, t = 0, h = 0, gamma = 0;
    bool renorm = false, sym3_deg = false;
    CLI::App* sym3 = sub("sym3", "Canonical symmetric three-qubit state g|000> + t(|011>+|101>+|110>) + e^{i gamma} h|111>");
    sym3->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
    sym3->add_option("--g", g)->required();
    sym3->add_option("--t", t)->required();
    sym3->add_option("--h", h)->required();
    sym3->add_option("--gamma", gamma)->required();
    sym3->add_flag("--renorm", renorm, "Project (g, t, h) onto g^2 + 3t^2 + h^2 = 1");
    sym3->add_flag("--deg", sym3_deg, "gamma is given in degrees");

    // rank2
    double gamma1 = 0, gamma2 = 0;
    std::vector<double> xvec;
    bool closed_form = false, rank2_deg = false;
    CLI::App* rank2 = sub("rank2", "Two-qubit rank-two state in canonical form");
    rank2->add_option("--gamma1", gamma1)->required();
    rank2->add_option("--gamma2", gamma2)->required();
    rank2->add_option("--x", xvec, "Bloch vector X1,X2,X3")->delimiter(',')->expected(3)->required();
    rank2->add_flag("--closed-form", closed_form, "Use the closed form (needs X1 = X2 = 0)");
    rank2->add_flag("--deg", rank2_deg, "Angles are given in degrees");

    // oracle-backed commands
    std::string file;
    int restarts = OracleConfig{}.restarts;
    std::string seed_text;
    auto oracle_opts = [&](CLI::App* s) {
        s->add_option("--file", file, "State JSON")->required()->check(CLI::ExistingFile);
        s->add_option("--restarts", restarts, "Random restarts of the pure oracle");
        s->add_option("--seed", seed_text, "Oracle seed (overrides GM_SEED)");
    };
    CLI::App* pure = sub("pure", "Brute-force G for a dense pure state");
    oracle_opts(pure);
    CLI::App* oracle = sub("oracle", "Brute-force oracle for any state kind");
    oracle_opts(oracle);
    CLI::App* cross = sub("crosscheck", "Run every applicable solver and report pairwise deltas");
    oracle_opts(cross);

    // scans and figures
    int resolution = 64;
    int samples = 201;
    std::string out_path;
    CLI::App* wscan = sub("wmax-scan", "Minimize g over all rank-two subspaces");
    wscan->add_option("--resolution", resolution, "Grid cells per side (>= 32)");
    wscan->add_option("--out", out_path, "Output directory for report.json and grid.csv")->required();
    CLI::App* fig1 = sub("fig1", "g(x3) along four canonical subspaces as CSV");
    fig1->add_option("--out", out_path, "CSV path")->required();
    fig1->add_option("--samples", samples, "x3 samples in [-1, 1]");
    CLI::App* fig2 = sub("fig2", "Minimum g per subspace as CSV");
    fig2->add_option("--out", out_path, "CSV path")->required();
    fig2->add_option("--resolution", resolution, "Grid cells per side (>= 32)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "gm: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        set_worker_threads(globals.threads);
        auto oracle_cfg = [&] {
            OracleConfig cfg = oracle_config_from_env();
            cfg.restarts = restarts;
            if (!seed_text.empty()) {
                try {
                    cfg.seed = parse_seed(seed_text);
                } catch (const std::exception&) {
                    throw ValidationError("--seed is not an unsigned integer: " + seed_text);
                }
            }
            cfg.validate();
            return cfg;
        };

        if (dicke->parsed()) {
            const auto start = Clock::now();
            const StateDescriptor input = [&]() -> StateDescriptor {
                if (!dicke_file.empty()) {
                    StateDescriptor s = read_state_file(dicke_file);
                    if (!std::holds_alternative<SymmetricDickeState>(s)) {
                        throw ValidationError("`gm dicke` needs a state file of kind dicke");
                    }
                    return s;
                }
                if (dicke_amps.empty()) throw ValidationError("`gm dicke` needs --file or --amps");
                Eigen::VectorXcd a(static_cast<Eigen::Index>(dicke_amps.size()));
                for (std::size_t i = 0; i < dicke_amps.size(); ++i) a[static_cast<Eigen::Index>(i)] = dicke_amps[i];
                return SymmetricDickeState(a);
            }();
            GmResult r = gm_dicke_nonneg(std::get<SymmetricDickeState>(input));
            return emit(out, err, globals, {input, std::move(r), elapsed_ms(start)});
        }
        if (sym3->parsed()) {
            const auto start = Clock::now();
            const double gm_angle = sym3_deg ? gamma * kDeg : gamma;
            StateDescriptor input =
                renorm ? SymThreeQubitCanonical::projected(g, t, h, gm_angle) : SymThreeQubitCanonical(g, t, h, gm_angle);
            GmResult r = gm_sym3q(std::get<SymThreeQubitCanonical>(input), oracle_config_from_env());
            return emit(out, err, globals, {input, std::move(r), elapsed_ms(start)});
        }
        if (rank2->parsed()) {
            const auto start = Clock::now();
            const double scale = rank2_deg ? kDeg : 1.0;
            StateDescriptor input = RankTwoCanonical(gamma1 * scale, gamma2 * scale, {xvec[0], xvec[1], xvec[2]});
            GmResult r = gm_rank2(std::get<RankTwoCanonical>(input), closed_form);
            return emit(out, err, globals, {input, std::move(r), elapsed_ms(start)});
        }
        if (pure->parsed() || oracle->parsed()) {
            const auto start = Clock::now();
            StateDescriptor input = read_state_file(file);
            const OracleConfig cfg = oracle_cfg();
            GmResult r = pure->parsed() ? gm_pure_oracle(dense_of(input), cfg) : oracle_for(input, cfg);
            return emit(out, err, globals, {input, std::move(r), elapsed_ms(start)});
        }
        if (cross->parsed()) {
            const auto start = Clock::now();
            const StateDescriptor input = read_state_file(file);
            const auto entries = crosscheck(input, oracle_cfg());
            const double worst = max_pairwise_delta(entries);
            const bool warned = std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.warning; });
            if (globals.json) {
                json solvers = json::array();
                for (const auto& e : entries) solvers.push_back({{"solver", e.solver}, {"G_squared", e.G_squared}, {"warning", e.warning}});
                json pairs = json::array();
                for (std::size_t i = 0; i < entries.size(); ++i) {
                    for (std::size_t j = i + 1; j < entries.size(); ++j) {
                        pairs.push_back({{"a", entries[i].solver}, {"b", entries[j].solver},
                                         {"delta", std::abs(entries[i].G_squared - entries[j].G_squared)}});
                    }
                }
                out << json{{"input", state_to_json(input)}, {"solvers", solvers}, {"pairwise", pairs}, {"max_delta", worst},
                            {"tolerance", kCrosscheckTolerance}, {"wall_time_ms", elapsed_ms(start)}}
                           .dump(2)
                    << '\n';
            } else {
                for (const auto& e : entries) out << e.solver << " = " << format_number(e.G_squared) << '\n';
                for (std::size_t i = 0; i < entries.size(); ++i) {
                    for (std::size_t j = i + 1; j < entries.size(); ++j) {
                        out << "delta " << entries[i].solver << " vs " << entries[j].solver << " = "
                            << format_number(std::abs(entries[i].G_squared - entries[j].G_squared)) << '\n';
                    }
                }
                out << "max_delta = " << format_number(worst) << '\n';
            }
            if (warned || worst > kCrosscheckTolerance) {
                err << "warning: solvers disagree by " << format_number(worst) << " (tolerance 1e-7) or did not converge\n";
                return kExitWarning;
            }
            return kExitOk;
        }
        if (wscan->parsed() || fig2->parsed()) {
            const GlobalMinReport rep = scan_global_min(resolution);
            std::vector<std::vector<double>> rows;
            rows.reserve(rep.grid.size());
            for (const auto& c : rep.grid) rows.push_back({c.gamma1, c.gamma2, c.x3, c.g});
            const std::vector<std::string> header{"gamma1", "gamma2", "x3_min", "g_min"};
            if (fig2->parsed()) {
                write_csv(out_path, header, rows);
                out << "wrote " << rows.size() << " rows to " << out_path << '\n';
                return kExitOk;
            }
            const std::filesystem::path dir(out_path);
            std::filesystem::create_directories(dir);
            const json report{{"min_g", rep.min_g},   {"max_E_G", 1.0 - rep.min_g}, {"gamma1", rep.gamma1},
                              {"gamma2", rep.gamma2}, {"x3", rep.x3},               {"margin", rep.margin},
                              {"resolution", rep.resolution}, {"grid_spec", rep.grid_spec}};
            std::ofstream(dir / "report.json", std::ios::binary) << report.dump(2) << '\n';
            write_csv(dir / "grid.csv", header, rows);
            if (globals.json) {
                out << report.dump(2) << '\n';
            } else {
                out << "min_g = " << format_number(rep.min_g) << '\n'
                    << "gamma1 = " << format_number(rep.gamma1) << '\n'
                    << "gamma2 = " << format_number(rep.gamma2) << '\n'
                    << "x3 = " << format_number(rep.x3) << '\n'
                    << "margin = " << format_number(rep.margin) << '\n'
                    << "grid = " << rep.grid_spec << '\n';
            }
            return kExitOk;
        }
        if (fig1->parsed()) {
            std::vector<std::vector<double>> rows;
            for (const auto& r : fig1_curves(samples)) rows.push_back({r.x3, r.g[0], r.g[1], r.g[2], r.g[3]});
            write_csv(out_path, {"x3", "g_a", "g_b", "g_c", "g_d"}, rows);
            out << "wrote " << rows.size() << " rows to " << out_path << '\n';
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        err << "gm: invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const CapacityError& e) {
        err << "gm: too large: " << e.what() << '\n';
        return kExitValidation;
    } catch (const UnsupportedInputError& e) {
        err << "gm: unsupported input: " << e.what() << " (try `gm oracle`)\n";
        return kExitValidation;
    }
    err << app.help();
    return kExitUsage;
}

} // namespace gm::cli
