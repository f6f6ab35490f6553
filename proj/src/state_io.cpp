#include "gm/state_io.hpp"

#include <cstdio>
#include <fstream>

namespace gm {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json amplitudes_to_json(const Eigen::VectorXcd& amps) {
    json out = json::array();
    for (Eigen::Index i = 0; i < amps.size(); ++i) out.push_back({amps[i].real(), amps[i].imag()});
    return out;
}

Eigen::VectorXcd amplitudes_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("\"amplitudes\" must be an array");
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& a = j[i];
        if (a.is_number()) {
            amps[static_cast<Eigen::Index>(i)] = cplx(a.get<double>(), 0.0);
        } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
            amps[static_cast<Eigen::Index>(i)] = cplx(a[0].get<double>(), a[1].get<double>());
        } else {
            throw ValidationError("amplitude " + std::to_string(i) + " must be [re, im] or a number");
        }
    }
    return amps;
}

double number_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ValidationError(std::string("missing or non-numeric field \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

const json& field(const json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

} // namespace

std::string_view kind_of(const StateDescriptor& state) {
    return std::visit(overloaded{
                          [](const PureState&) { return std::string_view("pure"); },
                          [](const SymmetricDickeState&) { return std::string_view("dicke"); },
                          [](const SymThreeQubitCanonical&) { return std::string_view("sym3q"); },
                          [](const RankTwoCanonical&) { return std::string_view("rank2"); },
                      },
                      state);
}

json state_to_json(const StateDescriptor& state) {
    return std::visit(overloaded{
                          [](const PureState& s) {
                              return json{{"kind", "pure"}, {"n_qubits", s.n_qubits()},
                                          {"amplitudes", amplitudes_to_json(s.amplitudes())}};
                          },
                          [](const SymmetricDickeState& s) {
                              return json{{"kind", "dicke"}, {"N", s.n_qubits()},
                                          {"amplitudes", amplitudes_to_json(s.amplitudes())}};
                          },
                          [](const SymThreeQubitCanonical& s) {
                              return json{{"kind", "sym3q"}, {"g", s.g()}, {"t", s.t()}, {"h", s.h()}, {"gamma", s.gamma()}};
                          },
                          [](const RankTwoCanonical& s) {
                              return json{{"kind", "rank2"}, {"gamma1", s.gamma1()}, {"gamma2", s.gamma2()}, {"x", s.x()}};
                          },
                      },
                      state);
}

StateDescriptor state_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("state JSON must be an object");
    const json& kind_field = field(j, "kind");
    if (!kind_field.is_string()) throw ValidationError("\"kind\" must be a string");
    const std::string kind = kind_field.get<std::string>();

    if (kind == "pure") {
        Eigen::VectorXcd amps = amplitudes_from_json(field(j, "amplitudes"));
        if (j.contains("n_qubits")) {
            const json& n = j.at("n_qubits");
            if (!n.is_number_integer()) throw ValidationError("\"n_qubits\" must be an integer");
            return PureState(n.get<int>(), std::move(amps));
        }
        return PureState(std::move(amps));
    }
    if (kind == "dicke") {
        Eigen::VectorXcd amps = amplitudes_from_json(field(j, "amplitudes"));
        if (j.contains("N")) {
            const json& n = j.at("N");
            if (!n.is_number_integer() || n.get<long long>() + 1 != amps.size()) {
                throw ValidationError("\"N\" must be an integer equal to the amplitude count minus one");
            }
        }
        return SymmetricDickeState(std::move(amps));
    }
    if (kind == "sym3q") {
        return SymThreeQubitCanonical(number_field(j, "g"), number_field(j, "t"), number_field(j, "h"),
                                      number_field(j, "gamma"));
    }
    if (kind == "rank2") {
        const json& x = field(j, "x");
        if (!x.is_array() || x.size() != 3 || !x[0].is_number() || !x[1].is_number() || !x[2].is_number()) {
            throw ValidationError("\"x\" must be an array of three numbers");
        }
        return RankTwoCanonical(number_field(j, "gamma1"), number_field(j, "gamma2"),
                                {x[0].get<double>(), x[1].get<double>(), x[2].get<double>()});
    }
    throw ValidationError("unknown state kind \"" + kind + "\"");
}

StateDescriptor read_state_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open state file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return state_from_json(j);
}

// ---------------------------------------------------------------------------

json to_json(const BlochVector& s) { return json(s.s()); }

json to_json(const CandidateRecord& c) {
    return json{{"phi", c.phi},
                {"theta", c.theta},
                {"lambda", c.lambda},
                {"G_j_squared", c.G_j_squared},
                {"case", std::string(to_string(c.case_tag))},
                {"residual", c.residual}};
}

CandidateRecord candidate_from_json(const json& j) {
    CandidateRecord c;
    c.phi = number_field(j, "phi");
    c.theta = number_field(j, "theta");
    c.lambda = number_field(j, "lambda");
    c.G_j_squared = number_field(j, "G_j_squared");
    c.case_tag = case_tag_from_string(field(j, "case").get<std::string>());
    c.residual = number_field(j, "residual");
    return c;
}

namespace {

json core_result(const GmResult& r) {
    json product = json::array();
    for (const auto& s : r.closest_product) product.push_back(to_json(s));
    return json{{"G", r.G},
                {"G_squared", r.G_squared},
                {"E_G", r.E_G},
                {"method", std::string(to_string(r.method))},
                {"warning", r.warning},
                {"closest_product", product}};
}

GmResult core_result_from_json(const json& j) {
    GmResult r;
    r.G = number_field(j, "G");
    r.G_squared = number_field(j, "G_squared");
    r.E_G = number_field(j, "E_G");
    r.method = method_from_string(field(j, "method").get<std::string>());
    r.warning = field(j, "warning").get<bool>();
    for (const auto& s : field(j, "closest_product")) {
        r.closest_product.emplace_back(Vec3{s.at(0).get<double>(), s.at(1).get<double>(), s.at(2).get<double>()});
    }
    return r;
}

json candidates_json(const GmResult& r) {
    json out = json::array();
    for (const auto& c : r.candidates) out.push_back(to_json(c));
    return out;
}

} // namespace

json to_json(const GmResult& r) {
    json j = core_result(r);
    j["candidates"] = candidates_json(r);
    j["diagnostics"] = r.diagnostics;
    return j;
}

GmResult result_from_json(const json& j) {
    GmResult r = core_result_from_json(j);
    if (j.contains("candidates")) {
        for (const auto& c : j.at("candidates")) r.candidates.push_back(candidate_from_json(c));
    }
    if (j.contains("diagnostics")) r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    return r;
}

json to_json(const OutputRecord& rec) {
    return json{{"input", state_to_json(rec.input)},
                {"result", core_result(rec.result)},
                {"wall_time_ms", rec.wall_time_ms},
                {"solver_diagnostics", {{"candidates", candidates_json(rec.result)}, {"stats", rec.result.diagnostics}}}};
}

OutputRecord output_record_from_json(const json& j) {
    OutputRecord rec{state_from_json(field(j, "input")), core_result_from_json(field(j, "result")),
                     number_field(j, "wall_time_ms")};
    const json& diag = field(j, "solver_diagnostics");
    for (const auto& c : field(diag, "candidates")) rec.result.candidates.push_back(candidate_from_json(c));
    rec.result.diagnostics = field(diag, "stats").get<std::map<std::string, double>>();
    return rec;
}

// ---------------------------------------------------------------------------

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    if (!out) throw ValidationError("write failed for " + path.string());
}

} // namespace gm
