#include "catalysis/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace catalysis {

using nlohmann::json;

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + path);
    out << content;
}

namespace {

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON in " + what);
    return j;
}

std::vector<double> number_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw input_error(what + " must be a JSON array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw input_error(what + " must contain numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

ProbVec parse_prob_vec_json(const std::string& text) {
    const json j = parse_json(text, "state");
    if (!j.contains("probs")) throw input_error("state JSON must carry a \"probs\" array");
    return ProbVec::from_values(number_array(j["probs"], "\"probs\""));
}

ProbVec read_prob_vec_file(const std::string& path) {
    return parse_prob_vec_json(read_text_file(path));
}

GibbsSpec parse_gibbs_json(const std::string& text) {
    const json j = parse_json(text, "reference state");
    if (j.contains("weights"))
        return GibbsSpec::from_weights(number_array(j["weights"], "\"weights\""));
    if (j.contains("energies")) {
        if (!j.contains("beta") || !j["beta"].is_number())
            throw input_error("energy-based reference needs a numeric \"beta\"");
        return GibbsSpec::from_energies(number_array(j["energies"], "\"energies\""),
                                        j["beta"].get<double>());
    }
    throw input_error("reference JSON needs \"weights\" or \"energies\"+\"beta\"");
}

GibbsSpec read_gibbs_file(const std::string& path) {
    return parse_gibbs_json(read_text_file(path));
}

DensityMatrix parse_density_matrix_json(const std::string& text) {
    const json j = parse_json(text, "density matrix");
    if (!j.contains("re") || !j["re"].is_array())
        throw input_error("density matrix JSON needs an \"re\" row array");
    const auto& re = j["re"];
    const std::size_t dim = re.size();
    std::vector<std::complex<double>> m(dim * dim, {0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        const auto row = number_array(re[i], "\"re\" row");
        if (row.size() != dim) throw input_error("density matrix \"re\" is not square");
        for (std::size_t k = 0; k < dim; ++k) m[i * dim + k] = row[k];
    }
    if (j.contains("im")) {
        const auto& im = j["im"];
        if (!im.is_array() || im.size() != dim)
            throw input_error("density matrix \"im\" shape mismatch");
        for (std::size_t i = 0; i < dim; ++i) {
            const auto row = number_array(im[i], "\"im\" row");
            if (row.size() != dim) throw input_error("density matrix \"im\" is not square");
            for (std::size_t k = 0; k < dim; ++k)
                m[i * dim + k] += std::complex<double>(0.0, row[k]);
        }
    }
    std::optional<std::pair<std::size_t, std::size_t>> parts;
    if (j.contains("dims")) {
        const auto d = number_array(j["dims"], "\"dims\"");
        if (d.size() != 2) throw input_error("\"dims\" must hold two factors");
        parts = {static_cast<std::size_t>(d[0]), static_cast<std::size_t>(d[1])};
    }
    return DensityMatrix::from_matrix(std::move(m), dim, parts);
}

DensityMatrix read_density_matrix_file(const std::string& path) {
    return parse_density_matrix_json(read_text_file(path));
}

std::string prob_vec_to_json(const ProbVec& p) {
    std::string out = "{\"probs\":[";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) out += ',';
        out += fmt_g17(p[i]);
    }
    out += "]}";
    return out;
}

std::string report_to_json(const CatalysisReport& r) {
    std::string theory;
    switch (r.theory) {
        case TheoryKind::Entanglement: theory = "entanglement"; break;
        case TheoryKind::Athermality: theory = "athermality"; break;
        case TheoryKind::UnitaryNoisy: theory = "unitary-noisy"; break;
    }
    std::string out = "{";
    out += "\"n\":" + std::to_string(r.n);
    out += ",\"d_C\":" + std::to_string(r.d_C);
    out += ",\"chi_err\":" + fmt_g17(r.chi_err);
    out += ",\"system_err\":" + fmt_g17(r.system_err);
    out += ",\"joint_err\":" + fmt_g17(r.joint_err);
    out += ",\"marginal_exactness\":" + fmt_g17(r.marginal_exactness);
    out += std::string(",\"feasible\":") + (r.feasible ? "true" : "false");
    out += ",\"theory\":\"" + theory + "\"";
    out += "}";
    return out;
}

} // namespace catalysis
