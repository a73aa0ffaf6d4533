#include "uqd/serialize.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "uqd/locc.hpp"
#include "uqd/registry.hpp"
#include "uqd/spin.hpp"
#include "uqd/sud.hpp"
#include "uqd/weyl.hpp"

namespace uqd {

using nlohmann::json;

json operator_to_json(const Matrix& op) {
    json re = json::array(), im = json::array();
    for (Index r = 0; r < op.rows(); ++r) {
        json re_row = json::array(), im_row = json::array();
        for (Index c = 0; c < op.cols(); ++c) {
            re_row.push_back(op(r, c).real());
            im_row.push_back(op(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"dims", {op.rows(), op.cols()}}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix operator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("re") || !j.contains("im"))
        throw Error("operator record needs dims, re, im");
    const Index rows = j["dims"].at(0).get<Index>();
    const Index cols = j["dims"].at(1).get<Index>();
    if (rows < 1 || cols < 1) throw Error("operator record: bad dims");
    const auto& re = j["re"];
    const auto& im = j["im"];
    if (static_cast<Index>(re.size()) != rows || static_cast<Index>(im.size()) != rows)
        throw Error("operator record: row count does not match dims");
    Matrix op(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const auto& re_row = re.at(static_cast<std::size_t>(r));
        const auto& im_row = im.at(static_cast<std::size_t>(r));
        if (static_cast<Index>(re_row.size()) != cols ||
            static_cast<Index>(im_row.size()) != cols)
            throw Error("operator record: column count does not match dims");
        for (Index c = 0; c < cols; ++c)
            op(r, c) = Complex(re_row.at(static_cast<std::size_t>(c)).get<double>(),
                               im_row.at(static_cast<std::size_t>(c)).get<double>());
    }
    return op;
}

json state_to_json(const State& state) { return operator_to_json(state.rho()); }

State state_from_json(const json& j) { return State(operator_from_json(j)); }

json family_to_json(const OperatorFamily& family) {
    json arr = json::array();
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        json rec{{"op", operator_to_json(family.members[i])}};
        rec["label"] = family.labels.empty() ? std::to_string(i) : family.labels[i];
        arr.push_back(std::move(rec));
    }
    return arr;
}

OperatorFamily family_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw Error("family record must be a nonempty array");
    std::vector<Matrix> members;
    std::vector<std::string> labels;
    for (const auto& rec : j) {
        members.push_back(operator_from_json(rec.at("op")));
        labels.push_back(rec.value("label", std::to_string(labels.size())));
    }
    return OperatorFamily::from(std::move(members), std::move(labels));
}

json povm_to_json(const Povm& povm) {
    json elements = json::array();
    for (std::size_t i = 0; i < povm.elements.size(); ++i) {
        json rec{{"op", operator_to_json(povm.elements[i])}};
        rec["label"] = povm.labels.empty() ? std::to_string(i) : povm.labels[i];
        elements.push_back(std::move(rec));
    }
    return json{{"dims", {povm.dims.dim_h, povm.dims.dim_k}},
                {"elements", std::move(elements)},
                {"tol", povm.tol}};
}

Povm povm_from_json(const json& j) {
    Povm povm;
    povm.dims = {j.at("dims").at(0).get<Index>(), j.at("dims").at(1).get<Index>()};
    povm.tol = j.value("tol", kDefaultTol);
    for (const auto& rec : j.at("elements")) {
        povm.elements.push_back(operator_from_json(rec.at("op")));
        povm.labels.push_back(rec.value("label", std::to_string(povm.labels.size())));
    }
    return povm;
}

json detector_to_json(const UniversalDetector& detector) {
    json out;
    if (detector.grid[0] > 0) {
        // group-grid POVM: record the grid instead of every element
        const auto& povm = detector.discrete_povm();
        out["povm"] = json{{"grid", {detector.grid[0], detector.grid[1], detector.grid[2]}},
                           {"dims", {povm.dims.dim_h, povm.dims.dim_k}}};
    } else if (detector.discrete()) {
        out["povm"] = povm_to_json(detector.discrete_povm());
    } else {
        const auto& cp = detector.continuous_povm();
        out["povm"] = json{{"continuous", true},
                           {"group", cp.group == BellGroup::SudHaar ? "sud-haar" : "su2-uir"},
                           {"dim", cp.dim_h},
                           {"j", cp.spin_j}};
    }
    out["ancilla"] = state_to_json(detector.ancilla);
    json params = json::object();
    if (!detector.id.empty()) params["id"] = detector.id;
    if (!detector.processing_vectors.empty()) {
        json vecs = json::array();
        for (const auto& v : detector.processing_vectors)
            vecs.push_back(operator_to_json(Matrix(v)));
        params["states"] = std::move(vecs);
    }
    out["processing"] = json{{"kind", to_string(detector.kind)}, {"params", std::move(params)}};
    return out;
}

UniversalDetector detector_from_json(const json& j) {
    const auto kind = processing_kind_from_string(j.at("processing").at("kind").get<std::string>());
    State ancilla = state_from_json(j.at("ancilla"));
    const auto& params = j.at("processing").value("params", json::object());
    if (j.at("povm").contains("grid")) {
        if (!params.contains("id"))
            throw Error("detector record: grid povm requires params.id");
        const auto parsed = parse_detector_id(params["id"].get<std::string>());
        const auto& grid = j["povm"]["grid"];
        return make_su2_detector(parsed.j,
                                 GridSpec{grid.at(0).get<Index>(), grid.at(1).get<Index>(),
                                          grid.at(2).get<Index>()},
                                 std::move(ancilla));
    }
    if (kind == ProcessingKind::SudXi && params.contains("states")) {
        const auto& vecs = params["states"];
        const Matrix phi_m = operator_from_json(vecs.at(0));
        const Matrix psi_m = operator_from_json(vecs.at(1));
        return make_sud_detector(phi_m.rows(), Vector(phi_m.col(0)), Vector(psi_m.col(0)));
    }
    if (params.contains("id"))
        return make_detector(params["id"].get<std::string>(), std::move(ancilla));
    if (kind != ProcessingKind::GenericDual)
        throw Error("detector record: closed-form processing requires params.id");
    return make_generic_detector(povm_from_json(j.at("povm")), std::move(ancilla));
}

json report_to_json(const EstimationReport& report, bool include_wall) {
    json out{{"estimate_re", report.estimate.real()},
             {"estimate_im", report.estimate.imag()},
             {"stderr", report.stderr_est},
             {"samples", report.samples},
             {"seed", report.seed},
             {"acceptance_rate", report.acceptance_rate},
             {"wall_s", include_wall ? report.wall_seconds : 0.0}};
    if (report.exact) {
        out["exact_re"] = report.exact->real();
        out["exact_im"] = report.exact->imag();
    }
    return out;
}

std::string csv_header() {
    return "detector,d,observable,n,estimate_re,estimate_im,stderr,exact_re,exact_im,seed,"
           "wall_s";
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// RFC 4180 quoting for label fields that may embed commas ("weyl:1,2").
std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string csv_row(const EstimationReport& report, const ReportContext& ctx,
                    bool include_wall) {
    std::ostringstream os;
    os << csv_field(ctx.detector) << ',' << ctx.dim_h << ',' << csv_field(ctx.observable) << ','
       << report.samples
       << ',' << fmt(report.estimate.real()) << ',' << fmt(report.estimate.imag()) << ','
       << fmt(report.stderr_est) << ',' << (report.exact ? fmt(report.exact->real()) : "")
       << ',' << (report.exact ? fmt(report.exact->imag()) : "") << ',' << report.seed << ','
       << fmt(include_wall ? report.wall_seconds : 0.0);
    return os.str();
}

}  // namespace uqd
