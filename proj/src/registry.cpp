#include "uqd/registry.hpp"

#include <charconv>
#include <cmath>

#include "uqd/locc.hpp"
#include "uqd/spin.hpp"
#include "uqd/sud.hpp"
#include "uqd/weyl.hpp"

namespace uqd {

namespace {

long long parse_int(const std::string& text, const std::string& what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("could not parse " + what + " from '" + text + "'");
    return value;
}

double parse_spin(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const auto num = parse_int(text.substr(0, slash), "spin numerator");
        const auto den = parse_int(text.substr(slash + 1), "spin denominator");
        if (den != 2) throw ConfigError("spin must be a half-integer, got '" + text + "'");
        return static_cast<double>(num) / 2.0;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw Error("");
        return v;
    } catch (...) {
        throw ConfigError("could not parse spin from '" + text + "'");
    }
}

}  // namespace

DetectorId parse_detector_id(const std::string& id) {
    const auto colon = id.find(':');
    if (colon == std::string::npos)
        throw ConfigError("detector id '" + id + "' must look like 'weyl:d=3' or 'su2:j=1'");
    DetectorId out;
    out.family = id.substr(0, colon);
    const std::string rest = id.substr(colon + 1);
    if (out.family == "weyl" || out.family == "sud" || out.family == "locc") {
        if (rest.rfind("d=", 0) != 0)
            throw ConfigError("detector id '" + id + "': expected 'd=<dim>'");
        out.d = static_cast<Index>(parse_int(rest.substr(2), "dimension"));
        if (out.d < 2) throw ConfigError("detector id '" + id + "': dimension must be >= 2");
        return out;
    }
    if (out.family == "su2") {
        if (rest.rfind("j=", 0) != 0)
            throw ConfigError("detector id '" + id + "': expected 'j=<spin>'");
        out.j = parse_spin(rest.substr(2));
        const double two_j = 2.0 * out.j;
        if (out.j <= 0.0 || std::abs(two_j - std::round(two_j)) > 1e-12)
            throw ConfigError("detector id '" + id + "': spin must be a positive half-integer");
        return out;
    }
    throw ConfigError("unknown detector family '" + out.family + "'");
}

Index detector_dim(const DetectorId& id) {
    if (id.family == "su2") return static_cast<Index>(std::llround(2.0 * id.j)) + 1;
    return id.d;
}

Index detector_ancilla_dim(const DetectorId& id) {
    if (id.family == "locc") return id.d * id.d;
    return detector_dim(id);
}

UniversalDetector make_detector(const std::string& id, std::optional<State> ancilla) {
    const auto parsed = parse_detector_id(id);
    if (ancilla && ancilla->dim() != detector_ancilla_dim(parsed))
        throw ConfigError("make_detector: ancilla dim " + std::to_string(ancilla->dim()) +
                             " does not match detector '" + id + "' (expected " +
                             std::to_string(detector_ancilla_dim(parsed)) + ")");
    if (parsed.family == "weyl") return make_weyl_detector(parsed.d, std::move(ancilla));
    if (parsed.family == "locc") return make_locc_detector(parsed.d, std::move(ancilla));
    if (parsed.family == "sud") {
        if (ancilla) {
            // Pure ancilla nu = (|phi><phi|)^T required; recover |phi>.
            const auto eig = hermitian_eig(ancilla->rho().transpose());
            if (eig.values[0] < 1.0 - 1e-9)
                throw Error("make_detector: sud ancilla must be pure");
            const Vector phi = eig.vectors.col(0);
            Vector psi = Vector::Zero(parsed.d);
            // Any state with |<psi|phi>|^2 < 1 works; pick a basis vector
            // mostly orthogonal to phi.
            Index min_idx = 0;
            double min_abs = std::abs(phi[0]);
            for (Index k = 1; k < parsed.d; ++k)
                if (std::abs(phi[k]) < min_abs) {
                    min_abs = std::abs(phi[k]);
                    min_idx = k;
                }
            psi[min_idx] = Complex(1.0, 0.0);
            return make_sud_detector(parsed.d, phi, psi);
        }
        return make_sud_detector(parsed.d);
    }
    return make_su2_detector(parsed.j, GridSpec{}, std::move(ancilla));
}

Matrix make_observable(const std::string& spec, Index dim) {
    if (spec == "identity") return Matrix::Identity(dim, dim);
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("observable spec '" + spec + "' must look like 'pauli:Z' or 'weyl:1,0'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "pauli") {
        if (dim != 2) throw ConfigError("pauli observables need dim 2, detector has dim " +
                                  std::to_string(dim));
        Matrix op(2, 2);
        if (rest == "X")
            op << 0, 1, 1, 0;
        else if (rest == "Y")
            op << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
        else if (rest == "Z")
            op << 1, 0, 0, -1;
        else
            throw ConfigError("unknown pauli '" + rest + "'");
        return op;
    }
    if (kind == "weyl") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos) throw ConfigError("weyl observable needs 'weyl:p,q'");
        const auto p = static_cast<Index>(parse_int(rest.substr(0, comma), "weyl index p"));
        const auto q = static_cast<Index>(parse_int(rest.substr(comma + 1), "weyl index q"));
        if (p < 0 || p >= dim || q < 0 || q >= dim)
            throw ConfigError("weyl indices (" + std::to_string(p) + "," + std::to_string(q) +
                              ") out of range for dim " + std::to_string(dim));
        return weyl_unitary(dim, p, q);
    }
    if (kind == "projector") {
        const auto k = static_cast<Index>(parse_int(rest, "projector index"));
        if (k < 0 || k >= dim) throw ConfigError("projector index out of range");
        Matrix op = Matrix::Zero(dim, dim);
        op(k, k) = Complex(1.0, 0.0);
        return op;
    }
    throw ConfigError("unknown observable kind '" + kind + "'");
}

State make_state(const std::string& spec, Index dim) {
    if (spec == "mixed") return State(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    const auto colon = spec.find(':');
    const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    if (kind == "pure") {
        const auto k =
            static_cast<Index>(parse_int(spec.substr(colon + 1), "basis index"));
        if (k < 0 || k >= dim) throw ConfigError("pure state index out of range");
        Matrix rho = Matrix::Zero(dim, dim);
        rho(k, k) = Complex(1.0, 0.0);
        return State(rho);
    }
    if (kind == "random") {
        Index rank = dim;
        std::uint64_t seed = 0;
        bool have_seed = false;
        std::size_t pos = colon;
        while (pos != std::string::npos && pos < spec.size()) {
            const auto next = spec.find(':', pos + 1);
            const std::string field = spec.substr(pos + 1, next == std::string::npos
                                                               ? std::string::npos
                                                               : next - pos - 1);
            if (field.rfind("rank=", 0) == 0)
                rank = static_cast<Index>(parse_int(field.substr(5), "rank"));
            else if (field.rfind("seed=", 0) == 0) {
                seed = static_cast<std::uint64_t>(parse_int(field.substr(5), "seed"));
                have_seed = true;
            } else
                throw ConfigError("unknown state field '" + field + "'");
            pos = next;
        }
        if (!have_seed) throw ConfigError("random state spec needs an explicit seed");
        if (rank < 1 || rank > dim)
            throw ConfigError("state rank " + std::to_string(rank) + " out of range [1, " +
                              std::to_string(dim) + "]");
        return random_density(dim, rank, seed);
    }
    throw ConfigError("unknown state spec '" + spec + "'");
}

}  // namespace uqd
