#pragma once

// String-addressable constructors shared by the CLI and the test suites:
// detector ids ("weyl:d=3", "sud:d=2", "su2:j=1", "locc:d=2"), observable
// specs ("pauli:Z", "weyl:p,q", "projector:k") and state specs
// ("random:rank=r:seed=s").

#include <cstdint>
#include <optional>
#include <string>

#include "uqd/povm.hpp"

namespace uqd {

struct DetectorId {
    std::string family;  // "weyl" | "sud" | "su2" | "locc"
    Index d = 0;         // weyl/sud/locc
    double j = 0.0;      // su2
};

DetectorId parse_detector_id(const std::string& id);

// System dimension (dim H) the id acts on.
Index detector_dim(const DetectorId& id);

// Ancilla dimension the id expects.
Index detector_ancilla_dim(const DetectorId& id);

UniversalDetector make_detector(const std::string& id,
                                std::optional<State> ancilla = std::nullopt);

// "pauli:X|Y|Z" (dim 2), "weyl:p,q", "projector:k", identity via "identity".
Matrix make_observable(const std::string& spec, Index dim);

// "random:rank=r:seed=s" | "pure:k" (basis state |k><k|) | "mixed" (I/dim).
State make_state(const std::string& spec, Index dim);

}  // namespace uqd
