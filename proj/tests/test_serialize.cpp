#include <doctest.h>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "uqd/locc.hpp"
#include "uqd/registry.hpp"
#include "uqd/serialize.hpp"
#include "uqd/sud.hpp"
#include "uqd/weyl.hpp"

using namespace uqd;
using test::max_abs_diff;
using test::random_matrix;

TEST_CASE("operator record: schema and exact round trip") {
    const Matrix a = random_matrix(2, 3, 1);
    const auto j = operator_to_json(a);
    CHECK(j["dims"][0] == 2);
    CHECK(j["dims"][1] == 3);
    CHECK(j["re"].size() == 2);
    CHECK(j["re"][0].size() == 3);
    CHECK(max_abs_diff(operator_from_json(j), a) == 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = random_matrix(1 + trial % 4, 1 + (trial / 2) % 4, 100 + trial);
        CHECK(max_abs_diff(operator_from_json(operator_to_json(m)), m) == 0.0);
    }

    CHECK_THROWS_AS(operator_from_json(nlohmann::json{{"re", {{1.0}}}}), Error);
}

TEST_CASE("family and povm records round trip with labels") {
    const auto povm = weyl_bell_povm(2);
    const auto back = povm_from_json(povm_to_json(povm));
    REQUIRE(back.size() == povm.size());
    CHECK(back.dims == povm.dims);
    CHECK(back.labels == povm.labels);
    for (Index i = 0; i < povm.size(); ++i)
        CHECK(max_abs_diff(back.elements[static_cast<std::size_t>(i)],
                           povm.elements[static_cast<std::size_t>(i)]) == 0.0);

    const auto family = induced_family(povm, weyl_ancilla(2));
    const auto fam_back = family_from_json(family_to_json(family));
    CHECK(fam_back.size() == family.size());
    CHECK(fam_back.dims == family.dims);
}

TEST_CASE("detector records: id-addressed and generic-dual round trips") {
    const auto weyl = make_weyl_detector(3);
    const auto weyl_json = detector_to_json(weyl);
    CHECK(weyl_json["processing"]["kind"] == "weyl-closed-form");
    const auto weyl_back = detector_from_json(weyl_json);
    CHECK(weyl_back.id == weyl.id);
    CHECK(max_abs_diff(weyl_back.ancilla.rho(), weyl.ancilla.rho()) == 0.0);
    // same detector: identical processing on a probe observable
    const Matrix probe = random_matrix(3, 3, 5);
    CHECK((processing_coefficients(weyl_back, probe) - processing_coefficients(weyl, probe))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // ad-hoc generic detector rebuilt from its POVM record
    auto det = make_generic_detector(weyl_bell_povm(2), weyl_ancilla(2));
    det.id.clear();
    const auto rebuilt = detector_from_json(detector_to_json(det));
    CHECK(rebuilt.kind == ProcessingKind::GenericDual);
    const Matrix probe2 = random_matrix(2, 2, 6);
    CHECK((processing_coefficients(rebuilt, probe2) - processing_coefficients(det, probe2))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    // grid detector round-trips through the compact grid record
    const auto su2 = make_detector("su2:j=1/2");
    const auto su2_json = detector_to_json(su2);
    CHECK(su2_json["povm"].contains("grid"));
    CHECK(su2_json["povm"]["grid"][0] == 40);
    const auto su2_back = detector_from_json(su2_json);
    CHECK(su2_back.discrete_povm().size() == su2.discrete_povm().size());
    const Matrix probe3 = random_matrix(2, 2, 7);
    CHECK((processing_coefficients(su2_back, probe3) - processing_coefficients(su2, probe3))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    // continuous descriptor survives, including a custom |psi>
    Vector phi = Vector::Unit(2, 0);
    Vector psi(2);
    psi << std::sqrt(0.5), Complex(0.0, std::sqrt(0.5));
    const auto sud = make_sud_detector(2, phi, psi);
    const auto sud_json = detector_to_json(sud);
    CHECK(sud_json["povm"]["continuous"] == true);
    const auto sud_back = detector_from_json(sud_json);
    REQUIRE_FALSE(sud_back.discrete());
    const Matrix probe_u = random_haar_unitary(2, 9);
    const Matrix probe_o = random_matrix(2, 2, 10);
    CHECK(std::abs(sud_back.coefficient_at(probe_u, probe_o) -
                   sud.coefficient_at(probe_u, probe_o)) == 0.0);
}

TEST_CASE("report serialization: stable wall field by default, csv schema") {
    // dyadic values print exactly at %.17g
    EstimationReport report;
    report.estimate = Complex(0.25, -0.5);
    report.stderr_est = 0.015625;
    report.samples = 1000;
    report.seed = 7;
    report.exact = Complex(0.375, -0.5);
    report.wall_seconds = 1.25;

    const auto j = report_to_json(report);
    CHECK(j["wall_s"] == 0.0);
    CHECK(report_to_json(report, true)["wall_s"] == 1.25);

    CHECK(csv_header() ==
          "detector,d,observable,n,estimate_re,estimate_im,stderr,exact_re,exact_im,seed,wall_s");
    const auto row = csv_row(report, {"weyl:d=2", 2, "pauli:Z"});
    CHECK(row == "weyl:d=2,2,pauli:Z,1000,0.25,-0.5,0.015625,0.375,-0.5,7,0");
}
