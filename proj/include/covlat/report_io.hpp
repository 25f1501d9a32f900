#pragma once

// JSON reports and their independent re-checks. Rationals are "p/q"
// strings; floats are {"value", "tolerance"} pairs.

#include "covlat/rotation_scan.hpp"

#include <json.hpp>

namespace covlat {

using Json = nlohmann::json;

Json to_json(const Rat& r);
Json to_json(std::span<const Rat> v);
Json to_json(const MatQ& m);
Json to_json(const SymMapQ& m);
Json to_json(const LpOutcome& o);
Json tagged(double value, double tolerance);

Rat rat_from_json(const Json& j);
VecQ vec_from_json(const Json& j);
MatQ mat_from_json(const Json& j);
SymMapQ sym_from_json(const Json& j);
LpOutcome outcome_from_json(const Json& j);

Json lattice_report(const LatticeModel& lat);
/// lat must be A_n^* (the verifier rebuilds it from the dimension).
Json eutaxy_certificate(const LatticeModel& lat, const EutaxyReport& rep);
Json witness_report(const LatticeModel& lat, const ExtensionWitness& w);
Json cover_report(const RadialBody& body, const Mat3& rotation, const CoverConstruction& c,
                  const ScanReport* scan = nullptr);
Json cl_report(const std::vector<ClCertificate>& certs, const EnvelopeReport* envelope = nullptr);
std::string cl_csv(const std::vector<ClCertificate>& certs);
Json zonal_report(const MultiplierSpectrum& sp);
std::string zonal_csv(const MultiplierSpectrum& sp);

/// Headline for a classification: "inextensible" or "extensible".
std::string_view conclusion(Classification c);

struct VerifyResult {
    bool ok = false;
    std::string kind;
    std::string detail;
};

/// Dispatches on the "kind" field and recomputes every claim exactly.
VerifyResult verify_certificate(const Json& j);

/// The 24 Voronoi vertices of A_3^* and the pole (1, 1/2, 0).
std::vector<VecQ> truncated_octahedron();
VecQ default_pole();

}  // namespace covlat
