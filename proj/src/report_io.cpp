#include "covlat/report_io.hpp"

#include <algorithm>
#include <sstream>

namespace covlat {

Json to_json(const Rat& r) { return to_string(r); }

Json to_json(std::span<const Rat> v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json to_json(const MatQ& m)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

Json to_json(const SymMapQ& m) { return to_json(m.matrix()); }

Json to_json(const LpOutcome& o)
{
    if (const auto* f = std::get_if<Feasible>(&o)) return {{"feasible", true}, {"coefficients", to_json(f->coeffs)}};
    const auto& inf = std::get<Infeasible>(o);
    return {{"feasible", false}, {"certificate", to_json(inf.certificate)}, {"strict", inf.strict}};
}

Json tagged(double value, double tolerance) { return {{"value", value}, {"tolerance", tolerance}}; }

Rat rat_from_json(const Json& j)
{
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw DomainError("expected a rational string, got " + j.dump());
}

VecQ vec_from_json(const Json& j)
{
    if (!j.is_array()) throw DomainError("expected an array of rationals");
    VecQ v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

MatQ mat_from_json(const Json& j)
{
    if (!j.is_array()) throw DomainError("expected a matrix");
    std::vector<VecQ> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw DomainError("ragged matrix");
    return MatQ::from_rows(rows);
}

SymMapQ sym_from_json(const Json& j) { return SymMapQ(mat_from_json(j)); }

LpOutcome outcome_from_json(const Json& j)
{
    if (j.at("feasible").get<bool>()) return Feasible{vec_from_json(j.at("coefficients"))};
    return Infeasible{sym_from_json(j.at("certificate")), j.at("strict").get<bool>()};
}

// ------------------------------------------------------------------ lattice

Json lattice_report(const LatticeModel& lat)
{
    const auto cov = covering_radius(lat);
    Json j;
    j["kind"] = "lattice";
    j["dim"] = lat.n;
    j["gram"] = to_json(lat.gram);
    if (lat.embedding) j["embedding"] = to_json(*lat.embedding);
    j["mu2"] = to_json(cov.mu2);
    j["generic"] = genericity_check(lat);
    Json classes = Json::array();
    for (const auto& d : lat.delone_classes) {
        Json vs = Json::array();
        for (const auto& v : d.vertices) vs.push_back(to_json(v));
        classes.push_back({{"vertices", vs}, {"label", d.label}, {"empty_sphere", verify_empty_sphere(lat, d)}});
    }
    j["delone_classes"] = classes;
    Json xs = Json::array();
    for (const auto& s : cov.maximal) {
        Json vs = Json::array();
        for (const auto& x : s.x) vs.push_back(to_json(x));
        xs.push_back({{"x", vs}, {"alpha", to_json(s.alpha)}, {"cr2", to_json(s.cr2)}, {"source", s.source},
                      {"partner", s.partner}});
    }
    j["maximal"] = xs;
    const auto vv = voronoi_vertices(lat);
    j["voronoi_vertex_count"] = vv.size();
    if (lat.embedding) {
        Json e = Json::array();
        for (const auto& v : vv) e.push_back(to_json(to_euclidean(lat, v)));
        j["voronoi_vertices_euclidean"] = e;
    }
    return j;
}

// ------------------------------------------------------------------ eutaxy

std::string_view conclusion(Classification c)
{
    switch (c) {
    case Classification::CriticallySemiEutactic: return "ball inextensible (relatively worst covering candidate)";
    case Classification::RedundantlySemiEutactic: return "ball extensible";
    case Classification::SemiEutactic: return "semi-eutactic, neither critical nor redundant";
    case Classification::NotSemiEutactic: return "not semi-eutactic: lattice is not covering-extreme";
    }
    return "?";
}

namespace {

Classification classification_from(const std::string& s)
{
    for (auto c : {Classification::NotSemiEutactic, Classification::SemiEutactic,
                   Classification::CriticallySemiEutactic, Classification::RedundantlySemiEutactic})
        if (to_string(c) == s) return c;
    throw DomainError("unknown classification: " + s);
}

VerifyResult fail(std::string kind, std::string why) { return {false, std::move(kind), std::move(why)}; }

int anstar_dim(const Json& j)
{
    const int n = j.at("dim").get<int>();
    if (n < 2 || n > 5) throw DomainError("dimension out of range");
    return n;
}

}  // namespace

Json eutaxy_certificate(const LatticeModel& lat, const EutaxyReport& rep)
{
    const auto maps = maximal_maps(lat);
    Json j;
    j["kind"] = "eutaxy";
    j["dim"] = lat.n;
    j["gram"] = to_json(lat.gram);
    j["target"] = to_json(identity_target(lat.gram));
    Json qs = Json::array();
    for (const auto& m : maps) qs.push_back(to_json(m.q));
    j["maps"] = qs;
    j["classification"] = std::string(to_string(rep.classification));
    j["conclusion"] = std::string(conclusion(rep.classification));
    j["pairs"] = rep.pairs;
    j["full"] = to_json(rep.full);
    j["coefficients"] = rep.coefficients ? to_json(*rep.coefficients) : Json();
    j["pair_coefficients"] = rep.pair_coefficients ? to_json(*rep.pair_coefficients) : Json();
    j["unique"] = rep.unique;
    Json rm = Json::array();
    for (const auto& r : rep.removals) rm.push_back({{"pair", r.pair}, {"outcome", to_json(r.outcome)}});
    j["removals"] = rm;
    return j;
}

namespace {

VerifyResult verify_eutaxy(const Json& j)
{
    const auto lat = build_anstar(anstar_dim(j));
    if (sym_from_json(j.at("gram")) != lat.gram) return fail("eutaxy", "Gram matrix differs from A_n^*");
    const auto maps = maximal_maps(lat);
    const auto& qs = j.at("maps");
    if (qs.size() != maps.size()) return fail("eutaxy", "wrong number of maps");
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (sym_from_json(qs[i]) != maps[i].q) return fail("eutaxy", "map " + std::to_string(i) + " differs");

    EutaxyReport rep;
    rep.classification = classification_from(j.at("classification").get<std::string>());
    rep.pairs = j.at("pairs").get<std::vector<std::vector<std::size_t>>>();
    rep.full = outcome_from_json(j.at("full"));
    if (!j.at("coefficients").is_null()) rep.coefficients = vec_from_json(j.at("coefficients"));
    if (!j.at("pair_coefficients").is_null()) rep.pair_coefficients = vec_from_json(j.at("pair_coefficients"));
    rep.unique = j.at("unique").get<bool>();
    for (const auto& r : j.at("removals")) rep.removals.push_back({r.at("pair").get<std::size_t>(), outcome_from_json(r.at("outcome"))});
    if (!verify_report(maps, identity_target(lat.gram), rep)) return fail("eutaxy", "certificate re-check failed");
    return {true, "eutaxy", std::string(to_string(rep.classification))};
}

}  // namespace

// ------------------------------------------------------------------ witness

Json witness_report(const LatticeModel& lat, const ExtensionWitness& w)
{
    Json j;
    j["kind"] = "witness";
    j["dim"] = lat.n;
    j["removed_pair"] = w.removed_pair;
    j["pole_vertex"] = w.pole_vertex;
    j["farkas"] = to_json(w.farkas);
    j["s"] = to_json(w.s);
    j["t"] = to_json(w.t);
    j["det_t"] = to_json(w.det_t);
    j["kept_cr2"] = to_json(w.kept_cr2);
    j["mu2"] = to_json(w.mu2);
    j["eps"] = to_json(w.ball.eps);
    j["pole"] = to_json(w.ball.pole);
    j["translation"] = to_json(w.translation);
    j["memberships"] = w.memberships;
    if (w.t_euclidean) j["t_euclidean"] = to_json(*w.t_euclidean);
    return j;
}

namespace {

VerifyResult verify_witness_json(const Json& j)
{
    const auto lat = build_anstar(anstar_dim(j));
    ExtensionWitness w;
    w.removed_pair = j.at("removed_pair").get<std::size_t>();
    w.pole_vertex = j.at("pole_vertex").get<std::size_t>();
    w.farkas = sym_from_json(j.at("farkas"));
    w.s = rat_from_json(j.at("s"));
    w.t = mat_from_json(j.at("t"));
    w.det_t = rat_from_json(j.at("det_t"));
    w.kept_cr2 = vec_from_json(j.at("kept_cr2"));
    w.mu2 = rat_from_json(j.at("mu2"));
    w.ball.eps = rat_from_json(j.at("eps"));
    w.ball.pole = vec_from_json(j.at("pole"));
    w.translation = rat_from_json(j.at("translation"));
    w.memberships = j.at("memberships").get<std::vector<bool>>();
    if (!verify_witness(lat, w)) return fail("witness", "witness re-check failed");
    if (!(w.det_t > 1)) return fail("witness", "det T is not above 1");
    if (!std::all_of(w.memberships.begin(), w.memberships.end(), [](bool b) { return b; }))
        return fail("witness", "a vertex is outside the augmented ball");
    return {true, "witness", "det T = " + to_string(w.det_t)};
}

}  // namespace

// ------------------------------------------------------------------ construction

namespace {

Json body_json(const RadialBody& body)
{
    Json terms = Json::array();
    for (const auto& [key, c] : body.expansion()) terms.push_back({key.first, key.second, c});
    return terms;
}

Json mat3_json(const Mat3& u)
{
    Json a = Json::array();
    for (const auto& r : u) a.push_back(r);
    return a;
}

}  // namespace

Json cover_report(const RadialBody& body, const Mat3& rotation, const CoverConstruction& c, const ScanReport* scan)
{
    Json j;
    j["kind"] = "construct";
    j["body"] = {{"terms", body_json(body)}, {"eps", tagged(body.eps(), 0.0)}, {"normalized", body.normalized()}};
    j["rotation"] = mat3_json(rotation);
    Json cov;
    Json rho = Json::array();
    for (const auto& r : c.rho) rho.push_back(to_json(r));
    cov["rho"] = rho;
    cov["m"] = to_json(c.solution.m);
    Json ts = Json::array();
    for (const auto& t : c.solution.t) ts.push_back(to_json(t));
    cov["t"] = ts;
    cov["delta"] = to_json(c.delta);
    cov["refine_steps"] = c.refine_steps;
    cov["unscaled_map"] = to_json(c.unscaled_map);
    cov["linear_map"] = to_json(c.linear_map);
    cov["basis"] = to_json(c.basis_out);
    cov["det_ratio"] = to_json(c.det_ratio);
    cov["linear_gain"] = to_json(c.linear_gain);
    cov["rho_l1"] = to_json(c.rho_l1);
    cov["eps_prime"] = to_json(c.eps_prime);
    cov["lower_bound"] = to_json(c.lower_bound);
    cov["eps_prime_tangent"] = tagged(c.eps_prime_tangent, c.tolerance);
    Json checks = Json::array();
    for (const auto& v : c.checks)
        checks.push_back({{"simplex", v.simplex}, {"vertex", v.vertex},
                          {"contracted_norm", tagged(v.contracted_norm, c.tolerance)},
                          {"radius", tagged(v.radius, c.tolerance)}, {"inside", v.inside}});
    cov["checks"] = checks;
    cov["verified"] = c.verified;
    j["cover"] = cov;
    if (scan) {
        const double tol = c.tolerance;
        j["scan"] = {{"grid_size", scan->grid_size},
                     {"best_index", scan->best},
                     {"volume_ratio", tagged(scan->volume_ratio, 1e-12)},
                     {"delta_bound", tagged(scan->best_sample.delta_bound, tol)},
                     {"min_bracket", tagged(scan->min_bracket, tol)},
                     {"harmonic_estimate", tagged(scan->harmonic_estimate, 1e-9)},
                     {"density", tagged(scan->density, tol)},
                     {"ball_density", tagged(scan->ball_density, 1e-15)},
                     {"beats_ball", scan->density < scan->ball_density}};
    }
    return j;
}

namespace {

VerifyResult verify_cover(const Json& j)
{
    std::vector<HarmonicTerm> terms;
    for (const auto& t : j.at("body").at("terms")) terms.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    const RadialBody body(terms);
    Mat3 u{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) u[i][k] = j.at("rotation")[i][k].get<double>();
    const auto frame = reference_frame(build_anstar(3));
    const auto& cov = j.at("cover");
    CoverOptions opts;
    opts.refine_steps = cov.at("refine_steps").get<int>();
    const auto c = build_cover([&](const Vec3& v) { return body.rho(apply_transpose(u, v)); }, body.eps(),
                               body.normalized(), frame, opts);

    const MatQ m = mat_from_json(cov.at("m"));
    const Rat delta = rat_from_json(cov.at("delta"));
    const Rat det_ratio = rat_from_json(cov.at("det_ratio"));
    if (m != c.solution.m.matrix() || delta != c.delta || det_ratio != c.det_ratio)
        return fail("construct", "recomputed construction differs");
    if (mat_from_json(cov.at("basis")) != c.basis_out) return fail("construct", "basis differs");
    // det_ratio = (1 - delta)^3 det(unscaled), unscaled = Id + M without refinement
    const MatQ unscaled = mat_from_json(cov.at("unscaled_map"));
    if (opts.refine_steps == 0 && unscaled != MatQ::identity(3) + m) return fail("construct", "unscaled map is not Id + M");
    if (unscaled != c.unscaled_map) return fail("construct", "unscaled map differs");
    const Rat s = 1 - delta;
    if (det_ratio != s * s * s * det(unscaled)) return fail("construct", "det_ratio identity fails");
    if (rat_from_json(cov.at("lower_bound")) != c.lower_bound || c.det_ratio < c.lower_bound)
        return fail("construct", "lower bound check fails");
    if (!c.verified) return fail("construct", "membership check fails");
    return {true, "construct", "det_ratio = " + to_string(c.det_ratio)};
}

}  // namespace

// ------------------------------------------------------------------ harmonic

Json cl_report(const std::vector<ClCertificate>& certs, const EnvelopeReport* envelope)
{
    Json j;
    j["kind"] = "cl-certify";
    j["lmax"] = certs.empty() ? 0u : certs.back().l;
    Json rows = Json::array();
    std::vector<unsigned> zeros, undecided;
    for (const auto& c : certs) {
        Json r = {{"l", c.l}, {"residue", c.residue}, {"status", std::string(to_string(c.status))}};
        if (c.exact) r["exact"] = to_json(*c.exact);
        rows.push_back(r);
        if (c.status == ClCertificate::Status::Zero) zeros.push_back(c.l);
        if (c.status == ClCertificate::Status::Undecided) undecided.push_back(c.l);
    }
    j["rows"] = rows;
    j["zero_at"] = zeros;
    j["undecided_at"] = undecided;
    if (envelope)
        j["envelope"] = {{"lmax", envelope->lmax},
                         {"c_empirical", tagged(envelope->c_empirical, envelope->tolerance)},
                         {"worst_l", envelope->worst_l},
                         {"c_bernstein", tagged(envelope->c_bernstein, envelope->tolerance)},
                         {"node_bounds_hold", envelope->node_bounds_hold}};
    return j;
}

std::string cl_csv(const std::vector<ClCertificate>& certs)
{
    std::ostringstream os;
    os << "l,status,residue_mod16,exact\n";
    for (const auto& c : certs)
        os << c.l << ',' << to_string(c.status) << ',' << c.residue << ',' << (c.exact ? to_string(*c.exact) : "")
           << '\n';
    return os.str();
}

namespace {

VerifyResult verify_cl(const Json& j)
{
    const auto lmax = j.at("lmax").get<unsigned>();
    const auto& rows = j.at("rows");
    if (rows.size() != lmax + 1) return fail("cl-certify", "row count differs from lmax + 1");
    // Independent recomputation: residues from the table, exact values via Legendre sums.
    std::array<std::vector<unsigned>, 6> mod;
    for (int k = 0; k <= 5; ++k) mod[static_cast<std::size_t>(k)] = rescaled_q_mod16_table(lmax, k);
    for (unsigned l = 0; l <= lmax; ++l) {
        const auto& r = rows[l];
        unsigned res = 0;
        for (std::size_t k = 0; k < 6; ++k) res += static_cast<unsigned>(cl_weights[k]) * mod[k][l];
        if (r.at("l").get<unsigned>() != l || r.at("residue").get<unsigned>() != res % 16)
            return fail("cl-certify", "residue mismatch at l = " + std::to_string(l));
        const auto status = r.at("status").get<std::string>();
        if (r.contains("exact")) {
            Rat v = 0;
            for (int k = 0; k <= 5; ++k)
                v += cl_weights[static_cast<std::size_t>(k)] * legendre_rational(l, make_rat(k, 5));
            if (rat_from_json(r.at("exact")) != v) return fail("cl-certify", "exact value wrong at l = " + std::to_string(l));
            if ((sgn(v) == 0) != (status == "zero")) return fail("cl-certify", "status wrong at l = " + std::to_string(l));
        } else if (status == "nonzero-mod16" && res % 16 == 0) {
            return fail("cl-certify", "zero residue claimed nonzero at l = " + std::to_string(l));
        } else if (status == "zero") {
            return fail("cl-certify", "zero claimed without an exact value");
        }
    }
    return {true, "cl-certify", "l = 0.." + std::to_string(lmax)};
}

}  // namespace

Json zonal_report(const MultiplierSpectrum& sp)
{
    Json j;
    j["kind"] = "zonal";
    j["lmax"] = sp.multipliers.empty() ? 0 : sp.multipliers.size() - 1;
    j["cosines"] = to_json(sp.cosines);
    Json rows = Json::array();
    for (std::size_t l = 0; l < sp.multipliers.size(); ++l)
        rows.push_back({{"l", l},
                        {"multiplier", to_json(sp.multipliers[l])},
                        {"c", to_json(sp.c[l])},
                        {"agrees", l % 2 == 0 ? sp.multipliers[l] == sp.c[l] : sgn(sp.multipliers[l]) == 0}});
    j["rows"] = rows;
    return j;
}

std::string zonal_csv(const MultiplierSpectrum& sp)
{
    std::ostringstream os;
    os << "l,multiplier,c_l\n";
    for (std::size_t l = 0; l < sp.multipliers.size(); ++l)
        os << l << ',' << to_string(sp.multipliers[l]) << ',' << to_string(sp.c[l]) << '\n';
    return os.str();
}

std::vector<VecQ> truncated_octahedron()
{
    const auto lat = build_anstar(3);
    std::vector<VecQ> out;
    for (const auto& v : voronoi_vertices(lat)) out.push_back(to_euclidean(lat, v));
    return out;
}

VecQ default_pole() { return {Rat(1), make_rat(1, 2), Rat(0)}; }

namespace {

VerifyResult verify_zonal(const Json& j)
{
    const auto lmax = j.at("lmax").get<unsigned>();
    const auto sp = zonal_spectrum(truncated_octahedron(), default_pole(), lmax);
    if (vec_from_json(j.at("cosines")) != sp.cosines) return fail("zonal", "cosines differ");
    for (unsigned l = 0; l <= lmax; ++l) {
        const auto& r = j.at("rows")[l];
        if (rat_from_json(r.at("multiplier")) != sp.multipliers[l] || rat_from_json(r.at("c")) != sp.c[l])
            return fail("zonal", "row " + std::to_string(l) + " differs");
        const bool agrees = l % 2 == 0 ? sp.multipliers[l] == sp.c[l] : sgn(sp.multipliers[l]) == 0;
        if (!agrees || !r.at("agrees").get<bool>()) return fail("zonal", "multiplier disagrees at l = " + std::to_string(l));
    }
    return {true, "zonal", "l = 0.." + std::to_string(lmax)};
}

VerifyResult verify_lattice(const Json& j)
{
    const auto lat = build_anstar(anstar_dim(j));
    const auto ref = lattice_report(lat);
    if (ref != j) return fail("lattice", "report differs from the rebuilt lattice");
    if (!j.at("generic").get<bool>()) return fail("lattice", "lattice is not generic");
    return {true, "lattice", "mu2 = " + j.at("mu2").get<std::string>()};
}

}  // namespace

VerifyResult verify_certificate(const Json& j)
{
    if (!j.is_object() || !j.contains("kind")) return fail("?", "missing \"kind\"");
    const auto kind = j.at("kind").get<std::string>();
    try {
        if (kind == "eutaxy") return verify_eutaxy(j);
        if (kind == "witness") return verify_witness_json(j);
        if (kind == "construct") return verify_cover(j);
        if (kind == "cl-certify") return verify_cl(j);
        if (kind == "zonal") return verify_zonal(j);
        if (kind == "lattice") return verify_lattice(j);
    } catch (const Json::exception& e) {
        return fail(kind, std::string("malformed certificate: ") + e.what());
    } catch (const DomainError& e) {
        return fail(kind, std::string("malformed certificate: ") + e.what());
    }
    return fail(kind, "unknown certificate kind");
}

}  // namespace covlat
