// covlat: certificate-emitting front end.
// Exit codes: 0 verified, 1 verification failure, 2 usage error.

#include "covlat/report_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace covlat;

namespace {

constexpr int kVerified = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

// Every emitted certificate passes the independent re-check first.
int emit(const Json& j, const std::string& out, const std::string& summary)
{
    const auto v = verify_certificate(j);
    write_text(out, j.dump(2) + "\n");
    std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
    log << summary << "\n";
    if (!v.ok) {
        std::cerr << "verification failed (" << v.kind << "): " << v.detail << "\n";
        return kFailed;
    }
    log << "verified: " << v.kind << " (" << v.detail << ")\n";
    return kVerified;
}

void check_output_path(const std::string& out)
{
    if (out.empty() || out == "-") return;
    const auto dir = std::filesystem::path(out).parent_path();
    if (!dir.empty() && !std::filesystem::is_directory(dir)) throw UsageError("output directory does not exist: " + dir.string());
}

Rat parse_eps(const std::string& s)
{
    try {
        return parse_rat(s);
    } catch (const DomainError&) {
        throw UsageError("--eps expects a rational p/q, got " + s);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact covering-lattice certificates for balls and nearly spherical bodies"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Optional TOML/INI file with option values");
    std::string out;
    app.add_option("--out,-o", out, "Output file (default: stdout)");

    int dim = 3;
    const auto dims = CLI::Range(2, 5);

    auto* ball = app.add_subcommand("ball-class", "Classify the maximal simplices of A_n^*");
    ball->add_option("--dim", dim, "Dimension 2..5")->required()->check(dims);

    auto* anstar = app.add_subcommand("anstar", "Delone classes, covering radius and maximal simplices of A_n^*");
    anstar->add_option("--dim", dim, "Dimension 2..5")->required()->check(dims);

    std::string body_path;
    std::size_t grid = 1000;
    bool serial = false;
    auto* construct = app.add_subcommand("construct", "Build a covering lattice for a nearly spherical body");
    construct->add_option("--body", body_path, "Body JSON: {\"terms\": [[degree, order, coefficient], ...]}")
        ->required()
        ->check(CLI::ExistingFile);
    construct->add_option("--grid", grid, "Number of rotations scanned")->check(CLI::PositiveNumber);
    construct->add_flag("--serial", serial, "Disable OpenMP fan-out");
    int refine = 0;
    construct->add_option("--refine", refine, "Newton steps after the first-order solve")->check(CLI::Range(0, 8));

    std::size_t pair = 0;
    std::string eps_text = "1/100";
    auto* witness = app.add_subcommand("witness", "Inextensibility witness for one simplex pair");
    witness->add_option("--dim", dim, "Dimension 2..5")->required()->check(dims);
    witness->add_option("--pair", pair, "Pair index")->required();
    witness->add_option("--eps", eps_text, "Augmentation p/q");

    unsigned lmax = 1000, exact_limit = 200;
    std::string mode = "exact", csv;
    auto* cl = app.add_subcommand("cl-certify", "Nonvanishing certificates for the multipliers c_l");
    cl->add_option("--lmax", lmax, "Largest degree")->required();
    cl->add_option("--mode", mode, "exact: certificates only; float: also the double-precision envelope")
        ->check(CLI::IsMember({"exact", "float"}));
    cl->add_option("--exact-limit", exact_limit, "Largest l with an exact value");
    cl->add_option("--csv", csv, "CSV mirror of the table");

    auto* zonal = app.add_subcommand("zonal", "Zonal multipliers of the 24 truncated-octahedron vertices");
    zonal->add_option("--lmax", lmax, "Largest degree")->required();
    zonal->add_option("--csv", csv, "CSV mirror of the table");

    std::string cert;
    auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
    verify->add_option("--certificate", cert, "Certificate JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        check_output_path(out);
        if (ball->parsed()) {
            const auto lat = build_anstar(dim);
            const auto rep = classify_lattice(lat);
            return emit(eutaxy_certificate(lat, rep), out,
                        "A" + std::to_string(dim) + "*: " + std::string(to_string(rep.classification)) + ", " +
                            std::string(conclusion(rep.classification)));
        }
        if (anstar->parsed()) {
            const auto lat = build_anstar(dim);
            const auto j = lattice_report(lat);
            return emit(j, out, "A" + std::to_string(dim) + "*: mu2 = " + j["mu2"].get<std::string>() + ", " +
                                    std::to_string(j["maximal"].size()) + " maximal simplices");
        }
        if (construct->parsed()) {
            RadialBody body;
            try {
                body = read_body_json(body_path);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            const auto frame = reference_frame(build_anstar(3));
            CoverOptions opts;
            opts.refine_steps = refine;
            const auto scan = rotation_scan(body, frame, grid, serial ? Execution::serial : Execution::parallel, opts);
            const auto& u = scan.best_rotation;
            const auto c = build_cover([&](const Vec3& v) { return body.rho(apply_transpose(u, v)); }, body.eps(),
                                       body.normalized(), frame, opts);
            std::ostringstream s;
            s.precision(12);
            s << "density " << scan.density << " vs ball " << scan.ball_density << ", Delta bound "
              << scan.best_sample.delta_bound << " (rotation " << scan.best << " of " << scan.grid_size << ")";
            return emit(cover_report(body, u, c, &scan), out, s.str());
        }
        if (witness->parsed()) {
            const auto lat = build_anstar(dim);
            const auto w = extension_witness(lat, pair, parse_eps(eps_text));
            if (!w) {
                std::cerr << "no s found below the cutoff\n";
                return kFailed;
            }
            return emit(witness_report(lat, *w), out, "det T = " + to_string(w->det_t) + ", s = " + to_string(w->s));
        }
        if (cl->parsed()) {
            const auto certs = certify_cl(lmax, exact_limit);
            std::optional<EnvelopeReport> env;
            if (mode == "float" && lmax >= 2) env = bernstein_envelope(lmax);
            if (!csv.empty()) write_text(csv, cl_csv(certs));
            std::size_t zeros = 0;
            for (const auto& c : certs) zeros += c.nonzero() ? 0 : 1;
            int rc = emit(cl_report(certs, env ? &*env : nullptr), out,
                          std::to_string(certs.size() - zeros) + " of " + std::to_string(certs.size()) +
                              " multipliers certified nonzero");
            for (const auto& c : certs)
                if ((c.l == 2) != (c.status == ClCertificate::Status::Zero) || (c.l != 2 && !c.nonzero())) rc = kFailed;
            return rc;
        }
        if (zonal->parsed()) {
            const auto sp = zonal_spectrum(truncated_octahedron(), default_pole(), lmax);
            if (!csv.empty()) write_text(csv, zonal_csv(sp));
            return emit(zonal_report(sp), out, "multipliers for l = 0.." + std::to_string(lmax));
        }
        if (verify->parsed()) {
            std::ifstream in(cert);
            Json j;
            try {
                in >> j;
            } catch (const Json::exception& e) {
                throw UsageError(std::string("malformed certificate: ") + e.what());
            }
            const auto v = verify_certificate(j);
            (v.ok ? std::cout : std::cerr) << (v.ok ? "verified: " : "FAILED: ") << v.kind << " (" << v.detail << ")\n";
            return v.ok ? kVerified : kFailed;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
