#include "covlat/radial_body.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>

namespace covlat {

double real_sph_harmonic(int l, int m, const Vec3& u)
{
    const double pi = std::numbers::pi;
    const double z = std::clamp(u[2], -1.0, 1.0);
    const double theta = std::acos(z);
    const double phi = std::atan2(u[1], u[0]);
    const auto am = static_cast<unsigned>(std::abs(m));
    const double y = std::sph_legendre(static_cast<unsigned>(l), am, theta);
    if (m == 0) return std::sqrt(4 * pi) * y;
    const double s = std::sqrt(8 * pi) * y;
    return m > 0 ? s * std::cos(am * phi) : s * std::sin(am * phi);
}

RadialBody::RadialBody(const std::vector<HarmonicTerm>& terms)
{
    for (const auto& t : terms) {
        if (t.degree < 0 || t.degree % 2 != 0)
            throw DomainError("body must be origin-symmetric: odd degree " + std::to_string(t.degree));
        if (std::abs(t.order) > t.degree) throw DomainError("order exceeds degree");
        if (!std::isfinite(t.coefficient)) throw DomainError("non-finite coefficient");
        coeffs_[{t.degree, t.order}] += t.coefficient;
    }
}

double RadialBody::rho(const Vec3& dir) const
{
    const double r = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    if (r == 0.0) throw DomainError("rho: zero direction");
    const Vec3 u = {dir[0] / r, dir[1] / r, dir[2] / r};
    double s = 0;
    for (const auto& [key, c] : coeffs_)
        if (c != 0.0) s += c * real_sph_harmonic(key.first, key.second, u);
    return s;
}

int RadialBody::max_degree() const
{
    int l = 0;
    for (const auto& [key, c] : coeffs_)
        if (c != 0.0) l = std::max(l, key.first);
    return l;
}

double RadialBody::eps() const
{
    double e = 0;
    for (const auto& [key, c] : coeffs_) e += std::abs(c) * std::sqrt(2.0 * key.first + 1.0);
    return e;
}

bool RadialBody::normalized() const
{
    for (const auto& [key, c] : coeffs_)
        if ((key.first == 0 || key.first == 2) && c != 0.0) return false;
    return true;
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
    }
}

double RadialBody::volume_ratio() const
{
    const int band = 3 * max_degree();
    const std::size_t nz = static_cast<std::size_t>(band / 2 + 2);
    const std::size_t nphi = static_cast<std::size_t>(band + 2);
    std::vector<double> z, w;
    gauss_legendre(nz, z, w);
    const double pi = std::numbers::pi;
    double total = 0;
    for (std::size_t i = 0; i < nz; ++i) {
        const double s = std::sqrt(std::max(0.0, 1 - z[i] * z[i]));
        double ring = 0;
        for (std::size_t k = 0; k < nphi; ++k) {
            const double phi = 2 * pi * static_cast<double>(k) / static_cast<double>(nphi);
            const double r = radius({s * std::cos(phi), s * std::sin(phi), z[i]});
            ring += r * r * r;
        }
        total += w[i] * ring / static_cast<double>(nphi);
    }
    return total / 2;  // sigma = dz dphi / (4 pi)
}

std::vector<Vec3> fibonacci_sphere(std::size_t points)
{
    std::vector<Vec3> out;
    out.reserve(points);
    const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
    for (std::size_t i = 0; i < points; ++i) {
        const double z = 1 - (2 * static_cast<double>(i) + 1) / static_cast<double>(points);
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        const double phi = golden * static_cast<double>(i);
        out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

double RadialBody::grid_max_abs_rho(std::size_t points) const
{
    double m = 0;
    for (const auto& u : fibonacci_sphere(points)) m = std::max(m, std::abs(rho(u)));
    return m;
}

RadialBody zonal_body(int l, double amplitude)
{
    // sigma-normalized Y_l^0 = sqrt(2l+1) P_l(z)
    return RadialBody({{l, 0, amplitude / std::sqrt(2.0 * l + 1.0)}});
}

RadialBody read_body_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open body file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("malformed body file: " + std::string(e.what()));
    }
    const nlohmann::json& list = j.is_object() ? j.value("terms", nlohmann::json()) : j;
    if (!list.is_array()) throw DomainError("body file needs a \"terms\" array of [degree, order, coefficient]");
    std::vector<HarmonicTerm> terms;
    for (const auto& t : list) {
        HarmonicTerm h;
        if (t.is_array() && t.size() == 3 && t[0].is_number_integer() && t[1].is_number_integer() && t[2].is_number()) {
            h = {t[0].get<int>(), t[1].get<int>(), t[2].get<double>()};
        } else if (t.is_object() && t.contains("degree") && t.contains("order") && t.contains("coefficient")) {
            h = {t["degree"].get<int>(), t["order"].get<int>(), t["coefficient"].get<double>()};
        } else {
            throw DomainError("malformed body term: " + t.dump());
        }
        terms.push_back(h);
    }
    return RadialBody(terms);
}

}  // namespace covlat
