#include "covlat/rotation_scan.hpp"

#include <cmath>
#include <exception>
#include <numbers>

namespace covlat {

std::vector<Mat3> rotation_grid(std::size_t size)
{
    std::vector<Mat3> out;
    if (size == 0) return out;
    out.push_back({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});

    // Generalized golden ratio for three dimensions (real root of x^3 = x + 1).
    const double g = 1.32471795724474602596;
    const std::array<double, 3> alpha = {1 / g, 1 / (g * g), 1 / (g * g * g)};
    const double pi = std::numbers::pi;
    for (std::size_t k = 1; k < size; ++k) {
        std::array<double, 3> u{};
        for (std::size_t d = 0; d < 3; ++d) {
            double ip;
            u[d] = std::modf(0.5 + static_cast<double>(k) * alpha[d], &ip);
        }
        const double a = std::sqrt(1 - u[0]), b = std::sqrt(u[0]);
        const double x = a * std::sin(2 * pi * u[1]), y = a * std::cos(2 * pi * u[1]);
        const double z = b * std::sin(2 * pi * u[2]), w = b * std::cos(2 * pi * u[2]);
        out.push_back({{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                        {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                        {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}});
    }
    return out;
}

Vec3 apply(const Mat3& u, const Vec3& v)
{
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i) r[i] = u[i][0] * v[0] + u[i][1] * v[1] + u[i][2] * v[2];
    return r;
}

Vec3 apply_transpose(const Mat3& u, const Vec3& v)
{
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i) r[i] = u[0][i] * v[0] + u[1][i] * v[1] + u[2][i] * v[2];
    return r;
}

double ball_covering_density() { return 5 * std::sqrt(5.0) * std::numbers::pi / 24; }

double harmonic_estimate(const RadialBody& body, std::size_t points)
{
    const RadialBody phi(
        [&] {
            std::vector<HarmonicTerm> t;
            auto e = body.expansion();
            std::erase_if(e, [](const auto& kv) { return kv.first.first == 2; });  // c_2 = 0
            for (const auto& [key, v] : phi_transform(e)) t.push_back({key.first, key.second, v});
            return t;
        }());
    double m = 0;
    for (const auto& u : fibonacci_sphere(points)) m = std::min(m, -0.25 * phi.rho(u));
    return m;
}

namespace {

RotationSample sample_at(const RadialBody& body, const Mat3& u, double volume_ratio, const ReferenceFrame& frame,
                         const CoverOptions& opts)
{
    const auto c = build_cover([&](const Vec3& v) { return body.rho(apply_transpose(u, v)); }, body.eps(),
                               body.normalized(), frame, opts);
    RotationSample s;
    s.linear_gain = c.linear_gain.get_d();
    s.det_ratio = c.det_ratio.get_d();
    s.lower_bound = c.lower_bound.get_d();
    s.delta = c.delta.get_d();
    s.delta_bound = 1 - s.det_ratio / volume_ratio;
    s.bracket = 1 - s.lower_bound;
    return s;
}

}  // namespace

ScanReport rotation_scan(const RadialBody& body, const ReferenceFrame& frame, std::size_t grid_size, Execution exec,
                         const CoverOptions& opts)
{
    if (frame.lattice.n != 3) throw DomainError("rotation scan is three-dimensional");
    if (!body.normalized() && !opts.allow_unnormalized)
        throw PreconditionError("body is not normalized (degree-0 or degree-2 content)");
    if (!(body.eps() <= opts.max_eps)) throw PreconditionError("body is too aspherical: eps = " + std::to_string(body.eps()));
    if (grid_size == 0) throw DomainError("empty rotation grid");

    ScanReport r;
    r.grid_size = grid_size;
    r.volume_ratio = body.volume_ratio();
    const auto grid = rotation_grid(grid_size);
    r.samples.resize(grid.size());

    if (exec == Execution::parallel) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (std::size_t k = 0; k < grid.size(); ++k) {
            try {
                r.samples[k] = sample_at(body, grid[k], r.volume_ratio, frame, opts);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (std::size_t k = 0; k < grid.size(); ++k) r.samples[k] = sample_at(body, grid[k], r.volume_ratio, frame, opts);
    }

    r.min_bracket = r.samples[0].bracket;
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
        if (r.samples[k].delta_bound < r.samples[r.best].delta_bound) r.best = k;
        r.min_bracket = std::min(r.min_bracket, r.samples[k].bracket);
    }
    r.best_rotation = grid[r.best];
    r.best_sample = r.samples[r.best];
    r.harmonic_estimate = harmonic_estimate(body);
    r.ball_density = ball_covering_density();
    r.density = r.ball_density * r.volume_ratio / r.best_sample.det_ratio;
    return r;
}

}  // namespace covlat
