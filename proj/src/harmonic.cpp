#include "covlat/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace covlat {

Int rescaled_q(unsigned l, int k) { return rescaled_q_table(l, k).back(); }

unsigned rescaled_q_mod16(unsigned l, int k) { return rescaled_q_mod16_table(l, k).back(); }

std::vector<Int> rescaled_q_table(unsigned lmax, int k)
{
    if (k < 0 || k > 5) throw DomainError("rescaled_q: k must lie in 0..5");
    std::vector<Int> q(lmax + 1);
    q[0] = 1;
    if (lmax >= 1) q[1] = k;
    for (unsigned l = 1; l < lmax; ++l) {
        const Int ll = l;
        q[l + 1] = Int(2 * l + 1) * k * q[l] - 25 * ll * ll * q[l - 1];
    }
    return q;
}

std::vector<unsigned> rescaled_q_mod16_table(unsigned lmax, int k)
{
    if (k < 0 || k > 5) throw DomainError("rescaled_q: k must lie in 0..5");
    std::vector<unsigned> q(lmax + 1);
    q[0] = 1;
    if (lmax >= 1) q[1] = static_cast<unsigned>(k);
    for (unsigned l = 1; l < lmax; ++l) {
        const unsigned a = ((2 * l + 1) % 16) * static_cast<unsigned>(k) % 16 * q[l] % 16;
        const unsigned b = 25 % 16 * (l % 16) % 16 * (l % 16) % 16 * q[l - 1] % 16;
        q[l + 1] = (a + 16 - b) % 16;
    }
    return q;
}

Rat legendre_rational(unsigned l, const Rat& t)
{
    Rat prev = 1, cur = t;
    if (l == 0) return prev;
    for (unsigned j = 1; j < l; ++j) {
        Rat next = (Rat(2 * j + 1) * t * cur - Rat(j) * prev) / Rat(j + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double legendre(unsigned l, double t)
{
    double prev = 1.0, cur = t;
    if (l == 0) return prev;
    for (unsigned j = 1; j < l; ++j) {
        const double next = ((2.0 * j + 1.0) * t * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

Int five_pow_factorial(unsigned l)
{
    Int p, f;
    mpz_ui_pow_ui(p.get_mpz_t(), 5, l);
    mpz_fac_ui(f.get_mpz_t(), l);
    return p * f;
}

}  // namespace

Rat c_l(unsigned l)
{
    Int sum = 0;
    for (int k = 0; k <= 5; ++k) sum += cl_weights[static_cast<std::size_t>(k)] * rescaled_q(l, k);
    return make_rat(sum, five_pow_factorial(l));
}

std::string_view to_string(ClCertificate::Status s)
{
    switch (s) {
    case ClCertificate::Status::Zero: return "zero";
    case ClCertificate::Status::NonzeroExact: return "nonzero-exact";
    case ClCertificate::Status::NonzeroMod16: return "nonzero-mod16";
    case ClCertificate::Status::Undecided: return "undecided";
    }
    return "?";
}

std::vector<ClCertificate> certify_cl(unsigned lmax, unsigned exact_limit)
{
    const unsigned exact_top = std::min(lmax, std::max(exact_limit, 5u));
    std::array<std::vector<unsigned>, 6> mod;
    std::array<std::vector<Int>, 6> exact;
    for (int k = 0; k <= 5; ++k) {
        mod[static_cast<std::size_t>(k)] = rescaled_q_mod16_table(lmax, k);
        exact[static_cast<std::size_t>(k)] = rescaled_q_table(exact_top, k);
    }

    std::vector<ClCertificate> out(lmax + 1);
    Int scale = 1;  // 5^l l!
    for (unsigned l = 0; l <= lmax; ++l) {
        if (l > 0) scale *= 5 * l;
        auto& c = out[l];
        c.l = l;
        unsigned r = 0;
        for (std::size_t k = 0; k < 6; ++k) r += static_cast<unsigned>(cl_weights[k]) * mod[k][l];
        c.residue = r % 16;

        if (l <= exact_top && (l <= exact_limit || l < 6)) {
            Int sum = 0;
            for (std::size_t k = 0; k < 6; ++k) sum += cl_weights[k] * exact[k][l];
            c.exact = make_rat(sum, scale);
            c.status = sgn(*c.exact) == 0 ? ClCertificate::Status::Zero : ClCertificate::Status::NonzeroExact;
        } else if (c.residue != 0) {
            c.status = ClCertificate::Status::NonzeroMod16;
        } else {
            c.status = ClCertificate::Status::Undecided;
        }
    }
    return out;
}

EnvelopeReport bernstein_envelope(unsigned lmax)
{
    if (lmax < 2) throw DomainError("bernstein_envelope: lmax must be at least 2");
    EnvelopeReport rep;
    rep.lmax = lmax;
    const double pi = std::numbers::pi;
    for (int k = 0; k <= 4; ++k) {
        const double t = k / 5.0;
        rep.c_bernstein += cl_weights[static_cast<std::size_t>(k)] / std::sqrt(pi * std::sqrt(1 - t * t) / 2);
    }

    // Run the six recurrences side by side.
    std::array<double, 6> prev{}, cur{};
    for (int k = 0; k <= 5; ++k) {
        prev[static_cast<std::size_t>(k)] = 1.0;
        cur[static_cast<std::size_t>(k)] = k / 5.0;
    }
    for (unsigned l = 1; l <= lmax; ++l) {
        if (l >= 2) {
            for (std::size_t k = 0; k < 6; ++k) {
                const double t = static_cast<double>(k) / 5.0;
                const double j = l - 1;
                const double next = ((2 * j + 1) * t * cur[k] - j * prev[k]) / (j + 1);
                prev[k] = cur[k];
                cur[k] = next;
            }
        }
        for (std::size_t k = 0; k <= 4; ++k) {
            const double t = static_cast<double>(k) / 5.0;
            const double bound = 1.0 / std::sqrt(pi * l * std::sqrt(1 - t * t) / 2);
            if (std::abs(cur[k]) > bound + rep.tolerance) rep.node_bounds_hold = false;
        }
        if (l % 2 != 0) continue;
        double c = 0;
        for (std::size_t k = 0; k < 6; ++k) c += cl_weights[k] * cur[k];
        const double scaled = std::abs(c - 1) * std::sqrt(static_cast<double>(l));
        if (scaled > rep.c_empirical) {
            rep.c_empirical = scaled;
            rep.worst_l = l;
        }
    }
    return rep;
}

MultiplierSpectrum zonal_spectrum(std::span<const VecQ> vertices, std::span<const Rat> pole, unsigned lmax)
{
    if (vertices.size() != 24) throw VertexSetMismatch("expected the 24 vertices of the truncated octahedron");
    const Rat p2 = dot(pole, pole);
    if (sgn(p2) == 0) throw DomainError("zero pole");

    MultiplierSpectrum sp;
    for (const auto& x : vertices) {
        if (dot(x, x) != p2) throw VertexSetMismatch("vertices are not on the pole's sphere");
        sp.cosines.push_back(dot(pole, x) / p2);
    }
    std::sort(sp.cosines.begin(), sp.cosines.end(), std::greater<>());

    // Multiplicity of +-k/5 per sign, k = 5..1; 0 appears once per sign.
    const std::array<int, 6> per_sign = {1, 2, 4, 1, 3, 1};
    for (int k = 0; k <= 5; ++k) {
        const Rat t = make_rat(k, 5);
        const auto pos = std::count(sp.cosines.begin(), sp.cosines.end(), t);
        const auto neg = std::count(sp.cosines.begin(), sp.cosines.end(), Rat(-t));
        const long want = k == 0 ? 2 : per_sign[static_cast<std::size_t>(k)];
        if (k == 0 ? pos != want : (pos != want || neg != want))
            throw VertexSetMismatch("cosine multiset differs from the truncated octahedron pattern");
    }

    for (unsigned l = 0; l <= lmax; ++l) {
        Rat m = 0;
        for (const auto& t : sp.cosines) m += legendre_rational(l, t);
        sp.multipliers.push_back(m / 2);
        sp.c.push_back(c_l(l));
    }
    return sp;
}

namespace {

void check_even(int l)
{
    if (l < 0 || l % 2 != 0) throw DomainError("expansion is not even: degree " + std::to_string(l));
}

}  // namespace

HarmonicExpansion<Rat> phi_transform(const HarmonicExpansion<Rat>& f, bool allow_degree_two)
{
    HarmonicExpansion<Rat> out;
    for (const auto& [key, v] : f) {
        check_even(key.first);
        if (key.first == 2 && sgn(v) != 0 && !allow_degree_two)
            throw DomainError("degree-2 component present: input is outside Z");
        out[key] = c_l(static_cast<unsigned>(key.first)) * v;
    }
    return out;
}

HarmonicExpansion<Rat> phi_inverse(const HarmonicExpansion<Rat>& f)
{
    HarmonicExpansion<Rat> out;
    for (const auto& [key, v] : f) {
        check_even(key.first);
        const Rat c = c_l(static_cast<unsigned>(key.first));
        if (sgn(c) == 0) {
            if (sgn(v) != 0) throw DomainError("inverse undefined on degree " + std::to_string(key.first));
            out[key] = 0;
            continue;
        }
        out[key] = v / c;
    }
    return out;
}

HarmonicExpansion<double> phi_transform(const HarmonicExpansion<double>& f)
{
    HarmonicExpansion<double> out;
    for (const auto& [key, v] : f) {
        check_even(key.first);
        if (key.first == 2 && v != 0.0) throw DomainError("degree-2 component present: input is outside Z");
        out[key] = c_l(static_cast<unsigned>(key.first)).get_d() * v;
    }
    return out;
}

}  // namespace covlat
