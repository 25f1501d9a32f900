#include "covlat/exact.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace covlat {

Rat make_rat(long num, long den)
{
    if (den == 0) throw DomainError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0) throw DomainError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& t) {
        t.erase(0, t.find_first_not_of(" \t"));
        t.erase(t.find_last_not_of(" \t") + 1);
    };
    trim(s);
    if (s.empty()) throw DomainError("empty rational");
    Int num, den(1);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (num.set_str(s, 10) != 0) throw DomainError("bad rational: " + s);
        } else {
            std::string a = s.substr(0, slash), b = s.substr(slash + 1);
            trim(a);
            trim(b);
            if (num.set_str(a, 10) != 0 || den.set_str(b, 10) != 0)
                throw DomainError("bad rational: " + s);
        }
    } catch (const std::invalid_argument&) {
        throw DomainError("bad rational: " + s);
    }
    return make_rat(num, den);
}

Rat rat_from_double(double x)
{
    if (!std::isfinite(x)) throw DomainError("non-finite value cannot be made exact");
    Rat r(x);
    r.canonicalize();
    return r;
}

VecQ zeros(std::size_t n) { return VecQ(n, Rat(0)); }

Rat dot(std::span<const Rat> a, std::span<const Rat> b)
{
    if (a.size() != b.size()) throw DomainError("dot: size mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

VecQ add(std::span<const Rat> a, std::span<const Rat> b)
{
    if (a.size() != b.size()) throw DomainError("add: size mismatch");
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

VecQ sub(std::span<const Rat> a, std::span<const Rat> b)
{
    if (a.size() != b.size()) throw DomainError("sub: size mismatch");
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

VecQ scale(const Rat& s, std::span<const Rat> a)
{
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

VecQ negate(std::span<const Rat> a)
{
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool is_zero(std::span<const Rat> a)
{
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return sgn(x) == 0; });
}

// ---------------------------------------------------------------- MatQ

MatQ::MatQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

MatQ::MatQ(std::initializer_list<std::initializer_list<Rat>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DomainError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

MatQ MatQ::identity(std::size_t n)
{
    MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

MatQ MatQ::from_columns(std::span<const VecQ> cols)
{
    if (cols.empty()) return {};
    MatQ m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows_) throw DomainError("from_columns: ragged input");
        for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

MatQ MatQ::from_rows(std::span<const VecQ> rows)
{
    if (rows.empty()) return {};
    MatQ m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw DomainError("from_rows: ragged input");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

VecQ MatQ::row(std::size_t i) const
{
    return VecQ(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

VecQ MatQ::col(std::size_t j) const
{
    VecQ c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

MatQ MatQ::transpose() const
{
    MatQ t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Rat MatQ::trace() const
{
    if (!square()) throw DomainError("trace of non-square matrix");
    Rat t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

MatQ operator+(const MatQ& a, const MatQ& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix add: shape mismatch");
    MatQ r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
}

MatQ operator-(const MatQ& a, const MatQ& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sub: shape mismatch");
    MatQ r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
}

MatQ operator*(const MatQ& a, const MatQ& b)
{
    if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
    MatQ r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rat& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

MatQ operator*(const Rat& s, const MatQ& a)
{
    MatQ r = a;
    for (auto& x : r.data_) x *= s;
    return r;
}

VecQ operator*(const MatQ& a, std::span<const Rat> v)
{
    if (a.cols_ != v.size()) throw DomainError("matrix-vector product: shape mismatch");
    VecQ r(a.rows_, Rat(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
}

bool operator==(const MatQ& a, const MatQ& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ------------------------------------------------------------- SymMapQ

SymMapQ::SymMapQ(std::size_t n) : m_(n, n) {}

SymMapQ::SymMapQ(MatQ m) : m_(std::move(m))
{
    if (!m_.square()) throw DomainError("symmetric map must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = i + 1; j < m_.cols(); ++j)
            if (m_(i, j) != m_(j, i)) throw DomainError("matrix is not symmetric");
}

SymMapQ SymMapQ::identity(std::size_t n) { return SymMapQ(MatQ::identity(n)); }

SymMapQ SymMapQ::weighted_outer_sum(std::span<const VecQ> vs, std::span<const Rat> weights)
{
    if (vs.size() != weights.size() || vs.empty()) throw DomainError("weighted_outer_sum: bad input");
    const std::size_t n = vs[0].size();
    SymMapQ s(n);
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (vs[k].size() != n) throw DomainError("weighted_outer_sum: ragged input");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Rat v = s.m_(i, j) + weights[k] * vs[k][i] * vs[k][j];
                s.set(i, j, v);
            }
    }
    return s;
}

void SymMapQ::set(std::size_t i, std::size_t j, const Rat& v)
{
    m_(i, j) = v;
    m_(j, i) = v;
}

Rat SymMapQ::quadratic(std::span<const Rat> x) const
{
    const VecQ ax = m_ * x;
    return dot(x, ax);
}

VecQ SymMapQ::upper() const
{
    const std::size_t n = dim();
    VecQ u;
    u.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) u.push_back(m_(i, j));
    return u;
}

SymMapQ SymMapQ::from_upper(std::size_t n, std::span<const Rat> coords)
{
    if (coords.size() != n * (n + 1) / 2) throw DomainError("from_upper: wrong coordinate count");
    SymMapQ s(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s.set(i, j, coords[k++]);
    return s;
}

SymMapQ operator+(const SymMapQ& a, const SymMapQ& b) { return SymMapQ(a.m_ + b.m_); }
SymMapQ operator-(const SymMapQ& a, const SymMapQ& b) { return SymMapQ(a.m_ - b.m_); }
SymMapQ operator*(const Rat& s, const SymMapQ& a) { return SymMapQ(s * a.m_); }

Rat inner(const SymMapQ& a, const SymMapQ& b)
{
    if (a.dim() != b.dim()) throw DomainError("inner: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * b(j, i);
    return s;
}

SymMapQ congruence(const MatQ& p, const SymMapQ& a) { return SymMapQ(p.transpose() * a.matrix() * p); }

// --------------------------------------------------------- elimination

namespace {

// Integer matrix with each row multiplied by the lcm of its denominators.
// Returns the product of the row multipliers.
Int integer_rows(const MatQ& m, std::vector<Int>& out)
{
    out.assign(m.rows() * m.cols(), Int(0));
    Int total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j).get_num() * (l / m(i, j).get_den());
        total *= l;
    }
    return total;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(MatQ& a)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        const Rat inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            const Rat f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rat det(const MatQ& m)
{
    if (!m.square()) throw DomainError("det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<Int> a;
    const Int row_scale = integer_rows(m, a);
    auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * n + j]; };

    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = v;
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    Rat d(Int(sign) * at(n - 1, n - 1), row_scale);
    d.canonicalize();
    return d;
}

std::size_t rank(const MatQ& m)
{
    MatQ a = m;
    return rref(a).size();
}

std::optional<MatQ> inverse(const MatQ& m)
{
    if (!m.square()) throw DomainError("inverse: matrix is not square");
    const std::size_t n = m.rows();
    MatQ aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    MatQ inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

LinSolveResult solve_affine(const MatQ& a, std::span<const Rat> b)
{
    if (a.rows() != b.size()) throw DomainError("solve_affine: right-hand side has wrong length");
    const std::size_t n = a.cols();
    MatQ aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    const auto piv = rref(aug);

    LinSolveResult res;
    if (!piv.empty() && piv.back() == n) return res;  // 0 = 1 row

    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;

    VecQ x = zeros(n);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, n);
    res.particular = std::move(x);

    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        VecQ v = zeros(n);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -aug(r, f);
        res.nullspace_basis.push_back(std::move(v));
    }
    return res;
}

std::vector<VecQ> nullspace(const MatQ& a) { return solve_affine(a, zeros(a.rows())).nullspace_basis; }

SymMapQ min_norm_solution(std::span<const MapConstraint> constraints)
{
    if (constraints.empty()) throw DomainError("min_norm_solution: no constraints");
    const std::size_t n = constraints[0].map.dim();
    const std::size_t k = constraints.size();
    MatQ gram(k, k);
    VecQ rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (constraints[i].map.dim() != n) throw DomainError("min_norm_solution: dimension mismatch");
        rhs[i] = constraints[i].value;
        for (std::size_t j = i; j < k; ++j) {
            gram(i, j) = inner(constraints[i].map, constraints[j].map);
            gram(j, i) = gram(i, j);
        }
    }
    const auto sol = solve_affine(gram, rhs);
    if (!sol.unique()) {
        // The Gram matrix is PSD, so its kernel is exactly the dependency set of the maps.
        VecQ w = nullspace(gram).front();
        throw DependentConstraints("constraint maps are linearly dependent", std::move(w), sol.consistent());
    }
    SymMapQ m(n);
    for (std::size_t i = 0; i < k; ++i) m = m + (*sol.particular)[i] * constraints[i].map;
    return m;
}

}  // namespace covlat
