#pragma once

// Exact rational scalars, vectors, dense matrices and symmetric maps.
//
// Every quantity here is exact: GMP rationals are kept in canonical form
// (lowest terms, positive denominator) after each arithmetic operation.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace covlat {

using Rat = mpq_class;
using Int = mpz_class;
using VecQ = std::vector<Rat>;

/// Thrown on malformed input (shape mismatch, out-of-range argument).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an exact post-condition fails. Signals a bug, not bad input.
class CertificateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

Rat make_rat(long num, long den = 1);
Rat make_rat(const Int& num, const Int& den);

/// "p/q" (or "p" when q = 1).
std::string to_string(const Rat& r);
/// Accepts "p", "p/q", "-p/q"; the result is canonicalized.
Rat parse_rat(std::string_view text);

/// Exact conversion of a finite double (doubles are dyadic rationals).
Rat rat_from_double(double x);

VecQ zeros(std::size_t n);
Rat dot(std::span<const Rat> a, std::span<const Rat> b);
VecQ add(std::span<const Rat> a, std::span<const Rat> b);
VecQ sub(std::span<const Rat> a, std::span<const Rat> b);
VecQ scale(const Rat& s, std::span<const Rat> a);
VecQ negate(std::span<const Rat> a);
bool is_zero(std::span<const Rat> a);

class MatQ {
public:
    MatQ() = default;
    MatQ(std::size_t rows, std::size_t cols);
    MatQ(std::initializer_list<std::initializer_list<Rat>> rows);

    static MatQ identity(std::size_t n);
    /// Matrix whose columns are the given vectors.
    static MatQ from_columns(std::span<const VecQ> cols);
    static MatQ from_rows(std::span<const VecQ> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    VecQ row(std::size_t i) const;
    VecQ col(std::size_t j) const;

    MatQ transpose() const;
    Rat trace() const;

    friend MatQ operator+(const MatQ& a, const MatQ& b);
    friend MatQ operator-(const MatQ& a, const MatQ& b);
    friend MatQ operator*(const MatQ& a, const MatQ& b);
    friend MatQ operator*(const Rat& s, const MatQ& a);
    friend VecQ operator*(const MatQ& a, std::span<const Rat> v);
    friend bool operator==(const MatQ& a, const MatQ& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Symmetric n x n map with the trace inner product <A, B> = trace(AB).
class SymMapQ {
public:
    SymMapQ() = default;
    explicit SymMapQ(std::size_t n);
    /// Throws DomainError unless m is square and symmetric.
    explicit SymMapQ(MatQ m);

    static SymMapQ identity(std::size_t n);
    /// sum_j w_j v_j v_j^T
    static SymMapQ weighted_outer_sum(std::span<const VecQ> vs, std::span<const Rat> weights);

    std::size_t dim() const { return m_.rows(); }
    const Rat& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, const Rat& v);

    const MatQ& matrix() const { return m_; }
    Rat trace() const { return m_.trace(); }
    /// x^T A x
    Rat quadratic(std::span<const Rat> x) const;

    /// Coordinates on the upper triangle, row-major (i <= j); length n(n+1)/2.
    VecQ upper() const;
    static SymMapQ from_upper(std::size_t n, std::span<const Rat> coords);

    friend SymMapQ operator+(const SymMapQ& a, const SymMapQ& b);
    friend SymMapQ operator-(const SymMapQ& a, const SymMapQ& b);
    friend SymMapQ operator*(const Rat& s, const SymMapQ& a);
    friend bool operator==(const SymMapQ& a, const SymMapQ& b) { return a.m_ == b.m_; }

private:
    MatQ m_;
};

Rat inner(const SymMapQ& a, const SymMapQ& b);

/// Congruence P^T A P.
SymMapQ congruence(const MatQ& p, const SymMapQ& a);

/// Exact determinant by fraction-free (Bareiss) elimination on the
/// row-scaled integer matrix.
Rat det(const MatQ& m);

std::size_t rank(const MatQ& m);

/// Exact inverse; std::nullopt when singular.
std::optional<MatQ> inverse(const MatQ& m);

struct LinSolveResult {
    std::optional<VecQ> particular;
    std::vector<VecQ> nullspace_basis;

    bool consistent() const { return particular.has_value(); }
    bool unique() const { return particular.has_value() && nullspace_basis.empty(); }
};

/// Full solution set of A x = b.
LinSolveResult solve_affine(const MatQ& a, std::span<const Rat> b);

std::vector<VecQ> nullspace(const MatQ& a);

/// Raised by min_norm_solution when the constraint maps are linearly dependent.
class DependentConstraints : public DomainError {
public:
    DependentConstraints(std::string what, VecQ witness, bool consistent)
        : DomainError(std::move(what)), witness_(std::move(witness)), consistent_(consistent) {}
    /// w with sum_k w_k Q_k = 0.
    const VecQ& witness() const { return witness_; }
    /// Whether the right-hand sides still agree with the dependency.
    bool consistent() const { return consistent_; }

private:
    VecQ witness_;
    bool consistent_;
};

struct MapConstraint {
    SymMapQ map;
    Rat value;
};

/// The unique M of least <M,M> with <M, Q_i> = value_i for all i.
SymMapQ min_norm_solution(std::span<const MapConstraint> constraints);

}  // namespace covlat
