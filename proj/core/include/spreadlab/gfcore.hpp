// Exact arithmetic: finite fields, big integers, rationals.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfcore {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind {
    NotAPrimePower,
    OrderTooLarge,
    AmbientMismatch,
    BudgetExceeded,
    ParameterMismatch,
    NotNested,
    DivisorMismatch,
    BadPetalCount,
    RangeError,
    CongruenceViolated,
    DepthExceeded,
    WrongResidue,
    NotApplicable,
    InconsistentInput,
    ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Largest field order accepted by field_new and matrix_representation.
std::uint64_t field_order_cap();
void set_field_order_cap(std::uint64_t cap);

struct PrimePower {
    std::uint64_t p;
    unsigned e;
};

std::optional<PrimePower> prime_power(std::uint64_t q);
bool is_prime(std::uint64_t n);

/// Field element: the index sum c_i p^i of its coefficient vector in the polynomial basis.
using Elem = std::uint32_t;

class Field {
public:
    std::uint64_t p() const { return p_; }
    unsigned e() const { return e_; }
    std::uint64_t q() const { return q_; }
    /// Monic modulus over F_p, coefficients from degree 0 to degree e.
    const std::vector<Elem>& modulus() const { return modulus_; }
    /// Smallest-index primitive element; every log/exp table is taken with respect to it.
    Elem primitive() const { return prim_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const
    {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const;
    Elem frobenius(Elem a) const { return pow(a, p_); }
    /// Integer image in the prime subfield.
    Elem from_int(long long k) const;

    std::vector<Elem> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<Elem>& c) const;
    /// Polynomial notation in x, e.g. "2x+1"; prime fields print the integer.
    std::string to_string(Elem a) const;

private:
    friend std::shared_ptr<const Field> build_field(std::uint64_t p, unsigned e);
    Field() = default;

    std::uint64_t p_ = 0;
    unsigned e_ = 0;
    std::uint64_t q_ = 0;
    std::vector<Elem> modulus_;
    Elem prim_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> add_;
    std::vector<Elem> neg_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Cached per q; the modulus is the lexicographically smallest monic irreducible polynomial.
FieldPtr field_new(std::uint64_t q);

/// Dense matrix over a finite field, row-major.
struct Matrix {
    FieldPtr field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> a;

    Matrix() = default;
    Matrix(FieldPtr f, std::size_t r, std::size_t c) : field(std::move(f)), rows(r), cols(c), a(r * c, 0) {}

    Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator<(const Matrix& o) const;
};

Matrix identity(FieldPtr f, std::size_t n);
Matrix mat_mul(const Matrix& x, const Matrix& y);
Matrix mat_sub(const Matrix& x, const Matrix& y);
std::size_t rank(const Matrix& m);

/// The extension F_{Q^n} of a base field F_Q, elements indexed by sum c_i Q^i over base indices.
class Extension {
public:
    Extension(FieldPtr base, unsigned n);

    const FieldPtr& base() const { return base_; }
    unsigned degree() const { return n_; }
    std::uint64_t order() const { return order_; }
    const std::vector<Elem>& modulus() const { return modulus_; }
    std::uint64_t primitive() const { return prim_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t power_of_primitive(std::uint64_t j) const { return exp_[j % (order_ - 1)]; }

    std::vector<Elem> coords(std::uint64_t a) const;
    std::uint64_t from_coords(const std::vector<Elem>& c) const;

    /// Multiplication by beta: row i holds the coordinates of beta * x^i.
    Matrix matrix(std::uint64_t beta) const;

private:
    FieldPtr base_;
    unsigned n_;
    std::uint64_t order_;
    std::vector<Elem> modulus_;
    std::uint64_t prim_ = 0;
    std::vector<std::uint64_t> exp_;
    std::vector<std::uint64_t> log_;
};

/// All q^n matrices M(beta) in the order 0, g^0, g^1, ..., g^{q^n-2}, g the smallest primitive element.
std::vector<Matrix> matrix_representation(std::uint64_t q, unsigned n);

BigInt ipow(const BigInt& base, unsigned exp);
std::uint64_t ipow_u64(std::uint64_t base, unsigned exp);
BigInt gaussian_binomial(long v, long k, const BigInt& q);
/// [v 1]_q, the number of points of PG(v-1, q).
BigInt gauss1(long v, const BigInt& q);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

/// floor(sqrt(x)) for x >= 0.
BigInt isqrt(const BigInt& x);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

}  // namespace gfcore
