#include "spreadlab/gfcore.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace gfcore {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotAPrimePower: return "NotAPrimePower";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParameterMismatch: return "ParameterMismatch";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::DivisorMismatch: return "DivisorMismatch";
    case ErrorKind::BadPetalCount: return "BadPetalCount";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::CongruenceViolated: return "CongruenceViolated";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::WrongResidue: return "WrongResidue";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::InconsistentInput: return "InconsistentInput";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

namespace {

std::uint64_t g_field_cap = std::uint64_t(1) << 20;

using Poly = std::vector<Elem>;

// Arithmetic of the prime field Z/p.
struct PrimeOps {
    std::uint64_t p;
    std::uint64_t order() const { return p; }
    Elem add(Elem a, Elem b) const { return Elem((a + b) % p); }
    Elem sub(Elem a, Elem b) const { return Elem((a + p - b) % p); }
    Elem mul(Elem a, Elem b) const { return Elem(std::uint64_t(a) * b % p); }
    Elem inv(Elem a) const
    {
        std::uint64_t r = 1, b = a, n = p - 2;
        while (n) {
            if (n & 1) r = r * b % p;
            b = b * b % p;
            n >>= 1;
        }
        return Elem(r);
    }
};

struct FieldOps {
    const Field* f;
    std::uint64_t order() const { return f->q(); }
    Elem add(Elem a, Elem b) const { return f->add(a, b); }
    Elem sub(Elem a, Elem b) const { return f->sub(a, b); }
    Elem mul(Elem a, Elem b) const { return f->mul(a, b); }
    Elem inv(Elem a) const { return f->inv(a); }
};

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class Ops>
Poly poly_rem(const Ops& ops, Poly a, const Poly& m)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const Elem lead_inv = ops.inv(m.back());
    while (a.size() >= m.size()) {
        const Elem c = ops.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = ops.sub(a[shift + i], ops.mul(c, m[i]));
        trim(a);
    }
    return a;
}

template <class Ops>
Poly poly_mulmod(const Ops& ops, const Poly& a, const Poly& b, const Poly& m)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ops.add(r[i + j], ops.mul(a[i], b[j]));
    }
    return poly_rem(ops, std::move(r), m);
}

template <class Ops>
Poly poly_powmod(const Ops& ops, Poly b, std::uint64_t n, const Poly& m)
{
    Poly r{1};
    b = poly_rem(ops, b, m);
    while (n) {
        if (n & 1) r = poly_mulmod(ops, r, b, m);
        b = poly_mulmod(ops, b, b, m);
        n >>= 1;
    }
    return r;
}

Poly digits(std::uint64_t idx, std::uint64_t base, std::size_t len)
{
    Poly d(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        d[i] = Elem(idx % base);
        idx /= base;
    }
    return d;
}

std::uint64_t undigits(const Poly& d, std::uint64_t base)
{
    std::uint64_t r = 0;
    for (std::size_t i = d.size(); i-- > 0;) r = r * base + d[i];
    return r;
}

template <class Ops>
bool irreducible(const Ops& ops, const Poly& f)
{
    const std::size_t n = f.size() - 1;
    const std::uint64_t Q = ops.order();
    for (std::size_t d = 1; d <= n / 2; ++d) {
        const std::uint64_t count = ipow_u64(Q, unsigned(d));
        for (std::uint64_t t = 0; t < count; ++t) {
            Poly g = digits(t, Q, d);
            g.push_back(1);
            if (poly_rem(ops, f, g).empty()) return false;
        }
    }
    return true;
}

// Smallest monic irreducible of degree n, ordered by the index of its coefficient vector.
template <class Ops>
Poly smallest_irreducible(const Ops& ops, unsigned n)
{
    const std::uint64_t Q = ops.order();
    const std::uint64_t count = ipow_u64(Q, n);
    for (std::uint64_t t = 0; t < count; ++t) {
        Poly f = digits(t, Q, n);
        f.push_back(1);
        if (n == 1 || irreducible(ops, f)) return f;
    }
    throw Error(ErrorKind::InconsistentInput, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> f;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

// Smallest-index element of multiplicative order Q^n - 1 in F_Q[x]/(m).
template <class Ops>
std::uint64_t smallest_primitive(const Ops& ops, const Poly& m, unsigned n)
{
    const std::uint64_t Q = ops.order();
    const std::uint64_t N = ipow_u64(Q, n) - 1;
    if (N == 1) return 1;
    const auto ps = prime_factors(N);
    for (std::uint64_t g = 2; g <= N; ++g) {
        Poly gp = digits(g, Q, n);
        trim(gp);
        bool ok = true;
        for (auto l : ps) {
            Poly r = poly_powmod(ops, gp, N / l, m);
            if (r.size() == 1 && r[0] == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error(ErrorKind::InconsistentInput, "no primitive element found");
}

template <class Ops>
void build_tables(const Ops& ops, const Poly& m, unsigned n, std::uint64_t prim, std::vector<std::uint64_t>& exp,
                  std::vector<std::uint64_t>& log)
{
    const std::uint64_t Q = ops.order();
    const std::uint64_t order = ipow_u64(Q, n);
    exp.assign(order - 1, 0);
    log.assign(order, 0);
    Poly g = digits(prim, Q, n);
    trim(g);
    Poly cur{1};
    for (std::uint64_t i = 0; i + 1 < order; ++i) {
        Poly padded = cur;
        padded.resize(n, 0);
        const std::uint64_t idx = undigits(padded, Q);
        exp[i] = idx;
        log[idx] = i;
        cur = poly_mulmod(ops, cur, g, m);
    }
}

}  // namespace

std::uint64_t field_order_cap() { return g_field_cap; }
void set_field_order_cap(std::uint64_t cap) { g_field_cap = cap; }

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<PrimePower> prime_power(std::uint64_t q)
{
    if (q < 2) return std::nullopt;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return PrimePower{q, 1};
    unsigned e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1) return std::nullopt;
    return PrimePower{p, e};
}

std::shared_ptr<const Field> build_field(std::uint64_t p, unsigned e)
{
    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->e_ = e;
    f->q_ = ipow_u64(p, e);
    PrimeOps ops{p};
    f->modulus_ = smallest_irreducible(ops, e);
    std::vector<std::uint64_t> exp, log;
    if (e == 1) {
        // Z/p: the smallest primitive root, elements are the integers themselves.
        f->prim_ = 1;
        if (p > 2) {
            const auto ps = prime_factors(p - 1);
            for (std::uint64_t g = 2; g < p; ++g) {
                bool ok = true;
                for (auto l : ps) {
                    std::uint64_t r = 1, b = g, n = (p - 1) / l;
                    while (n) {
                        if (n & 1) r = r * b % p;
                        b = b * b % p;
                        n >>= 1;
                    }
                    if (r == 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    f->prim_ = Elem(g);
                    break;
                }
            }
        }
        exp.assign(p - 1, 0);
        log.assign(p, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t i = 0; i + 1 < p; ++i) {
            exp[i] = cur;
            log[cur] = i;
            cur = cur * f->prim_ % p;
        }
    } else {
        f->prim_ = Elem(smallest_primitive(ops, f->modulus_, e));
        build_tables(ops, f->modulus_, e, f->prim_, exp, log);
    }
    f->exp_.assign(exp.begin(), exp.end());
    f->log_.assign(log.begin(), log.end());
    f->neg_.resize(f->q_);
    for (std::uint64_t a = 0; a < f->q_; ++a) {
        Poly d = digits(a, p, e);
        for (auto& c : d) c = Elem((p - c) % p);
        f->neg_[a] = Elem(undigits(d, p));
    }
    if (p != 2 && f->q_ <= 256) {
        f->add_.resize(f->q_ * f->q_);
        for (std::uint64_t a = 0; a < f->q_; ++a) {
            for (std::uint64_t b = 0; b < f->q_; ++b) {
                Poly da = digits(a, p, e), db = digits(b, p, e);
                for (unsigned i = 0; i < e; ++i) da[i] = Elem((da[i] + db[i]) % p);
                f->add_[a * f->q_ + b] = Elem(undigits(da, p));
            }
        }
    }
    return f;
}

FieldPtr field_new(std::uint64_t q)
{
    static std::mutex mu;
    static std::map<std::uint64_t, FieldPtr> cache;
    const auto pp = prime_power(q);
    if (!pp) throw Error(ErrorKind::NotAPrimePower, std::to_string(q) + " is not a prime power");
    if (q > g_field_cap) throw Error(ErrorKind::OrderTooLarge, "field order " + std::to_string(q) + " exceeds cap");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto f = build_field(pp->p, pp->e);
    cache.emplace(q, f);
    return f;
}

Elem Field::add(Elem a, Elem b) const
{
    if (p_ == 2) return a ^ b;
    if (!add_.empty()) return add_[std::size_t(a) * q_ + b];
    if (e_ == 1) return Elem((std::uint64_t(a) + b) % p_);
    std::uint64_t r = 0, mul = 1, x = a, y = b;
    for (unsigned i = 0; i < e_; ++i) {
        r += ((x % p_ + y % p_) % p_) * mul;
        x /= p_;
        y /= p_;
        mul *= p_;
    }
    return Elem(r);
}

Elem Field::neg(Elem a) const { return neg_[a]; }
Elem Field::sub(Elem a, Elem b) const { return add(a, neg_[b]); }

Elem Field::inv(Elem a) const
{
    if (a == 0) throw Error(ErrorKind::InconsistentInput, "inverse of zero");
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Elem Field::pow(Elem a, std::uint64_t n) const
{
    if (n == 0) return 1;
    if (a == 0) return 0;
    return exp_[(std::uint64_t(log_[a]) * (n % (q_ - 1))) % (q_ - 1)];
}

Elem Field::from_int(long long k) const
{
    long long r = k % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return Elem(r);
}

std::vector<Elem> Field::coeffs(Elem a) const { return digits(a, p_, e_); }
Elem Field::from_coeffs(const std::vector<Elem>& c) const { return Elem(undigits(c, p_)); }

std::string Field::to_string(Elem a) const
{
    if (e_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    const auto c = coeffs(a);
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]);
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

bool Matrix::operator<(const Matrix& o) const
{
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return a < o.a;
}

Matrix identity(FieldPtr f, std::size_t n)
{
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix mat_mul(const Matrix& x, const Matrix& y)
{
    if (x.cols != y.rows) throw Error(ErrorKind::AmbientMismatch, "matrix product shape");
    const Field& f = *x.field;
    Matrix r(x.field, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Elem c = x(i, k);
            if (c == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) = f.add(r(i, j), f.mul(c, y(k, j)));
        }
    return r;
}

Matrix mat_sub(const Matrix& x, const Matrix& y)
{
    if (x.rows != y.rows || x.cols != y.cols) throw Error(ErrorKind::AmbientMismatch, "matrix difference shape");
    Matrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.field->sub(x.a[i], y.a[i]);
    return r;
}

std::size_t rank(const Matrix& m)
{
    const Field& f = *m.field;
    Matrix w = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
        std::size_t piv = r;
        while (piv < w.rows && w(piv, c) == 0) ++piv;
        if (piv == w.rows) continue;
        for (std::size_t j = 0; j < w.cols; ++j) std::swap(w(r, j), w(piv, j));
        const Elem iv = f.inv(w(r, c));
        for (std::size_t i = r + 1; i < w.rows; ++i) {
            if (w(i, c) == 0) continue;
            const Elem fac = f.mul(w(i, c), iv);
            for (std::size_t j = c; j < w.cols; ++j) w(i, j) = f.sub(w(i, j), f.mul(fac, w(r, j)));
        }
        ++r;
    }
    return r;
}

Extension::Extension(FieldPtr base, unsigned n) : base_(std::move(base)), n_(n)
{
    if (n == 0) throw Error(ErrorKind::ParameterMismatch, "extension degree must be positive");
    const BigInt big = ipow(BigInt(base_->q()), n);
    if (big > g_field_cap) throw Error(ErrorKind::OrderTooLarge, "extension order exceeds cap");
    order_ = ipow_u64(base_->q(), n);
    FieldOps ops{base_.get()};
    modulus_ = smallest_irreducible(ops, n);
    if (n == 1) {
        prim_ = base_->primitive();
        exp_.assign(order_ - 1, 0);
        log_.assign(order_, 0);
        for (std::uint64_t i = 0; i + 1 < order_; ++i) {
            exp_[i] = base_->pow(Elem(prim_), i);
            log_[exp_[i]] = i;
        }
    } else {
        prim_ = smallest_primitive(ops, modulus_, n);
        build_tables(ops, modulus_, n, prim_, exp_, log_);
    }
}

std::uint64_t Extension::add(std::uint64_t a, std::uint64_t b) const
{
    auto x = coords(a), y = coords(b);
    for (unsigned i = 0; i < n_; ++i) x[i] = base_->add(x[i], y[i]);
    return from_coords(x);
}

std::uint64_t Extension::mul(std::uint64_t a, std::uint64_t b) const
{
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (order_ - 1)];
}

std::vector<Elem> Extension::coords(std::uint64_t a) const { return digits(a, base_->q(), n_); }
std::uint64_t Extension::from_coords(const std::vector<Elem>& c) const { return undigits(c, base_->q()); }

Matrix Extension::matrix(std::uint64_t beta) const
{
    Matrix m(base_, n_, n_);
    const std::uint64_t Q = base_->q();
    // x^i has index Q^i when n > 1; for n = 1 the only basis vector is 1.
    std::uint64_t xi = 1;
    for (unsigned i = 0; i < n_; ++i) {
        const auto c = coords(mul(beta, xi));
        for (unsigned j = 0; j < n_; ++j) m(i, j) = c[j];
        xi *= Q;
    }
    return m;
}

std::vector<Matrix> matrix_representation(std::uint64_t q, unsigned n)
{
    Extension ext(field_new(q), n);
    std::vector<Matrix> out;
    out.reserve(ext.order());
    out.push_back(ext.matrix(0));
    for (std::uint64_t j = 0; j + 1 < ext.order(); ++j) out.push_back(ext.matrix(ext.power_of_primitive(j)));
    return out;
}

BigInt ipow(const BigInt& base, unsigned exp)
{
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

BigInt gaussian_binomial(long v, long k, const BigInt& q)
{
    if (k < 0 || v < 0 || k > v) return 0;
    BigInt num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= ipow(q, unsigned(v - i)) - 1;
        den *= ipow(q, unsigned(i + 1)) - 1;
    }
    return num / den;
}

BigInt gauss1(long v, const BigInt& q)
{
    if (v <= 0) return 0;
    return (ipow(q, unsigned(v)) - 1) / (q - 1);
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& x)
{
    if (boost::multiprecision::denominator(x) == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

BigInt isqrt(const BigInt& x)
{
    if (x < 0) throw Error(ErrorKind::RangeError, "isqrt of negative value");
    if (x < 2) return x;
    return boost::multiprecision::sqrt(x);
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt floor(const Rational& r)
{
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

BigInt ceil(const Rational& r)
{
    return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

}  // namespace gfcore
