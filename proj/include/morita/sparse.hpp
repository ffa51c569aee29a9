#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "morita/error.hpp"
#include "morita/scalar.hpp"

namespace morita {

/// Sparse vector: strictly increasing indices, no stored zeros.
struct SparseVector {
    Field field;
    std::size_t size = 0;
    std::vector<std::pair<std::size_t, Scalar>> entries;

    SparseVector() = default;
    SparseVector(Field f, std::size_t n) : field(f), size(n) {}

    static SparseVector from_map(Field f, std::size_t n, const std::map<std::size_t, Scalar>& m) {
        SparseVector v(f, n);
        for (const auto& [i, s] : m)
            if (!s.is_zero())
                v.entries.emplace_back(i, s);
        return v;
    }

    static SparseVector from_dense(Field f, const std::vector<long long>& values) {
        SparseVector v(f, values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] != 0)
                v.entries.emplace_back(i, Scalar(f, values[i]));
        return v;
    }

    bool is_zero() const { return entries.empty(); }

    Scalar at(std::size_t i) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), i,
                                   [](const auto& e, std::size_t k) { return e.first < k; });
        return (it != entries.end() && it->first == i) ? it->second : Scalar::zero(field);
    }

    SparseVector operator-(const SparseVector& o) const { return axpy(Scalar(field, -1), o); }
    SparseVector operator+(const SparseVector& o) const { return axpy(Scalar::one(field), o); }

    /// this + a * o
    SparseVector axpy(const Scalar& a, const SparseVector& o) const {
        std::map<std::size_t, Scalar> acc;
        for (const auto& [i, s] : entries)
            acc.emplace(i, s);
        for (const auto& [i, s] : o.entries) {
            auto [it, fresh] = acc.emplace(i, a * s);
            if (!fresh)
                it->second += a * s;
        }
        return from_map(field, std::max(size, o.size), acc);
    }

    friend bool operator==(const SparseVector& a, const SparseVector& b) {
        if (a.entries.size() != b.entries.size())
            return false;
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            if (a.entries[i].first != b.entries[i].first || !(a.entries[i].second == b.entries[i].second))
                return false;
        return true;
    }
};

/// Triplet-stored matrix in canonical row-major order without zeros or duplicates.
class SparseMatrix {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        Scalar value;
    };

    SparseMatrix() = default;
    SparseMatrix(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {}

    /// Duplicate positions are summed; zero sums dropped.
    static SparseMatrix from_triplets(Field f, std::size_t rows, std::size_t cols, std::vector<Entry> triplets) {
        SparseMatrix m(f, rows, cols);
        std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
        for (auto& t : triplets) {
            if (t.row >= rows || t.col >= cols)
                throw Error(ErrorKind::invalid_complex, "matrix entry (" + std::to_string(t.row) + "," +
                                                            std::to_string(t.col) + ") out of bounds");
            if (!(t.value.field() == f))
                throw Error(ErrorKind::field_mismatch, "matrix entry over " + t.value.field().name() + " in a matrix over " + f.name());
            auto [it, fresh] = acc.emplace(std::make_pair(t.row, t.col), t.value);
            if (!fresh)
                it->second += t.value;
        }
        for (auto& [pos, v] : acc)
            if (!v.is_zero())
                m.entries_.push_back({pos.first, pos.second, v});
        return m;
    }

    static SparseMatrix from_dense(Field f, const std::vector<std::vector<long long>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.front().size() : 0;
        std::vector<Entry> t;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (rows[i][j] != 0)
                    t.push_back({i, j, Scalar(f, rows[i][j])});
        return from_triplets(f, r, c, std::move(t));
    }

    static SparseMatrix from_columns(Field f, std::size_t rows, const std::vector<SparseVector>& columns) {
        std::vector<Entry> t;
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (const auto& [i, s] : columns[j].entries)
                t.push_back({i, j, s});
        return from_triplets(f, rows, columns.size(), std::move(t));
    }

    static SparseMatrix identity(Field f, std::size_t n) {
        std::vector<Entry> t;
        for (std::size_t i = 0; i < n; ++i)
            t.push_back({i, i, Scalar::one(f)});
        return from_triplets(f, n, n, std::move(t));
    }

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Entry>& entries() const& { return entries_; }
    std::vector<Entry> entries() && { return std::move(entries_); }
    bool is_zero() const { return entries_.empty(); }

    Scalar at(std::size_t r, std::size_t c) const {
        for (const auto& e : entries_)
            if (e.row == r && e.col == c)
                return e.value;
        return Scalar::zero(field_);
    }

    std::vector<SparseVector> row_vectors() const {
        std::vector<SparseVector> out(rows_, SparseVector(field_, cols_));
        for (const auto& e : entries_)
            out[e.row].entries.emplace_back(e.col, e.value);
        return out;
    }

    std::vector<SparseVector> column_vectors() const { return transpose().row_vectors(); }

    SparseMatrix transpose() const {
        std::vector<Entry> t;
        t.reserve(entries_.size());
        for (const auto& e : entries_)
            t.push_back({e.col, e.row, e.value});
        return from_triplets(field_, cols_, rows_, std::move(t));
    }

    SparseMatrix operator*(const SparseMatrix& o) const {
        if (cols_ != o.rows_)
            throw Error(ErrorKind::invalid_complex, "matrix shape mismatch in product");
        if (!(field_ == o.field_))
            throw Error(ErrorKind::field_mismatch, "matrix product over different fields");
        const auto orows = o.row_vectors();
        std::vector<Entry> t;
        for (const auto& e : entries_)
            for (const auto& [c, s] : orows[e.col].entries)
                t.push_back({e.row, c, e.value * s});
        return from_triplets(field_, rows_, o.cols_, std::move(t));
    }

    SparseVector operator*(const SparseVector& v) const {
        std::map<std::size_t, Scalar> acc;
        for (const auto& e : entries_) {
            const Scalar x = v.at(e.col);
            if (x.is_zero())
                continue;
            auto [it, fresh] = acc.emplace(e.row, e.value * x);
            if (!fresh)
                it->second += e.value * x;
        }
        return SparseVector::from_map(field_, rows_, acc);
    }

    SparseMatrix operator+(const SparseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error(ErrorKind::invalid_complex, "matrix shape mismatch in sum");
        std::vector<Entry> t = entries_;
        t.insert(t.end(), o.entries_.begin(), o.entries_.end());
        return from_triplets(field_, rows_, cols_, std::move(t));
    }

    SparseMatrix operator*(const Scalar& s) const {
        std::vector<Entry> t;
        for (const auto& e : entries_)
            t.push_back({e.row, e.col, e.value * s});
        return from_triplets(field_, rows_, cols_, std::move(t));
    }

    SparseMatrix operator-(const SparseMatrix& o) const { return *this + o * Scalar(field_, -1); }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size())
            return false;
        for (std::size_t i = 0; i < a.entries_.size(); ++i) {
            const auto& x = a.entries_[i];
            const auto& y = b.entries_[i];
            if (x.row != y.row || x.col != y.col || !(x.value == y.value))
                return false;
        }
        return true;
    }

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Entry> entries_;
};

namespace detail {

// Fraction-free elimination over Z for rational input: rows are scaled to
// primitive integer vectors and combined as a*r - b*p with a, b coprime.
struct RationalPolicy {
    using Value = Integer;
    using Row = std::vector<std::pair<std::size_t, Value>>;

    static Row convert(const SparseVector& v) {
        Integer lcm = 1;
        for (const auto& [i, s] : v.entries)
            lcm = boost::multiprecision::lcm(lcm, Integer(boost::multiprecision::denominator(s.rational())));
        Row r;
        r.reserve(v.entries.size());
        for (const auto& [i, s] : v.entries) {
            const Rational scaled = s.rational() * lcm;
            r.emplace_back(i, boost::multiprecision::numerator(scaled));
        }
        normalize(r);
        return r;
    }

    static SparseVector back(Field f, std::size_t n, const Row& r) {
        SparseVector v(f, n);
        for (const auto& [i, x] : r)
            v.entries.emplace_back(i, Scalar(f, Rational(x)));
        return v;
    }

    static void normalize(Row& r) {
        if (r.empty())
            return;
        Integer g = 0;
        for (const auto& [i, x] : r) {
            g = boost::multiprecision::gcd(g, x);
            if (g == 1)
                break;
        }
        if (r.front().second < 0)
            g = -g;
        if (g != 1)
            for (auto& [i, x] : r)
                x /= g;
    }

    /// r scaled and shifted by pivot so that the entry at `row` vanishes.
    static Row combine_at(const Row& r, const Row& pivot, std::size_t row) {
        Row out = r;
        eliminate_at(out, pivot, value_at(pivot, row), value_at(r, row));
        return out;
    }

    static const Integer& value_at(const Row& r, std::size_t row) {
        return std::lower_bound(r.begin(), r.end(), row, [](const auto& e, std::size_t k) { return e.first < k; })->second;
    }

    static void eliminate(Row& r, const Row& pivot) {
        const Integer lp = pivot.front().second;
        const Integer lr = r.front().second;
        eliminate_at(r, pivot, lp, lr);
    }

    static void eliminate_at(Row& r, const Row& pivot, const Integer& lp, const Integer& lr) {
        const Integer g = boost::multiprecision::gcd(lp, lr);
        const Integer a = lp / g;
        const Integer b = lr / g;
        Row out;
        out.reserve(r.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < r.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
                out.emplace_back(r[i].first, a * r[i].second);
                ++i;
            } else if (i == r.size() || pivot[j].first < r[i].first) {
                out.emplace_back(pivot[j].first, -b * pivot[j].second);
                ++j;
            } else {
                Integer x = a * r[i].second - b * pivot[j].second;
                if (x != 0)
                    out.emplace_back(r[i].first, std::move(x));
                ++i;
                ++j;
            }
        }
        r = std::move(out);
        normalize(r);
    }
};

struct PrimePolicy {
    using Value = std::uint64_t;
    using Row = std::vector<std::pair<std::size_t, Value>>;

    std::uint64_t p = 2;

    Row convert(const SparseVector& v) const {
        Row r;
        for (const auto& [i, s] : v.entries)
            r.emplace_back(i, s.residue());
        normalize(r);
        return r;
    }

    SparseVector back(Field f, std::size_t n, const Row& r) const {
        SparseVector v(f, n);
        for (const auto& [i, x] : r)
            v.entries.emplace_back(i, Scalar(f, static_cast<long long>(x)));
        return v;
    }

    void normalize(Row& r) const {
        if (r.empty() || r.front().second == 1)
            return;
        const std::uint64_t inv = Scalar::inverse_mod(r.front().second, p);
        for (auto& [i, x] : r)
            x = Scalar::mul_mod(x, inv, p);
    }

    Row combine_at(const Row& r, const Row& pivot, std::size_t row) const {
        auto at = [row](const Row& x) {
            return std::lower_bound(x.begin(), x.end(), row, [](const auto& e, std::size_t k) { return e.first < k; })->second;
        };
        // r - (r[row] / pivot[row]) * pivot
        const std::uint64_t c = Scalar::mul_mod(p - at(r), Scalar::inverse_mod(at(pivot), p), p);
        Row out = r;
        axpy(out, pivot, c);
        return out;
    }

    void eliminate(Row& r, const Row& pivot) const {
        axpy(r, pivot, p - r.front().second); // pivot leads with 1
    }

    /// r += c * pivot
    void axpy(Row& r, const Row& pivot, std::uint64_t c) const {
        Row out;
        out.reserve(r.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < r.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
                out.push_back(r[i++]);
            } else if (i == r.size() || pivot[j].first < r[i].first) {
                out.emplace_back(pivot[j].first, Scalar::mul_mod(c, pivot[j].second, p));
                ++j;
            } else {
                const std::uint64_t x = (r[i].second + Scalar::mul_mod(c, pivot[j].second, p)) % p;
                if (x != 0)
                    out.emplace_back(r[i].first, x);
                ++i;
                ++j;
            }
        }
        r = std::move(out);
    }
};

template <class Policy>
class Echelon {
public:
    using Row = typename Policy::Row;

    explicit Echelon(Policy policy = {}) : policy_(std::move(policy)) {}

    void reduce(Row& r) const {
        while (!r.empty()) {
            auto it = by_lead_.find(r.front().first);
            if (it == by_lead_.end())
                return;
            if constexpr (std::is_same_v<Policy, RationalPolicy>)
                Policy::eliminate(r, pivots_[it->second]);
            else
                policy_.eliminate(r, pivots_[it->second]);
        }
    }

    bool insert(Row r) {
        reduce(r);
        if (r.empty())
            return false;
        policy_.normalize(r);
        by_lead_.emplace(r.front().first, pivots_.size());
        pivots_.push_back(std::move(r));
        return true;
    }

    const Policy& policy() const { return policy_; }
    const std::vector<Row>& pivots() const { return pivots_; }
    std::size_t rank() const { return pivots_.size(); }

private:
    Policy policy_;
    std::vector<Row> pivots_;
    std::map<std::size_t, std::size_t> by_lead_;
};

} // namespace detail

/// Incrementally grown echelon basis of a subspace of k^n.
class EchelonBasis {
public:
    explicit EchelonBasis(Field f) : field_(f) {
        if (f.is_rational())
            impl_ = detail::Echelon<detail::RationalPolicy>{};
        else
            impl_ = detail::Echelon<detail::PrimePolicy>{detail::PrimePolicy{f.characteristic()}};
    }

    /// Returns true iff v was independent of the vectors inserted so far.
    bool insert(const SparseVector& v) {
        check(v);
        return std::visit([&](auto& e) { return e.insert(e.policy().convert(v)); }, impl_);
    }

    bool contains(const SparseVector& v) const {
        check(v);
        return std::visit(
            [&](const auto& e) {
                auto r = e.policy().convert(v);
                e.reduce(r);
                return r.empty();
            },
            impl_);
    }

    std::size_t rank() const {
        return std::visit([](const auto& e) { return e.rank(); }, impl_);
    }

    /// Pivot rows in insertion order, each normalised (primitive integer or leading one).
    std::vector<SparseVector> pivot_vectors(std::size_t n) const {
        return std::visit(
            [&](const auto& e) {
                std::vector<SparseVector> out;
                for (const auto& r : e.pivots())
                    out.push_back(e.policy().back(field_, n, r));
                return out;
            },
            impl_);
    }

    Field field() const { return field_; }

private:
    void check(const SparseVector& v) const {
        if (!(v.field == field_) && !v.entries.empty())
            throw Error(ErrorKind::field_mismatch, "vector over " + v.field.name() + " inserted into basis over " + field_.name());
    }

    Field field_;
    std::variant<detail::Echelon<detail::RationalPolicy>, detail::Echelon<detail::PrimePolicy>> impl_;
};

namespace detail {

// Rank by sparse elimination with Markowitz-style pivoting: the pivot column is
// the shortest active column, the pivot row the sparsest row inside it.
template <class Policy>
std::size_t markowitz_rank(const Policy& policy, std::vector<typename Policy::Row> cols, std::size_t row_hint) {
    using Row = typename Policy::Row;
    std::size_t nrows = row_hint;
    for (const auto& c : cols)
        if (!c.empty())
            nrows = std::max(nrows, c.back().first + 1);
    std::vector<std::size_t> row_count(nrows, 0);
    std::vector<std::vector<std::size_t>> row_cols(nrows);
    std::set<std::pair<std::size_t, std::size_t>> queue;
    std::vector<bool> active(cols.size(), false);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].empty())
            continue;
        active[j] = true;
        queue.emplace(cols[j].size(), j);
        for (const auto& [r, v] : cols[j]) {
            ++row_count[r];
            row_cols[r].push_back(j);
        }
    }
    auto has_row = [&](const Row& c, std::size_t r) {
        auto it = std::lower_bound(c.begin(), c.end(), r, [](const auto& e, std::size_t k) { return e.first < k; });
        return it != c.end() && it->first == r;
    };
    std::size_t rank = 0;
    while (!queue.empty()) {
        const std::size_t j = queue.begin()->second;
        queue.erase(queue.begin());
        active[j] = false;
        Row pivot = std::move(cols[j]);
        std::size_t best = pivot.front().first;
        for (const auto& [r, v] : pivot)
            if (row_count[r] < row_count[best])
                best = r;
        ++rank;
        for (const auto& [r, v] : pivot)
            --row_count[r];
        std::vector<std::size_t> touched;
        touched.swap(row_cols[best]);
        for (std::size_t k : touched) {
            if (!active[k] || !has_row(cols[k], best))
                continue;
            queue.erase({cols[k].size(), k});
            Row before = std::move(cols[k]);
            Row after = policy.combine_at(before, pivot, best);
            // update row statistics by merging the supports
            std::size_t a = 0, b = 0;
            while (a < before.size() || b < after.size()) {
                if (b == after.size() || (a < before.size() && before[a].first < after[b].first)) {
                    --row_count[before[a].first];
                    ++a;
                } else if (a == before.size() || after[b].first < before[a].first) {
                    ++row_count[after[b].first];
                    row_cols[after[b].first].push_back(k);
                    ++b;
                } else {
                    ++a;
                    ++b;
                }
            }
            cols[k] = std::move(after);
            if (cols[k].empty())
                active[k] = false;
            else
                queue.emplace(cols[k].size(), k);
        }
    }
    return rank;
}

} // namespace detail

/// Rank of the span of the given vectors.
inline std::size_t rank_of(Field f, const std::vector<SparseVector>& vectors) {
    if (f.is_rational()) {
        detail::RationalPolicy policy;
        std::vector<detail::RationalPolicy::Row> cols;
        cols.reserve(vectors.size());
        for (const auto& v : vectors)
            cols.push_back(policy.convert(v));
        return detail::markowitz_rank(policy, std::move(cols), 0);
    }
    detail::PrimePolicy policy{f.characteristic()};
    std::vector<detail::PrimePolicy::Row> cols;
    cols.reserve(vectors.size());
    for (const auto& v : vectors)
        cols.push_back(policy.convert(v));
    return detail::markowitz_rank(policy, std::move(cols), 0);
}

inline std::size_t rank(const SparseMatrix& m) {
    if (m.is_zero())
        return 0;
    return rank_of(m.field(), m.column_vectors());
}

struct RowReduction {
    SparseMatrix reduced;
    std::size_t rank = 0;
    std::vector<SparseVector> kernel_basis;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row-echelon form, rank and an exact kernel basis (one vector per free column).
inline RowReduction row_reduce(const SparseMatrix& m) {
    const Field f = m.field();
    for (const auto& e : m.entries())
        if (!(e.value.field() == f))
            throw Error(ErrorKind::field_mismatch, "matrix over " + f.name() + " holds an entry over " + e.value.field().name());

    EchelonBasis basis(f);
    for (const auto& r : m.row_vectors())
        basis.insert(r);

    // Back substitution in field arithmetic, pivots sorted by leading column.
    std::vector<std::map<std::size_t, Scalar>> rows;
    for (const auto& v : basis.pivot_vectors(m.cols())) {
        std::map<std::size_t, Scalar> row(v.entries.begin(), v.entries.end());
        const Scalar lead_inv = row.begin()->second.inverse();
        for (auto& [c, s] : row)
            s *= lead_inv;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.begin()->first < b.begin()->first; });
    for (std::size_t i = rows.size(); i-- > 0;) {
        const std::size_t pc = rows[i].begin()->first;
        for (std::size_t j = 0; j < i; ++j) {
            auto it = rows[j].find(pc);
            if (it == rows[j].end())
                continue;
            const Scalar factor = it->second;
            for (const auto& [c, s] : rows[i]) {
                auto [jt, fresh] = rows[j].emplace(c, -(factor * s));
                if (!fresh) {
                    jt->second -= factor * s;
                    if (jt->second.is_zero())
                        rows[j].erase(jt);
                }
            }
        }
    }

    RowReduction out;
    out.rank = rows.size();
    std::vector<SparseMatrix::Entry> t;
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.pivot_columns.push_back(rows[i].begin()->first);
        is_pivot[rows[i].begin()->first] = true;
        for (const auto& [c, s] : rows[i])
            t.push_back({i, c, s});
    }
    out.reduced = SparseMatrix::from_triplets(f, m.rows(), m.cols(), std::move(t));

    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::map<std::size_t, Scalar> v;
        v.emplace(free, Scalar::one(f));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto it = rows[i].find(free);
            if (it != rows[i].end())
                v.emplace(out.pivot_columns[i], -it->second);
        }
        out.kernel_basis.push_back(SparseVector::from_map(f, m.cols(), v));
    }
    return out;
}

/// Inverse of a square matrix; throws not_invertible when singular.
inline SparseMatrix inverse(const SparseMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::not_invertible, "non-square matrix");
    const std::size_t n = m.rows();
    std::vector<SparseMatrix::Entry> t = m.entries();
    for (std::size_t i = 0; i < n; ++i)
        t.push_back({i, n + i, Scalar::one(m.field())});
    const auto rr = row_reduce(SparseMatrix::from_triplets(m.field(), n, 2 * n, std::move(t)));
    if (rr.rank < n || (n > 0 && rr.pivot_columns[n - 1] >= n))
        throw Error(ErrorKind::not_invertible, "matrix is singular");
    std::vector<SparseMatrix::Entry> inv;
    for (const auto& e : rr.reduced.entries())
        if (e.col >= n)
            inv.push_back({e.row, e.col - n, e.value});
    return SparseMatrix::from_triplets(m.field(), n, n, std::move(inv));
}

} // namespace morita
