#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morita/error.hpp"
#include "morita/sparse.hpp"

namespace morita {

/// Bounded complex of based vector spaces; boundary(n) maps degree n to n-1.
class ChainComplex {
public:
    ChainComplex() = default;
    explicit ChainComplex(Field f) : field_(f) {}

    ChainComplex(Field f, std::map<int, std::size_t> dims, std::map<int, SparseMatrix> boundaries,
                 std::map<int, std::vector<std::string>> labels = {})
        : field_(f), labels_(std::move(labels)) {
        for (auto& [n, d] : dims)
            if (d > 0)
                dims_.emplace(n, d);
        for (auto& [n, m] : boundaries) {
            if (m.rows() != dim(n - 1) || m.cols() != dim(n))
                throw Error(ErrorKind::invalid_complex, "boundary in degree " + std::to_string(n) + " has shape " +
                                                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                            ", expected " + std::to_string(dim(n - 1)) + "x" +
                                                            std::to_string(dim(n)));
            if (!(m.field() == f))
                throw Error(ErrorKind::field_mismatch, "boundary in degree " + std::to_string(n) + " is over " + m.field().name());
            if (!m.is_zero())
                boundary_.emplace(n, std::move(m));
        }
        validate();
    }

    Field field() const { return field_; }

    std::size_t dim(int n) const {
        auto it = dims_.find(n);
        return it == dims_.end() ? 0 : it->second;
    }

    const std::map<int, std::size_t>& dims() const { return dims_; }

    SparseMatrix boundary(int n) const {
        auto it = boundary_.find(n);
        if (it != boundary_.end())
            return it->second;
        return SparseMatrix(field_, dim(n - 1), dim(n));
    }

    std::vector<std::string> labels(int n) const {
        auto it = labels_.find(n);
        return it == labels_.end() ? std::vector<std::string>{} : it->second;
    }

    std::optional<int> min_degree() const {
        return dims_.empty() ? std::nullopt : std::optional<int>(dims_.begin()->first);
    }
    std::optional<int> max_degree() const {
        return dims_.empty() ? std::nullopt : std::optional<int>(dims_.rbegin()->first);
    }

    std::size_t total_dim() const {
        std::size_t t = 0;
        for (const auto& [n, d] : dims_)
            t += d;
        return t;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (const auto& [n, d] : dims_)
            chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(d);
        return chi;
    }

    /// Throws invalid_complex naming the first degree where boundary(n-1)*boundary(n) != 0.
    void validate() const {
        for (const auto& [n, m] : boundary_) {
            auto below = boundary_.find(n - 1);
            if (below == boundary_.end())
                continue;
            if (!(below->second * m).is_zero())
                throw Error(ErrorKind::invalid_complex, "d^2 != 0 at degree " + std::to_string(n));
        }
    }

private:
    Field field_;
    std::map<int, std::size_t> dims_;
    std::map<int, SparseMatrix> boundary_;
    std::map<int, std::vector<std::string>> labels_;
};

enum class Stability { exact, truncation_stable, truncation_unstable };

inline const char* to_string(Stability s) {
    switch (s) {
    case Stability::exact: return "exact";
    case Stability::truncation_stable: return "truncation-stable";
    case Stability::truncation_unstable: return "truncation-unstable";
    }
    return "exact";
}

enum class DegreeConvention { homological, cohomological };

/// Degreewise homology dimensions over an inclusive range.
struct HomologyTable {
    int lo = 0;
    int hi = -1;
    std::map<int, std::size_t> dims;
    std::optional<std::map<int, std::vector<SparseVector>>> representatives;
    Stability stability = Stability::exact;
    DegreeConvention convention = DegreeConvention::homological;

    std::size_t dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }

    std::vector<std::size_t> dim_list() const {
        std::vector<std::size_t> out;
        for (int n = lo; n <= hi; ++n)
            out.push_back(dim(n));
        return out;
    }

    bool same_dims(const HomologyTable& o) const { return lo == o.lo && hi == o.hi && dim_list() == o.dim_list(); }
};

inline HomologyTable homology_dims(const ChainComplex& c, int lo, int hi) {
    c.validate();
    HomologyTable t;
    t.lo = lo;
    t.hi = hi;
    std::map<int, std::size_t> ranks;
    auto rank_at = [&](int n) {
        auto it = ranks.find(n);
        if (it == ranks.end())
            it = ranks.emplace(n, rank(c.boundary(n))).first;
        return it->second;
    };
    for (int n = lo; n <= hi; ++n)
        t.dims[n] = c.dim(n) - rank_at(n) - rank_at(n + 1);
    return t;
}

/// Cycles in degree n spanning H_n and independent modulo boundaries.
inline std::vector<SparseVector> homology_basis(const ChainComplex& c, int n) {
    c.validate();
    if (c.dim(n) == 0)
        return {};
    const auto cycles = row_reduce(c.boundary(n)).kernel_basis;
    EchelonBasis span(c.field());
    for (const auto& b : c.boundary(n + 1).column_vectors())
        span.insert(b);
    std::vector<SparseVector> reps;
    for (const auto& z : cycles)
        if (span.insert(z))
            reps.push_back(z);
    return reps;
}

/// True iff v lies in the image of boundary(n+1).
inline bool is_boundary(const ChainComplex& c, int n, const SparseVector& v) {
    EchelonBasis span(c.field());
    for (const auto& b : c.boundary(n + 1).column_vectors())
        span.insert(b);
    return span.contains(v);
}

/// Assembles a complex from keyed bases and a differential on keys. Every key
/// produced by the differential must be present in the basis one degree down.
template <class Key>
ChainComplex assemble_complex(Field f, const std::map<int, std::vector<Key>>& bases,
                              const std::function<std::map<Key, Scalar>(int, const Key&)>& d,
                              const std::function<std::string(const Key&)>& label = {}) {
    std::map<int, std::size_t> dims;
    std::map<int, std::map<Key, std::size_t>> index;
    std::map<int, std::vector<std::string>> labels;
    for (const auto& [n, keys] : bases) {
        dims[n] = keys.size();
        auto& idx = index[n];
        for (std::size_t i = 0; i < keys.size(); ++i) {
            idx.emplace(keys[i], i);
            if (label)
                labels[n].push_back(label(keys[i]));
        }
    }
    std::map<int, SparseMatrix> boundaries;
    for (const auto& [n, keys] : bases) {
        auto below = index.find(n - 1);
        std::vector<SparseMatrix::Entry> t;
        for (std::size_t j = 0; j < keys.size(); ++j) {
            for (const auto& [k, s] : d(n, keys[j])) {
                if (s.is_zero())
                    continue;
                if (below == index.end() || !below->second.count(k))
                    throw Error(ErrorKind::invalid_complex, "differential leaves the basis in degree " + std::to_string(n - 1));
                t.push_back({below->second.at(k), j, s});
            }
        }
        if (!t.empty())
            boundaries.emplace(n, SparseMatrix::from_triplets(f, dims[n - 1], keys.size(), std::move(t)));
    }
    return ChainComplex(f, dims, boundaries, labels);
}

/// Homology of a complex known only through a bounded window. `inside` spans the
/// truncated degree-n space, `sources` the (larger) truncated degree-(n+1) space.
/// Returns dim ker(d|inside) - dim(d(sources) ∩ span(inside)).
template <class Key>
std::size_t truncated_homology_dim(Field f, const std::vector<Key>& inside, const std::vector<Key>& sources,
                                   const std::function<std::map<Key, Scalar>(const Key&)>& d) {
    std::size_t kernel_dim = 0;
    {
        std::map<Key, std::size_t> rows;
        std::vector<SparseVector> cols;
        for (const auto& k : inside) {
            std::map<std::size_t, Scalar> col;
            for (const auto& [t, s] : d(k)) {
                if (s.is_zero())
                    continue;
                auto it = rows.emplace(t, rows.size()).first;
                col.emplace(it->second, s);
            }
            cols.push_back(SparseVector::from_map(f, 0, col));
        }
        kernel_dim = inside.size() - rank_of(f, cols);
    }
    std::map<Key, std::size_t> in_index;
    for (std::size_t i = 0; i < inside.size(); ++i)
        in_index.emplace(inside[i], i);
    std::map<Key, std::size_t> out_index;
    std::vector<SparseVector> full, outer;
    for (const auto& k : sources) {
        std::map<std::size_t, Scalar> all, out;
        for (const auto& [t, s] : d(k)) {
            if (s.is_zero())
                continue;
            auto it = in_index.find(t);
            if (it != in_index.end()) {
                all.emplace(it->second, s);
            } else {
                auto jt = out_index.emplace(t, out_index.size()).first;
                // outside coordinates live after the inside block in `all`
                all.emplace(inside.size() + jt->second, s);
                out.emplace(jt->second, s);
            }
        }
        full.push_back(SparseVector::from_map(f, 0, all));
        outer.push_back(SparseVector::from_map(f, 0, out));
    }
    return kernel_dim - (rank_of(f, full) - rank_of(f, outer));
}

} // namespace morita
