#include "symdet/module_solver.hpp"

#include <algorithm>

#include "symdet/errors.hpp"
#include "symdet/groebner.hpp"

namespace symdet {

bool SparseSolver::add_row(std::map<int, Rational> row, Rational rhs) {
    if (!consistent_) return false;
    // Reduce by existing pivots until no pivot column remains in the row.
    bool reduced = true;
    while (reduced) {
        reduced = false;
        for (auto it = row.begin(); it != row.end();) {
            if (it->second.is_zero()) {
                it = row.erase(it);
                continue;
            }
            auto p = pivot_by_col_.find(it->first);
            if (p == pivot_by_col_.end()) {
                ++it;
                continue;
            }
            const PivotRow& pr = pivots_[p->second];
            Rational f = it->second;  // pivot rows are normalized to 1 there
            for (const auto& [c, v] : pr.entries) {
                auto [jt, inserted] = row.emplace(c, Rational(0));
                jt->second -= f * v;
            }
            rhs -= f * pr.rhs;
            reduced = true;
            break;
        }
    }
    for (auto it = row.begin(); it != row.end();)
        it = it->second.is_zero() ? row.erase(it) : std::next(it);
    if (row.empty()) {
        if (!rhs.is_zero()) consistent_ = false;
        return consistent_;
    }
    int col = row.begin()->first;
    Rational inv = row.begin()->second.inverse();
    PivotRow pr;
    pr.col = col;
    pr.rhs = rhs * inv;
    for (const auto& [c, v] : row) pr.entries.emplace(c, v * inv);
    // Gauss-Jordan: clear this column from all previous pivot rows.
    for (auto& old : pivots_) {
        auto found = old.entries.find(col);
        if (found == old.entries.end()) continue;
        Rational f = found->second;
        for (const auto& [c, v] : pr.entries) {
            auto [jt, inserted] = old.entries.emplace(c, Rational(0));
            jt->second -= f * v;
            if (jt->second.is_zero()) old.entries.erase(jt);
        }
        old.rhs -= f * pr.rhs;
    }
    pivot_by_col_.emplace(col, pivots_.size());
    pivots_.push_back(std::move(pr));
    return true;
}

std::vector<Rational> SparseSolver::solution() const {
    std::vector<Rational> x(ncols_, Rational(0));
    for (const auto& pr : pivots_) x[pr.col] = pr.rhs;
    return x;
}

namespace {

// Degree of a module element against the shifts; nullopt for the zero vector.
std::optional<long> module_degree(const RingPtr& ring, const ModuleVec& v,
                                  const std::vector<int>& shifts) {
    std::optional<long> deg;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c].is_zero()) continue;
        auto d = v[c].weighted_degree();
        if (!d) throw DegreeMismatch("module component is inhomogeneous");
        long total = *d + shifts[c];
        if (deg && *deg != total) throw DegreeMismatch("module components disagree in degree");
        deg = total;
    }
    (void)ring;
    return deg;
}

struct ColumnBlock {
    std::size_t offset;              // first column id
    std::vector<Monomial> monomials; // unknown coefficient monomials
};

}  // namespace

std::optional<MembershipWitness> graded_submodule_membership(
    const RingPtr& ring, const ModuleVec& target, const std::vector<int>& comp_shifts,
    const std::vector<ModuleVec>& generators, const PolyMatrix& relations, long degree) {
    const std::size_t ncomp = comp_shifts.size();
    if (target.size() != ncomp) throw DegreeMismatch("target component count mismatch");
    if (relations.rows() != ncomp) throw DegreeMismatch("relation row count mismatch");
    auto tdeg = module_degree(ring, target, comp_shifts);
    if (tdeg && *tdeg != degree) throw DegreeMismatch("target degree differs from stated degree");

    // Column blocks: one per generator, then one per relation column.
    std::vector<ModuleVec> columns = generators;
    for (std::size_t k = 0; k < relations.cols(); ++k) {
        ModuleVec col;
        for (std::size_t c = 0; c < ncomp; ++c) col.push_back(relations.at(c, k));
        columns.push_back(std::move(col));
    }

    std::vector<ColumnBlock> blocks;
    std::size_t ncols = 0;
    for (const auto& col : columns) {
        if (col.size() != ncomp) throw DegreeMismatch("generator component count mismatch");
        ColumnBlock blk;
        blk.offset = ncols;
        auto cdeg = module_degree(ring, col, comp_shifts);
        if (cdeg) {
            long unknown_deg = degree - *cdeg;
            if (unknown_deg >= 0) blk.monomials = monomials_of_degree(ring, unknown_deg);
        }
        ncols += blk.monomials.size();
        blocks.push_back(std::move(blk));
    }

    // Row ids: (component, monomial of degree d - shift_c).
    std::vector<std::map<Monomial, int>> row_id(ncomp);
    int nrows = 0;
    for (std::size_t c = 0; c < ncomp; ++c)
        for (auto& m : monomials_of_degree(ring, degree - comp_shifts[c])) row_id[c].emplace(m, nrows++);

    // Assemble rows: start from RHS, add unknown contributions.
    std::vector<std::map<int, Rational>> rows(nrows);
    std::vector<Rational> rhs(nrows, Rational(0));
    for (std::size_t c = 0; c < ncomp; ++c)
        for (const auto& [m, coef] : target[c].terms()) {
            auto it = row_id[c].find(m);
            if (it == row_id[c].end()) throw DegreeMismatch("target term of unexpected degree");
            rhs[it->second] = coef;
        }
    Monomial prod;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& blk = blocks[b];
        for (std::size_t k = 0; k < blk.monomials.size(); ++k) {
            int colid = static_cast<int>(blk.offset + k);
            const Monomial& um = blk.monomials[k];
            for (std::size_t c = 0; c < ncomp; ++c) {
                for (const auto& [gm, gc] : columns[b][c].terms()) {
                    prod = gm;
                    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += um[i];
                    auto it = row_id[c].find(prod);
                    if (it == row_id[c].end())
                        throw DegreeMismatch("generator term of unexpected degree");
                    rows[it->second][colid] += gc;
                }
            }
        }
    }

    SparseSolver solver(ncols);
    for (int r = 0; r < nrows; ++r)
        if (!solver.add_row(std::move(rows[r]), rhs[r])) return std::nullopt;

    std::vector<Rational> x = solver.solution();
    MembershipWitness w;
    auto block_poly = [&](const ColumnBlock& blk) {
        Poly p(ring);
        for (std::size_t k = 0; k < blk.monomials.size(); ++k)
            p.add_term(blk.monomials[k], x[blk.offset + k]);
        return p;
    };
    for (std::size_t j = 0; j < generators.size(); ++j) w.gen_coeffs.push_back(block_poly(blocks[j]));
    for (std::size_t j = generators.size(); j < blocks.size(); ++j)
        w.rel_coeffs.push_back(block_poly(blocks[j]));
    return w;
}

std::optional<std::vector<Poly>> membership_direct(const RingPtr& coeff_ring,
                                                   const std::vector<Poly>& coeff_images,
                                                   const RingPtr& image_ring, const Poly& target,
                                                   const std::vector<Poly>& gens_in_image,
                                                   long degree) {
    // Unknowns: monomial coefficients of each r_j.
    struct Block {
        std::size_t offset;
        std::vector<Monomial> monomials;        // in coeff_ring
        std::vector<Poly> pushed;               // hom(x^m) * gen_j, in image_ring
    };
    std::vector<Block> blocks;
    std::size_t ncols = 0;
    for (const auto& g : gens_in_image) {
        Block blk;
        blk.offset = ncols;
        if (!g.is_zero()) {
            auto gd = g.weighted_degree();
            if (!gd) throw DegreeMismatch("membership_direct: inhomogeneous generator");
            long ud = degree - *gd;
            if (ud >= 0) {
                blk.monomials = monomials_of_degree(coeff_ring, ud);
                for (const auto& m : blk.monomials) {
                    Poly mono = Poly::monomial(coeff_ring, m, Rational(1));
                    blk.pushed.push_back(mono.apply_hom(coeff_images, image_ring) * g);
                }
            }
        }
        ncols += blk.monomials.size();
        blocks.push_back(std::move(blk));
    }

    std::map<Monomial, int> row_id;
    int nrows = 0;
    auto idfor = [&](const Monomial& m) {
        auto [it, inserted] = row_id.emplace(m, nrows);
        if (inserted) ++nrows;
        return it->second;
    };
    std::vector<std::map<int, Rational>> rows;
    std::vector<Rational> rhs;
    auto ensure = [&](int id) {
        while (static_cast<int>(rows.size()) <= id) {
            rows.emplace_back();
            rhs.emplace_back(0);
        }
    };
    for (const auto& [m, c] : target.terms()) {
        int id = idfor(m);
        ensure(id);
        rhs[id] = c;
    }
    for (const auto& blk : blocks)
        for (std::size_t k = 0; k < blk.pushed.size(); ++k)
            for (const auto& [m, c] : blk.pushed[k].terms()) {
                int id = idfor(m);
                ensure(id);
                rows[id][static_cast<int>(blk.offset + k)] += c;
            }

    SparseSolver solver(ncols);
    for (int r = 0; r < nrows; ++r)
        if (!solver.add_row(std::move(rows[r]), rhs[r])) return std::nullopt;
    std::vector<Rational> x = solver.solution();
    std::vector<Poly> out;
    for (const auto& blk : blocks) {
        Poly p(coeff_ring);
        for (std::size_t k = 0; k < blk.monomials.size(); ++k)
            p.add_term(blk.monomials[k], x[blk.offset + k]);
        out.push_back(p);
    }
    return out;
}

std::size_t syzygy_dimension_direct(const RingPtr& coeff_ring,
                                    const std::vector<Poly>& coeff_images,
                                    const RingPtr& image_ring,
                                    const std::vector<Poly>& gens_in_image, long degree) {
    struct Block {
        std::size_t offset;
        std::vector<Monomial> monomials;
        std::vector<Poly> pushed;
    };
    std::vector<Block> blocks;
    std::size_t ncols = 0;
    for (const auto& g : gens_in_image) {
        Block blk;
        blk.offset = ncols;
        if (!g.is_zero()) {
            auto gd = g.weighted_degree();
            if (!gd) throw DegreeMismatch("syzygy_dimension: inhomogeneous generator");
            long ud = degree - *gd;
            if (ud >= 0) {
                blk.monomials = monomials_of_degree(coeff_ring, ud);
                for (const auto& m : blk.monomials) {
                    Poly mono = Poly::monomial(coeff_ring, m, Rational(1));
                    blk.pushed.push_back(mono.apply_hom(coeff_images, image_ring) * g);
                }
            }
        }
        ncols += blk.monomials.size();
        blocks.push_back(std::move(blk));
    }
    std::map<Monomial, int> row_id;
    int nrows = 0;
    std::vector<std::map<int, Rational>> rows;
    for (const auto& blk : blocks)
        for (std::size_t k = 0; k < blk.pushed.size(); ++k)
            for (const auto& [m, c] : blk.pushed[k].terms()) {
                auto [it, inserted] = row_id.emplace(m, nrows);
                if (inserted) {
                    ++nrows;
                    rows.emplace_back();
                }
                rows[it->second][static_cast<int>(blk.offset + k)] += c;
            }
    SparseSolver solver(ncols);
    for (int r = 0; r < nrows; ++r) solver.add_row(std::move(rows[r]), Rational(0));
    return ncols - solver.rank();
}

bool in_rational_span(const std::vector<Poly>& basis, const Poly& target) {
    std::map<Monomial, int> row_id;
    int nrows = 0;
    auto idfor = [&](const Monomial& m) {
        auto [it, inserted] = row_id.emplace(m, nrows);
        if (inserted) ++nrows;
        return it->second;
    };
    std::vector<std::map<int, Rational>> rows;
    std::vector<Rational> rhs;
    auto ensure = [&](int id) {
        while (static_cast<int>(rows.size()) <= id) {
            rows.emplace_back();
            rhs.emplace_back(0);
        }
    };
    for (const auto& [m, c] : target.terms()) {
        int id = idfor(m);
        ensure(id);
        rhs[id] = c;
    }
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& [m, c] : basis[j].terms()) {
            int id = idfor(m);
            ensure(id);
            rows[id][static_cast<int>(j)] += c;
        }
    SparseSolver solver(basis.size());
    for (int r = 0; r < nrows; ++r)
        if (!solver.add_row(std::move(rows[r]), rhs[r])) return false;
    return true;
}

}  // namespace symdet
