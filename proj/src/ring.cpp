#include "symdet/ring.hpp"

#include <algorithm>
#include <set>

#include "symdet/errors.hpp"

namespace symdet {

RingSpec::RingSpec(std::vector<std::string> v, std::vector<int> w, MonomialOrder o)
    : vars_(std::move(v)), weights_(std::move(w)), order_(o) {}

RingPtr RingSpec::make(std::vector<std::string> vars, std::vector<int> weights, MonomialOrder order) {
    if (vars.size() != weights.size()) throw Error("ring: variable/weight count mismatch");
    std::set<std::string> seen(vars.begin(), vars.end());
    if (seen.size() != vars.size()) throw Error("ring: duplicate variable names");
    for (int w : weights)
        if (w < 1) throw Error("ring: weights must be >= 1");
    return RingPtr(new RingSpec(std::move(vars), std::move(weights), order));
}

std::optional<std::size_t> RingSpec::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

long RingSpec::weighted_degree(const Monomial& m) const {
    long d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<long>(m[i]) * weights_[i];
    return d;
}

int RingSpec::compare(const Monomial& a, const Monomial& b) const {
    if (order_ == MonomialOrder::Lex) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }
    long da = weighted_degree(a), db = weighted_degree(b);
    if (da != db) return da < db ? -1 : 1;
    // Reverse lex tie-break: the monomial whose trailing difference is
    // positive carries more weight in the last variables, hence is smaller.
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

bool RingSpec::same_structure(const RingSpec& other) const {
    return vars_ == other.vars_ && weights_ == other.weights_ && order_ == other.order_;
}

namespace rings {

namespace {
RingPtr make_cached(std::vector<std::string> v, std::vector<int> w) {
    return RingSpec::make(std::move(v), std::move(w));
}
}  // namespace

RingPtr uv() {
    static RingPtr r = make_cached({"u", "v"}, {1, 1});
    return r;
}

RingPtr p5() {
    static RingPtr r = make_cached({"u", "v", "a", "b", "c", "d"}, {1, 1, 1, 1, 1, 1});
    return r;
}

RingPtr plane() {
    static RingPtr r = make_cached({"y1", "y2", "y3"}, {2, 2, 2});
    return r;
}

RingPtr tprime() {
    static RingPtr r = make_cached({"z1", "z2", "y1", "y2", "y3"}, {3, 3, 2, 2, 2});
    return r;
}

RingPtr base() {
    static RingPtr r = make_cached({"y1", "y2", "y3", "a", "b", "c", "d"}, {2, 2, 2, 1, 1, 1, 1});
    return r;
}

RingPtr base_ext() {
    static RingPtr r = make_cached({"y1", "y2", "y3", "a", "b", "c", "d", "s4"}, {2, 2, 2, 1, 1, 1, 1, 2});
    return r;
}

RingPtr p5_ext() {
    static RingPtr r = make_cached({"u", "v", "a", "b", "c", "d", "s4"}, {1, 1, 1, 1, 1, 1, 2});
    return r;
}

RingPtr wprime() {
    static RingPtr r =
        make_cached({"z1", "z2", "y1", "y2", "y3", "a", "b", "c", "d"}, {3, 3, 2, 2, 2, 1, 1, 1, 1});
    return r;
}

RingPtr wprime_ext() {
    static RingPtr r = make_cached({"z1", "z2", "y1", "y2", "y3", "a", "b", "c", "d", "s4"},
                                   {3, 3, 2, 2, 2, 1, 1, 1, 1, 2});
    return r;
}

RingPtr detmodel() {
    static RingPtr r = make_cached({"z1", "z2", "z3", "z4", "y1", "y2", "y3", "y4"},
                                   {3, 3, 3, 3, 2, 2, 2, 2});
    return r;
}

RingPtr detmodel_curve() {
    static RingPtr r =
        make_cached({"z1", "z2", "z3", "z4", "y1", "y2", "y3"}, {3, 3, 3, 3, 2, 2, 2});
    return r;
}

RingPtr yspace() {
    static RingPtr r = make_cached({"y1", "y2", "y3", "y4"}, {2, 2, 2, 2});
    return r;
}

RingPtr truncated() {
    static RingPtr r = make_cached({"w", "y1", "y2", "y3"}, {3, 1, 1, 1});
    return r;
}

RingPtr residual_sym() {
    static RingPtr r = make_cached({"y1", "y2", "y3", "a", "b", "c", "d", "s4", "s5", "t4", "t5"},
                                   {2, 2, 2, 1, 1, 1, 1, 2, 2, 2, 2});
    return r;
}

}  // namespace rings

}  // namespace symdet
