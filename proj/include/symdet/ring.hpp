#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symdet {

using Monomial = std::vector<int>;  // exponent vector, one entry per ring variable

enum class MonomialOrder {
    GrevLex,  // weighted degree first, ties by reverse lexicographic
    Lex,
};

// A named weighted-graded polynomial ring: ordered variables, one positive
// integer weight each, and the monomial order used for every computation in
// that ring. Immutable; shared by reference between polynomials.
class RingSpec {
public:
    static std::shared_ptr<const RingSpec> make(std::vector<std::string> vars,
                                                std::vector<int> weights,
                                                MonomialOrder order = MonomialOrder::GrevLex);

    std::size_t nvars() const { return vars_.size(); }
    const std::string& var_name(std::size_t i) const { return vars_[i]; }
    int weight(std::size_t i) const { return weights_[i]; }
    const std::vector<int>& weights() const { return weights_; }
    const std::vector<std::string>& var_names() const { return vars_; }
    MonomialOrder order() const { return order_; }

    std::optional<std::size_t> var_index(const std::string& name) const;

    long weighted_degree(const Monomial& m) const;

    // Monomial order comparison: negative, zero, positive as a <, =, > b.
    int compare(const Monomial& a, const Monomial& b) const;

    bool same_structure(const RingSpec& other) const;

private:
    RingSpec(std::vector<std::string> v, std::vector<int> w, MonomialOrder o);

    std::vector<std::string> vars_;
    std::vector<int> weights_;
    MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

// The ambient spaces used throughout the construction. Coordinates are
// ordered with the high-weight variables first so that the sextic model
// equations lead with z-squares under grevlex.
namespace rings {

RingPtr uv();              // k[u,v], weights 1,1
RingPtr p5();              // k[u,v,a,b,c,d], all weight 1
RingPtr plane();           // k[y1,y2,y3], weights 2,2,2
RingPtr tprime();          // k[z1,z2,y1,y2,y3], weights 3,3,2,2,2
RingPtr base();            // k[y1,y2,y3,a,b,c,d], weights 2,2,2,1,1,1,1
RingPtr base_ext();        // base plus formal weight-2 variable s4
RingPtr p5_ext();          // p5 plus formal weight-2 variable s4
RingPtr wprime();          // k[z1,z2,y1,y2,y3,a,b,c,d], weights 3,3,2,2,2,1,1,1,1
RingPtr wprime_ext();      // wprime plus formal weight-2 variable s4
RingPtr detmodel();        // k[z1..z4,y1..y4], weights 3^4,2^4
RingPtr detmodel_curve();  // k[z1..z4,y1,y2,y3], weights 3^4,2^3
RingPtr yspace();          // k[y1,y2,y3,y4], weights 2,2,2,2
RingPtr truncated();       // k[w,y1,y2,y3], weights 3,1,1,1
RingPtr residual_sym();    // base plus formal weight-2 variables s4,s5,t4,t5

}  // namespace rings

}  // namespace symdet
