// Finite powerset lattices used by the analyses. A Fact is a bitset over an
// indexed Universe (variables, arithmetic expressions, or (variable, label)
// definition pairs) tagged with the order it lives in.
#pragma once

#include "dfa/ast.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dfa {

enum class LatticeOrder { Subset, ReverseSubset, PointwiseSubset };
std::string toString(LatticeOrder order);

class Universe {
public:
    enum class Kind { Variables, Expressions, Definitions };

    static std::shared_ptr<const Universe> ofVariables(const std::set<std::string>& vars);
    static std::shared_ptr<const Universe> ofExpressions(const std::set<AExp>& exprs);
    /// All (v, l) pairs; labels are ordered by name.
    static std::shared_ptr<const Universe> ofDefinitions(const std::set<std::string>& vars,
                                                         const std::vector<Label>& labels);

    Kind kind() const { return kind_; }
    std::size_t size() const;

    // Variables / Definitions
    const std::vector<std::string>& variableNames() const { return vars_; }
    std::optional<std::size_t> variableIndex(const std::string& v) const;
    // Expressions, ordered by printed text
    const std::vector<AExp>& expressions() const { return exprs_; }
    std::optional<std::size_t> expressionIndex(const AExp& e) const;
    // Definitions: bit index = variable * labels + label
    const std::vector<Label>& labels() const { return labels_; }
    std::optional<std::size_t> labelIndex(const Label& l) const;
    std::size_t definitionIndex(std::size_t variable, std::size_t label) const { return variable * labels_.size() + label; }

    /// Printed form of the atom at bit i ("x", "y + 1", or "x@l0").
    std::string atomText(std::size_t i) const;

    bool sameAs(const Universe& other) const;

private:
    Kind kind_ = Kind::Variables;
    std::vector<std::string> vars_;
    std::map<std::string, std::size_t> varIndex_;
    std::vector<AExp> exprs_;
    std::vector<std::string> exprText_;
    std::map<AExp, std::size_t> exprIndex_;
    std::vector<Label> labels_;
    std::map<Label, std::size_t> labelIndex_;
};

using UniversePtr = std::shared_ptr<const Universe>;

class Fact {
public:
    using Bits = boost::dynamic_bitset<>;

    Fact(UniversePtr universe, LatticeOrder order); // empty set
    Fact(UniversePtr universe, LatticeOrder order, Bits bits);

    static Fact empty(UniversePtr universe, LatticeOrder order);
    static Fact full(UniversePtr universe, LatticeOrder order);
    static Fact bottom(UniversePtr universe, LatticeOrder order);
    static Fact top(UniversePtr universe, LatticeOrder order);

    static Fact ofVariables(UniversePtr universe, LatticeOrder order, const std::set<std::string>& vars);
    static Fact ofExpressions(UniversePtr universe, LatticeOrder order, const std::set<AExp>& exprs);
    static Fact ofDefinitions(UniversePtr universe, const std::map<std::string, std::set<Label>>& defs);

    const UniversePtr& universe() const { return universe_; }
    LatticeOrder order() const { return order_; }
    const Bits& bits() const { return bits_; }
    Bits& bits() { return bits_; }
    std::size_t count() const { return bits_.count(); }
    bool isEmpty() const { return bits_.none(); }

    bool containsVariable(const std::string& v) const;
    bool containsExpression(const AExp& e) const;
    void insertVariable(const std::string& v);
    void eraseVariable(const std::string& v);
    void insertExpression(const AExp& e);

    /// Definition set of v (empty when v is outside the universe).
    std::set<Label> definitionsOf(const std::string& v) const;
    /// Replaces v's definition set with exactly {l}.
    void setDefinition(const std::string& v, const Label& l);
    bool containsDefinition(const std::string& v, const Label& l) const;

    std::set<std::string> variables() const;
    std::vector<AExp> expressions() const;
    std::map<std::string, std::set<Label>> definitions() const;

    /// Atoms as printed text, in universe order.
    std::vector<std::string> atoms() const;

    /// "{a, b}" for sets; "{x: {l0}, y: {}}" for definition maps.
    std::string toString() const;
    /// One line per variable for definition maps ("x: {l0, l3}"); a single
    /// line otherwise.
    std::vector<std::string> toLines() const;

    friend bool operator==(const Fact& a, const Fact& b);

private:
    UniversePtr universe_;
    LatticeOrder order_;
    Bits bits_;
};

// Lattice operations in the fact's own order. Mixing universes or orders
// throws Error("universe-mismatch").
bool leq(const Fact& a, const Fact& b);
Fact join(const Fact& a, const Fact& b);
Fact meet(const Fact& a, const Fact& b);
Fact complement(const Fact& a);

// Plain set operations on the underlying sets, independent of order.
Fact setUnion(const Fact& a, const Fact& b);
Fact setIntersection(const Fact& a, const Fact& b);
Fact setDifference(const Fact& a, const Fact& b);
bool isSubset(const Fact& a, const Fact& b);

void requireCompatible(const Fact& a, const Fact& b);

// Prophecy-prediction consistency lemmas. Each returns the lemma's
// conclusion; the caller is responsible for establishing the hypotheses.

/// Hypotheses: before = (after - D) ∪ U, before2 ⊆ after.
/// Conclusion: before2 ⊆ before ∪ D.
bool checkPredictionLemmaSubset(const Fact& before, const Fact& after, const Fact& before2, const Fact& D,
                                const Fact& U);
/// Hypotheses: before = (after - D) ∪ U, before2 ⊇ after.
/// Conclusion: before2 ⊇ before - U.
bool checkPredictionLemmaReverse(const Fact& before, const Fact& after, const Fact& before2, const Fact& D,
                                 const Fact& U);
/// Hypotheses: before = after, after = before2.
/// Conclusion: before = before2 and before2 ⊆ before.
bool checkPredictionLemmaEqSubset(const Fact& before, const Fact& after, const Fact& before2);
/// Hypotheses: before = after, after = before2.
/// Conclusion: before = before2 and before2 ⊇ before.
bool checkPredictionLemmaEqReverse(const Fact& before, const Fact& after, const Fact& before2);

enum class CdVariant { AndForm, OrForm };
/// And-form hypotheses: before = (after ∧ ¬D) ∨ U, before2 ≤ after; conclusion before2 ≤ before ∨ D.
/// Or-form hypotheses: before = (after ∨ ¬D) ∧ U, before2 ≤ after; conclusion before2 ≤ before ∨ ¬U.
/// All operations are taken in the facts' order.
bool checkPredictionLemmaCD(const Fact& before, const Fact& after, const Fact& before2, const Fact& D, const Fact& U,
                            CdVariant variant);

} // namespace dfa
