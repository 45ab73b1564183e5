#include "dfa/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace dfa {

std::string toString(LatticeOrder order)
{
    switch (order) {
    case LatticeOrder::Subset:
        return "subset";
    case LatticeOrder::ReverseSubset:
        return "reverse-subset";
    case LatticeOrder::PointwiseSubset:
        return "pointwise-subset";
    }
    return "unknown";
}

// --- Universe --------------------------------------------------------------

UniversePtr Universe::ofVariables(const std::set<std::string>& vars)
{
    auto u = std::make_shared<Universe>();
    u->kind_ = Kind::Variables;
    u->vars_.assign(vars.begin(), vars.end());
    for (std::size_t i = 0; i < u->vars_.size(); ++i)
        u->varIndex_.emplace(u->vars_[i], i);
    return u;
}

UniversePtr Universe::ofExpressions(const std::set<AExp>& exprs)
{
    auto u = std::make_shared<Universe>();
    u->kind_ = Kind::Expressions;
    std::vector<std::pair<std::string, AExp>> keyed;
    keyed.reserve(exprs.size());
    for (const auto& e : exprs)
        keyed.emplace_back(toString(e), e);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first < b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        u->exprText_.push_back(keyed[i].first);
        u->exprs_.push_back(keyed[i].second);
        u->exprIndex_.emplace(keyed[i].second, i);
    }
    return u;
}

UniversePtr Universe::ofDefinitions(const std::set<std::string>& vars, const std::vector<Label>& labels)
{
    auto u = std::make_shared<Universe>();
    u->kind_ = Kind::Definitions;
    u->vars_.assign(vars.begin(), vars.end());
    for (std::size_t i = 0; i < u->vars_.size(); ++i)
        u->varIndex_.emplace(u->vars_[i], i);
    std::set<Label> sorted(labels.begin(), labels.end());
    u->labels_.assign(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < u->labels_.size(); ++i)
        u->labelIndex_.emplace(u->labels_[i], i);
    return u;
}

std::size_t Universe::size() const
{
    switch (kind_) {
    case Kind::Variables:
        return vars_.size();
    case Kind::Expressions:
        return exprs_.size();
    case Kind::Definitions:
        return vars_.size() * labels_.size();
    }
    return 0;
}

std::optional<std::size_t> Universe::variableIndex(const std::string& v) const
{
    if (auto it = varIndex_.find(v); it != varIndex_.end())
        return it->second;
    return std::nullopt;
}

std::optional<std::size_t> Universe::expressionIndex(const AExp& e) const
{
    if (auto it = exprIndex_.find(e); it != exprIndex_.end())
        return it->second;
    return std::nullopt;
}

std::optional<std::size_t> Universe::labelIndex(const Label& l) const
{
    if (auto it = labelIndex_.find(l); it != labelIndex_.end())
        return it->second;
    return std::nullopt;
}

std::string Universe::atomText(std::size_t i) const
{
    switch (kind_) {
    case Kind::Variables:
        return vars_.at(i);
    case Kind::Expressions:
        return exprText_.at(i);
    case Kind::Definitions:
        return vars_.at(i / labels_.size()) + "@" + labels_.at(i % labels_.size()).name;
    }
    return {};
}

bool Universe::sameAs(const Universe& other) const
{
    if (this == &other)
        return true;
    return kind_ == other.kind_ && vars_ == other.vars_ && exprs_ == other.exprs_ && labels_ == other.labels_;
}

// --- Fact ------------------------------------------------------------------

namespace {

void requireOrderFits(const Universe& u, LatticeOrder order)
{
    const bool defs = u.kind() == Universe::Kind::Definitions;
    if (defs != (order == LatticeOrder::PointwiseSubset))
        throw Error("universe-mismatch", "order " + toString(order) + " does not fit this universe");
}

} // namespace

Fact::Fact(UniversePtr universe, LatticeOrder order) : Fact(universe, order, Bits(universe->size())) {}

Fact::Fact(UniversePtr universe, LatticeOrder order, Bits bits)
    : universe_(std::move(universe)), order_(order), bits_(std::move(bits))
{
    requireOrderFits(*universe_, order_);
    if (bits_.size() != universe_->size())
        throw Error("universe-mismatch", "bitset size does not match universe");
}

Fact Fact::empty(UniversePtr universe, LatticeOrder order) { return Fact(std::move(universe), order); }

Fact Fact::full(UniversePtr universe, LatticeOrder order)
{
    Fact f(std::move(universe), order);
    f.bits_.set();
    return f;
}

Fact Fact::bottom(UniversePtr universe, LatticeOrder order)
{
    return order == LatticeOrder::ReverseSubset ? full(std::move(universe), order) : empty(std::move(universe), order);
}

Fact Fact::top(UniversePtr universe, LatticeOrder order)
{
    return order == LatticeOrder::ReverseSubset ? empty(std::move(universe), order) : full(std::move(universe), order);
}

Fact Fact::ofVariables(UniversePtr universe, LatticeOrder order, const std::set<std::string>& vars)
{
    Fact f(std::move(universe), order);
    for (const auto& v : vars)
        f.insertVariable(v);
    return f;
}

Fact Fact::ofExpressions(UniversePtr universe, LatticeOrder order, const std::set<AExp>& exprs)
{
    Fact f(std::move(universe), order);
    for (const auto& e : exprs)
        f.insertExpression(e);
    return f;
}

Fact Fact::ofDefinitions(UniversePtr universe, const std::map<std::string, std::set<Label>>& defs)
{
    Fact f(universe, LatticeOrder::PointwiseSubset);
    for (const auto& [v, labels] : defs) {
        auto vi = universe->variableIndex(v);
        if (!vi)
            throw Error("universe-mismatch", "variable " + v + " is not in the universe");
        for (const auto& l : labels) {
            auto li = universe->labelIndex(l);
            if (!li)
                throw Error("universe-mismatch", "label " + l.name + " is not in the universe");
            f.bits_.set(universe->definitionIndex(*vi, *li));
        }
    }
    return f;
}

bool Fact::containsVariable(const std::string& v) const
{
    auto i = universe_->variableIndex(v);
    return i && bits_.test(*i);
}

bool Fact::containsExpression(const AExp& e) const
{
    auto i = universe_->expressionIndex(e);
    return i && bits_.test(*i);
}

void Fact::insertVariable(const std::string& v)
{
    auto i = universe_->variableIndex(v);
    if (!i || universe_->kind() != Universe::Kind::Variables)
        throw Error("universe-mismatch", "variable " + v + " is not in the universe");
    bits_.set(*i);
}

void Fact::eraseVariable(const std::string& v)
{
    if (auto i = universe_->variableIndex(v); i && universe_->kind() == Universe::Kind::Variables)
        bits_.reset(*i);
}

void Fact::insertExpression(const AExp& e)
{
    auto i = universe_->expressionIndex(e);
    if (!i)
        throw Error("universe-mismatch", "expression " + dfa::toString(e) + " is not in the universe");
    bits_.set(*i);
}

std::set<Label> Fact::definitionsOf(const std::string& v) const
{
    std::set<Label> out;
    auto vi = universe_->variableIndex(v);
    if (!vi || universe_->kind() != Universe::Kind::Definitions)
        return out;
    const auto& labels = universe_->labels();
    for (std::size_t li = 0; li < labels.size(); ++li)
        if (bits_.test(universe_->definitionIndex(*vi, li)))
            out.insert(labels[li]);
    return out;
}

void Fact::setDefinition(const std::string& v, const Label& l)
{
    auto vi = universe_->variableIndex(v);
    auto li = universe_->labelIndex(l);
    if (!vi || !li || universe_->kind() != Universe::Kind::Definitions)
        throw Error("universe-mismatch", "definition " + v + "@" + l.name + " is not in the universe");
    for (std::size_t k = 0; k < universe_->labels().size(); ++k)
        bits_.reset(universe_->definitionIndex(*vi, k));
    bits_.set(universe_->definitionIndex(*vi, *li));
}

bool Fact::containsDefinition(const std::string& v, const Label& l) const
{
    auto vi = universe_->variableIndex(v);
    auto li = universe_->labelIndex(l);
    return vi && li && bits_.test(universe_->definitionIndex(*vi, *li));
}

std::set<std::string> Fact::variables() const
{
    std::set<std::string> out;
    if (universe_->kind() != Universe::Kind::Variables)
        return out;
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i))
        out.insert(universe_->variableNames()[i]);
    return out;
}

std::vector<AExp> Fact::expressions() const
{
    std::vector<AExp> out;
    if (universe_->kind() != Universe::Kind::Expressions)
        return out;
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i))
        out.push_back(universe_->expressions()[i]);
    return out;
}

std::map<std::string, std::set<Label>> Fact::definitions() const
{
    std::map<std::string, std::set<Label>> out;
    if (universe_->kind() != Universe::Kind::Definitions)
        return out;
    for (const auto& v : universe_->variableNames())
        out[v] = definitionsOf(v);
    return out;
}

std::vector<std::string> Fact::atoms() const
{
    std::vector<std::string> out;
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i))
        out.push_back(universe_->atomText(i));
    return out;
}

namespace {

std::string braced(const std::vector<std::string>& items)
{
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ", ";
        out += items[i];
    }
    return out + "}";
}

std::vector<std::string> labelNames(const std::set<Label>& labels)
{
    std::vector<std::string> out;
    for (const auto& l : labels)
        out.push_back(l.name);
    return out;
}

} // namespace

std::string Fact::toString() const
{
    if (universe_->kind() != Universe::Kind::Definitions)
        return braced(atoms());
    std::vector<std::string> parts;
    for (const auto& [v, labels] : definitions())
        parts.push_back(v + ": " + braced(labelNames(labels)));
    return braced(parts);
}

std::vector<std::string> Fact::toLines() const
{
    if (universe_->kind() != Universe::Kind::Definitions)
        return {toString()};
    std::vector<std::string> lines;
    for (const auto& [v, labels] : definitions())
        lines.push_back(v + ": " + braced(labelNames(labels)));
    return lines;
}

bool operator==(const Fact& a, const Fact& b)
{
    return a.order_ == b.order_ && a.universe_->sameAs(*b.universe_) && a.bits_ == b.bits_;
}

// --- operations ------------------------------------------------------------

void requireCompatible(const Fact& a, const Fact& b)
{
    if (a.order() != b.order())
        throw Error("universe-mismatch",
                    "facts use different orders (" + toString(a.order()) + " vs " + toString(b.order()) + ")");
    if (!a.universe()->sameAs(*b.universe()))
        throw Error("universe-mismatch", "facts are drawn from different universes");
}

bool isSubset(const Fact& a, const Fact& b)
{
    requireCompatible(a, b);
    return a.bits().is_subset_of(b.bits());
}

Fact setUnion(const Fact& a, const Fact& b)
{
    requireCompatible(a, b);
    return Fact(a.universe(), a.order(), a.bits() | b.bits());
}

Fact setIntersection(const Fact& a, const Fact& b)
{
    requireCompatible(a, b);
    return Fact(a.universe(), a.order(), a.bits() & b.bits());
}

Fact setDifference(const Fact& a, const Fact& b)
{
    requireCompatible(a, b);
    return Fact(a.universe(), a.order(), a.bits() - b.bits());
}

bool leq(const Fact& a, const Fact& b)
{
    return a.order() == LatticeOrder::ReverseSubset ? isSubset(b, a) : isSubset(a, b);
}

Fact join(const Fact& a, const Fact& b)
{
    return a.order() == LatticeOrder::ReverseSubset ? setIntersection(a, b) : setUnion(a, b);
}

Fact meet(const Fact& a, const Fact& b)
{
    return a.order() == LatticeOrder::ReverseSubset ? setUnion(a, b) : setIntersection(a, b);
}

Fact complement(const Fact& a)
{
    return Fact(a.universe(), a.order(), ~a.bits());
}

bool checkPredictionLemmaSubset(const Fact& before, const Fact& after, const Fact& before2, const Fact& D,
                                const Fact& U)
{
    requireCompatible(before, after);
    requireCompatible(before, U);
    return isSubset(before2, setUnion(before, D));
}

bool checkPredictionLemmaReverse(const Fact& before, const Fact& after, const Fact& before2, const Fact& D,
                                 const Fact& U)
{
    requireCompatible(before, after);
    requireCompatible(before, D);
    return isSubset(setDifference(before, U), before2);
}

bool checkPredictionLemmaEqSubset(const Fact& before, const Fact& after, const Fact& before2)
{
    requireCompatible(before, after);
    return before == before2 && isSubset(before2, before);
}

bool checkPredictionLemmaEqReverse(const Fact& before, const Fact& after, const Fact& before2)
{
    requireCompatible(before, after);
    return before == before2 && isSubset(before, before2);
}

bool checkPredictionLemmaCD(const Fact& before, const Fact& after, const Fact& before2, const Fact& D, const Fact& U,
                            CdVariant variant)
{
    requireCompatible(before, after);
    requireCompatible(before, D);
    if (variant == CdVariant::AndForm)
        return leq(before2, join(before, D));
    return leq(before2, join(before, complement(U)));
}

} // namespace dfa
