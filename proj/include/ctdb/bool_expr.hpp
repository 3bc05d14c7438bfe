#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ctdb {

/// Negation-free Boolean formula tree: TRUE, FALSE, an atom, or an n-ary
/// AND/OR node. There is no NOT node; negation is pushed into the atoms via
/// comparison-operator complements. The same shape is instantiated for
/// ground conditions, column predicates and parsed condition syntax.
template <typename AtomT>
class BoolExpr {
public:
    enum class Kind : std::uint8_t { True, False, Atom, And, Or };

    BoolExpr() : kind_(Kind::True) {}

    static BoolExpr always() { return BoolExpr(Kind::True); }
    static BoolExpr never() { return BoolExpr(Kind::False); }

    static BoolExpr atom(AtomT a) {
        BoolExpr e(Kind::Atom);
        e.atom_ = std::move(a);
        return e;
    }

    /// Conjunction. TRUE children are dropped, a FALSE child collapses the
    /// whole node, and single-child nodes unwrap, so AND/OR nodes always
    /// have at least two children.
    static BoolExpr all_of(std::vector<BoolExpr> children) {
        std::vector<BoolExpr> kept;
        kept.reserve(children.size());
        for (auto& c : children) {
            if (c.kind_ == Kind::False) return never();
            if (c.kind_ == Kind::True) continue;
            kept.push_back(std::move(c));
        }
        if (kept.empty()) return always();
        if (kept.size() == 1) return std::move(kept.front());
        BoolExpr e(Kind::And);
        e.children_ = std::move(kept);
        return e;
    }

    /// Disjunction, dual normalization of all_of.
    static BoolExpr any_of(std::vector<BoolExpr> children) {
        std::vector<BoolExpr> kept;
        kept.reserve(children.size());
        for (auto& c : children) {
            if (c.kind_ == Kind::True) return always();
            if (c.kind_ == Kind::False) continue;
            kept.push_back(std::move(c));
        }
        if (kept.empty()) return never();
        if (kept.size() == 1) return std::move(kept.front());
        BoolExpr e(Kind::Or);
        e.children_ = std::move(kept);
        return e;
    }

    Kind kind() const { return kind_; }
    bool is_true() const { return kind_ == Kind::True; }
    bool is_false() const { return kind_ == Kind::False; }
    bool is_atom() const { return kind_ == Kind::Atom; }

    const AtomT& as_atom() const { return *atom_; }
    std::span<const BoolExpr> children() const { return children_; }

    /// Structurally rebuilds the tree with every atom mapped through `fn`,
    /// which may change the atom type (e.g. predicate atom -> ground atom).
    template <typename Fn>
    auto map_atoms(Fn&& fn) const -> BoolExpr<std::decay_t<decltype(fn(std::declval<const AtomT&>()))>> {
        using OutAtom = std::decay_t<decltype(fn(std::declval<const AtomT&>()))>;
        using Out = BoolExpr<OutAtom>;
        switch (kind_) {
        case Kind::True:
            return Out::always();
        case Kind::False:
            return Out::never();
        case Kind::Atom:
            return Out::atom(fn(*atom_));
        case Kind::And:
        case Kind::Or: {
            std::vector<Out> mapped;
            mapped.reserve(children_.size());
            for (const auto& c : children_) mapped.push_back(c.map_atoms(fn));
            return kind_ == Kind::And ? Out::all_of(std::move(mapped)) : Out::any_of(std::move(mapped));
        }
        }
        return Out::always(); // unreachable
    }

    template <typename Fn>
    void for_each_atom(Fn&& fn) const {
        if (kind_ == Kind::Atom) {
            fn(*atom_);
        } else if (kind_ == Kind::And || kind_ == Kind::Or) {
            for (const auto& c : children_) c.for_each_atom(fn);
        }
    }

    friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
        return a.kind_ == b.kind_ && a.atom_ == b.atom_ && a.children_ == b.children_;
    }

private:
    explicit BoolExpr(Kind k) : kind_(k) {}

    Kind kind_;
    std::optional<AtomT> atom_;
    std::vector<BoolExpr> children_;
};

} // namespace ctdb
