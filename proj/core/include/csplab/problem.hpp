#pragma once

#include <csplab/value.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace csplab {

using VarId = int;
/// Position of a value inside its variable's domain. Domain order is the
/// static value ordering used by every search.
using ValueIndex = int;

enum class RelationKind {
    Extensional,
    NotEqual,
    LetterEquality,
};

/// A constraint: an ordered scope plus a relation over it.
///
/// Extensional relations are stored as a sorted, duplicate-free flat array of
/// value-index tuples aligned with the scope. Intensional kinds keep only
/// their parameters and are evaluated against the owning Problem's domains.
class Constraint {
public:
    static Constraint extensional(std::vector<VarId> scope,
                                  const std::vector<std::vector<ValueIndex>>& tuples);
    /// `flat` holds tuples back to back; it is sorted and deduplicated here.
    static Constraint extensional_flat(std::vector<VarId> scope, std::vector<ValueIndex> flat);
    static Constraint not_equal(VarId x, VarId y);
    /// Word at `x`, letter `pos_a` equals word at `y`, letter `pos_b`.
    static Constraint letter_equality(VarId x, VarId y, int pos_a, int pos_b);

    [[nodiscard]] const std::vector<VarId>& scope() const { return scope_; }
    [[nodiscard]] int arity() const { return static_cast<int>(scope_.size()); }
    [[nodiscard]] RelationKind kind() const { return kind_; }
    [[nodiscard]] bool is_extensional() const { return kind_ == RelationKind::Extensional; }

    /// Index of `v` in the scope, or -1.
    [[nodiscard]] int position_of(VarId v) const;

    /// Number of tuples (extensional only).
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::span<const ValueIndex> tuple(std::size_t i) const;
    /// Membership test on an extensional relation (binary search).
    [[nodiscard]] bool contains(std::span<const ValueIndex> values) const;

    [[nodiscard]] int pos_a() const { return pos_a_; }
    [[nodiscard]] int pos_b() const { return pos_b_; }

    friend bool operator==(const Constraint&, const Constraint&) = default;

private:
    Constraint() = default;

    std::vector<VarId> scope_;
    RelationKind kind_ = RelationKind::Extensional;
    std::vector<ValueIndex> flat_;
    int pos_a_ = 0;
    int pos_b_ = 0;
};

struct Assignment {
    VarId var = 0;
    ValueIndex value = 0;

    friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Ordered variable-to-value assignment in instantiation order. The position
/// of an assignment (1-based) is its search level.
class PartialSolution {
public:
    PartialSolution() = default;
    PartialSolution(std::initializer_list<Assignment> items);
    explicit PartialSolution(std::vector<Assignment> items);

    /// Throws PreconditionError when `var` is already assigned.
    void push(VarId var, ValueIndex value);
    void pop() { items_.pop_back(); }

    [[nodiscard]] std::size_t size() const { return items_.size(); }
    [[nodiscard]] bool empty() const { return items_.empty(); }
    [[nodiscard]] const Assignment& operator[](std::size_t i) const { return items_[i]; }
    [[nodiscard]] auto begin() const { return items_.begin(); }
    [[nodiscard]] auto end() const { return items_.end(); }
    [[nodiscard]] const std::vector<Assignment>& items() const { return items_; }

    [[nodiscard]] std::optional<ValueIndex> value_of(VarId var) const;
    [[nodiscard]] bool assigns(VarId var) const { return value_of(var).has_value(); }

    /// The first `n` assignments.
    [[nodiscard]] PartialSolution prefix(std::size_t n) const;
    /// Assignments sorted by variable: the node identity as a set of pairs.
    [[nodiscard]] std::vector<Assignment> as_set() const;

    friend bool operator==(const PartialSolution&, const PartialSolution&) = default;

private:
    std::vector<Assignment> items_;
};

/// A constraint satisfaction problem: named variables, ordered domains and an
/// ordered constraint list. Immutable once constructed.
///
/// Variables that occur in no constraint are accepted: random instances and
/// induced problems produce them routinely.
class Problem {
public:
    Problem() = default;
    /// Validates names (unique), domains (unique values), scopes (in range,
    /// duplicate-free) and extensional tuples (in-domain indices).
    Problem(std::vector<std::string> names, std::vector<std::vector<Value>> domains,
            std::vector<Constraint> constraints);

    [[nodiscard]] int num_variables() const { return static_cast<int>(names_.size()); }
    [[nodiscard]] int num_constraints() const { return static_cast<int>(constraints_.size()); }
    [[nodiscard]] int max_domain_size() const;
    [[nodiscard]] int max_arity() const;

    [[nodiscard]] const std::string& name(VarId v) const { return names_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] std::optional<VarId> find(std::string_view name) const;

    [[nodiscard]] const std::vector<Value>& domain(VarId v) const
    {
        return domains_[static_cast<std::size_t>(v)];
    }
    [[nodiscard]] int domain_size(VarId v) const { return static_cast<int>(domain(v).size()); }
    [[nodiscard]] const std::vector<std::vector<Value>>& domains() const { return domains_; }
    [[nodiscard]] std::optional<ValueIndex> index_of(VarId v, const Value& value) const;

    [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
    [[nodiscard]] const Constraint& constraint(int c) const
    {
        return constraints_[static_cast<std::size_t>(c)];
    }
    /// Indices of the constraints whose scope contains `v`, in constraint order.
    [[nodiscard]] const std::vector<int>& constraints_of(VarId v) const
    {
        return incidence_[static_cast<std::size_t>(v)];
    }
    /// Static degree: number of constraints constraining `v`.
    [[nodiscard]] int degree(VarId v) const { return static_cast<int>(constraints_of(v).size()); }

    /// True when `values` (aligned with the scope of `c`) satisfies `c`.
    [[nodiscard]] bool allows(const Constraint& c, std::span<const ValueIndex> values) const;

    [[nodiscard]] bool all_extensional() const;
    /// Extensional equivalent of `c` over the full domains.
    [[nodiscard]] Constraint materialize(const Constraint& c) const;
    /// Copy of this problem with every constraint extensional.
    [[nodiscard]] Problem materialized() const;

    /// Some domain is empty or some extensional relation has no tuple.
    [[nodiscard]] bool is_empty() const;

private:
    [[nodiscard]] char letter(VarId v, ValueIndex a, int pos) const;

    std::vector<std::string> names_;
    std::vector<std::vector<Value>> domains_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<int>> incidence_;
    std::unordered_map<std::string, VarId> by_name_;
};

/// "{x1<-g, x2<-b}" style rendering for diagnostics.
std::string describe(const Problem& p, const PartialSolution& t);

} // namespace csplab
