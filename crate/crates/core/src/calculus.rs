//! The context calculus: `isSubContext`, `difference`, `intersection`,
//! `projection`, `hiding`, `override` and `union`, on simple contexts and on
//! context sets.
//!
//! Set-level operators are lifted pairwise (or member-wise for projection and
//! hiding). Empty simple contexts produced along the way are dropped and the
//! result is a set, so duplicates never survive.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::context::{ContextKind, ContextSet, ContextValue, DimensionSet, MicroContext, NonSimpleContext, SimpleContext};
use crate::tagset::{Ident, TagValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    IsSubContext,
    Difference,
    Intersection,
    Projection,
    Hiding,
    Override,
    Union,
}

impl Operator {
    pub const ALL: [Operator; 7] = [
        Operator::IsSubContext,
        Operator::Difference,
        Operator::Intersection,
        Operator::Projection,
        Operator::Hiding,
        Operator::Override,
        Operator::Union,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Operator::IsSubContext => "isSubContext",
            Operator::Difference => "difference",
            Operator::Intersection => "intersection",
            Operator::Projection => "projection",
            Operator::Hiding => "hiding",
            Operator::Override => "override",
            Operator::Union => "union",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Operator> {
        Operator::ALL.into_iter().find(|op| op.keyword() == s)
    }

    /// Projection and hiding take a dimension set on the right.
    pub fn takes_dimension_set(self) -> bool {
        matches!(self, Operator::Projection | Operator::Hiding)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("`{op}` needs two simple contexts or two context sets, got a {left} and a {right}")]
    OperandKindMismatch {
        op: Operator,
        left: ContextKind,
        right: ContextKind,
    },
}

/// Result of `union` on two simple contexts: a simple context when no
/// dimension conflicts, otherwise the translated context set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnionResult {
    Simple(SimpleContext),
    Set(ContextSet),
}

impl From<UnionResult> for ContextValue {
    fn from(r: UnionResult) -> Self {
        match r {
            UnionResult::Simple(c) => ContextValue::Simple(c),
            UnionResult::Set(s) => ContextValue::Set(s),
        }
    }
}

/// Operators on simple contexts.
pub mod simple {
    use super::*;

    pub fn is_sub_context(a: &SimpleContext, b: &SimpleContext) -> bool {
        a.micros().all(|m| b.contains_micro(&m))
    }

    pub fn difference(a: &SimpleContext, b: &SimpleContext) -> SimpleContext {
        a.filter_dims(|d| !b.tag(d.as_str()).is_some_and(|t| a.tag(d.as_str()) == Some(t)))
    }

    pub fn intersection(a: &SimpleContext, b: &SimpleContext) -> SimpleContext {
        difference(a, &difference(a, b))
    }

    pub fn projection(c: &SimpleContext, dims: &DimensionSet) -> SimpleContext {
        c.filter_dims(|d| dims.contains(d.as_str()))
    }

    pub fn hiding(c: &SimpleContext, dims: &DimensionSet) -> SimpleContext {
        difference(c, &projection(c, dims))
    }

    /// Pairs of `a` on dimensions absent from `b`, plus every pair of `b`.
    pub fn override_with(a: &SimpleContext, b: &SimpleContext) -> SimpleContext {
        let mut result = a.filter_dims(|d| b.tag(d.as_str()).is_none());
        for m in b.micros() {
            result
                .try_insert(m)
                .expect("dimensions of b were removed from a");
        }
        result
    }

    /// True when some dimension carries different tags in `a` and `b`.
    pub fn conflicts(a: &SimpleContext, b: &SimpleContext) -> bool {
        a.micros()
            .any(|m| b.tag(m.dimension.as_str()).is_some_and(|t| *t != m.tag))
    }

    /// Union of two contexts known not to conflict.
    pub(crate) fn merge(a: &SimpleContext, b: &SimpleContext) -> SimpleContext {
        let mut result = a.clone();
        for m in b.micros() {
            result.try_insert(m).expect("operands do not conflict");
        }
        result
    }

    pub fn union(a: &SimpleContext, b: &SimpleContext) -> UnionResult {
        if conflicts(a, b) {
            let all = NonSimpleContext::try_new(a.micros().chain(b.micros()))
                .expect("a conflict implies a repeated dimension");
            UnionResult::Set(translate_to_context_set(&all))
        } else {
            UnionResult::Simple(merge(a, b))
        }
    }

    pub fn translate_to_context_set(n: &NonSimpleContext) -> ContextSet {
        translate_micros(n.micros().cloned())
    }

    /// Every simple context that picks exactly one tag per dimension of the
    /// input. For an input without repeated dimensions this is a singleton.
    pub fn translate_micros<I>(micros: I) -> ContextSet
    where
        I: IntoIterator<Item = MicroContext>,
    {
        let mut choices: BTreeMap<Ident, Vec<TagValue>> = BTreeMap::new();
        for m in micros {
            let tags = choices.entry(m.dimension).or_default();
            if !tags.contains(&m.tag) {
                tags.push(m.tag);
            }
        }
        let choices: Vec<(Ident, Vec<TagValue>)> = choices.into_iter().collect();
        let mut out = ContextSet::new();
        build_combinations(&choices, &mut Vec::with_capacity(choices.len()), &mut out);
        out
    }

    fn build_combinations(
        choices: &[(Ident, Vec<TagValue>)],
        partial: &mut Vec<MicroContext>,
        out: &mut ContextSet,
    ) {
        let Some((dim, tags)) = choices.get(partial.len()) else {
            let ctx = SimpleContext::from_micros(partial.iter().cloned())
                .expect("one tag per dimension");
            out.insert(ctx);
            return;
        };
        for tag in tags {
            partial.push(MicroContext::new(dim.clone(), tag.clone()));
            build_combinations(choices, partial, out);
            partial.pop();
        }
    }
}

/// Operators on context sets.
pub mod set {
    use super::*;

    pub fn is_sub_context(a: &ContextSet, b: &ContextSet) -> bool {
        a.iter().all(|c| b.contains(c))
    }

    fn pairwise(
        a: &ContextSet,
        b: &ContextSet,
        op: impl Fn(&SimpleContext, &SimpleContext) -> SimpleContext,
    ) -> ContextSet {
        a.iter()
            .flat_map(|c1| b.iter().map(|c2| (c1, c2)).collect::<Vec<_>>())
            .map(|(c1, c2)| op(c1, c2))
            .filter(|c| !c.is_empty())
            .collect()
    }

    fn memberwise(s: &ContextSet, op: impl Fn(&SimpleContext) -> SimpleContext) -> ContextSet {
        s.iter().map(op).filter(|c| !c.is_empty()).collect()
    }

    pub fn difference(a: &ContextSet, b: &ContextSet) -> ContextSet {
        pairwise(a, b, simple::difference)
    }

    pub fn intersection(a: &ContextSet, b: &ContextSet) -> ContextSet {
        pairwise(a, b, simple::intersection)
    }

    pub fn override_with(a: &ContextSet, b: &ContextSet) -> ContextSet {
        pairwise(a, b, simple::override_with)
    }

    pub fn projection(s: &ContextSet, dims: &DimensionSet) -> ContextSet {
        memberwise(s, |c| simple::projection(c, dims))
    }

    pub fn hiding(s: &ContextSet, dims: &DimensionSet) -> ContextSet {
        memberwise(s, |c| simple::hiding(c, dims))
    }

    /// With `D3` the dimensions used on both sides, the result holds
    /// `c1 ∪ (c2 hiding D3)` and `c2 ∪ (c1 hiding D3)` for every pair. The
    /// hidden side only keeps dimensions the other set never uses, so each
    /// inner union is conflict-free and no set of sets can arise. Unlike the
    /// other pairwise operators, empty results are kept.
    pub fn union(a: &ContextSet, b: &ContextSet) -> ContextSet {
        let common = a.dims().intersection(&b.dims());
        let mut out = ContextSet::new();
        for c1 in a.iter() {
            for c2 in b.iter() {
                out.insert(simple::merge(c1, &simple::hiding(c2, &common)));
                out.insert(simple::merge(c2, &simple::hiding(c1, &common)));
            }
        }
        out
    }
}

fn mismatch(op: Operator, a: &ContextValue, b: &ContextValue) -> CalculusError {
    CalculusError::OperandKindMismatch {
        op,
        left: a.kind(),
        right: b.kind(),
    }
}

pub fn is_sub_context(a: &ContextValue, b: &ContextValue) -> Result<bool, CalculusError> {
    match (a, b) {
        (ContextValue::Simple(x), ContextValue::Simple(y)) => Ok(simple::is_sub_context(x, y)),
        (ContextValue::Set(x), ContextValue::Set(y)) => Ok(set::is_sub_context(x, y)),
        _ => Err(mismatch(Operator::IsSubContext, a, b)),
    }
}

fn same_kind(
    op: Operator,
    a: &ContextValue,
    b: &ContextValue,
    on_simple: fn(&SimpleContext, &SimpleContext) -> SimpleContext,
    on_set: fn(&ContextSet, &ContextSet) -> ContextSet,
) -> Result<ContextValue, CalculusError> {
    match (a, b) {
        (ContextValue::Simple(x), ContextValue::Simple(y)) => Ok(on_simple(x, y).into()),
        (ContextValue::Set(x), ContextValue::Set(y)) => Ok(on_set(x, y).into()),
        _ => Err(mismatch(op, a, b)),
    }
}

pub fn difference(a: &ContextValue, b: &ContextValue) -> Result<ContextValue, CalculusError> {
    same_kind(Operator::Difference, a, b, simple::difference, set::difference)
}

pub fn intersection(a: &ContextValue, b: &ContextValue) -> Result<ContextValue, CalculusError> {
    same_kind(Operator::Intersection, a, b, simple::intersection, set::intersection)
}

pub fn override_with(a: &ContextValue, b: &ContextValue) -> Result<ContextValue, CalculusError> {
    same_kind(Operator::Override, a, b, simple::override_with, set::override_with)
}

pub fn union(a: &ContextValue, b: &ContextValue) -> Result<ContextValue, CalculusError> {
    match (a, b) {
        (ContextValue::Simple(x), ContextValue::Simple(y)) => Ok(simple::union(x, y).into()),
        (ContextValue::Set(x), ContextValue::Set(y)) => Ok(set::union(x, y).into()),
        _ => Err(mismatch(Operator::Union, a, b)),
    }
}

pub fn projection(c: &ContextValue, dims: &DimensionSet) -> ContextValue {
    match c {
        ContextValue::Simple(x) => simple::projection(x, dims).into(),
        ContextValue::Set(x) => set::projection(x, dims).into(),
    }
}

pub fn hiding(c: &ContextValue, dims: &DimensionSet) -> ContextValue {
    match c {
        ContextValue::Simple(x) => simple::hiding(x, dims).into(),
        ContextValue::Set(x) => set::hiding(x, dims).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(s: &str) -> ContextValue {
        s.parse().unwrap()
    }

    fn ds(names: &[&str]) -> DimensionSet {
        names.iter().map(|n| Ident::new(*n).unwrap()).collect()
    }

    fn check(actual: Result<ContextValue, CalculusError>, expected: &str) {
        assert_eq!(actual.unwrap(), cv(expected));
    }

    #[test]
    fn is_sub_context_examples() {
        assert!(is_sub_context(&cv("[d:1,e:2]"), &cv("[d:1,e:2,f:3]")).unwrap());
        assert!(is_sub_context(&cv("[d:1,e:2]"), &cv("[d:1,e:2]")).unwrap());
        assert!(is_sub_context(&cv("[]"), &cv("[d:1,e:2]")).unwrap());
        assert!(is_sub_context(&cv("{[d:1,e:2],[f:3]}"), &cv("{[d:1,e:2],[f:3],[g:4]}")).unwrap());
        assert!(!is_sub_context(&cv("[d:1,e:2]"), &cv("[d:1,f:3]")).unwrap());
        assert!(!is_sub_context(&cv("[d:1]"), &cv("[d:2]")).unwrap());
        assert!(is_sub_context(&cv("{}"), &cv("{[d:1]}")).unwrap());
        assert_eq!(
            is_sub_context(&cv("[d:1]"), &cv("{[d:1]}")),
            Err(CalculusError::OperandKindMismatch {
                op: Operator::IsSubContext,
                left: ContextKind::Simple,
                right: ContextKind::Set
            })
        );
    }

    #[test]
    fn difference_examples() {
        check(difference(&cv("[d:1,e:2]"), &cv("[d:1,f:3]")), "[e:2]");
        check(difference(&cv("[d:1,e:2]"), &cv("[d:1,e:2,f:3]")), "[]");
        check(difference(&cv("[d:1,e:2]"), &cv("[g:4,h:5]")), "[d:1,e:2]");
        check(difference(&cv("[d:1,e:2]"), &cv("[d:2]")), "[d:1,e:2]");
        check(
            difference(&cv("{[d:1,e:2,f:3],[g:4,h:5]}"), &cv("{[g:4,h:5],[e:2]}")),
            "{[d:1,e:2,f:3],[d:1,f:3],[g:4,h:5]}",
        );
        check(difference(&cv("{[a:1]}"), &cv("{[a:1]}")), "{}");
    }

    #[test]
    fn intersection_examples() {
        check(intersection(&cv("[d:1,e:2]"), &cv("[d:1]")), "[d:1]");
        check(intersection(&cv("[d:1,e:2]"), &cv("[g:4,h:5]")), "[]");
        check(
            intersection(&cv("{[d:1,e:2,f:3],[g:4,h:5]}"), &cv("{[g:4,h:5],[e:2]}")),
            "{[e:2],[g:4,h:5]}",
        );
    }

    #[test]
    fn projection_and_hiding_examples() {
        assert_eq!(projection(&cv("[d:1,e:2,f:3]"), &ds(&["d", "f"])), cv("[d:1,f:3]"));
        assert_eq!(
            projection(&cv("{[d:1,e:2,f:3],[g:4,h:5],[f:4]}"), &ds(&["e", "f", "h"])),
            cv("{[e:2,f:3],[h:5],[f:4]}")
        );
        assert_eq!(projection(&cv("[d:1]"), &ds(&[])), cv("[]"));
        assert_eq!(hiding(&cv("[d:1,e:2,f:3]"), &ds(&["d", "e"])), cv("[f:3]"));
        assert_eq!(hiding(&cv("[d:1,e:2,f:3]"), &ds(&["g", "h"])), cv("[d:1,e:2,f:3]"));
        assert_eq!(hiding(&cv("[d:1,e:2,f:3]"), &ds(&["d", "e", "f"])), cv("[]"));
        assert_eq!(
            hiding(&cv("{[d:1,e:2,f:3],[g:4,h:5],[e:3]}"), &ds(&["d", "e"])),
            cv("{[f:3],[g:4,h:5]}")
        );
    }

    #[test]
    fn override_examples() {
        check(override_with(&cv("[d:1,e:2,f:3]"), &cv("[e:3]")), "[d:1,e:3,f:3]");
        check(override_with(&cv("[d:1,e:2,f:3]"), &cv("[e:3,g:4]")), "[d:1,e:3,f:3,g:4]");
        check(
            override_with(&cv("{[d:1,e:2],[f:3],[g:4,h:5]}"), &cv("{[d:3],[h:1]}")),
            "{[d:3,e:2],[d:1,e:2,h:1],[f:3,d:3],[f:3,h:1],[g:4,h:5,d:3],[g:4,h:1]}",
        );
        check(override_with(&cv("[d:1]"), &cv("[]")), "[d:1]");
    }

    #[test]
    fn union_examples() {
        check(union(&cv("[d:1,e:2]"), &cv("[f:3,g:4]")), "[d:1,e:2,f:3,g:4]");
        check(union(&cv("[d:1,e:2]"), &cv("[d:3,f:4]")), "{[d:1,e:2,f:4],[d:3,e:2,f:4]}");
        check(
            union(&cv("{[d:1,e:2],[g:4,h:5]}"), &cv("{[g:4,h:5],[e:3]}")),
            "{[d:1,e:2],[g:4,h:5],[g:4,h:5,d:1],[e:3,d:1],[e:3]}",
        );
        check(union(&cv("[]"), &cv("[]")), "[]");
        check(union(&cv("[d:1,e:1]"), &cv("[e:1]")), "[d:1,e:1]");
        assert!(union(&cv("{[d:1]}"), &cv("[d:1]")).is_err());
        check(union(&cv("{[],[d:1]}"), &cv("{[d:2]}")), "{[],[d:1],[d:2]}");
        check(union(&cv("{[e:2]}"), &cv("{}")), "{}");
    }

    #[test]
    fn translation() {
        let micros = |s: &[(&str, i64)]| {
            s.iter()
                .map(|(d, t)| MicroContext::new(Ident::new(*d).unwrap(), TagValue::Int(*t)))
                .collect::<Vec<_>>()
        };
        let n = NonSimpleContext::try_new(micros(&[("d", 1), ("d", 3), ("f", 4)])).unwrap();
        assert_eq!(
            ContextValue::Set(simple::translate_to_context_set(&n)),
            cv("{[d:1,f:4],[d:3,f:4]}")
        );
        assert_eq!(
            ContextValue::Set(simple::translate_micros(micros(&[("d", 1)]))),
            cv("{[d:1]}")
        );
        assert_eq!(
            ContextValue::Set(simple::translate_micros(micros(&[("d", 1), ("d", 2), ("e", 1), ("e", 2)]))),
            cv("{[d:1,e:1],[d:1,e:2],[d:2,e:1],[d:2,e:2]}")
        );
    }

    #[test]
    fn operator_keywords() {
        for op in Operator::ALL {
            assert_eq!(Operator::from_keyword(op.keyword()), Some(op));
        }
        assert_eq!(Operator::from_keyword("Union"), None);
    }
}
