//! Tag sets: the typed universe of valid tags attached to a dimension.
//!
//! Four kinds exist, classified along two axes (ordered/unordered and
//! finite/infinite):
//!
//! * an explicitly enumerated, ordered sequence of tags,
//! * an integer range `{l to u step p}` whose bounds may be `INF-`/`INF+`,
//! * an explicitly enumerated, unordered set of tags,
//! * a type predicate admitting every tag of one value kind.
//!
//! All values here are immutable once built; every operation is pure.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TagSetError {
    #[error("step must not be zero")]
    StepZero,
    #[error("a negative step cannot be combined with an infinite bound")]
    NegativeStepWithInfiniteBound,
    #[error("invalid bounds: the lower bound cannot be INF+ and the upper bound cannot be INF-")]
    InvalidBound,
    #[error("{{INF- to INF+}} only admits step 1")]
    UnanchoredStep,
    #[error("duplicate tag `{0}` in enumerated tag set")]
    DuplicateTag(TagValue),
    #[error("enumerated tag set mixes integer and symbol tags")]
    MixedKinds,
    #[error("tag set is not ordered")]
    NotOrdered,
    #[error("tag set is not finite")]
    NotFinite,
    #[error("tag `{0}` is not a member of the tag set")]
    NotMember(TagValue),
    #[error("tag `{0}` has no neighbour in that direction")]
    OutOfRange(TagValue),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a valid identifier")]
pub struct InvalidIdent(pub String);

/// Words the language reserves; none of them is a valid [`Ident`], so every
/// identifier can be written back as source text.
pub const RESERVED_WORDS: [&str; 14] = [
    "dimension",
    "ordered",
    "unordered",
    "finite",
    "infinite",
    "to",
    "step",
    "isSubContext",
    "difference",
    "intersection",
    "projection",
    "hiding",
    "override",
    "union",
];

/// An identifier: an ASCII letter followed by letters, digits or underscores,
/// other than one of the [`RESERVED_WORDS`].
///
/// Used both for dimension names and for symbol tags.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(String);

impl Ident {
    pub fn new(s: impl Into<String>) -> Result<Self, InvalidIdent> {
        let s = s.into();
        if Self::is_valid(&s) {
            Ok(Ident(s))
        } else {
            Err(InvalidIdent(s))
        }
    }

    pub fn is_valid(s: &str) -> bool {
        let mut chars = s.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !RESERVED_WORDS.contains(&s)
            }
            _ => false,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Ident {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Ident {
    type Err = InvalidIdent;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ident::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueKind {
    Integer,
    Symbol,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueKind::Integer => f.write_str("int"),
            ValueKind::Symbol => f.write_str("string"),
        }
    }
}

/// A single tag. Integer `3` and symbol `x3` never compare equal; there is no
/// coercion between kinds.
///
/// The derived order puts every integer before every symbol; within a kind it
/// is numeric or lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TagValue {
    Int(i64),
    Symbol(Ident),
}

impl TagValue {
    pub fn kind(&self) -> ValueKind {
        match self {
            TagValue::Int(_) => ValueKind::Integer,
            TagValue::Symbol(_) => ValueKind::Symbol,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            TagValue::Int(n) => Some(*n),
            TagValue::Symbol(_) => None,
        }
    }
}

impl From<i64> for TagValue {
    fn from(n: i64) -> Self {
        TagValue::Int(n)
    }
}

impl From<Ident> for TagValue {
    fn from(id: Ident) -> Self {
        TagValue::Symbol(id)
    }
}

impl FromStr for TagValue {
    type Err = InvalidIdent;

    /// Integers (with an optional leading `-`) become `Int`, anything else must
    /// be an identifier.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<i64>() {
            Ok(n) => Ok(TagValue::Int(n)),
            Err(_) => Ident::new(s).map(TagValue::Symbol),
        }
    }
}

impl fmt::Display for TagValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TagValue::Int(n) => write!(f, "{n}"),
            TagValue::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// A range bound. The variant order gives `NegInf < Finite(_) < PosInf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Bound {
    pub fn finite(self) -> Option<i64> {
        match self {
            Bound::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Bound::Finite(_))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("INF-"),
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::PosInf => f.write_str("INF+"),
        }
    }
}

/// Arithmetic progression `{lower to upper step step}`.
///
/// With a positive step the members are `lower <= e <= upper` congruent to the
/// anchor modulo the step, where the anchor is `lower` if finite and `upper`
/// otherwise. With a negative step both bounds are finite, the walk starts at
/// `lower` and descends towards `upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntRange {
    lower: Bound,
    upper: Bound,
    step: i64,
}

impl IntRange {
    pub fn new(lower: Bound, upper: Bound, step: i64) -> Result<Self, TagSetError> {
        if step == 0 {
            return Err(TagSetError::StepZero);
        }
        if lower == Bound::PosInf || upper == Bound::NegInf {
            return Err(TagSetError::InvalidBound);
        }
        if step < 0 && !(lower.is_finite() && upper.is_finite()) {
            return Err(TagSetError::NegativeStepWithInfiniteBound);
        }
        if lower == Bound::NegInf && upper == Bound::PosInf && step != 1 {
            return Err(TagSetError::UnanchoredStep);
        }
        Ok(IntRange { lower, upper, step })
    }

    pub fn lower(&self) -> Bound {
        self.lower
    }

    pub fn upper(&self) -> Bound {
        self.upper
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub fn is_finite(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    fn anchor(&self) -> Option<i64> {
        self.lower.finite().or(self.upper.finite())
    }

    fn in_bounds(&self, t: i64) -> bool {
        let t = Bound::Finite(t);
        if self.step > 0 {
            self.lower <= t && t <= self.upper
        } else {
            self.upper <= t && t <= self.lower
        }
    }

    fn congruent(&self, t: i64) -> bool {
        match self.anchor() {
            // only {INF- to INF+ step 1} has no anchor
            None => true,
            Some(a) => (i128::from(t) - i128::from(a)).rem_euclid(i128::from(self.step).abs()) == 0,
        }
    }

    pub fn contains(&self, t: i64) -> bool {
        self.in_bounds(t) && self.congruent(t)
    }

    /// No member at all, e.g. `{10 to 1}`.
    pub fn is_empty(&self) -> bool {
        match (self.lower, self.upper) {
            (Bound::Finite(l), Bound::Finite(u)) => {
                if self.step > 0 {
                    l > u
                } else {
                    l < u
                }
            }
            _ => false,
        }
    }

    /// First member in traversal order, if the range has one.
    pub fn first(&self) -> Option<i64> {
        if self.is_empty() {
            return None;
        }
        match (self.lower, self.upper) {
            (Bound::Finite(l), _) => Some(l),
            _ => None,
        }
    }

    /// Last member in traversal order, if the range has one.
    pub fn last(&self) -> Option<i64> {
        if self.is_empty() {
            return None;
        }
        let step = i128::from(self.step).abs();
        match (self.lower, self.upper) {
            (Bound::Finite(l), Bound::Finite(u)) => {
                let (l, u) = (i128::from(l), i128::from(u));
                let last = if self.step > 0 {
                    u - (u - l).rem_euclid(step)
                } else {
                    u + (l - u).rem_euclid(step)
                };
                i64::try_from(last).ok()
            }
            (Bound::NegInf, Bound::Finite(u)) => Some(u),
            _ => None,
        }
    }

    pub fn next(&self, t: i64) -> Option<i64> {
        t.checked_add(self.step).filter(|&n| self.contains(n))
    }

    pub fn previous(&self, t: i64) -> Option<i64> {
        t.checked_sub(self.step).filter(|&n| self.contains(n))
    }

    /// Number of members of a finite range.
    pub fn len(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        match (self.first(), self.last()) {
            (Some(first), Some(last)) => {
                let span = (i128::from(last) - i128::from(first)).unsigned_abs();
                Some(span / u128::from(self.step.unsigned_abs()) + 1)
            }
            _ => Some(0),
        }
    }

    /// Walks the members in traversal order. Infinite ranges without a first
    /// element (`{INF- to u}`) yield nothing.
    pub fn iter(&self) -> RangeMembers {
        RangeMembers {
            range: *self,
            cursor: self.first(),
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} to {}", self.lower, self.upper)?;
        if self.step != 1 {
            write!(f, " step {}", self.step)?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone)]
pub struct RangeMembers {
    range: IntRange,
    cursor: Option<i64>,
}

impl Iterator for RangeMembers {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        let current = self.cursor?;
        self.cursor = self.range.next(current);
        Some(current)
    }
}

fn check_enumeration(tags: &[TagValue]) -> Result<(), TagSetError> {
    if let Some(first) = tags.first() {
        if tags.iter().any(|t| t.kind() != first.kind()) {
            return Err(TagSetError::MixedKinds);
        }
    }
    let mut seen = BTreeSet::new();
    for t in tags {
        if !seen.insert(t) {
            return Err(TagSetError::DuplicateTag(t.clone()));
        }
    }
    Ok(())
}

/// Tags in declaration order; that order is the set's order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedTags(Vec<TagValue>);

impl OrderedTags {
    pub fn tags(&self) -> &[TagValue] {
        &self.0
    }

    fn position(&self, t: &TagValue) -> Option<usize> {
        self.0.iter().position(|x| x == t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnorderedTags(BTreeSet<TagValue>);

impl UnorderedTags {
    pub fn tags(&self) -> &BTreeSet<TagValue> {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TagSetProperties {
    pub ordered: bool,
    pub finite: bool,
}

impl fmt::Display for TagSetProperties {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = if self.ordered { "ordered" } else { "unordered" };
        let size = if self.finite { "finite" } else { "infinite" };
        write!(f, "{order} {size}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TagSet {
    EnumeratedOrdered(OrderedTags),
    IntegerRange(IntRange),
    EnumeratedUnordered(UnorderedTags),
    TypePredicate(ValueKind),
}

impl TagSet {
    pub fn ordered_enumeration(tags: Vec<TagValue>) -> Result<Self, TagSetError> {
        check_enumeration(&tags)?;
        Ok(TagSet::EnumeratedOrdered(OrderedTags(tags)))
    }

    pub fn unordered_enumeration(tags: Vec<TagValue>) -> Result<Self, TagSetError> {
        check_enumeration(&tags)?;
        Ok(TagSet::EnumeratedUnordered(UnorderedTags(tags.into_iter().collect())))
    }

    pub fn range(lower: Bound, upper: Bound, step: i64) -> Result<Self, TagSetError> {
        IntRange::new(lower, upper, step).map(TagSet::IntegerRange)
    }

    pub fn of_kind(kind: ValueKind) -> Self {
        TagSet::TypePredicate(kind)
    }

    pub fn properties(&self) -> TagSetProperties {
        match self {
            TagSet::EnumeratedOrdered(_) => TagSetProperties { ordered: true, finite: true },
            TagSet::IntegerRange(r) => TagSetProperties { ordered: true, finite: r.is_finite() },
            TagSet::EnumeratedUnordered(_) => TagSetProperties { ordered: false, finite: true },
            TagSet::TypePredicate(_) => TagSetProperties { ordered: false, finite: false },
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            TagSet::EnumeratedOrdered(t) => t.0.is_empty(),
            TagSet::IntegerRange(r) => r.is_empty(),
            TagSet::EnumeratedUnordered(t) => t.0.is_empty(),
            TagSet::TypePredicate(_) => false,
        }
    }

    /// Number of members, or `None` for an infinite set.
    pub fn len(&self) -> Option<u128> {
        match self {
            TagSet::EnumeratedOrdered(t) => Some(t.0.len() as u128),
            TagSet::IntegerRange(r) => r.len(),
            TagSet::EnumeratedUnordered(t) => Some(t.0.len() as u128),
            TagSet::TypePredicate(_) => None,
        }
    }

    /// Set inclusion. A tag of the wrong kind is simply not a member.
    pub fn contains(&self, t: &TagValue) -> bool {
        match self {
            TagSet::EnumeratedOrdered(tags) => tags.0.contains(t),
            TagSet::IntegerRange(r) => t.as_int().is_some_and(|n| r.contains(n)),
            TagSet::EnumeratedUnordered(tags) => tags.0.contains(t),
            TagSet::TypePredicate(kind) => t.kind() == *kind,
        }
    }

    fn require_ordered_member(&self, t: &TagValue) -> Result<(), TagSetError> {
        if !self.properties().ordered {
            return Err(TagSetError::NotOrdered);
        }
        if !self.contains(t) {
            return Err(TagSetError::NotMember(t.clone()));
        }
        Ok(())
    }

    /// Immediate successor of `t` in the set's order.
    pub fn next(&self, t: &TagValue) -> Result<TagValue, TagSetError> {
        self.require_ordered_member(t)?;
        let out_of_range = || TagSetError::OutOfRange(t.clone());
        match self {
            TagSet::EnumeratedOrdered(tags) => {
                let i = tags.position(t).ok_or_else(out_of_range)?;
                tags.0.get(i + 1).cloned().ok_or_else(out_of_range)
            }
            TagSet::IntegerRange(r) => t
                .as_int()
                .and_then(|n| r.next(n))
                .map(TagValue::Int)
                .ok_or_else(out_of_range),
            _ => unreachable!("unordered sets rejected above"),
        }
    }

    /// Immediate predecessor of `t` in the set's order.
    pub fn previous(&self, t: &TagValue) -> Result<TagValue, TagSetError> {
        self.require_ordered_member(t)?;
        let out_of_range = || TagSetError::OutOfRange(t.clone());
        match self {
            TagSet::EnumeratedOrdered(tags) => {
                let i = tags.position(t).ok_or_else(out_of_range)?;
                i.checked_sub(1)
                    .and_then(|j| tags.0.get(j))
                    .cloned()
                    .ok_or_else(out_of_range)
            }
            TagSet::IntegerRange(r) => t
                .as_int()
                .and_then(|n| r.previous(n))
                .map(TagValue::Int)
                .ok_or_else(out_of_range),
            _ => unreachable!("unordered sets rejected above"),
        }
    }

    /// All members of a finite set: declaration order, range-walk order, or
    /// sorted order for unordered enumerations.
    pub fn enumerate(&self) -> Result<Vec<TagValue>, TagSetError> {
        match self {
            TagSet::EnumeratedOrdered(tags) => Ok(tags.0.clone()),
            TagSet::IntegerRange(r) if r.is_finite() => Ok(r.iter().map(TagValue::Int).collect()),
            TagSet::EnumeratedUnordered(tags) => Ok(tags.0.iter().cloned().collect()),
            _ => Err(TagSetError::NotFinite),
        }
    }
}

/// The tag set used when a dimension is declared without one: `{0 to INF+}`.
pub fn default_tag_set() -> TagSet {
    TagSet::IntegerRange(IntRange {
        lower: Bound::Finite(0),
        upper: Bound::PosInf,
        step: 1,
    })
}

fn write_list<'a>(
    f: &mut fmt::Formatter<'_>,
    tags: impl Iterator<Item = &'a TagValue>,
) -> fmt::Result {
    f.write_str("{")?;
    for (i, t) in tags.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{t}")?;
    }
    f.write_str("}")
}

/// Renders the braces part of a declaration, e.g. `{2 to 100 step 2}`.
impl fmt::Display for TagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TagSet::EnumeratedOrdered(tags) => write_list(f, tags.0.iter()),
            TagSet::IntegerRange(r) => write!(f, "{r}"),
            TagSet::EnumeratedUnordered(tags) => write_list(f, tags.0.iter()),
            TagSet::TypePredicate(kind) => write!(f, "{{{kind}}}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> TagValue {
        s.parse().unwrap()
    }

    fn range(l: Bound, u: Bound, p: i64) -> TagSet {
        TagSet::range(l, u, p).unwrap()
    }

    fn fin(l: i64, u: i64, p: i64) -> TagSet {
        range(Bound::Finite(l), Bound::Finite(u), p)
    }

    fn zodiac() -> TagSet {
        TagSet::ordered_enumeration(
            ["rat", "bull", "tiger", "rabbit"].iter().map(|s| sym(s)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn enumerated_membership() {
        assert!(zodiac().contains(&sym("tiger")));
        assert!(!zodiac().contains(&sym("cat")));
        assert!(!zodiac().contains(&TagValue::Int(1)));
    }

    #[test]
    fn range_membership_examples() {
        assert!(!fin(2, 100, 2).contains(&3.into()));
        assert!(fin(2, 100, 2).contains(&100.into()));
        assert!(range(Bound::Finite(2), Bound::PosInf, 3).contains(&101.into()));
        assert!(!range(Bound::Finite(0), Bound::PosInf, 1).contains(&(-5).into()));
        // {INF- to u step p} anchors at u
        let down = range(Bound::NegInf, Bound::Finite(100), 3);
        assert!(down.contains(&97.into()));
        assert!(down.contains(&(-2).into()));
        assert!(!down.contains(&98.into()));
        let all = range(Bound::NegInf, Bound::PosInf, 1);
        assert!(all.contains(&i64::MIN.into()) && all.contains(&i64::MAX.into()));
    }

    #[test]
    fn extremes_do_not_alias_infinity() {
        let r = range(Bound::Finite(i64::MAX - 4), Bound::PosInf, 2);
        assert!(r.contains(&(i64::MAX - 2).into()));
        assert!(!r.contains(&(i64::MAX - 1).into()));
        assert!(r.contains(&i64::MAX.into()));
        assert_eq!(r.next(&i64::MAX.into()), Err(TagSetError::OutOfRange(i64::MAX.into())));
    }

    #[test]
    fn negative_step() {
        let r = fin(10, 1, -3);
        assert_eq!(r.enumerate().unwrap(), vec![10.into(), 7.into(), 4.into(), 1.into()]);
        assert_eq!(r.next(&7.into()), Ok(4.into()));
        assert_eq!(r.previous(&7.into()), Ok(10.into()));
        assert_eq!(r.next(&1.into()), Err(TagSetError::OutOfRange(1.into())));
    }

    #[test]
    fn next_and_previous() {
        assert_eq!(zodiac().next(&sym("bull")), Ok(sym("tiger")));
        assert_eq!(zodiac().previous(&sym("tiger")), Ok(sym("bull")));
        assert_eq!(zodiac().next(&sym("rabbit")), Err(TagSetError::OutOfRange(sym("rabbit"))));
        assert_eq!(fin(2, 100, 2).next(&100.into()), Err(TagSetError::OutOfRange(100.into())));
        assert_eq!(range(Bound::NegInf, Bound::Finite(100), 1).next(&7.into()), Ok(8.into()));
        assert_eq!(fin(1, 100, 1).previous(&1.into()), Err(TagSetError::OutOfRange(1.into())));
        assert_eq!(fin(2, 100, 2).previous(&10.into()), Ok(8.into()));
        assert_eq!(fin(2, 100, 2).next(&3.into()), Err(TagSetError::NotMember(3.into())));
        let colors = TagSet::unordered_enumeration(vec![sym("red")]).unwrap();
        assert_eq!(colors.next(&sym("red")), Err(TagSetError::NotOrdered));
        assert_eq!(
            TagSet::of_kind(ValueKind::Integer).previous(&1.into()),
            Err(TagSetError::NotOrdered)
        );
    }

    #[test]
    fn enumerate_finite_sets() {
        assert_eq!(fin(2, 8, 3).enumerate().unwrap(), vec![2.into(), 5.into(), 8.into()]);
        let colors = TagSet::unordered_enumeration(vec![sym("red"), sym("yellow"), sym("blue")]).unwrap();
        assert_eq!(colors.enumerate().unwrap(), vec![sym("blue"), sym("red"), sym("yellow")]);
        assert_eq!(default_tag_set().enumerate(), Err(TagSetError::NotFinite));
        assert_eq!(TagSet::of_kind(ValueKind::Symbol).enumerate(), Err(TagSetError::NotFinite));
        assert_eq!(fin(5, 1, 1).enumerate().unwrap(), vec![]);
    }

    #[test]
    fn default_and_properties() {
        let d = default_tag_set();
        assert!(d.contains(&0.into()));
        assert!(!d.contains(&(-1).into()));
        assert_eq!(d.properties(), TagSetProperties { ordered: true, finite: false });
        assert_eq!(d, range(Bound::Finite(0), Bound::PosInf, 1));
        assert_eq!(fin(1, 100, 1).properties(), TagSetProperties { ordered: true, finite: true });
        let colors = TagSet::unordered_enumeration(vec![sym("red"), sym("yellow"), sym("blue")]).unwrap();
        assert_eq!(colors.properties(), TagSetProperties { ordered: false, finite: true });
        assert_eq!(
            TagSet::of_kind(ValueKind::Integer).properties(),
            TagSetProperties { ordered: false, finite: false }
        );
        assert_eq!(zodiac().properties().to_string(), "ordered finite");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(TagSet::range(Bound::Finite(1), Bound::Finite(10), 0), Err(TagSetError::StepZero));
        assert_eq!(
            TagSet::range(Bound::Finite(1), Bound::PosInf, -1),
            Err(TagSetError::NegativeStepWithInfiniteBound)
        );
        assert_eq!(TagSet::range(Bound::NegInf, Bound::PosInf, 2), Err(TagSetError::UnanchoredStep));
        assert_eq!(TagSet::range(Bound::PosInf, Bound::PosInf, 1), Err(TagSetError::InvalidBound));
        assert_eq!(
            TagSet::ordered_enumeration(vec![sym("a"), sym("a")]),
            Err(TagSetError::DuplicateTag(sym("a")))
        );
        assert_eq!(
            TagSet::unordered_enumeration(vec![1.into(), sym("tiger")]),
            Err(TagSetError::MixedKinds)
        );
    }

    #[test]
    fn empty_ranges() {
        assert!(fin(10, 1, 1).is_empty());
        assert!(fin(1, 10, -1).is_empty());
        assert!(!fin(1, 1, 5).is_empty());
        assert!(!fin(10, 1, 1).contains(&5.into()));
        assert_eq!(fin(2, 9, 3).len(), Some(3));
        assert_eq!(fin(10, 1, 1).len(), Some(0));
    }

    #[test]
    fn display() {
        assert_eq!(zodiac().to_string(), "{rat, bull, tiger, rabbit}");
        assert_eq!(fin(2, 100, 2).to_string(), "{2 to 100 step 2}");
        assert_eq!(range(Bound::NegInf, Bound::PosInf, 1).to_string(), "{INF- to INF+}");
        assert_eq!(TagSet::of_kind(ValueKind::Symbol).to_string(), "{string}");
    }

    #[test]
    fn identifiers() {
        assert!(Ident::new("tiger_2").is_ok());
        assert!(Ident::new("2tiger").is_err());
        assert!(Ident::new("").is_err());
        assert!(Ident::new("_x").is_err());
        assert!(Ident::new("to").is_err());
        assert!(Ident::new("union").is_err());
        assert!(Ident::new("Union").is_ok());
        assert_ne!("3".parse::<TagValue>().unwrap(), sym("x3"));
    }
}
