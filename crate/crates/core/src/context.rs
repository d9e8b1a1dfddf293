//! Context values: micro contexts, simple contexts, non-simple contexts and
//! context sets, plus the dimension declarations they are validated against.
//!
//! Everything is value-based. A `SimpleContext` is keyed by dimension name so
//! it cannot hold two pairs for the same dimension, and a `ContextSet` is a
//! set, so duplicates collapse on construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tagset::{Ident, TagSet, TagValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),
    #[error("tag `{tag}` is not in the tag set of dimension `{dimension}`")]
    TagNotInTagSet { dimension: Ident, tag: TagValue },
    #[error("dimension `{dimension}` appears twice with different tags ({first} and {second})")]
    DuplicateDimension {
        dimension: Ident,
        first: TagValue,
        second: TagValue,
    },
    #[error("dimension `{0}` is already declared")]
    Redeclared(Ident),
    #[error("no dimension occurs more than once; this is a simple context")]
    NotNonSimple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimension {
    pub name: Ident,
    pub tag_set: TagSet,
}

impl Dimension {
    pub fn new(name: Ident, tag_set: TagSet) -> Self {
        Dimension { name, tag_set }
    }
}

/// Declared dimensions, by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dimensions(BTreeMap<Ident, Dimension>);

impl Dimensions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, dim: Dimension) -> Result<(), ContextError> {
        if self.0.contains_key(&dim.name) {
            return Err(ContextError::Redeclared(dim.name));
        }
        self.0.insert(dim.name.clone(), dim);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Dimension> {
        self.0.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Dimension> {
        self.0.values()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One `<dimension:tag>` pair. Ordered by dimension name, then tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MicroContext {
    pub dimension: Ident,
    pub tag: TagValue,
}

impl MicroContext {
    pub fn new(dimension: Ident, tag: TagValue) -> Self {
        MicroContext { dimension, tag }
    }
}

impl fmt::Display for MicroContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dimension, self.tag)
    }
}

/// Builds a micro context after checking the tag against the dimension's tag set.
pub fn make_micro(dims: &Dimensions, dimension: &str, tag: TagValue) -> Result<MicroContext, ContextError> {
    let dim = dims
        .get(dimension)
        .ok_or_else(|| ContextError::UnknownDimension(dimension.to_owned()))?;
    if !dim.tag_set.contains(&tag) {
        return Err(ContextError::TagNotInTagSet {
            dimension: dim.name.clone(),
            tag,
        });
    }
    Ok(MicroContext::new(dim.name.clone(), tag))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimensionSet(BTreeSet<Ident>);

impl DimensionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains(name)
    }

    pub fn insert(&mut self, name: Ident) -> bool {
        self.0.insert(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Ident> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersection(&self, other: &DimensionSet) -> DimensionSet {
        DimensionSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &DimensionSet) -> DimensionSet {
        DimensionSet(self.0.union(&other.0).cloned().collect())
    }
}

impl FromIterator<Ident> for DimensionSet {
    fn from_iter<I: IntoIterator<Item = Ident>>(iter: I) -> Self {
        DimensionSet(iter.into_iter().collect())
    }
}

impl fmt::Display for DimensionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

/// A point in context space: at most one tag per dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleContext(BTreeMap<Ident, TagValue>);

impl SimpleContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Collapses exact duplicates; two different tags for one dimension is
    /// an error.
    pub fn from_micros<I>(micros: I) -> Result<Self, ContextError>
    where
        I: IntoIterator<Item = MicroContext>,
    {
        let mut ctx = SimpleContext::new();
        for m in micros {
            ctx.try_insert(m)?;
        }
        Ok(ctx)
    }

    pub(crate) fn try_insert(&mut self, m: MicroContext) -> Result<(), ContextError> {
        match self.0.get(&m.dimension) {
            Some(existing) if *existing != m.tag => Err(ContextError::DuplicateDimension {
                first: existing.clone(),
                second: m.tag,
                dimension: m.dimension,
            }),
            Some(_) => Ok(()),
            None => {
                self.0.insert(m.dimension, m.tag);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tag(&self, dimension: &str) -> Option<&TagValue> {
        self.0.get(dimension)
    }

    pub fn contains_micro(&self, m: &MicroContext) -> bool {
        self.0.get(&m.dimension) == Some(&m.tag)
    }

    pub fn micros(&self) -> impl Iterator<Item = MicroContext> + '_ {
        self.0
            .iter()
            .map(|(d, t)| MicroContext::new(d.clone(), t.clone()))
    }

    pub fn dims(&self) -> DimensionSet {
        self.0.keys().cloned().collect()
    }

    /// Keeps the pairs whose dimension satisfies `keep`.
    pub(crate) fn filter_dims(&self, mut keep: impl FnMut(&Ident) -> bool) -> SimpleContext {
        SimpleContext(
            self.0
                .iter()
                .filter(|(d, _)| keep(d))
                .map(|(d, t)| (d.clone(), t.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for SimpleContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (d, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}:{t}")?;
        }
        f.write_str("]")
    }
}

/// A collection of micro contexts in which some dimension carries more than
/// one tag. Only produced transiently by `union`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonSimpleContext(BTreeSet<MicroContext>);

impl NonSimpleContext {
    pub fn try_new<I>(micros: I) -> Result<Self, ContextError>
    where
        I: IntoIterator<Item = MicroContext>,
    {
        let micros: BTreeSet<MicroContext> = micros.into_iter().collect();
        let distinct: BTreeSet<&Ident> = micros.iter().map(|m| &m.dimension).collect();
        if distinct.len() == micros.len() {
            return Err(ContextError::NotNonSimple);
        }
        Ok(NonSimpleContext(micros))
    }

    pub fn micros(&self) -> impl Iterator<Item = &MicroContext> {
        self.0.iter()
    }

    pub fn dims(&self) -> DimensionSet {
        self.0.iter().map(|m| m.dimension.clone()).collect()
    }
}

impl fmt::Display for NonSimpleContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

/// A region of context space: a set of simple contexts, possibly over
/// different dimensions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextSet(BTreeSet<SimpleContext>);

impl ContextSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: SimpleContext) -> bool {
        self.0.insert(c)
    }

    pub fn contains(&self, c: &SimpleContext) -> bool {
        self.0.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SimpleContext> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every dimension used by any member.
    pub fn dims(&self) -> DimensionSet {
        self.0.iter().flat_map(|c| c.0.keys().cloned()).collect()
    }

    /// Members in canonical display order (sorted by their canonical text).
    pub fn canonical_members(&self) -> Vec<&SimpleContext> {
        let mut members: Vec<(String, &SimpleContext)> =
            self.0.iter().map(|c| (c.to_string(), c)).collect();
        members.sort();
        members.into_iter().map(|(_, c)| c).collect()
    }
}

impl FromIterator<SimpleContext> for ContextSet {
    fn from_iter<I: IntoIterator<Item = SimpleContext>>(iter: I) -> Self {
        ContextSet(iter.into_iter().collect())
    }
}

impl fmt::Display for ContextSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.canonical_members().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextKind {
    Simple,
    Set,
}

impl fmt::Display for ContextKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextKind::Simple => f.write_str("simple context"),
            ContextKind::Set => f.write_str("context set"),
        }
    }
}

/// A first-class context value. Structural equality is the calculus'
/// `equals`: same kind and order-insensitive set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ContextValue {
    Simple(SimpleContext),
    Set(ContextSet),
}

impl ContextValue {
    pub fn kind(&self) -> ContextKind {
        match self {
            ContextValue::Simple(_) => ContextKind::Simple,
            ContextValue::Set(_) => ContextKind::Set,
        }
    }
}

impl From<SimpleContext> for ContextValue {
    fn from(c: SimpleContext) -> Self {
        ContextValue::Simple(c)
    }
}

impl From<ContextSet> for ContextValue {
    fn from(s: ContextSet) -> Self {
        ContextValue::Set(s)
    }
}

/// Canonical text: `[d:1,e:2]` or `{[d:1,e:2],[f:3]}`.
impl fmt::Display for ContextValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextValue::Simple(c) => write!(f, "{c}"),
            ContextValue::Set(s) => write!(f, "{s}"),
        }
    }
}

pub fn canonicalize(v: &ContextValue) -> String {
    v.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed context text at byte {offset}: {message}")]
pub struct CanonicalParseError {
    pub offset: usize,
    pub message: String,
}

/// Reader for the canonical text form. It checks structure only; tags are not
/// validated against any tag set. Whitespace between tokens is tolerated.
struct CanonicalReader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> CanonicalReader<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, CanonicalParseError> {
        Err(CanonicalParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CanonicalParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn simple(&mut self) -> Result<SimpleContext, CanonicalParseError> {
        self.expect('[')?;
        let mut micros = Vec::new();
        if !self.eat(']') {
            loop {
                let start = self.pos;
                let dim = Ident::new(self.word()).or_else(|e| {
                    self.pos = start;
                    self.err(e.to_string())
                })?;
                self.expect(':')?;
                let tag: TagValue = self.word().parse().or_else(|e: crate::tagset::InvalidIdent| {
                    self.pos = start;
                    self.err(e.to_string())
                })?;
                micros.push(MicroContext::new(dim, tag));
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        SimpleContext::from_micros(micros).or_else(|e| self.err(e.to_string()))
    }

    fn set(&mut self) -> Result<ContextSet, CanonicalParseError> {
        self.expect('{')?;
        let mut set = ContextSet::new();
        if !self.eat('}') {
            loop {
                set.insert(self.simple()?);
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(set)
    }

    fn finish<T>(mut self, value: T) -> Result<T, CanonicalParseError> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input");
        }
        Ok(value)
    }
}

impl FromStr for SimpleContext {
    type Err = CanonicalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut r = CanonicalReader { src: s, pos: 0 };
        let v = r.simple()?;
        r.finish(v)
    }
}

impl FromStr for ContextSet {
    type Err = CanonicalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut r = CanonicalReader { src: s, pos: 0 };
        let v = r.set()?;
        r.finish(v)
    }
}

impl FromStr for ContextValue {
    type Err = CanonicalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut r = CanonicalReader { src: s, pos: 0 };
        let v = match r.peek() {
            Some('{') => ContextValue::Set(r.set()?),
            _ => ContextValue::Simple(r.simple()?),
        };
        r.finish(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagset::{default_tag_set, Bound};

    fn id(s: &str) -> Ident {
        Ident::new(s).unwrap()
    }

    fn micro(d: &str, t: i64) -> MicroContext {
        MicroContext::new(id(d), TagValue::Int(t))
    }

    fn cv(s: &str) -> ContextValue {
        s.parse().unwrap()
    }

    #[test]
    fn make_micro_checks_tag_set() {
        let mut dims = Dimensions::new();
        dims.declare(Dimension::new(
            id("d"),
            TagSet::range(Bound::Finite(1), Bound::Finite(100), 1).unwrap(),
        ))
        .unwrap();
        dims.declare(Dimension::new(id("planet"), default_tag_set())).unwrap();

        assert_eq!(make_micro(&dims, "d", 3.into()), Ok(micro("d", 3)));
        assert_eq!(
            make_micro(&dims, "d", 200.into()),
            Err(ContextError::TagNotInTagSet { dimension: id("d"), tag: 200.into() })
        );
        assert_eq!(make_micro(&dims, "planet", 3.into()), Ok(micro("planet", 3)));
        assert_eq!(
            make_micro(&dims, "e", 3.into()),
            Err(ContextError::UnknownDimension("e".into()))
        );
        assert_eq!(
            dims.declare(Dimension::new(id("d"), default_tag_set())),
            Err(ContextError::Redeclared(id("d")))
        );
    }

    #[test]
    fn make_simple() {
        let c = SimpleContext::from_micros([micro("d", 1), micro("e", 2)]).unwrap();
        assert_eq!(c.to_string(), "[d:1,e:2]");
        let c = SimpleContext::from_micros([micro("d", 1), micro("d", 1)]).unwrap();
        assert_eq!(c.to_string(), "[d:1]");
        assert_eq!(
            SimpleContext::from_micros([micro("d", 1), micro("d", 2)]),
            Err(ContextError::DuplicateDimension { dimension: id("d"), first: 1.into(), second: 2.into() })
        );
    }

    #[test]
    fn equality_is_order_insensitive() {
        assert_eq!(cv("[d:1,e:2]"), cv("[e:2,d:1]"));
        assert_eq!(cv("{[d:1],[e:2]}"), cv("{[e:2],[d:1]}"));
        assert_ne!(cv("[d:1]"), cv("{[d:1]}"));
        assert_eq!(cv("{[d:1],[d:1]}"), cv("{[d:1]}"));
    }

    #[test]
    fn dims() {
        assert_eq!(cv("[d:1,e:2,f:3]").to_string(), "[d:1,e:2,f:3]");
        let c: SimpleContext = "[d:1,e:2,f:3]".parse().unwrap();
        assert_eq!(c.dims().to_string(), "{d,e,f}");
        assert!(SimpleContext::new().dims().is_empty());
        let n = NonSimpleContext::try_new([micro("d", 1), micro("d", 3), micro("f", 4)]).unwrap();
        assert_eq!(n.dims().to_string(), "{d,f}");
        assert_eq!(
            NonSimpleContext::try_new([micro("d", 1), micro("e", 3)]),
            Err(ContextError::NotNonSimple)
        );
    }

    #[test]
    fn canonical_text() {
        let c = SimpleContext::from_micros([micro("e", 2), micro("d", 1)]).unwrap();
        assert_eq!(canonicalize(&c.into()), "[d:1,e:2]");
        assert_eq!(cv("{[f:3],[d:1,e:2]}").to_string(), "{[d:1,e:2],[f:3]}");
        assert_eq!(cv("[]").to_string(), "[]");
        assert_eq!(cv("{ }").to_string(), "{}");
        assert_eq!(cv("{[]}").to_string(), "{[]}");
        // members sort by text, not numerically
        assert_eq!(cv("{[d:9],[d:10]}").to_string(), "{[d:10],[d:9]}");
        assert_eq!(cv("[d:-3, x:tiger]").to_string(), "[d:-3,x:tiger]");
    }

    #[test]
    fn canonical_parse_errors() {
        assert!("[d:1".parse::<ContextValue>().is_err());
        assert!("[d:1,d:2]".parse::<ContextValue>().is_err());
        assert!("[1:d]".parse::<ContextValue>().is_err());
        assert!("[d:1] x".parse::<ContextValue>().is_err());
        assert!("{[d:1],}".parse::<ContextValue>().is_err());
    }
}
