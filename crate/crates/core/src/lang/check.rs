//! Static semantic checks.
//!
//! Literal tags are checked against their dimension's tag set here; tags
//! computed by arithmetic are left for evaluation. Operand kinds are checked
//! whenever they can be inferred without evaluating anything.

use std::collections::BTreeMap;
use std::fmt;

use crate::calculus::Operator;
use crate::context::{ContextKind, Dimension, Dimensions};
use crate::tagset::{Ident, TagValue};

use super::ast::*;
use super::lexer::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    UnknownDimension(String),
    TagNotInTagSet { dimension: Ident, tag: TagValue },
    DuplicateDimension { dimension: Ident, first: TagValue, second: TagValue },
    OperandKindMismatch { op: Operator, left: ContextKind, right: ContextKind },
    NotAContext { op: Operator, found: StaticKind },
    ExpectedDimensionSet { op: Operator, found: StaticKind },
    UnknownBinding(String),
    Rebinding(Ident),
    Redeclared(Ident),
    UndeclaredDimensionInSet(Ident),
    EmptyTagSet(Ident),
    MixedOperators { first: Operator, second: Operator },
}

impl DiagnosticKind {
    pub fn severity(&self) -> Severity {
        match self {
            DiagnosticKind::UndeclaredDimensionInSet(_)
            | DiagnosticKind::EmptyTagSet(_)
            | DiagnosticKind::MixedOperators { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagnosticKind::UnknownDimension(d) => write!(f, "unknown dimension `{d}`"),
            DiagnosticKind::TagNotInTagSet { dimension, tag } => {
                write!(f, "tag `{tag}` is not in the tag set of dimension `{dimension}`")
            }
            DiagnosticKind::DuplicateDimension { dimension, first, second } => write!(
                f,
                "dimension `{dimension}` appears twice with different tags ({first} and {second})"
            ),
            DiagnosticKind::OperandKindMismatch { op, left, right } => write!(
                f,
                "`{op}` needs two simple contexts or two context sets, got a {left} and a {right}"
            ),
            DiagnosticKind::NotAContext { op, found } => {
                write!(f, "operand of `{op}` must be a context, found a {found}")
            }
            DiagnosticKind::ExpectedDimensionSet { op, found } => {
                write!(f, "right operand of `{op}` must be a dimension set, found a {found}")
            }
            DiagnosticKind::UnknownBinding(n) => write!(f, "unknown name `{n}`"),
            DiagnosticKind::Rebinding(n) => write!(f, "`{n}` is already bound"),
            DiagnosticKind::Redeclared(n) => write!(f, "dimension `{n}` is already declared"),
            DiagnosticKind::UndeclaredDimensionInSet(n) => {
                write!(f, "dimension set mentions undeclared dimension `{n}`")
            }
            DiagnosticKind::EmptyTagSet(n) => write!(f, "tag set of dimension `{n}` is empty"),
            DiagnosticKind::MixedOperators { first, second } => write!(
                f,
                "`{first}` and `{second}` mixed without parentheses; evaluated left to right"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Span,
    pub kind: DiagnosticKind,
}

impl Diagnostic {
    pub fn severity(&self) -> Severity {
        self.kind.severity()
    }

    pub fn is_error(&self) -> bool {
        self.severity() == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.severity() {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{label} at {}: {}", self.span, self.kind)
    }
}

/// What an expression is known to produce before evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaticKind {
    Boolean,
    Simple,
    Set,
    /// A context whose kind is only known at run time (union of simples).
    AnyContext,
    DimSet,
    /// Already diagnosed; suppresses follow-up diagnostics.
    Unknown,
}

impl StaticKind {
    fn is_context_like(self) -> bool {
        matches!(self, StaticKind::Simple | StaticKind::Set | StaticKind::AnyContext | StaticKind::Unknown)
    }

    fn definite(self) -> Option<ContextKind> {
        match self {
            StaticKind::Simple => Some(ContextKind::Simple),
            StaticKind::Set => Some(ContextKind::Set),
            _ => None,
        }
    }
}

impl From<ContextKind> for StaticKind {
    fn from(k: ContextKind) -> Self {
        match k {
            ContextKind::Simple => StaticKind::Simple,
            ContextKind::Set => StaticKind::Set,
        }
    }
}

impl fmt::Display for StaticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StaticKind::Boolean => "boolean",
            StaticKind::Simple => "simple context",
            StaticKind::Set => "context set",
            StaticKind::AnyContext => "context",
            StaticKind::DimSet => "dimension set",
            StaticKind::Unknown => "value of unknown kind",
        })
    }
}

/// Symbol table for the static pass: declared dimensions and the inferred
/// kind of every binding.
#[derive(Debug, Clone, Default)]
pub struct Checker {
    dims: Dimensions,
    bindings: BTreeMap<Ident, StaticKind>,
    diagnostics: Vec<Diagnostic>,
}

/// Checks a standalone program.
pub fn check_program(program: &Program) -> Vec<Diagnostic> {
    Checker::default().check(program)
}

impl Checker {
    /// Starts from existing declarations and bindings, e.g. a REPL session.
    pub fn new(dims: Dimensions, bindings: BTreeMap<Ident, StaticKind>) -> Self {
        Checker {
            dims,
            bindings,
            diagnostics: Vec::new(),
        }
    }

    /// Checks `program` in order, extending the symbol table as it goes, and
    /// returns the diagnostics for this program.
    pub fn check(&mut self, program: &Program) -> Vec<Diagnostic> {
        for item in &program.items {
            match item {
                Item::Declaration(d) => self.declaration(d),
                Item::Statement(s) => self.statement(s),
            }
        }
        std::mem::take(&mut self.diagnostics)
    }

    fn report(&mut self, span: Span, kind: DiagnosticKind) {
        self.diagnostics.push(Diagnostic { span, kind });
    }

    fn declaration(&mut self, d: &Declaration) {
        let ts = d.tag_set();
        if ts.is_empty() {
            self.report(d.span, DiagnosticKind::EmptyTagSet(d.name.clone()));
        }
        if self.dims.declare(Dimension::new(d.name.clone(), ts)).is_err() {
            self.report(d.span, DiagnosticKind::Redeclared(d.name.clone()));
        }
    }

    fn statement(&mut self, s: &Statement) {
        let kind = self.expr(&s.expr);
        if let Some(name) = &s.binding {
            if self.bindings.contains_key(name) {
                self.report(s.span, DiagnosticKind::Rebinding(name.clone()));
            } else {
                self.bindings.insert(name.clone(), kind);
            }
        }
    }

    fn context_lit(&mut self, lit: &ContextLit) {
        let mut seen: BTreeMap<&Ident, &TagValue> = BTreeMap::new();
        let mut literal_tags = Vec::new();
        for entry in &lit.entries {
            let literal = match &entry.tag {
                TagExpr::Int(n) => Some(TagValue::Int(*n)),
                TagExpr::Symbol(s) => Some(TagValue::Symbol(s.clone())),
                TagExpr::Arith(..) => None,
            };
            match self.dims.get(entry.dimension.as_str()) {
                None => self.report(
                    entry.span,
                    DiagnosticKind::UnknownDimension(entry.dimension.to_string()),
                ),
                Some(dim) => {
                    if let Some(tag) = &literal {
                        if !dim.tag_set.contains(tag) {
                            let kind = DiagnosticKind::TagNotInTagSet {
                                dimension: entry.dimension.clone(),
                                tag: tag.clone(),
                            };
                            self.report(entry.span, kind);
                        }
                    }
                }
            }
            literal_tags.push((entry, literal));
        }
        for (entry, literal) in &literal_tags {
            let Some(tag) = literal else { continue };
            match seen.get(&entry.dimension) {
                Some(first) if *first != tag => {
                    let kind = DiagnosticKind::DuplicateDimension {
                        dimension: entry.dimension.clone(),
                        first: (*first).clone(),
                        second: tag.clone(),
                    };
                    self.report(entry.span, kind);
                }
                Some(_) => {}
                None => {
                    seen.insert(&entry.dimension, tag);
                }
            }
        }
    }

    fn expr(&mut self, e: &Expr) -> StaticKind {
        match &e.kind {
            ExprKind::Context(lit) => {
                self.context_lit(lit);
                StaticKind::Simple
            }
            ExprKind::ContextSet(members) => {
                for lit in members {
                    self.context_lit(lit);
                }
                StaticKind::Set
            }
            ExprKind::DimSet(names) => {
                for (name, span) in names {
                    if !self.dims.contains(name.as_str()) {
                        self.report(*span, DiagnosticKind::UndeclaredDimensionInSet(name.clone()));
                    }
                }
                StaticKind::DimSet
            }
            ExprKind::Ident(name) => match self.bindings.get(name) {
                Some(k) => *k,
                None => {
                    self.report(e.span, DiagnosticKind::UnknownBinding(name.to_string()));
                    StaticKind::Unknown
                }
            },
            ExprKind::BinOp { op, left, right } => {
                if let ExprKind::BinOp { op: inner, .. } = &left.kind {
                    if !left.grouped && inner != op {
                        self.report(e.span, DiagnosticKind::MixedOperators { first: *inner, second: *op });
                    }
                }
                let l = self.expr(left);
                let r = self.expr(right);
                self.binop(*op, e.span, l, r)
            }
        }
    }

    fn binop(&mut self, op: Operator, span: Span, l: StaticKind, r: StaticKind) -> StaticKind {
        if !l.is_context_like() {
            self.report(span, DiagnosticKind::NotAContext { op, found: l });
            return StaticKind::Unknown;
        }
        if op.takes_dimension_set() {
            if !matches!(r, StaticKind::DimSet | StaticKind::Unknown) {
                self.report(span, DiagnosticKind::ExpectedDimensionSet { op, found: r });
                return StaticKind::Unknown;
            }
            return l;
        }
        if !r.is_context_like() {
            self.report(span, DiagnosticKind::NotAContext { op, found: r });
            return StaticKind::Unknown;
        }
        if let (Some(left), Some(right)) = (l.definite(), r.definite()) {
            if left != right {
                self.report(span, DiagnosticKind::OperandKindMismatch { op, left, right });
                return StaticKind::Unknown;
            }
        }
        if l == StaticKind::Unknown || r == StaticKind::Unknown {
            return if op == Operator::IsSubContext { StaticKind::Boolean } else { StaticKind::Unknown };
        }
        match op {
            Operator::IsSubContext => StaticKind::Boolean,
            Operator::Union if l == StaticKind::Set || r == StaticKind::Set => StaticKind::Set,
            Operator::Union => StaticKind::AnyContext,
            _ => match (l.definite(), r.definite()) {
                (Some(k), _) | (None, Some(k)) => k.into(),
                (None, None) => StaticKind::AnyContext,
            },
        }
    }
}
