use std::fmt;

use crate::calculus::Operator;
use crate::tagset::{default_tag_set, Ident, TagSet};

use super::lexer::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub items: Vec<Item>,
}

impl Program {
    pub fn declarations(&self) -> impl Iterator<Item = &Declaration> {
        self.items.iter().filter_map(|i| match i {
            Item::Declaration(d) => Some(d),
            Item::Statement(_) => None,
        })
    }

    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.items.iter().filter_map(|i| match i {
            Item::Statement(s) => Some(s),
            Item::Declaration(_) => None,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Declaration(Declaration),
    Statement(Statement),
}

/// `dimension <name> [: <ordered|unordered> <finite|infinite> {...}]`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub name: Ident,
    /// `None` when the declaration omits the tag set.
    pub spec: Option<TagSet>,
    pub span: Span,
}

impl Declaration {
    pub fn tag_set(&self) -> TagSet {
        self.spec.clone().unwrap_or_else(default_tag_set)
    }
}

/// `[name =] expr`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub binding: Option<Ident>,
    pub expr: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
    /// Written inside parentheses.
    pub grouped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Context(ContextLit),
    ContextSet(Vec<ContextLit>),
    DimSet(Vec<(Ident, Span)>),
    BinOp {
        op: Operator,
        left: Box<Expr>,
        right: Box<Expr>,
    },
    Ident(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextLit {
    pub entries: Vec<ContextEntry>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextEntry {
    pub dimension: Ident,
    pub tag: TagExpr,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl fmt::Display for ArithOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TagExpr {
    Int(i64),
    Symbol(Ident),
    Arith(ArithOp, Box<TagExpr>, Box<TagExpr>),
}

impl TagExpr {
    /// Literal tags are checked statically; anything computed is deferred.
    pub fn is_literal(&self) -> bool {
        !matches!(self, TagExpr::Arith(..))
    }
}
