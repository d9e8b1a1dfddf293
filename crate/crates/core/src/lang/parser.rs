//! Recursive-descent parser.
//!
//! ```text
//! program     = [ item { ";" item } ] [ ";" ]
//! item        = declaration | statement
//! declaration = "dimension" IDENT [ ":" order size "{" tagset "}" ]
//! statement   = [ IDENT "=" ] expr
//! expr        = operand { OPERATOR operand }          (left-assoc, one level)
//! operand     = context | "{" ... "}" | IDENT | "(" expr ")"
//! ```
//!
//! The full grammar lives in `docs/grammar.md`.

use thiserror::Error;

use crate::tagset::{Bound, Ident, TagSet, TagSetError, TagValue, ValueKind};

use super::ast::*;
use super::lexer::{tokenize, Keyword, LexError, Span, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: TokenKind },
    #[error("step must not be zero")]
    StepZero,
    #[error("a negative step cannot be combined with an infinite bound")]
    NegativeStepWithInfiniteBound,
    #[error("a finite tag set cannot have an INF- or INF+ bound")]
    InfiniteBoundInFiniteSet,
    #[error("an ordered infinite tag set needs an INF- or INF+ bound")]
    MissingInfiniteBound,
    #[error("unordered infinite tag sets are restricted to `{{int}}` or `{{string}}`, found {0}")]
    UnsupportedUnorderedInfinite(TokenKind),
    #[error("{0}")]
    InvalidTagSet(TagSetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub span: Span,
    pub kind: ParseErrorKind,
}

/// Anything that stops a source text from becoming a [`Program`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span(),
            SyntaxError::Parse(e) => e.span,
        }
    }
}

pub fn parse_program(source: &str) -> Result<Program, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parse_tokens(&tokens)?)
}

/// Parses a token stream as produced by [`tokenize`]; a missing trailing
/// `Eof` is tolerated.
pub fn parse_tokens(tokens: &[Token]) -> Result<Program, ParseError> {
    Parser { tokens, pos: 0 }.program()
}

/// Parses a single expression (no trailing `;`).
pub fn parse_expr(source: &str) -> Result<Expr, SyntaxError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens: &tokens, pos: 0 };
    let e = p.expr()?;
    p.expect(TokenKind::Eof, "end of input")?;
    Ok(e)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

fn tagset_error(span: Span, e: TagSetError) -> ParseError {
    let kind = match e {
        TagSetError::StepZero => ParseErrorKind::StepZero,
        TagSetError::NegativeStepWithInfiniteBound => ParseErrorKind::NegativeStepWithInfiniteBound,
        other => ParseErrorKind::InvalidTagSet(other),
    };
    ParseError { span, kind }
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &TokenKind {
        self.peek_at(0)
    }

    fn peek_at(&self, n: usize) -> &TokenKind {
        self.tokens
            .get(self.pos + n)
            .map_or(&TokenKind::Eof, |t| &t.kind)
    }

    fn span(&self) -> Span {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map_or(Span::default(), |t| t.span)
    }

    fn advance(&mut self) -> TokenKind {
        let kind = self.peek().clone();
        if self.pos < self.tokens.len() {
            self.pos += 1;
        }
        kind
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            kind: ParseErrorKind::Expected {
                expected: expected.to_owned(),
                found: self.peek().clone(),
            },
        })
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> PResult<()> {
        if self.eat(&kind) {
            Ok(())
        } else {
            self.error(expected)
        }
    }

    fn ident(&mut self, expected: &str) -> PResult<Ident> {
        match self.peek() {
            TokenKind::Ident(s) => {
                let id = Ident::new(s.clone()).expect("lexer only produces valid identifiers");
                self.advance();
                Ok(id)
            }
            _ => self.error(expected),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut items = Vec::new();
        loop {
            while self.eat(&TokenKind::Semicolon) {}
            if *self.peek() == TokenKind::Eof {
                break;
            }
            items.push(self.item()?);
            if !self.eat(&TokenKind::Semicolon) && *self.peek() != TokenKind::Eof {
                return self.error("`;` or end of input");
            }
        }
        Ok(Program { items })
    }

    fn item(&mut self) -> PResult<Item> {
        if *self.peek() == TokenKind::Keyword(Keyword::Dimension) {
            self.declaration().map(Item::Declaration)
        } else {
            self.statement().map(Item::Statement)
        }
    }

    fn declaration(&mut self) -> PResult<Declaration> {
        let span = self.span();
        self.advance();
        let name = self.ident("dimension name")?;
        let spec = if self.eat(&TokenKind::Colon) {
            Some(self.tag_set_spec()?)
        } else {
            None
        };
        Ok(Declaration { name, spec, span })
    }

    fn tag_set_spec(&mut self) -> PResult<TagSet> {
        let ordered = match self.advance() {
            TokenKind::Keyword(Keyword::Ordered) => true,
            TokenKind::Keyword(Keyword::Unordered) => false,
            _ => {
                self.pos -= 1;
                return self.error("`ordered` or `unordered`");
            }
        };
        let finite = match self.advance() {
            TokenKind::Keyword(Keyword::Finite) => true,
            TokenKind::Keyword(Keyword::Infinite) => false,
            _ => {
                self.pos -= 1;
                return self.error("`finite` or `infinite`");
            }
        };
        self.expect(TokenKind::LBrace, "`{`")?;
        let span = self.span();
        let ts = match (ordered, finite) {
            (true, true) => {
                let is_range = matches!(self.peek(), TokenKind::Int(_) | TokenKind::InfMinus | TokenKind::InfPlus)
                    && *self.peek_at(1) == TokenKind::Keyword(Keyword::To);
                if is_range {
                    let (lower, upper, step) = self.range_body()?;
                    if !(lower.is_finite() && upper.is_finite()) {
                        return Err(ParseError { span, kind: ParseErrorKind::InfiniteBoundInFiniteSet });
                    }
                    TagSet::range(lower, upper, step)
                } else {
                    let tags = self.enumeration()?;
                    TagSet::ordered_enumeration(tags)
                }
            }
            (true, false) => {
                let (lower, upper, step) = self.range_body()?;
                if lower.is_finite() && upper.is_finite() {
                    return Err(ParseError { span, kind: ParseErrorKind::MissingInfiniteBound });
                }
                TagSet::range(lower, upper, step)
            }
            (false, true) => {
                let tags = self.enumeration()?;
                TagSet::unordered_enumeration(tags)
            }
            (false, false) => {
                let kind = match self.peek() {
                    TokenKind::Ident(s) if s == "int" => ValueKind::Integer,
                    TokenKind::Ident(s) if s == "string" => ValueKind::Symbol,
                    other => {
                        return Err(ParseError {
                            span,
                            kind: ParseErrorKind::UnsupportedUnorderedInfinite(other.clone()),
                        })
                    }
                };
                self.advance();
                Ok(TagSet::of_kind(kind))
            }
        }
        .map_err(|e| tagset_error(span, e))?;
        self.expect(TokenKind::RBrace, "`}`")?;
        Ok(ts)
    }

    fn bound(&mut self) -> PResult<Bound> {
        match self.peek() {
            TokenKind::Int(n) => {
                let n = *n;
                self.advance();
                Ok(Bound::Finite(n))
            }
            TokenKind::InfMinus => {
                self.advance();
                Ok(Bound::NegInf)
            }
            TokenKind::InfPlus => {
                self.advance();
                Ok(Bound::PosInf)
            }
            _ => self.error("integer, `INF-` or `INF+`"),
        }
    }

    fn range_body(&mut self) -> PResult<(Bound, Bound, i64)> {
        let lower = self.bound()?;
        self.expect(TokenKind::Keyword(Keyword::To), "`to`")?;
        let upper = self.bound()?;
        let step = if self.eat(&TokenKind::Keyword(Keyword::Step)) {
            match self.advance() {
                TokenKind::Int(n) => n,
                _ => {
                    self.pos -= 1;
                    return self.error("integer step");
                }
            }
        } else {
            1
        };
        Ok((lower, upper, step))
    }

    fn enumeration(&mut self) -> PResult<Vec<TagValue>> {
        let mut tags = Vec::new();
        if *self.peek() == TokenKind::RBrace {
            return Ok(tags);
        }
        loop {
            match self.peek() {
                TokenKind::Ident(_) => tags.push(TagValue::Symbol(self.ident("tag")?)),
                TokenKind::Int(n) => {
                    tags.push(TagValue::Int(*n));
                    self.advance();
                }
                _ => return self.error("tag (identifier or integer)"),
            }
            if !self.eat(&TokenKind::Comma) {
                return Ok(tags);
            }
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        let span = self.span();
        let binding = if matches!(self.peek(), TokenKind::Ident(_)) && *self.peek_at(1) == TokenKind::Assign {
            let name = self.ident("binding name")?;
            self.advance();
            Some(name)
        } else {
            None
        };
        let expr = self.expr()?;
        Ok(Statement { binding, expr, span })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut left = self.operand(false)?;
        while let TokenKind::Operator(op) = *self.peek() {
            let span = self.span();
            self.advance();
            let right = self.operand(op.takes_dimension_set())?;
            left = Expr {
                kind: ExprKind::BinOp {
                    op,
                    left: Box::new(left),
                    right: Box::new(right),
                },
                span,
                grouped: false,
            };
        }
        Ok(left)
    }

    /// `dimset_position` resolves `{}` to an empty dimension set rather than
    /// an empty context set.
    fn operand(&mut self, dimset_position: bool) -> PResult<Expr> {
        let span = self.span();
        let kind = match self.peek() {
            TokenKind::LBracket => ExprKind::Context(self.context_lit()?),
            TokenKind::LBrace => match self.peek_at(1) {
                TokenKind::RBrace if dimset_position => {
                    self.pos += 2;
                    ExprKind::DimSet(Vec::new())
                }
                TokenKind::RBrace => {
                    self.pos += 2;
                    ExprKind::ContextSet(Vec::new())
                }
                TokenKind::LBracket => {
                    self.advance();
                    let mut members = vec![self.context_lit()?];
                    while self.eat(&TokenKind::Comma) {
                        members.push(self.context_lit()?);
                    }
                    self.expect(TokenKind::RBrace, "`,` or `}`")?;
                    ExprKind::ContextSet(members)
                }
                TokenKind::Ident(_) => {
                    self.advance();
                    let mut names = Vec::new();
                    loop {
                        let s = self.span();
                        names.push((self.ident("dimension name")?, s));
                        if !self.eat(&TokenKind::Comma) {
                            break;
                        }
                    }
                    self.expect(TokenKind::RBrace, "`,` or `}`")?;
                    ExprKind::DimSet(names)
                }
                _ => {
                    self.advance();
                    return self.error("`[`, a dimension name or `}`");
                }
            },
            TokenKind::Ident(_) => ExprKind::Ident(self.ident("identifier")?),
            TokenKind::LParen => {
                self.advance();
                let mut inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                inner.grouped = true;
                return Ok(inner);
            }
            _ => return self.error("context, context set, dimension set, name or `(`"),
        };
        Ok(Expr { kind, span, grouped: false })
    }

    fn context_lit(&mut self) -> PResult<ContextLit> {
        let span = self.span();
        self.expect(TokenKind::LBracket, "`[`")?;
        let mut entries = Vec::new();
        if !self.eat(&TokenKind::RBracket) {
            loop {
                let span = self.span();
                let dimension = self.ident("dimension name")?;
                self.expect(TokenKind::Colon, "`:`")?;
                let tag = self.tag_expr()?;
                entries.push(ContextEntry { dimension, tag, span });
                if self.eat(&TokenKind::RBracket) {
                    break;
                }
                self.expect(TokenKind::Comma, "`,` or `]`")?;
            }
        }
        Ok(ContextLit { entries, span })
    }

    fn tag_expr(&mut self) -> PResult<TagExpr> {
        let mut left = self.tag_atom()?;
        loop {
            let op = match self.peek() {
                TokenKind::Plus => ArithOp::Add,
                TokenKind::Minus => ArithOp::Sub,
                TokenKind::Star => ArithOp::Mul,
                _ => return Ok(left),
            };
            self.advance();
            let right = self.tag_atom()?;
            left = TagExpr::Arith(op, Box::new(left), Box::new(right));
        }
    }

    fn tag_atom(&mut self) -> PResult<TagExpr> {
        match self.peek() {
            TokenKind::Int(n) => {
                let n = *n;
                self.advance();
                Ok(TagExpr::Int(n))
            }
            TokenKind::Ident(_) => Ok(TagExpr::Symbol(self.ident("tag")?)),
            TokenKind::LParen => {
                self.advance();
                let e = self.tag_expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.error("tag expression"),
        }
    }
}
