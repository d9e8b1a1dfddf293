//! The `.ctx` declaration and expression language.

pub mod ast;
pub mod check;
pub mod lexer;
pub mod parser;

pub use ast::*;
pub use check::{check_program, Checker, Diagnostic, DiagnosticKind, Severity, StaticKind};
pub use lexer::{tokenize, LexError, Span, Token, TokenKind};
pub use parser::{parse_expr, parse_program, parse_tokens, ParseError, ParseErrorKind, SyntaxError};
