use std::fmt;

use thiserror::Error;

use crate::calculus::Operator;

/// 1-based line and column of a token's first character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Dimension,
    Ordered,
    Unordered,
    Finite,
    Infinite,
    To,
    Step,
}

impl Keyword {
    fn from_word(s: &str) -> Option<Keyword> {
        Some(match s {
            "dimension" => Keyword::Dimension,
            "ordered" => Keyword::Ordered,
            "unordered" => Keyword::Unordered,
            "finite" => Keyword::Finite,
            "infinite" => Keyword::Infinite,
            "to" => Keyword::To,
            "step" => Keyword::Step,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Dimension => "dimension",
            Keyword::Ordered => "ordered",
            Keyword::Unordered => "unordered",
            Keyword::Finite => "finite",
            Keyword::Infinite => "infinite",
            Keyword::To => "to",
            Keyword::Step => "step",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(i64),
    Keyword(Keyword),
    Operator(Operator),
    InfMinus,
    InfPlus,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Comma,
    Semicolon,
    Plus,
    Minus,
    Star,
    Assign,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Int(n) => write!(f, "integer `{n}`"),
            TokenKind::Keyword(k) => write!(f, "`{}`", k.as_str()),
            TokenKind::Operator(op) => write!(f, "`{op}`"),
            TokenKind::InfMinus => f.write_str("`INF-`"),
            TokenKind::InfPlus => f.write_str("`INF+`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Semicolon => f.write_str("`;`"),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Assign => f.write_str("`=`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("{span}: unexpected character `{ch}`")]
    UnexpectedChar { span: Span, ch: char },
    #[error("{span}: integer literal `{text}` does not fit in 64 bits")]
    IntegerOverflow { span: Span, text: String },
}

impl LexError {
    pub fn span(&self) -> Span {
        match self {
            LexError::UnexpectedChar { span, .. } | LexError::IntegerOverflow { span, .. } => *span,
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: u32,
    col: u32,
    tokens: Vec<Token>,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn peek_second(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next().map(|(_, c)| c)
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map_or(self.src.len(), |&(i, _)| i)
    }

    fn push(&mut self, kind: TokenKind, span: Span) {
        self.tokens.push(Token { kind, span });
    }

    /// A `-` directly before a digit is a sign unless the previous token ends
    /// an operand, in which case it is subtraction (`3-2`, but `[d:-2]`).
    fn minus_is_sign(&self) -> bool {
        !matches!(
            self.tokens.last().map(|t| &t.kind),
            Some(TokenKind::Int(_) | TokenKind::Ident(_) | TokenKind::RParen)
        )
    }

    fn number(&mut self, span: Span) -> Result<(), LexError> {
        let negative = matches!(self.peek(), Some('-' | '\u{2212}'));
        if negative {
            self.bump();
        }
        let start = self.offset();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let digits = &self.src[start..self.offset()];
        let text = if negative { format!("-{digits}") } else { digits.to_owned() };
        let n = text
            .parse::<i64>()
            .map_err(|_| LexError::IntegerOverflow { span, text: text.clone() })?;
        self.push(TokenKind::Int(n), span);
        Ok(())
    }

    fn word(&mut self, span: Span) {
        let start = self.offset();
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        let text = &self.src[start..self.offset()];
        let kind = if text == "INF" && matches!(self.peek(), Some('-' | '+')) {
            match self.bump() {
                Some('-') => TokenKind::InfMinus,
                _ => TokenKind::InfPlus,
            }
        } else if let Some(k) = Keyword::from_word(text) {
            TokenKind::Keyword(k)
        } else if let Some(op) = Operator::from_keyword(text) {
            TokenKind::Operator(op)
        } else {
            TokenKind::Ident(text.to_owned())
        };
        self.push(kind, span);
    }

    fn run(mut self) -> Result<Vec<Token>, LexError> {
        while let Some(c) = self.peek() {
            let span = Span { line: self.line, col: self.col };
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            if c == '/' && self.peek_second() == Some('/') {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
                continue;
            }
            if c.is_ascii_digit()
                || (matches!(c, '-' | '\u{2212}') && self.peek_second().is_some_and(|d| d.is_ascii_digit()) && self.minus_is_sign())
            {
                self.number(span)?;
                continue;
            }
            if c.is_ascii_alphabetic() {
                self.word(span);
                continue;
            }
            let kind = match c {
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ':' => TokenKind::Colon,
                ',' => TokenKind::Comma,
                ';' => TokenKind::Semicolon,
                '+' => TokenKind::Plus,
                '-' | '\u{2212}' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '=' => TokenKind::Assign,
                other => return Err(LexError::UnexpectedChar { span, ch: other }),
            };
            self.bump();
            self.push(kind, span);
        }
        let span = Span { line: self.line, col: self.col };
        self.push(TokenKind::Eof, span);
        Ok(self.tokens)
    }
}

/// Splits source text into tokens. The returned vector always ends with an
/// `Eof` token.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    Lexer {
        chars: source.char_indices().peekable(),
        src: source,
        line: 1,
        col: 1,
        tokens: Vec::new(),
    }
    .run()
}
