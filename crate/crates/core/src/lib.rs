//! Typed tag sets, contexts as first-class values and the context calculus,
//! fronted by a small declaration/expression language.
//!
//! * [`tagset`]: the four tag-set kinds and set inclusion.
//! * [`context`]: micro contexts, simple contexts, context sets.
//! * [`calculus`]: the seven operators.
//! * [`lang`]: lexer, parser and static checker for `.ctx` sources.
//! * [`eval`]: evaluation with deferred (dynamic) tag checks.
//! * [`render`]: structured (JSON) records for values.

pub mod calculus;
pub mod context;
pub mod eval;
pub mod lang;
pub mod render;
pub mod tagset;
