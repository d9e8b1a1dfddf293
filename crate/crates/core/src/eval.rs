//! Evaluation of parsed programs.
//!
//! Context literals are instantiated here, which is where tags computed by
//! arithmetic get their tag-set check.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::calculus::{self, CalculusError, Operator};
use crate::context::{make_micro, ContextError, ContextSet, ContextValue, Dimension, Dimensions, DimensionSet, SimpleContext};
use crate::lang::{ArithOp, Checker, ContextLit, Declaration, Expr, ExprKind, Item, Program, Span, StaticKind, TagExpr};
use crate::tagset::{Ident, TagValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("arithmetic overflow in `{left} {op} {right}`")]
    ArithmeticOverflow { op: ArithOp, left: i64, right: i64 },
    #[error("type error: `{op}` needs integer operands, found `{operand}`")]
    TypeError { op: ArithOp, operand: TagValue },
    #[error("unknown name `{0}`")]
    UnknownBinding(String),
    #[error("`{0}` is already bound")]
    Rebinding(Ident),
    #[error("operand of `{op}` must be a context, found a {found}")]
    NotAContext { op: Operator, found: &'static str },
    #[error("right operand of `{op}` must be a dimension set, found a {found}")]
    ExpectedDimensionSet { op: Operator, found: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Boolean(bool),
    Context(ContextValue),
    DimSet(DimensionSet),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Boolean(_) => "boolean",
            Value::Context(ContextValue::Simple(_)) => "simple context",
            Value::Context(ContextValue::Set(_)) => "context set",
            Value::DimSet(_) => "dimension set",
        }
    }

    pub fn static_kind(&self) -> StaticKind {
        match self {
            Value::Boolean(_) => StaticKind::Boolean,
            Value::Context(c) => c.kind().into(),
            Value::DimSet(_) => StaticKind::DimSet,
        }
    }
}

impl From<ContextValue> for Value {
    fn from(c: ContextValue) -> Self {
        Value::Context(c)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Boolean(b) => write!(f, "{b}"),
            Value::Context(c) => write!(f, "{c}"),
            Value::DimSet(d) => write!(f, "{d}"),
        }
    }
}

/// Declared dimensions plus single-assignment bindings.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    pub dimensions: Dimensions,
    pub bindings: BTreeMap<Ident, Value>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, d: &Declaration) -> Result<(), EvalError> {
        self.dimensions
            .declare(Dimension::new(d.name.clone(), d.tag_set()))
            .map_err(EvalError::from)
    }

    pub fn bind(&mut self, name: Ident, value: Value) -> Result<(), EvalError> {
        if self.bindings.contains_key(&name) {
            return Err(EvalError::Rebinding(name));
        }
        self.bindings.insert(name, value);
        Ok(())
    }

    /// A static checker that knows about everything declared and bound so far.
    pub fn checker(&self) -> Checker {
        let kinds = self
            .bindings
            .iter()
            .map(|(n, v)| (n.clone(), v.static_kind()))
            .collect();
        Checker::new(self.dimensions.clone(), kinds)
    }
}

/// Outcome of one program item. Declarations only show up here when they fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementResult {
    /// Position of the item in the program.
    pub index: usize,
    pub span: Span,
    pub binding: Option<Ident>,
    pub outcome: Result<Value, EvalError>,
}

fn arith(op: ArithOp, left: i64, right: i64) -> Result<i64, EvalError> {
    let result = match op {
        ArithOp::Add => left.checked_add(right),
        ArithOp::Sub => left.checked_sub(right),
        ArithOp::Mul => left.checked_mul(right),
    };
    result.ok_or(EvalError::ArithmeticOverflow { op, left, right })
}

/// Tag expressions are closed: they never refer to bindings.
pub fn eval_tag(e: &TagExpr) -> Result<TagValue, EvalError> {
    match e {
        TagExpr::Int(n) => Ok(TagValue::Int(*n)),
        TagExpr::Symbol(s) => Ok(TagValue::Symbol(s.clone())),
        TagExpr::Arith(op, l, r) => {
            let l = eval_tag(l)?;
            let r = eval_tag(r)?;
            match (&l, &r) {
                (TagValue::Int(a), TagValue::Int(b)) => arith(*op, *a, *b).map(TagValue::Int),
                (TagValue::Symbol(_), _) => Err(EvalError::TypeError { op: *op, operand: l }),
                _ => Err(EvalError::TypeError { op: *op, operand: r }),
            }
        }
    }
}

fn eval_context_lit(env: &Environment, lit: &ContextLit) -> Result<SimpleContext, EvalError> {
    let micros = lit
        .entries
        .iter()
        .map(|entry| {
            let tag = eval_tag(&entry.tag)?;
            Ok(make_micro(&env.dimensions, entry.dimension.as_str(), tag)?)
        })
        .collect::<Result<Vec<_>, EvalError>>()?;
    Ok(SimpleContext::from_micros(micros)?)
}

fn expect_context(op: Operator, v: Value) -> Result<ContextValue, EvalError> {
    match v {
        Value::Context(c) => Ok(c),
        other => Err(EvalError::NotAContext {
            op,
            found: other.kind_name(),
        }),
    }
}

pub fn eval_expr(env: &Environment, e: &Expr) -> Result<Value, EvalError> {
    match &e.kind {
        ExprKind::Context(lit) => Ok(Value::Context(eval_context_lit(env, lit)?.into())),
        ExprKind::ContextSet(members) => {
            let set = members
                .iter()
                .map(|lit| eval_context_lit(env, lit))
                .collect::<Result<ContextSet, _>>()?;
            Ok(Value::Context(set.into()))
        }
        ExprKind::DimSet(names) => Ok(Value::DimSet(names.iter().map(|(n, _)| n.clone()).collect())),
        ExprKind::Ident(name) => env
            .bindings
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnknownBinding(name.to_string())),
        ExprKind::BinOp { op, left, right } => {
            let op = *op;
            let left = expect_context(op, eval_expr(env, left)?)?;
            let right = eval_expr(env, right)?;
            if op.takes_dimension_set() {
                let dims = match right {
                    Value::DimSet(d) => d,
                    other => {
                        return Err(EvalError::ExpectedDimensionSet {
                            op,
                            found: other.kind_name(),
                        })
                    }
                };
                let result = match op {
                    Operator::Projection => calculus::projection(&left, &dims),
                    _ => calculus::hiding(&left, &dims),
                };
                return Ok(result.into());
            }
            let right = expect_context(op, right)?;
            let value = match op {
                Operator::IsSubContext => Value::Boolean(calculus::is_sub_context(&left, &right)?),
                Operator::Difference => calculus::difference(&left, &right)?.into(),
                Operator::Intersection => calculus::intersection(&left, &right)?.into(),
                Operator::Override => calculus::override_with(&left, &right)?.into(),
                Operator::Union => calculus::union(&left, &right)?.into(),
                Operator::Projection | Operator::Hiding => unreachable!("handled above"),
            };
            Ok(value)
        }
    }
}

/// Evaluates every item in order. A failing statement is reported and the
/// remaining statements still run.
pub fn eval_program(env: &mut Environment, program: &Program) -> Vec<StatementResult> {
    let mut results = Vec::new();
    for (index, item) in program.items.iter().enumerate() {
        match item {
            Item::Declaration(d) => {
                if let Err(err) = env.declare(d) {
                    results.push(StatementResult {
                        index,
                        span: d.span,
                        binding: None,
                        outcome: Err(err),
                    });
                }
            }
            Item::Statement(s) => {
                let outcome = eval_expr(env, &s.expr).and_then(|v| match &s.binding {
                    Some(name) => env.bind(name.clone(), v.clone()).map(|_| v),
                    None => Ok(v),
                });
                results.push(StatementResult {
                    index,
                    span: s.span,
                    binding: s.binding.clone(),
                    outcome,
                });
            }
        }
    }
    results
}
