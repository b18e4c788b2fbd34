//! Transform expressions over images: `<+>`, `<->`, `<x>` written in ASCII.
//!
//! ```
//! use blip_core::dsl::{parse, typecheck, evaluate, Env};
//! use blip_core::image::ImagePlane;
//! use blip_core::gray::GrayLevel;
//!
//! let f = ImagePlane::constant(2, 2, GrayLevel::new(0.5).unwrap()).unwrap();
//! let env = Env::new(f);
//! let e = parse("2 <x> f").unwrap();
//! let out = evaluate(&typecheck(&e, &env).unwrap(), &env).unwrap();
//! assert!((out.as_gray().unwrap().get(0, 0).value() - 0.8).abs() < 1e-15);
//! ```

mod ast;
mod eval;
mod lexer;
mod parser;
mod typecheck;

use std::fmt;

use thiserror::Error;

pub use ast::{pretty, Expr};
pub use eval::evaluate;
pub use parser::parse;
pub use typecheck::{typecheck, Binding, Env, TypeError, TypedExpr, TypedNode};

use crate::image::ImagePlane;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// 1-based character offset into the source text.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: expected ", self.position)?;
        match self.expected.as_slice() {
            [one] => f.write_str(one)?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Parse, check and evaluate in one step.
pub fn run(text: &str, env: &Env) -> Result<ImagePlane, DslError> {
    let expr = parse(text)?;
    let typed = typecheck(&expr, env)?;
    Ok(evaluate(&typed, env)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_error_message() {
        let e = parse("f <+>").unwrap_err();
        assert_eq!(
            e.to_string(),
            "syntax error at position 6: expected one of identifier, number, `(`, `<->`, found end of input"
        );
    }
}
