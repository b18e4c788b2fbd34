use std::fmt;

/// Untyped transform expression.
///
/// Scalars on the left of `<x>` are plain reals and live inside [`Expr::Scale`];
/// gray and color constants are stored as raw values so that printing and
/// re-parsing reproduces them exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Gray(f64),
    Color([f64; 3]),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Scale(f64, Box<Expr>),
    PosPart(String),
    NegPart(String),
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: Expr, r: Expr) -> Expr {
        Expr::Add(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(l: Expr, r: Expr) -> Expr {
        Expr::Sub(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    pub fn scale(lambda: f64, e: Expr) -> Expr {
        Expr::Scale(lambda, Box::new(e))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Scale(..) => 1,
            Expr::Neg(_) => 2,
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Var(name) => f.write_str(name),
            Expr::Gray(v) => write!(f, "{v}"),
            Expr::Color([r, g, b]) => write!(f, "({r}, {g}, {b})"),
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                l.write(f, 0)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " <+> " } else { " <-> " })?;
                r.write(f, 1)
            }
            Expr::Scale(lambda, e) => {
                write!(f, "{lambda} <x> ")?;
                e.write(f, 1)
            }
            Expr::Neg(e) => {
                f.write_str("<-> ")?;
                e.write(f, 2)
            }
            Expr::PosPart(name) => write!(f, "{name}_+"),
            Expr::NegPart(name) => write!(f, "{name}_-"),
        }
    }
}

/// Canonical rendering with the fewest parentheses the grammar allows.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

pub fn pretty(e: &Expr) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_minimal_parentheses() {
        assert_eq!(pretty(&Expr::add(Expr::var("f"), Expr::Gray(0.93))), "f <+> 0.93");
        let fig10 = Expr::sub(
            Expr::sub(
                Expr::scale(1.43, Expr::var("f")),
                Expr::scale(1.39, Expr::var("v")),
            ),
            Expr::var("I_G"),
        );
        assert_eq!(pretty(&fig10), "1.43 <x> f <-> 1.39 <x> v <-> I_G");
        assert_eq!(pretty(&Expr::neg(Expr::neg(Expr::var("f")))), "<-> <-> f");
    }

    #[test]
    fn parenthesizes_where_needed() {
        let e = Expr::scale(2.0, Expr::add(Expr::var("f"), Expr::Gray(0.5)));
        assert_eq!(pretty(&e), "2 <x> (f <+> 0.5)");
        let e = Expr::sub(Expr::var("a"), Expr::sub(Expr::var("b"), Expr::var("c")));
        assert_eq!(pretty(&e), "a <-> (b <-> c)");
        let e = Expr::neg(Expr::scale(3.0, Expr::var("f")));
        assert_eq!(pretty(&e), "<-> (3 <x> f)");
        let e = Expr::scale(-0.5, Expr::neg(Expr::PosPart("f".into())));
        assert_eq!(pretty(&e), "-0.5 <x> <-> f_+");
        assert_eq!(pretty(&Expr::Color([0.449, -0.241, -0.164])), "(0.449, -0.241, -0.164)");
    }
}
