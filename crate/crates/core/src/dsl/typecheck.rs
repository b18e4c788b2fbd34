use std::collections::HashMap;

use thiserror::Error;

use super::ast::Expr;
use crate::color::ColorVec;
use crate::gray::GrayLevel;
use crate::image::{ImagePlane, Kind, Pixel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("kind mismatch at {path}: cannot combine {left} with {right}")]
    KindMismatch {
        path: String,
        left: String,
        right: String,
    },
    #[error("image `{name}` is {found:?} but `f` is {expected:?}")]
    ShapeMismatch {
        name: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("`f` is reserved for the input image")]
    Reserved,
    #[error("gray constant {0} is outside (-1, 1)")]
    BadConstant(String),
}

/// What a name in an expression stands for.
#[derive(Debug, Clone, PartialEq)]
pub enum Binding {
    Image(ImagePlane),
    Gray(GrayLevel),
    Color(ColorVec),
}

impl From<ImagePlane> for Binding {
    fn from(f: ImagePlane) -> Self {
        Binding::Image(f)
    }
}

impl From<GrayLevel> for Binding {
    fn from(v: GrayLevel) -> Self {
        Binding::Gray(v)
    }
}

impl From<ColorVec> for Binding {
    fn from(v: ColorVec) -> Self {
        Binding::Color(v)
    }
}

/// Evaluation environment; `f` is always the input image.
#[derive(Debug, Clone)]
pub struct Env {
    bindings: HashMap<String, Binding>,
}

impl Env {
    pub fn new(input: ImagePlane) -> Self {
        let mut bindings = HashMap::new();
        bindings.insert("f".to_string(), Binding::Image(input));
        Env { bindings }
    }

    pub fn input(&self) -> &ImagePlane {
        match &self.bindings["f"] {
            Binding::Image(f) => f,
            _ => unreachable!("`f` can only be bound by Env::new"),
        }
    }

    pub fn bind(&mut self, name: impl Into<String>, value: impl Into<Binding>) -> Result<(), TypeError> {
        let name = name.into();
        if name == "f" {
            return Err(TypeError::Reserved);
        }
        self.bindings.insert(name, value.into());
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, value: impl Into<Binding>) -> Result<Self, TypeError> {
        self.bind(name, value)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }

    /// The image bound to `name`, checked against the input's kind and shape.
    pub(crate) fn image(&self, name: &str, kind: Kind) -> Result<&ImagePlane, TypeError> {
        match self.get(name) {
            Some(Binding::Image(img)) => {
                let (expected, found) = (self.input().dims(), img.dims());
                if expected != found {
                    return Err(TypeError::ShapeMismatch {
                        name: name.to_string(),
                        expected,
                        found,
                    });
                }
                if img.kind() != kind {
                    return Err(TypeError::KindMismatch {
                        path: name.to_string(),
                        left: format!("{kind} image"),
                        right: format!("{} image", img.kind()),
                    });
                }
                Ok(img)
            }
            _ => Err(TypeError::UnboundVariable(name.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypedNode {
    Image(String),
    Const(Pixel),
    /// Gray constant promoted to a color constant.
    Broadcast(Box<TypedExpr>),
    Add(Box<TypedExpr>, Box<TypedExpr>),
    Sub(Box<TypedExpr>, Box<TypedExpr>),
    Neg(Box<TypedExpr>),
    Scale(f64, Box<TypedExpr>),
    PosPart(Box<TypedExpr>),
    NegPart(Box<TypedExpr>),
}

/// Expression annotated with its sample kind and whether it depends on any
/// image at all.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedExpr {
    pub node: TypedNode,
    pub kind: Kind,
    pub constant: bool,
}

impl TypedExpr {
    fn describe(&self) -> String {
        let what = if self.constant { "constant" } else { "image" };
        format!("{} {what}", self.kind)
    }

    fn broadcast(self) -> TypedExpr {
        TypedExpr {
            node: TypedNode::Broadcast(Box::new(self)),
            kind: Kind::Color,
            constant: true,
        }
    }

    fn wrap(node: impl FnOnce(Box<TypedExpr>) -> TypedNode, inner: TypedExpr) -> TypedExpr {
        let (kind, constant) = (inner.kind, inner.constant);
        TypedExpr {
            node: node(Box::new(inner)),
            kind,
            constant,
        }
    }
}

fn gray_const(v: f64) -> Result<GrayLevel, TypeError> {
    GrayLevel::new(v).map_err(|_| TypeError::BadConstant(v.to_string()))
}

fn leaf(name: &str, env: &Env) -> Result<TypedExpr, TypeError> {
    let (node, kind, constant) = match env.get(name) {
        None => return Err(TypeError::UnboundVariable(name.to_string())),
        Some(Binding::Image(img)) => {
            env.image(name, img.kind())?;
            (TypedNode::Image(name.to_string()), img.kind(), false)
        }
        Some(Binding::Gray(v)) => (TypedNode::Const(Pixel::Gray(*v)), Kind::Gray, true),
        Some(Binding::Color(v)) => (TypedNode::Const(Pixel::Color(*v)), Kind::Color, true),
    };
    Ok(TypedExpr {
        node,
        kind,
        constant,
    })
}

fn check(e: &Expr, env: &Env, path: &str) -> Result<TypedExpr, TypeError> {
    let child = |suffix: &str| format!("{path}.{suffix}");
    Ok(match e {
        Expr::Var(name) => leaf(name, env)?,
        Expr::Gray(v) => TypedExpr {
            node: TypedNode::Const(Pixel::Gray(gray_const(*v)?)),
            kind: Kind::Gray,
            constant: true,
        },
        Expr::Color([r, g, b]) => TypedExpr {
            node: TypedNode::Const(Pixel::Color(ColorVec::from_levels(
                gray_const(*r)?,
                gray_const(*g)?,
                gray_const(*b)?,
            ))),
            kind: Kind::Color,
            constant: true,
        },
        Expr::Add(l, r) | Expr::Sub(l, r) => {
            let mut lt = check(l, env, &child("lhs"))?;
            let mut rt = check(r, env, &child("rhs"))?;
            match (lt.kind, rt.kind) {
                (a, b) if a == b => {}
                (Kind::Gray, Kind::Color) if lt.constant => lt = lt.broadcast(),
                (Kind::Color, Kind::Gray) if rt.constant => rt = rt.broadcast(),
                _ => {
                    return Err(TypeError::KindMismatch {
                        path: path.to_string(),
                        left: lt.describe(),
                        right: rt.describe(),
                    })
                }
            }
            let (kind, constant) = (lt.kind, lt.constant && rt.constant);
            let (lb, rb) = (Box::new(lt), Box::new(rt));
            TypedExpr {
                node: if matches!(e, Expr::Add(..)) {
                    TypedNode::Add(lb, rb)
                } else {
                    TypedNode::Sub(lb, rb)
                },
                kind,
                constant,
            }
        }
        Expr::Neg(inner) => TypedExpr::wrap(TypedNode::Neg, check(inner, env, &child("operand"))?),
        Expr::Scale(lambda, inner) => {
            let lambda = *lambda;
            TypedExpr::wrap(|b| TypedNode::Scale(lambda, b), check(inner, env, &child("operand"))?)
        }
        Expr::PosPart(name) => TypedExpr::wrap(TypedNode::PosPart, leaf(name, env)?),
        Expr::NegPart(name) => TypedExpr::wrap(TypedNode::NegPart, leaf(name, env)?),
    })
}

/// Assign kinds, promote gray constants that meet color operands, and
/// resolve names against `env`.
pub fn typecheck(e: &Expr, env: &Env) -> Result<TypedExpr, TypeError> {
    check(e, env, "root")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn gray_env() -> Env {
        Env::new(ImagePlane::constant(3, 2, GrayLevel::new(0.2).unwrap()).unwrap())
    }

    fn color_env() -> Env {
        Env::new(ImagePlane::constant(3, 2, ColorVec::new(0.1, 0.2, 0.3).unwrap()).unwrap())
    }

    fn tc(text: &str, env: &Env) -> Result<TypedExpr, TypeError> {
        typecheck(&parse(text).unwrap(), env)
    }

    fn has_broadcast(t: &TypedExpr) -> bool {
        match &t.node {
            TypedNode::Broadcast(_) => true,
            TypedNode::Image(_) | TypedNode::Const(_) => false,
            TypedNode::Add(l, r) | TypedNode::Sub(l, r) => has_broadcast(l) || has_broadcast(r),
            TypedNode::Neg(e) | TypedNode::Scale(_, e) | TypedNode::PosPart(e) | TypedNode::NegPart(e) => {
                has_broadcast(e)
            }
        }
    }

    #[test]
    fn gray_input_stays_gray() {
        let t = tc("f <+> 0.5", &gray_env()).unwrap();
        assert_eq!(t.kind, Kind::Gray);
        assert!(!t.constant);
        assert!(!has_broadcast(&t));
    }

    #[test]
    fn gray_constant_broadcasts_over_color() {
        let t = tc("f <+> 0.5", &color_env()).unwrap();
        assert_eq!(t.kind, Kind::Color);
        let TypedNode::Add(_, r) = &t.node else { panic!("{t:?}") };
        let TypedNode::Broadcast(inner) = &r.node else { panic!("{r:?}") };
        assert_eq!(inner.node, TypedNode::Const(Pixel::Gray(GrayLevel::new(0.5).unwrap())));
        assert!(has_broadcast(&tc("0.2 <-> 2 <x> f", &color_env()).unwrap()));
    }

    #[test]
    fn color_constant_with_gray_image_is_rejected() {
        let err = tc("f <+> (0.1, 0.2, 0.3)", &gray_env()).unwrap_err();
        assert!(matches!(err, TypeError::KindMismatch { ref path, .. } if path == "root"), "{err}");
        let err = tc("<-> (f <-> v)", &gray_env().with("v", ColorVec::ZERO).unwrap()).unwrap_err();
        assert!(matches!(err, TypeError::KindMismatch { ref path, .. } if path == "root.operand"));
    }

    #[test]
    fn gray_image_with_color_image_is_rejected() {
        let env = color_env().with("g", ImagePlane::zero(3, 2, Kind::Gray).unwrap()).unwrap();
        assert!(matches!(tc("f <+> g", &env), Err(TypeError::KindMismatch { .. })));
    }

    #[test]
    fn unbound_and_shape_errors() {
        assert_eq!(tc("f <-> I_G", &gray_env()), Err(TypeError::UnboundVariable("I_G".into())));
        assert_eq!(tc("h_+", &gray_env()), Err(TypeError::UnboundVariable("h".into())));
        let env = gray_env().with("I_G", ImagePlane::zero(2, 2, Kind::Gray).unwrap()).unwrap();
        assert!(matches!(tc("f <-> I_G", &env), Err(TypeError::ShapeMismatch { ref name, .. }) if name == "I_G"));
    }

    #[test]
    fn input_name_is_reserved() {
        let mut env = gray_env();
        assert_eq!(env.bind("f", GrayLevel::ZERO), Err(TypeError::Reserved));
    }

    #[test]
    fn constant_flag_propagates() {
        let env = color_env().with("v", ColorVec::new(0.449, -0.241, -0.164).unwrap()).unwrap();
        let t = tc("2.5 <x> (f <-> 0.7 <x> v)", &env).unwrap();
        assert!(!t.constant);
        let TypedNode::Scale(_, inner) = &t.node else { panic!() };
        let TypedNode::Sub(_, r) = &inner.node else { panic!() };
        assert!(r.constant && r.kind == Kind::Color);
    }
}
