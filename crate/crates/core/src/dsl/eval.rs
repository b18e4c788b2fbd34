use std::borrow::Cow;

use super::typecheck::{Env, TypeError, TypedExpr, TypedNode};
use crate::color::ColorVec;
use crate::image::{ImagePlane, LogVector, Pixel};

/// Constants are never materialized until the top level; a constant operand
/// meeting an image is applied per sample, which produces the same bits as
/// combining with the equivalent constant image.
enum Value<'a> {
    Image(Cow<'a, ImagePlane>),
    Const(Pixel),
}

#[derive(Clone, Copy)]
enum Binary {
    Add,
    Sub,
}

impl Binary {
    fn apply<T: LogVector>(self, a: T, b: T) -> T {
        match self {
            Binary::Add => a + b,
            Binary::Sub => a - b,
        }
    }

    fn images(self, a: &ImagePlane, b: &ImagePlane) -> ImagePlane {
        match self {
            Binary::Add => a.add(b),
            Binary::Sub => a.sub(b),
        }
        .expect("operands were typechecked")
    }

    fn pixels(self, a: Pixel, b: Pixel) -> Pixel {
        match (a, b) {
            (Pixel::Gray(a), Pixel::Gray(b)) => Pixel::Gray(self.apply(a, b)),
            (Pixel::Color(a), Pixel::Color(b)) => Pixel::Color(self.apply(a, b)),
            _ => unreachable!("operands were typechecked"),
        }
    }

    fn with_const(self, img: &ImagePlane, c: Pixel, const_left: bool) -> ImagePlane {
        fn side<T: LogVector>(op: Binary, x: T, c: T, const_left: bool) -> T {
            if const_left {
                op.apply(c, x)
            } else {
                op.apply(x, c)
            }
        }
        match (img, c) {
            (ImagePlane::Gray(p), Pixel::Gray(c)) => {
                ImagePlane::Gray(p.map(|x| side(self, x, c, const_left)))
            }
            (ImagePlane::Color(p), Pixel::Color(c)) => {
                ImagePlane::Color(p.map(|x| side(self, x, c, const_left)))
            }
            _ => unreachable!("operands were typechecked"),
        }
    }
}

#[derive(Clone, Copy)]
enum Unary {
    Neg,
    Scale(f64),
    Pos,
    NegPart,
}

impl Unary {
    fn apply<T: LogVector>(self, x: T) -> T {
        match self {
            Unary::Neg => -x,
            Unary::Scale(lambda) => x.scale(lambda),
            Unary::Pos => x.positive_part(),
            Unary::NegPart => x.negative_part(),
        }
    }

    fn eval(self, v: Value<'_>) -> Value<'static> {
        match v {
            Value::Const(Pixel::Gray(c)) => Value::Const(Pixel::Gray(self.apply(c))),
            Value::Const(Pixel::Color(c)) => Value::Const(Pixel::Color(self.apply(c))),
            Value::Image(img) => Value::Image(Cow::Owned(match self {
                Unary::Neg => img.neg(),
                Unary::Scale(lambda) => img.scale(lambda),
                Unary::Pos => img.pos_part(),
                Unary::NegPart => img.neg_part(),
            })),
        }
    }
}

fn eval<'a>(e: &TypedExpr, env: &'a Env) -> Result<Value<'a>, TypeError> {
    Ok(match &e.node {
        TypedNode::Image(name) => Value::Image(Cow::Borrowed(env.image(name, e.kind)?)),
        TypedNode::Const(c) => Value::Const(*c),
        TypedNode::Broadcast(inner) => match eval(inner, env)? {
            Value::Const(Pixel::Gray(c)) => Value::Const(Pixel::Color(ColorVec::broadcast(c))),
            _ => unreachable!("only gray constants are broadcast"),
        },
        TypedNode::Add(l, r) | TypedNode::Sub(l, r) => {
            let op = if matches!(e.node, TypedNode::Add(..)) { Binary::Add } else { Binary::Sub };
            match (eval(l, env)?, eval(r, env)?) {
                (Value::Image(a), Value::Image(b)) => Value::Image(Cow::Owned(op.images(&a, &b))),
                (Value::Image(a), Value::Const(c)) => Value::Image(Cow::Owned(op.with_const(&a, c, false))),
                (Value::Const(c), Value::Image(b)) => Value::Image(Cow::Owned(op.with_const(&b, c, true))),
                (Value::Const(a), Value::Const(b)) => Value::Const(op.pixels(a, b)),
            }
        }
        TypedNode::Neg(inner) => Unary::Neg.eval(eval(inner, env)?),
        TypedNode::Scale(lambda, inner) => Unary::Scale(*lambda).eval(eval(inner, env)?),
        TypedNode::PosPart(inner) => Unary::Pos.eval(eval(inner, env)?),
        TypedNode::NegPart(inner) => Unary::NegPart.eval(eval(inner, env)?),
    })
}

/// Evaluate a checked expression. A result that does not depend on any image
/// is spread over the shape of `f`.
pub fn evaluate(e: &TypedExpr, env: &Env) -> Result<ImagePlane, TypeError> {
    Ok(match eval(e, env)? {
        Value::Image(img) => img.into_owned(),
        Value::Const(c) => {
            let (w, h) = env.input().dims();
            ImagePlane::constant(w, h, c).expect("input image is non-empty")
        }
    })
}
