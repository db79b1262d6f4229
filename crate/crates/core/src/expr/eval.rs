use std::collections::BTreeMap;

use num_complex::Complex64;

use super::parse::{ExprTree, Func};
use super::{Atom, ExprError, ScalarExpr};

/// Numeric values for named parameters.
pub type ParamValues = BTreeMap<String, Complex64>;

fn check(v: Complex64, point: &[f64; 4]) -> Result<Complex64, ExprError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(ExprError::Overflow { point: *point })
    }
}

fn lookup(params: &ParamValues, name: &str) -> Result<Complex64, ExprError> {
    params.get(name).copied().ok_or_else(|| ExprError::UnboundParameter(name.to_string()))
}

impl ScalarExpr {
    /// Numeric value at a chart point.
    pub fn eval(&self, point: &[f64; 4], params: &ParamValues) -> Result<Complex64, ExprError> {
        let mut sum = Complex64::new(0.0, 0.0);
        for t in self.terms() {
            let mut v = t.coeff.to_complex64();
            for (a, k) in t.mono.factors() {
                let base = match a {
                    Atom::Coord(mu) => Complex64::new(point[*mu as usize], 0.0),
                    Atom::Param(p) => {
                        let z = lookup(params, &p.name)?;
                        if p.conj {
                            z.conj()
                        } else {
                            z
                        }
                    }
                    Atom::Sin(u) => u.eval(point, params)?.sin(),
                    Atom::Cos(u) => u.eval(point, params)?.cos(),
                    Atom::Exp(u) => u.eval(point, params)?.exp(),
                    Atom::Recip(u) => {
                        let d = u.eval(point, params)?;
                        Complex64::new(1.0, 0.0) / d
                    }
                };
                v *= base.powi(*k);
            }
            sum += check(v, point)?;
        }
        check(sum, point)
    }
}

impl ExprTree {
    /// Direct evaluation of the parse tree, independent of canonicalization.
    pub fn eval(&self, point: &[f64; 4], params: &ParamValues) -> Result<Complex64, ExprError> {
        let v = match self {
            ExprTree::Num(c) => c.to_complex64(),
            ExprTree::Coord(mu) => Complex64::new(point[*mu], 0.0),
            ExprTree::Param(n, _) => lookup(params, n)?,
            ExprTree::Add(a, b) => a.eval(point, params)? + b.eval(point, params)?,
            ExprTree::Sub(a, b) => a.eval(point, params)? - b.eval(point, params)?,
            ExprTree::Mul(a, b) => a.eval(point, params)? * b.eval(point, params)?,
            ExprTree::Div(a, b) => a.eval(point, params)? / b.eval(point, params)?,
            ExprTree::Neg(a) => -a.eval(point, params)?,
            ExprTree::Pow(a, n) => a.eval(point, params)?.powi(*n),
            ExprTree::Call(f, a) => {
                let u = a.eval(point, params)?;
                match f {
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Exp => u.exp(),
                    Func::Conj => u.conj(),
                }
            }
        };
        check(v, point)
    }
}
