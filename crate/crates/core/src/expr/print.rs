use std::fmt::Write;

use super::{Atom, Chart, ScalarExpr, Term};

impl ScalarExpr {
    /// Renders the canonical form in the input grammar, using the chart's
    /// coordinate names. `parse(to_text(e)) == e`.
    pub fn to_text(&self, chart: &Chart) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, t) in self.terms().iter().enumerate() {
            let s = term_text(t, chart);
            if n == 0 {
                out.push_str(&s);
            } else if let Some(rest) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&s);
            }
        }
        out
    }
}

fn term_text(t: &Term, chart: &Chart) -> String {
    let factors = t.mono.factors();
    if factors.is_empty() {
        return t.coeff.to_string();
    }
    let mut s = String::new();
    if t.coeff.is_one() {
    } else if (-&t.coeff).is_one() {
        s.push('-');
    } else {
        write!(s, "{}*", t.coeff).unwrap();
    }
    for (n, (a, k)) in factors.iter().enumerate() {
        if n > 0 {
            s.push('*');
        }
        match a {
            Atom::Recip(p) => {
                write!(s, "({})^-{}", p.to_text(chart), k).unwrap();
                continue;
            }
            Atom::Coord(mu) => s.push_str(&chart.names()[*mu as usize]),
            Atom::Param(p) if p.conj => write!(s, "conj({})", p.name).unwrap(),
            Atom::Param(p) => s.push_str(&p.name),
            Atom::Sin(u) => write!(s, "sin({})", u.to_text(chart)).unwrap(),
            Atom::Cos(u) => write!(s, "cos({})", u.to_text(chart)).unwrap(),
            Atom::Exp(u) => write!(s, "exp({})", u.to_text(chart)).unwrap(),
        }
        if *k != 1 {
            write!(s, "^{k}").unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::super::{parse, ParamKind, SymbolTable};

    #[test]
    fn round_trips() {
        let syms = SymbolTable::default().with_param("k", ParamKind::Real).with_param("a1", ParamKind::Complex);
        for src in [
            "0",
            "-1/2",
            "(1/2-3*i)*x*conj(a1)^2 - t",
            "2*t + x^2",
            "k*cos(k*x) - i*exp(2*t - y)",
            "1/(1 + x^2) + t^-3",
            "sin(x)^2 + cos(x)^2",
        ] {
            let e = parse(src, &syms).unwrap();
            let text = e.to_text(&syms.chart);
            assert_eq!(parse(&text, &syms).unwrap(), e, "{src} -> {text}");
        }
    }
}
