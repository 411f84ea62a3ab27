//! Pretty-printing in the input grammar, so printed tensors parse back to
//! themselves. Terms are sorted by (x-exponent, y-exponent, basis symbol).

use num_traits::{One, Signed, Zero};

use crate::jets::{Jet1, Jet2, LaurentJet, LaurentJet2};
use crate::tensors::{HalfLineTensor, QuadrantTensor};
use crate::Rational;

/// Writes `Σ c·Π var^e`; factors with exponent 0 are dropped.
pub fn format_sum<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (Vec<(&'a str, i64)>, Rational)>,
{
    let mut out = String::new();
    for (factors, c) in terms {
        if c.is_zero() {
            continue;
        }
        let factors: Vec<String> = factors
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut parts = Vec::with_capacity(factors.len() + 1);
        if !a.is_one() || factors.is_empty() {
            parts.push(a.to_string());
        }
        parts.extend(factors);
        out.push_str(&parts.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_laurent(j: &LaurentJet<Rational>, var: &str) -> String {
    format_sum(j.terms().map(|(d, c)| (vec![(var, d)], c.clone())))
}

pub fn format_jet1(j: &Jet1<Rational>, var: &str) -> String {
    format_sum(
        j.coeffs()
            .iter()
            .enumerate()
            .map(|(d, c)| (vec![(var, d as i64)], c.clone())),
    )
}

pub fn format_laurent2(j: &LaurentJet2<Rational>, vars: (&str, &str)) -> String {
    format_sum(j.terms().map(|((a, b), c)| (vec![(vars.0, a), (vars.1, b)], c.clone())))
}

pub fn format_jet2(j: &Jet2<Rational>, vars: (&str, &str)) -> String {
    format_sum(
        j.terms()
            .map(|((a, b), c)| (vec![(vars.0, a as i64), (vars.1, b as i64)], c.clone())),
    )
}

pub fn format_halfline(t: &HalfLineTensor<Rational>) -> String {
    let k = t.degree() as i64;
    let body = format_sum(t.coeff().terms().map(|(d, c)| (vec![("x", d), ("dx", k)], c.clone())));
    if t.coeff().is_zero() && k > 0 {
        format!("0*dx^{k}")
    } else {
        body
    }
}

pub fn format_quadrant(t: &QuadrantTensor<Rational>) -> String {
    let bases: [&[(&str, i64)]; 3] = [&[("dx", 2)], &[("dy", 2)], &[("dx", 1), ("dy", 1)]];
    let mut terms: Vec<((i64, i64, usize), Rational)> = Vec::new();
    for (rank, comp) in [t.a(), t.b(), t.c()].into_iter().enumerate() {
        terms.extend(comp.terms().map(|((i, j), c)| ((i, j, rank), c.clone())));
    }
    terms.sort_by_key(|a| a.0);
    if terms.is_empty() {
        return "0*dx^2".into();
    }
    format_sum(terms.into_iter().map(|((i, j, rank), c)| {
        let mut f = vec![("x", i), ("y", j)];
        f.extend_from_slice(bases[rank]);
        (f, c)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse::{parse_halfline, parse_quadrant};
    use crate::tensors::tau_sing;

    #[test]
    fn halfline_forms() {
        assert_eq!(format_halfline(&tau_sing()), "x^-1*dx^2");
        let t = parse_halfline("(1/x + 3 + x)*dx^2", 16).unwrap();
        assert_eq!(format_halfline(&t), "x^-1*dx^2 + 3*dx^2 + x*dx^2");
        let t = parse_halfline("(-1/2)*x^2*dx - x^3*dx", 16).unwrap();
        assert_eq!(format_halfline(&t), "-1/2*x^2*dx - x^3*dx");
        assert_eq!(parse_halfline(&format_halfline(&t), 16).unwrap(), t);
        assert_eq!(format_halfline(&parse_halfline("0*dx^2", 16).unwrap()), "0*dx^2");
        assert_eq!(format_halfline(&parse_halfline("x - 1", 16).unwrap()), "-1 + x");
    }

    #[test]
    fn quadrant_forms() {
        let t = parse_quadrant("(y^2/x)*dx^2 + (1/y)*dy^2 + x*y*dx*dy", 16).unwrap();
        let s = format_quadrant(&t);
        assert_eq!(s, "x^-1*y^2*dx^2 + y^-1*dy^2 + x*y*dx*dy");
        assert_eq!(parse_quadrant(&s, 16).unwrap(), t);
    }
}
