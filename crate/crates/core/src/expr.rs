//! Polynomial expressions over named symbols.
//!
//! Used for differentials of free presentations, CLI arguments like
//! `"x6^2"` or `"a1*b1 + a2*b2"`, and the JSON wire format. A term is a
//! rational coefficient times a monomial in named factors; factors resolve
//! to basis elements when an expression is evaluated inside a table.

use crate::dga::{Element, TableDga};
use crate::error::{DgaError, Result};
use crate::rational::{parse_rat, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub monomial: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub terms: Vec<(Rat, Vec<(String, u32)>)>,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_zero())
    }

    pub fn to_wire(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(c, m)| Term {
                coeff: crate::rational::format_rat(c),
                monomial: m.clone(),
            })
            .collect()
    }

    pub fn from_wire(terms: &[Term]) -> Result<Expr> {
        let mut out = Vec::new();
        for t in terms {
            let c = parse_rat(&t.coeff).map_err(DgaError::Parse)?;
            out.push((c, t.monomial.clone()));
        }
        Ok(Expr { terms: out })
    }

    /// Evaluates inside a table by resolving each factor as a basis label
    /// and multiplying through the structure constants. All terms must land
    /// in a common degree.
    pub fn evaluate(&self, dga: &TableDga) -> Result<Element> {
        let mut acc: Option<Element> = None;
        for (coeff, monomial) in &self.terms {
            let mut val = dga.unit();
            for (name, exp) in monomial {
                let factor = dga.element_by_label(name).ok_or_else(|| {
                    DgaError::Parse(format!("unknown basis label {name:?} in expression"))
                })?;
                for _ in 0..*exp {
                    val = dga.multiply(&val, &factor)?;
                }
            }
            let val = val.scaled(coeff);
            match &mut acc {
                None => acc = Some(val),
                Some(a) => {
                    if a.degree != val.degree {
                        return Err(DgaError::DegreeMismatch(format!(
                            "expression mixes degrees {} and {}",
                            a.degree, val.degree
                        )));
                    }
                    a.add_assign(&val);
                }
            }
        }
        acc.ok_or_else(|| DgaError::Parse("empty expression".into()))
    }
}

/// Parses `term (('+'|'-') term)*` where a term is `factor ('*' factor)*`,
/// a factor is a rational literal or `name['^' exponent]`, and purely
/// numeric factors multiply into the coefficient.
pub fn parse_expr(input: &str) -> Result<Expr> {
    let mut terms = Vec::new();
    let mut rest = input.trim();
    if rest.is_empty() {
        return Err(DgaError::Parse("empty expression".into()));
    }
    let mut sign = Rat::one();
    // leading sign
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let (term, remainder) = parse_term(rest)?;
        let (mut c, m) = term;
        c *= &sign;
        terms.push((c, m));
        rest = remainder.trim_start();
        if rest.is_empty() {
            break;
        }
        if let Some(r) = rest.strip_prefix('+') {
            sign = Rat::one();
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -Rat::one();
            rest = r.trim_start();
        } else {
            return Err(DgaError::Parse(format!("unexpected input at {rest:?}")));
        }
    }
    Ok(Expr { terms })
}

type ParsedTerm = (Rat, Vec<(String, u32)>);

fn parse_term(input: &str) -> Result<(ParsedTerm, &str)> {
    let mut coeff = Rat::one();
    let mut monomial: Vec<(String, u32)> = Vec::new();
    let mut rest = input;
    loop {
        let (factor, remainder) = parse_factor(rest)?;
        match factor {
            Factor::Number(c) => coeff *= c,
            Factor::Symbol(name, exp) => {
                if let Some(entry) = monomial.iter_mut().find(|(n, _)| *n == name) {
                    entry.1 += exp;
                } else {
                    monomial.push((name, exp));
                }
            }
        }
        rest = remainder.trim_start();
        if let Some(r) = rest.strip_prefix('*') {
            rest = r.trim_start();
        } else {
            break;
        }
    }
    Ok(((coeff, monomial), rest))
}

enum Factor {
    Number(Rat),
    Symbol(String, u32),
}

fn parse_factor(input: &str) -> Result<(Factor, &str)> {
    let input = input.trim_start();
    let mut chars = input.char_indices();
    let Some((_, first)) = chars.next() else {
        return Err(DgaError::Parse("expected a factor".into()));
    };
    if first.is_ascii_digit() {
        // number, possibly p/q
        let end = input
            .find(|c: char| !(c.is_ascii_digit() || c == '/'))
            .unwrap_or(input.len());
        let c = parse_rat(&input[..end]).map_err(DgaError::Parse)?;
        return Ok((Factor::Number(c), &input[end..]));
    }
    if !(first.is_alphabetic() || first == '_') {
        return Err(DgaError::Parse(format!("unexpected character {first:?}")));
    }
    let end = input
        .find(|c: char| !(c.is_alphanumeric() || c == '_'))
        .unwrap_or(input.len());
    let name = input[..end].to_string();
    let mut rest = &input[end..];
    let mut exp = 1u32;
    if let Some(r) = rest.strip_prefix('^') {
        let num_end = r
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(r.len());
        exp = r[..num_end]
            .parse()
            .map_err(|_| DgaError::Parse(format!("bad exponent in {input:?}")))?;
        rest = &r[num_end..];
    }
    Ok((Factor::Symbol(name, exp), rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn parses_monomials_and_sums() {
        let e = parse_expr("x6^2").unwrap();
        assert_eq!(e.terms, vec![(rat_int(1), vec![("x6".into(), 2)])]);

        let e = parse_expr("a1*b1 + a2*b2").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].1, vec![("a1".into(), 1), ("b1".into(), 1)]);

        let e = parse_expr("-3/2*t11 + x6*x10").unwrap();
        assert_eq!(e.terms[0].0, rat(-3, 2));

        let e = parse_expr("2*a*a").unwrap();
        assert_eq!(e.terms[0].1, vec![("a".into(), 2)]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("").is_err());
        assert!(parse_expr("a +").is_err());
        assert!(parse_expr("1/0*a").is_err());
        assert!(parse_expr("a b").is_err());
    }
}
