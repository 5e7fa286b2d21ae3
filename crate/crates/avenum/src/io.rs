//! cdd-style `.ine` and `.ext` files.
//!
//! An H-file row `b c₁ … c_d` stands for `b + cᵀx ≥ 0`, so the canonical row
//! `A_i` is written as `1 -A_i`. V-file rows are `1 v₁ … v_d`.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numerics::{format_rational, parse_decimal, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}`")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberType {
    Rational,
    Real,
    Integer,
}

/// Raw inequality system `A x ≤ b`, before canonicalisation.
#[derive(Debug, Clone, PartialEq)]
pub struct HFile {
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    pub number_type: NumberType,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VFile {
    pub points: Vec<Vec<BigRational>>,
    pub number_type: NumberType,
}

fn syntax(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Syntax { line, msg: msg.into() }
}

fn parse_token(tok: &str, ty: NumberType, line: usize) -> Result<BigRational, IoError> {
    let bad = || syntax(line, format!("bad number `{tok}` for {ty:?} data"));
    match ty {
        NumberType::Rational | NumberType::Integer => {
            if tok.contains(['.', 'e', 'E']) {
                return Err(bad());
            }
            let q = parse_rational(tok).ok_or_else(bad)?;
            if ty == NumberType::Integer && !q.is_integer() {
                return Err(bad());
            }
            Ok(q)
        }
        NumberType::Real => {
            if tok.contains('/') {
                return Err(bad());
            }
            parse_decimal(tok).ok_or_else(bad)
        }
    }
}

/// Body rows of a cdd file with the given header keyword.
fn parse_body(text: &str, header: &'static str) -> Result<(Vec<Vec<BigRational>>, NumberType), IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('*'));
    let mut seen_header = false;
    loop {
        let (n, l) = lines.next().ok_or(IoError::Missing("begin"))?;
        if l == header {
            seen_header = true;
        } else if l == "begin" {
            break;
        } else if !seen_header {
            // free-form name line
        } else {
            return Err(syntax(n, format!("unsupported option `{l}`")));
        }
    }
    let (n, l) = lines.next().ok_or(IoError::Missing("size line"))?;
    let parts: Vec<&str> = l.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(syntax(n, "expected `rows cols type`"));
    }
    let rows: usize = parts[0].parse().map_err(|_| syntax(n, "bad row count"))?;
    let cols: usize = parts[1].parse().map_err(|_| syntax(n, "bad column count"))?;
    let ty = match parts[2] {
        "rational" => NumberType::Rational,
        "real" => NumberType::Real,
        "integer" => NumberType::Integer,
        t => return Err(syntax(n, format!("unknown number type `{t}`"))),
    };
    if cols < 2 {
        return Err(syntax(n, "need at least two columns"));
    }
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (n, l) = lines.next().ok_or(IoError::Missing("row"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != cols {
            return Err(syntax(n, format!("expected {cols} entries, found {}", toks.len())));
        }
        out.push(toks.iter().map(|t| parse_token(t, ty, n)).collect::<Result<Vec<_>, _>>()?);
    }
    match lines.next() {
        Some((_, "end")) => Ok((out, ty)),
        Some((n, l)) => Err(syntax(n, format!("expected `end`, found `{l}`"))),
        None => Err(IoError::Missing("end")),
    }
}

pub fn parse_ine(text: &str) -> Result<HFile, IoError> {
    let (rows, number_type) = parse_body(text, "H-representation")?;
    let mut a = Vec::with_capacity(rows.len());
    let mut b = Vec::with_capacity(rows.len());
    for r in rows {
        b.push(r[0].clone());
        a.push(r[1..].iter().map(|x| -x).collect());
    }
    Ok(HFile { a, b, number_type })
}

pub fn parse_ext(text: &str) -> Result<VFile, IoError> {
    let (rows, number_type) = parse_body(text, "V-representation")?;
    let mut points = Vec::with_capacity(rows.len());
    for (i, r) in rows.into_iter().enumerate() {
        if !r[0].is_one() {
            return Err(syntax(0, format!("row {} is a ray or not normalised", i + 1)));
        }
        points.push(r[1..].to_vec());
    }
    Ok(VFile { points, number_type })
}

fn write_body(header: &str, rows: &[Vec<BigRational>], name: Option<&str>) -> String {
    let cols = rows.first().map_or(1, Vec::len);
    let mut s = String::new();
    if let Some(n) = name {
        let _ = writeln!(s, "* {n}");
    }
    let _ = writeln!(s, "{header}\nbegin\n{} {cols} rational", rows.len());
    for r in rows {
        let toks: Vec<String> = r.iter().map(format_rational).collect();
        let _ = writeln!(s, " {}", toks.join(" "));
    }
    s.push_str("end\n");
    s
}

/// `.ine` text for `Ax ≤ b`.
pub fn print_ine(a: &[Vec<BigRational>], b: &[BigRational], name: Option<&str>) -> String {
    let rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| std::iter::once(bi.clone()).chain(r.iter().map(|x| -x)).collect())
        .collect();
    write_body("H-representation", &rows, name)
}

/// `.ine` text for the canonical system `Ax ≤ 1`.
pub fn print_canonical_ine(a: &[Vec<BigRational>], name: Option<&str>) -> String {
    print_ine(a, &vec![BigRational::one(); a.len()], name)
}

pub fn print_ext(points: &[Vec<BigRational>], name: Option<&str>) -> String {
    let rows: Vec<Vec<BigRational>> =
        points.iter().map(|p| std::iter::once(BigRational::one()).chain(p.iter().cloned()).collect()).collect();
    write_body("V-representation", &rows, name)
}

/// Float rows, when the caller works in `f64`.
pub fn to_f64_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<f64>> {
    rows.iter().map(|r| r.iter().map(crate::numerics::rational_to_f64).collect()).collect()
}

impl HFile {
    /// Whether every right-hand side is positive, so the origin is interior.
    pub fn origin_inside(&self) -> bool {
        self.b.iter().all(|x| *x > BigRational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    const SQUARE: &str = "* unit square\nH-representation\nbegin\n4 3 rational\n1 -1 0\n1 1 0\n1 0 -1\n1 0 1\nend\n";

    #[test]
    fn square() {
        let h = parse_ine(SQUARE).unwrap();
        assert_eq!(h.a[0], vec![ratio(1, 1), ratio(0, 1)]);
        assert_eq!(h.b, vec![ratio(1, 1); 4]);
        assert!(h.origin_inside());
    }

    #[test]
    fn mixed_tokens_rejected() {
        let t = SQUARE.replace("1 -1 0", "1 -0.5 0");
        assert!(matches!(parse_ine(&t), Err(IoError::Syntax { line: 5, .. })));
        let r = "H-representation\nbegin\n1 3 real\n1 1/2 0\nend\n";
        assert!(parse_ine(r).is_err());
    }

    #[test]
    fn real_tokens_are_exact() {
        let r = "H-representation\nbegin\n1 3 real\n1 -0.1 2e-1\nend\n";
        let h = parse_ine(r).unwrap();
        assert_eq!(h.a[0], vec![ratio(1, 10), ratio(-1, 5)]);
    }

    #[test]
    fn missing_end() {
        assert_eq!(parse_ine("H-representation\nbegin\n0 3 rational\n"), Err(IoError::Missing("end")));
    }
}
