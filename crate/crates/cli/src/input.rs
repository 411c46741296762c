//! Parsers for command-line literals.

use std::path::Path;

use nschur::algebra::rational_from_str;
use nschur::kp::numeric::Point;
use nschur::psido::{kdv_example, PsiDO};
use nschur::{parse_rational_function, ExpSign, HModel, Matrix, Rational, VirtualSequence};
use serde_json::Value;

use crate::CliError;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty())
}

/// `"-2,1"` is the prefix of `(-2, 1, 2, 3, ...)`; the empty string is the vacuum.
pub fn sequence(s: &str) -> Result<VirtualSequence, CliError> {
    let prefix = split_list(s)
        .map(|p| p.parse::<i64>().map_err(|_| config(format!("bad sequence entry '{p}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VirtualSequence::new(prefix)?)
}

pub fn integers(s: &str) -> Result<Vec<u32>, CliError> {
    split_list(s).map(|p| p.parse::<u32>().map_err(|_| config(format!("bad integer '{p}'")))).collect()
}

pub fn rationals(s: &str) -> Result<Vec<Rational>, CliError> {
    split_list(s).map(|p| rational_from_str(p).map_err(CliError::from)).collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn matrix(s: &str) -> Result<Matrix<Rational>, CliError> {
    let rows = s.split(';').map(rationals).collect::<Result<Vec<_>, _>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(config("matrix rows must be nonempty and of equal length"));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn point(s: &str) -> Result<Point, CliError> {
    let v = split_list(s)
        .map(|p| p.parse::<f64>().map_err(|_| config(format!("bad coordinate '{p}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    v.try_into().map_err(|_| config("a point needs three coordinates x,y,t"))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))
}

/// Inline JSON, or a path to a JSON file.
fn json_arg(s: &str) -> Result<Option<Value>, CliError> {
    let t = s.trim_start();
    if t.starts_with('{') {
        return serde_json::from_str(t).map(Some).map_err(|e| config(format!("bad JSON: {e}")));
    }
    let p = Path::new(s);
    if p.is_file() {
        return read_json(p).map(Some);
    }
    Ok(None)
}

/// `formal`, `exponential`, `exponential-minus`, or an HModel JSON file.
pub fn model(s: &str, n: u32, k_max: u32) -> Result<HModel, CliError> {
    let m = match s {
        "formal" => HModel::formal(n)?,
        "exponential" if n == 1 => HModel::exponential(ExpSign::Plus, k_max),
        "exponential-minus" if n == 1 => HModel::exponential(ExpSign::Minus, k_max),
        "exponential" | "exponential-minus" => return Err(config("the exponential model has N = 1")),
        _ => {
            let v = json_arg(s)?.ok_or_else(|| config(format!("unknown model '{s}'")))?;
            HModel::from_json(&v)?
        }
    };
    if m.n() != n {
        return Err(config(format!("model has N = {}, requested N = {n}", m.n())));
    }
    Ok(m)
}

/// `kdv`, PsiDO JSON (inline or file), or `exp:coeff; exp:coeff; ...`.
pub fn operator(s: &str, depth: i64) -> Result<PsiDO, CliError> {
    if s.trim() == "kdv" {
        return Ok(kdv_example(depth));
    }
    if let Some(v) = json_arg(s)? {
        return Ok(PsiDO::from_json(&v)?);
    }
    let mut terms = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (e, c) = part.split_once(':').ok_or_else(|| config(format!("expected exp:coeff, got '{part}'")))?;
        let e = e.trim().parse::<i64>().map_err(|_| config(format!("bad exponent '{e}'")))?;
        terms.push((e, parse_rational_function(c)?));
    }
    Ok(PsiDO::from_terms(terms, depth))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert!(sequence("").unwrap().is_vacuum());
        assert_eq!(sequence("-2, 1").unwrap().prefix(), &[-2]);
        assert!(sequence("1,a").is_err());
        assert_eq!(matrix("1,2;3,4").unwrap().rows(), 2);
        assert!(matrix("1,2;3").is_err());
        assert_eq!(point("0.1,0.2,0.3").unwrap(), [0.1, 0.2, 0.3]);
        assert!(point("1,2").is_err());
    }

    #[test]
    fn operators() {
        let a = operator("2:1; 0:-2*x/(3*t+1)", 4).unwrap();
        assert_eq!(a, kdv_example(4));
        let json = a.to_json().to_string();
        assert_eq!(operator(&json, 4).unwrap(), a);
        assert!(operator("2 1", 4).is_err());
    }
}
