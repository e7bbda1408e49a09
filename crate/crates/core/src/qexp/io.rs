//! Plain-text import/export of q-expansions.
//!
//! Format: a header line `weight K level M modulus P precision N` (modulus
//! `none` for rational series), followed by one `n coefficient` line per
//! stored term. Coefficients are exact: integers print bare, rationals as
//! `num/den`. Round-tripping is bit-exact.

use super::{QExpError, QExpansion};
use num_rational::BigRational;
use num_traits::Zero;
use std::str::FromStr;

pub fn export_text(f: &QExpansion) -> String {
    let mut out = String::new();
    let modulus = match f.modulus() {
        Some(p) => p.to_string(),
        None => "none".to_string(),
    };
    out.push_str(&format!(
        "weight {} level {} modulus {} precision {}\n",
        f.weight(),
        f.level(),
        modulus,
        f.precision()
    ));
    for (n, c) in f.coeffs().iter().enumerate() {
        out.push_str(&format!("{n} {c}\n"));
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> QExpError {
    QExpError::Parse {
        line,
        message: message.into(),
    }
}

pub fn import_text(text: &str) -> Result<QExpansion, QExpError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 8
        || fields[0] != "weight"
        || fields[2] != "level"
        || fields[4] != "modulus"
        || fields[6] != "precision"
    {
        return Err(parse_err(1, "expected `weight K level M modulus P precision N`"));
    }
    let weight: u64 = fields[1].parse().map_err(|_| parse_err(1, "bad weight"))?;
    let level: u64 = fields[3].parse().map_err(|_| parse_err(1, "bad level"))?;
    let modulus = match fields[5] {
        "none" => None,
        s => Some(s.parse::<u64>().map_err(|_| parse_err(1, "bad modulus"))?),
    };
    let precision: usize = fields[7].parse().map_err(|_| parse_err(1, "bad precision"))?;

    let mut coeffs = vec![BigRational::zero(); precision + 1];
    let mut seen = vec![false; precision + 1];
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let n: usize = parts
            .next()
            .ok_or_else(|| parse_err(line_no, "missing index"))?
            .parse()
            .map_err(|_| parse_err(line_no, "bad index"))?;
        let value = parts
            .next()
            .ok_or_else(|| parse_err(line_no, "missing coefficient"))?;
        if parts.next().is_some() {
            return Err(parse_err(line_no, "trailing tokens"));
        }
        if n > precision {
            return Err(parse_err(line_no, format!("index {n} beyond precision {precision}")));
        }
        if seen[n] {
            return Err(parse_err(line_no, format!("duplicate index {n}")));
        }
        seen[n] = true;
        coeffs[n] =
            BigRational::from_str(value).map_err(|e| parse_err(line_no, format!("bad coefficient: {e}")))?;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(parse_err(0, format!("missing coefficient line for index {missing}")));
    }
    let series = match modulus {
        Some(p) => {
            let residues = coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    if !c.is_integer() {
                        return Err(parse_err(n + 2, "mod-p coefficient must be an integer"));
                    }
                    super::residue_of(c, p)
                })
                .collect::<Result<Vec<_>, _>>()?;
            QExpansion::from_residues(residues, weight, level, p)
        }
        None => QExpansion::from_rational_coeffs(coeffs, weight, level),
    };
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexp::{delta, eisenstein, f_ell};

    #[test]
    fn round_trip_is_bit_exact() {
        for series in [
            eisenstein(4, 6).unwrap(),
            delta(6).unwrap(),
            f_ell(5, 2, 6).unwrap(),
        ] {
            let text = export_text(&series);
            let back = import_text(&text).unwrap();
            assert_eq!(series, back);
            assert_eq!(export_text(&back), text);
        }
    }

    #[test]
    fn header_round_trips_rational_marker() {
        let e = eisenstein(6, 3).unwrap();
        let text = export_text(&e);
        assert!(text.starts_with("weight 6 level 1 modulus none precision 3\n"));
    }

    #[test]
    fn import_rejects_garbage() {
        assert!(import_text("").is_err());
        assert!(import_text("weight x level 1 modulus none precision 2\n").is_err());
        let err = import_text("weight 4 level 1 modulus none precision 1\n0 1\n0 2\n").unwrap_err();
        assert!(matches!(err, QExpError::Parse { line: 3, .. }));
    }
}
