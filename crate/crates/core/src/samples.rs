//! Shipped integer sample points with integer Euclidean norm, so every
//! radial evaluation stays rational.

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Bumped whenever the table changes; reports record it.
pub const TABLE_VERSION: u32 = 1;

const M3: [[i64; 3]; 6] = [[3, 4, 0], [-3, 4, 0], [1, 2, 2], [2, -6, 3], [6, 2, -3], [2, 3, 6]];
const M4: [[i64; 4]; 5] = [[1, 1, 1, 1], [1, -1, 5, -3], [1, 2, 2, 4], [2, 4, 5, 6], [1, 3, 1, 5]];
const M5: [[i64; 5]; 5] = [[1, 1, 1, 2, 3], [1, -1, 1, -3, 2], [1, 1, 1, 5, 6], [3, 4, 0, 0, 0], [1, 1, 2, 1, 3]];
const M6: [[i64; 6]; 5] =
    [[1, 1, 1, 1, 3, 6], [1, -1, 1, -1, 6, -3], [1, 1, 1, 2, 2, 5], [1, -1, 1, -2, 3, -3], [1, 1, 1, 2, 5, 2]];
const M7: [[i64; 7]; 5] = [
    [1, 1, 1, 1, 1, 2, 4],
    [1, -1, 1, -1, 1, -4, 2],
    [1, 1, 1, 1, 2, 1, 4],
    [1, -1, 1, -1, 2, -4, 1],
    [1, 1, 1, 1, 2, 4, 5],
];
const M8: [[i64; 8]; 5] = [
    [1, 1, 1, 1, 1, 2, 2, 6],
    [1, -1, 1, -1, 1, -2, 6, -2],
    [1, 1, 1, 1, 1, 2, 6, 6],
    [1, -1, 1, -1, 1, -3, 5, -5],
    [1, 1, 1, 1, 1, 5, 3, 5],
];

fn conv<const N: usize>(rows: &[[i64; N]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&c| Rational::from_int(c)).collect()).collect()
}

/// Default points for dimension `m`.
pub fn sample_points(m: usize) -> Result<Vec<Vec<Rational>>> {
    Ok(match m {
        3 => conv(&M3),
        4 => conv(&M4),
        5 => conv(&M5),
        6 => conv(&M6),
        7 => conv(&M7),
        8 => conv(&M8),
        _ => return Err(Error::InvalidParameter(format!("no sample points for m={m}"))),
    })
}

/// Parses `"3,4,0;1,2,2"`, rejecting points whose norm is irrational.
pub fn parse_points(m: usize, s: &str) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    for chunk in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let p: Vec<Rational> = chunk
            .split(',')
            .map(|c| c.trim().parse::<i64>().map(Rational::from_int))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidParameter(format!("bad point {chunk}: {e}")))?;
        if p.len() != m {
            return Err(Error::DimensionMismatch(m, p.len()));
        }
        crate::radial::norm(&p)?;
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_norms_rational_and_nonzero() {
        for m in 3..=8 {
            for p in sample_points(m).unwrap() {
                assert_eq!(p.len(), m);
                assert!(!crate::radial::norm(&p).unwrap().is_zero());
            }
        }
        assert!(parse_points(3, "1,1,0").is_err());
        assert_eq!(parse_points(3, "3,4,0; 1,2,2").unwrap().len(), 2);
    }
}
