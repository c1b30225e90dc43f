//! Grid specifications: comma-separated values and inclusive integer ranges.

use sbo_core::GR;

pub const DEFAULT_LAMBDAS: &str = "-12..4,1/2,-3/2,2/3,1/2+1/3*i";

/// Split `lo..hi` into its bounds.
fn range(item: &str) -> Option<(i64, i64)> {
    let (lo, hi) = item.split_once("..")?;
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

pub fn parse_values(text: &str) -> Result<Vec<GR>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item.contains("..") {
            let (lo, hi) = range(item).ok_or_else(|| format!("bad range {item:?}"))?;
            out.extend((lo..=hi).map(GR::from_int));
        } else {
            out.push(item.parse::<GR>().map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

pub fn parse_integers(text: &str) -> Result<Vec<i64>, String> {
    parse_values(text)?
        .into_iter()
        .map(|v| v.as_integer().ok_or_else(|| format!("{v} is not an integer")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_values() {
        let v = parse_values("-2..1, 1/2").unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], GR::from_int(-2));
        assert_eq!(v[4], GR::from_frac(1, 2));
        assert_eq!(parse_integers("3").unwrap(), vec![3]);
        assert!(parse_integers("1/2").is_err());
        assert!(parse_values("1..x").is_err());
        assert_eq!(parse_values(DEFAULT_LAMBDAS).unwrap().len(), 21);
    }
}
