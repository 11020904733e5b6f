//! Argument parsers: exact integers, `a:b[:s]` ranges, worker counts.

use std::fmt;
use std::str::FromStr;

/// Parse an exact non-negative integer: decimal digits with optional `_`
/// separators, or `base^exp` with both parts in that form.
pub fn parse_number(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let base = parse_decimal(base)?;
        let exp = parse_decimal(exp)?;
        let exp = u32::try_from(exp).map_err(|_| format!("exponent too large in `{s}`"))?;
        return base
            .checked_pow(exp)
            .ok_or_else(|| format!("`{s}` does not fit in 64 bits"));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<u64, String> {
    let digits: String = s.chars().filter(|&c| c != '_').collect();
    if digits.is_empty()
        || !digits.chars().all(|c| c.is_ascii_digit())
        || s.starts_with('_')
        || s.ends_with('_')
    {
        return Err(format!("`{s}` is not an exact decimal integer"));
    }
    digits
        .parse()
        .map_err(|_| format!("`{s}` does not fit in 64 bits"))
}

/// Parse a positive integer.
pub fn parse_positive(s: &str) -> Result<u64, String> {
    match parse_number(s)? {
        0 => Err("value must be at least 1".to_string()),
        n => Ok(n),
    }
}

pub fn parse_workers(s: &str) -> Result<usize, String> {
    let n = parse_positive(s)?;
    usize::try_from(n).map_err(|_| format!("worker count `{s}` is too large"))
}

/// Inclusive range `start:end` with optional `:stride`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeSpec {
    pub start: u64,
    pub end: u64,
    pub stride: u64,
}

impl RangeSpec {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        (self.start..=self.end).step_by(self.stride as usize)
    }

    pub fn len(&self) -> u64 {
        (self.end - self.start) / self.stride + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let (start, end, stride) = match parts.as_slice() {
            [a, b] => (parse_positive(a)?, parse_positive(b)?, 1),
            [a, b, c] => (parse_positive(a)?, parse_positive(b)?, parse_positive(c)?),
            _ => return Err(format!("`{s}` is not a range of the form a:b or a:b:s")),
        };
        if start > end {
            return Err(format!("range start {start} exceeds end {end}"));
        }
        if usize::try_from(stride).is_err() {
            return Err(format!("stride {stride} is too large"));
        }
        Ok(RangeSpec { start, end, stride })
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.stride)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(parse_number("25"), Ok(25));
        assert_eq!(parse_number("1_000_000"), Ok(1_000_000));
        assert_eq!(parse_number("10^6"), Ok(1_000_000));
        assert_eq!(parse_number("2^31"), Ok(1 << 31));
        assert_eq!(parse_number("10^0"), Ok(1));
        for bad in ["", "1e6", "2.5", "-3", "_1", "1_", "10^", "^3", "0x10", "10^30", "1^2^3"] {
            assert!(parse_number(bad).is_err(), "{bad}");
        }
        assert!(parse_positive("0").is_err());
    }

    #[test]
    fn ranges() {
        let r: RangeSpec = "1:30:1".parse().unwrap();
        assert_eq!((r.start, r.end, r.stride, r.len()), (1, 30, 1, 30));
        let r: RangeSpec = "10:10".parse().unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![10]);
        let r: RangeSpec = "1:10:4".parse().unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![1, 5, 9]);
        assert_eq!(r.len(), 3);
        let r: RangeSpec = "1:10^5".parse().unwrap();
        assert_eq!(r.end, 100_000);
        for bad in ["5", "5:4", "0:4", "1:4:0", "1:2:3:4", "a:b"] {
            assert!(bad.parse::<RangeSpec>().is_err(), "{bad}");
        }
    }
}
