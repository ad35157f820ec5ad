use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::QRational;
use crate::error::{Error, Result};

/// Names that parse as integer indices rather than rational symbols.
pub const INDEX_NAMES: &[&str] = &["n", "m", "r", "k", "N", "variant"];

/// A sample point: rational values for the free symbols plus integer indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub symbols: BTreeMap<String, QRational>,
    pub indices: BTreeMap<String, i64>,
}

impl ParamPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: QRational) -> Self {
        self.symbols.insert(name.to_string(), value);
        self
    }

    pub fn with_index(mut self, name: &str, value: i64) -> Self {
        self.indices.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: QRational) {
        self.symbols.insert(name.to_string(), value);
    }

    pub fn set_index(&mut self, name: &str, value: i64) {
        self.indices.insert(name.to_string(), value);
    }

    pub fn sym(&self, name: &str) -> Result<&QRational> {
        self.symbols.get(name).ok_or_else(|| Error::MissingSymbol(name.to_string()))
    }

    pub fn idx(&self, name: &str) -> Result<i64> {
        self.indices.get(name).copied().ok_or_else(|| Error::MissingIndex(name.to_string()))
    }

    /// The base `q`, rejected when it is 0 or 1.
    pub fn q(&self) -> Result<&QRational> {
        let q = self.sym("q")?;
        check_base(q)?;
        Ok(q)
    }

    /// `x1..xr` in order.
    pub fn x_vector(&self, r: usize) -> Result<Vec<QRational>> {
        (1..=r).map(|i| self.sym(&x_name(i)).cloned()).collect()
    }

    pub fn set_x_vector(&mut self, xs: &[QRational]) {
        for (i, x) in xs.iter().enumerate() {
            self.set(&x_name(i + 1), x.clone());
        }
    }
}

pub fn x_name(i: usize) -> String {
    format!("x{i}")
}

pub fn check_base(q: &QRational) -> Result<()> {
    if q.is_zero() || q.is_one() {
        return Err(Error::DegenerateQ(q.to_string()));
    }
    Ok(())
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.symbols {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        for (k, v) in &self.indices {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Parses `a=3, b=1/2, q=2, n=1`. Names listed in [`INDEX_NAMES`] become indices.
impl FromStr for ParamPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut point = ParamPoint::new();
        for item in s.split([',', ';']).map(str::trim).filter(|t| !t.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got `{item}`")))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::Parse(format!("empty name in `{item}`")));
            }
            if INDEX_NAMES.contains(&name) {
                let v: i64 = value.trim().parse().map_err(|_| Error::Parse(format!("index `{name}` must be an integer")))?;
                point.set_index(name, v);
            } else {
                point.set(name, value.parse()?);
            }
        }
        Ok(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_point() {
        let p: ParamPoint = "a=3, b=1/2, q=-2/3, n=4, x1=5".parse().unwrap();
        assert_eq!(p.sym("b").unwrap(), &QRational::new(1, 2).unwrap());
        assert_eq!(p.idx("n").unwrap(), 4);
        assert_eq!(p.x_vector(1).unwrap(), vec![QRational::from_int(5)]);
        assert!(matches!(p.sym("c"), Err(Error::MissingSymbol(_))));
        assert!(matches!(p.idx("m"), Err(Error::MissingIndex(_))));
        let again: ParamPoint = p.to_string().parse().unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn degenerate_base() {
        let p = ParamPoint::new().with("q", QRational::one());
        assert!(matches!(p.q(), Err(Error::DegenerateQ(_))));
        let p = ParamPoint::new().with("q", QRational::zero());
        assert!(matches!(p.q(), Err(Error::DegenerateQ(_))));
    }

    #[test]
    fn rejects_bad_index() {
        assert!("n=1/2".parse::<ParamPoint>().is_err());
        assert!("a".parse::<ParamPoint>().is_err());
    }
}
