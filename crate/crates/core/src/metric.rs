use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::MAX_DIM;

/// Diagonal metric `η = diag(±1, …)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Metric {
    diag: Vec<i8>,
}

impl Metric {
    pub fn new(diag: Vec<i8>) -> Result<Metric, Error> {
        if diag.len() < 2 || diag.len() > MAX_DIM {
            return Err(Error::InvalidDimension(diag.len()));
        }
        if diag.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidMetric(format!("{diag:?}")));
        }
        Ok(Metric { diag })
    }

    /// `diag(+1, −1, …, −1)`.
    pub fn minkowski(dim: usize) -> Result<Metric, Error> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut d = vec![-1; dim];
        d[0] = 1;
        Metric::new(d)
    }

    pub fn euclidean(dim: usize) -> Result<Metric, Error> {
        Metric::new(vec![1; dim])
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `η_{μμ}`; the inverse metric has the same entries.
    #[inline]
    pub fn diag(&self, mu: u8) -> i64 {
        self.diag[mu as usize] as i64
    }

    #[inline]
    pub fn eta(&self, mu: u8, nu: u8) -> i64 {
        if mu == nu {
            self.diag(mu)
        } else {
            0
        }
    }

    pub fn signature(&self) -> String {
        self.diag.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

impl FromStr for Metric {
    type Err = Error;
    /// Parses a signature string such as `"+---"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let diag: Option<Vec<i8>> = s
            .chars()
            .map(|c| match c {
                '+' => Some(1),
                '-' => Some(-1),
                _ => None,
            })
            .collect();
        Metric::new(diag.ok_or_else(|| Error::InvalidMetric(s.to_string()))?)
    }
}

impl TryFrom<String> for Metric {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Metric> for String {
    fn from(m: Metric) -> String {
        m.signature()
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.signature())
    }
}
