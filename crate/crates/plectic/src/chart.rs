//! Coordinate charts: ordered lists of distinct coordinate names.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chart {
    names: Arc<Vec<String>>,
}

impl Chart {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Chart, String> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err("empty coordinate name".into());
            }
            if names[i + 1..].contains(a) {
                return Err(format!("duplicate coordinate name {a:?}"));
            }
        }
        Ok(Chart {
            names: Arc::new(names),
        })
    }

    /// The chart x1..xN.
    pub fn standard(n: usize) -> Chart {
        Chart::new((1..=n).map(|i| format!("x{i}")).collect()).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Concatenation of two charts. Colliding names are disambiguated with
    /// l_/r_ prefixes on the whole product.
    pub fn product(&self, other: &Chart) -> Result<Chart, String> {
        let collision = self.names().iter().any(|n| other.names().contains(n));
        let mut names: Vec<String> = Vec::with_capacity(self.dim() + other.dim());
        if collision {
            names.extend(self.names().iter().map(|n| format!("l_{n}")));
            names.extend(other.names().iter().map(|n| format!("r_{n}")));
        } else {
            names.extend(self.names().iter().cloned());
            names.extend(other.names().iter().cloned());
        }
        Chart::new(names)
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({})", self.names.join(","))
    }
}
