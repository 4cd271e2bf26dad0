//! Sparse multivariate polynomials over the rationals, attached to a chart.
//!
//! Terms are kept in a BTreeMap from exponent vector to nonzero coefficient,
//! so equality is structural and printing order is canonical.

use crate::chart::Chart;
use crate::rational::{fmt_rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    chart: Chart,
    terms: BTreeMap<Exponents, Rat>,
}

impl Poly {
    pub fn zero(chart: &Chart) -> Poly {
        Poly {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Rat) -> Poly {
        let mut p = Poly::zero(chart);
        if !c.is_zero() {
            p.terms.insert(vec![0; chart.dim()], c);
        }
        p
    }

    pub fn one(chart: &Chart) -> Poly {
        Poly::constant(chart, Rat::one())
    }

    /// The coordinate x_i.
    pub fn var(chart: &Chart, i: usize) -> Poly {
        assert!(i < chart.dim());
        let mut e = vec![0u32; chart.dim()];
        e[i] = 1;
        let mut p = Poly::zero(chart);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn monomial(chart: &Chart, exponents: Exponents, coeff: Rat) -> Poly {
        assert_eq!(exponents.len(), chart.dim());
        let mut p = Poly::zero(chart);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0; self.chart.dim()])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// True when the polynomial has no non-constant term.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn insert_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.chart);
        }
        Poly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.chart.dim());
        let mut out = Poly::zero(&self.chart);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.insert_term(e2, c * Rat::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.chart.dim());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in point.iter().zip(e.iter()) {
                for _ in 0..ei {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.chart);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Reinterprets the polynomial on a larger chart, mapping coordinate i
    /// of the old chart to `embed[i]` of the new one.
    pub fn embed(&self, chart: &Chart, embed: &[usize]) -> Poly {
        assert_eq!(embed.len(), self.chart.dim());
        let mut out = Poly::zero(chart);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; chart.dim()];
            for (i, &ei) in e.iter().enumerate() {
                e2[embed[i]] += ei;
            }
            out.insert_term(e2, c.clone());
        }
        out
    }

    fn assert_same_chart(&self, other: &Poly) {
        assert_eq!(
            self.chart, other.chart,
            "polynomials live on different charts"
        );
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_chart(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_chart(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    // exponent vectors add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_chart(rhs);
        let mut out = Poly::zero(&self.chart);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        self.chart.name(i).to_string()
                    } else {
                        format!("{}^{}", self.chart.name(i), p)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (sign, mag) = if c < &Rat::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", fmt_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{} {mono}", fmt_rat(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn xy() -> Chart {
        Chart::standard(2)
    }

    #[test]
    fn arithmetic_and_partials() {
        let ch = xy();
        let x = Poly::var(&ch, 0);
        let y = Poly::var(&ch, 1);
        // d/dx (x^2 y) = 2xy, d/dy (x^2 y) = x^2
        let p = &(&x * &x) * &y;
        assert_eq!(p.partial(0), (&x * &y).scale(&int(2)));
        assert_eq!(p.partial(1), &x * &x);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn eval_exact() {
        let ch = xy();
        let x = Poly::var(&ch, 0);
        let y = Poly::var(&ch, 1);
        let p = &(&x * &x) + &y.scale(&rat(1, 3));
        assert_eq!(p.eval(&[rat(1, 2), int(3)]), rat(5, 4));
    }

    #[test]
    fn display_is_canonical() {
        let ch = xy();
        let x = Poly::var(&ch, 0);
        let y = Poly::var(&ch, 1);
        let p = &y.scale(&rat(-1, 2)) + &(&x * &x);
        assert_eq!(p.to_string(), "-1/2 x2 + x1^2");
    }
}
