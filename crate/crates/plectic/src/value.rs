//! A minimal vector-space interface shared by the coefficient types that
//! cochains and tables can take values in (rationals, polynomials, forms,
//! coordinate vectors).

use crate::form::PolyForm;
use crate::poly::Poly;
use crate::rational::Rat;
use num_traits::Zero;

pub trait LinearValue: Clone + PartialEq {
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl LinearValue for Rat {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        self * c
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl LinearValue for Poly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        Poly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl LinearValue for PolyForm {
    fn add(&self, other: &Self) -> Self {
        PolyForm::add(self, other)
    }
    fn neg(&self) -> Self {
        PolyForm::neg(self)
    }
    fn scale(&self, c: &Rat) -> Self {
        PolyForm::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        PolyForm::is_zero(self)
    }
}

impl LinearValue for Vec<Rat> {
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        self.iter().zip(other).map(|(a, b)| a + b).collect()
    }
    fn neg(&self) -> Self {
        self.iter().map(|a| -a).collect()
    }
    fn scale(&self, c: &Rat) -> Self {
        self.iter().map(|a| a * c).collect()
    }
    fn is_zero(&self) -> bool {
        self.iter().all(Zero::is_zero)
    }
}
