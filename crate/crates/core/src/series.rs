//! Power series truncated at a fixed total degree.

use std::fmt;

use crate::error::Result;
use crate::poly::{Arith, Poly};
use crate::rational::Rat;

/// Default truncation order for series.
pub const DEFAULT_ORDER: u32 = 12;

/// A polynomial known exactly through total degree `order`; higher terms are unknown.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    base: Poly,
    order: u32,
}

impl PowerSeries {
    pub fn new(p: Poly, order: u32) -> Self {
        PowerSeries {
            base: p.truncate(order),
            order,
        }
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn into_poly(self) -> Poly {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    pub fn arith(&self, other: &PowerSeries, op: Arith) -> Result<PowerSeries> {
        let n = self.order.min(other.order);
        let base = match op {
            Arith::Mul => {
                self.base.arith(&other.base, Arith::Add)?;
                self.base.mul_truncated(&other.base, n)
            }
            _ => self.base.arith(&other.base, op)?.truncate(n),
        };
        Ok(PowerSeries { base, order: n })
    }

    pub fn scale(&self, c: &Rat) -> PowerSeries {
        PowerSeries {
            base: self.base.scale(c),
            order: self.order,
        }
    }

    /// Formal partial derivative; known through order `N - 1`.
    pub fn derivative(&self, var: usize) -> PowerSeries {
        let order = self.order.saturating_sub(1);
        PowerSeries::new(self.base.derivative(var), order)
    }

    pub fn truncate(&self, n: u32) -> PowerSeries {
        PowerSeries::new(self.base.clone(), n.min(self.order))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.base, self.order + 1)
    }
}
