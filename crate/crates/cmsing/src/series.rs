//! Truncated multivariate power series in the weighted grading.
//!
//! A series is a polynomial kept reduced modulo all terms of weighted
//! degree exceeding the truncation order. This is enough for the inverse
//! square roots needed by the completion checks: those expansions have a
//! nonzero rational constant term and can be produced by Newton iteration
//! entirely within polynomial arithmetic.

use crate::poly::{MultiPoly, VarTable};
use crate::scalar::{rat, rat_sqrt, Coeff, Rat};
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub poly: MultiPoly<Rat>,
    pub order: u64,
}

impl TruncatedSeries {
    pub fn new(poly: MultiPoly<Rat>, order: u64) -> Self {
        TruncatedSeries {
            poly: poly.truncated(order),
            order,
        }
    }

    pub fn one(vars: &Arc<VarTable>, order: u64) -> Self {
        TruncatedSeries {
            poly: MultiPoly::one(vars),
            order,
        }
    }

    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order, o.order, "truncation orders differ");
        TruncatedSeries::new(self.poly.mul(&o.poly), self.order)
    }

    pub fn add(&self, o: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order, o.order, "truncation orders differ");
        TruncatedSeries::new(self.poly.add(&o.poly), self.order)
    }

    pub fn sub(&self, o: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order, o.order, "truncation orders differ");
        TruncatedSeries::new(self.poly.sub(&o.poly), self.order)
    }

    pub fn scale(&self, c: &Rat) -> TruncatedSeries {
        TruncatedSeries {
            poly: self.poly.scale(c),
            order: self.order,
        }
    }
}

/// Truncated expansion of `1/sqrt(f)` where the constant term of `f` must
/// be a nonzero rational square. Uses the Newton step
/// `S <- S * (3 - f * S^2) / 2`, which doubles the number of correct
/// graded components each round.
pub fn series_inv_sqrt(f: &MultiPoly<Rat>, order: u64) -> Result<TruncatedSeries> {
    let c0 = f.constant_term();
    if c0.is_zero() {
        return Err(Error::Domain(
            "inverse square root needs a nonzero constant term".into(),
        ));
    }
    let sqrt_c0 = rat_sqrt(&c0).ok_or_else(|| {
        Error::Domain(format!(
            "constant term {} is not a rational square",
            c0
        ))
    })?;
    let vars = f.vars();
    let ftrunc = TruncatedSeries::new(f.clone(), order);
    let mut s = TruncatedSeries::new(
        MultiPoly::constant(vars, rat(1) / sqrt_c0),
        order,
    );
    // Positive-weight variables mean each Newton round at least doubles the
    // number of correct graded components; iterate until stable.
    loop {
        let s2 = s.mul(&s);
        let fs2 = ftrunc.mul(&s2);
        let three = TruncatedSeries::new(MultiPoly::int(vars, 3), order);
        let next = s.mul(&three.sub(&fs2)).scale(&crate::scalar::ratio(1, 2));
        if next == s {
            break;
        }
        s = next;
    }
    // Safety net: the defining property must hold exactly modulo truncation.
    let check = s.mul(&s).mul(&ftrunc);
    debug_assert!(check.poly.sub(&MultiPoly::one(vars)).is_zero());
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;
    use crate::scalar::ratio;

    #[test]
    fn binomial_series_oracle() {
        // (1+u)^(-1/2) = 1 - u/2 + 3u^2/8 - 5u^3/16 + 35u^4/128 - ...
        let v = VarTable::new(&[("u", 1)]);
        let f = MultiPoly::one(&v).add(&MultiPoly::var(&v, "u"));
        let s = series_inv_sqrt(&f, 4).unwrap();
        let expected = [
            ratio(1, 1),
            ratio(-1, 2),
            ratio(3, 8),
            ratio(-5, 16),
            ratio(35, 128),
        ];
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(&s.poly.coefficient(&[k as u32]), want, "u^{}", k);
        }
    }

    #[test]
    fn defining_property_holds_with_weights() {
        // f = 4 + q*Q - e^2 with weights 2,2,2; S^2 * f == 1 mod degree 12
        let v = VarTable::new(&[("q", 2), ("Q", 2), ("e", 2)]);
        let q = MultiPoly::var(&v, "q");
        let qq = MultiPoly::var(&v, "Q");
        let e = MultiPoly::var(&v, "e");
        let f = MultiPoly::int(&v, 4)
            .add(&q.mul(&qq))
            .sub(&e.mul(&e));
        let s = series_inv_sqrt(&f, 12).unwrap();
        let prod = s.mul(&s).mul(&TruncatedSeries::new(f, 12));
        assert!(prod.poly.sub(&MultiPoly::one(&v)).is_zero());
    }

    #[test]
    fn rejects_non_square_constant() {
        let v = VarTable::new(&[("u", 1)]);
        let f = MultiPoly::int(&v, 2).add(&MultiPoly::var(&v, "u"));
        assert!(series_inv_sqrt(&f, 4).is_err());
        let g = MultiPoly::<Rat>::var(&v, "u");
        assert!(series_inv_sqrt(&g, 4).is_err());
    }
}
