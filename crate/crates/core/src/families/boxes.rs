use std::fmt;

use num_rational::Ratio;

use super::FamilyError;

pub type Rational = Ratio<i64>;

/// An open axis-aligned box `∏ (lo_k, hi_k)` with `lo_k < hi_k` on every axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenBox {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl OpenBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self, FamilyError> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(FamilyError::InvalidBox {
                reason: format!("{} lower and {} upper endpoints", lo.len(), hi.len()),
            });
        }
        if let Some(k) = (0..lo.len()).find(|&k| lo[k] >= hi[k]) {
            return Err(FamilyError::InvalidBox {
                reason: format!("axis {k}: {} is not below {}", lo[k], hi[k]),
            });
        }
        Ok(OpenBox { lo, hi })
    }

    /// Convenience constructor from `(lo, hi)` integer pairs over a common denominator.
    pub fn from_ints(bounds: &[(i64, i64)], denom: i64) -> Result<Self, FamilyError> {
        if denom == 0 {
            return Err(FamilyError::InvalidBox {
                reason: "zero denominator".into(),
            });
        }
        let lo = bounds.iter().map(|&(a, _)| Rational::new(a, denom)).collect();
        let hi = bounds.iter().map(|&(_, b)| Rational::new(b, denom)).collect();
        Self::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    /// The intersection, `None` when empty. Open intervals meet iff they
    /// overlap strictly.
    pub fn intersect(&self, other: &OpenBox) -> Option<OpenBox> {
        let lo: Vec<Rational> = self.lo.iter().zip(&other.lo).map(|(a, b)| *a.max(b)).collect();
        let hi: Vec<Rational> = self.hi.iter().zip(&other.hi).map(|(a, b)| *a.min(b)).collect();
        if lo.iter().zip(&hi).all(|(a, b)| a < b) {
            Some(OpenBox { lo, hi })
        } else {
            None
        }
    }

    pub fn overlaps(&self, other: &OpenBox) -> bool {
        (0..self.dim()).all(|k| self.lo[k].max(other.lo[k]) < self.hi[k].min(other.hi[k]))
    }
}

impl fmt::Display for OpenBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("box")?;
        for k in 0..self.dim() {
            write!(f, " {}/{} {}/{}", self.lo[k].numer(), self.lo[k].denom(), self.hi[k].numer(), self.hi[k].denom())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_intervals_touching_do_not_meet() {
        let a = OpenBox::from_ints(&[(0, 1)], 1).unwrap();
        let b = OpenBox::from_ints(&[(1, 2)], 1).unwrap();
        assert!(!a.overlaps(&b));
        assert!(a.intersect(&b).is_none());
        let c = OpenBox::from_ints(&[(1, 4)], 2).unwrap();
        assert_eq!(a.intersect(&c).unwrap(), OpenBox::from_ints(&[(1, 2)], 2).unwrap());
    }

    #[test]
    fn invalid_boxes() {
        assert!(OpenBox::from_ints(&[(1, 1)], 1).is_err());
        assert!(OpenBox::from_ints(&[(0, 1)], 0).is_err());
        assert!(OpenBox::new(vec![], vec![]).is_err());
    }

    #[test]
    fn display_uses_fractions() {
        let b = OpenBox::from_ints(&[(1, 5), (0, 2)], 2).unwrap();
        assert_eq!(b.to_string(), "box 1/2 5/2 0/1 1/1");
    }
}
