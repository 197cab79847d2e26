//! Compensated summation based on the error-free TwoSum transformation.

/// Running compensated sum (cascaded TwoSum, the "Sum2" scheme).
#[derive(Debug, Default, Clone, Copy)]
pub struct CompSum {
    hi: f64,
    lo: f64,
    abs: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

impl CompSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.hi, x);
        self.hi = s;
        self.lo += e;
        self.abs += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    /// Sum of absolute values of everything added so far.
    pub fn abs_total(&self) -> f64 {
        self.abs
    }
}

impl Extend<f64> for CompSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompSum::new();
        s.extend(iter);
        s
    }
}

/// Compensated sum of a finite sequence.
pub fn comp_sum(terms: &[f64]) -> f64 {
    terms.iter().copied().collect::<CompSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_to_zero() {
        assert_eq!(comp_sum(&[1.0, -1.0]), 0.0);
    }

    #[test]
    fn recovers_small_term_between_large_ones() {
        assert_eq!(comp_sum(&[1e16, 1.0, -1e16]), 1.0);
        assert_eq!(comp_sum(&[1.0, 1e100, 1.0, -1e100]), 2.0);
    }

    #[test]
    fn alternating_binomial_row_vanishes() {
        let mut c = 1.0f64;
        let mut row = Vec::new();
        for l in 0..=20u32 {
            row.push(if l % 2 == 0 { c } else { -c });
            c = c * f64::from(20 - l) / f64::from(l + 1);
        }
        assert_eq!(comp_sum(&row), 0.0);
    }

    #[test]
    fn tracks_absolute_mass() {
        let s: CompSum = [1.0, -2.0, 3.0].into_iter().collect();
        assert_eq!(s.value(), 2.0);
        assert_eq!(s.abs_total(), 6.0);
    }
}
