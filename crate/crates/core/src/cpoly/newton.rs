use super::complex::ComplexValue;
use super::jet::Jet;
use super::real::Real;
use super::PolyError;

/// Polynomial in Newton form over a (possibly repeated) center sequence:
///
/// `P(z) = c₀ + c₁(z−x₀) + c₂(z−x₀)(z−x₁) + …`
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolynomial<T = f64> {
    centers: Vec<ComplexValue<T>>,
    coeffs: Vec<ComplexValue<T>>,
}

impl<T: Real> NewtonPolynomial<T> {
    pub fn new(
        centers: Vec<ComplexValue<T>>,
        coeffs: Vec<ComplexValue<T>>,
    ) -> Result<Self, PolyError> {
        if coeffs.len() != centers.len() + 1 {
            return Err(PolyError::ShapeMismatch {
                centers: centers.len(),
                coeffs: coeffs.len(),
            });
        }
        if !centers.iter().chain(&coeffs).all(ComplexValue::is_finite) {
            return Err(PolyError::NonFinite);
        }
        Ok(NewtonPolynomial { centers, coeffs })
    }

    pub fn constant(c: ComplexValue<T>) -> Self {
        NewtonPolynomial {
            centers: Vec::new(),
            coeffs: vec![c],
        }
    }

    pub fn zero(bits: u32) -> Self {
        Self::constant(ComplexValue::zero(bits))
    }

    pub fn centers(&self) -> &[ComplexValue<T>] {
        &self.centers
    }

    pub fn coeffs(&self) -> &[ComplexValue<T>] {
        &self.coeffs
    }

    pub fn bits(&self) -> u32 {
        self.coeffs[0].bits()
    }

    /// Index of the last nonzero Newton coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ComplexValue::is_zero)
    }

    /// Value and first `order` derivatives at `z`.
    ///
    /// Horner's scheme run on jets: each step multiplies the running jet by the
    /// linear factor `(z − xₖ)`, whose only nonzero derivative is 1, so the
    /// product rule reduces to `q⁽ʲ⁾ ← q⁽ʲ⁾·(z−xₖ) + j·q⁽ʲ⁻¹⁾`.
    pub fn eval_jet(&self, z: &ComplexValue<T>, order: usize) -> Jet<T> {
        let bits = self.bits();
        let last = self.coeffs.len() - 1;
        let mut q = vec![ComplexValue::zero(bits); order + 1];
        q[0] = self.coeffs[last].clone();
        for k in (0..last).rev() {
            let lin = z.clone() - self.centers[k].clone();
            for j in (1..=order).rev() {
                let carry = q[j - 1].scale(&T::from_f64(j as f64, bits));
                q[j] = q[j].clone() * lin.clone() + carry;
            }
            q[0] = q[0].clone() * lin + self.coeffs[k].clone();
        }
        Jet::new(q)
    }

    pub fn eval(&self, z: &ComplexValue<T>) -> ComplexValue<T> {
        let last = self.coeffs.len() - 1;
        let mut acc = self.coeffs[last].clone();
        for k in (0..last).rev() {
            acc = acc * (z.clone() - self.centers[k].clone()) + self.coeffs[k].clone();
        }
        acc
    }

    /// Monomial coefficients `a₀..a_d` with `Σ aₖ zᵏ ≡ P(z)`, trailing exact
    /// zeros removed (the zero polynomial yields `[0]`).
    pub fn to_monomial(&self) -> Vec<ComplexValue<T>> {
        let bits = self.bits();
        let last = self.coeffs.len() - 1;
        let mut acc = vec![self.coeffs[last].clone()];
        for k in (0..last).rev() {
            // acc ← acc·(z − xₖ) + cₖ
            let x = self.centers[k].clone();
            let mut next = vec![ComplexValue::zero(bits); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + a.clone();
                next[i] = next[i].clone() - a.clone() * x.clone();
            }
            next[0] = next[0].clone() + self.coeffs[k].clone();
            acc = next;
        }
        while acc.len() > 1 && acc.last().is_some_and(ComplexValue::is_zero) {
            acc.pop();
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(usize, &ComplexValue<T>) -> ComplexValue<T>) -> Self {
        NewtonPolynomial {
            centers: self.centers.clone(),
            coeffs: self.coeffs.iter().enumerate().map(|(i, c)| f(i, c)).collect(),
        }
    }
}

/// Evaluates monomial coefficients with Horner's rule.
pub fn eval_monomial<T: Real>(coeffs: &[ComplexValue<T>], z: &ComplexValue<T>) -> ComplexValue<T> {
    let mut it = coeffs.iter().rev();
    let mut acc = it.next().cloned().unwrap_or_else(|| ComplexValue::zero(z.bits()));
    for c in it {
        acc = acc * z.clone() + c.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = ComplexValue<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn assert_jet(jet: &Jet<f64>, expected: &[C]) {
        assert_eq!(jet.order() + 1, expected.len());
        for (got, want) in jet.values().iter().zip(expected) {
            assert!((got.clone() - want.clone()).norm() < 1e-14, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn constant_jet() {
        let p = NewtonPolynomial::constant(c(5.0, 0.0));
        let jet = p.eval_jet(&c(2.0, 1.0), 2);
        assert_jet(&jet, &[c(5.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn linear_at_its_center() {
        let p = NewtonPolynomial::new(vec![c(1.0, 0.0)], vec![c(3.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_jet(&p.eval_jet(&c(1.0, 0.0), 1), &[c(3.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn difference_of_squares() {
        // (z−1)(z+1) = z² − 1: at 0 the jet is (−1, 0, 2).
        let p = NewtonPolynomial::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        assert_jet(&p.eval_jet(&c(0.0, 0.0), 2), &[c(-1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(p.to_monomial(), vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn monomial_export() {
        assert_eq!(NewtonPolynomial::<f64>::zero(53).to_monomial(), vec![c(0.0, 0.0)]);
        let p = NewtonPolynomial::new(vec![c(1.0, 0.0)], vec![c(3.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(p.to_monomial(), vec![c(1.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn shape_is_checked() {
        let err = NewtonPolynomial::new(vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, PolyError::ShapeMismatch { centers: 1, coeffs: 1 }));
        let err = NewtonPolynomial::new(vec![], vec![c(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, PolyError::NonFinite));
    }

    #[test]
    fn degree_ignores_trailing_zero_coefficients() {
        let p = NewtonPolynomial::new(
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(1.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(NewtonPolynomial::<f64>::zero(53).degree(), 0);
    }
}
