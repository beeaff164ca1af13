use crate::cpoly::{hermite_interpolate, ComplexValue, HermiteSpec, Jet, NewtonPolynomial, Real};

use super::ForgeError;

/// Prescribed derivatives of `p_n` at one root of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeConditions<T = f64> {
    pub node: ComplexValue<T>,
    pub p1: ComplexValue<T>,
    pub p2: ComplexValue<T>,
    pub p3: ComplexValue<T>,
}

/// `e^{2πiℓ/n}`, exact at multiples of a quarter turn.
pub fn root_of_unity<T: Real>(n: u32, l: u32, bits: u32) -> ComplexValue<T> {
    let (n, l) = (n as u64, l as u64 % n as u64);
    if (4 * l) % n == 0 {
        let (re, im) = match 4 * l / n {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
        return ComplexValue::from_f64(re, im, bits);
    }
    let theta = T::from_f64(2.0, bits) * T::pi(bits) * T::from_f64(l as f64, bits)
        / T::from_f64(n as f64, bits);
    ComplexValue::from_polar(T::one(bits), theta)
}

pub fn roots_of_unity<T: Real>(n: u32, bits: u32) -> Vec<ComplexValue<T>> {
    (0..n).map(|l| root_of_unity(n, l, bits)).collect()
}

/// Index, position and distance of the root of unity of order `n` nearest to `z`.
pub fn nearest_node<T: Real>(n: u32, z: &ComplexValue<T>) -> (u32, ComplexValue<T>, T) {
    let bits = z.bits();
    let turns = z.arg().to_f64() / std::f64::consts::TAU * n as f64;
    let l = (turns.round() as i64).rem_euclid(n as i64) as u32;
    let node = root_of_unity::<T>(n, l, bits);
    let d = node.dist(z);
    (l, node, d)
}

/// Jet of `g_n(z) = zⁿ − 1` by the power rule.
pub fn g_jet<T: Real>(n: u32, z: &ComplexValue<T>, order: usize) -> Jet<T> {
    let bits = z.bits();
    let n = n as usize;
    let mut values = Vec::with_capacity(order + 1);
    values.push(z.powi(n as u32) - ComplexValue::one(bits));
    let mut falling = 1.0;
    for j in 1..=order {
        if j > n {
            values.push(ComplexValue::zero(bits));
            continue;
        }
        falling *= (n - j + 1) as f64;
        values.push(z.powi((n - j) as u32).scale(&T::from_f64(falling, bits)));
    }
    Jet::new(values)
}

/// Same as [`g_jet`] but with the value pinned to the exact zero of `g_n`
/// at a root of unity.
pub fn g_jet_at_node<T: Real>(n: u32, node: &ComplexValue<T>, order: usize) -> Jet<T> {
    let mut values = g_jet(n, node, order).into_values();
    values[0] = ComplexValue::zero(node.bits());
    Jet::new(values)
}

/// Derivatives `p′, p″, p‴` at `z_ℓ` that make `h″`, `h‴` and `h⁗` of
/// `h = g·e^p` vanish there, solved in sequence (each step uses the
/// previous ones).
pub fn node_conditions<T: Real>(n: u32, l: u32, bits: u32) -> Result<NodeConditions<T>, ForgeError> {
    if n == 0 {
        return Err(ForgeError::InvalidOrder);
    }
    if l >= n {
        return Err(ForgeError::IndexOutOfRange { index: l, n });
    }
    let node = root_of_unity::<T>(n, l, bits);
    let g = g_jet(n, &node, 4);
    let g1 = g.get(1).clone();
    let g2 = g.get(2).clone();
    let g3 = g.get(3).clone();
    let g4 = g.get(4).clone();
    let k = |x: f64| T::from_f64(x, bits);

    let p1 = -(g2.clone() / g1.scale(&k(2.0)));

    let p1sq = p1.clone() * p1.clone();
    let num2 = g3.clone() + (g2.clone() * p1.clone()).scale(&k(3.0)) + (g1.clone() * p1sq.clone()).scale(&k(3.0));
    let p2 = -(num2 / g1.scale(&k(3.0)));

    let p1cube = p1sq.clone() * p1.clone();
    let num3 = g4
        + (g3 * p1.clone()).scale(&k(4.0))
        + (g2.clone() * p2.clone()).scale(&k(6.0))
        + (g2 * p1sq).scale(&k(6.0))
        + (g1.clone() * p1.clone() * p2.clone()).scale(&k(12.0))
        + (g1.clone() * p1cube).scale(&k(4.0));
    let p3 = -(num3 / g1.scale(&k(4.0)));

    Ok(NodeConditions { node, p1, p2, p3 })
}

/// The polynomial `p_n`: Hermite interpolant with `p(z_ℓ) = 0` and the
/// node conditions on `p′, p″, p‴`, degree at most `4n − 1`.
pub fn build_p<T: Real>(n: u32, bits: u32) -> Result<NewtonPolynomial<T>, ForgeError> {
    if n == 0 {
        return Err(ForgeError::InvalidOrder);
    }
    let mut nodes = Vec::with_capacity(n as usize);
    let mut jets = Vec::with_capacity(n as usize);
    for l in 0..n {
        let nc = node_conditions::<T>(n, l, bits)?;
        jets.push(Jet::new(vec![ComplexValue::zero(bits), nc.p1, nc.p2, nc.p3]));
        nodes.push(nc.node);
    }
    let spec = HermiteSpec::new(nodes, jets).map_err(ForgeError::Internal)?;
    Ok(hermite_interpolate(&spec))
}
