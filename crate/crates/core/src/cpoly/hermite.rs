use super::complex::ComplexValue;
use super::jet::{factorial, Jet};
use super::newton::NewtonPolynomial;
use super::real::Real;
use super::PolyError;

/// Osculatory interpolation data: at each node, a jet of prescribed
/// derivatives `(P(xᵢ), P'(xᵢ), …, P^(J)(xᵢ))`.
#[derive(Clone, Debug)]
pub struct HermiteSpec<T = f64> {
    nodes: Vec<ComplexValue<T>>,
    jets: Vec<Jet<T>>,
}

/// Relative distance below which two nodes count as the same point.
pub const DUPLICATE_NODE_TOL: f64 = 1e-12;

impl<T: Real> HermiteSpec<T> {
    pub fn new(nodes: Vec<ComplexValue<T>>, jets: Vec<Jet<T>>) -> Result<Self, PolyError> {
        if nodes.is_empty() {
            return Err(PolyError::Empty);
        }
        if nodes.len() != jets.len() {
            return Err(PolyError::JetCountMismatch {
                nodes: nodes.len(),
                jets: jets.len(),
            });
        }
        let order = jets[0].order();
        if let Some(bad) = jets.iter().find(|j| j.order() != order) {
            return Err(PolyError::MixedJetOrders {
                expected: order,
                found: bad.order(),
            });
        }
        let bits = nodes[0].bits();
        let scale = nodes
            .iter()
            .map(ComplexValue::norm)
            .fold(T::zero(bits), T::max);
        let tol = scale * T::from_f64(DUPLICATE_NODE_TOL, bits);
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i].dist(&nodes[j]) <= tol {
                    return Err(PolyError::DuplicateNodes { first: i, second: j });
                }
            }
        }
        Ok(HermiteSpec { nodes, jets })
    }

    pub fn nodes(&self) -> &[ComplexValue<T>] {
        &self.nodes
    }

    pub fn jets(&self) -> &[Jet<T>] {
        &self.jets
    }

    /// Conditions imposed per node (`J + 1`).
    pub fn multiplicity(&self) -> usize {
        self.jets[0].order() + 1
    }
}

/// Refinement passes applied after the first divided-difference table.
const REFINE_STEPS: usize = 2;

/// Hermite interpolant by confluent divided differences.
///
/// The center sequence lists the nodes in order, each repeated `J + 1` times.
/// A divided difference over `k + 1` copies of the same node is
/// `P^(k)(xᵢ)/k!`; every other entry follows the usual recurrence. The
/// returned polynomial has `n(J+1) − 1` centers.
///
/// Clustered nodes cost digits in the table, so the residual jets at the nodes
/// are interpolated on the same centers and added back.
pub fn hermite_interpolate<T: Real>(spec: &HermiteSpec<T>) -> NewtonPolynomial<T> {
    let bits = spec.nodes[0].bits();
    let m = spec.multiplicity();
    let total = spec.nodes.len() * m;
    let seq: Vec<ComplexValue<T>> = (0..total).map(|i| spec.nodes[i / m].clone()).collect();
    let mut centers = seq.clone();
    centers.pop();

    let mut coeffs = divided_differences(&seq, &spec.jets, m);
    for _ in 0..REFINE_STEPS {
        let p = NewtonPolynomial::new(centers.clone(), coeffs.clone()).expect("finite table");
        let residual: Vec<Jet<T>> = spec
            .nodes
            .iter()
            .zip(&spec.jets)
            .map(|(x, jet)| {
                let got = p.eval_jet(x, m - 1);
                Jet::new((0..m).map(|j| jet.get(j).clone() - got.get(j).clone()).collect())
            })
            .collect();
        if residual.iter().all(|r| r.values().iter().all(ComplexValue::is_zero)) {
            break;
        }
        let fix = divided_differences(&seq, &residual, m);
        let next: Vec<_> = coeffs.iter().zip(fix).map(|(c, d)| c.clone() + d).collect();
        if !next.iter().all(ComplexValue::is_finite) {
            break;
        }
        coeffs = next;
    }
    // Adding +0 turns any signed zero into +0.
    let coeffs = coeffs
        .into_iter()
        .map(|c| ComplexValue::new(c.re + T::zero(bits), c.im + T::zero(bits)))
        .collect();
    NewtonPolynomial::new(centers, coeffs).expect("center/coefficient counts agree by construction")
}

/// Top row of the confluent divided-difference table over `seq`, where each
/// node occupies `m` consecutive slots.
fn divided_differences<T: Real>(seq: &[ComplexValue<T>], jets: &[Jet<T>], m: usize) -> Vec<ComplexValue<T>> {
    let bits = seq[0].bits();
    let total = seq.len();
    let group = |i: usize| i / m;
    // col[i] holds f[x_i, …, x_{i+k}] for the current column k.
    let mut col: Vec<ComplexValue<T>> = (0..total).map(|i| jets[group(i)].get(0).clone()).collect();
    let mut coeffs = Vec::with_capacity(total);
    coeffs.push(col[0].clone());
    for k in 1..total {
        for i in 0..total - k {
            col[i] = if group(i) == group(i + k) {
                let inv = T::one(bits) / T::from_f64(factorial(k), bits);
                jets[group(i)].get(k).scale(&inv)
            } else {
                (col[i + 1].clone() - col[i].clone()) / (seq[i + k].clone() - seq[i].clone())
            };
        }
        coeffs.push(col[0].clone());
    }
    coeffs
}
