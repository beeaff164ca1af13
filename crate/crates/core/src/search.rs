//! One-dimensional maximization helpers.

use crate::cpoly::Real;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol` and returns the best abscissa
/// seen together with its value.
pub fn golden_max<T: Real>(mut f: impl FnMut(&T) -> T, lo: T, hi: T, tol: f64) -> (T, T) {
    let bits = lo.bits();
    let r = T::from_f64(INV_PHI, bits);
    let mut a = lo;
    let mut b = hi;
    let mut c = b.clone() - (b.clone() - a.clone()) * r.clone();
    let mut d = a.clone() + (b.clone() - a.clone()) * r.clone();
    let mut fc = f(&c);
    let mut fd = f(&d);
    let mut guard = 0;
    while (b.clone() - a.clone()).to_f64().abs() > tol && guard < 200 {
        guard += 1;
        if fc >= fd {
            b = d;
            d = c.clone();
            fd = fc;
            c = b.clone() - (b.clone() - a.clone()) * r.clone();
            fc = f(&c);
        } else {
            a = c;
            c = d.clone();
            fc = fd;
            d = a.clone() + (b.clone() - a.clone()) * r.clone();
            fd = f(&d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Indices of local maxima of a periodic sample sequence, best first.
pub fn periodic_peaks<T: Real>(values: &[T], limit: usize) -> Vec<usize> {
    let n = values.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = &values[(i + n - 1) % n];
            let next = &values[(i + 1) % n];
            values[i] >= *prev && values[i] >= *next
        })
        .collect();
    peaks.sort_by(|&i, &j| crate::cpoly::real::total_cmp(&values[j], &values[i]));
    peaks.truncate(limit);
    peaks
}
