//! Hurwitz zeta evaluation with certified truncation error.
//!
//! z(L, q) = sum_{r>=0} 1/(q+r)^L for L > 1, evaluated by a direct partial
//! sum plus an Euler-Maclaurin tail: integral, half-term, and Bernoulli
//! corrections through B6. The first omitted correction (the B8 term) bounds
//! the remainder; the cutoff is doubled until that bound drops below half the
//! requested tolerance.

use std::sync::RwLock;

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Evaluator for z(lambda, i) at one fixed lambda with a growing cache of
/// integer-offset values and prefix sums.
pub struct ZetaEngine {
    lambda: f64,
    tolerance: f64,
    values: RwLock<Vec<f64>>,
    prefix: RwLock<Vec<f64>>,
}

impl ZetaEngine {
    pub fn new(lambda: f64) -> Result<Self> {
        Self::with_tolerance(lambda, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(lambda: f64, tolerance: f64) -> Result<Self> {
        if !(lambda > 1.0) {
            return Err(Error::DivergentParameter(lambda));
        }
        assert!(tolerance > 0.0, "tolerance must be positive");
        Ok(ZetaEngine {
            lambda,
            tolerance,
            values: RwLock::new(Vec::new()),
            prefix: RwLock::new(vec![0.0]),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// z(lambda, i) for integer i >= 1, within `tolerance` of the true value.
    pub fn hurwitz(&self, i: u32) -> f64 {
        assert!(i >= 1, "hurwitz offset must be >= 1");
        let idx = (i - 1) as usize;
        {
            let v = self.values.read().unwrap();
            if idx < v.len() {
                return v[idx];
            }
        }
        let mut v = self.values.write().unwrap();
        while v.len() <= idx {
            let next = v.len() as u32 + 1;
            let val = hurwitz_zeta_real_tol(self.lambda, next as f64, self.tolerance)
                .expect("lambda validated at construction");
            v.push(val);
        }
        v[idx]
    }

    /// Classical zeta: z(lambda, 1).
    pub fn zeta(&self) -> f64 {
        self.hurwitz(1)
    }

    /// sum_{i=1}^{l} z(lambda, i); cached prefix sums.
    pub fn sum_hurwitz(&self, l: u32) -> f64 {
        let idx = l as usize;
        {
            let p = self.prefix.read().unwrap();
            if idx < p.len() {
                return p[idx];
            }
        }
        // take values first to avoid holding both locks while computing
        let top = {
            let p = self.prefix.read().unwrap();
            p.len() as u32
        };
        for i in top..=l {
            self.hurwitz(i);
        }
        let mut p = self.prefix.write().unwrap();
        while p.len() <= idx {
            let i = p.len() as u32;
            let last = *p.last().unwrap();
            let vi = {
                let v = self.values.read().unwrap();
                v[(i - 1) as usize]
            };
            p.push(last + vi);
        }
        p[idx]
    }
}

/// Hurwitz zeta at a real offset q > 0 (default tolerance). Used for the
/// continuous-l derivative checks.
pub fn hurwitz_zeta_real(lambda: f64, q: f64) -> Result<f64> {
    hurwitz_zeta_real_tol(lambda, q, DEFAULT_TOLERANCE)
}

fn hurwitz_zeta_real_tol(lambda: f64, q: f64, tol: f64) -> Result<f64> {
    if !(lambda > 1.0) {
        return Err(Error::DivergentParameter(lambda));
    }
    assert!(q > 0.0, "hurwitz offset must be positive");
    let mut terms: u32 = 0;
    loop {
        let n = q + terms as f64;
        if em_remainder_bound(lambda, n) <= 0.5 * tol || terms >= 1 << 20 {
            break;
        }
        terms = if terms == 0 { 16 } else { terms * 2 };
    }
    // partial sum, small terms first
    let mut sum = 0.0;
    for r in (0..terms).rev() {
        sum += (q + r as f64).powf(-lambda);
    }
    let n = q + terms as f64;
    // integral + half term + B2, B4, B6 corrections
    let mut tail = n.powf(1.0 - lambda) / (lambda - 1.0) + 0.5 * n.powf(-lambda);
    let l = lambda;
    tail += l / 12.0 * n.powf(-l - 1.0);
    tail -= l * (l + 1.0) * (l + 2.0) / 720.0 * n.powf(-l - 3.0);
    tail += l * (l + 1.0) * (l + 2.0) * (l + 3.0) * (l + 4.0) / 30240.0 * n.powf(-l - 5.0);
    Ok(sum + tail)
}

/// Magnitude of the first omitted Euler-Maclaurin correction (B8 term).
fn em_remainder_bound(lambda: f64, n: f64) -> f64 {
    let l = lambda;
    let coeff = l * (l + 1.0) * (l + 2.0) * (l + 3.0) * (l + 4.0) * (l + 5.0) * (l + 6.0) / 1_209_600.0;
    coeff * n.powf(-l - 7.0)
}

/// d/dl z(lambda, l) = -lambda * z(lambda + 1, l).
pub fn hurwitz_zeta_dl(lambda: f64, l: u32) -> Result<f64> {
    if !(lambda > 1.0) {
        return Err(Error::DivergentParameter(lambda));
    }
    Ok(-lambda * hurwitz_zeta_real(lambda + 1.0, l as f64)?)
}

/// Both sides of the telescoped prefix identity
/// sum_{i=A}^{B} z(L,i) = (B-A+1) z(L) - sum_{k=1}^{B-1} (B-k)/k^L
///                        + sum_{k=1}^{A-2} (A-1-k)/k^L.
/// Returns (term-by-term lhs, closed-form rhs).
pub fn zeta_identity_forgen(engine: &ZetaEngine, a: u32, b: u32) -> (f64, f64) {
    assert!(a >= 1 && b >= a, "need B >= A >= 1");
    let lhs: f64 = (a..=b).map(|i| engine.hurwitz(i)).sum();
    let l = engine.lambda();
    let mut rhs = (b - a + 1) as f64 * engine.zeta();
    for k in 1..b {
        rhs -= (b - k) as f64 / (k as f64).powf(l);
    }
    if a >= 3 {
        for k in 1..=(a - 2) {
            rhs += (a - 1 - k) as f64 / (k as f64).powf(l);
        }
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        let e = ZetaEngine::new(2.0).unwrap();
        assert_abs_diff_eq!(e.hurwitz(1), PI * PI / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.hurwitz(2), PI * PI / 6.0 - 1.0, epsilon = 1e-12);
        let e4 = ZetaEngine::new(4.0).unwrap();
        assert_abs_diff_eq!(e4.zeta(), PI.powi(4) / 90.0, epsilon = 1e-12);
    }

    #[test]
    fn divergent_parameter_rejected() {
        assert!(ZetaEngine::new(1.0).is_err());
        assert!(ZetaEngine::new(0.3).is_err());
    }

    /// Independent brute-force oracle: 1e7 terms plus an integral bracket for
    /// the tail pins z(1.8, 1) well below the engine tolerance.
    #[test]
    fn brute_force_oracle_lambda_1_8() {
        let lam = 1.8f64;
        let n: u64 = 10_000_000;
        let mut sum = 0.0;
        for r in (1..=n).rev() {
            sum += (r as f64).powf(-lam);
        }
        let m = (n + 1) as f64;
        let tail_lo = m.powf(1.0 - lam) / (lam - 1.0);
        let tail_hi = tail_lo + m.powf(-lam);
        let e = ZetaEngine::new(lam).unwrap();
        let v = e.hurwitz(1);
        assert!(v >= sum + tail_lo - 1e-11 && v <= sum + tail_hi + 1e-11, "value {v} outside bracket");
        // reference computed independently to 30 digits
        assert_abs_diff_eq!(v, 1.882_229_618_102_822, epsilon = 1e-12);
    }

    #[test]
    fn shift_identity_up_to_100() {
        for lam in [1.8, 2.0, 3.5, 7.0] {
            let e = ZetaEngine::new(lam).unwrap();
            for i in 1..=100u32 {
                let lhs = e.hurwitz(i) - e.hurwitz(i + 1);
                let rhs = (i as f64).powf(-lam);
                assert_abs_diff_eq!(lhs, rhs, epsilon = 2.0 * e.tolerance());
            }
        }
    }

    #[test]
    fn monotone_in_offset_and_lambda() {
        let e = ZetaEngine::new(2.3).unwrap();
        for i in 1..60u32 {
            assert!(e.hurwitz(i) - e.hurwitz(i + 1) > 2.0 * e.tolerance());
        }
        let lo = ZetaEngine::new(2.0).unwrap();
        let hi = ZetaEngine::new(2.5).unwrap();
        for i in 1..40u32 {
            assert!(lo.hurwitz(i) > hi.hurwitz(i));
        }
    }

    #[test]
    fn large_lambda_limit() {
        let e = ZetaEngine::new(50.0).unwrap();
        assert!((e.hurwitz(1) - 1.0).abs() < 1e-15);
        assert!(e.hurwitz(2) < 1e-15);
    }

    #[test]
    fn forgen_identity() {
        let e = ZetaEngine::new(2.0).unwrap();
        let (lhs, rhs) = zeta_identity_forgen(&e, 1, 1);
        assert_abs_diff_eq!(lhs, e.zeta(), epsilon = 1e-12);
        assert_abs_diff_eq!(lhs, rhs, epsilon = 3.0 * e.tolerance());

        // A=1, B=3: sum = 3 zeta - (2/1 + 1/2^L)
        let (lhs, rhs) = zeta_identity_forgen(&e, 1, 3);
        let direct = 3.0 * e.zeta() - (2.0 + 0.25);
        assert_abs_diff_eq!(lhs, direct, epsilon = 5.0 * e.tolerance());
        assert_abs_diff_eq!(rhs, direct, epsilon = 5.0 * e.tolerance());

        let e25 = ZetaEngine::new(2.5).unwrap();
        let (lhs, rhs) = zeta_identity_forgen(&e25, 2, 5);
        assert_abs_diff_eq!(lhs, rhs, epsilon = 6.0 * e25.tolerance());
    }

    /// sum_{i=A+C}^{B+C} z = sum_{i=A}^{B} z - sum_{i=A}^{B} sum_{k=i}^{C-1+i} k^-L
    #[test]
    fn boundsum_identity_grid() {
        let e = ZetaEngine::new(2.2).unwrap();
        let lam = e.lambda();
        for a in 1..=10u32 {
            for b in a..=10 {
                for c in 1..=10u32 {
                    let lhs: f64 = (a + c..=b + c).map(|i| e.hurwitz(i)).sum();
                    let mut rhs: f64 = (a..=b).map(|i| e.hurwitz(i)).sum();
                    for i in a..=b {
                        for k in i..(c + i) {
                            rhs -= (k as f64).powf(-lam);
                        }
                    }
                    assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn derivative_closed_form() {
        // lambda=2, l=1: -2 zeta(3)
        let z3 = ZetaEngine::new(3.0).unwrap().zeta();
        assert_abs_diff_eq!(hurwitz_zeta_dl(2.0, 1).unwrap(), -2.0 * z3, epsilon = 1e-11);
        // lambda=3, l=2: -3 (zeta(4) - 1)
        let z4 = ZetaEngine::new(4.0).unwrap().zeta();
        assert_abs_diff_eq!(hurwitz_zeta_dl(3.0, 2).unwrap(), -3.0 * (z4 - 1.0), epsilon = 1e-11);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let lam = 2.0;
        let l = 5.0;
        let h = 1e-4;
        let fd = (hurwitz_zeta_real(lam, l + h).unwrap() - hurwitz_zeta_real(lam, l - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(hurwitz_zeta_dl(lam, 5).unwrap(), fd, epsilon = 1e-6);
    }

    #[test]
    fn real_offset_consistent_with_integer_cache() {
        let e = ZetaEngine::new(2.4).unwrap();
        for i in [1u32, 2, 7, 40] {
            assert_abs_diff_eq!(hurwitz_zeta_real(2.4, i as f64).unwrap(), e.hurwitz(i), epsilon = 1e-12);
        }
    }

    #[test]
    fn engine_shared_across_threads() {
        let e = std::sync::Arc::new(ZetaEngine::new(2.0).unwrap());
        let mut handles = Vec::new();
        for t in 0..4 {
            let e = e.clone();
            handles.push(std::thread::spawn(move || {
                let mut acc = 0.0;
                for i in 1..=200u32 {
                    acc += e.hurwitz(((i + t) % 200) + 1);
                }
                acc
            }));
        }
        let results: Vec<f64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for w in results.windows(2) {
            assert_abs_diff_eq!(w[0], w[1], epsilon = 1e-9);
        }
    }
}
