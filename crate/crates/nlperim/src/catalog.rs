//! Minimizer catalog for fixed area.
//!
//! Every n >= 1 decomposes uniquely as either l^2 + k1 (0 <= k1 <= l-1) or
//! l(l+1) + k2 (0 <= k2 <= l). The catalog pairs the canonical shape of that
//! decomposition with every shorter-side rectangle-with-protuberance of the
//! same area and the same classical perimeter; the extended catalog adds all
//! rectangles-with-protuberance of the area regardless of perimeter.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{ProtuberanceSide, ShapeFamily, ShapeSpec};
use crate::perimeter::perimeter_shape;
use crate::zeta::ZetaEngine;
use crate::COMPARISON_MARGIN;

/// Unique square/quasi-square decomposition plus all rectangle forms.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub n: u32,
    /// (l, k1) with n = l^2 + k1, 0 <= k1 <= l-1, when that case applies.
    pub square_form: Option<(u32, u32)>,
    /// (l, k2) with n = l(l+1) + k2, 0 <= k2 <= l, when that case applies.
    pub quasi_form: Option<(u32, u32)>,
    /// All rectangle-with-protuberance forms of area n, both sides.
    pub rect_forms: Vec<ShapeSpec>,
}

/// One catalog member with both perimeters attached.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub spec: ShapeSpec,
    pub classical_perimeter: u32,
    pub nonlocal_perimeter: f64,
}

/// Exactly one of the two family forms applies.
pub fn decompose(n: u32) -> Decomposition {
    assert!(n >= 1);
    let l = (n as f64).sqrt() as u32;
    let l = if (l + 1) * (l + 1) <= n { l + 1 } else { l };
    let (square_form, quasi_form) = if n - l * l <= l.saturating_sub(1) {
        (Some((l, n - l * l)), None)
    } else {
        (None, Some((l, n - l * l - l)))
    };
    let mut rect_forms = Vec::new();
    for a in 1..=n {
        if a * a > n {
            break;
        }
        for b in a..=n {
            if a * b > n {
                break;
            }
            let k = n - a * b;
            if k == 0 {
                rect_forms.push(ShapeSpec::rect(a, b, 0, ProtuberanceSide::Shorter));
            } else {
                if k <= a.saturating_sub(1) {
                    rect_forms.push(ShapeSpec::rect(a, b, k, ProtuberanceSide::Shorter));
                }
                if k <= b - 1 {
                    rect_forms.push(ShapeSpec::rect(a, b, k, ProtuberanceSide::Longer));
                }
            }
        }
    }
    Decomposition { n, square_form, quasi_form, rect_forms }
}

/// Canonical family shape for area n. A full-side protuberance on a
/// quasi-square (k2 = l) degenerates to the rectangle l x (l+2).
pub fn canonical_spec(n: u32) -> ShapeSpec {
    let d = decompose(n);
    if let Some((l, k1)) = d.square_form {
        ShapeSpec { family: ShapeFamily::Square(l), protuberance: k1, side: ProtuberanceSide::Shorter }
    } else {
        let (l, k2) = d.quasi_form.unwrap();
        if k2 == l {
            ShapeSpec::rect(l, l + 2, 0, ProtuberanceSide::Shorter)
        } else {
            ShapeSpec { family: ShapeFamily::QuasiSquare(l), protuberance: k2, side: ProtuberanceSide::Shorter }
        }
    }
}

/// Catalog sets: the minimizer candidates and the extended superset.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogSets {
    /// Canonical shape plus equal-classical-perimeter shorter-side
    /// rectangle-with-protuberance forms.
    pub minimizers: Vec<CatalogEntry>,
    /// All rectangles-with-protuberance of area n (both sides), plus the
    /// minimizers.
    pub extended: Vec<ShapeSpec>,
}

fn same_realized_shape(a: &ShapeSpec, b: &ShapeSpec) -> bool {
    let (aa, ab) = a.sides();
    let (ba, bb) = b.sides();
    if a.protuberance == 0 && b.protuberance == 0 {
        return (aa, ab) == (ba, bb);
    }
    (aa, ab) == (ba, bb) && a.protuberance == b.protuberance && a.side == b.side
}

pub fn catalog(n: u32, engine: &ZetaEngine) -> Result<CatalogSets> {
    let canonical = canonical_spec(n);
    let reference = canonical.classical_perimeter();
    let dec = decompose(n);
    let mut minimizers = vec![entry(&canonical, engine)?];
    let mut extended: Vec<ShapeSpec> = vec![canonical];
    for spec in &dec.rect_forms {
        if same_realized_shape(spec, &canonical) {
            continue;
        }
        extended.push(*spec);
        if spec.side == ProtuberanceSide::Shorter && spec.classical_perimeter() == reference {
            minimizers.push(entry(spec, engine)?);
        }
    }
    Ok(CatalogSets { minimizers, extended })
}

fn entry(spec: &ShapeSpec, engine: &ZetaEngine) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        spec: *spec,
        classical_perimeter: spec.classical_perimeter(),
        nonlocal_perimeter: perimeter_shape(spec, engine)?,
    })
}

/// Subset of the catalog attaining the minimal nonlocal perimeter; ties
/// within the comparison margin are returned together.
pub fn argmin_shape(n: u32, engine: &ZetaEngine) -> Result<Vec<CatalogEntry>> {
    let cat = catalog(n, engine)?;
    let best = cat
        .minimizers
        .iter()
        .map(|e| e.nonlocal_perimeter)
        .fold(f64::INFINITY, f64::min);
    Ok(cat
        .minimizers
        .into_iter()
        .filter(|e| e.nonlocal_perimeter <= best + COMPARISON_MARGIN)
        .collect())
}

/// Bisection root of Per(spec1) - Per(spec2) as a function of lambda on
/// (lo, hi), to absolute precision `tol`. None when there is no sign change.
pub fn bisect_shape_gap(s1: &ShapeSpec, s2: &ShapeSpec, lo: f64, hi: f64, tol: f64) -> Result<Option<f64>> {
    let gap = |lam: f64| -> Result<f64> {
        let e = ZetaEngine::new(lam)?;
        Ok(perimeter_shape(s1, &e)? - perimeter_shape(s2, &e)?)
    };
    let mut lo = lo;
    let mut hi = hi;
    let flo = gap(lo)?;
    let fhi = gap(hi)?;
    if flo == 0.0 {
        return Ok(Some(lo));
    }
    if flo.signum() == fhi.signum() {
        return Ok(None);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = gap(mid)?;
        if fm == 0.0 {
            return Ok(Some(mid));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Crossover exponent between the first two catalog shapes, searched on
/// (1.8, 20] to 1e-6. None when one shape dominates throughout.
pub fn crossover_lambda(n: u32) -> Result<Option<f64>> {
    crossover_lambda_with(n, 1.8 + 1e-9, 20.0, 1e-6)
}

pub fn crossover_lambda_with(n: u32, lo: f64, hi: f64, tol: f64) -> Result<Option<f64>> {
    let probe = ZetaEngine::new(2.0)?;
    let cat = catalog(n, &probe)?;
    if cat.minimizers.len() < 2 {
        return Err(Error::NoTwoShapes(n));
    }
    bisect_shape_gap(&cat.minimizers[0].spec, &cat.minimizers[1].spec, lo, hi, tol)
}

// ---------------------------------------------------------------------------
// positivity diagnostics for the comparison functions
// ---------------------------------------------------------------------------

/// Values of the square-vs-rectangle comparison functions at one parameter
/// point, with flags for any non-positive value where positivity is claimed.
#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsReport {
    pub lambda: f64,
    pub f1: Option<f64>,
    pub f2: Option<f64>,
    pub f_tilde1: Option<f64>,
    pub f_tilde2: Option<f64>,
    /// Gap (Per(rect) - Per(square)) / 2 via F1 + F2; exact for n = l^2 = ab.
    pub delta: Option<f64>,
    pub delta_tilde: Option<f64>,
    pub lemma_f: Option<f64>,
    /// Points where a claimed-positive function came out non-positive.
    pub violations: Vec<String>,
}

fn pow_sum(lo: u32, hi_incl: u32, exp: f64) -> f64 {
    // sum_{k=lo}^{hi} k^exp, empty when hi < lo
    if hi_incl < lo {
        return 0.0;
    }
    (lo..=hi_incl).map(|k| (k as f64).powf(exp)).sum()
}

/// F1(a, l) = (a + l^2/a - 2l) sum_{k<a} k^{1-L}
///            - 2(l-a) sum_{k=a}^{l-1} k^{1-L} + (l^2-a^2)/a^L.
pub fn f1(a: u32, l: u32, lambda: f64) -> f64 {
    let (af, lf) = (a as f64, l as f64);
    (af + lf * lf / af - 2.0 * lf) * pow_sum(1, a.saturating_sub(1), 1.0 - lambda)
        - 2.0 * (lf - af) * pow_sum(a, l.saturating_sub(1), 1.0 - lambda)
        + (lf * lf - af * af) / af.powf(lambda)
}

/// F2(a, l, b) = sum_{k=a+1}^{l-1} (l^2-ak)/k^L - sum_{k=l}^{b-1} (l^2-ak)/k^L.
pub fn f2(a: u32, l: u32, b: u32, lambda: f64) -> f64 {
    let (af, lf) = (a as f64, l as f64);
    let mut acc = 0.0;
    for k in (a + 1)..l {
        acc += (lf * lf - af * k as f64) / (k as f64).powf(lambda);
    }
    for k in l..b {
        acc -= (lf * lf - af * k as f64) / (k as f64).powf(lambda);
    }
    acc
}

/// F1 with the protuberance correction.
pub fn f_tilde1(a: u32, l: u32, k1: u32, lambda: f64) -> f64 {
    let (af, lf, kf) = (a as f64, l as f64, k1 as f64);
    let mut corr = -kf / af * weighted_sum(a, lambda) + kf / lf.powf(lambda);
    corr += weighted_sum(k1, lambda);
    f1(a, l, lambda) + corr
}

/// sum_{r=1}^{m-1} (m-r)/r^L
fn weighted_sum(m: u32, lambda: f64) -> f64 {
    let mut acc = 0.0;
    for r in 1..m {
        acc += (m - r) as f64 / (r as f64).powf(lambda);
    }
    acc
}

/// F2 with the protuberance correction; the rectangle side is b = floor((l^2+k1)/a).
pub fn f_tilde2(a: u32, l: u32, k1: u32, lambda: f64) -> f64 {
    let (af, lf) = (a as f64, l as f64);
    let n = lf * lf + k1 as f64;
    let b_excl = ((l * l + k1) / a) as u32; // floor((l^2+k1)/a); sums run to b_excl - 1
    let mut acc = 0.0;
    for r in (a + 1)..l {
        acc += (lf * lf - af * r as f64) / (r as f64).powf(lambda);
    }
    for r in l..b_excl {
        acc -= (n - af * r as f64) / (r as f64).powf(lambda);
    }
    acc
}

/// Delta(l, alpha, C, lambda): rectangle-with-protuberance vs
/// square-with-protuberance gap in the (alpha, C) parametrization.
pub fn delta_alpha_c(l: u32, alpha: u32, c: u32, lambda: f64) -> Result<f64> {
    if alpha >= l {
        return Err(Error::HypothesisViolated(format!("need alpha < l, got alpha={alpha}, l={l}")));
    }
    let k = (1 + c as i64) * (l as i64 - alpha as i64) - (alpha as i64 * alpha as i64);
    if k <= 0 {
        return Err(Error::HypothesisViolated(format!(
            "k1 - k2 = -alpha^2 + (1+C)(l-alpha) must be positive, got {k}"
        )));
    }
    let k = k as u32;
    let lf = l as f64;
    let kf = k as f64;
    let mut acc = kf * pow_sum(1, l, -lambda);
    let top = l + alpha + c + 1;
    for r in 1..top {
        acc -= (l - alpha) as f64 * (top - r) as f64 / (r as f64).powf(lambda);
    }
    for r in 1..(l - alpha) {
        acc -= top as f64 * (l - alpha - r) as f64 / (r as f64).powf(lambda);
    }
    for r in 1..l {
        acc += 2.0 * lf * (l - r) as f64 / (r as f64).powf(lambda);
    }
    acc += weighted_sum(k, lambda);
    Ok(acc)
}

/// DeltaTilde(l, alpha, C, L) = Delta(l, alpha, C-1, L)
///                              - (l-alpha) sum_{r=l+1}^{l+alpha+C} r^-L.
pub fn delta_tilde(l: u32, alpha: u32, c: u32, lambda: f64) -> Result<f64> {
    if c < 2 {
        return Err(Error::HypothesisViolated(format!("need C >= 2, got {c}")));
    }
    let base = delta_alpha_c(l, alpha, c - 1, lambda)?;
    let mut tail = 0.0;
    for r in (l + 1)..=(l + alpha + c) {
        tail += (r as f64).powf(-lambda);
    }
    Ok(base - (l - alpha) as f64 * tail)
}

/// The increasing function whose positivity closes the cross-convex
/// reduction: f(x, L) = sum_{j<=x} j^{1-L} - x z(L, x+2).
pub fn lemma_f(x: u32, lambda: f64) -> Result<f64> {
    let e = ZetaEngine::new(lambda)?;
    Ok(pow_sum(1, x, 1.0 - lambda) - x as f64 * e.hurwitz(x + 2))
}

/// Printed closed form of the (l, a, b) = (2, 1, 4) comparison gap,
/// 1 - 2^{1-L} - 3^{1-L}; its positive root is approximately 1.78788.
///
/// Note: the strip-formula gap (Per(R_{1,4}) - Per(Q_2))/2 equals
/// 1 - 2^{1-L} - 3^{-L} instead; see `delta_l2_strip`. The two differ in the
/// last exponent, and only the printed form evaluates to 1/6 at L = 2.
pub fn delta_l2_printed(lambda: f64) -> f64 {
    1.0 - 2f64.powf(1.0 - lambda) - 3f64.powf(1.0 - lambda)
}

/// Exact (Per(R_{1,4}) - Per(Q_2)) / 2 from the closed forms.
pub fn delta_l2_strip(lambda: f64) -> f64 {
    1.0 - 2f64.powf(1.0 - lambda) - 3f64.powf(-lambda)
}

/// Positive root of `delta_l2_printed`, bisected on (1, 3).
pub fn delta_l2_printed_root() -> f64 {
    let mut lo = 1.0001f64;
    let mut hi = 3.0f64;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if delta_l2_printed(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Evaluates every diagnostic applicable to (a, b, l, k1, k2) at the engine's
/// lambda and flags claimed-positive values that are not positive.
///
/// Hypotheses follow the comparison proofs: F1/F2 need n = l^2 = ab with
/// a < b (F2 additionally l >= a+3); the tilde variants need l >= a + sqrt(a)
/// (F-tilde2 additionally l >= a+3); DeltaTilde needs C >= 2 and
/// l > alpha^2 + alpha.
pub fn positivity_diagnostics(
    a: u32,
    b: u32,
    l: u32,
    k1: u32,
    k2: u32,
    engine: &ZetaEngine,
) -> Result<DiagnosticsReport> {
    if a == 0 || l == 0 {
        return Err(Error::HypothesisViolated("a and l must be positive".into()));
    }
    let lambda = engine.lambda();
    let mut rep = DiagnosticsReport {
        lambda,
        f1: None,
        f2: None,
        f_tilde1: None,
        f_tilde2: None,
        delta: None,
        delta_tilde: None,
        lemma_f: None,
        violations: Vec::new(),
    };
    let exact_square = a * b == l * l && a < b;
    if exact_square {
        let v1 = f1(a, l, lambda);
        rep.f1 = Some(v1);
        if v1 <= 0.0 {
            rep.violations.push(format!("F1({a},{l}) = {v1} <= 0"));
        }
        let v2 = f2(a, l, b, lambda);
        rep.f2 = Some(v2);
        if l >= a + 3 && v2 < 0.0 {
            rep.violations.push(format!("F2({a},{l},{b}) = {v2} < 0"));
        }
        rep.delta = Some(v1 + v2);
    }
    if k1 >= 1 && (l as f64) >= a as f64 + (a as f64).sqrt() {
        let t1 = f_tilde1(a, l, k1, lambda);
        rep.f_tilde1 = Some(t1);
        if t1 <= 0.0 {
            rep.violations.push(format!("F~1({a},{l},{k1}) = {t1} <= 0"));
        }
        if l >= a + 3 {
            let t2 = f_tilde2(a, l, k1, lambda);
            rep.f_tilde2 = Some(t2);
            if t2 <= 0.0 {
                rep.violations.push(format!("F~2({a},{l},{k1}) = {t2} <= 0"));
            }
        }
    }
    if k1 > k2 && a < l {
        let alpha = l - a;
        if l > alpha * alpha + alpha {
            // recover C from k1 - k2 = -alpha^2 + C(l - alpha) when integral
            let num = (k1 - k2) as i64 + (alpha as i64) * (alpha as i64);
            let den = (l - alpha) as i64;
            if num % den == 0 && num / den >= 2 {
                let c = (num / den) as u32;
                let dt = delta_tilde(l, alpha, c, lambda)?;
                rep.delta_tilde = Some(dt);
                if dt <= 0.0 {
                    rep.violations.push(format!("DeltaTilde({l},{alpha},{c}) = {dt} <= 0"));
                }
            }
        }
    }
    let lf = lemma_f(l.max(1), lambda)?;
    rep.lemma_f = Some(lf);
    if lf <= 0.0 {
        rep.violations.push(format!("f({l}) = {lf} <= 0"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn decompose_examples() {
        let d = decompose(9);
        assert_eq!(d.square_form, Some((3, 0)));
        assert_eq!(d.quasi_form, None);

        let d = decompose(10);
        assert_eq!(d.square_form, Some((3, 1)));
        assert!(d
            .rect_forms
            .iter()
            .any(|s| s.sides() == (2, 5) && s.protuberance == 0));

        let d = decompose(12);
        assert_eq!(d.quasi_form, Some((3, 0)));
        for sides in [(2, 6), (1, 12)] {
            assert!(
                d.rect_forms.iter().any(|s| s.sides() == sides),
                "missing rect {sides:?}"
            );
        }
        // the 3x3 square with a full-side protuberance is the 3x4 rectangle
        assert!(d.rect_forms.iter().any(|s| s.sides() == (3, 4) && s.protuberance == 0));
    }

    #[test]
    fn decompose_unique_reconstruction() {
        for n in 1..=400u32 {
            let d = decompose(n);
            match (d.square_form, d.quasi_form) {
                (Some((l, k1)), None) => {
                    assert_eq!(l * l + k1, n);
                    assert!(k1 <= l - 1 || (l == 1 && k1 == 0));
                }
                (None, Some((l, k2))) => {
                    assert_eq!(l * (l + 1) + k2, n);
                    assert!(k2 <= l);
                }
                other => panic!("n={n}: not exactly one form: {other:?}"),
            }
            for r in &d.rect_forms {
                assert_eq!(r.area(), n);
                assert!(r.validate().is_ok());
            }
        }
    }

    #[test]
    fn catalog_examples() {
        let e = ZetaEngine::new(2.0).unwrap();
        let c4 = catalog(4, &e).unwrap();
        assert_eq!(c4.minimizers.len(), 1);
        assert_eq!(c4.minimizers[0].spec.sides(), (2, 2));

        let c10 = catalog(10, &e).unwrap();
        assert_eq!(c10.minimizers.len(), 2);
        let sides: Vec<_> = c10.minimizers.iter().map(|m| (m.spec.sides(), m.spec.protuberance)).collect();
        assert!(sides.contains(&((3, 3), 1)));
        assert!(sides.contains(&((2, 5), 0)));
        assert!(c10.minimizers.iter().all(|m| m.classical_perimeter == 14));

        let c7 = catalog(7, &e).unwrap();
        assert_eq!(c7.minimizers.len(), 1);
        assert_eq!(c7.minimizers[0].spec.sides(), (2, 3));
        assert_eq!(c7.minimizers[0].spec.protuberance, 1);
    }

    /// Two-candidate areas in 1..=30 under the equal-classical-perimeter
    /// rule: exactly {10, 17, 18, 21, 26, 27, 28}.
    #[test]
    fn catalog_two_candidate_areas() {
        let e = ZetaEngine::new(2.0).unwrap();
        let mut multi = Vec::new();
        for n in 1..=30 {
            let c = catalog(n, &e).unwrap();
            assert!(c.minimizers.len() <= 2, "n={n}");
            if c.minimizers.len() == 2 {
                multi.push(n);
            }
        }
        assert_eq!(multi, vec![10, 17, 18, 21, 26, 27, 28]);
    }

    #[test]
    fn argmin_examples() {
        let e2 = ZetaEngine::new(2.0).unwrap();
        let m = argmin_shape(9, &e2).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].spec.sides(), (3, 3));

        let e5 = ZetaEngine::new(5.0).unwrap();
        let m = argmin_shape(10, &e5).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].spec.sides(), m[0].spec.protuberance), ((3, 3), 1));

        let e19 = ZetaEngine::new(1.9).unwrap();
        let m = argmin_shape(10, &e19).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].spec.sides(), (2, 5));
    }

    /// Crossover exponents, frozen after first computation. The bisection is
    /// deterministic; these are regression pins at 1e-5.
    #[test]
    fn crossover_regression_values() {
        let expected = [
            (10, Some(3.278_684)),
            (17, Some(1.854_827)),
            (18, Some(5.508_362)),
            (21, Some(2.186_916)),
            (26, None),
            (27, Some(3.048_716)),
            (28, Some(7.979_831)),
        ];
        for (n, want) in expected {
            let got = crossover_lambda(n).unwrap();
            match (got, want) {
                (Some(g), Some(w)) => assert!((g - w).abs() < 1e-5, "n={n}: {g} vs {w}"),
                (None, None) => {}
                other => panic!("n={n}: {other:?}"),
            }
        }
        assert!(matches!(crossover_lambda(9), Err(Error::NoTwoShapes(9))));
    }

    #[test]
    fn crossover_stability_under_tolerance() {
        let coarse = crossover_lambda_with(10, 1.8 + 1e-9, 20.0, 1e-6).unwrap().unwrap();
        let fine = crossover_lambda_with(10, 1.8 + 1e-9, 20.0, 1e-8).unwrap().unwrap();
        assert!((coarse - fine).abs() < 1e-5);
    }

    #[test]
    fn printed_l2_gap_and_roots() {
        assert_abs_diff_eq!(delta_l2_printed(2.0), 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(delta_l2_printed_root(), 1.787_884_911, epsilon = 1e-6);
        // the strip-formula gap differs: 7/18 at lambda = 2
        assert_abs_diff_eq!(delta_l2_strip(2.0), 7.0 / 18.0, epsilon = 1e-15);
        let e = ZetaEngine::new(2.0).unwrap();
        let q2 = perimeter_shape(&ShapeSpec::square(2, 0), &e).unwrap();
        let r14 = perimeter_shape(&ShapeSpec::rect(1, 4, 0, ProtuberanceSide::Shorter), &e).unwrap();
        assert_abs_diff_eq!((r14 - q2) / 2.0, delta_l2_strip(2.0), epsilon = 1e-10);
    }

    #[test]
    fn f1_closed_instance() {
        // F1(1,3) = 4 - 8/2^L
        for lam in [1.9, 2.0, 3.0] {
            assert_abs_diff_eq!(f1(1, 3, lam), 4.0 - 8.0 * 2f64.powf(-lam), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(f1(1, 3, 2.0), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn delta_equals_f1_plus_f2_equals_strip_gap() {
        // n = l^2 = ab with a < b: the decomposition is exact
        for (a, l) in [(2u32, 4u32), (1, 3), (3, 6), (4, 6), (2, 6)] {
            let b = l * l / a;
            assert_eq!(a * b, l * l);
            for lam in [1.9, 2.4, 3.0] {
                let e = ZetaEngine::new(lam).unwrap();
                let gap = (perimeter_shape(&ShapeSpec::rect(a, b, 0, ProtuberanceSide::Shorter), &e).unwrap()
                    - perimeter_shape(&ShapeSpec::square(l, 0), &e).unwrap())
                    / 2.0;
                assert_abs_diff_eq!(f1(a, l, lam) + f2(a, l, b, lam), gap, epsilon = 1e-9);
            }
        }
    }

    /// Any rectangle factorization of a square or quasi-square area has a
    /// strictly larger nonlocal perimeter than the square/quasi-square.
    #[test]
    fn rectangles_lose_to_squares_and_quasi_squares() {
        for lam in [1.9, 2.5, 5.0] {
            let e = ZetaEngine::new(lam).unwrap();
            for l in 2..=12u32 {
                let square = perimeter_shape(&ShapeSpec::square(l, 0), &e).unwrap();
                let quasi = perimeter_shape(&ShapeSpec::quasi_square(l, 0), &e).unwrap();
                for a in 1..=12u32 {
                    if (l * l) % a == 0 && a < l * l / a {
                        let r = ShapeSpec::rect(a, l * l / a, 0, ProtuberanceSide::Shorter);
                        assert!(
                            perimeter_shape(&r, &e).unwrap() > square + COMPARISON_MARGIN,
                            "lam={lam} square l={l} vs {r:?}"
                        );
                    }
                    let n = l * (l + 1);
                    if n % a == 0 && a < n / a && (a, n / a) != (l, l + 1) {
                        let r = ShapeSpec::rect(a, n / a, 0, ProtuberanceSide::Shorter);
                        assert!(
                            perimeter_shape(&r, &e).unwrap() > quasi + COMPARISON_MARGIN,
                            "lam={lam} quasi l={l} vs {r:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_f_positive_small_x() {
        // f(1, L) = 1 - z(L, 3)
        let e = ZetaEngine::new(1.9).unwrap();
        assert_abs_diff_eq!(lemma_f(1, 1.9).unwrap(), 1.0 - e.hurwitz(3), epsilon = 1e-11);
        assert!(lemma_f(2, 1.9).unwrap() > 0.0);
    }

    #[test]
    fn diagnostics_report_at_square_instance() {
        let e = ZetaEngine::new(2.0).unwrap();
        let rep = positivity_diagnostics(2, 8, 4, 0, 0, &e).unwrap();
        assert!(rep.f1.unwrap() > 0.0);
        assert!(rep.f2.unwrap() >= 0.0);
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
    }

    /// At lambda barely above 1.8 the protuberance-corrected F~1 dips
    /// negative near l = a + sqrt(a); the diagnostics must flag it.
    #[test]
    fn diagnostics_flag_f_tilde1_corner() {
        let e = ZetaEngine::with_tolerance(1.81, 1e-12).unwrap();
        let rep = positivity_diagnostics(15, 24, 19, 3, 4, &e).unwrap();
        let t1 = rep.f_tilde1.unwrap();
        assert!(t1 < 0.0, "expected negative corner value, got {t1}");
        assert!(rep.violations.iter().any(|v| v.contains("F~1")));
        // the end-to-end inequality is nevertheless intact
        let q = perimeter_shape(&ShapeSpec::square(19, 3), &e).unwrap();
        let r = perimeter_shape(&ShapeSpec::rect(15, 24, 4, ProtuberanceSide::Shorter), &e).unwrap();
        assert!(r > q + COMPARISON_MARGIN);
    }
}
