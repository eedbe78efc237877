//! Excitation-energy landscape of the long-range bi-axial Ising model.
//!
//! On the infinite lattice the excitation energy of a droplet of n plus
//! spins relative to the all-minus state is twice the nonlocal perimeter of
//! its support minus twice the field times n. Restricted to the minimizers
//! of each area this gives a sawtooth landscape whose global maximum is the
//! critical droplet.

use serde::Serialize;

use crate::catalog::{argmin_shape, canonical_spec};
use crate::error::{Error, Result};
use crate::lattice::{Cell, Polyomino, ShapeSpec};
use crate::perimeter::perimeter;
use crate::zeta::{hurwitz_zeta_real, ZetaEngine};
use crate::COMPARISON_MARGIN;

/// Interaction decay, external field, optional torus side.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelParams {
    pub lambda: f64,
    pub h: f64,
    pub torus_side: Option<u32>,
}

impl ModelParams {
    pub fn new(lambda: f64, h: f64) -> Result<Self> {
        if !(lambda > 1.0) {
            return Err(Error::DivergentParameter(lambda));
        }
        if !(h > 0.0) {
            return Err(Error::PreconditionViolated(format!("field h must be positive, got {h}")));
        }
        Ok(ModelParams { lambda, h, torus_side: None })
    }

    pub fn on_torus(mut self, side: u32) -> Result<Self> {
        if side < 4 {
            return Err(Error::PreconditionViolated(format!("torus side must be >= 4, got {side}")));
        }
        self.torus_side = Some(side);
        Ok(self)
    }
}

/// Minimal excitation energy on the foliation with n plus spins.
#[derive(Debug, Clone, Serialize)]
pub struct LandscapePoint {
    pub n: u32,
    pub minimizing_specs: Vec<ShapeSpec>,
    pub delta_h: f64,
}

/// delta H(n) = 2 min-per-catalog Per - 2 h n, with the attaining specs.
pub fn delta_h(n: u32, h: f64, engine: &ZetaEngine) -> Result<LandscapePoint> {
    let entries = argmin_shape(n, engine)?;
    let min_per = entries[0].nonlocal_perimeter.min(
        entries
            .iter()
            .map(|e| e.nonlocal_perimeter)
            .fold(f64::INFINITY, f64::min),
    );
    Ok(LandscapePoint {
        n,
        minimizing_specs: entries.into_iter().map(|e| e.spec).collect(),
        delta_h: 2.0 * min_per - 2.0 * h * n as f64,
    })
}

/// Landscape sweep result.
#[derive(Debug, Clone, Serialize)]
pub struct Landscape {
    pub points: Vec<LandscapePoint>,
    /// Area of the global maximum (the critical droplet).
    pub n_c: u32,
    /// Other areas tying with the maximum within the comparison margin.
    pub ties: Vec<u32>,
    /// Longer rectangle side of the critical droplet's canonical shape: the
    /// critical length.
    pub critical_length: u32,
}

pub fn landscape(h: f64, engine: &ZetaEngine, n_max: u32) -> Result<Landscape> {
    assert!(n_max >= 4, "need n_max >= 4");
    let mut points = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        points.push(delta_h(n, h, engine)?);
    }
    let mut n_c = 1;
    let mut best = f64::NEG_INFINITY;
    for p in &points {
        if p.delta_h > best {
            best = p.delta_h;
            n_c = p.n;
        }
    }
    let ties: Vec<u32> = points
        .iter()
        .filter(|p| p.n != n_c && (p.delta_h - best).abs() <= COMPARISON_MARGIN)
        .map(|p| p.n)
        .collect();
    let (_, b) = canonical_spec(n_c).sides();
    Ok(Landscape { points, n_c, ties, critical_length: b })
}

/// Short-range analogue: twice the minimal classical perimeter minus the
/// field term. The canonical family shape attains the minimal classical
/// perimeter for every area.
pub fn short_range_delta_h(n: u32, h: f64) -> f64 {
    let per = canonical_spec(n).classical_perimeter();
    2.0 * per as f64 - 2.0 * h * n as f64
}

/// Square-droplet energy by direct Hurwitz sums: 8 l sum_{i<=l} z - 2 h l^2.
pub fn f_square(l: u32, h: f64, engine: &ZetaEngine) -> f64 {
    8.0 * l as f64 * engine.sum_hurwitz(l) - 2.0 * h * (l as f64) * (l as f64)
}

/// Rewritten square-droplet energy, valid for lambda > 2 and continuous l:
/// -2 h l^2 + 8 l^2 z(L, l) + 8 l (z(L-1) - z(L-1, l)).
pub fn f_square_rewritten(l: f64, h: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 2.0) {
        return Err(Error::PreconditionViolated(format!(
            "the rewritten droplet energy needs lambda > 2, got {lambda}"
        )));
    }
    let z_l = hurwitz_zeta_real(lambda, l)?;
    let z1 = hurwitz_zeta_real(lambda - 1.0, 1.0)?;
    let z1_l = hurwitz_zeta_real(lambda - 1.0, l)?;
    Ok(-2.0 * h * l * l + 8.0 * l * l * z_l + 8.0 * l * (z1 - z1_l))
}

/// Critical length restricted to squares.
#[derive(Debug, Clone, Serialize)]
pub struct SquareCriticalLength {
    pub l_c: u32,
    pub f_values: Vec<f64>,
}

/// argmax over integer l in [1, l_max] of the square-droplet energy.
pub fn critical_length_square(h: f64, engine: &ZetaEngine, l_max: u32) -> Result<SquareCriticalLength> {
    assert!(l_max >= 2);
    let f_values: Vec<f64> = (1..=l_max).map(|l| f_square(l, h, engine)).collect();
    let mut best = 0usize;
    for (i, v) in f_values.iter().enumerate() {
        if *v > f_values[best] {
            best = i;
        }
    }
    for (i, v) in f_values.iter().enumerate() {
        if i != best && (v - f_values[best]).abs() <= COMPARISON_MARGIN {
            return Err(Error::AmbiguousMax(best as u32 + 1, i as u32 + 1));
        }
    }
    Ok(SquareCriticalLength { l_c: best as u32 + 1, f_values })
}

/// First l-derivative of the rewritten droplet energy (lambda > 2):
/// -4hl - 8 L l^2 z(L+1, l) + 8 (L+1) l z(L, l) - 8 z(L-1, l) + 8 z(L-1).
pub fn d1f_dl(lambda: f64, h: f64, l: f64) -> Result<f64> {
    if !(lambda > 2.0) {
        return Err(Error::PreconditionViolated(format!("need lambda > 2, got {lambda}")));
    }
    let z = |s: f64, q: f64| hurwitz_zeta_real(s, q);
    Ok(-4.0 * h * l - 8.0 * lambda * l * l * z(lambda + 1.0, l)?
        + 8.0 * (lambda + 1.0) * l * z(lambda, l)?
        - 8.0 * z(lambda - 1.0, l)?
        + 8.0 * z(lambda - 1.0, 1.0)?)
}

/// Second l-derivative of the rewritten droplet energy (lambda > 2):
///
/// -4h - 8 L (L+3) l z(L+1, l) + 8 L (L+1) l^2 z(L+2, l) + 16 L z(L, l).
///
/// This is the exact derivative of `f_square_rewritten`; it approaches the
/// short-range plateau -4h for large l and lambda.
pub fn d2f_dl2(lambda: f64, h: f64, l: f64) -> Result<f64> {
    if !(lambda > 2.0) {
        return Err(Error::PreconditionViolated(format!("need lambda > 2, got {lambda}")));
    }
    let z = |s: f64, q: f64| hurwitz_zeta_real(s, q);
    Ok(-4.0 * h - 8.0 * lambda * (lambda + 3.0) * l * z(lambda + 1.0, l)?
        + 8.0 * lambda * (lambda + 1.0) * l * l * z(lambda + 2.0, l)?
        + 16.0 * lambda * z(lambda, l)?)
}

/// Torus evaluation and its distance to the infinite-lattice value.
#[derive(Debug, Clone, Serialize)]
pub struct TorusReport {
    pub torus_perimeter: f64,
    pub infinite_perimeter: f64,
    pub difference: f64,
    /// 4 area (L/2)^{1-lambda} / (lambda-1).
    pub bound: f64,
    pub within_bound: bool,
}

/// Nonlocal perimeter on the L x L torus with wrapped axial distances.
pub fn torus_perimeter(p: &Polyomino, lambda: f64, side: u32) -> Result<f64> {
    let bb = p.bounding_box();
    if bb.width() * 2 > side || bb.height() * 2 > side {
        return Err(Error::PolyominoTooLargeForTorus(side));
    }
    let ls = side as i32;
    let set = p.cell_set();
    let mut total = 0.0;
    for c in p.cells() {
        for d in 1..ls {
            let dist = d.min(ls - d) as f64;
            let w = dist.powf(-lambda);
            if !set.contains(&Cell::new((c.x + d).rem_euclid(ls), c.y)) {
                total += w;
            }
            if !set.contains(&Cell::new(c.x, (c.y + d).rem_euclid(ls))) {
                total += w;
            }
        }
    }
    Ok(total)
}

/// Compares torus and infinite-lattice perimeters against the order
/// L^{1-lambda} correction bound.
pub fn torus_correction_bound(p: &Polyomino, params: &ModelParams) -> Result<TorusReport> {
    let side = params
        .torus_side
        .ok_or_else(|| Error::PreconditionViolated("params carry no torus side".into()))?;
    let engine = ZetaEngine::new(params.lambda)?;
    let torus = torus_perimeter(p, params.lambda, side)?;
    let infinite = perimeter(p, &engine).total;
    let bound = 4.0 * p.area() as f64 * (side as f64 / 2.0).powf(1.0 - params.lambda) / (params.lambda - 1.0);
    let difference = (torus - infinite).abs();
    Ok(TorusReport {
        torus_perimeter: torus,
        infinite_perimeter: infinite,
        difference,
        bound,
        within_bound: difference <= bound,
    })
}
