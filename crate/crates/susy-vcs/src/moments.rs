//! Radial measures solving the moment condition 2 pi int r^{2n} d(lambda)
//! = eps_n!, their verification against an energy sequence, and a
//! non-negative least-squares fitter that recovers a measure from a finite
//! list of target moments.

use crate::linalg::RMat;
use crate::quad;
use crate::spectra::{EnergySequence, SeqError};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float; // Inherent f64 methods shadow this in std builds; no_std resolves through it.

/// Radial density profile on (0, R).
#[derive(Clone, Debug, PartialEq)]
pub enum Density {
    None,
    /// c e^{-r^2} r.
    GaussianRadial { c: f64 },
    /// c r.
    LinearRadial { c: f64 },
    /// Piecewise-linear table; integrated by the trapezoid rule on its own
    /// grid.
    Table { rs: Vec<f64>, values: Vec<f64> },
}

/// Non-negative measure on (0, R]: point atoms plus a density. R may be
/// infinite only for self-decaying densities.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialMeasure {
    /// (location, weight) pairs with location in (0, R] and weight >= 0.
    pub atoms: Vec<(f64, f64)>,
    pub density: Density,
    pub support_radius: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureError {
    NegativeWeight,
    AtomOutsideSupport,
    NegativeDensity,
    BadTable,
}

impl core::fmt::Display for MeasureError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MeasureError::NegativeWeight => write!(f, "atom weight is negative"),
            MeasureError::AtomOutsideSupport => write!(f, "atom lies outside (0, R]"),
            MeasureError::NegativeDensity => write!(f, "density value is negative"),
            MeasureError::BadTable => write!(f, "table grid is not strictly increasing in (0, R]"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MeasureError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentError {
    /// Density with unbounded support that does not decay; the moment
    /// integral diverges.
    Divergent,
    Sequence(SeqError),
}

impl core::fmt::Display for MomentError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MomentError::Divergent => write!(f, "moment integral diverges"),
            MomentError::Sequence(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MomentError {}

impl From<SeqError> for MomentError {
    fn from(e: SeqError) -> Self {
        MomentError::Sequence(e)
    }
}

fn ln_factorial_int(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

impl RadialMeasure {
    /// Measure matching the oscillator sequence: density (1/pi) e^{-r^2} r
    /// on (0, inf); its 2n-th moment is exactly n!.
    pub fn oscillator() -> Self {
        RadialMeasure {
            atoms: Vec::new(),
            density: Density::GaussianRadial { c: 1.0 / PI },
            support_radius: f64::INFINITY,
        }
    }

    /// Measure matching the bounded sequence with parameter m: an atom of
    /// weight 1/(4 pi) at the support edge m/sqrt(2) plus the density
    /// r/(pi m^2) inside.
    pub fn landau(m: u32) -> Self {
        let mf = m as f64;
        let edge = mf / core::f64::consts::SQRT_2;
        RadialMeasure {
            atoms: vec![(edge, 1.0 / (4.0 * PI))],
            density: Density::LinearRadial {
                c: 1.0 / (PI * mf * mf),
            },
            support_radius: edge,
        }
    }

    pub fn validate(&self) -> Result<(), MeasureError> {
        for &(r, w) in &self.atoms {
            if w < 0.0 || !w.is_finite() {
                return Err(MeasureError::NegativeWeight);
            }
            if !(r > 0.0) || r > self.support_radius {
                return Err(MeasureError::AtomOutsideSupport);
            }
        }
        match &self.density {
            Density::None => {}
            Density::GaussianRadial { c } | Density::LinearRadial { c } => {
                if *c < 0.0 {
                    return Err(MeasureError::NegativeDensity);
                }
            }
            Density::Table { rs, values } => {
                if rs.len() != values.len() || rs.is_empty() {
                    return Err(MeasureError::BadTable);
                }
                let mut prev = 0.0;
                for &r in rs {
                    if !(r > prev) || r > self.support_radius {
                        return Err(MeasureError::BadTable);
                    }
                    prev = r;
                }
                if values.iter().any(|v| *v < 0.0) {
                    return Err(MeasureError::NegativeDensity);
                }
            }
        }
        Ok(())
    }

    fn density_diverges(&self) -> bool {
        self.support_radius.is_infinite()
            && matches!(
                self.density,
                Density::LinearRadial { .. } | Density::Table { .. }
            )
    }

    /// 2 pi [ sum_i w_i r_i^{2n} + int_0^R r^{2n} density(r) dr ], with the
    /// density integral in closed form where one exists.
    pub fn moment(&self, n: u32) -> Result<f64, MomentError> {
        if self.density_diverges() {
            return Err(MomentError::Divergent);
        }
        let atom_sum: f64 = self
            .atoms
            .iter()
            .map(|&(r, w)| w * r.powi(2 * n as i32))
            .sum();
        let dens = match &self.density {
            Density::None => 0.0,
            Density::GaussianRadial { c } => {
                if self.support_radius.is_infinite() {
                    // int_0^inf r^{2n+1} e^{-r^2} dr = n!/2.
                    let mut acc = 0.5;
                    for k in 1..=n {
                        acc *= k as f64;
                    }
                    c * acc
                } else {
                    let cc = *c;
                    quad::adaptive_simpson(
                        &|r: f64| cc * r.powi(2 * n as i32 + 1) * (-r * r).exp(),
                        0.0,
                        self.support_radius,
                        1e-12,
                    )
                }
            }
            Density::LinearRadial { c } => {
                // int_0^R c r^{2n+1} dr = c R^{2n+2}/(2n+2).
                c * self.support_radius.powi(2 * n as i32 + 2) / (2.0 * n as f64 + 2.0)
            }
            Density::Table { rs, values } => {
                let weighted: Vec<f64> = rs
                    .iter()
                    .zip(values)
                    .map(|(&r, &v)| r.powi(2 * n as i32) * v)
                    .collect();
                table_trapezoid(rs, &weighted)
            }
        };
        Ok(2.0 * PI * (atom_sum + dens))
    }

    /// Same moment through numerical quadrature only; independent
    /// cross-check of the closed forms. Unbounded supports are truncated
    /// where the integrand has decayed below working precision.
    pub fn moment_quadrature(&self, n: u32) -> Result<f64, MomentError> {
        if self.density_diverges() {
            return Err(MomentError::Divergent);
        }
        let atom_sum: f64 = self
            .atoms
            .iter()
            .map(|&(r, w)| w * r.powi(2 * n as i32))
            .sum();
        let dens = match &self.density {
            Density::None => 0.0,
            Density::GaussianRadial { c } => {
                let cc = *c;
                let cap = ((2.0 * n as f64 + 1.0).sqrt() + 9.0).max(10.0);
                let upper = self.support_radius.min(cap);
                quad::adaptive_simpson(
                    &|r: f64| cc * r.powi(2 * n as i32 + 1) * (-r * r).exp(),
                    0.0,
                    upper,
                    1e-12,
                )
            }
            Density::LinearRadial { c } => {
                let cc = *c;
                quad::adaptive_simpson(
                    &|r: f64| cc * r.powi(2 * n as i32 + 1),
                    0.0,
                    self.support_radius,
                    1e-12,
                )
            }
            Density::Table { rs, values } => {
                let weighted: Vec<f64> = rs
                    .iter()
                    .zip(values)
                    .map(|(&r, &v)| r.powi(2 * n as i32) * v)
                    .collect();
                table_trapezoid(rs, &weighted)
            }
        };
        Ok(2.0 * PI * (atom_sum + dens))
    }

    /// ln of the moment, overflow-safe for large n.
    pub fn moment_log(&self, n: u32) -> Result<f64, MomentError> {
        if self.density_diverges() {
            return Err(MomentError::Divergent);
        }
        // Log-terms for the atoms.
        let mut terms: Vec<f64> = self
            .atoms
            .iter()
            .filter(|&&(_, w)| w > 0.0)
            .map(|&(r, w)| w.ln() + 2.0 * n as f64 * r.ln())
            .collect();
        match &self.density {
            Density::None => {}
            Density::GaussianRadial { c } => {
                if *c > 0.0 {
                    if self.support_radius.is_infinite() {
                        terms.push(c.ln() + ln_factorial_int(n) - core::f64::consts::LN_2);
                    } else {
                        let v = self.moment(n)? / (2.0 * PI);
                        // Finite supports stay in range; fall back to the
                        // direct value.
                        let atom_part: f64 = self
                            .atoms
                            .iter()
                            .map(|&(r, w)| w * r.powi(2 * n as i32))
                            .sum();
                        terms.push((v - atom_part).ln());
                    }
                }
            }
            Density::LinearRadial { c } => {
                if *c > 0.0 {
                    terms.push(
                        c.ln() + (2.0 * n as f64 + 2.0) * self.support_radius.ln()
                            - (2.0 * n as f64 + 2.0).ln(),
                    );
                }
            }
            Density::Table { rs, values } => {
                // Shifted trapezoid in the log domain.
                let logs: Vec<f64> = rs
                    .iter()
                    .zip(values)
                    .map(|(&r, &v)| {
                        if v > 0.0 {
                            2.0 * n as f64 * r.ln() + v.ln()
                        } else {
                            f64::NEG_INFINITY
                        }
                    })
                    .collect();
                let shift = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if shift.is_finite() {
                    let scaled: Vec<f64> = logs.iter().map(|l| (l - shift).exp()).collect();
                    let integral = table_trapezoid(rs, &scaled);
                    if integral > 0.0 {
                        terms.push(shift + integral.ln());
                    }
                }
            }
        }
        // log-sum-exp over the contributions.
        let peak = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Ok(f64::NEG_INFINITY);
        }
        let s: f64 = terms.iter().map(|t| (t - peak).exp()).sum();
        Ok((2.0 * PI).ln() + peak + s.ln())
    }
}

fn table_trapezoid(rs: &[f64], values: &[f64]) -> f64 {
    // Non-uniform trapezoid; the leading segment (0, rs[0]) integrates the
    // linear ramp from 0 to the first value.
    let mut acc = 0.5 * values[0] * rs[0];
    for i in 1..rs.len() {
        acc += 0.5 * (values[i] + values[i - 1]) * (rs[i] - rs[i - 1]);
    }
    acc
}

/// One verified moment.
#[derive(Clone, Debug)]
pub struct MomentRow {
    pub n: u32,
    pub computed: f64,
    pub target: f64,
    /// |computed - target| / target, or the log-domain difference when
    /// either side overflows f64.
    pub rel_err: f64,
}

#[derive(Clone, Debug)]
pub struct MomentReport {
    pub rows: Vec<MomentRow>,
    pub max_n: u32,
    pub tol: f64,
    pub pass: bool,
}

/// Compares measure moments against the generalized factorials of a
/// sequence for n <= max_n.
pub fn verify_moments(
    measure: &RadialMeasure,
    seq: &EnergySequence,
    max_n: u32,
    tol: f64,
) -> Result<MomentReport, MomentError> {
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 0..=max_n {
        let target = seq.factorial(n)?;
        let computed = measure.moment(n)?;
        let rel_err = if computed.is_finite() && target.is_finite() && target != 0.0 {
            (computed - target).abs() / target.abs()
        } else {
            (measure.moment_log(n)? - seq.log_factorial(n)?).abs()
        };
        if !(rel_err < tol) {
            pass = false;
        }
        rows.push(MomentRow {
            n,
            computed,
            target,
            rel_err,
        });
    }
    Ok(MomentReport {
        rows,
        max_n,
        tol,
        pass,
    })
}

/// Result of a non-negative moment fit. The returned measure is atomic:
/// node k carries weight value_k * dr_k, so its moments reproduce the
/// fitted design rows exactly; `density_values` reinterprets the same
/// weights as density samples.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureFit {
    pub measure: RadialMeasure,
    pub density_nodes: Vec<f64>,
    pub density_values: Vec<f64>,
    pub atom_weight: Option<f64>,
    /// ||M w - t|| / ||t||.
    pub residual: f64,
    pub conditioning_warning: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitError {
    NoTargets,
    NoNodes,
    BadRadius,
}

impl core::fmt::Display for FitError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FitError::NoTargets => write!(f, "need at least one target moment"),
            FitError::NoNodes => write!(f, "need at least one grid node"),
            FitError::BadRadius => write!(f, "support radius must be positive and finite"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FitError {}

/// Fits a non-negative measure on (0, R] to the targets t_n ~ 2 pi int
/// r^{2n} d(lambda) by active-set non-negative least squares on a
/// right-endpoint grid r_k = k R / K (nested under grid doubling, so
/// refining the grid never increases the residual). `allow_boundary_atom`
/// adds a free point mass exactly at R.
pub fn fit_measure(
    targets: &[f64],
    support_radius: f64,
    nodes: usize,
    allow_boundary_atom: bool,
) -> Result<MeasureFit, FitError> {
    if targets.is_empty() {
        return Err(FitError::NoTargets);
    }
    if nodes == 0 {
        return Err(FitError::NoNodes);
    }
    if !(support_radius > 0.0) || !support_radius.is_finite() {
        return Err(FitError::BadRadius);
    }
    let k_nodes = nodes;
    let dr = support_radius / k_nodes as f64;
    let rs: Vec<f64> = (1..=k_nodes).map(|k| k as f64 * dr).collect();
    let cols = k_nodes + usize::from(allow_boundary_atom);
    let rows = targets.len();
    let design = RMat::from_fn(rows, cols, |n, j| {
        if j < k_nodes {
            2.0 * PI * rs[j].powi(2 * n as i32) * dr
        } else {
            2.0 * PI * support_radius.powi(2 * n as i32)
        }
    });

    let (w, conditioning_warning) = nnls(&design, targets);

    let fitted = design.apply(&w);
    let mut err2 = 0.0;
    let mut t2 = 0.0;
    for (f, t) in fitted.iter().zip(targets) {
        err2 += (f - t) * (f - t);
        t2 += t * t;
    }
    let residual = if t2 > 0.0 {
        (err2 / t2).sqrt()
    } else {
        err2.sqrt()
    };

    let mut atoms: Vec<(f64, f64)> = rs
        .iter()
        .zip(&w)
        .filter(|&(_, &wk)| wk > 0.0)
        .map(|(&r, &wk)| (r, wk * dr))
        .collect();
    let atom_weight = if allow_boundary_atom {
        let aw = w[k_nodes];
        if aw > 0.0 {
            atoms.push((support_radius, aw));
        }
        Some(aw)
    } else {
        None
    };
    let measure = RadialMeasure {
        atoms,
        density: Density::None,
        support_radius,
    };
    Ok(MeasureFit {
        measure,
        density_nodes: rs,
        density_values: w[..k_nodes].to_vec(),
        atom_weight,
        residual,
        conditioning_warning,
    })
}

/// Lawson-Hanson active-set non-negative least squares. Deterministic:
/// the entering index maximizes the dual M^T (t - M w), ties broken by
/// lowest index. Returns the weights and a conditioning flag raised when
/// the passive-set triangular factor spans more than 12 decades.
fn nnls(m: &RMat, t: &[f64]) -> (Vec<f64>, bool) {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = vec![0.0f64; cols];
    let mut passive = vec![false; cols];
    // Columns whose passive solve failed; cleared whenever w changes.
    let mut blocked = vec![false; cols];
    let mut warn = false;

    // Per-column dual tolerance: |dual_j| <= ||col_j|| ||resid|| by
    // Cauchy-Schwarz, so anything below a small multiple of that bound is
    // roundoff, not descent.
    let col_norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| m[(i, j)] * m[(i, j)]).sum::<f64>().sqrt())
        .collect();

    for _ in 0..(3 * cols + 16) {
        let resid: Vec<f64> = {
            let mw = m.apply(&w);
            t.iter().zip(mw).map(|(ti, fi)| ti - fi).collect()
        };
        let resid_norm = resid.iter().map(|r| r * r).sum::<f64>().sqrt();
        let dual = m.apply_transpose(&resid);
        let mut enter: Option<usize> = None;
        for j in 0..cols {
            if !passive[j] && !blocked[j] && dual[j] > 1e-12 * col_norms[j] * resid_norm {
                // Strict > keeps the lowest index on exact ties.
                if enter.map_or(true, |b| dual[j] > dual[b]) {
                    enter = Some(j);
                }
            }
        }
        let Some(j0) = enter else { break };
        passive[j0] = true;

        loop {
            let (z, ok, cond_bad) = ls_solve_passive(m, t, &passive);
            if cond_bad {
                warn = true;
            }
            if !ok {
                // Rank-deficient passive set: withdraw the entering column
                // and leave it out until the iterate moves.
                passive[j0] = false;
                blocked[j0] = true;
                break;
            }
            let neg: Vec<usize> = (0..cols)
                .filter(|&j| passive[j] && z[j] <= 0.0)
                .collect();
            if neg.is_empty() {
                for j in 0..cols {
                    w[j] = if passive[j] { z[j] } else { 0.0 };
                }
                blocked.iter_mut().for_each(|b| *b = false);
                break;
            }
            let mut alpha = f64::INFINITY;
            let mut jmin = neg[0];
            for &j in &neg {
                let denom = w[j] - z[j];
                if denom > 0.0 {
                    let a = w[j] / denom;
                    if a < alpha {
                        alpha = a;
                        jmin = j;
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for j in 0..cols {
                if passive[j] {
                    w[j] += alpha * (z[j] - w[j]);
                }
            }
            // The step is sized to zero the binding coordinate exactly;
            // clear it and anything roundoff pushed below zero.
            w[jmin] = 0.0;
            passive[jmin] = false;
            for j in 0..cols {
                if passive[j] && w[j] <= 0.0 {
                    w[j] = 0.0;
                    passive[j] = false;
                }
            }
            blocked.iter_mut().for_each(|b| *b = false);
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    (w, warn)
}

/// Least squares on the passive columns by Householder QR. Returns the
/// solution scattered to full width, a success flag (false when the
/// passive set is rank deficient beyond recovery), and a conditioning
/// flag.
fn ls_solve_passive(m: &RMat, t: &[f64], passive: &[bool]) -> (Vec<f64>, bool, bool) {
    let rows = m.rows();
    let idx: Vec<usize> = (0..m.cols()).filter(|&j| passive[j]).collect();
    let p = idx.len();
    if p == 0 {
        return (vec![0.0; m.cols()], true, false);
    }
    // Column-major working copy.
    let mut a: Vec<Vec<f64>> = idx
        .iter()
        .map(|&j| (0..rows).map(|i| m[(i, j)]).collect())
        .collect();
    let mut rhs: Vec<f64> = t.to_vec();

    let steps = p.min(rows);
    let mut diag = vec![0.0f64; steps];
    for k in 0..steps {
        let norm = (k..rows).map(|i| a[k][i] * a[k][i]).sum::<f64>().sqrt();
        if norm == 0.0 {
            diag[k] = 0.0;
            continue;
        }
        let alpha = if a[k][k] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|i| a[k][i]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for col in a.iter_mut().skip(k) {
                let dot: f64 = v.iter().zip(&col[k..]).map(|(vi, ci)| vi * ci).sum();
                let f = 2.0 * dot / vnorm2;
                for (vi, ci) in v.iter().zip(col[k..].iter_mut()) {
                    *ci -= f * vi;
                }
            }
            let dot: f64 = v.iter().zip(&rhs[k..]).map(|(vi, ci)| vi * ci).sum();
            let f = 2.0 * dot / vnorm2;
            for (vi, ci) in v.iter().zip(rhs[k..].iter_mut()) {
                *ci -= f * vi;
            }
        }
        diag[k] = a[k][k];
    }

    let dmax = diag.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    if dmax == 0.0 {
        return (vec![0.0; m.cols()], false, true);
    }
    let dmin = diag.iter().fold(f64::INFINITY, |acc, d| acc.min(d.abs()));
    let cond_bad = dmin < 1e-12 * dmax;
    if p > rows {
        // More passive columns than equations: reject the step.
        return (vec![0.0; m.cols()], false, true);
    }

    let mut z = vec![0.0f64; p];
    for k in (0..p).rev() {
        if diag[k].abs() < 1e-14 * dmax {
            z[k] = 0.0;
            continue;
        }
        let mut s = rhs[k];
        for j in k + 1..p {
            s -= a[j][k] * z[j];
        }
        z[k] = s / diag[k];
    }
    let mut full = vec![0.0f64; m.cols()];
    for (slot, &j) in idx.iter().enumerate() {
        full[j] = z[slot];
    }
    (full, true, cond_bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn oscillator_measure_moments_are_factorials() {
        let m = RadialMeasure::oscillator();
        m.validate().unwrap();
        // n = 3: 2 pi (1/pi) (3!/2) = 6.
        assert_relative_eq!(m.moment(3).unwrap(), 6.0, max_relative = 1e-14);
        for n in 0..=10u32 {
            let target = EnergySequence::oscillator().factorial(n).unwrap();
            assert_relative_eq!(m.moment(n).unwrap(), target, max_relative = 1e-12);
            // The pure-quadrature path agrees with the closed form.
            assert_relative_eq!(
                m.moment_quadrature(n).unwrap(),
                m.moment(n).unwrap(),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn landau_measure_moments_match_closed_form() {
        let meas = RadialMeasure::landau(1);
        meas.validate().unwrap();
        assert_relative_eq!(meas.moment(0).unwrap(), 1.0, max_relative = 1e-14);
        // n = 1: 2 pi [(1/4pi)(1/2) + (1/pi)(1/16)] = 3/8.
        assert_relative_eq!(meas.moment(1).unwrap(), 0.375, max_relative = 1e-14);
        for m in 1..=3u32 {
            let meas = RadialMeasure::landau(m);
            let mf = m as f64;
            for n in 0..=20u32 {
                let normalized =
                    meas.moment(n).unwrap() * 2.0f64.powi(n as i32 + 1) / mf.powi(2 * n as i32);
                let expect = 1.0 + 1.0 / (n as f64 + 1.0);
                assert!((normalized - expect).abs() < 1e-10, "m={m} n={n}");
                assert_relative_eq!(
                    meas.moment_quadrature(n).unwrap(),
                    meas.moment(n).unwrap(),
                    max_relative = 1e-10
                );
            }
        }
    }

    #[test]
    fn moments_are_log_convex() {
        for meas in [RadialMeasure::oscillator(), RadialMeasure::landau(2)] {
            let mut prev = meas.moment(0).unwrap();
            let mut cur = meas.moment(1).unwrap();
            for n in 1..20u32 {
                let next = meas.moment(n + 1).unwrap();
                assert!(prev > 0.0 && cur > 0.0);
                assert!(cur * cur <= prev * next * (1.0 + 1e-12), "n={n}");
                prev = cur;
                cur = next;
            }
        }
    }

    #[test]
    fn log_moment_agrees_and_survives_overflow() {
        let m = RadialMeasure::oscillator();
        for n in [0u32, 3, 10, 20] {
            assert_relative_eq!(
                m.moment_log(n).unwrap(),
                m.moment(n).unwrap().ln(),
                epsilon = 1e-10
            );
        }
        // 200! overflows f64; the log path stays finite and matches the
        // sequence's log factorial.
        assert!(m.moment(200).unwrap().is_infinite());
        let lg = m.moment_log(200).unwrap();
        assert!(lg.is_finite());
        assert_relative_eq!(
            lg,
            EnergySequence::oscillator().log_factorial(200).unwrap(),
            max_relative = 1e-12
        );

        let l = RadialMeasure::landau(1);
        for n in [0u32, 1, 7] {
            assert_relative_eq!(
                l.moment_log(n).unwrap(),
                l.moment(n).unwrap().ln(),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn verify_moments_passes_matched_pairs_and_fails_mismatches() {
        let r = verify_moments(
            &RadialMeasure::oscillator(),
            &EnergySequence::oscillator(),
            10,
            1e-10,
        )
        .unwrap();
        assert!(r.pass);

        let r = verify_moments(
            &RadialMeasure::landau(2),
            &EnergySequence::landau_bosonic(2),
            20,
            1e-10,
        )
        .unwrap();
        assert!(r.pass);

        // Wrong pairing: the bounded measure against the oscillator
        // sequence fails at n = 1 (3/8 against 1).
        let r = verify_moments(
            &RadialMeasure::landau(1),
            &EnergySequence::oscillator(),
            5,
            1e-10,
        )
        .unwrap();
        assert!(!r.pass);
        assert!(r.rows[0].rel_err < 1e-12);
        assert_relative_eq!(r.rows[1].computed, 0.375, max_relative = 1e-12);
        assert_relative_eq!(r.rows[1].target, 1.0, max_relative = 1e-15);
        assert!(r.rows[1].rel_err > 0.5);
    }

    #[test]
    fn divergent_density_is_reported() {
        let meas = RadialMeasure {
            atoms: Vec::new(),
            density: Density::LinearRadial { c: 1.0 },
            support_radius: f64::INFINITY,
        };
        assert_eq!(meas.moment(0), Err(MomentError::Divergent));
    }

    #[test]
    fn validation_rejects_bad_measures() {
        let mut meas = RadialMeasure::landau(1);
        meas.atoms[0].1 = -1.0;
        assert_eq!(meas.validate(), Err(MeasureError::NegativeWeight));
        let mut meas = RadialMeasure::landau(1);
        meas.atoms[0].0 = 10.0;
        assert_eq!(meas.validate(), Err(MeasureError::AtomOutsideSupport));
        let meas = RadialMeasure {
            atoms: Vec::new(),
            density: Density::Table {
                rs: vec![0.5, 0.4],
                values: vec![1.0, 1.0],
            },
            support_radius: 1.0,
        };
        assert_eq!(meas.validate(), Err(MeasureError::BadTable));
    }

    #[test]
    fn single_target_single_node_fit_is_exact() {
        // One equation 2 pi w = 1 in one unknown: residual 0.
        let fit = fit_measure(&[1.0], 1.0, 1, false).unwrap();
        assert!(fit.residual < 1e-14);
        assert_eq!(fit.measure.atoms.len(), 1);
        let (r, wgt) = fit.measure.atoms[0];
        assert_relative_eq!(r, 1.0, max_relative = 1e-15);
        assert_relative_eq!(wgt, 1.0 / (2.0 * PI), max_relative = 1e-12);
        assert_relative_eq!(fit.measure.moment(0).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn oscillator_fit_beats_discretized_density() {
        let seq = EnergySequence::oscillator();
        let targets: Vec<f64> = (0..=10).map(|n| seq.factorial(n).unwrap()).collect();
        let nodes = 64;
        let fit = fit_measure(&targets, 6.0, nodes, false).unwrap();
        assert!(fit.residual < 1e-6, "residual {}", fit.residual);

        // The optimum cannot be worse than the discretized closed-form
        // density evaluated through the same design rows.
        let dr = 6.0 / nodes as f64;
        let mut err2 = 0.0;
        let mut t2 = 0.0;
        for (n, t) in targets.iter().enumerate() {
            let mut s = 0.0;
            for k in 1..=nodes {
                let r = k as f64 * dr;
                s += 2.0 * PI * r.powi(2 * n as i32) * (1.0 / PI) * (-r * r).exp() * r * dr;
            }
            err2 += (s - t) * (s - t);
            t2 += t * t;
        }
        let reference = (err2 / t2).sqrt();
        assert!(fit.residual <= reference + 1e-12);

        // The returned atomic measure realizes the fitted design rows
        // exactly; its moments are M w, not a re-discretization.
        let dr = 6.0 / nodes as f64;
        for n in 0..targets.len() {
            let mut mw = 0.0;
            for (r, v) in fit.density_nodes.iter().zip(&fit.density_values) {
                mw += 2.0 * PI * r.powi(2 * n as i32) * v * dr;
            }
            assert_relative_eq!(
                fit.measure.moment(n as u32).unwrap(),
                mw,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn landau_fit_recovers_boundary_atom() {
        let seq = EnergySequence::landau_bosonic(1);
        let targets: Vec<f64> = (0..=10).map(|n| seq.factorial(n).unwrap()).collect();
        let edge = 1.0 / core::f64::consts::SQRT_2;
        let fit = fit_measure(&targets, edge, 64, true).unwrap();
        let aw = fit.atom_weight.unwrap();
        let expect = 1.0 / (4.0 * PI);
        assert!(
            (aw - expect).abs() / expect < 0.05,
            "atom weight {aw} vs {expect}"
        );
        assert!(fit.residual < 1e-6);
    }

    #[test]
    fn refining_the_grid_never_hurts() {
        let seq = EnergySequence::oscillator();
        let targets: Vec<f64> = (0..=8).map(|n| seq.factorial(n).unwrap()).collect();
        let mut prev = f64::INFINITY;
        for nodes in [16usize, 32, 64] {
            let fit = fit_measure(&targets, 6.0, nodes, false).unwrap();
            assert!(
                fit.residual <= prev + 1e-12,
                "nodes={nodes}: {} > {prev}",
                fit.residual
            );
            prev = fit.residual;
        }
    }

    #[test]
    fn fit_input_errors() {
        assert_eq!(fit_measure(&[], 1.0, 4, false), Err(FitError::NoTargets));
        assert_eq!(fit_measure(&[1.0], 1.0, 0, false), Err(FitError::NoNodes));
        assert_eq!(
            fit_measure(&[1.0], f64::INFINITY, 4, false),
            Err(FitError::BadRadius)
        );
    }
}
