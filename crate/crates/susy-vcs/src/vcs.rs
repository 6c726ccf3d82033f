//! Two-component coherent state families: coefficient series, normalization
//! constants, overlap kernels, and frame operators checking the resolution
//! of the identity against a radial measure.
//!
//! A family couples an energy sequence (through a truncated layout) with a
//! measure whose even moments reproduce the generalized factorials. States
//! carry a holomorphic series on the bosonic sector and an antiholomorphic
//! one on the fermionic sector; the angular integral then cancels every
//! cross term, reducing the frame operator to radial moment ratios.

use crate::fock::{build_layout, SpaceLayout};
use crate::linalg::CMat;
use crate::moments::{verify_moments, MomentError, RadialMeasure};
use crate::spectra::{EnergySequence, SeqError};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64 as C64;

#[allow(unused_imports)]
use num_traits::Float; // Inherent f64 methods shadow this in std builds; no_std resolves through it.

fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub enum VcsError {
    OutOfDomain { abs: f64, radius: f64 },
    /// Series did not reach the tail tolerance within the iteration cap.
    NotConverged,
    WrongLayout { needs_extended: bool },
    Moment(MomentError),
    Sequence(SeqError),
}

impl core::fmt::Display for VcsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VcsError::OutOfDomain { abs, radius } => {
                write!(f, "|z| = {abs} outside the open disc of radius {radius}")
            }
            VcsError::NotConverged => write!(f, "series did not converge"),
            VcsError::WrongLayout { needs_extended } => {
                if *needs_extended {
                    write!(f, "operation needs an extended layout")
                } else {
                    write!(f, "operation needs a plain layout")
                }
            }
            VcsError::Moment(e) => write!(f, "{e}"),
            VcsError::Sequence(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for VcsError {}

impl From<MomentError> for VcsError {
    fn from(e: MomentError) -> Self {
        VcsError::Moment(e)
    }
}

impl From<SeqError> for VcsError {
    fn from(e: SeqError) -> Self {
        VcsError::Sequence(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyError {
    /// The measure's moments disagree with the sequence factorials.
    MomentMismatch { n: u32, rel_err: f64, tol: f64 },
    Moment(MomentError),
}

impl core::fmt::Display for FamilyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FamilyError::MomentMismatch { n, rel_err, tol } => write!(
                f,
                "measure moment {n} misses its factorial target by {rel_err:.3e} (tol {tol:.1e})"
            ),
            FamilyError::Moment(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FamilyError {}

/// A coherent state family: layout, measure, and the open evaluation disc.
#[derive(Clone, Debug)]
pub struct VcsFamily {
    layout: SpaceLayout,
    measure: RadialMeasure,
    domain_radius: f64,
}

const MOMENT_TOL: f64 = 1e-8;

impl VcsFamily {
    /// Validates the measure against the sequence factorials for every
    /// index the layout retains, at tolerance 1e-8.
    pub fn new(layout: SpaceLayout, measure: RadialMeasure) -> Result<Self, FamilyError> {
        let report = verify_moments(
            &measure,
            layout.seq(),
            layout.truncation() as u32,
            MOMENT_TOL,
        )
        .map_err(FamilyError::Moment)?;
        if !report.pass {
            let bad = report
                .rows
                .iter()
                .find(|r| !(r.rel_err < MOMENT_TOL))
                .expect("failed report has a failing row");
            return Err(FamilyError::MomentMismatch {
                n: bad.n,
                rel_err: bad.rel_err,
                tol: MOMENT_TOL,
            });
        }
        Ok(Self::new_unchecked(layout, measure))
    }

    /// Skips moment validation; for diagnostics on deliberately wrong
    /// pairings.
    pub fn new_unchecked(layout: SpaceLayout, measure: RadialMeasure) -> Self {
        let domain_radius = match layout.seq().limit() {
            Some(l) => l.sqrt(),
            // Finite tables have no tail; any evaluation point works, but
            // the largest listed energy is the honest proxy.
            None => (0..=layout.truncation() as u32 + 1)
                .map(|n| layout.seq().eps(n).unwrap_or(0.0))
                .fold(0.0f64, f64::max)
                .sqrt(),
        };
        VcsFamily {
            layout,
            measure,
            domain_radius,
        }
    }

    pub fn oscillator(truncation: usize) -> Self {
        let layout = build_layout(EnergySequence::oscillator(), truncation, false).unwrap();
        Self::new(layout, RadialMeasure::oscillator()).unwrap()
    }

    pub fn oscillator_extended(truncation: usize) -> Self {
        let layout = build_layout(EnergySequence::oscillator(), truncation, true).unwrap();
        Self::new(layout, RadialMeasure::oscillator()).unwrap()
    }

    pub fn landau(m: u32, truncation: usize) -> Self {
        let layout = build_layout(EnergySequence::landau_bosonic(m), truncation, false).unwrap();
        Self::new(layout, RadialMeasure::landau(m)).unwrap()
    }

    pub fn landau_extended(m: u32, truncation: usize) -> Self {
        let layout = build_layout(EnergySequence::landau_bosonic(m), truncation, true).unwrap();
        Self::new(layout, RadialMeasure::landau(m)).unwrap()
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn measure(&self) -> &RadialMeasure {
        &self.measure
    }

    pub fn seq(&self) -> &EnergySequence {
        self.layout.seq()
    }

    pub fn domain_radius(&self) -> f64 {
        self.domain_radius
    }

    pub fn check_domain(&self, z: C64) -> Result<(), VcsError> {
        if z.norm() < self.domain_radius {
            Ok(())
        } else {
            Err(VcsError::OutOfDomain {
                abs: z.norm(),
                radius: self.domain_radius,
            })
        }
    }

    /// Evaluation closer than 5% to the disc edge converges slowly; callers
    /// should surface this as a conditioning warning.
    pub fn near_boundary(&self, z: C64) -> bool {
        self.domain_radius.is_finite() && z.norm() > 0.95 * self.domain_radius
    }

    /// moment(p) / factorial(p), in the log domain when the direct values
    /// overflow.
    fn moment_ratio(&self, p: u32) -> Result<f64, VcsError> {
        let t = self.seq().factorial(p)?;
        let m = self.measure.moment(p)?;
        if t.is_finite() && m.is_finite() && t > 0.0 {
            Ok(m / t)
        } else {
            Ok((self.measure.moment_log(p)? - self.seq().log_factorial(p)?).exp())
        }
    }

    /// N(|z|^2) = 1 + 2 sum_{n>=1} |z|^{2n}/eps_n!, summed with a
    /// geometric tail criterion at relative 1e-14.
    pub fn normalization(&self, z: C64) -> Result<f64, VcsError> {
        self.check_domain(z)?;
        let z2 = z.norm_sqr();
        if z2 == 0.0 {
            return Ok(1.0);
        }
        let seq = self.seq();
        let mut term = 1.0f64; // |z|^{2n}/eps_n! at n = 0
        let mut sum = 0.0f64; // sum over n >= 1
        let mut n: u32 = 0;
        loop {
            let eps_next = match seq.eps(n + 1) {
                Ok(e) => e,
                // Finite table exhausted: the series is the finite sum.
                Err(_) => return Ok(1.0 + 2.0 * sum),
            };
            term *= z2 / eps_next;
            sum += term;
            n += 1;
            // Subsequent ratios only shrink for the monotone built-in
            // sequences, so q < 1 validates the geometric remainder bound;
            // for tables the loop runs to the end instead.
            if !matches!(seq, EnergySequence::Table { .. }) {
                let q = z2 / seq.eps(n + 1).unwrap_or(f64::INFINITY);
                if q < 1.0 && term * q / (1.0 - q) < 1e-14 * (1.0 + 2.0 * sum) {
                    return Ok(1.0 + 2.0 * sum);
                }
            }
            if n > 500_000 {
                return Err(VcsError::NotConverged);
            }
        }
    }

    /// Unnormalized coefficient series at z along with the truncation tail
    /// bound on sum_{n>N} |z|^{2n}/eps_n!.
    pub fn coeffs(&self, z: C64) -> Result<CoeffVector, VcsError> {
        self.check_domain(z)?;
        let n_top = self.layout.truncation();
        let seq = self.seq();
        let mut bosonic = Vec::with_capacity(n_top + 1);
        let mut c = cr(1.0);
        bosonic.push(c);
        for n in 1..=n_top {
            c = c * z / cr(self.layout.eps(n).sqrt());
            bosonic.push(c);
        }
        let zb = z.conj();
        let mut fermionic = Vec::with_capacity(n_top);
        let mut d = zb / cr(self.layout.eps(1).sqrt());
        fermionic.push(d);
        for k in 1..n_top {
            d = d * zb / cr(self.layout.eps(k + 1).sqrt());
            fermionic.push(d);
        }
        let tail_bound = series_tail_bound(seq, n_top, z.norm_sqr())?;
        Ok(CoeffVector {
            z,
            bosonic,
            fermionic,
            tail_bound,
            near_boundary: self.near_boundary(z),
        })
    }

    /// Assembled normalized state on the plain layout: component c_n/sqrt(N)
    /// on bosonic level n and d_k/sqrt(N) on fermionic level k.
    pub fn state_vector(&self, z: C64) -> Result<Vec<C64>, VcsError> {
        if self.layout.is_extended() {
            return Err(VcsError::WrongLayout {
                needs_extended: false,
            });
        }
        let co = self.coeffs(z)?;
        let norm = cr(self.normalization(z)?.sqrt().recip());
        let mut v = vec![cr(0.0); self.layout.dim()];
        for (n, c) in co.bosonic.iter().enumerate() {
            v[self.layout.b(n)] = *c * norm;
        }
        for (k, d) in co.fermionic.iter().enumerate() {
            v[self.layout.f(k)] = *d * norm;
        }
        Ok(v)
    }

    /// Assembled state on the extended layout, coefficient 𝔷-convention
    /// selected by `conv`. Uses the plain normalization constant, so the
    /// true norm squared is (N+1)/(2N), not 1; see `extended_frame`.
    pub fn extended_state(&self, z: C64, conv: ExtendedConvention) -> Result<Vec<C64>, VcsError> {
        let Some(chi) = self.layout.chi_slot() else {
            return Err(VcsError::WrongLayout {
                needs_extended: true,
            });
        };
        let co = self.coeffs(z)?;
        let scale = cr((2.0 * self.normalization(z)?).sqrt().recip());
        let mut v = vec![cr(0.0); self.layout.dim()];
        v[chi] = scale;
        for (n, c) in co.bosonic.iter().enumerate() {
            v[self.layout.b(n)] = *c * scale;
        }
        for (k, d) in co.fermionic.iter().enumerate() {
            let w = match conv {
                // Scalar coefficient z^{k+1} on the whole pair vector.
                ExtendedConvention::Aligned => d.conj(),
                // Diagonal coefficient matrix: zbar^{k+1} on the lower
                // component, matching the plain family.
                ExtendedConvention::Conjugated => *d,
            };
            v[self.layout.f(k)] = w * scale;
        }
        Ok(v)
    }

    /// Reproducing kernel <z1|z2> with both series under tail control.
    pub fn overlap(&self, z1: C64, z2: C64) -> Result<C64, VcsError> {
        self.check_domain(z1)?;
        self.check_domain(z2)?;
        let seq = self.seq();
        let holo = series_sum(seq, z1.conj() * z2, 0)?;
        let anti = series_sum(seq, z1 * z2.conj(), 1)?;
        let n1 = self.normalization(z1)?;
        let n2 = self.normalization(z2)?;
        Ok((holo + anti) * cr((n1 * n2).sqrt().recip()))
    }
}

/// Which coefficient convention the extended states use on the fermionic
/// sector. `Aligned` multiplies the whole pair vector by the scalar z^n
/// (the frame operator is then an exact orthogonal projector);
/// `Conjugated` uses the diagonal matrix diag(z^n, zbar^n) (projecting to
/// the plain space then reproduces the plain state exactly). The two
/// cannot hold at once; reports carry both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtendedConvention {
    Aligned,
    Conjugated,
}

/// Coefficients of one state: c_n = z^n/sqrt(eps_n!) for n <= N and
/// d_k = zbar^{k+1}/sqrt(eps_{k+1}!) for k <= N-1.
#[derive(Clone, Debug)]
pub struct CoeffVector {
    pub z: C64,
    pub bosonic: Vec<C64>,
    pub fermionic: Vec<C64>,
    /// Upper bound on the dropped series mass sum_{n>N} |z|^{2n}/eps_n!.
    pub tail_bound: f64,
    /// |z| within 5% of the disc edge: slow convergence.
    pub near_boundary: bool,
}

/// Upper bound on sum_{n > n_trunc} |z|^{2n}/eps_n!. Walks terms until the
/// ratio drops below 1/2, then closes with the geometric sum; monotone
/// growth of the built-in sequences makes the bound valid. Finite tables
/// are summed to the end exactly.
fn series_tail_bound(seq: &EnergySequence, n_trunc: usize, z2: f64) -> Result<f64, VcsError> {
    let mut term = 1.0f64;
    for k in 1..=n_trunc as u32 {
        term *= z2 / seq.eps(k)?;
    }
    let table = matches!(seq, EnergySequence::Table { .. });
    let mut tail = 0.0f64;
    let mut n = n_trunc as u32;
    loop {
        let eps_next = match seq.eps(n + 1) {
            Ok(e) => e,
            Err(_) if table => return Ok(tail),
            Err(e) => return Err(e.into()),
        };
        let q = z2 / eps_next;
        if !table && q < 1.0 {
            return Ok(tail + term * q / (1.0 - q));
        }
        term *= q;
        tail += term;
        n += 1;
        if term == 0.0 {
            return Ok(tail);
        }
        if n > n_trunc as u32 + 500_000 {
            return Ok(f64::INFINITY);
        }
    }
}

/// sum_{n >= start} w^n / eps_n! with geometric tail control.
fn series_sum(seq: &EnergySequence, w: C64, start: u32) -> Result<C64, VcsError> {
    let table = matches!(seq, EnergySequence::Table { .. });
    let mut term = cr(1.0);
    for k in 1..=start {
        term = term * w / cr(seq.eps(k)?);
    }
    let mut sum = term;
    let mut n = start;
    loop {
        let eps_next = match seq.eps(n + 1) {
            Ok(e) => e,
            Err(_) if table => return Ok(sum),
            Err(e) => return Err(e.into()),
        };
        term = term * w / cr(eps_next);
        sum += term;
        n += 1;
        if !table {
            let q = w.norm() / seq.eps(n + 1).unwrap_or(f64::INFINITY);
            if q < 1.0 && term.norm() * q / (1.0 - q) < 1e-15 * (1.0 + sum.norm()) {
                return Ok(sum);
            }
        }
        if n > start + 500_000 {
            return Err(VcsError::NotConverged);
        }
    }
}

/// One basis slot of an assembled state viewed in polar form:
/// component(z) = r^power e^(i freq theta) / sqrt(scale_sq_over_fact *
/// eps_power!).
#[derive(Clone, Copy, Debug)]
struct ComponentSpec {
    slot: usize,
    power: u32,
    freq: i64,
    scale_sq_over_fact: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FrameKind {
    Plain,
    Extended(ExtendedConvention),
}

fn component_specs(layout: &SpaceLayout, kind: FrameKind) -> Vec<ComponentSpec> {
    let n_top = layout.truncation();
    let s = match kind {
        FrameKind::Plain => 1.0,
        FrameKind::Extended(_) => 2.0,
    };
    let mut specs = Vec::new();
    for n in 0..=n_top {
        specs.push(ComponentSpec {
            slot: layout.b(n),
            power: n as u32,
            freq: n as i64,
            scale_sq_over_fact: s,
        });
    }
    for k in 0..n_top {
        let freq = match kind {
            FrameKind::Plain | FrameKind::Extended(ExtendedConvention::Conjugated) => {
                -(k as i64 + 1)
            }
            FrameKind::Extended(ExtendedConvention::Aligned) => k as i64 + 1,
        };
        specs.push(ComponentSpec {
            slot: layout.f(k),
            power: k as u32 + 1,
            freq,
            scale_sq_over_fact: s,
        });
    }
    if let FrameKind::Extended(_) = kind {
        specs.push(ComponentSpec {
            slot: layout.chi_slot().expect("extended layout"),
            power: 0,
            freq: 0,
            scale_sq_over_fact: 2.0,
        });
    }
    specs
}

/// Frame matrix by exact angular reduction: the theta integral kills every
/// frequency-mismatched pair, and matched pairs reduce to the moment ratio
/// moment(p)/eps_p! divided by the sqrt(2) bookkeeping.
fn analytic_frame(family: &VcsFamily, kind: FrameKind) -> Result<CMat, VcsError> {
    let specs = component_specs(family.layout(), kind);
    let dim = family.layout().dim();
    let mut ratios: Vec<Option<f64>> = Vec::new();
    let max_p = specs.iter().map(|s| s.power).max().unwrap_or(0);
    for p in 0..=max_p {
        ratios.push(Some(family.moment_ratio(p)?));
    }
    let mut f = CMat::zeros(dim, dim);
    for i in &specs {
        for j in &specs {
            if i.freq == j.freq {
                debug_assert_eq!(i.power, j.power);
                let r = ratios[i.power as usize].unwrap();
                f[(i.slot, j.slot)] =
                    cr(r / (i.scale_sq_over_fact * j.scale_sq_over_fact).sqrt());
            }
        }
    }
    Ok(f)
}

/// Same frame from a caller-supplied moment vector; lets tests move one
/// moment and watch exactly one diagonal respond.
pub fn frame_from_moments(family: &VcsFamily, moments: &[f64]) -> Result<CMat, VcsError> {
    let specs = component_specs(family.layout(), FrameKind::Plain);
    let dim = family.layout().dim();
    let mut f = CMat::zeros(dim, dim);
    for i in &specs {
        for j in &specs {
            if i.freq == j.freq {
                let p = i.power;
                let r = moments[p as usize] / family.seq().factorial(p)?;
                f[(i.slot, j.slot)] =
                    cr(r / (i.scale_sq_over_fact * j.scale_sq_over_fact).sqrt());
            }
        }
    }
    Ok(f)
}

/// Frame operator report for a plain family.
#[derive(Clone, Debug)]
pub struct FrameReport {
    pub matrix: CMat,
    /// Basis indices below the truncation edge.
    pub interior: Vec<usize>,
    /// max |F - I| over interior rows and columns.
    pub max_deviation: f64,
}

/// Resolution-of-identity check: integrates |z><z| N dmu by angular
/// reduction and compares with the identity away from the truncation edge.
pub fn frame_operator(family: &VcsFamily) -> Result<FrameReport, VcsError> {
    if family.layout().is_extended() {
        return Err(VcsError::WrongLayout {
            needs_extended: false,
        });
    }
    let matrix = analytic_frame(family, FrameKind::Plain)?;
    let layout = family.layout();
    let n_top = layout.truncation();
    let interior: Vec<usize> = (0..n_top)
        .map(|n| layout.b(n))
        .chain((0..n_top).map(|k| layout.f(k)))
        .collect();
    let max_deviation = max_identity_dev_on(&matrix, &interior);
    Ok(FrameReport {
        matrix,
        interior,
        max_deviation,
    })
}

fn max_identity_dev_on(m: &CMat, indices: &[usize]) -> f64 {
    let mut dev = 0.0f64;
    for &i in indices {
        for &j in indices {
            let target = if i == j { cr(1.0) } else { cr(0.0) };
            dev = dev.max((m[(i, j)] - target).norm());
        }
    }
    dev
}

/// Brute-force frame by tensor quadrature: trapezoid in the angle, fixed
/// Simpson panels radially against the measure's density, plus its atoms.
/// Independent of the angular-reduction path; intended for truncations
/// N <= 10.
pub fn frame_operator_quadrature(family: &VcsFamily, extended: Option<ExtendedConvention>) -> Result<CMat, VcsError> {
    let kind = match extended {
        None => FrameKind::Plain,
        Some(c) => FrameKind::Extended(c),
    };
    if matches!(kind, FrameKind::Extended(_)) != family.layout().is_extended() {
        return Err(VcsError::WrongLayout {
            needs_extended: extended.is_some(),
        });
    }
    let specs = component_specs(family.layout(), kind);
    let dim = family.layout().dim();
    let n_top = family.layout().truncation();

    // Real radial profile of each component: r^p / sqrt(s * eps_p!).
    let seq = family.seq();
    let inv_scales: Vec<f64> = specs
        .iter()
        .map(|s| {
            (-0.5 * (s.scale_sq_over_fact.ln() + seq.log_factorial(s.power).unwrap())).exp()
        })
        .collect();
    let profile = |i: usize, r: f64| -> f64 { inv_scales[i] * r.powi(specs[i].power as i32) };

    // Numeric angular factor table: (1/T) sum_t e^{i dm theta_t} * 2 pi.
    let t_angles = (4 * n_top + 16).max(64);
    let span = 2 * (n_top as i64 + 1);
    let phase = |dm: i64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for t in 0..t_angles {
            let th = 2.0 * PI * t as f64 / t_angles as f64;
            acc += C64::new(0.0, dm as f64 * th).exp();
        }
        acc * cr(2.0 * PI / t_angles as f64)
    };
    let phases: Vec<C64> = (-span..=span).map(phase).collect();
    let ph = |dm: i64| phases[(dm + span) as usize];

    let measure = family.measure();
    let mut f = CMat::zeros(dim, dim);
    let add_at = |fmat: &mut CMat, r: f64, weight: f64| {
        let profs: Vec<f64> = (0..specs.len()).map(|i| profile(i, r)).collect();
        for (i, si) in specs.iter().enumerate() {
            for (j, sj) in specs.iter().enumerate() {
                let a = ph(si.freq - sj.freq);
                fmat[(si.slot, sj.slot)] += a * cr(weight * profs[i] * profs[j]);
            }
        }
    };

    // Atoms first.
    for &(r, w) in &measure.atoms {
        add_at(&mut f, r, w);
    }

    // Density by fixed Simpson; unbounded supports truncated where the
    // Gaussian factor has decayed below working precision.
    let r_max = if measure.support_radius.is_finite() {
        measure.support_radius
    } else {
        ((2.0 * (n_top as f64 + 1.0) + 3.0).sqrt() + 6.0).max(8.0)
    };
    let density_at = |r: f64| -> f64 {
        use crate::moments::Density::*;
        match &measure.density {
            None => 0.0,
            GaussianRadial { c } => c * (-r * r).exp() * r,
            LinearRadial { c } => c * r,
            Table { rs, values } => {
                // Piecewise-linear interpolation, zero outside.
                if rs.is_empty() || r > *rs.last().unwrap() {
                    return 0.0;
                }
                let mut lo = 0.0;
                let mut vlo = 0.0;
                for (idx, &rk) in rs.iter().enumerate() {
                    if r <= rk {
                        let span = rk - lo;
                        let t = if span > 0.0 { (r - lo) / span } else { 1.0 };
                        return vlo + t * (values[idx] - vlo);
                    }
                    lo = rk;
                    vlo = values[idx];
                }
                0.0
            }
        }
    };
    let panels = 4096usize;
    let h = r_max / panels as f64;
    for idx in 0..=panels {
        let r = idx as f64 * h;
        let simpson_w = if idx == 0 || idx == panels {
            1.0
        } else if idx % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let w = simpson_w * h / 3.0 * density_at(r);
        if w != 0.0 {
            add_at(&mut f, r, w);
        }
    }
    Ok(f)
}

/// Extended-frame verdict: the aligned frame with its projector identities,
/// the conjugated projection identity, and the reported gaps that the
/// source text glosses over.
#[derive(Clone, Debug)]
pub struct ExtendedFrameReport {
    /// Aligned-convention frame matrix on the extended layout.
    pub matrix: CMat,
    /// max |S^2 - S| entrywise (aligned): the frame is a projector.
    pub projector_dev: f64,
    /// max_n |S Psi~_n - Psi~_n| over retained pairs (aligned).
    pub span_identity_dev: f64,
    /// |S v| for v = (phi_0, -chi)/sqrt(2), orthogonal to every pair.
    pub complement_dev: f64,
    /// Conjugated states: max over test points of the componentwise gap
    /// between the projected extended state and the plain state / sqrt(2).
    pub projection_dev: f64,
    /// Operator norm of S - I on the full extended space. A proper
    /// projector sits at distance exactly 1: the frame resolves the pair
    /// span, never the whole space.
    pub full_identity_gap: f64,
    /// max |S^2 - S| for the conjugated-convention frame (about 1/4).
    pub conjugated_projector_dev: f64,
    /// Measured extended-state norm squared times 2N/(N+1) at the test
    /// point; 1 confirms the closed form (N+1)/(2N) for the true norm.
    pub norm_closed_form_ratio: f64,
}

/// Builds both extended frames and verifies which identity each one
/// carries. Needs an extended layout and a moment-verified measure.
pub fn extended_frame(family: &VcsFamily) -> Result<ExtendedFrameReport, VcsError> {
    let layout = family.layout();
    let Some(chi) = layout.chi_slot() else {
        return Err(VcsError::WrongLayout {
            needs_extended: true,
        });
    };
    let s_aligned = analytic_frame(family, FrameKind::Extended(ExtendedConvention::Aligned))?;
    let s_conj = analytic_frame(family, FrameKind::Extended(ExtendedConvention::Conjugated))?;

    let projector_dev = s_aligned.mul(&s_aligned).max_abs_diff(&s_aligned);
    let conjugated_projector_dev = s_conj.mul(&s_conj).max_abs_diff(&s_conj);

    // Pair vectors on the extended layout.
    let basis = crate::fock::psi_basis_extended(layout);
    let dim = layout.dim();
    let mut span_identity_dev = 0.0f64;
    for n in 0..=layout.truncation() {
        let col: Vec<C64> = (0..dim).map(|i| basis.vectors[(i, n)]).collect();
        let sv = s_aligned.apply(&col);
        for i in 0..dim {
            span_identity_dev = span_identity_dev.max((sv[i] - col[i]).norm());
        }
    }

    let mut v = vec![cr(0.0); dim];
    let inv = 1.0 / core::f64::consts::SQRT_2;
    v[layout.b(0)] = cr(inv);
    v[chi] = cr(-inv);
    let sv = s_aligned.apply(&v);
    let complement_dev = sv.iter().map(|c| c.norm()).fold(0.0, f64::max);

    // S is real symmetric by construction, so the operator norm of S - I
    // is the extreme eigenvalue magnitude.
    let full_identity_gap = {
        let s_real = s_aligned.to_real(1e-12);
        let diff = crate::linalg::RMat::from_fn(dim, dim, |i, j| {
            s_real[(i, j)] - if i == j { 1.0 } else { 0.0 }
        });
        crate::linalg::jacobi_eigenvalues(&diff)
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    };

    // Conjugated states project onto the plain family exactly: compare
    // componentwise at a spread of phases.
    let plain_layout = build_layout(
        family.seq().clone(),
        layout.truncation(),
        false,
    )
    .expect("same truncation");
    let plain = VcsFamily::new_unchecked(plain_layout, family.measure().clone());
    let r_test = if family.domain_radius().is_finite() {
        0.45 * family.domain_radius()
    } else {
        0.8
    };
    let mut projection_dev = 0.0f64;
    let mut norm_closed_form_ratio = 0.0f64;
    for step in 0..4 {
        let th = 0.4 + core::f64::consts::FRAC_PI_2 * step as f64;
        let z = C64::from_polar(r_test, th);
        let ext = family.extended_state(z, ExtendedConvention::Conjugated)?;
        let pl = plain.state_vector(z)?;
        for i in 0..plain.layout().dim() {
            projection_dev = projection_dev.max((ext[i] * cr(core::f64::consts::SQRT_2) - pl[i]).norm());
        }
        // chi slot is what the projector removes; the retained components
        // above are the projected state.
        let norm_sq: f64 = ext.iter().map(|c| c.norm_sqr()).sum();
        let nn = family.normalization(z)?;
        norm_closed_form_ratio = norm_sq * 2.0 * nn / (nn + 1.0);
    }

    Ok(ExtendedFrameReport {
        matrix: s_aligned,
        projector_dev,
        span_identity_dev,
        complement_dev,
        projection_dev,
        full_identity_gap,
        conjugated_projector_dev,
        norm_closed_form_ratio,
    })
}

/// Degenerate-level frame: for each degeneracy slot k the oscillator VCS
/// block repeats, and the k-summed frame is block-diagonal identity.
#[derive(Clone, Debug)]
pub struct DegenerateFrameReport {
    /// Full matrix on (2 levels) x (N+1) x K basis, degeneracy-major
    /// blocks.
    pub matrix: CMat,
    pub truncation: usize,
    pub degeneracy: usize,
    /// max |F - I| over interior indices of every block.
    pub max_block_deviation: f64,
    /// max |F| over entries coupling different degeneracy slots.
    pub max_cross_block: f64,
}

/// Oscillator VCS repeated over K degeneracy slots; each slot carries its
/// own copy of the two-component family and the slots never mix.
pub fn fqhe_frame(truncation: usize, degeneracy: usize) -> Result<DegenerateFrameReport, VcsError> {
    assert!(degeneracy >= 1, "need at least one degeneracy slot");
    let family = VcsFamily::oscillator(truncation);
    let block = analytic_frame(&family, FrameKind::Plain)?;
    let bd = family.layout().dim();
    let dim = bd * degeneracy;
    let mut matrix = CMat::zeros(dim, dim);
    for k in 0..degeneracy {
        for i in 0..bd {
            for j in 0..bd {
                matrix[(k * bd + i, k * bd + j)] = block[(i, j)];
            }
        }
    }
    let layout = family.layout();
    let interior: Vec<usize> = (0..truncation)
        .map(|n| layout.b(n))
        .chain((0..truncation).map(|k| layout.f(k)))
        .collect();
    let block_dev = max_identity_dev_on(&block, &interior);
    let mut cross = 0.0f64;
    for ka in 0..degeneracy {
        for kb in 0..degeneracy {
            if ka == kb {
                continue;
            }
            for i in 0..bd {
                for j in 0..bd {
                    cross = cross.max(matrix[(ka * bd + i, kb * bd + j)].norm());
                }
            }
        }
    }
    Ok(DegenerateFrameReport {
        matrix,
        truncation,
        degeneracy,
        max_block_deviation: block_dev,
        max_cross_block: cross,
    })
}
