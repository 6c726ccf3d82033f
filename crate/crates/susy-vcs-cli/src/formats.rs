//! On-disk formats: superpotential specs and measures as JSON, target
//! moments and sequence tables as plain decimal lists, CSV sidecars for
//! moments / spectra / residuals / frames, and a dense text format for
//! matrix export.

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};
use std::path::Path;
use susy_vcs::linalg::CMat;
use susy_vcs::moments::{Density, RadialMeasure};
use susy_vcs::scalar::{gauss, parse_rat};
use susy_vcs::weyl::{LaurentPoly, Superpotential};

/// One Laurent monomial c x^a y^b with exact Gaussian-rational
/// coefficient, re and im given as `p` or `p/q` strings.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub a: i64,
    pub b: i64,
    pub re: String,
    pub im: String,
}

/// Superpotential file: a label and the two Laurent polynomials.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperpotentialSpec {
    pub label: String,
    pub w1: Vec<TermSpec>,
    pub w2: Vec<TermSpec>,
}

fn poly_from_terms(terms: &[TermSpec]) -> anyhow::Result<LaurentPoly> {
    let mut list = Vec::with_capacity(terms.len());
    for t in terms {
        let re = parse_rat(&t.re).map_err(|e| anyhow!("coefficient re: {e}"))?;
        let im = parse_rat(&t.im).map_err(|e| anyhow!("coefficient im: {e}"))?;
        list.push((t.a, t.b, gauss(re, im)));
    }
    Ok(LaurentPoly::from_monomials(&list))
}

pub fn load_superpotential(path: &Path) -> anyhow::Result<Superpotential> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading superpotential {}", path.display()))?;
    let spec: SuperpotentialSpec = serde_json::from_str(&text)
        .with_context(|| format!("parsing superpotential {}", path.display()))?;
    Ok(Superpotential::new(
        &spec.label,
        poly_from_terms(&spec.w1)?,
        poly_from_terms(&spec.w2)?,
    ))
}

/// Plain decimal list: whitespace- or newline-separated non-negative
/// values. Shared by target-moment files and sequence tables.
pub fn load_decimal_list(path: &Path) -> anyhow::Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let v: f64 = tok
            .parse()
            .with_context(|| format!("bad decimal value {tok:?} in {}", path.display()))?;
        if !v.is_finite() || v < 0.0 {
            bail!("value {v} in {} must be finite and non-negative", path.display());
        }
        out.push(v);
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    None,
    /// c e^{-r^2} r.
    GaussianRadial { c: f64 },
    /// c r.
    LinearRadial { c: f64 },
    Table { rs: Vec<f64>, values: Vec<f64> },
}

/// Measure file: point atoms as [location, weight] pairs plus a density
/// on (0, support_radius].
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub atoms: Vec<(f64, f64)>,
    pub density: DensitySpec,
    pub support_radius: f64,
}

impl From<&RadialMeasure> for MeasureSpec {
    fn from(m: &RadialMeasure) -> Self {
        let density = match &m.density {
            Density::None => DensitySpec::None,
            Density::GaussianRadial { c } => DensitySpec::GaussianRadial { c: *c },
            Density::LinearRadial { c } => DensitySpec::LinearRadial { c: *c },
            Density::Table { rs, values } => DensitySpec::Table {
                rs: rs.clone(),
                values: values.clone(),
            },
        };
        MeasureSpec {
            atoms: m.atoms.clone(),
            density,
            support_radius: m.support_radius,
        }
    }
}

impl MeasureSpec {
    pub fn into_measure(self) -> anyhow::Result<RadialMeasure> {
        let density = match self.density {
            DensitySpec::None => Density::None,
            DensitySpec::GaussianRadial { c } => Density::GaussianRadial { c },
            DensitySpec::LinearRadial { c } => Density::LinearRadial { c },
            DensitySpec::Table { rs, values } => Density::Table { rs, values },
        };
        let measure = RadialMeasure {
            atoms: self.atoms,
            density,
            support_radius: self.support_radius,
        };
        measure.validate().map_err(|e| anyhow!("invalid measure: {e}"))?;
        Ok(measure)
    }
}

pub fn save_measure(measure: &RadialMeasure, path: &Path) -> anyhow::Result<()> {
    let spec = MeasureSpec::from(measure);
    let mut text = serde_json::to_string_pretty(&spec)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn load_measure(path: &Path) -> anyhow::Result<RadialMeasure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading measure {}", path.display()))?;
    let spec: MeasureSpec = serde_json::from_str(&text)
        .with_context(|| format!("parsing measure {}", path.display()))?;
    spec.into_measure()
}

fn csv_writer(path: &Path) -> anyhow::Result<csv::Writer<std::fs::File>> {
    let f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(csv::Writer::from_writer(f))
}

/// Moment comparison rows: (n, computed, target, rel_err).
pub fn write_moments_csv(
    path: &Path,
    rows: &[(u32, f64, f64, f64)],
) -> anyhow::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["n", "computed", "target", "rel_err"])?;
    for (n, computed, target, rel) in rows {
        w.write_record([
            n.to_string(),
            format!("{computed:.17e}"),
            format!("{target:.17e}"),
            format!("{rel:.6e}"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Spectrum rows: (model, m, ell, n, E_numeric, E_closed, rel_err);
/// rel_err is absolute deviation when E_closed = 0.
pub struct SpectrumRow {
    pub model: String,
    pub m: u32,
    pub ell: u8,
    pub n: u32,
    pub e_numeric: f64,
    pub e_closed: f64,
    pub rel_err: f64,
}

pub fn write_spectrum_csv(path: &Path, rows: &[SpectrumRow]) -> anyhow::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["model", "m", "ell", "n", "E_numeric", "E_closed", "rel_err"])?;
    for r in rows {
        w.write_record([
            r.model.clone(),
            r.m.to_string(),
            r.ell.to_string(),
            r.n.to_string(),
            format!("{:.12e}", r.e_numeric),
            format!("{:.12e}", r.e_closed),
            format!("{:.6e}", r.rel_err),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Residual rows: (example, k_or_m, window, residual).
pub fn write_residuals_csv(
    path: &Path,
    rows: &[(String, i64, String, f64)],
) -> anyhow::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["example", "k_or_m", "window", "residual"])?;
    for (example, param, window, residual) in rows {
        w.write_record([
            example.clone(),
            param.to_string(),
            window.clone(),
            format!("{residual:.6e}"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Frame rows: (row, col, value, deviation from identity). Values are
/// real parts; an imaginary part above 1e-13 is itself a deviation and is
/// folded into the deviation column.
pub fn write_frame_csv(path: &Path, frame: &CMat) -> anyhow::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["row", "col", "value", "deviation"])?;
    for i in 0..frame.rows() {
        for j in 0..frame.cols() {
            let v = frame[(i, j)];
            let target = if i == j { 1.0 } else { 0.0 };
            let dev = ((v.re - target).powi(2) + v.im.powi(2)).sqrt();
            w.write_record([
                i.to_string(),
                j.to_string(),
                format!("{:.12e}", v.re),
                format!("{dev:.6e}"),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Dense matrix text: first line `rows cols`, then one row per line,
/// entries space-separated. Real matrices print plain decimals; a matrix
/// with imaginary content prints re,im pairs.
pub fn write_dense_matrix(path: &Path, m: &CMat) -> anyhow::Result<()> {
    let mut text = format!("{} {}\n", m.rows(), m.cols());
    let complex = (0..m.rows())
        .any(|i| (0..m.cols()).any(|j| m[(i, j)].im.abs() > 1e-15));
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let v = m[(i, j)];
            row.push(if complex {
                format!("{:.17e},{:.17e}", v.re, v.im)
            } else {
                format!("{:.17e}", v.re)
            });
        }
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
