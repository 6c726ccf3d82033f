//! Function-space realization of the pair structure: the unitary that turns
//! basis vectors into monomials, holomorphic supercharges, and the graded
//! (Grassmann) picture with Berezin integration.
//!
//! Bosonic vectors become analytic monomials z^n/sqrt(eps_n!), fermionic
//! vectors antianalytic ones. The graded picture trades the antianalytic
//! sector for a nilpotent variable zeta; the coherent states then read
//! N^{-1/2} [xi_0 + (1 + zeta) sum z^n/sqrt(eps_n!) xi_n] and resolve the
//! identity against the weight N [zetabar zeta - 1].

use crate::fock::SpaceLayout;
use crate::linalg::CMat;
use crate::moments::RadialMeasure;
use crate::vcs::{VcsError, VcsFamily};
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;

#[allow(unused_imports)]
use num_traits::Float; // Inherent f64 methods shadow this in std builds; no_std resolves through it.

fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Function with an analytic part (powers 0..=N of z) and an antianalytic
/// part (powers 1..=N+1 of zbar; the constant lives only on the analytic
/// side). Mirrors the truncated pair space slot for slot.
#[derive(Clone, Debug, PartialEq)]
pub struct HolFunction {
    /// Coefficient of z^n at index n.
    pub analytic: Vec<C64>,
    /// Coefficient of zbar^p at index p - 1, powers 1..=N+1.
    pub antianalytic: Vec<C64>,
}

impl HolFunction {
    pub fn zeros(truncation: usize) -> Self {
        HolFunction {
            analytic: vec![cr(0.0); truncation + 1],
            antianalytic: vec![cr(0.0); truncation + 1],
        }
    }

    pub fn truncation(&self) -> usize {
        self.analytic.len() - 1
    }

    /// Coefficient of zbar^power, 1 <= power <= N + 1.
    pub fn antianalytic_power(&self, power: usize) -> C64 {
        assert!(power >= 1, "no antianalytic constant term");
        self.antianalytic[power - 1]
    }

    pub fn add(&self, other: &HolFunction) -> HolFunction {
        assert_eq!(self.analytic.len(), other.analytic.len());
        HolFunction {
            analytic: self
                .analytic
                .iter()
                .zip(&other.analytic)
                .map(|(a, b)| a + b)
                .collect(),
            antianalytic: self
                .antianalytic
                .iter()
                .zip(&other.antianalytic)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> HolFunction {
        HolFunction {
            analytic: self.analytic.iter().map(|a| a * s).collect(),
            antianalytic: self.antianalytic.iter().map(|a| a * s).collect(),
        }
    }
}

/// Monomial xi_n = z^n / sqrt(eps_n!).
pub fn monomial(layout: &SpaceLayout, n: usize) -> HolFunction {
    let mut f = HolFunction::zeros(layout.truncation());
    f.analytic[n] = cr(factorial_sqrt_inv(layout, n as u32));
    f
}

/// Conjugate monomial zbar^p / sqrt(eps_p!), p >= 1.
pub fn monomial_bar(layout: &SpaceLayout, p: usize) -> HolFunction {
    assert!(p >= 1, "antianalytic powers start at 1");
    let mut f = HolFunction::zeros(layout.truncation());
    f.antianalytic[p - 1] = cr(factorial_sqrt_inv(layout, p as u32));
    f
}

fn factorial_sqrt_inv(layout: &SpaceLayout, p: u32) -> f64 {
    layout
        .seq()
        .factorial(p)
        .expect("layout retains this index")
        .sqrt()
        .recip()
}

/// The unitary picture of a pair-space vector: level n of the bosonic
/// sector lands on z^n/sqrt(eps_n!), level k of the fermionic sector on
/// zbar^{k+1}/sqrt(eps_{k+1}!). Plain layouts only.
pub fn w_map(layout: &SpaceLayout, vector: &[C64]) -> Result<HolFunction, VcsError> {
    if layout.is_extended() {
        return Err(VcsError::WrongLayout {
            needs_extended: false,
        });
    }
    assert_eq!(vector.len(), layout.dim(), "vector must fill the layout");
    let mut f = HolFunction::zeros(layout.truncation());
    for n in 0..=layout.truncation() {
        f.analytic[n] = vector[layout.b(n)] * cr(factorial_sqrt_inv(layout, n as u32));
    }
    for k in 0..=layout.truncation() {
        // Power k + 1, stored at index k.
        f.antianalytic[k] = vector[layout.f(k)] * cr(factorial_sqrt_inv(layout, k as u32 + 1));
    }
    Ok(f)
}

/// Inner product of two such functions under the family measure: the
/// angular integral keeps only power-matched analytic pairs and
/// power-matched antianalytic pairs.
pub fn hol_inner_product(
    f: &HolFunction,
    g: &HolFunction,
    measure: &RadialMeasure,
) -> Result<C64, VcsError> {
    assert_eq!(f.analytic.len(), g.analytic.len());
    let mut acc = C64::new(0.0, 0.0);
    for (p, (a, b)) in f.analytic.iter().zip(&g.analytic).enumerate() {
        if a.norm_sqr() != 0.0 || b.norm_sqr() != 0.0 {
            acc += a.conj() * b * cr(measure.moment(p as u32)?);
        }
    }
    for (idx, (a, b)) in f.antianalytic.iter().zip(&g.antianalytic).enumerate() {
        if a.norm_sqr() != 0.0 || b.norm_sqr() != 0.0 {
            acc += a.conj() * b * cr(measure.moment(idx as u32 + 1)?);
        }
    }
    Ok(acc)
}

/// Upper supercharge on functions: z^p goes to sqrt(eps_p) zbar^p, the
/// constant and every antianalytic input die. Square is structurally zero.
pub fn q_hol_action(layout: &SpaceLayout, f: &HolFunction) -> HolFunction {
    let mut out = HolFunction::zeros(layout.truncation());
    for p in 1..=layout.truncation() {
        out.antianalytic[p - 1] = f.analytic[p] * cr(layout.eps(p).sqrt());
    }
    out
}

/// Adjoint supercharge: zbar^p back to sqrt(eps_p) z^p; the top power
/// N + 1 would leave the truncation and is dropped, matching the matrix
/// picture on the pair space.
pub fn q_hol_dag_action(layout: &SpaceLayout, f: &HolFunction) -> HolFunction {
    let mut out = HolFunction::zeros(layout.truncation());
    for p in 1..=layout.truncation() {
        out.analytic[p] = f.antianalytic[p - 1] * cr(layout.eps(p).sqrt());
    }
    out
}

/// Supercharge as a matrix on the monomial basis (analytic indices 0..=N,
/// then antianalytic powers 1..=N+1), aligned slot for slot with the pair
/// space.
pub fn q_hol_matrix(layout: &SpaceLayout) -> CMat {
    let dim = layout.susy_dim();
    let mut m = CMat::zeros(dim, dim);
    for p in 1..=layout.truncation() {
        m[(layout.f(p - 1), layout.b(p))] = cr(layout.eps(p).sqrt());
    }
    m
}

/// Graded function xi(z, zeta) = body(z) + zeta soul(z); the soul has no
/// constant term and zeta^2 = 0 holds structurally: multiplying two graded
/// functions never forms a soul-soul term.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFunction {
    body: Vec<C64>,
    soul: Vec<C64>,
}

impl GradedFunction {
    /// Both lists are z-power coefficients of length N + 1; the soul
    /// constant must vanish.
    pub fn new(body: Vec<C64>, soul: Vec<C64>) -> Self {
        assert_eq!(body.len(), soul.len(), "sectors share the truncation");
        assert!(
            soul.first().map_or(true, |c| c.norm_sqr() == 0.0),
            "soul carries no constant term"
        );
        GradedFunction { body, soul }
    }

    pub fn body(&self) -> &[C64] {
        &self.body
    }

    pub fn soul(&self) -> &[C64] {
        &self.soul
    }

    pub fn truncation(&self) -> usize {
        self.body.len() - 1
    }

    /// Product with zeta^2 = 0: body body, plus zeta (soul_1 body_2 +
    /// body_1 soul_2). Polynomial degrees above the truncation are cut.
    pub fn mul(&self, other: &GradedFunction) -> GradedFunction {
        let n_top = self.truncation();
        assert_eq!(n_top, other.truncation());
        let conv = |a: &[C64], b: &[C64]| -> Vec<C64> {
            let mut out = vec![cr(0.0); n_top + 1];
            for (i, ai) in a.iter().enumerate() {
                if ai.norm_sqr() == 0.0 {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    if i + j <= n_top {
                        out[i + j] += ai * bj;
                    }
                }
            }
            out
        };
        let body = conv(&self.body, &other.body);
        let mut soul = conv(&self.soul, &other.body);
        for (s, extra) in soul.iter_mut().zip(conv(&self.body, &other.soul)) {
            *s += extra;
        }
        soul[0] = cr(0.0);
        GradedFunction { body, soul }
    }
}

/// Element of the Grassmann algebra over the complex scalars:
/// c1 + cz zeta + czb zetabar + czzb zetabar zeta.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrassmannScalar {
    pub c1: C64,
    pub cz: C64,
    pub czb: C64,
    pub czzb: C64,
}

impl GrassmannScalar {
    pub fn zero() -> Self {
        GrassmannScalar {
            c1: cr(0.0),
            cz: cr(0.0),
            czb: cr(0.0),
            czzb: cr(0.0),
        }
    }

    /// zeta^2 = zetabar^2 = 0 and zeta zetabar = -zetabar zeta.
    pub fn mul(&self, o: &GrassmannScalar) -> GrassmannScalar {
        GrassmannScalar {
            c1: self.c1 * o.c1,
            cz: self.c1 * o.cz + self.cz * o.c1,
            czb: self.c1 * o.czb + self.czb * o.c1,
            czzb: self.c1 * o.czzb + self.czzb * o.c1 + self.czb * o.cz - self.cz * o.czb,
        }
    }

    /// Conjugation reverses Grassmann factors: zeta and zetabar swap and
    /// zetabar zeta is self-conjugate.
    pub fn conj(&self) -> GrassmannScalar {
        GrassmannScalar {
            c1: self.c1.conj(),
            cz: self.czb.conj(),
            czb: self.cz.conj(),
            czzb: self.czzb.conj(),
        }
    }
}

/// Which quadratic monomial the formal d zeta integral normalizes to one.
/// `BarFirst` takes the printed rule literally; `PlainFirst` is its
/// opposite-ordering counterpart and flips the sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BerezinOrdering {
    /// integral of zetabar zeta d zeta = 1.
    BarFirst,
    /// integral of zeta zetabar d zeta = 1.
    PlainFirst,
}

impl BerezinOrdering {
    fn zetabar_zeta_integral(self) -> f64 {
        match self {
            BerezinOrdering::BarFirst => 1.0,
            BerezinOrdering::PlainFirst => -1.0,
        }
    }
}

/// The d zeta integral: only the quadratic term survives, with the sign
/// of the chosen ordering. The linear and constant terms drop.
pub fn berezin_integral(s: &GrassmannScalar, ordering: BerezinOrdering) -> C64 {
    s.czzb * cr(ordering.zetabar_zeta_integral())
}

/// Scalar product of graded functions: Berezin reduction of
/// conj(f) g [1 + zetabar zeta] against the radial measure. Under the
/// literal ordering this is the body inner product plus the soul inner
/// product, positive definite; the opposite ordering negates it.
pub fn graded_scalar_product(
    f: &GradedFunction,
    g: &GradedFunction,
    measure: &RadialMeasure,
    ordering: BerezinOrdering,
) -> Result<C64, VcsError> {
    let n_top = f.truncation();
    assert_eq!(n_top, g.truncation());
    // Pairwise z-contractions under the measure; power-matched terms only.
    let contract = |a: &[C64], b: &[C64]| -> Result<C64, VcsError> {
        let mut acc = C64::new(0.0, 0.0);
        for p in 0..=n_top {
            if a[p].norm_sqr() != 0.0 || b[p].norm_sqr() != 0.0 {
                acc += a[p].conj() * b[p] * cr(measure.moment(p as u32)?);
            }
        }
        Ok(acc)
    };
    // conj(body + zeta soul) = conj(body) + zetabar conj(soul); assemble
    // the Grassmann scalar of pointwise products, z-integrated.
    let pairing = GrassmannScalar {
        c1: contract(&f.body, &g.body)?,
        cz: contract(&f.body, &g.soul)?,
        czb: contract(&f.soul, &g.body)?,
        czzb: contract(&f.soul, &g.soul)?,
    };
    let weight = GrassmannScalar {
        c1: cr(1.0),
        cz: cr(0.0),
        czb: cr(0.0),
        czzb: cr(1.0),
    };
    Ok(berezin_integral(&pairing.mul(&weight), ordering))
}

/// Coherent state in the graded picture: body N^{-1/2} sum z^n/eps_n! w^n,
/// soul the same series without the constant.
pub fn grassmann_vcs(family: &VcsFamily, z: C64) -> Result<GradedFunction, VcsError> {
    family.check_domain(z)?;
    let n_top = family.layout().truncation();
    let norm = cr(family.normalization(z)?.sqrt().recip());
    let mut body = vec![cr(0.0); n_top + 1];
    let mut soul = vec![cr(0.0); n_top + 1];
    let mut coeff = norm;
    body[0] = coeff;
    for n in 1..=n_top {
        // z^n / eps_n!: the monomial carries one 1/sqrt(eps_n!), the state
        // coefficient the other.
        coeff = coeff * z / cr(family.layout().eps(n));
        body[n] = coeff;
        soul[n] = coeff;
    }
    Ok(GradedFunction { body, soul })
}

/// Outcome of the graded resolution of the identity for one ordering.
#[derive(Clone, Debug)]
pub struct GradedFrameReport {
    pub ordering: BerezinOrdering,
    /// Frame diagonal over the body sector, powers 0..=N.
    pub body_diag: Vec<f64>,
    /// Frame diagonal over the soul sector, powers 1..=N.
    pub soul_diag: Vec<f64>,
    /// max |F - I| over both sectors.
    pub identity_dev: f64,
    /// Whether this ordering closes the resolution with + identity.
    pub closes: bool,
}

/// Integrates |z, zeta><z, zeta| N [zetabar zeta - 1] d zeta d mu. The
/// Berezin step is done symbolically: the kernel's four Grassmann
/// components are multiplied by the weight and only the quadratic term
/// survives, with the ordering's sign. The z-integral reduces to moments.
pub fn graded_frame(family: &VcsFamily, ordering: BerezinOrdering) -> Result<GradedFrameReport, VcsError> {
    let n_top = family.layout().truncation();
    // Kernel components as operator blocks on (body powers, soul powers):
    // ket bra expands to BB* + zeta SB* + zetabar BS* - zetabar zeta SS*.
    // Against the weight (czzb = 1, c1 = -1) the quadratic coefficient of
    // the product is BB* + SS*, by the same multiplication rule as
    // GrassmannScalar; the d zeta sign is the ordering's.
    let sign = ordering.zetabar_zeta_integral();
    // Angular reduction leaves diagonal moment ratios on each sector; the
    // normalization in the weight cancels the squared state prefactor.
    let mut body_diag = Vec::with_capacity(n_top + 1);
    for p in 0..=n_top as u32 {
        let t = family.seq().factorial(p)?;
        let m = family.measure().moment(p)?;
        let ratio = if t.is_finite() && m.is_finite() && t > 0.0 {
            m / t
        } else {
            (family.measure().moment_log(p)? - family.seq().log_factorial(p)?).exp()
        };
        body_diag.push(sign * ratio);
    }
    let soul_diag: Vec<f64> = body_diag[1..].to_vec();
    let mut identity_dev = 0.0f64;
    for d in body_diag.iter().chain(&soul_diag) {
        identity_dev = identity_dev.max((d - 1.0).abs());
    }
    Ok(GradedFrameReport {
        ordering,
        closes: identity_dev < 1e-8,
        body_diag,
        soul_diag,
        identity_dev,
    })
}

/// Runs the resolution under both orderings and returns (reports, the
/// ordering that closes with + identity, if any).
pub fn graded_frame_both(
    family: &VcsFamily,
) -> Result<(Vec<GradedFrameReport>, Option<BerezinOrdering>), VcsError> {
    let reports = vec![
        graded_frame(family, BerezinOrdering::BarFirst)?,
        graded_frame(family, BerezinOrdering::PlainFirst)?,
    ];
    let closing = reports.iter().find(|r| r.closes).map(|r| r.ordering);
    Ok((reports, closing))
}
