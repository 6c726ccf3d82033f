//! Energy sequences of factorized partner pairs, their generalized
//! factorials, and ground-state profiles of a 1D scalar superpotential.
//!
//! A partner pair shares one sequence eps_n with eps_0 = 0: the bosonic
//! member carries eps_n, the fermionic one eps_{n+1}. The planar model with
//! an inverse-x superpotential leads to the bounded sequence
//! eps_n = (m^2/2)(1 - 1/(n+1)^2), whose generalized factorial has the
//! closed form m^{2n}/2^{n+1} (n+2)/(n+1).

use crate::quad;
use crate::scalar::{rat_to_f64, Rat};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;

#[allow(unused_imports)]
use num_traits::Float; // Inherent f64 methods shadow this in std builds; no_std resolves through it.

#[derive(Clone, Debug, PartialEq)]
pub enum EnergySequence {
    /// eps_n = n.
    Oscillator,
    /// eps_n = (m^2/2)(1 - 1/(n+1)^2): increasing, sup m^2/2, eps_0 = 0.
    LandauBosonic { m: u32 },
    /// eps_n = (m^2/2)(1 - 1/(n+2)^2): the bosonic sequence shifted by one.
    LandauFermionic { m: u32 },
    /// Explicit finite list of non-negative values.
    Table { values: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqError {
    IndexOutOfRange { n: u32, len: usize },
}

impl core::fmt::Display for SeqError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SeqError::IndexOutOfRange { n, len } => {
                write!(f, "index {n} out of range for table of length {len}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SeqError {}

fn bigint_pow(base: i64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

impl EnergySequence {
    pub fn oscillator() -> Self {
        EnergySequence::Oscillator
    }

    pub fn landau_bosonic(m: u32) -> Self {
        assert!(m > 0, "mass parameter must be positive");
        EnergySequence::LandauBosonic { m }
    }

    pub fn landau_fermionic(m: u32) -> Self {
        assert!(m > 0, "mass parameter must be positive");
        EnergySequence::LandauFermionic { m }
    }

    pub fn table(values: Vec<f64>) -> Self {
        EnergySequence::Table { values }
    }

    /// Parses a table sequence from text: one non-negative decimal per
    /// line, blank lines and `#` comments ignored.
    pub fn table_from_text(text: &str) -> Result<Self, TableError> {
        let mut values = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let v: f64 = s.parse().map_err(|_| TableError::Parse { line })?;
            if !v.is_finite() {
                return Err(TableError::NonFinite { line });
            }
            if v < 0.0 {
                return Err(TableError::Negative { line });
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(TableError::Empty);
        }
        Ok(EnergySequence::Table { values })
    }

    /// Exact value of eps_n; `None` for table sequences.
    pub fn eps_rational(&self, n: u32) -> Option<Rat> {
        match self {
            EnergySequence::Oscillator => Some(Rat::from_integer(BigInt::from(n))),
            EnergySequence::LandauBosonic { m } => Some(landau_eps_rat(*m, n, 1)),
            EnergySequence::LandauFermionic { m } => Some(landau_eps_rat(*m, n, 2)),
            EnergySequence::Table { .. } => None,
        }
    }

    pub fn eps(&self, n: u32) -> Result<f64, SeqError> {
        match self {
            EnergySequence::Table { values } => values
                .get(n as usize)
                .copied()
                .ok_or(SeqError::IndexOutOfRange {
                    n,
                    len: values.len(),
                }),
            _ => Ok(rat_to_f64(&self.eps_rational(n).expect("analytic kind"))),
        }
    }

    /// Generalized factorial eps_n! = eps_1 eps_2 ... eps_n, eps_0! = 1.
    /// Exact for the analytic kinds; `None` for tables.
    pub fn factorial_rational(&self, n: u32) -> Option<Rat> {
        let mut acc = Rat::one();
        for k in 1..=n {
            acc *= self.eps_rational(k)?;
        }
        Some(acc)
    }

    pub fn factorial(&self, n: u32) -> Result<f64, SeqError> {
        match self {
            EnergySequence::Table { .. } => {
                let mut acc = 1.0f64;
                for k in 1..=n {
                    acc *= self.eps(k)?;
                }
                Ok(acc)
            }
            _ => Ok(rat_to_f64(&self.factorial_rational(n).expect("analytic"))),
        }
    }

    /// Sum of ln eps_k for k = 1..=n; overflow-safe companion of
    /// [`factorial`](Self::factorial).
    pub fn log_factorial(&self, n: u32) -> Result<f64, SeqError> {
        let mut acc = 0.0f64;
        for k in 1..=n {
            acc += self.eps(k)?.ln();
        }
        Ok(acc)
    }

    /// Limit of eps_n: infinite for the oscillator, m^2/2 for the bounded
    /// kinds, undefined for tables.
    pub fn limit(&self) -> Option<f64> {
        match self {
            EnergySequence::Oscillator => Some(f64::INFINITY),
            EnergySequence::LandauBosonic { m } | EnergySequence::LandauFermionic { m } => {
                Some((*m as f64) * (*m as f64) / 2.0)
            }
            EnergySequence::Table { .. } => None,
        }
    }

    pub fn table_len(&self) -> Option<usize> {
        match self {
            EnergySequence::Table { values } => Some(values.len()),
            _ => None,
        }
    }
}

fn landau_eps_rat(m: u32, n: u32, shift: u32) -> Rat {
    // (m^2/2) (1 - 1/(n+shift)^2), exact.
    let half_m2 = Rat::new(bigint_pow(m as i64, 2), BigInt::from(2));
    let d = BigInt::from(n) + BigInt::from(shift);
    let one_minus = Rat::one() - Rat::new(BigInt::one(), &d * &d);
    half_m2 * one_minus
}

/// Closed form of the bounded-sequence factorial:
/// eps_n! = m^{2n}/2^{n+1} (n+2)/(n+1).
pub fn landau_factorial_closed_form(m: u32, n: u32) -> Rat {
    let num = bigint_pow(m as i64, 2 * n) * BigInt::from(n + 2);
    let den = bigint_pow(2, n + 1) * BigInt::from(n + 1);
    Rat::new(num, den)
}

/// The reciprocal form 2^{n+1}/m^{2n} (1 - 1/(n+2)) that appears printed
/// as if it were eps_n! itself; it is in fact 1/eps_n!. Kept so reports can
/// document the discrepancy.
pub fn landau_factorial_printed_form(m: u32, n: u32) -> Rat {
    let lead = Rat::new(bigint_pow(2, n + 1), bigint_pow(m as i64, 2 * n));
    lead * (Rat::one() - Rat::new(BigInt::one(), BigInt::from(n + 2)))
}

/// True iff the printed form is exactly the reciprocal of the factorial,
/// for this (m, n).
pub fn printed_form_is_reciprocal(m: u32, n: u32) -> bool {
    landau_factorial_printed_form(m, n) * landau_factorial_closed_form(m, n) == Rat::one()
}

/// Exact check that the fermionic sequence is the bosonic one shifted:
/// eps^f_n = eps^b_{n+1} for every n <= n_max.
pub fn partner_consistency(m: u32, n_max: u32) -> bool {
    let b = EnergySequence::landau_bosonic(m);
    let f = EnergySequence::landau_fermionic(m);
    (0..=n_max).all(|n| f.eps_rational(n) == b.eps_rational(n + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    Parse { line: usize },
    Negative { line: usize },
    NonFinite { line: usize },
    Empty,
}

impl core::fmt::Display for TableError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TableError::Parse { line } => write!(f, "line {line}: not a decimal value"),
            TableError::Negative { line } => write!(f, "line {line}: negative value"),
            TableError::NonFinite { line } => write!(f, "line {line}: non-finite value"),
            TableError::Empty => write!(f, "no values found"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TableError {}

/// Sampled ground-state profiles of the 1D factorization with scalar
/// superpotential w: phi_b = exp(-c int_0^x w), chi = exp(+c int_0^x w).
/// Their pointwise product is 1 by construction; at most one of the two is
/// square-integrable.
#[derive(Clone, Debug)]
pub struct GroundStateProfile {
    pub grid: Vec<f64>,
    pub phi_b: Vec<f64>,
    pub chi: Vec<f64>,
    /// Trapezoid norms over the sample grid.
    pub phi_b_norm2: f64,
    pub chi_norm2: f64,
    /// Range-doubling verdicts: false means the norm kept growing by more
    /// than 10x when the window doubled.
    pub phi_b_square_integrable: bool,
    pub chi_square_integrable: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProfileError {
    TooFewSamples,
    NonFiniteSample { x: f64 },
    /// Both profiles classified square-integrable, which the pointwise
    /// product phi chi = 1 rules out; indicates a quadrature breakdown.
    InconsistentFlags,
}

impl core::fmt::Display for ProfileError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ProfileError::TooFewSamples => write!(f, "need at least 2 samples"),
            ProfileError::NonFiniteSample { x } => {
                write!(f, "superpotential is not finite at x = {x}")
            }
            ProfileError::InconsistentFlags => {
                write!(f, "both profiles classified square-integrable")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ProfileError {}

/// Builds both ground-state profiles on `samples` points spanning
/// [x_min, x_max]. `scale` is the constant multiplying the integral in the
/// exponent (sqrt(2m)/hbar of the underlying model; sqrt(2) in natural
/// units). Square-integrability is decided by a range-doubling proxy: the
/// trapezoid norm over [-R, R] is tracked for R doubling four times from
/// max(|x_min|, |x_max|), and a profile is flagged divergent when the last
/// doubling grew its norm by more than 10x.
pub fn ground_state_profiles<F: Fn(f64) -> f64>(
    w: F,
    x_min: f64,
    x_max: f64,
    samples: usize,
    scale: f64,
) -> Result<GroundStateProfile, ProfileError> {
    if samples < 2 || !(x_min < x_max) {
        return Err(ProfileError::TooFewSamples);
    }
    let grid: Vec<f64> = (0..samples)
        .map(|i| x_min + (x_max - x_min) * (i as f64) / ((samples - 1) as f64))
        .collect();
    for &x in &grid {
        if !w(x).is_finite() {
            return Err(ProfileError::NonFiniteSample { x });
        }
    }

    let s = quad::integrals_from_origin(&w, 0.0, &grid, 1e-12);
    let phi_b: Vec<f64> = s.iter().map(|v| (-scale * v).exp()).collect();
    let chi: Vec<f64> = s.iter().map(|v| (scale * v).exp()).collect();
    let h = (x_max - x_min) / ((samples - 1) as f64);
    let phi2: Vec<f64> = phi_b.iter().map(|v| v * v).collect();
    let chi2: Vec<f64> = chi.iter().map(|v| v * v).collect();
    let phi_b_norm2 = quad::trapezoid_samples(&phi2, h);
    let chi_norm2 = quad::trapezoid_samples(&chi2, h);

    // Classification pass: one cumulative integral over the widest window,
    // nested so every doubled window reuses the same nodes.
    let r0 = x_min.abs().max(x_max.abs()).max(1e-6);
    let spans = 16usize; // widest window is [-16 r0, 16 r0]
    let half_nodes = 4096usize; // nodes per side; 256 per unit window
    let step = spans as f64 * r0 / half_nodes as f64;
    let nodes: Vec<f64> = (0..=2 * half_nodes)
        .map(|i| (i as f64 - half_nodes as f64) * step)
        .collect();
    for &x in &nodes {
        if !w(x).is_finite() {
            return Err(ProfileError::NonFiniteSample { x });
        }
    }
    let mut cum = Vec::with_capacity(nodes.len());
    // Cumulative Simpson from the center outward keeps each interval local.
    let center = half_nodes;
    cum.resize(nodes.len(), 0.0f64);
    for i in center..nodes.len() - 1 {
        cum[i + 1] = cum[i] + quad::simpson_fixed(&w, nodes[i], nodes[i + 1], 4);
    }
    for i in (0..center).rev() {
        cum[i] = cum[i + 1] - quad::simpson_fixed(&w, nodes[i], nodes[i + 1], 4);
    }

    let norm_in = |sign: f64, half_span_nodes: usize| -> f64 {
        let lo = center - half_span_nodes;
        let hi = center + half_span_nodes;
        let vals: Vec<f64> = cum[lo..=hi]
            .iter()
            .map(|v| (2.0 * sign * scale * v).exp())
            .collect();
        quad::trapezoid_samples(&vals, step)
    };
    let classify = |sign: f64| -> bool {
        let mut norms = Vec::new();
        for j in 0..5 {
            // half spans r0, 2 r0, 4 r0, 8 r0, 16 r0
            norms.push(norm_in(sign, (half_nodes / 16) << j));
        }
        let last = norms[4];
        let prev = norms[3];
        last.is_finite() && prev.is_finite() && last <= 10.0 * prev
    };
    let phi_b_square_integrable = classify(-1.0);
    let chi_square_integrable = classify(1.0);
    if phi_b_square_integrable && chi_square_integrable {
        return Err(ProfileError::InconsistentFlags);
    }

    Ok(GroundStateProfile {
        grid,
        phi_b,
        chi,
        phi_b_norm2,
        chi_norm2,
        phi_b_square_integrable,
        chi_square_integrable,
    })
}
