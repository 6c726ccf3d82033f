//! Exact normal-ordered differential operators on the plane.
//!
//! Elements are finite sums `f_ab(x,y) Dx^a Dy^b` with Laurent polynomial
//! coefficients over the Gaussian rationals, so every product, commutator
//! and formal adjoint below is computed without rounding. The module also
//! builds the first-order factorization pair (e, k) attached to a planar
//! vector superpotential and checks its algebra symbolically.

use crate::scalar::{gauss_display, gauss_i, gauss_one, gauss_rat, rat_to_f64, Gaussian, Rat};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn binom_rat(n: u32, k: u32) -> Rat {
    // Multiplicative form; every intermediate acc * (n-k+i+1) / (i+1) is integral.
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

/// Laurent polynomial in two real variables with Gaussian rational
/// coefficients. Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Gaussian>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Gaussian) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(gauss_one())
    }

    /// c * x^i * y^j; negative exponents are allowed.
    pub fn monomial(i: i64, j: i64, c: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn from_monomials(list: &[(i64, i64, Gaussian)]) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in list {
            out.insert((*i, *j), c.clone());
        }
        out
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, gauss_one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, gauss_one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Gaussian)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (i64, i64), c: Gaussian) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        Self { terms }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (*k, v.clone() * c.clone()))
            .collect();
        Self { terms }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&Gaussian::new(r.clone(), Rat::zero()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                out.insert((i1 + i2, j1 + j2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Coefficient-wise complex conjugation; x and y are real variables.
    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, c.conj())).collect();
        Self { terms }
    }

    pub fn deriv_x(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *i != 0 {
                out.insert((i - 1, *j), c.clone() * gauss_rat(*i, 1));
            }
        }
        out
    }

    pub fn deriv_y(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *j != 0 {
                out.insert((*i, j - 1), c.clone() * gauss_rat(*j, 1));
            }
        }
        out
    }

    fn deriv_x_n(&self, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.deriv_x();
        }
        out
    }

    fn deriv_y_n(&self, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.deriv_y();
        }
        out
    }

    /// Sum of |Re c| + |Im c| over all coefficients, as f64. Zero iff zero.
    pub fn deviation(&self) -> f64 {
        self.terms
            .values()
            .map(|c| {
                let re = rat_to_f64(&c.re);
                let im = rat_to_f64(&c.im);
                re.abs() + im.abs()
            })
            .sum()
    }
}

impl core::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = gauss_display(c);
            let wrapped = if cs.contains('+') || cs[1..].contains('-') {
                format!("({cs})")
            } else {
                cs
            };
            write!(f, "{wrapped}")?;
            if *i != 0 {
                write!(f, " x^{i}")?;
            }
            if *j != 0 {
                write!(f, " y^{j}")?;
            }
        }
        Ok(())
    }
}

/// Normal-ordered differential operator: finite sum of `f(x,y) Dx^a Dy^b`
/// with `f` a [`LaurentPoly`]. Invariant: no stored coefficient is the zero
/// polynomial, so structural equality is operator equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeylElement {
    terms: BTreeMap<(u32, u32), LaurentPoly>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::mult(LaurentPoly::one())
    }

    /// Multiplication operator by `f`.
    pub fn mult(f: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert((0, 0), f);
        }
        Self { terms }
    }

    pub fn deriv_x() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), LaurentPoly::one());
        Self { terms }
    }

    pub fn deriv_y() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 1), LaurentPoly::one());
        Self { terms }
    }

    /// Momentum -i Dx.
    pub fn p_x() -> Self {
        Self::deriv_x().scale(&-gauss_i())
    }

    /// Momentum -i Dy.
    pub fn p_y() -> Self {
        Self::deriv_y().scale(&-gauss_i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentPoly)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (u32, u32), f: LaurentPoly) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot = slot.add(&f);
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, f);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, f) in &rhs.terms {
            out.insert(*k, f.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, f)| (*k, f.neg())).collect();
        Self { terms }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, f)| (*k, f.scale(c)))
            .collect();
        Self { terms }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&Gaussian::new(r.clone(), Rat::zero()))
    }

    /// Normal-ordered product. Commuting a derivative past a coefficient
    /// expands by the Leibniz rule:
    /// (f Dx^a Dy^b)(g Dx^c Dy^d)
    ///   = f sum_{j<=a, k<=b} C(a,j) C(b,k) (Dx^{a-j} Dy^{b-k} g) Dx^{j+c} Dy^{k+d}.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), f) in &self.terms {
            for ((c, d), g) in &rhs.terms {
                for j in 0..=*a {
                    for k in 0..=*b {
                        let dg = g.deriv_x_n(a - j).deriv_y_n(b - k);
                        if dg.is_zero() {
                            continue;
                        }
                        let w = binom_rat(*a, j) * binom_rat(*b, k);
                        out.insert((j + c, k + d), f.mul(&dg).scale_rat(&w));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Formal adjoint for the plane's inner product:
    /// (f Dx^a Dy^b)^+ = (-1)^{a+b} Dx^a Dy^b conj(f), re-expanded into
    /// normal order by the Leibniz rule.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), f) in &self.terms {
            let sign = if (a + b) % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            let fbar = f.conj();
            for j in 0..=*a {
                for k in 0..=*b {
                    let df = fbar.deriv_x_n(a - j).deriv_y_n(b - k);
                    if df.is_zero() {
                        continue;
                    }
                    let w = binom_rat(*a, j) * binom_rat(*b, k) * sign.clone();
                    out.insert((j, k), df.scale_rat(&w));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Sum of coefficient deviations; zero iff the operator is zero.
    pub fn deviation(&self) -> f64 {
        self.terms.values().map(|f| f.deviation()).sum()
    }
}

impl core::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), poly) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{poly}]")?;
            if *a != 0 {
                write!(f, " Dx^{a}")?;
            }
            if *b != 0 {
                write!(f, " Dy^{b}")?;
            }
        }
        Ok(())
    }
}

/// A Weyl element together with an exact power of sqrt(2): the value is
/// `(sqrt 2)^sqrt2 * op` with `sqrt2` kept in {0, 1} by folding even powers
/// into the coefficients. Sums of mixed parity have no exact representation
/// in this ring, so `add`/`sub` require equal parity and panic otherwise;
/// a mismatch is a construction error, not a runtime condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledOp {
    pub op: WeylElement,
    pub sqrt2: u8,
}

impl ScaledOp {
    pub fn plain(op: WeylElement) -> Self {
        Self { op, sqrt2: 0 }
    }

    fn normalize(mut self) -> Self {
        if self.sqrt2 >= 2 {
            let folds = self.sqrt2 / 2;
            let mut factor = Rat::one();
            for _ in 0..folds {
                factor *= rat_int(2);
            }
            self.op = self.op.scale_rat(&factor);
            self.sqrt2 %= 2;
        }
        if self.op.is_zero() {
            self.sqrt2 = 0;
        }
        self
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            op: self.op.mul(&rhs.op),
            sqrt2: self.sqrt2 + rhs.sqrt2,
        }
        .normalize()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.op.is_zero() {
            return rhs.clone();
        }
        if rhs.op.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.sqrt2, rhs.sqrt2,
            "sum of mixed sqrt(2)-parity operators is not representable exactly"
        );
        Self {
            op: self.op.add(&rhs.op),
            sqrt2: self.sqrt2,
        }
        .normalize()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            op: self.op.neg(),
            sqrt2: self.sqrt2,
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        Self {
            op: self.op.scale(c),
            sqrt2: self.sqrt2,
        }
        .normalize()
    }

    /// Divide by sqrt(2) exactly: flips parity, halving coefficients when
    /// the parity wraps below zero ((sqrt 2)^-1 = (sqrt 2) * 1/2).
    pub fn div_sqrt2(&self) -> Self {
        if self.sqrt2 == 1 {
            Self {
                op: self.op.clone(),
                sqrt2: 0,
            }
        } else {
            Self {
                op: self.op.scale_rat(&rat(1, 2)),
                sqrt2: 1,
            }
        }
        .normalize()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            op: self.op.adjoint(),
            sqrt2: self.sqrt2,
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.op.is_zero()
    }

    /// Unwraps a parity-0 value; panics on parity 1 (the value would carry
    /// an irrational factor).
    pub fn expect_plain(&self) -> WeylElement {
        assert_eq!(self.sqrt2, 0, "operator carries a sqrt(2) factor");
        self.op.clone()
    }
}

use crate::scalar::{rat, rat_int};

/// Planar vector superpotential W = (w1(x,y), w2(x,y), 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    pub label: String,
    pub w1: LaurentPoly,
    pub w2: LaurentPoly,
}

impl Superpotential {
    pub fn new(label: &str, w1: LaurentPoly, w2: LaurentPoly) -> Self {
        Self {
            label: String::from(label),
            w1,
            w2,
        }
    }

    /// W = -1/2 (x, y): the curl-free gauge of a uniform field. The two
    /// ladder pairs coincide with the textbook Landau pair.
    pub fn isotropic() -> Self {
        Self::new(
            "isotropic",
            LaurentPoly::monomial(1, 0, gauss_rat(-1, 2)),
            LaurentPoly::monomial(0, 1, gauss_rat(-1, 2)),
        )
    }

    /// W = 1/2 (-y, x): divergence-free, so both partner Hamiltonians
    /// coincide and the pair (k, e) obeys [k, e] = 1.
    pub fn rotational() -> Self {
        Self::new(
            "rotational",
            LaurentPoly::monomial(0, 1, gauss_rat(-1, 2)),
            LaurentPoly::monomial(1, 0, gauss_rat(1, 2)),
        )
    }

    /// W = -((x+y)/2, (x+y)/2): same uniform field as `isotropic` in a
    /// sheared gauge; e and k become coupled ladder operators.
    pub fn diagonal() -> Self {
        let half = gauss_rat(-1, 2);
        let s = LaurentPoly::from_monomials(&[(1, 0, half.clone()), (0, 1, half)]);
        Self::new("diagonal", s.clone(), s)
    }

    /// W = (kappa/x, 0): singular on the y-axis; the partner Hamiltonians
    /// separate in (x, y) and lead to a solvable radial problem.
    pub fn inverse_x(kappa_num: i64, kappa_den: i64) -> Self {
        Self::new(
            "inverse-x",
            LaurentPoly::monomial(-1, 0, gauss_rat(kappa_num, kappa_den)),
            LaurentPoly::zero(),
        )
    }

    /// W = (-x^2/2, 0): produces a quartic well plus a linear drift in the
    /// bosonic sector.
    pub fn quartic() -> Self {
        Self::new(
            "quartic",
            LaurentPoly::monomial(2, 0, gauss_rat(-1, 2)),
            LaurentPoly::zero(),
        )
    }

    pub fn builtin(label: &str) -> Option<Self> {
        match label {
            "isotropic" => Some(Self::isotropic()),
            "rotational" => Some(Self::rotational()),
            "diagonal" => Some(Self::diagonal()),
            "inverse-x" => Some(Self::inverse_x(-1, 1)),
            "quartic" => Some(Self::quartic()),
            _ => None,
        }
    }

    pub const BUILTIN_LABELS: [&'static str; 5] =
        ["isotropic", "rotational", "diagonal", "inverse-x", "quartic"];

    /// div W = dx w1 + dy w2.
    pub fn div(&self) -> LaurentPoly {
        self.w1.deriv_x().add(&self.w2.deriv_y())
    }

    /// curl W (z component) = dx w2 - dy w1.
    pub fn curl(&self) -> LaurentPoly {
        self.w2.deriv_x().sub(&self.w1.deriv_y())
    }

    /// dx w1 - dy w2; the obstruction to several shortened commutator
    /// formulas.
    pub fn asym(&self) -> LaurentPoly {
        self.w1.deriv_x().sub(&self.w2.deriv_y())
    }

    /// dx w2 + dy w1.
    pub fn cross_sum(&self) -> LaurentPoly {
        self.w2.deriv_x().add(&self.w1.deriv_y())
    }

    /// Magnetic field carried by the gauge choice A = (w2, -w1):
    /// B_z = -div W. The partner gap is h_b - h_f = div W = -B_z.
    pub fn magnetic_field(&self) -> LaurentPoly {
        self.div().neg()
    }
}

/// The first-order operators attached to a superpotential.
///
/// q' = p_y - w1, p' = p_x + w2, p = p_y + w1, q = p_x - w2, and the two
/// ladder pairs e = -(q' + i p')/sqrt(2), k = -(q + i p)/sqrt(2) with their
/// formal adjoints.
#[derive(Clone, Debug)]
pub struct VectorOps {
    pub q_prime: WeylElement,
    pub p_prime: WeylElement,
    pub q: WeylElement,
    pub p: WeylElement,
    pub e: ScaledOp,
    pub e_dag: ScaledOp,
    pub k: ScaledOp,
    pub k_dag: ScaledOp,
}

pub fn build_operators(w: &Superpotential) -> VectorOps {
    let px = WeylElement::p_x();
    let py = WeylElement::p_y();
    let m1 = WeylElement::mult(w.w1.clone());
    let m2 = WeylElement::mult(w.w2.clone());
    let p_prime = px.add(&m2);
    let q_prime = py.sub(&m1);
    let p = py.add(&m1);
    let q = px.sub(&m2);
    let i = gauss_i();
    let e = ScaledOp::plain(q_prime.add(&p_prime.scale(&i)).neg()).div_sqrt2();
    let e_dag = ScaledOp::plain(q_prime.sub(&p_prime.scale(&i)).neg()).div_sqrt2();
    let k = ScaledOp::plain(q.add(&p.scale(&i)).neg()).div_sqrt2();
    let k_dag = ScaledOp::plain(q.sub(&p.scale(&i)).neg()).div_sqrt2();
    VectorOps {
        q_prime,
        p_prime,
        q,
        p,
        e,
        e_dag,
        k,
        k_dag,
    }
}

impl VectorOps {
    /// h_b = e+ e.
    pub fn h_b(&self) -> WeylElement {
        self.e_dag.mul(&self.e).expect_plain()
    }

    /// h_f = e e+.
    pub fn h_f(&self) -> WeylElement {
        self.e.mul(&self.e_dag).expect_plain()
    }

    /// g_b = k+ k, the bosonic Hamiltonian of the second pair.
    pub fn g_b(&self) -> WeylElement {
        self.k_dag.mul(&self.k).expect_plain()
    }

    /// g_f = k k+.
    pub fn g_f(&self) -> WeylElement {
        self.k.mul(&self.k_dag).expect_plain()
    }
}

/// Outcome of one symbolic identity check. `exact` means the two sides
/// agree coefficient by coefficient; `deviation` is a diagnostic size of
/// the difference and `residual_terms` counts its monomials (both 0 when
/// exact).
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub exact: bool,
    pub deviation: f64,
    pub residual_terms: usize,
}

impl RelationCheck {
    fn of(name: &str, diff: &WeylElement) -> Self {
        Self {
            name: String::from(name),
            exact: diff.is_zero(),
            deviation: diff.deviation(),
            residual_terms: diff.terms().map(|(_, f)| f.terms().count()).sum(),
        }
    }
}

fn imag_mult(f: &LaurentPoly) -> WeylElement {
    WeylElement::mult(f.scale(&gauss_i()))
}

/// Checks the full commutator table and both partner-Hamiltonian
/// expansions for a superpotential. Every identity here is the complete
/// form valid for arbitrary W; all pass exactly for any input.
pub fn verify_relations(w: &Superpotential) -> Vec<RelationCheck> {
    let ops = build_operators(w);
    let div = w.div();
    let curl = w.curl();
    let asym = w.asym();
    let cross = w.cross_sum();
    let half = rat(1, 2);

    let mut out = Vec::new();

    // [q', p'] = [q, p] = -i div W.
    let rhs_qp = imag_mult(&div).neg();
    out.push(RelationCheck::of(
        "[q', p'] = -i div W",
        &ops.q_prime.commutator(&ops.p_prime).sub(&rhs_qp),
    ));
    out.push(RelationCheck::of(
        "[q, p] = -i div W",
        &ops.q.commutator(&ops.p).sub(&rhs_qp),
    ));

    // [p', p] = [q', q] = -i (dx w1 - dy w2).
    let rhs_asym = imag_mult(&asym).neg();
    out.push(RelationCheck::of(
        "[p', p] = -i (dx W1 - dy W2)",
        &ops.p_prime.commutator(&ops.p).sub(&rhs_asym),
    ));
    out.push(RelationCheck::of(
        "[q', q] = -i (dx W1 - dy W2)",
        &ops.q_prime.commutator(&ops.q).sub(&rhs_asym),
    ));

    // [q', p] = -2i dy w1 and [p', q] = 2i dx w2.
    out.push(RelationCheck::of(
        "[q', p] = -2i dy W1",
        &ops
            .q_prime
            .commutator(&ops.p)
            .sub(&imag_mult(&w.w1.deriv_y()).scale_rat(&rat_int(-2))),
    ));
    out.push(RelationCheck::of(
        "[p', q] = 2i dx W2",
        &ops
            .p_prime
            .commutator(&ops.q)
            .sub(&imag_mult(&w.w2.deriv_x()).scale_rat(&rat_int(2))),
    ));

    // Adjoint pairs really are adjoints.
    out.push(RelationCheck::of(
        "e+ = adjoint(e)",
        &ops.e.adjoint().op.sub(&ops.e_dag.op),
    ));
    out.push(RelationCheck::of(
        "k+ = adjoint(k)",
        &ops.k.adjoint().op.sub(&ops.k_dag.op),
    ));

    // Ladder commutators, complete forms.
    let neg_div = WeylElement::mult(div.neg());
    out.push(RelationCheck::of(
        "[e, e+] = -div W",
        &ops.e.commutator(&ops.e_dag).expect_plain().sub(&neg_div),
    ));
    out.push(RelationCheck::of(
        "[k, k+] = -div W",
        &ops.k.commutator(&ops.k_dag).expect_plain().sub(&neg_div),
    ));
    out.push(RelationCheck::of(
        "[k, e] = curl W",
        &ops
            .k
            .commutator(&ops.e)
            .expect_plain()
            .sub(&WeylElement::mult(curl.clone())),
    ));
    let ke_dag_full = WeylElement::mult(cross.neg()).add(&imag_mult(&asym));
    out.push(RelationCheck::of(
        "[k, e+] = -(dx W2 + dy W1) + i (dx W1 - dy W2)",
        &ops.k.commutator(&ops.e_dag).expect_plain().sub(&ke_dag_full),
    ));

    // Partner Hamiltonians against their quadratic expansions.
    let quad = ops
        .p_prime
        .pow(2)
        .add(&ops.q_prime.pow(2))
        .scale_rat(&half);
    let half_div = WeylElement::mult(div.scale_rat(&half));
    out.push(RelationCheck::of(
        "h_b = (p_x+W2)^2/2 + (p_y-W1)^2/2 + div W / 2",
        &ops.h_b().sub(&quad.add(&half_div)),
    ));
    out.push(RelationCheck::of(
        "h_f = (p_x+W2)^2/2 + (p_y-W1)^2/2 - div W / 2",
        &ops.h_f().sub(&quad.sub(&half_div)),
    ));
    let divop = WeylElement::mult(div.clone());
    out.push(RelationCheck::of(
        "h_b - h_f = div W",
        &ops.h_b().sub(&ops.h_f()).sub(&divop),
    ));
    out.push(RelationCheck::of(
        "g_b - g_f = div W",
        &ops.g_b().sub(&ops.g_f()).sub(&divop),
    ));

    out
}

/// The shortened commutator formula `[k, e+] = -(dx W2 + dy W1)` that drops
/// the i(dx W1 - dy W2) term. It holds exactly iff dx W1 = dy W2; for the
/// inverse-x and quartic superpotentials it fails, which also defeats the
/// claim that the (e, k) pairs decouple whenever W = (W1(x), W2(y)).
pub fn shortened_cross_commutator(w: &Superpotential) -> RelationCheck {
    let ops = build_operators(w);
    let diff = ops
        .k
        .commutator(&ops.e_dag)
        .expect_plain()
        .sub(&WeylElement::mult(w.cross_sum().neg()));
    RelationCheck::of("[k, e+] = -(dx W2 + dy W1) (shortened)", &diff)
}

/// Identities specific to the divergence-free rotational superpotential,
/// where X+ = k e and X- = e k satisfy ladder relations with integer
/// spectrum and the mixed mode a = (k + e+)/sqrt(2) is canonical.
pub fn rotational_identities() -> Vec<RelationCheck> {
    let w = Superpotential::rotational();
    let ops = build_operators(&w);
    let one = WeylElement::identity();
    let mut out = Vec::new();

    let x_plus = ops.k.mul(&ops.e).expect_plain();
    let x_minus = ops.e.mul(&ops.k).expect_plain();
    out.push(RelationCheck::of(
        "X+ - X- = 1",
        &x_plus.sub(&x_minus).sub(&one),
    ));
    out.push(RelationCheck::of(
        "h_b = h_f (div W = 0)",
        &ops.h_b().sub(&ops.h_f()),
    ));

    // e k^{n+1} = k^{n+1} e - (n+1) k^n and the mirrored form drive the
    // integer ladders on the kernels of e and k.
    for n in 0..=5u32 {
        let kn = kpow(&ops, n);
        let kn1 = kpow(&ops, n + 1);
        let lhs = ops.e.mul(&kn1);
        let rhs = kn1
            .mul(&ops.e)
            .sub(&kn.scale(&gauss_rat(n as i64 + 1, 1)));
        out.push(RelationCheck::of(
            &format!("e k^{} = k^{} e - {} k^{}", n + 1, n + 1, n + 1, n),
            &lhs.sub(&rhs).op,
        ));
        let en = epow(&ops, n);
        let en1 = epow(&ops, n + 1);
        let lhs2 = ops.k.mul(&en1);
        let rhs2 = en1
            .mul(&ops.k)
            .add(&en.scale(&gauss_rat(n as i64 + 1, 1)));
        out.push(RelationCheck::of(
            &format!("k e^{} = e^{} k + {} e^{}", n + 1, n + 1, n + 1, n),
            &lhs2.sub(&rhs2).op,
        ));
    }

    // X+ - 1/2 = X- + 1/2 = (i/2)[(p_x - i y/2)^2 + (p_y + i x/2)^2]:
    // a non-self-adjoint Hamiltonian for an imaginary uniform field.
    let px = WeylElement::p_x();
    let py = WeylElement::p_y();
    let gamma = px.sub(&WeylElement::mult(LaurentPoly::monomial(
        0,
        1,
        gauss_im(1, 2),
    )));
    let delta = py.add(&WeylElement::mult(LaurentPoly::monomial(
        1,
        0,
        gauss_im(1, 2),
    )));
    let rhs314 = gamma
        .pow(2)
        .add(&delta.pow(2))
        .scale(&gauss_im(1, 2));
    let half_one = one.scale_rat(&rat(1, 2));
    out.push(RelationCheck::of(
        "X+ - 1/2 = (i/2)[(p_x - i y/2)^2 + (p_y + i x/2)^2]",
        &x_plus.sub(&half_one).sub(&rhs314),
    ));
    out.push(RelationCheck::of(
        "X- + 1/2 = (i/2)[(p_x - i y/2)^2 + (p_y + i x/2)^2]",
        &x_minus.add(&half_one).sub(&rhs314),
    ));

    // a = (k + e+)/sqrt(2) is canonical and factorizes the reversed-field
    // Hamiltonian: a+ a = H_down - 1/2 (the printed +1/2 belongs to a a+,
    // since a+ a must kill the ground state of the nonnegative H_down - 1/2).
    let a = ops.k.add(&ops.e_dag).div_sqrt2();
    let a_dag = ops.k_dag.add(&ops.e).div_sqrt2();
    out.push(RelationCheck::of(
        "a+ = adjoint(a)",
        &a.adjoint().op.sub(&a_dag.op),
    ));
    out.push(RelationCheck::of(
        "[a, a+] = 1",
        &a.commutator(&a_dag).expect_plain().sub(&one),
    ));
    let h_down = px
        .add(&WeylElement::mult(LaurentPoly::monomial(0, 1, gauss_rat(1, 2))))
        .pow(2)
        .add(
            &py.sub(&WeylElement::mult(LaurentPoly::monomial(1, 0, gauss_rat(1, 2))))
                .pow(2),
        )
        .scale_rat(&rat(1, 2));
    out.push(RelationCheck::of(
        "a+ a = H_down - 1/2",
        &a_dag.mul(&a).expect_plain().sub(&h_down.sub(&half_one)),
    ));
    out.push(RelationCheck::of(
        "a a+ = H_down + 1/2",
        &a.mul(&a_dag).expect_plain().sub(&h_down.add(&half_one)),
    ));

    out
}

fn kpow(ops: &VectorOps, n: u32) -> ScaledOp {
    let mut out = ScaledOp::plain(WeylElement::identity());
    for _ in 0..n {
        out = out.mul(&ops.k);
    }
    out
}

fn epow(ops: &VectorOps, n: u32) -> ScaledOp {
    let mut out = ScaledOp::plain(WeylElement::identity());
    for _ in 0..n {
        out = out.mul(&ops.e);
    }
    out
}

use crate::scalar::gauss_im;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x_op() -> WeylElement {
        WeylElement::mult(LaurentPoly::x())
    }

    fn y_op() -> WeylElement {
        WeylElement::mult(LaurentPoly::y())
    }

    #[test]
    fn derivative_commutators() {
        let dx = WeylElement::deriv_x();
        let id = WeylElement::identity();
        // [Dx, x] = 1.
        assert_eq!(dx.commutator(&x_op()), id);
        // [Dx, y] = 0.
        assert!(dx.commutator(&y_op()).is_zero());
        // [p_x, x] = -i, [p_y, y] = -i.
        let neg_i = WeylElement::identity().scale(&-gauss_i());
        assert_eq!(WeylElement::p_x().commutator(&x_op()), neg_i);
        assert_eq!(WeylElement::p_y().commutator(&y_op()), neg_i);
        // [Dx, 1/x] = -1/x^2: Laurent coefficients differentiate exactly.
        let inv = WeylElement::mult(LaurentPoly::monomial(-1, 0, gauss_one()));
        let expect = WeylElement::mult(LaurentPoly::monomial(-2, 0, gauss_rat(-1, 1)));
        assert_eq!(dx.commutator(&inv), expect);
    }

    #[test]
    fn normal_ordering_of_euler_operator_square() {
        // (x Dx)(x Dx) = x Dx + x^2 Dx^2.
        let xdx = x_op().mul(&WeylElement::deriv_x());
        let sq = xdx.mul(&xdx);
        let expect = xdx.add(&WeylElement::mult(LaurentPoly::monomial(2, 0, gauss_one())).mul(
            &WeylElement::deriv_x().pow(2),
        ));
        assert_eq!(sq, expect);
    }

    #[test]
    fn adjoints_of_basic_operators() {
        let dx = WeylElement::deriv_x();
        assert_eq!(dx.adjoint(), dx.neg());
        // (x Dx)+ = -(1 + x Dx).
        let xdx = x_op().mul(&dx);
        assert_eq!(
            xdx.adjoint(),
            WeylElement::identity().add(&xdx).neg()
        );
        // Momenta are formally self-adjoint; i Dx likewise maps to itself.
        assert_eq!(WeylElement::p_x().adjoint(), WeylElement::p_x());
        assert_eq!(WeylElement::p_y().adjoint(), WeylElement::p_y());
    }

    #[test]
    fn scaled_op_parity_arithmetic() {
        let dx = ScaledOp::plain(WeylElement::deriv_x());
        let r = dx.div_sqrt2();
        assert_eq!(r.sqrt2, 1);
        // (Dx/sqrt2)(Dx/sqrt2) = Dx^2/2: parity folds back to zero.
        let sq = r.mul(&r);
        assert_eq!(sq.sqrt2, 0);
        assert_eq!(
            sq.op,
            WeylElement::deriv_x().pow(2).scale_rat(&rat(1, 2))
        );
        // Dividing twice by sqrt(2) halves the operator.
        let half = r.div_sqrt2();
        assert_eq!(half.sqrt2, 0);
        assert_eq!(half.op, WeylElement::deriv_x().scale_rat(&rat(1, 2)));
    }

    #[test]
    #[should_panic(expected = "mixed sqrt(2)-parity")]
    fn scaled_op_mixed_parity_sum_panics() {
        let a = ScaledOp::plain(WeylElement::deriv_x());
        let b = a.div_sqrt2();
        let _ = a.add(&b);
    }

    #[test]
    fn full_relation_table_passes_for_all_builtins() {
        for label in Superpotential::BUILTIN_LABELS {
            let w = Superpotential::builtin(label).unwrap();
            for check in verify_relations(&w) {
                assert!(check.exact, "{label}: {} failed", check.name);
            }
        }
    }

    #[test]
    fn ladder_commutators_take_expected_constant_values() {
        // isotropic: [e, e+] = 1, [k, e] = 0.
        let ops = build_operators(&Superpotential::isotropic());
        let id = WeylElement::identity();
        assert_eq!(ops.e.commutator(&ops.e_dag).expect_plain(), id);
        assert!(ops.k.commutator(&ops.e).is_zero());
        assert!(ops.k.commutator(&ops.e_dag).is_zero());

        // rotational: [e, e+] = 0, [k, e] = 1, [k, e+] = 0.
        let ops = build_operators(&Superpotential::rotational());
        assert!(ops.e.commutator(&ops.e_dag).is_zero());
        assert_eq!(ops.k.commutator(&ops.e).expect_plain(), id);
        assert!(ops.k.commutator(&ops.e_dag).is_zero());

        // diagonal: [e, e+] = [k, k+] = [k, e+] = 1, [k, e] = 0.
        let ops = build_operators(&Superpotential::diagonal());
        assert_eq!(ops.e.commutator(&ops.e_dag).expect_plain(), id);
        assert_eq!(ops.k.commutator(&ops.k_dag).expect_plain(), id);
        assert_eq!(ops.k.commutator(&ops.e_dag).expect_plain(), id);
        assert!(ops.k.commutator(&ops.e).is_zero());
    }

    #[test]
    fn shortened_cross_commutator_fails_exactly_where_expected() {
        // Holds iff dx W1 = dy W2: true for the three uniform-field gauges,
        // false for inverse-x ([k,e+] = i/x^2) and quartic ([k,e+] = -ix).
        for label in ["isotropic", "rotational", "diagonal"] {
            let w = Superpotential::builtin(label).unwrap();
            assert!(shortened_cross_commutator(&w).exact, "{label}");
        }
        let w = Superpotential::inverse_x(-1, 1);
        assert!(!shortened_cross_commutator(&w).exact);
        let ops = build_operators(&w);
        let expect = WeylElement::mult(LaurentPoly::monomial(-2, 0, gauss_i()));
        assert_eq!(ops.k.commutator(&ops.e_dag).expect_plain(), expect);

        let w = Superpotential::quartic();
        assert!(!shortened_cross_commutator(&w).exact);
        let ops = build_operators(&w);
        let expect = WeylElement::mult(LaurentPoly::monomial(1, 0, -gauss_i()));
        assert_eq!(ops.k.commutator(&ops.e_dag).expect_plain(), expect);
    }

    #[test]
    fn isotropic_bosonic_hamiltonian_is_shifted_landau_form() {
        // h_b = (p_x - y/2)^2/2 + (p_y + x/2)^2/2 - 1/2: spectrum starts at 0.
        let ops = build_operators(&Superpotential::isotropic());
        let px = WeylElement::p_x();
        let py = WeylElement::p_y();
        let a = px.sub(&WeylElement::mult(LaurentPoly::monomial(0, 1, gauss_rat(1, 2))));
        let b = py.add(&WeylElement::mult(LaurentPoly::monomial(1, 0, gauss_rat(1, 2))));
        let h0 = a.pow(2).add(&b.pow(2)).scale_rat(&rat(1, 2));
        let expect = h0.sub(&WeylElement::identity().scale_rat(&rat(1, 2)));
        assert_eq!(ops.h_b(), expect);
        assert_eq!(ops.h_f(), h0.add(&WeylElement::identity().scale_rat(&rat(1, 2))));
    }

    #[test]
    fn quartic_bosonic_hamiltonian_expands_to_quartic_well() {
        // h_b = (p_x^2 + p_y^2 + x^2 p_y + x^4/4 - x)/2.
        let ops = build_operators(&Superpotential::quartic());
        let px2 = WeylElement::p_x().pow(2);
        let py2 = WeylElement::p_y().pow(2);
        let x2py = WeylElement::mult(LaurentPoly::monomial(2, 0, gauss_one()))
            .mul(&WeylElement::p_y());
        let x4 = WeylElement::mult(LaurentPoly::monomial(4, 0, gauss_rat(1, 4)));
        let xop = WeylElement::mult(LaurentPoly::monomial(1, 0, gauss_one()));
        let expect = px2
            .add(&py2)
            .add(&x2py)
            .add(&x4)
            .sub(&xop)
            .scale_rat(&rat(1, 2));
        assert_eq!(ops.h_b(), expect);
    }

    #[test]
    fn inverse_x_bosonic_hamiltonian_has_separated_form() {
        // With W = (k/x, 0), k = -1:
        // h_b = -Dx^2/2 + k(k-1)/(2x^2) + (ik/x) Dy - Dy^2/2.
        let kappa = -1i64;
        let ops = build_operators(&Superpotential::inverse_x(kappa, 1));
        let expect = WeylElement::deriv_x()
            .pow(2)
            .scale_rat(&rat(-1, 2))
            .add(&WeylElement::deriv_y().pow(2).scale_rat(&rat(-1, 2)))
            .add(&WeylElement::mult(LaurentPoly::monomial(
                -2,
                0,
                gauss_rat(kappa * (kappa - 1), 2),
            )))
            .add(
                &WeylElement::mult(LaurentPoly::monomial(-1, 0, gauss_im(kappa, 1)))
                    .mul(&WeylElement::deriv_y()),
            );
        assert_eq!(ops.h_b(), expect);
    }

    #[test]
    fn rotational_identities_hold_exactly() {
        for check in rotational_identities() {
            assert!(check.exact, "{} failed (dev {})", check.name, check.deviation);
        }
    }

    #[test]
    fn display_is_reasonable() {
        let ops = build_operators(&Superpotential::isotropic());
        let s = format!("{}", ops.h_b());
        assert!(s.contains("Dx^2"));
        assert!(s.contains("Dy^2"));
    }

    // Random small operators for the algebra laws.
    fn arb_gauss() -> impl Strategy<Value = Gaussian> {
        ((-3i64..=3, 1i64..=3), (-3i64..=3, 1i64..=3))
            .prop_map(|((a, b), (c, d))| Gaussian::new(rat(a, b), rat(c, d)))
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-2i64..=2, -2i64..=2), arb_gauss()), 0..3).prop_map(|v| {
            let mut p = LaurentPoly::zero();
            for ((i, j), c) in v {
                p = p.add(&LaurentPoly::monomial(i, j, c));
            }
            p
        })
    }

    fn arb_weyl() -> impl Strategy<Value = WeylElement> {
        proptest::collection::vec(((0u32..=2, 0u32..=2), arb_poly()), 0..3).prop_map(|v| {
            let mut w = WeylElement::zero();
            for ((a, b), f) in v {
                w = w.add(&WeylElement::mult(f).mul(
                    &WeylElement::deriv_x().pow(a).mul(&WeylElement::deriv_y().pow(b)),
                ));
            }
            w
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn product_is_associative(a in arb_weyl(), b in arb_weyl(), c in arb_weyl()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn adjoint_reverses_products(a in arb_weyl(), b in arb_weyl()) {
            prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
        }

        #[test]
        fn adjoint_is_involutive(a in arb_weyl()) {
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn jacobi_identity(a in arb_weyl(), b in arb_weyl(), c in arb_weyl()) {
            let s = a.commutator(&b).commutator(&c)
                .add(&b.commutator(&c).commutator(&a))
                .add(&c.commutator(&a).commutator(&b));
            prop_assert!(s.is_zero());
        }

        #[test]
        fn scalar_conjugates_through_adjoint(a in arb_weyl(), c in arb_gauss()) {
            prop_assert_eq!(a.scale(&c).adjoint(), a.adjoint().scale(&c.conj()));
        }
    }
}
