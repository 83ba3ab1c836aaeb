//! The Mestre obstruction conic of a genus-2 moduli point, and two
//! simplified models of it: one in Igusa–Clebsch coordinates and one in
//! the coordinates `A, A₁, B, B₁, B₂` of a real-multiplication family.
//!
//! Both simplifications are executed on formal variables, so the checks
//! against the reference matrices are polynomial identities. Numeric
//! inputs are handled by specialising the verified formal chain.

use crate::conic::{Conic, ConicError, Matrix3, TransformLog};
use crate::poly::{lcm, substitute, MultiPoly, PolyError, RationalFunction, VarList};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MestreError {
    #[error("I10 vanishes: the point is off the locus of smooth curves")]
    Degenerate,
    #[error("A1 vanishes")]
    A1Vanishes,
    #[error("invariants live in different rings")]
    VariableMismatch,
    #[error("chain does not reproduce the reference entry {entry}")]
    FixtureMismatch { entry: &'static str },
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub const IC_VARS: [&str; 4] = ["I2", "I4", "I6", "I10"];
pub const EK_VARS: [&str; 5] = ["A", "A1", "B", "B1", "B2"];

/// Igusa–Clebsch invariants `(I₂, I₄, I₆, I₁₀)`, as rational functions over
/// a common ring (or constants over the empty ring).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgusaClebsch {
    pub i2: RationalFunction,
    pub i4: RationalFunction,
    pub i6: RationalFunction,
    pub i10: RationalFunction,
}

impl IgusaClebsch {
    /// Weights used for weighted-homogeneous degree.
    pub const WEIGHTS: [u32; 4] = [2, 4, 6, 10];

    pub fn new(i2: RationalFunction, i4: RationalFunction, i6: RationalFunction, i10: RationalFunction) -> Result<Self, MestreError> {
        let v = i2.vars();
        if i4.vars() != v || i6.vars() != v || i10.vars() != v {
            return Err(MestreError::VariableMismatch);
        }
        Ok(IgusaClebsch { i2, i4, i6, i10 })
    }

    /// Each invariant a variable of `Z[I2, I4, I6, I10]`.
    pub fn formal() -> Self {
        let v = VarList::new(&IC_VARS);
        let x = |i| RationalFunction::from_poly(MultiPoly::var(&v, i));
        IgusaClebsch {
            i2: x(0),
            i4: x(1),
            i6: x(2),
            i10: x(3),
        }
    }

    /// Rational constants.
    pub fn constant(vals: [BigRational; 4]) -> Self {
        let v = VarList::new::<&str>(&[]);
        let c = |r: &BigRational| RationalFunction::from_ratio(&v, r.numer().clone(), r.denom().clone()).expect("nonzero denominator");
        IgusaClebsch {
            i2: c(&vals[0]),
            i4: c(&vals[1]),
            i6: c(&vals[2]),
            i10: c(&vals[3]),
        }
    }

    pub fn vars(&self) -> &VarList {
        self.i2.vars()
    }

    pub fn is_formal(&self) -> bool {
        *self == Self::formal()
    }

    fn assignment(&self) -> Vec<(&'static str, RationalFunction)> {
        vec![
            ("I2", self.i2.clone()),
            ("I4", self.i4.clone()),
            ("I6", self.i6.clone()),
            ("I10", self.i10.clone()),
        ]
    }
}

/// The real-multiplication coordinates `A, A₁, B, B₁, B₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EkQuantities {
    pub a: RationalFunction,
    pub a1: RationalFunction,
    pub b: RationalFunction,
    pub b1: RationalFunction,
    pub b2: RationalFunction,
}

impl EkQuantities {
    pub fn formal() -> Self {
        let v = VarList::new(&EK_VARS);
        let x = |i| RationalFunction::from_poly(MultiPoly::var(&v, i));
        EkQuantities {
            a: x(0),
            a1: x(1),
            b: x(2),
            b1: x(3),
            b2: x(4),
        }
    }

    pub fn constant(vals: [BigRational; 5]) -> Self {
        let v = VarList::new::<&str>(&[]);
        let c = |r: &BigRational| RationalFunction::from_ratio(&v, r.numer().clone(), r.denom().clone()).expect("nonzero denominator");
        EkQuantities {
            a: c(&vals[0]),
            a1: c(&vals[1]),
            b: c(&vals[2]),
            b1: c(&vals[3]),
            b2: c(&vals[4]),
        }
    }

    pub fn vars(&self) -> &VarList {
        self.a.vars()
    }

    pub fn is_formal(&self) -> bool {
        *self == Self::formal()
    }

    fn assignment(&self) -> Vec<(&'static str, RationalFunction)> {
        vec![
            ("A", self.a.clone()),
            ("A1", self.a1.clone()),
            ("B", self.b.clone()),
            ("B1", self.b1.clone()),
            ("B2", self.b2.clone()),
        ]
    }
}

/// Numerators of the upper-triangular Gram entries, in the order
/// `11, 12, 13, 22, 23, 33`, with the exponents of 2, 3, 5 in their
/// denominators.
const GRAM_ENTRIES: [(&str, [u32; 3]); 6] = [
    ("-3*I2^3 - 140*I2*I4 + 800*I6", [6, 4, 6]),
    ("9*I2^4 + 560*I2^2*I4 + 1600*I4^2 - 3000*I2*I6", [7, 7, 8]),
    (
        "-9*I2^5 - 700*I2^3*I4 + 12400*I2*I4^2 + 3600*I2^2*I6 - 48000*I4*I6 - 10800000*I10",
        [8, 9, 10],
    ),
    (
        "-9*I2^5 - 700*I2^3*I4 + 12400*I2*I4^2 + 3600*I2^2*I6 - 48000*I4*I6 - 10800000*I10",
        [8, 9, 10],
    ),
    (
        "3*I2^6 + 280*I2^4*I4 + 6000*I2^2*I4^2 - 1400*I2^3*I6 + 8000*I4^3 - 52000*I2*I4*I6 + 120000*I6^2",
        [9, 10, 12],
    ),
    (
        "-9*I2^7 - 980*I2^5*I4 - 12800*I2^3*I4^2 + 4800*I2^4*I6 + 154000*I2*I4^3 + 162000*I2^2*I4*I6 \
         - 480000*I4^2*I6 - 450000*I2*I6^2 - 8100000*I2^2*I10 - 162000000*I4*I10",
        [10, 13, 14],
    ),
];

/// Reference Gram entries of the simplified model in `I₂, I₄, I₆, I₁₀`.
pub const IC_SIMPLIFIED: [&str; 6] = [
    "-3*I2^3 - 140*I2*I4 + 800*I6",
    "7*I2^2*I4 + 80*I4^2 - 30*I2*I6",
    "-230*I2*I4^2 - 9*I2^2*I6 + 1040*I4*I6 + 108000*I10",
    "117*I2*I4^2 - 360*I4*I6 - 81000*I10",
    "-50*I2^2*I4^2 + 20*I4^3 + 321*I2*I4*I6 - 540*I6^2 + 24300*I2*I10",
    "-200*I2*I4^3 + 920*I4^2*I6 - 27*I2*I6^2 + 102600*I4*I10",
];

/// Reference Gram entries after the first step of the real-multiplication
/// chain.
pub const RM_INTERMEDIATE: [&str; 6] = [
    "-225*A1^3*B + 285*A*A1^2*B1 + 324*B1^3",
    "20*A^2*A1^2 - 45*A1*B*B1 + 36*A*B1^2",
    "1170*A*A1^3*B - 1050*A^2*A1^2*B1 - 1125*A1^4*B2 + 486*A1*B*B1^2 - 1296*A*B1^3",
    "-60*A*A1*B + 4*A^2*B1 + 125*A1^2*B2",
    "-20*A^3*A1^2 - 405*A1^2*B^2 + 234*A*A1*B*B1 - 144*A^2*B1^2 + 1350*A1^2*B1*B2",
    "-4140*A^2*A1^3*B + 3840*A^3*A1^2*B1 + 4275*A*A1^4*B2 + 729*A1^2*B^2*B1 - 3888*A*A1*B*B1^2 + 5184*A^2*B1^3",
];

/// Reference Gram entries of the simplified model in `A, A₁, B, B₁, B₂`.
pub const RM_SIMPLIFIED: [&str; 6] = [
    "-225*A1^3*B + 285*A*A1^2*B1 + 324*B1^3",
    "20*A^2*A1^2 - 45*A1*B*B1 + 36*A*B1^2",
    "90*A*A1^2*B + 30*A^2*A1*B1 - 375*A1^3*B2 + 162*B*B1^2",
    "-60*A*A1*B + 4*A^2*B1 + 125*A1^2*B2",
    "20*A^3*A1 - 135*A1*B^2 + 18*A*B*B1 + 450*A1*B1*B2",
    "180*A^2*A1*B - 525*A*A1^2*B2 + 81*B^2*B1",
];

/// `Q₂(v₂)` for `v₂ = 4A e₁ + e₃`, in factored form `−27 A₁² · (…)`.
pub const RM_Q2_V2_COFACTOR: &str = "-60*A1*A^2*B + 175*A1^2*A*B2 - 27*B1*B^2";

const ENTRY_NAMES: [&str; 6] = ["(1,1)", "(1,2)", "(1,3)", "(2,2)", "(2,3)", "(3,3)"];

fn pow235(e: [u32; 3]) -> BigInt {
    BigInt::from(2).pow(e[0]) * BigInt::from(3).pow(e[1]) * BigInt::from(5).pow(e[2])
}

/// The common denominator `2¹⁰·3¹³·5¹⁴` of the Gram entries.
pub fn gram_denominator() -> BigInt {
    pow235([10, 13, 14])
}

/// Gram entries `A_{i,j}` as rational functions in `I₂, …, I₁₀`, order
/// `11, 12, 13, 22, 23, 33`.
pub fn gram_entries_formal() -> [RationalFunction; 6] {
    let v = VarList::new(&IC_VARS);
    std::array::from_fn(|k| {
        let (num, e) = GRAM_ENTRIES[k];
        let n = MultiPoly::parse(num, &v).expect("valid fixture");
        RationalFunction::new(n, MultiPoly::constant(&v, pow235(e))).unwrap()
    })
}

/// Conic with Gram entries `t` (order `11, 12, 13, 22, 23, 33`).
pub fn conic_from_gram(t: [MultiPoly; 6]) -> Result<Conic, ConicError> {
    let two = BigInt::from(2);
    let [t11, t12, t13, t22, t23, t33] = t;
    Conic::new([t11, t22, t33, t12.scale(&two), t13.scale(&two), t23.scale(&two)])
}

/// Gram entries of `l` (order `11, 12, 13, 22, 23, 33`), if integral.
pub fn gram_entries(l: &Conic) -> Option<[MultiPoly; 6]> {
    let two = BigInt::from(2);
    Some([
        l.a().clone(),
        l.d().div_integer(&two)?,
        l.e().div_integer(&two)?,
        l.b().clone(),
        l.f().div_integer(&two)?,
        l.c().clone(),
    ])
}

fn parse_entries(src: &[&str; 6], v: &VarList) -> [MultiPoly; 6] {
    std::array::from_fn(|k| MultiPoly::parse(src[k], v).expect("valid fixture"))
}

/// Reference conic of the `I`-coordinate model.
pub fn ic_simplified_reference() -> Conic {
    conic_from_gram(parse_entries(&IC_SIMPLIFIED, &VarList::new(&IC_VARS))).expect("nondegenerate")
}

/// Reference conic of the `A`-coordinate model.
pub fn rm_simplified_reference() -> Conic {
    conic_from_gram(parse_entries(&RM_SIMPLIFIED, &VarList::new(&EK_VARS))).expect("nondegenerate")
}

/// The Mestre conic, scaled to have polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MestreConic {
    /// `scale · L(P)`, integral.
    pub conic: Conic,
    /// The scalar that was applied to the Gram matrix `(A_{i,j})`.
    pub scale: RationalFunction,
}

/// Multiply rational coefficients by the lcm of their denominators.
fn clear_denominators(c: &[RationalFunction; 6]) -> (RationalFunction, [MultiPoly; 6]) {
    let v = c[0].vars().clone();
    let mut l = MultiPoly::one(&v);
    for x in c {
        l = lcm(&l, x.denom());
    }
    l = l.normalize_sign();
    let lr = RationalFunction::from_poly(l);
    let out = std::array::from_fn(|k| (&c[k] * &lr).to_polynomial().expect("lcm clears denominators"));
    (lr, out)
}

/// The obstruction conic with Gram entries `A_{i,j}`, multiplied through by
/// the lcm of their denominators (`2¹⁰·3¹³·5¹⁴` in the formal case).
pub fn mestre_conic(ic: &IgusaClebsch) -> Result<MestreConic, MestreError> {
    if ic.i10.is_zero() {
        return Err(MestreError::Degenerate);
    }
    let target = ic.vars().clone();
    let formal = gram_entries_formal();
    let asg = ic.assignment();
    let mut ent: Vec<RationalFunction> = Vec::with_capacity(6);
    for f in &formal {
        ent.push(f.substitute(&asg, &target)?);
    }
    let two = RationalFunction::from_integer(&target, 2);
    let coeffs: [RationalFunction; 6] = [
        ent[0].clone(),
        ent[3].clone(),
        ent[5].clone(),
        &ent[1] * &two,
        &ent[2] * &two,
        &ent[4] * &two,
    ];
    let (scale, c) = clear_denominators(&coeffs);
    let conic = Conic::new(c).map_err(|e| match e {
        ConicError::Singular => MestreError::Degenerate,
        e => e.into(),
    })?;
    Ok(MestreConic { conic, scale })
}

/// A verified simplification chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    /// Conic the log starts from.
    pub source: Conic,
    pub log: TransformLog,
    /// The simplified conic (the last result of the log).
    pub conic: Conic,
    /// Rational `λ` with `conic = λ · reference` (1 when the log ends on
    /// the reference exactly).
    pub scalar: BigRational,
}

fn m(v: &VarList, s: &str) -> MultiPoly {
    MultiPoly::parse(s, v).expect("valid literal")
}

fn cols(v: &VarList, c: [[&str; 3]; 3]) -> Matrix3 {
    Matrix3::from_columns(c.map(|col| col.map(|s| m(v, s))))
}

fn check_against(l: &Conic, reference: &Conic) -> Result<(), MestreError> {
    let got = gram_entries(l).ok_or(MestreError::FixtureMismatch { entry: "cross term parity" })?;
    let want = gram_entries(reference).unwrap();
    for k in 0..6 {
        if got[k] != want[k] {
            return Err(MestreError::FixtureMismatch { entry: ENTRY_NAMES[k] });
        }
    }
    Ok(())
}

/// `λ` with `l = λ · r`, if it exists.
fn proportionality(l: &Conic, r: &Conic) -> Option<BigRational> {
    let k = (0..6).find(|&k| !r.coeffs()[k].is_zero())?;
    let (a, b) = (&l.coeffs()[k], &r.coeffs()[k]);
    let (ma, ca) = a.leading_term()?;
    let (mb, cb) = b.leading_term()?;
    if ma != mb {
        return None;
    }
    let lam = BigRational::new(ca.clone(), cb.clone());
    for j in 0..6 {
        let lhs = l.coeffs()[j].scale(lam.denom());
        let rhs = r.coeffs()[j].scale(lam.numer());
        if lhs != rhs {
            return None;
        }
    }
    Some(lam)
}

fn rational_scalar(v: &VarList, r: &BigRational) -> RationalFunction {
    RationalFunction::from_ratio(v, r.numer().clone(), r.denom().clone()).expect("nonzero")
}

fn ic_chain_formal() -> Result<Chain, MestreError> {
    let v = VarList::new(&IC_VARS);
    let start = mestre_conic(&IgusaClebsch::formal())?.conic;
    let one = RationalFunction::one(&v);
    let mut log = TransformLog::new(&v);
    // basis {e₁, e₂, I₂e₂ + 450e₃}
    let u1 = cols(&v, [["1", "0", "0"], ["0", "1", "0"], ["0", "I2", "450"]]);
    let l1 = log.apply(&start, "basis", "e1, e2, I2*e2 + 450*e3", u1, one.clone())?;
    // basis {9000e₁, 1350(I₂e₁ + 450e₂), 607500e₃}
    let u2 = cols(&v, [["9000", "0", "0"], ["1350*I2", "607500", "0"], ["0", "0", "607500"]]);
    let l2 = log.apply(&l1, "basis", "9000*e1, 1350*(I2*e1 + 450*e2), 607500*e3", u2, one.clone())?;
    // basis {e₁, e₂, (7I₄e₁ + I₂e₂ − 2e₃)/10}, written as 10× the basis with s = 1/100
    let u3 = cols(&v, [["10", "0", "0"], ["0", "10", "0"], ["7*I4", "I2", "-2"]]);
    let l3 = log.apply(&l2, "basis", "e1, e2, (7*I4*e1 + I2*e2 - 2*e3)/10", u3, RationalFunction::from_ratio(&v, 1, 100)?)?;
    let reference = ic_simplified_reference();
    let lam = proportionality(&l3, &reference).ok_or(MestreError::FixtureMismatch { entry: "overall shape" })?;
    let fin = log.apply(&l3, "scale", format!("1/({lam})"), Matrix3::identity(&v), rational_scalar(&v, &lam.recip()))?;
    check_against(&fin, &reference)?;
    Ok(Chain {
        source: start,
        log,
        conic: fin,
        scalar: lam,
    })
}

/// The simplified model in Igusa–Clebsch coordinates. The formal chain is
/// always run and checked against the reference entries; for other inputs
/// it is then specialised.
pub fn ic_simplified(ic: &IgusaClebsch) -> Result<Chain, MestreError> {
    let chain = ic_chain_formal()?;
    if ic.is_formal() {
        return Ok(chain);
    }
    if ic.i10.is_zero() {
        return Err(MestreError::Degenerate);
    }
    let source = mestre_conic(ic)?.conic;
    specialise(&chain, &source, &ic.assignment(), ic.vars())
}

/// `(I₂, I₄, I₆, I₁₀) = (−24B₁/A₁, −12A, 96AB₁/A₁ − 36B, −4A₁B₂)`.
pub fn ic_from_ek(ek: &EkQuantities) -> Result<IgusaClebsch, MestreError> {
    if ek.a1.is_zero() {
        return Err(MestreError::A1Vanishes);
    }
    let v = ek.vars();
    let k = |n: i64| RationalFunction::from_integer(v, n);
    let b1_a1 = ek.b1.checked_div(&ek.a1)?;
    let i2 = &k(-24) * &b1_a1;
    let i4 = &k(-12) * &ek.a;
    let i6 = &(&k(96) * &(&ek.a * &b1_a1)) - &(&k(36) * &ek.b);
    let i10 = &(&k(-4) * &ek.a1) * &ek.b2;
    IgusaClebsch::new(i2, i4, i6, i10)
}

fn rm_chain_formal() -> Result<Chain, MestreError> {
    let v = VarList::new(&EK_VARS);
    let ek = EkQuantities::formal();
    let ic = ic_from_ek(&ek)?;
    // A₁³ · (IC model with the substitution applied) is integral
    let a1_3 = RationalFunction::from_poly(m(&v, "A1^3"));
    let ref_ic = ic_simplified_reference();
    let asg = ic.assignment();
    let mut g0 = Vec::with_capacity(6);
    for c in ref_ic.coeffs() {
        let r = &substitute(c, &asg, &v)? * &a1_3;
        g0.push(r.to_polynomial().ok_or(MestreError::FixtureMismatch { entry: "substitution" })?);
    }
    let source = Conic::new(g0.try_into().unwrap())?;
    let mut log = TransformLog::new(&v);
    // basis {e₁/8, e₂/(36A₁), e₃/24} written as 288A₁× the basis, and the
    // extra A₁³/2 folded into the scalar
    let u1 = Matrix3::diag(m(&v, "36*A1"), m(&v, "8"), m(&v, "12*A1"));
    let s1 = RationalFunction::new(MultiPoly::one(&v), m(&v, "2*288^2*A1^2"))?;
    let l1 = log.apply(&source, "basis", "e1/8, e2/(36*A1), e3/24", u1, s1)?;
    let mid = conic_from_gram(parse_entries(&RM_INTERMEDIATE, &v))?;
    check_against(&l1, &mid)?;
    // basis {e₁, e₂, (4A e₁ + e₃)/(3A₁)}
    let u2 = cols(&v, [["3*A1", "0", "0"], ["0", "3*A1", "0"], ["4*A", "0", "1"]]);
    let s2 = RationalFunction::new(MultiPoly::one(&v), m(&v, "9*A1^2"))?;
    let l2 = log.apply(&l1, "basis", "e1, e2, (4*A*e1 + e3)/(3*A1)", u2, s2)?;
    check_against(&l2, &rm_simplified_reference())?;
    Ok(Chain {
        source,
        log,
        conic: l2,
        scalar: BigRational::one(),
    })
}

/// The simplified model in the coordinates `A, A₁, B, B₁, B₂`. The log
/// starts from `A₁³` times the Igusa–Clebsch model with [`ic_from_ek`]
/// substituted.
pub fn rm_simplified(ek: &EkQuantities) -> Result<Chain, MestreError> {
    let chain = rm_chain_formal()?;
    if ek.is_formal() {
        return Ok(chain);
    }
    if ek.a1.is_zero() {
        return Err(MestreError::A1Vanishes);
    }
    let target = ek.vars();
    let asg = ek.assignment();
    let sub: Vec<RationalFunction> = chain
        .source
        .coeffs()
        .iter()
        .map(|c| substitute(c, &asg, target))
        .collect::<Result<_, _>>()?;
    let (_, c) = clear_denominators(&sub.try_into().unwrap());
    let source = Conic::new(c).map_err(|e| match e {
        ConicError::Singular => MestreError::Degenerate,
        e => e.into(),
    })?;
    specialise(&chain, &source, &asg, target)
}

/// Specialise a formal chain: substitute into every matrix, clear its
/// denominators, and pick each scalar so that the intermediate conics are
/// integral and primitive. The last scalar instead matches the substituted
/// final conic, so the result is the formal model evaluated (up to a
/// constant).
fn specialise(chain: &Chain, source: &Conic, asg: &[(&str, RationalFunction)], target: &VarList) -> Result<Chain, MestreError> {
    let mut log = TransformLog::new(target);
    let mut cur = source.clone();
    for st in chain.log.steps() {
        let mut ents: Vec<RationalFunction> = Vec::with_capacity(9);
        for e in st.u.entries() {
            ents.push(substitute(e, asg, target)?);
        }
        let mut den = MultiPoly::one(target);
        for e in &ents {
            den = lcm(&den, e.denom());
        }
        let dr = RationalFunction::from_poly(den);
        let polys: Vec<MultiPoly> = ents.iter().map(|e| (e * &dr).to_polynomial().unwrap()).collect();
        let u = Matrix3::from_rows([
            [polys[0].clone(), polys[1].clone(), polys[2].clone()],
            [polys[3].clone(), polys[4].clone(), polys[5].clone()],
            [polys[6].clone(), polys[7].clone(), polys[8].clone()],
        ]);
        let raw = cur.transform(&u, &RationalFunction::one(target))?;
        // the gcd of the coefficients, so the step result is primitive
        let mut g = MultiPoly::zero(target);
        for c in raw.coeffs() {
            g = crate::poly::gcd(&g, c);
        }
        let s = RationalFunction::new(MultiPoly::one(target), g.normalize_sign())?;
        cur = log.apply(&cur, &st.kind, st.note.clone(), u, s)?;
    }
    Ok(Chain {
        source: source.clone(),
        log,
        conic: cur,
        scalar: BigRational::one(),
    })
}

/// `Q(v)` for the form `l`.
pub fn evaluate(l: &Conic, v: &[MultiPoly; 3]) -> MultiPoly {
    l.evaluate(&v[0], &v[1], &v[2])
}

/// The three diagonal 2×2 minors of the Gram matrix (as `4×` the minor,
/// which keeps them integral): `4(T₁₁T₂₂ − T₁₂²)`, `4(T₁₁T₃₃ − T₁₃²)`,
/// `4(T₂₂T₃₃ − T₂₃²)`.
pub fn diagonal_minors4(l: &Conic) -> [MultiPoly; 3] {
    let four = BigInt::from(4);
    let [a, b, c, d, e, f] = l.coeffs();
    [
        &(a * b).scale(&four) - &(d * d),
        &(a * c).scale(&four) - &(e * e),
        &(b * c).scale(&four) - &(f * f),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gram_symmetry_and_specialisation() {
        let e = gram_entries_formal();
        assert_eq!(e[2], e[3]);
        let one = IgusaClebsch::constant([q(1), q(0), q(0), q(1)]);
        let mc = mestre_conic(&one).unwrap();
        // A₁₁ at (1,0,0,·) is −3 / (2⁶3⁴5⁶)
        let a11 = RationalFunction::from_poly(mc.conic.a().clone()).checked_div(&mc.scale).unwrap();
        assert_eq!(a11.eval_all(&[]).unwrap(), BigRational::new((-3).into(), pow235([6, 4, 6])));
    }

    #[test]
    fn only_i10_terms() {
        let ic = IgusaClebsch::constant([q(0), q(0), q(0), q(1)]);
        let mc = mestre_conic(&ic).unwrap();
        let l = &mc.conic;
        assert!(l.a().is_zero() && l.d().is_zero() && l.f().is_zero());
        let a13 = RationalFunction::from_poly(l.e().clone()).checked_div(&mc.scale).unwrap();
        let want = BigRational::new(BigInt::from(-2 * 10_800_000), pow235([8, 9, 10]));
        assert_eq!(a13.eval_all(&[]).unwrap(), want);
        assert!(l.c().is_zero());
        assert_eq!(mestre_conic(&IgusaClebsch::constant([q(1), q(2), q(3), q(0)])), Err(MestreError::Degenerate));
    }

    #[test]
    fn ic_chain_matches_reference() {
        let ch = ic_simplified(&IgusaClebsch::formal()).unwrap();
        assert_eq!(ch.conic, ic_simplified_reference());
        assert_eq!(ch.log.replay(&ch.source).unwrap(), ch.conic);
        assert!(!num_traits::Zero::is_zero(&ch.scalar));
    }

    #[test]
    fn ek_substitution() {
        let ones = EkQuantities::constant([q(1), q(1), q(1), q(1), q(1)]);
        let ic = ic_from_ek(&ones).unwrap();
        let vals: Vec<BigRational> = [&ic.i2, &ic.i4, &ic.i6, &ic.i10].iter().map(|r| r.eval_all(&[]).unwrap()).collect();
        assert_eq!(vals, vec![q(-24), q(-12), q(60), q(-4)]);
        let z = ic_from_ek(&EkQuantities::constant([q(0), q(1), q(0), q(0), q(0)])).unwrap();
        assert!(z.i2.is_zero() && z.i4.is_zero() && z.i6.is_zero() && z.i10.is_zero());
        assert_eq!(ic_from_ek(&EkQuantities::constant([q(1), q(0), q(1), q(1), q(1)])), Err(MestreError::A1Vanishes));
    }

    #[test]
    fn rm_chain_matches_reference() {
        let ch = rm_simplified(&EkQuantities::formal()).unwrap();
        assert_eq!(ch.conic, rm_simplified_reference());
        assert_eq!(ch.log.replay(&ch.source).unwrap(), ch.conic);
    }

    #[test]
    fn numeric_specialisation_replays() {
        let ic = IgusaClebsch::constant([q(3), q(-2), q(5), q(7)]);
        let ch = ic_simplified(&ic).unwrap();
        assert_eq!(ch.log.replay(&ch.source).unwrap(), ch.conic);
        // proportional to the reference model evaluated at the point
        let r = ic_simplified_reference();
        let pt = [3, -2, 5, 7].map(BigInt::from);
        let lam = BigRational::new(ch.conic.a().as_constant().unwrap(), r.a().eval_all(&pt));
        for k in 0..6 {
            let want = BigRational::from_integer(r.coeffs()[k].eval_all(&pt)) * &lam;
            assert_eq!(BigRational::from_integer(ch.conic.coeffs()[k].as_constant().unwrap()), want);
        }
    }
}

#[cfg(test)]
mod divisibility {
    use super::*;
    use crate::poly::VarList;

    #[test]
    fn rm_model_properties() {
        let ch = rm_simplified(&EkQuantities::formal()).unwrap();
        let v = VarList::new(&EK_VARS);
        let q2 = &ch.log.steps()[0].result;
        let v2 = [m(&v, "4*A"), m(&v, "0"), m(&v, "1")];
        let want = &m(&v, "-27*A1^2") * &m(&v, RM_Q2_V2_COFACTOR);
        assert_eq!(evaluate(q2, &v2), want);
        let a1 = m(&v, "A1");
        assert!(a1.pow(2).divides(&ch.conic.discriminant()));
        for mnr in diagonal_minors4(&ch.conic) {
            assert!(a1.divides(&mnr));
        }
    }
}
