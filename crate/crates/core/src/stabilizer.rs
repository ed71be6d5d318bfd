//! Stabilizer coefficients of `C|0⟩` along a normal form.
//!
//! A state is stabilized by `xX + yY + zZ` for a real unit vector
//! `(x, y, z)`. Along a normal form every coefficient has the shape
//! `(a + b√2) / √2^ℓ`, where `ℓ` is the number of blocks applied so far, and
//! each block acts on the integer pairs `(a, b)` linearly. The parities of
//! the six integers sort states into nine classes, none of which contains
//! `|0⟩`; that is what certifies a normal form with T gates is not `I`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{CliffordId, GroupTable};
use crate::normalizer::{Block, NormalForm, Normalizer};
use crate::ring::{RingElem, StateVec, UMat2};

/// `a + b√2`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: BigInt,
    pub b: BigInt,
}

impl Surd {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Surd {
        Surd { a: a.into(), b: b.into() }
    }

    fn zero() -> Surd {
        Surd::new(0, 0)
    }

    fn add(&self, o: &Surd) -> Surd {
        Surd { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    fn sub(&self, o: &Surd) -> Surd {
        Surd { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn neg(&self) -> Surd {
        Surd { a: -&self.a, b: -&self.b }
    }

    /// Multiplication by `√2`: `(a, b) ↦ (2b, a)`.
    fn times_sqrt2(&self) -> Surd {
        Surd { a: &self.b * 2, b: self.a.clone() }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `(x, y, z) / √2^level`, never reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabTriple {
    pub x: Surd,
    pub y: Surd,
    pub z: Surd,
    pub level: u32,
}

impl StabTriple {
    pub fn new(x: Surd, y: Surd, z: Surd, level: u32) -> StabTriple {
        StabTriple { x, y, z, level }
    }

    fn axis(i: usize, sign: i64) -> StabTriple {
        let mut c = [Surd::zero(), Surd::zero(), Surd::zero()];
        c[i] = Surd::new(sign, 0);
        let [x, y, z] = c;
        StabTriple::new(x, y, z, 0)
    }

    /// Exact `xX + yY + zZ`.
    pub fn matrix(&self) -> UMat2 {
        let coeff = |s: &Surd| RingElem::from_surd(&s.a, &s.b, self.level);
        let (x, y, z) = (coeff(&self.x), coeff(&self.y), coeff(&self.z));
        let iy = &RingElem::omega_pow(2) * &y;
        UMat2::new(z.clone(), &x - &iy, &x + &iy, -z)
    }
}

impl fmt::Display for StabTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ℓ={} x={} y={} z={}", self.level, self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityClass {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    Other,
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParityClass::Other => f.write_str("OTHER"),
            c => write!(f, "{c:?}"),
        }
    }
}

/// Odd positions among `(x_a, x_b, y_a, y_b, z_a, z_b)` for each class.
const CLASS_PARITIES: [(ParityClass, [bool; 6]); 9] = {
    const O: bool = true;
    const E: bool = false;
    [
        (ParityClass::T1, [E, O, E, E, E, O]),
        (ParityClass::T2, [E, E, E, O, E, O]),
        (ParityClass::T3, [E, O, E, O, E, E]),
        (ParityClass::T4, [E, O, O, E, O, E]),
        (ParityClass::T5, [O, E, E, O, O, E]),
        (ParityClass::T6, [O, E, O, E, E, O]),
        (ParityClass::T7, [E, O, O, O, O, O]),
        (ParityClass::T8, [O, O, E, O, O, O]),
        (ParityClass::T9, [O, O, O, O, E, O]),
    ]
};

pub fn classify(st: &StabTriple) -> ParityClass {
    let p = [&st.x.a, &st.x.b, &st.y.a, &st.y.b, &st.z.a, &st.z.b].map(|v| v.is_odd());
    CLASS_PARITIES.iter().find(|(_, pattern)| *pattern == p).map_or(ParityClass::Other, |(c, _)| *c)
}

/// Signed Pauli axis stabilizing `W₀|0⟩`, read off from `W₀·Z·W₀†`.
pub fn initial_stab(w0: CliffordId, table: &GroupTable) -> Result<StabTriple> {
    let m = table.matrix(w0);
    let conj = &(m * &UMat2::z()) * &m.adjoint();
    let axes = [UMat2::x(), UMat2::y(), UMat2::z()];
    for (i, axis) in axes.iter().enumerate() {
        if &conj == axis {
            return Ok(StabTriple::axis(i, 1));
        }
        if conj == axis.neg() {
            return Ok(StabTriple::axis(i, -1));
        }
    }
    Err(Error::NotSignedPauli { word: table.display_word(w0) })
}

/// Stabilizer of `B|ψ⟩` given the stabilizer of `|ψ⟩`, one level up.
pub fn step_block(st: &StabTriple, block: Block) -> StabTriple {
    let diff = st.x.sub(&st.y);
    let sum = st.x.add(&st.y);
    let z = st.z.times_sqrt2();
    let (x, y, z) = match block {
        Block::T => (diff, sum, z),
        Block::HT => (z, sum.neg(), diff),
        Block::PHT => (sum, z, diff),
    };
    StabTriple::new(x, y, z, st.level + 1)
}

/// Triples for `C_(0)|0⟩, C_(1)|0⟩, …, C|0⟩`, applying blocks right to left.
pub fn stab_trace(nf: &NormalForm, table: &GroupTable) -> Result<Vec<StabTriple>> {
    let mut trace = vec![initial_stab(nf.cliff, table)?];
    for &b in nf.blocks.iter().rev() {
        let next = step_block(trace.last().expect("nonempty"), b);
        trace.push(next);
    }
    Ok(trace)
}

pub fn stab_of_normal_form(nf: &NormalForm, table: &GroupTable) -> Result<StabTriple> {
    Ok(stab_trace(nf, table)?.pop().expect("nonempty"))
}

/// Exact check of `(xX + yY + zZ)|ψ⟩ = |ψ⟩`.
pub fn verify_stabilizes(st: &StabTriple, s: &StateVec) -> bool {
    &st.matrix().apply(s) == s
}

/// Certifies that a normal form with at least one block is not the
/// identity. Up to two blocks this is an exact matrix comparison; beyond
/// that the final parity class must be one of `T1`…`T9`.
pub fn nonidentity_witness(nf: &NormalForm, normalizer: &Normalizer) -> Result<bool> {
    if nf.blocks.is_empty() {
        return Err(Error::NoTGates);
    }
    let table = normalizer.table();
    if nf.blocks.len() <= 2 {
        return Ok(normalizer.nf_matrix(nf) != UMat2::identity());
    }
    let certified = classify(&stab_of_normal_form(nf, table)?) != ParityClass::Other;
    debug_assert!(!certified || normalizer.nf_matrix(nf) != UMat2::identity());
    Ok(certified)
}

/// The value `(x, y, z)` as exact reals, for comparisons across levels.
pub fn stab_value(st: &StabTriple) -> [RingElem; 3] {
    [&st.x, &st.y, &st.z].map(|s| RingElem::from_surd(&s.a, &s.b, st.level))
}

/// `true` if the triple's value is `(0, 0, 1)`.
pub fn is_zero_ket_stabilizer(st: &StabTriple) -> bool {
    let [x, y, z] = stab_value(st);
    x.is_zero() && y.is_zero() && z == RingElem::one()
}
