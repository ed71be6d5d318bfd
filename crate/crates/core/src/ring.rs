//! Exact arithmetic over `Z[ω]` with powers of `√2` in the denominator,
//! where `ω = e^{iπ/4}`.
//!
//! A [`RingElem`] stores `(a + bω + cω² + dω³) / √2^k`. Every value has exactly
//! one canonical representation (either `k = 0`, or the numerator is not
//! divisible by `√2`), so structural equality and hashing coincide with
//! equality of complex numbers. Global phase is therefore significant.
//!
//! Coefficients live in `i64` while they fit and transparently move to
//! `BigInt` when an operation would overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Number, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Coeffs {
    /// Used whenever all four coefficients fit in an `i64`.
    Small([i64; 4]),
    Big(Box<[BigInt; 4]>),
}

impl Coeffs {
    fn from_big(v: [BigInt; 4]) -> Coeffs {
        let small: Option<Vec<i64>> = v.iter().map(|x| x.to_i64()).collect();
        match small {
            Some(s) => Coeffs::Small([s[0], s[1], s[2], s[3]]),
            None => Coeffs::Big(Box::new(v)),
        }
    }

    fn to_big(&self) -> [BigInt; 4] {
        match self {
            Coeffs::Small(s) => s.map(BigInt::from),
            Coeffs::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Coeffs::Small(s) => s.iter().all(|&x| x == 0),
            Coeffs::Big(_) => false,
        }
    }

    fn add(&self, other: &Coeffs) -> Coeffs {
        if let (Coeffs::Small(x), Coeffs::Small(y)) = (self, other) {
            if let Some(r) = zip_checked(x, y, i64::checked_add) {
                return Coeffs::Small(r);
            }
        }
        let (x, y) = (self.to_big(), other.to_big());
        Coeffs::from_big(std::array::from_fn(|i| &x[i] + &y[i]))
    }

    fn neg(&self) -> Coeffs {
        if let Coeffs::Small(x) = self {
            if x.iter().all(|&v| v != i64::MIN) {
                return Coeffs::Small(x.map(|v| -v));
            }
        }
        Coeffs::from_big(self.to_big().map(|v| -v))
    }

    fn mul(&self, other: &Coeffs) -> Coeffs {
        if let (Coeffs::Small(x), Coeffs::Small(y)) = (self, other) {
            if let Some(r) = small_mul(x, y) {
                return Coeffs::Small(r);
            }
        }
        let (x, y) = (self.to_big(), other.to_big());
        let p = |i: usize, j: usize| &x[i] * &y[j];
        Coeffs::from_big([
            p(0, 0) - p(1, 3) - p(2, 2) - p(3, 1),
            p(0, 1) + p(1, 0) - p(2, 3) - p(3, 2),
            p(0, 2) + p(1, 1) + p(2, 0) - p(3, 3),
            p(0, 3) + p(1, 2) + p(2, 1) + p(3, 0),
        ])
    }

    /// Multiplies the numerator by `√2 = ω − ω³`.
    fn mul_sqrt2(&self) -> Coeffs {
        if let Coeffs::Small([a, b, c, d]) = *self {
            let r = (|| Some([b.checked_sub(d)?, a.checked_add(c)?, b.checked_add(d)?, c.checked_sub(a)?]))();
            if let Some(r) = r {
                return Coeffs::Small(r);
            }
        }
        let [a, b, c, d] = self.to_big();
        Coeffs::from_big([&b - &d, &a + &c, &b + &d, &c - &a])
    }

    /// Divides the numerator by `√2` if the result stays integral.
    fn div_sqrt2(&self) -> Option<Coeffs> {
        match self {
            Coeffs::Small([a, b, c, d]) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if (a - c) & 1 != 0 || (b - d) & 1 != 0 {
                    return None;
                }
                let r = [(b - d) / 2, (a + c) / 2, (b + d) / 2, (c - a) / 2];
                Some(match r.map(i64::try_from) {
                    [Ok(a), Ok(b), Ok(c), Ok(d)] => Coeffs::Small([a, b, c, d]),
                    _ => Coeffs::from_big(r.map(BigInt::from)),
                })
            }
            Coeffs::Big(v) => {
                let [a, b, c, d] = &**v;
                if (a - c).is_odd() || (b - d).is_odd() {
                    return None;
                }
                let two = BigInt::from(2);
                Some(Coeffs::from_big([(b - d) / &two, (a + c) / &two, (b + d) / &two, (c - a) / &two]))
            }
        }
    }
}

fn zip_checked(x: &[i64; 4], y: &[i64; 4], f: fn(i64, i64) -> Option<i64>) -> Option<[i64; 4]> {
    Some([f(x[0], y[0])?, f(x[1], y[1])?, f(x[2], y[2])?, f(x[3], y[3])?])
}

fn small_mul(x: &[i64; 4], y: &[i64; 4]) -> Option<[i64; 4]> {
    let p = |i: usize, j: usize| x[i] as i128 * y[j] as i128;
    let sum = |terms: [(i128, bool); 4]| -> Option<i64> {
        let mut acc: i128 = 0;
        for (t, neg) in terms {
            acc = if neg { acc.checked_sub(t)? } else { acc.checked_add(t)? };
        }
        i64::try_from(acc).ok()
    };
    Some([
        sum([(p(0, 0), false), (p(1, 3), true), (p(2, 2), true), (p(3, 1), true)])?,
        sum([(p(0, 1), false), (p(1, 0), false), (p(2, 3), true), (p(3, 2), true)])?,
        sum([(p(0, 2), false), (p(1, 1), false), (p(2, 0), false), (p(3, 3), true)])?,
        sum([(p(0, 3), false), (p(1, 2), false), (p(2, 1), false), (p(3, 0), false)])?,
    ])
}

/// An element `(a + bω + cω² + dω³) / √2^k` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    coeffs: Coeffs,
    k: u32,
}

impl RingElem {
    /// Builds `(a + bω + cω² + dω³) / √2^k` and reduces it.
    pub fn new(coeffs: [i64; 4], k: u32) -> RingElem {
        RingElem { coeffs: Coeffs::Small(coeffs), k }.canonicalize()
    }

    pub fn from_big(coeffs: [BigInt; 4], k: u32) -> RingElem {
        RingElem { coeffs: Coeffs::from_big(coeffs), k }.canonicalize()
    }

    /// Wraps raw coefficients without reducing them.
    pub fn raw(coeffs: [BigInt; 4], k: u32) -> RingElem {
        RingElem { coeffs: Coeffs::from_big(coeffs), k }
    }

    pub fn zero() -> RingElem {
        RingElem::new([0, 0, 0, 0], 0)
    }

    pub fn one() -> RingElem {
        RingElem::new([1, 0, 0, 0], 0)
    }

    /// `ω^n` for any integer `n`.
    pub fn omega_pow(n: i64) -> RingElem {
        let n = n.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        c[n % 4] = if n < 4 { 1 } else { -1 };
        RingElem::new(c, 0)
    }

    pub fn sqrt2() -> RingElem {
        RingElem::new([0, 1, 0, -1], 0)
    }

    pub fn inv_sqrt2() -> RingElem {
        RingElem::new([1, 0, 0, 0], 1)
    }

    /// `(a + b√2) / √2^k` for integers `a`, `b`.
    pub fn from_surd(a: &BigInt, b: &BigInt, k: u32) -> RingElem {
        RingElem::from_big([a.clone(), b.clone(), BigInt::zero(), -b.clone()], k)
    }

    pub fn coeffs(&self) -> [BigInt; 4] {
        self.coeffs.to_big()
    }

    pub fn den_exp(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Reduces the denominator exponent as far as possible. Idempotent.
    pub fn canonicalize(mut self) -> RingElem {
        if self.coeffs.is_zero() {
            self.k = 0;
            return self;
        }
        while self.k > 0 {
            match self.coeffs.div_sqrt2() {
                Some(c) => {
                    self.coeffs = c;
                    self.k -= 1;
                }
                None => break,
            }
        }
        self
    }

    /// Complex conjugate: `(a, b, c, d) ↦ (a, −d, −c, −b)`.
    pub fn conj(&self) -> RingElem {
        let coeffs = match &self.coeffs {
            Coeffs::Small([a, b, c, d]) if [*b, *c, *d].iter().all(|&v| v != i64::MIN) => {
                Coeffs::Small([*a, -*d, -*c, -*b])
            }
            other => {
                let [a, b, c, d] = other.to_big();
                Coeffs::from_big([a, -d, -c, -b])
            }
        };
        RingElem { coeffs, k: self.k }
    }

    /// Numerator rescaled to denominator exponent `target >= self.den_exp()`.
    pub fn numerator_at(&self, target: u32) -> [BigInt; 4] {
        assert!(target >= self.k, "cannot lower the denominator exponent");
        let mut c = self.coeffs.clone();
        for _ in self.k..target {
            c = c.mul_sqrt2();
        }
        c.to_big()
    }

    fn aligned(&self, other: &RingElem) -> (Coeffs, Coeffs, u32) {
        let k = self.k.max(other.k);
        let lift = |e: &RingElem| {
            let mut c = e.coeffs.clone();
            for _ in e.k..k {
                c = c.mul_sqrt2();
            }
            c
        };
        (lift(self), lift(other), k)
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let (x, y, k) = self.aligned(rhs);
        RingElem { coeffs: x.add(&y), k }.canonicalize()
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { coeffs: self.coeffs.neg(), k: self.k }
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    // Denominator exponents add under multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &RingElem) -> RingElem {
        RingElem { coeffs: self.coeffs.mul(&rhs.coeffs), k: self.k + rhs.k }.canonicalize()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coeffs();
        write!(f, "({a},{b},{c},{d})/√2^{}", self.k)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A 2×2 matrix over [`RingElem`], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UMat2 {
    pub e00: RingElem,
    pub e01: RingElem,
    pub e10: RingElem,
    pub e11: RingElem,
}

impl UMat2 {
    pub fn new(e00: RingElem, e01: RingElem, e10: RingElem, e11: RingElem) -> UMat2 {
        UMat2 { e00, e01, e10, e11 }
    }

    fn from_ints(rows: [[[i64; 4]; 2]; 2], k: u32) -> UMat2 {
        UMat2::new(
            RingElem::new(rows[0][0], k),
            RingElem::new(rows[0][1], k),
            RingElem::new(rows[1][0], k),
            RingElem::new(rows[1][1], k),
        )
    }

    pub fn identity() -> UMat2 {
        UMat2::scalar(RingElem::one())
    }

    pub fn scalar(s: RingElem) -> UMat2 {
        UMat2::new(s.clone(), RingElem::zero(), RingElem::zero(), s)
    }

    pub fn diag(a: RingElem, b: RingElem) -> UMat2 {
        UMat2::new(a, RingElem::zero(), RingElem::zero(), b)
    }

    /// Hadamard, `(1/√2)[[1, 1], [1, −1]]`.
    pub fn h() -> UMat2 {
        UMat2::from_ints([[[1, 0, 0, 0], [1, 0, 0, 0]], [[1, 0, 0, 0], [-1, 0, 0, 0]]], 1)
    }

    /// Phase gate `diag(1, i)`.
    pub fn p() -> UMat2 {
        UMat2::diag(RingElem::one(), RingElem::omega_pow(2))
    }

    /// `diag(1, ω)`.
    pub fn t() -> UMat2 {
        UMat2::diag(RingElem::one(), RingElem::omega_pow(1))
    }

    /// `(1/√2)[[1, 1], [−1, 1]]`, the alternative to `H`.
    pub fn r() -> UMat2 {
        UMat2::from_ints([[[1, 0, 0, 0], [1, 0, 0, 0]], [[-1, 0, 0, 0], [1, 0, 0, 0]]], 1)
    }

    pub fn x() -> UMat2 {
        UMat2::new(RingElem::zero(), RingElem::one(), RingElem::one(), RingElem::zero())
    }

    pub fn y() -> UMat2 {
        UMat2::new(RingElem::zero(), -RingElem::omega_pow(2), RingElem::omega_pow(2), RingElem::zero())
    }

    pub fn z() -> UMat2 {
        UMat2::diag(RingElem::one(), -RingElem::one())
    }

    pub fn entries(&self) -> [&RingElem; 4] {
        [&self.e00, &self.e01, &self.e10, &self.e11]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> UMat2 {
        UMat2::new(self.e00.conj(), self.e10.conj(), self.e01.conj(), self.e11.conj())
    }

    pub fn scale(&self, s: &RingElem) -> UMat2 {
        UMat2::new(s * &self.e00, s * &self.e01, s * &self.e10, s * &self.e11)
    }

    pub fn neg(&self) -> UMat2 {
        UMat2::new(-&self.e00, -&self.e01, -&self.e10, -&self.e11)
    }

    /// Returns `s` if the matrix equals `s·I`.
    pub fn as_scalar(&self) -> Option<&RingElem> {
        (self.e01.is_zero() && self.e10.is_zero() && self.e00 == self.e11).then_some(&self.e00)
    }

    pub fn apply(&self, s: &StateVec) -> StateVec {
        StateVec {
            v0: &(&self.e00 * &s.v0) + &(&self.e01 * &s.v1),
            v1: &(&self.e10 * &s.v0) + &(&self.e11 * &s.v1),
        }
    }

    /// Largest denominator exponent among the entries.
    pub fn common_den_exp(&self) -> u32 {
        self.entries().iter().map(|e| e.den_exp()).max().unwrap_or(0)
    }

    /// `{"den_exp": k, "entries": [[[a,b,c,d], ...], ...]}` with every entry
    /// rescaled to the largest denominator exponent.
    pub fn to_json(&self) -> Value {
        let k = self.common_den_exp();
        let entry = |e: &RingElem| Value::Array(e.numerator_at(k).iter().map(big_to_json).collect());
        json!({
            "den_exp": k,
            "entries": [
                [entry(&self.e00), entry(&self.e01)],
                [entry(&self.e10), entry(&self.e11)],
            ],
        })
    }
}

fn big_to_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integer literal is valid JSON"))
}

impl Mul for &UMat2 {
    type Output = UMat2;
    fn mul(self, rhs: &UMat2) -> UMat2 {
        let dot = |a: &RingElem, b: &RingElem, c: &RingElem, d: &RingElem| &(a * b) + &(c * d);
        UMat2::new(
            dot(&self.e00, &rhs.e00, &self.e01, &rhs.e10),
            dot(&self.e00, &rhs.e01, &self.e01, &rhs.e11),
            dot(&self.e10, &rhs.e00, &self.e11, &rhs.e10),
            dot(&self.e10, &rhs.e01, &self.e11, &rhs.e11),
        )
    }
}

impl Mul for UMat2 {
    type Output = UMat2;
    fn mul(self, rhs: UMat2) -> UMat2 {
        &self * &rhs
    }
}

impl Add for &UMat2 {
    type Output = UMat2;
    fn add(self, rhs: &UMat2) -> UMat2 {
        UMat2::new(&self.e00 + &rhs.e00, &self.e01 + &rhs.e01, &self.e10 + &rhs.e10, &self.e11 + &rhs.e11)
    }
}

impl fmt::Debug for UMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.e00, self.e01, self.e10, self.e11)
    }
}

/// Amplitudes `(α, β)` of `α|0⟩ + β|1⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateVec {
    pub v0: RingElem,
    pub v1: RingElem,
}

impl StateVec {
    pub fn new(v0: RingElem, v1: RingElem) -> StateVec {
        StateVec { v0, v1 }
    }

    /// `|0⟩`
    pub fn zero_ket() -> StateVec {
        StateVec::new(RingElem::one(), RingElem::zero())
    }

    /// `|α|² + |β|²`
    pub fn norm_sq(&self) -> RingElem {
        &(&self.v0 * &self.v0.conj()) + &(&self.v1 * &self.v1.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(c: [i64; 4], k: u32) -> RingElem {
        RingElem::new(c, k)
    }

    /// Multiplying a numerator by √2, written out independently of `mul_sqrt2`.
    fn times_sqrt2_oracle(c: [i64; 4]) -> [i64; 4] {
        // (a + bω + cω² + dω³)(ω − ω³), expanded with ω⁴ = −1 term by term.
        let mut out = [0i64; 4];
        for (i, &ci) in c.iter().enumerate() {
            for (j, s) in [(1usize, 1i64), (3, -1)] {
                let e = i + j;
                let (idx, sign) = if e >= 4 { (e - 4, -1) } else { (e, 1) };
                out[idx] += sign * s * ci;
            }
        }
        out
    }

    #[test]
    fn sqrt2_map_matches_expansion() {
        for c in [[1, 2, 3, 4], [-5, 0, 7, 1], [0, 0, 0, 1]] {
            let [a, b, cc, d] = c;
            assert_eq!(times_sqrt2_oracle(c), [b - d, a + cc, b + d, cc - a]);
            let got = Coeffs::Small(c).mul_sqrt2();
            assert_eq!(got, Coeffs::Small(times_sqrt2_oracle(c)));
        }
    }

    #[test]
    fn omega_times_omega_cubed_is_minus_one() {
        assert_eq!(&re([0, 1, 0, 0], 0) * &re([0, 0, 0, 1], 0), re([-1, 0, 0, 0], 0));
    }

    #[test]
    fn half_is_canonical_at_exponent_two() {
        let half = &RingElem::inv_sqrt2() * &RingElem::inv_sqrt2();
        assert_eq!(half.coeffs(), [1, 0, 0, 0].map(BigInt::from));
        assert_eq!(half.den_exp(), 2);
    }

    #[test]
    fn canonicalize_examples() {
        let w = re([0, 2, 0, 0], 2);
        assert_eq!(w.coeffs(), [0, 1, 0, 0].map(BigInt::from));
        assert_eq!(w.den_exp(), 0);

        let one = re([1, 0, 0, 0], 0);
        assert_eq!(one.den_exp(), 0);

        // Oracle: the reduced numerator times √2 gives back (1,1,1,1).
        let r = re([1, 1, 1, 1], 1);
        assert_eq!(r.den_exp(), 0);
        assert_eq!(r.coeffs(), [0, 1, 1, 0].map(BigInt::from));
        assert_eq!(times_sqrt2_oracle([0, 1, 1, 0]), [1, 1, 1, 1]);
    }

    #[test]
    fn zero_has_exponent_zero() {
        assert_eq!(re([0, 0, 0, 0], 7), RingElem::zero());
        assert_eq!(re([4, 0, 4, 0], 3).den_exp(), 0);
    }

    #[test]
    fn conjugation() {
        assert_eq!(RingElem::omega_pow(1).conj(), -re([0, 0, 0, 1], 0));
        assert_eq!(RingElem::one().conj(), RingElem::one());
        assert_eq!(RingElem::omega_pow(2).conj(), -RingElem::omega_pow(2));
    }

    #[test]
    fn gate_identities() {
        assert_eq!(&UMat2::t() * &UMat2::t(), UMat2::p());
        assert_eq!(&UMat2::h() * &UMat2::h(), UMat2::identity());
        let hp = &UMat2::h() * &UMat2::p();
        let hp3 = &(&hp * &hp) * &hp;
        assert_eq!(hp3, UMat2::scalar(RingElem::omega_pow(1)));
    }

    #[test]
    fn adjoints() {
        assert_eq!(UMat2::t().adjoint(), UMat2::diag(RingElem::one(), -re([0, 0, 0, 1], 0)));
        assert_eq!(UMat2::h().adjoint(), UMat2::h());
        assert_eq!(UMat2::p().adjoint(), UMat2::diag(RingElem::one(), -RingElem::omega_pow(2)));
    }

    #[test]
    fn apply_examples() {
        let zero = StateVec::zero_ket();
        assert_eq!(UMat2::identity().apply(&zero), zero);
        assert_eq!(UMat2::h().apply(&zero), StateVec::new(RingElem::inv_sqrt2(), RingElem::inv_sqrt2()));
        assert_eq!(UMat2::x().apply(&zero), StateVec::new(RingElem::zero(), RingElem::one()));
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = re([i64::MAX, 0, 0, 0], 0);
        let sq = &big * &big;
        let expected = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        assert_eq!(sq.coeffs()[0], expected);
        // Shrinking back down demotes to the inline representation.
        let back = &sq - &(&sq - &RingElem::one());
        assert_eq!(back, RingElem::one());
        assert!(matches!(back.coeffs, Coeffs::Small(_)));
    }

    #[test]
    fn matrix_json_uses_common_exponent() {
        let v = UMat2::h().to_json();
        assert_eq!(v["den_exp"], 1);
        assert_eq!(v["entries"][1][1], json!([-1, 0, 0, 0]));
        let v = UMat2::t().to_json();
        assert_eq!(v["den_exp"], 0);
        assert_eq!(v["entries"][1][1], json!([0, 1, 0, 0]));
        // diag(1/√2, 1) rescales the 1 to √2 = ω − ω³.
        let m = UMat2::diag(RingElem::inv_sqrt2(), RingElem::one());
        assert_eq!(m.to_json()["entries"][1][1], json!([0, 1, 0, -1]));
    }
}
