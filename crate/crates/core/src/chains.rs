//! The chain dg algebra of the loop model in its two quotient variants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{LetterPolicy, LoopModel, LoopWord};

/// Coefficient ring. All arithmetic is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    /// The prime field with `p` elements.
    Prime(u64),
}

impl Ring {
    /// Brings `c` into canonical form: integers stay integral, prime-field
    /// values are represented by `0..p`.
    pub fn normalize(&self, c: BigRational) -> Result<BigRational> {
        match *self {
            Ring::Rationals => Ok(c),
            Ring::Integers => {
                if c.is_integer() {
                    Ok(c)
                } else {
                    Err(Error::Coefficient(c.to_string(), self.to_string()))
                }
            }
            Ring::Prime(p) => {
                let p = BigInt::from(p);
                let den = c.denom().mod_floor_big(&p);
                if den.is_zero() {
                    return Err(Error::Coefficient(c.to_string(), self.to_string()));
                }
                let inv = den.modpow(&(&p - 2), &p);
                let num = c.numer().mod_floor_big(&p);
                Ok(BigRational::from_integer((num * inv) % &p))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Ring::Prime(p) => p,
            _ => 0,
        }
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// `z`, `q` or `p:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 1,
            column: 1,
            message: format!("unknown coefficient ring `{s}` (expected z, q or p:<prime>)"),
        };
        match s.trim().to_ascii_lowercase().as_str() {
            "z" => Ok(Ring::Integers),
            "q" => Ok(Ring::Rationals),
            other => {
                let p: u64 = other
                    .strip_prefix("p:")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(bad)?;
                if p < 2
                    || (2..)
                        .take_while(|d| d * d <= p)
                        .any(|d| p.is_multiple_of(d))
                {
                    return Err(Error::Parse {
                        line: 1,
                        column: 3,
                        message: format!("{p} is not prime"),
                    });
                }
                Ok(Ring::Prime(p))
            }
        }
    }
}

/// Which degenerate cells the chain complex divides out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Only cells built from degeneracies of the unit: words in which a
    /// degenerate unit factor has been absorbed, i.e. words with a letter
    /// degenerate at its first index.
    De,
    /// Every degenerate cell: words with any degenerate letter.
    Normalized,
}

impl Variant {
    /// Whether the generator `w` is zero in this quotient.
    pub fn kills(&self, w: &LoopWord) -> bool {
        match self {
            Variant::De => w.letters().iter().any(|l| l.is_bottom_degenerate()),
            Variant::Normalized => w.has_degenerate_letter(),
        }
    }

    /// Letters of the surviving generator words.
    pub fn policy(&self) -> LetterPolicy {
        match self {
            Variant::De => LetterPolicy::InnerDegenerate,
            Variant::Normalized => LetterPolicy::Nondegenerate,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::De => write!(f, "de"),
            Variant::Normalized => write!(f, "norm"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "de" => Ok(Variant::De),
            "norm" | "normalized" => Ok(Variant::Normalized),
            _ => Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown variant `{s}` (expected de or norm)"),
            }),
        }
    }
}

/// A homogeneous chain: a sparse combination of reduced words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    ring: Ring,
    variant: Variant,
    degree: usize,
    terms: BTreeMap<LoopWord, BigRational>,
}

impl Chain {
    pub fn zero(ring: Ring, variant: Variant, degree: usize) -> Self {
        Chain {
            ring,
            variant,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The generator `w` with coefficient one, or zero if the variant kills it.
    pub fn word(ring: Ring, variant: Variant, w: LoopWord) -> Self {
        let mut c = Chain::zero(ring, variant, w.degree());
        c.add_term(w, BigRational::one())
            .expect("one lies in every ring");
        c
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<LoopWord, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &LoopWord) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c w`; killed words are discarded.
    pub fn add_term(&mut self, w: LoopWord, c: BigRational) -> Result<()> {
        if self.variant.kills(&w) {
            return Ok(());
        }
        if w.degree() != self.degree {
            if !self.terms.is_empty() {
                return Err(Error::ChainMismatch);
            }
            self.degree = w.degree();
        }
        let c = self.ring.normalize(c)?;
        let sum = self.ring.normalize(self.coefficient(&w) + c)?;
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
        Ok(())
    }

    fn compatible(&self, other: &Chain) -> Result<()> {
        let degrees_agree = self.degree == other.degree || self.is_zero() || other.is_zero();
        if self.ring != other.ring || self.variant != other.variant || !degrees_agree {
            return Err(Error::ChainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        self.add(&other.scale(&-BigRational::one())?)
    }

    pub fn scale(&self, c: &BigRational) -> Result<Chain> {
        let mut out = Chain::zero(self.ring, self.variant, self.degree);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d)?;
        }
        Ok(out)
    }

    /// Image under the quotient map to another variant (only `De` to
    /// `Normalized` is a chain map).
    pub fn reinterpret(&self, variant: Variant) -> Chain {
        let mut out = Chain::zero(self.ring, variant, self.degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone())
                .expect("coefficients are already normalized");
        }
        out
    }
}

/// `d(w) = sum_i (-1)^i (d^1_i w - d^0_i w)` in the quotient.
pub fn word_boundary(
    model: &LoopModel,
    ring: Ring,
    variant: Variant,
    w: &LoopWord,
) -> Result<Chain> {
    let n = w.degree();
    let mut out = Chain::zero(ring, variant, n.saturating_sub(1));
    for i in 1..=n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.add_term(
            model.word_face(w, i, 1)?,
            BigRational::from_integer(sign.into()),
        )?;
        out.add_term(
            model.word_face(w, i, 0)?,
            BigRational::from_integer((-sign).into()),
        )?;
    }
    Ok(out)
}

/// Linear extension of [`word_boundary`]. The boundary of a degree-0 chain is zero.
pub fn boundary(model: &LoopModel, ch: &Chain) -> Result<Chain> {
    let mut out = Chain::zero(ch.ring, ch.variant, ch.degree.saturating_sub(1));
    for (w, c) in &ch.terms {
        out = out.add(&word_boundary(model, ch.ring, ch.variant, w)?.scale(c)?)?;
    }
    Ok(out)
}

/// Bilinear extension of concatenation.
pub fn multiply(model: &LoopModel, u: &Chain, v: &Chain) -> Result<Chain> {
    if u.ring != v.ring || u.variant != v.variant {
        return Err(Error::ChainMismatch);
    }
    let mut out = Chain::zero(u.ring, u.variant, u.degree + v.degree);
    for (a, c) in &u.terms {
        for (b, d) in &v.terms {
            out.add_term(model.compose(a, b)?, c * d)?;
        }
    }
    Ok(out)
}

/// `d(uv) - d(u) v - (-1)^|u| u d(v)`, zero when the Leibniz rule holds.
pub fn leibniz_defect(model: &LoopModel, u: &Chain, v: &Chain) -> Result<Chain> {
    let lhs = boundary(model, &multiply(model, u, v)?)?;
    let first = multiply(model, &boundary(model, u)?, v)?;
    let mut second = multiply(model, u, &boundary(model, v)?)?;
    if u.degree % 2 == 1 {
        second = second.scale(&-BigRational::one())?;
    }
    lhs.sub(&first)?.sub(&second)
}

/// Renders a chain as `c1*w1 + c2*w2 - ...`, omitting unit coefficients.
pub fn render(model: &LoopModel, ch: &Chain) -> String {
    if ch.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (w, c)) in ch.terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&model.render(w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boundary_simplex, sphere_quotient, wedge_of_circles};
    use crate::random::{rng, WordSampler};

    #[test]
    fn ring_normalization() {
        let q = BigRational::new(3.into(), 2.into());
        assert!(Ring::Integers.normalize(q.clone()).is_err());
        assert_eq!(Ring::Rationals.normalize(q.clone()).unwrap(), q);
        // 3/2 = 3 * 4 = 12 = 5 mod 7
        assert_eq!(
            Ring::Prime(7).normalize(q).unwrap(),
            BigRational::from_integer(5.into())
        );
        assert_eq!(
            Ring::Prime(5)
                .normalize(BigRational::from_integer((-1).into()))
                .unwrap(),
            BigRational::from_integer(4.into())
        );
        assert_eq!("p:7".parse::<Ring>().unwrap(), Ring::Prime(7));
        assert!("p:9".parse::<Ring>().is_err());
        assert!("r".parse::<Ring>().is_err());
    }

    #[test]
    fn sphere_generator_is_a_cycle() {
        let m = LoopModel::new(&sphere_quotient(2).unwrap()).unwrap();
        let s = m.parse_word("sigma").unwrap();
        for v in [Variant::Normalized, Variant::De] {
            let c = Chain::word(Ring::Integers, v, s.clone());
            assert!(boundary(&m, &c).unwrap().is_zero());
            let ss = multiply(&m, &c, &c).unwrap();
            assert_eq!(
                ss,
                Chain::word(Ring::Integers, v, m.parse_word("sigma;sigma").unwrap())
            );
            assert!(boundary(&m, &ss).unwrap().is_zero());
        }
    }

    #[test]
    fn boundary_of_a_two_simplex_letter() {
        let m = LoopModel::new(&boundary_simplex(3).unwrap()).unwrap();
        let w = m.parse_word("012;02^op").unwrap();
        let d = boundary(&m, &Chain::word(Ring::Integers, Variant::Normalized, w)).unwrap();
        // d^1_1 = 02;02^op = e and d^0_1 = 01;12;02^op
        assert_eq!(render(&m, &d), "-e + 01;12;02^op");
    }

    #[test]
    fn unit_is_neutral() {
        let m = LoopModel::new(&wedge_of_circles(2).unwrap()).unwrap();
        let e = Chain::word(Ring::Integers, Variant::De, m.unit());
        let v = Chain::word(Ring::Integers, Variant::De, m.parse_word("a;b^op").unwrap());
        assert_eq!(multiply(&m, &e, &v).unwrap(), v);
        assert_eq!(multiply(&m, &v, &e).unwrap(), v);
    }

    #[test]
    fn d_squared_and_leibniz_on_random_words() {
        let mut r = rng(5);
        for x in [boundary_simplex(3).unwrap(), sphere_quotient(3).unwrap()] {
            let m = LoopModel::new(&x).unwrap();
            let mut sampler = WordSampler::new(&m, 3);
            for k in 0..40 {
                sampler.degenerate_probability = if k % 2 == 0 { 0.0 } else { 0.3 };
                for v in [Variant::De, Variant::Normalized] {
                    let u = Chain::word(Ring::Integers, v, sampler.sample(&mut r, 3));
                    let w = Chain::word(Ring::Integers, v, sampler.sample(&mut r, 3));
                    let dd = boundary(&m, &boundary(&m, &u).unwrap()).unwrap();
                    assert!(dd.is_zero(), "{}", render(&m, &u));
                    assert!(leibniz_defect(&m, &u, &w).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn quotient_map_commutes_with_boundary() {
        let mut r = rng(6);
        let m = LoopModel::new(&boundary_simplex(3).unwrap()).unwrap();
        let mut sampler = WordSampler::new(&m, 3);
        sampler.degenerate_probability = 0.4;
        for _ in 0..60 {
            let u = Chain::word(Ring::Integers, Variant::De, sampler.sample(&mut r, 3));
            let lhs = boundary(&m, &u).unwrap().reinterpret(Variant::Normalized);
            let rhs = boundary(&m, &u.reinterpret(Variant::Normalized)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mixed_chains_are_rejected() {
        let m = LoopModel::new(&sphere_quotient(2).unwrap()).unwrap();
        let a = Chain::word(Ring::Integers, Variant::De, m.unit());
        let b = Chain::word(Ring::Rationals, Variant::De, m.unit());
        assert_eq!(a.add(&b), Err(Error::ChainMismatch));
        assert_eq!(
            multiply(&m, &a, &b.reinterpret(Variant::Normalized)),
            Err(Error::ChainMismatch)
        );
    }
}
