//! Monomials and monomial ideals in `n` variables.
//!
//! Every listing in the crate uses one canonical order: monomials are sorted
//! by total degree, and within a degree lexicographically with `x` before `y`
//! before `z` (higher `x`-exponent first). For degree 3 this gives
//! `x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3`. The `Ord`
//! instance on [`Monomial`] *is* this order, so `x^3 < x^2y`.
//!
//! With at most three variables the variables are written `x`, `y`, `z`;
//! otherwise `x1 .. xN`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

const LETTERS: [char; 3] = ['x', 'y', 'z'];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
}

impl Monomial {
    pub fn new(exponents: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exponents),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, num_vars),
        }
    }

    /// The variable with index `var` (0-based).
    pub fn variable(num_vars: usize, var: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.exps[var] = 1;
        m
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn check_ring(&self, other: &Monomial) -> Result<()> {
        if self.num_vars() == other.num_vars() {
            Ok(())
        } else {
            Err(Error::VariableCountMismatch {
                expected: self.num_vars(),
                found: other.num_vars(),
            })
        }
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        Ok(self.lcm_same(other))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        Ok(self.zip_with(other, u32::min))
    }

    /// `self | other`, i.e. every exponent of `self` is at most the
    /// corresponding exponent of `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ring(other)?;
        Ok(divides_exps(&self.exps, &other.exps))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        let mut exps = SmallVec::with_capacity(self.num_vars());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::Overflow)?);
        }
        let m = Monomial { exps };
        m.exps
            .iter()
            .try_fold(0u32, |acc, e| acc.checked_add(*e))
            .ok_or(Error::Overflow)?;
        Ok(m)
    }

    /// `self / other` when `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if self.num_vars() != other.num_vars() || !divides_exps(&other.exps, &self.exps) {
            return None;
        }
        Some(self.zip_with(other, |a, b| a - b))
    }

    /// `self * x_var`.
    pub fn times_var(&self, var: usize) -> Result<Monomial> {
        let mut m = self.clone();
        let e = m.exps.get_mut(var).ok_or(Error::VariableCountMismatch {
            expected: self.num_vars(),
            found: var + 1,
        })?;
        *e = e.checked_add(1).ok_or(Error::Overflow)?;
        Ok(m)
    }

    pub(crate) fn lcm_same(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    pub(crate) fn divides_same(&self, other: &Monomial) -> bool {
        divides_exps(&self.exps, &other.exps)
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

pub(crate) fn divides_exps(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num_vars()
            .cmp(&other.num_vars())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps) {
                    match b.cmp(a) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let letters = self.num_vars() <= LETTERS.len();
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if letters {
                write!(f, "{}", LETTERS[i])?;
            } else {
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "x{}", i + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a monomial in `num_vars` variables.
///
/// A monomial is a product of factors `v` or `v^e`, optionally separated by
/// `*`, where `e` is a positive decimal integer. Variables are `x`, `y`, `z`
/// (when `num_vars <= 3`) or `x1 .. xN`. Whitespace is ignored and a variable
/// may appear only once.
pub fn parse_monomial(text: &str, num_vars: usize) -> Result<Monomial> {
    let err = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty monomial"));
    }

    let read_number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return None;
        }
        chars[start..*pos].iter().collect::<String>().parse().ok()
    };

    let mut exps = vec![0u32; num_vars];
    let mut seen = vec![false; num_vars];
    let mut pos = 0;
    loop {
        let c = chars[pos];
        pos += 1;
        let var = if c == 'x' && pos < chars.len() && chars[pos].is_ascii_digit() {
            let idx = read_number(&mut pos).ok_or_else(|| err("bad variable index"))?;
            if idx == 0 || idx > num_vars as u64 {
                return Err(err("variable index out of range"));
            }
            idx as usize - 1
        } else {
            match LETTERS.iter().position(|&l| l == c) {
                Some(i) if i < num_vars && num_vars <= LETTERS.len() => i,
                _ => return Err(err(&format!("unexpected character '{c}'"))),
            }
        };
        if seen[var] {
            return Err(err("repeated variable"));
        }
        seen[var] = true;

        let mut e = 1u32;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let v = read_number(&mut pos).ok_or_else(|| err("missing exponent"))?;
            if v == 0 {
                return Err(err("exponent must be positive"));
            }
            e = u32::try_from(v).map_err(|_| err("exponent too large"))?;
        }
        exps[var] = e;

        if pos == chars.len() {
            break;
        }
        if chars[pos] == '*' {
            pos += 1;
            if pos == chars.len() {
                return Err(err("trailing '*'"));
            }
        }
    }
    Ok(Monomial::new(&exps))
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses a monomial in `k[x, y, z]`.
    fn from_str(s: &str) -> Result<Self> {
        parse_monomial(s, 3)
    }
}

/// All monomials of degree `d` in `n` variables, in canonical order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, n: usize, rest: u32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(rest);
            out.push(Monomial::new(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=rest).rev() {
            prefix.push(e);
            fill(prefix, n, rest - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        fill(&mut Vec::with_capacity(n), n, d, &mut out);
    }
    out
}

/// A monomial ideal, stored as its minimal generating set in canonical order.
///
/// The zero ideal (no generators) is representable; the criterion-level
/// operations reject it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    num_vars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding redundant generators.
    pub fn new(num_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|m| m.num_vars() != num_vars) {
            return Err(Error::VariableCountMismatch {
                expected: num_vars,
                found: bad.num_vars(),
            });
        }
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(gens.len());
        // Canonical order is degree-first, so a divisor is always seen before
        // anything it divides.
        for m in gens {
            if !minimal.iter().any(|g| g.divides_same(&m)) {
                minimal.push(m);
            }
        }
        Ok(MonomialIdeal {
            num_vars,
            gens: minimal,
        })
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            gens: Vec::new(),
        }
    }

    /// `m^d` where `m` is the homogeneous maximal ideal.
    pub fn maximal_power(num_vars: usize, d: u32) -> Self {
        MonomialIdeal {
            num_vars,
            gens: monomials_of_degree(num_vars, d),
        }
    }

    /// Caller guarantees `gens` is an antichain under divisibility.
    pub(crate) fn from_antichain(num_vars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        debug_assert!(gens.windows(2).all(|w| w[0] != w[1]));
        MonomialIdeal { num_vars, gens }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The common degree of the generators, if there is one.
    pub fn degree(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.degree().is_some()
    }

    /// Returns the generating degree, rejecting the zero ideal and ideals
    /// generated in several degrees.
    pub fn require_equigenerated(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        self.degree().ok_or(Error::NotEquigenerated)
    }

    pub(crate) fn require_vars(&self, n: usize) -> Result<()> {
        if self.num_vars == n {
            Ok(())
        } else {
            Err(Error::WrongVariableCount {
                expected: n,
                found: self.num_vars,
            })
        }
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.gens.binary_search(m).ok()
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.num_vars() != self.num_vars {
            return Err(Error::VariableCountMismatch {
                expected: self.num_vars,
                found: m.num_vars(),
            });
        }
        Ok(self.contains_exps(m.exponents()))
    }

    pub(crate) fn contains_exps(&self, exps: &[u32]) -> bool {
        self.gens.iter().any(|g| divides_exps(g.exponents(), exps))
    }

    /// Componentwise lcm of all generators; `1` for the zero ideal.
    pub fn lcm_of_generators(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.num_vars), |acc, g| acc.lcm_same(g))
    }

    /// `I^k`, minimally generated.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k < 1 {
            return Err(Error::InvalidPower(k));
        }
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            let mut products = Vec::with_capacity(acc.gens.len() * self.gens.len());
            for a in &acc.gens {
                for b in &self.gens {
                    products.push(a.mul(b)?);
                }
            }
            acc = MonomialIdeal::new(self.num_vars, products)?;
        }
        Ok(acc)
    }

    /// The ideal generated by a subset of the generators (given by index).
    pub(crate) fn sub_ideal(&self, indices: &[usize]) -> MonomialIdeal {
        MonomialIdeal::from_antichain(
            self.num_vars,
            indices.iter().map(|&i| self.gens[i].clone()).collect(),
        )
    }
}

/// The ideal generated by `gens` with non-minimal elements removed.
pub fn minimalize(
    num_vars: usize,
    gens: impl IntoIterator<Item = Monomial>,
) -> Result<MonomialIdeal> {
    MonomialIdeal::new(num_vars, gens)
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn ideal(s: &[&str]) -> MonomialIdeal {
        MonomialIdeal::new(3, s.iter().map(|t| m(t))).unwrap()
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(m("xy^2").lcm(&m("y^2z")).unwrap(), m("xy^2z"));
        assert_eq!(m("x^3").lcm(&m("y^3")).unwrap(), m("x^3y^3"));
        assert_eq!(m("x^2yz").lcm(&m("x^2yz")).unwrap(), m("x^2yz"));
        let two = Monomial::new(&[1, 1]);
        assert!(matches!(
            m("x").lcm(&two),
            Err(Error::VariableCountMismatch { .. })
        ));
    }

    #[test]
    fn divides_examples() {
        assert!(m("xyz").divides(&m("xyz^3")).unwrap());
        assert!(!m("y^2").divides(&m("x^2y")).unwrap());
        assert!(m("x^2z").divides(&m("x^2z")).unwrap());
        assert!(m("x").divides(&Monomial::new(&[1, 0])).is_err());
    }

    #[test]
    fn minimalize_examples() {
        let i = minimalize(3, [m("x^2"), m("x^3"), m("xy")]).unwrap();
        assert_eq!(i.generators(), &[m("x^2"), m("xy")]);

        let cube = MonomialIdeal::maximal_power(3, 3);
        let again = minimalize(3, cube.generators().iter().cloned()).unwrap();
        assert_eq!(again, cube);

        let i = minimalize(3, [m("x^2y"), m("xy^2"), m("x^2y^2")]).unwrap();
        assert_eq!(i.generators(), &[m("x^2y"), m("xy^2")]);

        assert!(minimalize(3, []).unwrap().is_zero());
    }

    #[test]
    fn membership() {
        let pinched = ideal(&[
            "x^3", "x^2y", "xy^2", "y^3", "x^2z", "y^2z", "xz^2", "yz^2", "z^3",
        ]);
        assert!(!pinched.contains(&m("xyz")).unwrap());
        assert!(pinched.contains(&m("x^2yz")).unwrap());
        for g in pinched.generators() {
            assert!(pinched.contains(g).unwrap());
        }
        assert!(pinched.contains(&Monomial::new(&[1, 1])).is_err());
    }

    #[test]
    fn degree_lists() {
        assert_eq!(monomials_of_degree(3, 1), vec![m("x"), m("y"), m("z")]);
        let cubics: Vec<String> = monomials_of_degree(3, 3)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            cubics,
            ["x^3", "x^2y", "x^2z", "xy^2", "xyz", "xz^2", "y^3", "y^2z", "yz^2", "z^3"]
        );
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
        for d in 0..=20u32 {
            let list = monomials_of_degree(3, d);
            assert_eq!(list.len() as u32, (d + 1) * (d + 2) / 2);
            assert!(list.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn powers() {
        let xy = MonomialIdeal::new(2, [Monomial::new(&[1, 0]), Monomial::new(&[0, 1])]).unwrap();
        let sq = xy.power(2).unwrap();
        assert_eq!(
            sq.generators(),
            &[
                Monomial::new(&[2, 0]),
                Monomial::new(&[1, 1]),
                Monomial::new(&[0, 2])
            ]
        );
        let m2 = MonomialIdeal::maximal_power(3, 2);
        let m4 = m2.power(2).unwrap();
        assert_eq!(m4, MonomialIdeal::maximal_power(3, 4));
        assert_eq!(m4.num_generators(), 15);
        assert_eq!(m4.degree(), Some(4));
        assert_eq!(m2.power(1).unwrap(), m2);
        assert_eq!(m2.power(0), Err(Error::InvalidPower(0)));
        assert_eq!(MonomialIdeal::zero(3).power(2), Err(Error::ZeroIdeal));
    }

    #[test]
    fn power_overflow_is_reported() {
        let big = MonomialIdeal::new(1, [Monomial::new(&[u32::MAX / 2 + 1])]).unwrap();
        assert_eq!(big.power(2), Err(Error::Overflow));
    }

    #[test]
    fn equigeneration() {
        assert_eq!(ideal(&["x^2", "yz"]).degree(), Some(2));
        assert_eq!(ideal(&["x^2", "y"]).degree(), None);
        assert_eq!(
            ideal(&["x^2", "y"]).require_equigenerated(),
            Err(Error::NotEquigenerated)
        );
        assert_eq!(
            MonomialIdeal::zero(3).require_equigenerated(),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn parsing() {
        assert_eq!(m("x^2yz"), Monomial::new(&[2, 1, 1]));
        assert_eq!(m("x^2*y*z"), Monomial::new(&[2, 1, 1]));
        assert_eq!(m(" x ^ 2 y  z "), Monomial::new(&[2, 1, 1]));
        assert_eq!(m("z^10"), Monomial::new(&[0, 0, 10]));
        assert_eq!(m("x1^2x3"), Monomial::new(&[2, 0, 1]));
        for bad in [
            "x^0", "xx", "x^2x", "", "w", "x^", "*x", "x*", "x**y", "x4", "x^-1",
        ] {
            assert!(
                bad.parse::<Monomial>().is_err(),
                "{bad:?} should be rejected"
            );
        }
        let six = parse_monomial("x1*x4^2*x6", 6).unwrap();
        assert_eq!(six.exponents(), &[1, 0, 0, 2, 0, 1]);
        assert_eq!(six.to_string(), "x1*x4^2*x6");
        assert!(parse_monomial("xy", 6).is_err());
        assert!(parse_monomial("x7", 6).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(&[1, 2, 0]).to_string(), "xy^2");
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(ideal(&["y^2", "x^2", "xy"]).to_string(), "x^2, xy, y^2");
    }
}
