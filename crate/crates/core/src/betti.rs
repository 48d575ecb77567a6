//! Multigraded Betti numbers of monomial ideals, by brute force.
//!
//! `β_{i,a}(I) = dim H̃_{i-1}(K^a(I))`, where the upper Koszul complex
//! `K^a(I)` has as faces the squarefree `W` with `x^a / x^W ∈ I`. Nonzero Betti
//! numbers only occur at lcms of sets of generators, so scanning the box
//! below the lcm of all generators finds all of them.
//!
//! This module is the ground truth the combinatorial criterion is checked
//! against; it shares no code with the criterion beyond ideal membership.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::homology::{reduced_homology_ranks, Characteristic, SimplicialComplex};
use crate::monomial::{Monomial, MonomialIdeal};

/// Boxes with more multidegrees than this are scanned in parallel.
const PARALLEL_BOX: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    /// Betti numbers of `I` itself.
    Ideal,
    /// Betti numbers of `S/I`, shifted one step up.
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    subject: Subject,
    characteristic: Characteristic,
    num_vars: usize,
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn subject(&self) -> Subject {
        self.subject
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    /// Nonzero entries `((i, a), β_{i,a})`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> {
        self.entries.iter().map(|((i, a), &r)| (*i, a, r))
    }

    pub fn get(&self, i: usize, multidegree: &Monomial) -> u64 {
        self.entries
            .get(&(i, multidegree.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Graded Betti numbers `β_{i,j}`, nonzero entries only.
    pub fn graded(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for ((i, a), r) in &self.entries {
            *out.entry((*i, a.degree())).or_insert(0) += r;
        }
        out
    }

    pub fn betti(&self, i: usize, j: u32) -> u64 {
        self.entries
            .iter()
            .filter(|((k, a), _)| *k == i && a.degree() == j)
            .map(|(_, r)| r)
            .sum()
    }

    /// `β_i`, summed over all degrees.
    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, r)| r)
            .sum()
    }

    /// `max { j - i : β_{i,j} != 0 }`; `None` for an empty table.
    pub fn regularity(&self) -> Option<i64> {
        self.entries
            .keys()
            .map(|(i, a)| a.degree() as i64 - *i as i64)
            .max()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// The table of `S/I` from the table of `I` (and vice versa).
    pub fn to_quotient(&self) -> BettiTable {
        match self.subject {
            Subject::Quotient => self.clone(),
            Subject::Ideal => {
                let mut entries: BTreeMap<_, _> = self
                    .entries
                    .iter()
                    .map(|((i, a), r)| ((i + 1, a.clone()), *r))
                    .collect();
                entries.insert((0, Monomial::one(self.num_vars)), 1);
                BettiTable {
                    subject: Subject::Quotient,
                    entries,
                    ..*self
                }
            }
        }
    }

    pub fn to_ideal(&self) -> BettiTable {
        match self.subject {
            Subject::Ideal => self.clone(),
            Subject::Quotient => BettiTable {
                subject: Subject::Ideal,
                entries: self
                    .entries
                    .iter()
                    .filter(|((i, _), _)| *i > 0)
                    .map(|((i, a), r)| ((i - 1, a.clone()), *r))
                    .collect(),
                ..*self
            },
        }
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Entry<'a> {
            i: usize,
            multidegree: &'a [u32],
            rank: u64,
        }
        #[derive(serde::Serialize)]
        struct Graded {
            i: usize,
            j: u32,
            rank: u64,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|((i, a), &rank)| Entry {
                i: *i,
                multidegree: a.exponents(),
                rank,
            })
            .collect();
        let graded: Vec<Graded> = self
            .graded()
            .into_iter()
            .map(|((i, j), rank)| Graded { i, j, rank })
            .collect();
        let mut s = serializer.serialize_struct("BettiTable", 6)?;
        s.serialize_field("subject", &self.subject)?;
        s.serialize_field("characteristic", &self.characteristic)?;
        s.serialize_field("entries", &entries)?;
        s.serialize_field("graded", &graded)?;
        s.serialize_field("regularity", &self.regularity())?;
        s.serialize_field("projective_dimension", &self.projective_dimension())?;
        s.end()
    }
}

/// `K^a(I)`: faces are the subsets `W` of the support of `a` with
/// `x^a / x^W ∈ I`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, a: &Monomial) -> Result<SimplicialComplex> {
    let n = ideal.num_vars();
    if a.num_vars() != n {
        return Err(Error::VariableCountMismatch {
            expected: n,
            found: a.num_vars(),
        });
    }
    if n > 64 {
        return Err(Error::TooManyVertices(n));
    }
    Ok(koszul_complex(ideal, a.exponents()))
}

fn koszul_complex(ideal: &MonomialIdeal, a: &[u32]) -> SimplicialComplex {
    let n = a.len();
    let support = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (i, _)| m | 1 << i);
    let mut faces = Vec::new();
    let mut scratch = a.to_vec();
    if ideal.contains_exps(&scratch) {
        // Enumerate subsets of the support by size so the face list is sorted.
        let mut subsets: Vec<u64> = Vec::with_capacity(1 << support.count_ones());
        let mut sub = support;
        loop {
            subsets.push(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & support;
        }
        subsets.sort_by_key(|&s| (s.count_ones(), s));
        for w in subsets {
            for (v, e) in scratch.iter_mut().enumerate() {
                *e = a[v] - ((w >> v) & 1) as u32;
            }
            if ideal.contains_exps(&scratch) {
                faces.push(w);
            }
        }
    }
    SimplicialComplex::from_sorted_closed(n, faces)
}

/// All multidegrees `a` with `0 <= a <= bound` componentwise.
fn box_below(bound: &Monomial) -> Vec<Monomial> {
    let b = bound.exponents();
    let mut out = Vec::new();
    let mut cur = vec![0u32; b.len()];
    loop {
        out.push(Monomial::new(&cur));
        let mut i = 0;
        loop {
            if i == cur.len() {
                return out;
            }
            if cur[i] < b[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Betti tables of `I` over several characteristics, sharing the complexes.
pub fn betti_tables(
    ideal: &MonomialIdeal,
    characteristics: &[Characteristic],
) -> Result<Vec<BettiTable>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.num_vars() > 64 {
        return Err(Error::TooManyVertices(ideal.num_vars()));
    }
    let multidegrees = box_below(&ideal.lcm_of_generators());

    type Found = Vec<(usize, usize, Monomial, u64)>;
    let scan = |a: &Monomial| -> Result<Found> {
        let complex = koszul_complex(ideal, a.exponents());
        let mut found = Vec::new();
        if complex.is_void() {
            return Ok(found);
        }
        for (c, &ch) in characteristics.iter().enumerate() {
            let h = reduced_homology_ranks(&complex, ch)?;
            for (idx, &rank) in h.ranks().iter().enumerate() {
                if rank > 0 {
                    // ranks()[idx] is H̃_{idx-1}, which gives β_{idx}.
                    found.push((c, idx, a.clone(), rank));
                }
            }
        }
        Ok(found)
    };
    let found: Vec<Found> = if multidegrees.len() > PARALLEL_BOX {
        multidegrees.par_iter().map(scan).collect::<Result<_>>()?
    } else {
        multidegrees.iter().map(scan).collect::<Result<_>>()?
    };

    let mut tables: Vec<BettiTable> = characteristics
        .iter()
        .map(|&characteristic| BettiTable {
            subject: Subject::Ideal,
            characteristic,
            num_vars: ideal.num_vars(),
            entries: BTreeMap::new(),
        })
        .collect();
    for (c, i, a, rank) in found.into_iter().flatten() {
        tables[c].entries.insert((i, a), rank);
    }
    Ok(tables)
}

pub fn betti_table(ideal: &MonomialIdeal, characteristic: Characteristic) -> Result<BettiTable> {
    Ok(betti_tables(ideal, &[characteristic])?.pop().unwrap())
}

pub fn regularity(ideal: &MonomialIdeal, characteristic: Characteristic) -> Result<i64> {
    let table = betti_table(ideal, characteristic)?;
    table
        .regularity()
        .ok_or_else(|| Error::Internal("nonzero ideal with empty Betti table".into()))
}

/// `reg I = d` for an ideal generated in degree `d`.
pub fn has_linear_resolution_oracle(
    ideal: &MonomialIdeal,
    characteristic: Characteristic,
) -> Result<bool> {
    let d = ideal.require_equigenerated()?;
    Ok(regularity(ideal, characteristic)? == d as i64)
}

/// Linear presentation read off the table: `β_{1,j} = 0` unless `j = d + 1`.
pub fn is_linearly_presented_oracle(
    ideal: &MonomialIdeal,
    characteristic: Characteristic,
) -> Result<bool> {
    let d = ideal.require_equigenerated()?;
    let table = betti_table(ideal, characteristic)?;
    Ok(linearly_presented_in(&table, d))
}

pub(crate) fn linearly_presented_in(table: &BettiTable, d: u32) -> bool {
    let ideal_table = table.to_ideal();
    let linear = ideal_table
        .entries()
        .all(|(i, a, _)| i != 1 || a.degree() == d + 1);
    linear
}

/// Socle degrees of `S/I` from the last module of its resolution: each
/// summand `S(-j)` of `F_n` contributes a socle element of degree `j - n`.
/// Sorted ascending; empty iff `depth S/I > 0`.
pub fn socle_degrees_from_back_twists(
    ideal: &MonomialIdeal,
    characteristic: Characteristic,
) -> Result<Vec<u32>> {
    let table = betti_table(ideal, characteristic)?;
    Ok(back_twist_socle_degrees(&table))
}

pub(crate) fn back_twist_socle_degrees(table: &BettiTable) -> Vec<u32> {
    let quotient = table.to_quotient();
    let n = quotient.num_vars;
    let mut out = Vec::new();
    for (i, a, rank) in quotient.entries() {
        if i == n {
            let shift = a.degree() - n as u32;
            out.extend(std::iter::repeat_n(shift, rank as usize));
        }
    }
    out.sort();
    out
}

fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Number of degree-`deg` monomials in `n` variables outside `I`.
fn count_standard_monomials(ideal: &MonomialIdeal, deg: u32) -> i128 {
    fn walk(ideal: &MonomialIdeal, cur: &mut Vec<u32>, n: usize, rest: u32) -> i128 {
        if cur.len() + 1 == n {
            cur.push(rest);
            let outside = !ideal.contains_exps(cur);
            cur.pop();
            return outside as i128;
        }
        let mut total = 0;
        for e in 0..=rest {
            cur.push(e);
            total += walk(ideal, cur, n, rest - e);
            cur.pop();
        }
        total
    }
    let n = ideal.num_vars();
    if n == 0 {
        return 0;
    }
    walk(ideal, &mut Vec::with_capacity(n), n, deg)
}

/// Checks a Betti table of `I` against the Hilbert function of `S/I`:
/// `Σ (-1)^i β_{i,j}(S/I) t^j / (1-t)^n` must count the monomials outside
/// `I` in every degree up to `n·D + n`, `D` the largest generator degree.
pub fn hilbert_consistent(ideal: &MonomialIdeal, table: &BettiTable) -> bool {
    let n = ideal.num_vars() as i64;
    let top = ideal
        .generators()
        .iter()
        .map(Monomial::degree)
        .max()
        .unwrap_or(0);
    let limit = n as u32 * top + n as u32;
    let mut numerator: BTreeMap<u32, i128> = BTreeMap::new();
    for ((i, j), rank) in table.to_quotient().graded() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        *numerator.entry(j).or_insert(0) += sign * rank as i128;
    }
    (0..=limit).all(|k| {
        let predicted: i128 = numerator
            .iter()
            .filter(|(&j, _)| j <= k)
            .map(|(&j, &c)| c * binomial(k as i64 - j as i64 + n - 1, n - 1))
            .sum();
        predicted == count_standard_monomials(ideal, k)
    })
}

pub fn hilbert_consistency_check(
    ideal: &MonomialIdeal,
    characteristic: Characteristic,
) -> Result<bool> {
    let table = betti_table(ideal, characteristic)?;
    Ok(hilbert_consistent(ideal, &table))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Characteristic = Characteristic::ZERO;

    fn ideal(s: &[&str]) -> MonomialIdeal {
        MonomialIdeal::new(3, s.iter().map(|t| t.parse().unwrap())).unwrap()
    }

    fn pinched() -> MonomialIdeal {
        ideal(&[
            "x^3", "x^2y", "xy^2", "y^3", "x^2z", "y^2z", "xz^2", "yz^2", "z^3",
        ])
    }

    fn j() -> MonomialIdeal {
        ideal(&["x^3", "x^2y", "xy^2", "y^3", "x^2z", "y^2z"])
    }

    #[test]
    fn koszul_complex_examples() {
        let x = ideal(&["x"]);
        let k = upper_koszul_complex(&x, &Monomial::new(&[1, 0, 0])).unwrap();
        assert!(k.is_irrelevant());
        let k = upper_koszul_complex(&x, &Monomial::new(&[0, 1, 0])).unwrap();
        assert!(k.is_void());
        let m1 = MonomialIdeal::maximal_power(3, 1);
        let k = upper_koszul_complex(&m1, &Monomial::new(&[1, 1, 0])).unwrap();
        assert_eq!(k.faces(), &[0b000, 0b001, 0b010]);
        assert!(upper_koszul_complex(&m1, &Monomial::new(&[1, 1])).is_err());
    }

    #[test]
    fn principal_ideal() {
        let t = betti_table(&ideal(&["x^3"]), Q).unwrap();
        let entries: Vec<_> = t.entries().map(|(i, a, r)| (i, a.to_string(), r)).collect();
        assert_eq!(entries, vec![(0, "x^3".to_string(), 1)]);
        assert_eq!(t.regularity(), Some(3));
        assert_eq!(t.projective_dimension(), Some(0));
    }

    #[test]
    fn square_of_maximal_ideal() {
        let t = betti_table(&MonomialIdeal::maximal_power(3, 2), Q).unwrap();
        let graded: Vec<_> = t.graded().into_iter().collect();
        assert_eq!(graded, vec![((0, 2), 6), ((1, 3), 8), ((2, 4), 3)]);
        assert_eq!(t.regularity(), Some(2));
    }

    #[test]
    fn pinched_power_has_back_twist_at_six() {
        let t = betti_table(&pinched(), Q).unwrap();
        assert!(t.betti(2, 6) > 0);
        assert_eq!(regularity(&pinched(), Q).unwrap(), 4);
        assert!(!has_linear_resolution_oracle(&pinched(), Q).unwrap());
        assert!(is_linearly_presented_oracle(&pinched(), Q).unwrap());
    }

    #[test]
    fn regularity_examples() {
        for d in 1..=5 {
            assert_eq!(
                regularity(&MonomialIdeal::maximal_power(3, d), Q).unwrap(),
                d as i64
            );
        }
        assert_eq!(regularity(&j(), Q).unwrap(), 3);
        assert!(has_linear_resolution_oracle(&j(), Q).unwrap());
        assert!(is_linearly_presented_oracle(&MonomialIdeal::maximal_power(3, 3), Q).unwrap());
        assert!(!is_linearly_presented_oracle(&ideal(&["x^3", "z^3"]), Q).unwrap());
        assert_eq!(
            regularity(&MonomialIdeal::zero(3), Q),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn socle_degrees() {
        let cube = MonomialIdeal::maximal_power(3, 3);
        assert_eq!(
            socle_degrees_from_back_twists(&cube, Q).unwrap(),
            vec![2; 6]
        );
        assert_eq!(
            socle_degrees_from_back_twists(&pinched(), Q).unwrap(),
            vec![2, 2, 2, 3]
        );
        assert!(socle_degrees_from_back_twists(&ideal(&["x^3", "y^3"]), Q)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn subject_conversion() {
        let t = betti_table(&MonomialIdeal::maximal_power(3, 2), Q).unwrap();
        let q = t.to_quotient();
        assert_eq!(q.subject(), Subject::Quotient);
        assert_eq!(q.betti(0, 0), 1);
        assert_eq!(q.betti(3, 4), 3);
        assert_eq!(q.to_ideal(), t);
    }

    #[test]
    fn hilbert_examples() {
        assert!(hilbert_consistency_check(&ideal(&["x"]), Q).unwrap());
        assert!(hilbert_consistency_check(&MonomialIdeal::maximal_power(3, 2), Q).unwrap());
        assert!(hilbert_consistency_check(&pinched(), Q).unwrap());
        // A tampered table must be caught.
        let mut t = betti_table(&pinched(), Q).unwrap();
        let key = t.entries.keys().next().unwrap().clone();
        *t.entries.get_mut(&key).unwrap() += 1;
        assert!(!hilbert_consistent(&pinched(), &t));
    }

    #[test]
    fn json_layout() {
        let t = betti_table(&ideal(&["x", "y"]), Q).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["subject"], "ideal");
        assert_eq!(v["characteristic"], 0);
        assert_eq!(v["regularity"], 1);
        assert_eq!(v["projective_dimension"], 1);
        assert_eq!(v["entries"][2]["multidegree"], serde_json::json!([1, 1, 0]));
        assert_eq!(
            v["graded"][1],
            serde_json::json!({"i": 1, "j": 2, "rank": 1})
        );
    }
}
