//! Linear quotients: the tree ordering, colon checks, and an exact search.
//!
//! An order `m_1, ..., m_r` of the minimal generators gives linear quotients
//! when every colon ideal `(m_1, ..., m_{i-1}) : m_i` is generated by
//! variables. For monomials the colon is generated by the `m_j / gcd(m_j, m_i)`.

use std::collections::{BTreeMap, HashSet};

use serde::{Serialize, Serializer};

use crate::dual_graph::{dual_graph, is_linearly_presented, DisconnectedPair, PresentationVerdict};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Generators grouped by `z`-degree, in the order the tree ordering emits them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    pub z_degree: u32,
    pub generators: Vec<Monomial>,
}

/// The tree ordering of the generators of a linearly presented ideal.
#[derive(Clone, Debug)]
pub struct TreeOrder<'a> {
    ideal: &'a MonomialIdeal,
    order: Vec<usize>,
    levels: Vec<Level>,
}

impl<'a> TreeOrder<'a> {
    pub fn ideal(&self) -> &'a MonomialIdeal {
        self.ideal
    }

    /// Generator indices into `ideal().generators()`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.order
            .iter()
            .map(|&i| self.ideal.generators()[i].clone())
            .collect()
    }
}

impl Serialize for TreeOrder<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.order.iter().map(|&i| &self.ideal.generators()[i]))
    }
}

/// Builds the tree ordering.
///
/// The lowest level is listed left to right (decreasing `x`-degree). On each
/// later level the first generator is the one of highest `x`-degree joined in
/// `G_I` to some generator of the previous level; it is followed by the
/// generators of smaller `x`-degree from left to right, then those of larger
/// `x`-degree from right to left. Adjacency is taken in the dual graph of the
/// whole ideal.
pub fn tree_order(ideal: &MonomialIdeal) -> Result<TreeOrder<'_>> {
    ideal.require_vars(3)?;
    ideal.require_equigenerated()?;
    if let PresentationVerdict::Disconnected(DisconnectedPair { first, second }) =
        is_linearly_presented(ideal)?
    {
        return Err(Error::NotLinearlyPresented { first, second });
    }
    let graph = dual_graph(ideal)?;
    let gens = ideal.generators();
    let x_deg = |i: usize| gens[i].exponent(0);

    let mut by_level: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        by_level.entry(g.exponent(2)).or_default().push(i);
    }

    let mut order = Vec::with_capacity(gens.len());
    let mut levels = Vec::with_capacity(by_level.len());
    let mut previous: Option<(u32, Vec<usize>)> = None;
    for (z, mut members) in by_level {
        let emitted = match &previous {
            None => {
                members.sort_by_key(|&i| std::cmp::Reverse(x_deg(i)));
                members
            }
            Some((prev_z, prev_members)) => {
                if z != prev_z + 1 {
                    return Err(Error::TreeOrderInconsistent {
                        level: z,
                        reason: format!("no generators on level {}", prev_z + 1),
                    });
                }
                let first = members
                    .iter()
                    .copied()
                    .filter(|&i| prev_members.iter().any(|&p| graph.has_edge(i, p)))
                    .max_by_key(|&i| x_deg(i))
                    .ok_or_else(|| Error::TreeOrderInconsistent {
                        level: z,
                        reason: "no generator is adjacent to the previous level".into(),
                    })?;
                let pivot = x_deg(first);
                let mut left: Vec<usize> = members
                    .iter()
                    .copied()
                    .filter(|&i| x_deg(i) < pivot)
                    .collect();
                left.sort_by_key(|&i| std::cmp::Reverse(x_deg(i)));
                let mut right: Vec<usize> = members
                    .iter()
                    .copied()
                    .filter(|&i| x_deg(i) > pivot)
                    .collect();
                right.sort_by_key(|&i| x_deg(i));
                let mut emitted = vec![first];
                emitted.extend(left);
                emitted.extend(right);
                emitted
            }
        };
        order.extend(&emitted);
        levels.push(Level {
            z_degree: z,
            generators: emitted.iter().map(|&i| gens[i].clone()).collect(),
        });
        previous = Some((z, emitted));
    }
    Ok(TreeOrder {
        ideal,
        order,
        levels,
    })
}

/// Minimal generators of `(prefix) : m`. Empty for an empty prefix.
pub fn colon_generators(prefix: &[Monomial], m: &Monomial) -> Result<Vec<Monomial>> {
    let mut quotients = Vec::with_capacity(prefix.len());
    for p in prefix {
        let l = p.lcm(m)?;
        quotients.push(l.quotient(m).expect("m divides lcm(p, m)"));
    }
    Ok(MonomialIdeal::new(m.num_vars(), quotients)?
        .generators()
        .to_vec())
}

/// The first step at which an order fails to give linear quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonFailure {
    /// Number of generators before the failing one.
    pub prefix_len: usize,
    pub generator: Monomial,
    /// A minimal generator of the colon ideal that is not a variable.
    pub offending: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientVerdict {
    Linear,
    Fails(ColonFailure),
}

impl QuotientVerdict {
    pub fn is_linear(&self) -> bool {
        matches!(self, QuotientVerdict::Linear)
    }
}

/// One row of a colon trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonStep {
    pub generator: Monomial,
    pub colon: Vec<Monomial>,
    pub linear: bool,
}

fn check_permutation(ideal: &MonomialIdeal, order: &[usize]) -> Result<()> {
    let r = ideal.num_generators();
    let mut seen = vec![false; r];
    if order.len() != r {
        return Err(Error::InvalidPermutation { len: r });
    }
    for &i in order {
        if i >= r || seen[i] {
            return Err(Error::InvalidPermutation { len: r });
        }
        seen[i] = true;
    }
    Ok(())
}

/// The colon ideals along an order, one step per generator.
pub fn colon_trace(ideal: &MonomialIdeal, order: &[usize]) -> Result<Vec<ColonStep>> {
    check_permutation(ideal, order)?;
    let ordered: Vec<Monomial> = order
        .iter()
        .map(|&i| ideal.generators()[i].clone())
        .collect();
    ordered
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let colon = colon_generators(&ordered[..i], m)?;
            let linear = colon.iter().all(|c| c.degree() == 1);
            Ok(ColonStep {
                generator: m.clone(),
                colon,
                linear,
            })
        })
        .collect()
}

pub fn has_linear_quotients_in_order(
    ideal: &MonomialIdeal,
    order: &[usize],
) -> Result<QuotientVerdict> {
    for (i, step) in colon_trace(ideal, order)?.into_iter().enumerate() {
        if let Some(bad) = step.colon.iter().find(|c| c.degree() != 1) {
            return Ok(QuotientVerdict::Fails(ColonFailure {
                prefix_len: i,
                generator: step.generator,
                offending: bad.clone(),
            }));
        }
    }
    Ok(QuotientVerdict::Linear)
}

/// First prefix `I_j = (m_1, ..., m_j)` that is not linearly presented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixFailure {
    pub prefix_len: usize,
    pub pair: DisconnectedPair,
}

/// The ideal generated by the first `len` generators of `order`.
pub fn prefix_ideal(ideal: &MonomialIdeal, order: &[usize], len: usize) -> Result<MonomialIdeal> {
    check_permutation(ideal, order)?;
    Ok(ideal.sub_ideal(&order[..len]))
}

/// Checks that every prefix ideal along `order` is linearly presented.
pub fn prefix_linear_presentation_check(
    ideal: &MonomialIdeal,
    order: &[usize],
) -> Result<Option<PrefixFailure>> {
    check_permutation(ideal, order)?;
    for len in 1..=order.len() {
        let prefix = ideal.sub_ideal(&order[..len]);
        if let PresentationVerdict::Disconnected(pair) = is_linearly_presented(&prefix)? {
            return Ok(Some(PrefixFailure {
                prefix_len: len,
                pair,
            }));
        }
    }
    Ok(None)
}

/// Whether `(chosen) : gens[next]` is generated by variables, where `chosen`
/// is a set of generator indices.
fn colon_is_linear(gens: &[Monomial], chosen: &[bool], next: usize) -> bool {
    let m = gens[next].exponents();
    let n = m.len();
    let mut quotients: Vec<Vec<u32>> = Vec::new();
    let mut variables = vec![false; n];
    for (j, g) in gens.iter().enumerate() {
        if !chosen[j] {
            continue;
        }
        let q: Vec<u32> = g
            .exponents()
            .iter()
            .zip(m)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        if q.iter().sum::<u32>() == 1 {
            variables[q.iter().position(|&e| e == 1).unwrap()] = true;
        }
        quotients.push(q);
    }
    quotients
        .iter()
        .all(|q| q.iter().zip(&variables).any(|(&e, &v)| v && e > 0))
}

/// Searches for an order with linear quotients. Candidates are tried in
/// canonical order and dead prefixes are memoised by their generator set
/// (the colon ideal only depends on that set), so `None` means no such order
/// exists.
pub fn find_linear_quotient_order(ideal: &MonomialIdeal) -> Result<Option<Vec<usize>>> {
    ideal.require_equigenerated()?;
    let gens = ideal.generators();
    let mut chosen = vec![false; gens.len()];
    let mut order = Vec::with_capacity(gens.len());
    let mut dead: HashSet<Vec<bool>> = HashSet::new();
    let found = search(gens, &mut chosen, &mut order, &mut dead);
    Ok(found.then_some(order))
}

fn search(
    gens: &[Monomial],
    chosen: &mut Vec<bool>,
    order: &mut Vec<usize>,
    dead: &mut HashSet<Vec<bool>>,
) -> bool {
    if order.len() == gens.len() {
        return true;
    }
    if dead.contains(chosen) {
        return false;
    }
    for next in 0..gens.len() {
        if chosen[next] || !colon_is_linear(gens, chosen, next) {
            continue;
        }
        chosen[next] = true;
        order.push(next);
        if search(gens, chosen, order, dead) {
            return true;
        }
        order.pop();
        chosen[next] = false;
    }
    dead.insert(chosen.clone());
    false
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

    fn strs(v: &[Monomial]) -> Vec<String> {
        v.iter().map(|m| m.to_string()).collect()
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
    fn tree_order_of_cube() {
        let cube = MonomialIdeal::maximal_power(3, 3);
        let t = tree_order(&cube).unwrap();
        assert_eq!(
            strs(&t.monomials()),
            ["x^3", "x^2y", "xy^2", "y^3", "x^2z", "xyz", "y^2z", "xz^2", "yz^2", "z^3"]
        );
        assert_eq!(t.levels().len(), 4);
        assert!(has_linear_quotients_in_order(&cube, t.order())
            .unwrap()
            .is_linear());
    }

    #[test]
    fn tree_order_of_degree_four_example() {
        let listed = ["xy^3", "xy^2z", "y^3z", "x^2yz", "x^3z", "x^2z^2", "y^2z^2"];
        let i = ideal(&listed);
        let t = tree_order(&i).unwrap();
        assert_eq!(strs(&t.monomials()), listed);
        let levels: Vec<u32> = t.levels().iter().map(|l| l.z_degree).collect();
        assert_eq!(levels, [0, 1, 2]);
        assert!(prefix_linear_presentation_check(&i, t.order())
            .unwrap()
            .is_none());
    }

    #[test]
    fn tree_order_edge_cases() {
        let single = ideal(&["x^3"]);
        assert_eq!(strs(&tree_order(&single).unwrap().monomials()), ["x^3"]);
        assert!(matches!(
            tree_order(&ideal(&["x^3", "z^3"])),
            Err(Error::NotLinearlyPresented { .. })
        ));
        let four = MonomialIdeal::new(4, [Monomial::new(&[1, 0, 0, 0])]).unwrap();
        assert!(matches!(
            tree_order(&four),
            Err(Error::WrongVariableCount { .. })
        ));
    }

    #[test]
    fn colon_examples() {
        assert_eq!(
            strs(&colon_generators(&[m("x^3")], &m("x^2y")).unwrap()),
            ["x"]
        );
        assert_eq!(
            strs(&colon_generators(&[m("x^3"), m("x^2y")], &m("xy^2")).unwrap()),
            ["x"]
        );
        assert!(colon_generators(&[], &m("xyz")).unwrap().is_empty());
    }

    #[test]
    fn quotient_checks() {
        let two = ideal(&["x^3", "z^3"]);
        for order in [[0, 1], [1, 0]] {
            match has_linear_quotients_in_order(&two, &order).unwrap() {
                QuotientVerdict::Fails(f) => {
                    assert_eq!(f.prefix_len, 1);
                    assert_eq!(f.offending.degree(), 3);
                }
                QuotientVerdict::Linear => panic!("(x^3, z^3) has no linear quotients"),
            }
        }
        assert!(has_linear_quotients_in_order(&ideal(&["xyz"]), &[0])
            .unwrap()
            .is_linear());
        assert!(matches!(
            has_linear_quotients_in_order(&two, &[0, 0]),
            Err(Error::InvalidPermutation { len: 2 })
        ));
        assert!(has_linear_quotients_in_order(&two, &[0]).is_err());
    }

    #[test]
    fn prefix_checks() {
        let cube = MonomialIdeal::maximal_power(3, 3);
        let t = tree_order(&cube).unwrap();
        assert!(prefix_linear_presentation_check(&cube, t.order())
            .unwrap()
            .is_none());
        let fail = prefix_linear_presentation_check(&ideal(&["x^3", "z^3"]), &[0, 1])
            .unwrap()
            .unwrap();
        assert_eq!(fail.prefix_len, 2);
    }

    #[test]
    fn search_examples() {
        let order = find_linear_quotient_order(&j()).unwrap().unwrap();
        assert!(has_linear_quotients_in_order(&j(), &order)
            .unwrap()
            .is_linear());
        assert!(find_linear_quotient_order(&pinched()).unwrap().is_none());
        assert!(find_linear_quotient_order(&ideal(&["x^3", "z^3"]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn fast_colon_agrees_with_colon_generators() {
        let cube = MonomialIdeal::maximal_power(3, 3);
        let gens = cube.generators();
        for mask in 0u32..(1 << gens.len()) {
            let chosen: Vec<bool> = (0..gens.len()).map(|i| mask >> i & 1 == 1).collect();
            let prefix: Vec<Monomial> = (0..gens.len())
                .filter(|&i| chosen[i])
                .map(|i| gens[i].clone())
                .collect();
            for next in (0..gens.len()).filter(|&i| !chosen[i]) {
                let slow = colon_generators(&prefix, &gens[next])
                    .unwrap()
                    .iter()
                    .all(|c| c.degree() == 1);
                assert_eq!(colon_is_linear(gens, &chosen, next), slow);
            }
        }
    }
}
