//! Library results checked against independent computations written here.

use std::collections::BTreeSet;

use linres::betti::betti_table;
use linres::criterion::socle_monomials;
use linres::dual_graph::simplex_graph;
use linres::harness::{enumerate_equigenerated, Mode};
use linres::monomial::monomials_of_degree;
use linres::{Characteristic, Monomial, MonomialIdeal};

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closes a set of monomials under replacing a variable by an earlier one.
fn borel_closure(seed: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut seen: BTreeSet<Vec<u32>> = seed.iter().cloned().collect();
    let mut stack: Vec<Vec<u32>> = seed.to_vec();
    while let Some(m) = stack.pop() {
        for j in 0..m.len() {
            if m[j] == 0 {
                continue;
            }
            for i in 0..j {
                let mut next = m.clone();
                next[j] -= 1;
                next[i] += 1;
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen
}

/// Graded Betti numbers `β_{i, i+d}` of a strongly stable ideal generated in
/// degree `d`: each generator whose last variable is `x_k` (1-based)
/// contributes `C(k-1, i)`.
fn eliahou_kervaire(gens: &BTreeSet<Vec<u32>>, n: usize) -> Vec<u64> {
    (0..n)
        .map(|i| {
            gens.iter()
                .map(|g| {
                    let last = g.iter().rposition(|&e| e > 0).unwrap() + 1;
                    binomial(last as u64 - 1, i as u64)
                })
                .sum()
        })
        .collect()
}

fn graded_linear_strand(ideal: &MonomialIdeal, c: Characteristic, d: u32) -> Vec<u64> {
    let table = betti_table(ideal, c).unwrap();
    for ((i, j), _) in table.graded() {
        assert_eq!(j, i as u32 + d, "stable ideals have linear resolutions");
    }
    (0..ideal.num_vars())
        .map(|i| table.betti(i, i as u32 + d))
        .collect()
}

#[test]
fn maximal_powers_match_eliahou_kervaire() {
    let frozen: [(u32, [u64; 3]); 3] = [(2, [6, 8, 3]), (3, [10, 15, 6]), (4, [15, 24, 10])];
    for (d, expected) in frozen {
        let gens: BTreeSet<Vec<u32>> = monomials_of_degree(3, d)
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        assert_eq!(eliahou_kervaire(&gens, 3), expected);
        let m = MonomialIdeal::maximal_power(3, d);
        for p in [0, 2] {
            let c = Characteristic::new(p).unwrap();
            assert_eq!(graded_linear_strand(&m, c, d), expected, "m^{d} char {p}");
        }
    }
}

#[test]
fn stable_ideals_match_eliahou_kervaire() {
    // Borel closures of every single degree-3 monomial and of some pairs, in
    // three and four variables.
    for n in [3, 4] {
        let degree3 = monomials_of_degree(n, 3);
        let mut seeds: Vec<Vec<Vec<u32>>> = degree3
            .iter()
            .map(|m| vec![m.exponents().to_vec()])
            .collect();
        for w in degree3.windows(4).step_by(3) {
            seeds.push(vec![w[0].exponents().to_vec(), w[3].exponents().to_vec()]);
        }
        for seed in seeds {
            let closed = borel_closure(&seed);
            let ideal = MonomialIdeal::new(n, closed.iter().map(|e| Monomial::new(e))).unwrap();
            let expected = eliahou_kervaire(&closed, n);
            assert_eq!(
                graded_linear_strand(&ideal, Characteristic::ZERO, 3),
                expected,
                "{ideal}"
            );
        }
    }
}

fn in_ideal(gens: &[Monomial], exps: &[u32]) -> bool {
    gens.iter()
        .any(|g| g.exponents().iter().zip(exps).all(|(a, b)| a <= b))
}

#[test]
fn socle_matches_brute_force() {
    for d in 1..=3 {
        for ideal in enumerate_equigenerated(d, Mode::Exhaustive).unwrap() {
            let gens = ideal.generators();
            let limit = 2 * d;
            let mut brute = Vec::new();
            for a in 0..=limit {
                for b in 0..=limit {
                    for c in 0..=limit {
                        let e = [a, b, c];
                        if in_ideal(gens, &e) {
                            continue;
                        }
                        let killed = (0..3).all(|v| {
                            let mut f = e;
                            f[v] += 1;
                            in_ideal(gens, &f)
                        });
                        if killed {
                            brute.push(Monomial::new(&e));
                        }
                    }
                }
            }
            brute.sort();
            assert_eq!(socle_monomials(&ideal).unwrap(), brute, "{ideal}");
        }
    }
}

#[test]
fn lattice_edges_match_brute_force() {
    for d in 1..=10 {
        let monos = monomials_of_degree(3, d);
        let mut count = 0u64;
        for (i, a) in monos.iter().enumerate() {
            for b in &monos[i + 1..] {
                let distance: u32 = a
                    .exponents()
                    .iter()
                    .zip(b.exponents())
                    .map(|(x, y)| x.abs_diff(*y))
                    .sum();
                count += (distance == 2) as u64;
            }
        }
        assert_eq!(count, 3 * binomial(d as u64 + 1, 2));
        assert_eq!(simplex_graph(3, d).unwrap().num_edges() as u64, count);
    }
}
