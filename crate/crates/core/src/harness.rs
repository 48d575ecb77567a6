//! Sweeps over equigenerated ideals in three variables.
//!
//! Every ideal is run through the combinatorial criterion, the tree ordering,
//! the exact order search and the Betti oracle, and each expected agreement
//! between them is recorded as a named check. An ideal with any failed check
//! (or any error) is a mismatch; sweeps never stop early on one.
//!
//! Reports are deterministic: the per-ideal results are reduced with
//! commutative operations and the mismatch list is sorted, so thread count
//! and scheduling do not affect the output.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{
    back_twist_socle_degrees, betti_tables, hilbert_consistent, linearly_presented_in,
};
use crate::criterion::{
    find_bad_configuration, has_linear_resolution_criterion, induces_bad_configuration,
    socle_monomials,
};
use crate::dual_graph::{dual_graph, is_linearly_presented};
use crate::error::{Error, Result};
use crate::homology::{Characteristic, SimplicialComplex};
use crate::monomial::{monomials_of_degree, Monomial, MonomialIdeal};
use crate::quotients::{
    find_linear_quotient_order, has_linear_quotients_in_order, prefix_ideal,
    prefix_linear_presentation_check, tree_order,
};

/// Largest degree swept exhaustively unless the limit is lifted.
pub const MAX_EXHAUSTIVE_DEGREE: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// Every nonempty set of degree-`d` monomials.
    Exhaustive,
    /// `count` independent draws, each monomial kept with probability 1/2.
    /// Draws are with replacement.
    Sample { count: usize, seed: u64 },
}

/// The ideals of a sweep, in a fixed order.
///
/// Any set of monomials of one degree is an antichain, so each nonempty
/// subset of `monomials_of_degree(3, d)` is a distinct ideal.
pub struct Enumeration {
    monomials: Vec<Monomial>,
    source: Source,
}

enum Source {
    /// Subsets as bitmasks over `monomials`, ascending.
    Exhaustive { next: u64, end: u64 },
    Sample {
        rng: Box<ChaCha8Rng>,
        remaining: usize,
    },
}

impl Enumeration {
    fn build(&self, keep: impl Fn(usize) -> bool) -> MonomialIdeal {
        let gens = (0..self.monomials.len())
            .filter(|&i| keep(i))
            .map(|i| self.monomials[i].clone())
            .collect();
        MonomialIdeal::from_antichain(3, gens)
    }
}

impl Iterator for Enumeration {
    type Item = MonomialIdeal;

    fn next(&mut self) -> Option<MonomialIdeal> {
        match &mut self.source {
            Source::Exhaustive { next, end } => {
                if *next >= *end {
                    return None;
                }
                let mask = *next;
                *next += 1;
                Some(self.build(|i| mask >> i & 1 == 1))
            }
            Source::Sample { rng, remaining } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                let n = self.monomials.len();
                let keep = loop {
                    let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                    if keep.contains(&true) {
                        break keep;
                    }
                };
                Some(self.build(|i| keep[i]))
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = match &self.source {
            Source::Exhaustive { next, end } => (end - next) as usize,
            Source::Sample { remaining, .. } => *remaining,
        };
        (left, Some(left))
    }
}

impl ExactSizeIterator for Enumeration {}

/// Equigenerated ideals of degree `d` in three variables.
///
/// Exhaustive enumeration needs the `C(d+2, 2)` monomials to fit a 64-bit
/// mask, i.e. `d <= 9`.
pub fn enumerate_equigenerated(d: u32, mode: Mode) -> Result<Enumeration> {
    let monomials = monomials_of_degree(3, d);
    let source = match mode {
        Mode::Exhaustive => {
            if monomials.len() > 63 {
                return Err(Error::SweepTooLarge { degree: d, max: 9 });
            }
            Source::Exhaustive {
                next: 1,
                end: 1u64 << monomials.len(),
            }
        }
        Mode::Sample { count, seed } => Source::Sample {
            rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
            remaining: count,
        },
    };
    Ok(Enumeration { monomials, source })
}

/// What [`validate_ideal`] checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationConfig {
    pub characteristics: Vec<Characteristic>,
    /// Powers `I^k` with `2 <= k <= powers_up_to` are checked for ideals with
    /// a linear resolution.
    pub powers_up_to: u32,
    /// Run the exact linear-quotient search and compare it with the oracle.
    pub search_orders: bool,
    /// Also check the prefix equivalences along the canonical generator order.
    pub canonical_order_checks: bool,
}

impl ValidationConfig {
    /// Defaults for degree `d`: characteristics 0, 2, 3, powers up to 2, and
    /// the exponential checks (search, canonical order) only for `d <= 4`.
    pub fn for_degree(d: u32) -> Self {
        ValidationConfig {
            characteristics: [0, 2, 3].map(|p| Characteristic::new(p).unwrap()).to_vec(),
            powers_up_to: 2,
            search_orders: d <= 4,
            canonical_order_checks: d <= 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRegularity {
    pub characteristic: Characteristic,
    pub regularity: i64,
}

/// The outcome of validating one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub ideal: MonomialIdeal,
    pub linearly_presented: bool,
    pub criterion_linear: bool,
    /// Inducer of the first bad configuration, if any.
    pub bad_configuration: Option<Monomial>,
    pub regularity: Vec<OracleRegularity>,
    /// Present iff the ideal is linearly presented.
    pub tree_order: Option<Vec<Monomial>>,
    pub tree_order_passes: Option<bool>,
    /// Present iff the search ran.
    pub quotient_order: Option<Option<Vec<Monomial>>>,
    /// Every evaluated check and whether it held.
    pub checks: BTreeMap<String, bool>,
    pub errors: Vec<String>,
}

impl IdealReport {
    pub fn is_consistent(&self) -> bool {
        self.errors.is_empty() && self.checks.values().all(|&ok| ok)
    }

    pub fn failed_checks(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(name, _)| name.clone())
            .collect()
    }

    pub fn has_linear_quotients(&self) -> bool {
        self.tree_order_passes == Some(true) || matches!(self.quotient_order, Some(Some(_)))
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        let slot = self.checks.entry(name.into()).or_insert(true);
        *slot &= ok;
    }
}

/// Cross-checks one ideal. Never fails: errors are recorded in the report
/// and make it inconsistent.
pub fn validate_ideal(ideal: &MonomialIdeal, config: &ValidationConfig) -> IdealReport {
    let mut report = IdealReport {
        ideal: ideal.clone(),
        linearly_presented: false,
        criterion_linear: false,
        bad_configuration: None,
        regularity: Vec::new(),
        tree_order: None,
        tree_order_passes: None,
        quotient_order: None,
        checks: BTreeMap::new(),
        errors: Vec::new(),
    };
    let outcome = Validator {
        ideal,
        config,
        report: &mut report,
    }
    .run();
    if let Err(e) = outcome {
        report.errors.push(e.to_string());
    }
    report
}

struct Validator<'a> {
    ideal: &'a MonomialIdeal,
    config: &'a ValidationConfig,
    report: &'a mut IdealReport,
}

impl Validator<'_> {
    fn chars(&self) -> &[Characteristic] {
        &self.config.characteristics
    }

    fn run(&mut self) -> Result<()> {
        let ideal = self.ideal;
        ideal.require_vars(3)?;
        let d = ideal.require_equigenerated()?;

        let presentation = is_linearly_presented(ideal)?;
        let verdict = has_linear_resolution_criterion(ideal)?;
        let bad = find_bad_configuration(ideal)?;
        self.report.linearly_presented = presentation.is_linear();
        self.report.criterion_linear = verdict.is_linear();
        self.report.bad_configuration = bad.map(|w| w.inducer);

        let tables = self.oracle(ideal)?;
        let socle = socle_monomials(ideal)?;
        let socle_degrees: Vec<u32> = {
            let mut degs: Vec<u32> = socle.iter().map(Monomial::degree).collect();
            degs.sort();
            degs
        };
        let mut oracle_linear = Vec::with_capacity(tables.len());
        for (&c, table) in self.config.characteristics.iter().zip(&tables) {
            let reg = table
                .regularity()
                .ok_or_else(|| Error::Internal("empty Betti table".into()))?;
            self.report.regularity.push(OracleRegularity {
                characteristic: c,
                regularity: reg,
            });
            oracle_linear.push(reg == d as i64);
            self.report.check(
                format!("criterion_matches_oracle/char{c}"),
                verdict.is_linear() == (reg == d as i64),
            );
            self.report.check(
                format!("presentation_matches_oracle/char{c}"),
                presentation.is_linear() == linearly_presented_in(table, d),
            );
            self.report.check(
                format!("socle_matches_back_twists/char{c}"),
                socle_degrees == back_twist_socle_degrees(table),
            );
        }

        if let Some((first, rest)) = tables.split_first() {
            let same = rest.iter().all(|t| t.entries().eq(first.entries()));
            self.report
                .check("tables_agree_across_characteristics", same);
            let zeroth: Vec<&Monomial> = first
                .entries()
                .filter(|&(i, _, rank)| i == 0 && rank == 1)
                .map(|(_, a, _)| a)
                .collect();
            let zeroth_ok = first.total(0) == ideal.num_generators() as u64
                && zeroth.iter().copied().eq(ideal.generators());
            self.report
                .check("zeroth_betti_numbers_are_generators", zeroth_ok);
        }
        // Socle monomials of degree d - 2 or less cannot occur.
        self.report.check(
            "socle_degrees_at_least_d_minus_1",
            socle.iter().all(|f| f.degree() + 1 >= d),
        );
        self.bad_configuration_pointwise(d, &socle)?;

        let identity: Vec<usize> = (0..ideal.num_generators()).collect();
        if presentation.is_linear() {
            let tree = tree_order(ideal);
            self.report.check("tree_order_exists", tree.is_ok());
            let tree = tree?;
            let order = tree.order().to_vec();
            let passes = has_linear_quotients_in_order(ideal, &order)?.is_linear();
            self.report.tree_order = Some(tree.monomials());
            self.report.tree_order_passes = Some(passes);
            if verdict.is_linear() {
                self.report.check("tree_order_passes", passes);
                self.same_level_connected(&order)?;
            }
            self.prefix_equivalence("tree", &order, d)?;
        }
        if self.config.canonical_order_checks {
            self.prefix_equivalence("canonical", &identity, d)?;
        }

        if self.config.search_orders {
            let found = find_linear_quotient_order(ideal)?;
            if let Some(order) = &found {
                let valid = has_linear_quotients_in_order(ideal, order)?.is_linear();
                self.report.check("search_order_valid", valid);
            }
            for (c, &linear) in self.config.characteristics.iter().zip(&oracle_linear) {
                self.report.check(
                    format!("search_matches_oracle/char{c}"),
                    found.is_some() == linear,
                );
            }
            self.report.quotient_order = Some(found.map(|order| {
                order
                    .iter()
                    .map(|&i| ideal.generators()[i].clone())
                    .collect()
            }));
        }

        if verdict.is_linear() {
            for k in 2..=self.config.powers_up_to {
                let power = ideal.power(k)?;
                let tables = self.oracle(&power)?;
                for (c, table) in self.config.characteristics.iter().zip(&tables) {
                    let linear = table.regularity() == Some((k * d) as i64);
                    self.report
                        .check(format!("power{k}_linear/char{c}"), linear);
                }
            }
        }
        Ok(())
    }

    /// Betti tables over every configured characteristic, each checked
    /// against the Hilbert function.
    fn oracle(&mut self, ideal: &MonomialIdeal) -> Result<Vec<crate::betti::BettiTable>> {
        let tables = betti_tables(ideal, self.chars())?;
        let ok = tables.iter().all(|t| hilbert_consistent(ideal, t));
        self.report.check("hilbert_consistent", ok);
        Ok(tables)
    }

    /// For every `f` with exponents at most `d`: `f` induces a bad
    /// configuration iff it is a socle monomial of degree at least `d`.
    fn bad_configuration_pointwise(&mut self, d: u32, socle: &[Monomial]) -> Result<()> {
        let mut ok = true;
        for a in 0..=d {
            for b in 0..=d {
                for c in 0..=d {
                    let f = Monomial::new(&[a, b, c]);
                    let induces = induces_bad_configuration(self.ideal, &f)?.is_some();
                    let expected = f.degree() >= d && socle.binary_search(&f).is_ok();
                    ok &= induces == expected;
                }
            }
        }
        self.report.check("bad_configuration_pointwise", ok);
        Ok(())
    }

    /// Along `order`: the colon check, linear presentation of every prefix,
    /// and oracle linearity of every prefix must agree. When some prefix is
    /// not linearly presented, its newest generator must be one end of a
    /// disconnected pair.
    fn prefix_equivalence(&mut self, label: &str, order: &[usize], d: u32) -> Result<()> {
        let ideal = self.ideal;
        let colon = has_linear_quotients_in_order(ideal, order)?.is_linear();
        let failure = prefix_linear_presentation_check(ideal, order)?;
        self.report.check(
            format!("colon_matches_prefix_presentation/{label}"),
            colon == failure.is_none(),
        );

        let n_chars = self.chars().len();
        let mut prefixes_linear = vec![true; n_chars];
        for len in 1..=order.len() {
            if prefixes_linear.iter().all(|&ok| !ok) {
                break;
            }
            let prefix = prefix_ideal(ideal, order, len)?;
            for (c, table) in self.oracle(&prefix)?.iter().enumerate() {
                prefixes_linear[c] &= table.regularity() == Some(d as i64);
            }
        }
        for (c, &linear) in self.config.characteristics.iter().zip(&prefixes_linear) {
            self.report.check(
                format!("prefix_presentation_matches_oracle/{label}/char{c}"),
                failure.is_none() == linear,
            );
        }

        if let Some(failure) = failure {
            let len = failure.prefix_len;
            let prefix = prefix_ideal(ideal, order, len)?;
            let newest = &ideal.generators()[order[len - 1]];
            let graph = dual_graph(&prefix)?;
            let v = prefix
                .index_of(newest)
                .ok_or_else(|| Error::Internal("newest generator missing from prefix".into()))?;
            let mut witnessed = false;
            for u in 0..prefix.num_generators() {
                if u != v && !graph.pair_connected(u, v)? {
                    witnessed = true;
                    break;
                }
            }
            self.report
                .check(format!("newest_generator_witness/{label}"), witnessed);
        }
        Ok(())
    }

    /// In every tree-ordered prefix, two generators on the same level have a
    /// connected restricted graph.
    fn same_level_connected(&mut self, order: &[usize]) -> Result<()> {
        let mut ok = true;
        for len in 2..=order.len() {
            let prefix = prefix_ideal(self.ideal, order, len)?;
            let graph = dual_graph(&prefix)?;
            let gens = prefix.generators();
            for u in 0..gens.len() {
                for v in u + 1..gens.len() {
                    if gens[u].exponent(2) == gens[v].exponent(2) {
                        ok &= graph.pair_connected(u, v)?;
                    }
                }
            }
        }
        self.report.check("same_level_connected", ok);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepCounts {
    pub linearly_presented: usize,
    pub linear_resolution: usize,
    pub linear_quotients_found: usize,
    pub bad_configurations: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub evaluated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub ideal: MonomialIdeal,
    pub failed_checks: Vec<String>,
    pub errors: Vec<String>,
}

/// Aggregate result of a sweep. Field order is the JSON field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub degree: u32,
    pub mode: Mode,
    pub population: usize,
    pub characteristics: Vec<Characteristic>,
    pub powers_up_to: u32,
    pub counts: SweepCounts,
    pub checks: BTreeMap<String, CheckTally>,
    pub mismatches: Vec<Mismatch>,
    /// Wall-clock time; only recorded on request so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub record_timing: bool,
    /// Allow exhaustive sweeps above [`MAX_EXHAUSTIVE_DEGREE`].
    pub allow_large: bool,
}

#[derive(Default)]
struct Accumulator {
    population: usize,
    counts: SweepCounts,
    checks: BTreeMap<String, CheckTally>,
    mismatches: Vec<Mismatch>,
}

impl Accumulator {
    fn add(mut self, report: IdealReport) -> Self {
        self.population += 1;
        self.counts.linearly_presented += report.linearly_presented as usize;
        self.counts.linear_resolution += report.criterion_linear as usize;
        self.counts.linear_quotients_found += report.has_linear_quotients() as usize;
        self.counts.bad_configurations += report.bad_configuration.is_some() as usize;
        for (name, &ok) in &report.checks {
            let tally = self.checks.entry(name.clone()).or_default();
            tally.evaluated += 1;
            tally.failed += !ok as usize;
        }
        if !report.is_consistent() {
            self.mismatches.push(Mismatch {
                failed_checks: report.failed_checks(),
                errors: report.errors,
                ideal: report.ideal,
            });
        }
        self
    }

    fn merge(mut self, other: Self) -> Self {
        self.population += other.population;
        self.counts.linearly_presented += other.counts.linearly_presented;
        self.counts.linear_resolution += other.counts.linear_resolution;
        self.counts.linear_quotients_found += other.counts.linear_quotients_found;
        self.counts.bad_configurations += other.counts.bad_configurations;
        for (name, tally) in other.checks {
            let mine = self.checks.entry(name).or_default();
            mine.evaluated += tally.evaluated;
            mine.failed += tally.failed;
        }
        self.mismatches.extend(other.mismatches);
        self
    }
}

/// Validates every ideal of a sweep in parallel and aggregates the results.
pub fn run_sweep(
    d: u32,
    mode: Mode,
    config: &ValidationConfig,
    options: &SweepOptions,
) -> Result<SweepReport> {
    if mode == Mode::Exhaustive && d > MAX_EXHAUSTIVE_DEGREE && !options.allow_large {
        return Err(Error::SweepTooLarge {
            degree: d,
            max: MAX_EXHAUSTIVE_DEGREE,
        });
    }
    let start = Instant::now();
    let ideals: Vec<MonomialIdeal> = enumerate_equigenerated(d, mode)?.collect();
    let sweep = || {
        ideals
            .par_iter()
            .map(|ideal| validate_ideal(ideal, config))
            .fold(Accumulator::default, Accumulator::add)
            .reduce(Accumulator::default, Accumulator::merge)
    };
    let mut acc = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(sweep),
        None => sweep(),
    };
    acc.mismatches
        .sort_by(|a, b| a.ideal.generators().cmp(b.ideal.generators()));
    Ok(SweepReport {
        degree: d,
        mode,
        population: acc.population,
        characteristics: config.characteristics.clone(),
        powers_up_to: config.powers_up_to,
        counts: acc.counts,
        checks: acc.checks,
        mismatches: acc.mismatches,
        elapsed_ms: options
            .record_timing
            .then(|| start.elapsed().as_millis() as u64),
    })
}

/// Facets of the six-vertex triangulation of the real projective plane
/// (vertices `0..6`). Every edge lies in exactly two facets.
pub const RP2_FACETS: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 1, 5],
    [1, 2, 4],
    [1, 3, 4],
    [1, 3, 5],
    [2, 3, 5],
    [2, 4, 5],
];

/// Stanley–Reisner ideal of a complex: one generator per minimal non-face.
pub fn stanley_reisner_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal> {
    let n = complex.num_vertices();
    if n >= 64 {
        return Err(Error::TooManyVertices(n));
    }
    let mut gens = Vec::new();
    for mask in 1u64..1 << n {
        let minimal = !complex.contains_face(mask)
            && (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .all(|v| complex.contains_face(mask & !(1 << v)));
        if minimal {
            let exps: Vec<u32> = (0..n).map(|v| (mask >> v & 1) as u32).collect();
            gens.push(Monomial::new(&exps));
        }
    }
    MonomialIdeal::new(n, gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReisnerResult {
    pub characteristic: Characteristic,
    pub regularity: i64,
    pub linear_resolution: bool,
    pub hilbert_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReisnerReport {
    pub num_vertices: usize,
    pub facets: Vec<[usize; 3]>,
    pub ideal: MonomialIdeal,
    pub results: Vec<ReisnerResult>,
}

/// Regularity of the Stanley–Reisner ideal of the projective-plane
/// triangulation in each characteristic.
pub fn reisner_demo(characteristics: &[Characteristic]) -> Result<ReisnerReport> {
    let facets: Vec<Vec<usize>> = RP2_FACETS.iter().map(|f| f.to_vec()).collect();
    let complex = SimplicialComplex::from_facets(6, &facets)?;
    let ideal = stanley_reisner_ideal(&complex)?;
    let d = ideal.require_equigenerated()?;
    let tables = betti_tables(&ideal, characteristics)?;
    let mut results = Vec::with_capacity(tables.len());
    for (&characteristic, table) in characteristics.iter().zip(&tables) {
        let regularity = table
            .regularity()
            .ok_or_else(|| Error::Internal("empty Betti table".into()))?;
        results.push(ReisnerResult {
            characteristic,
            regularity,
            linear_resolution: regularity == d as i64,
            hilbert_consistent: hilbert_consistent(&ideal, table),
        });
    }
    Ok(ReisnerReport {
        num_vertices: 6,
        facets: RP2_FACETS.to_vec(),
        ideal,
        results,
    })
}
